"""Fully enumerated 2x2 matrix groups over finite fields.

Elements are numbered densely by sorting the packed code
``((a q + b) q + c) q + d`` of their (canonical) matrix entries.  Projective
groups use the coset representative whose first nonzero entry, in row-major
order, equals 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import InputError
from .fields import GF, FieldSpec

KINDS = ("SL2", "GL2", "PGL2", "PSL2")
DEFAULT_MAX_ORDER = 50_000
CAYLEY_LIMIT = 2_048


@dataclass(frozen=True)
class Mat2:
    a: int
    b: int
    c: int
    d: int

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    def __str__(self) -> str:
        return f"[[{self.a},{self.b}],[{self.c},{self.d}]]"


def expected_order(kind: str, q: int) -> int:
    if kind == "SL2":
        return q * (q * q - 1)
    if kind == "GL2":
        return (q * q - 1) * (q * q - q)
    if kind == "PGL2":
        return q * (q * q - 1)
    if kind == "PSL2":
        return q * (q * q - 1) // (2 if q % 2 else 1)
    raise InputError(f"unknown group kind {kind!r}; expected one of {KINDS}")


class ElementSet:
    """Subset of a group as a boolean vector over element indices."""

    __slots__ = ("bits",)

    def __init__(self, bits: np.ndarray):
        self.bits = np.asarray(bits, dtype=bool)

    @classmethod
    def empty(cls, n: int) -> ElementSet:
        return cls(np.zeros(n, dtype=bool))

    @classmethod
    def full(cls, n: int) -> ElementSet:
        return cls(np.ones(n, dtype=bool))

    @classmethod
    def from_indices(cls, n: int, indices: Iterable[int] | np.ndarray) -> ElementSet:
        bits = np.zeros(n, dtype=bool)
        bits[np.asarray(list(indices) if not isinstance(indices, np.ndarray) else indices, dtype=np.int64)] = True
        return cls(bits)

    def __len__(self) -> int:
        return int(np.count_nonzero(self.bits))

    @property
    def universe(self) -> int:
        return len(self.bits)

    def __contains__(self, i: int) -> bool:
        return bool(self.bits[i])

    def indices(self) -> np.ndarray:
        return np.flatnonzero(self.bits)

    def __or__(self, other: ElementSet) -> ElementSet:
        return ElementSet(self.bits | other.bits)

    def __and__(self, other: ElementSet) -> ElementSet:
        return ElementSet(self.bits & other.bits)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ElementSet):
            return NotImplemented
        return self.bits.shape == other.bits.shape and bool(np.array_equal(self.bits, other.bits))

    def __hash__(self) -> int:
        return hash(self.bits.tobytes())

    def issubset(self, other: ElementSet) -> bool:
        return not np.any(self.bits & ~other.bits)

    def is_full(self) -> bool:
        return bool(self.bits.all())

    def to_hex(self) -> str:
        """Bit ``i`` is element ``i``; bytes little-endian in both bit and byte order."""
        return np.packbits(self.bits, bitorder="little").tobytes().hex()

    @classmethod
    def from_hex(cls, text: str, n: int) -> ElementSet:
        raw = np.frombuffer(bytes.fromhex(text), dtype=np.uint8)
        return cls(np.unpackbits(raw, bitorder="little")[:n].astype(bool))

    def __repr__(self) -> str:
        return f"ElementSet({len(self)}/{self.universe})"


class GroupTable:
    """Enumerated SL2/GL2/PGL2/PSL2 over ``F_q`` with vectorized operations.

    ``mul``, ``inv`` and ``power`` accept scalars or integer arrays of element
    indices and broadcast like numpy.
    """

    def __init__(self, kind: str, field: FieldSpec, max_order: int = DEFAULT_MAX_ORDER):
        kind = kind.upper()
        self.kind = kind
        self.field = field
        self.q = field.q
        order = expected_order(kind, self.q)
        if order > max_order:
            raise InputError(
                f"{kind}(F_{self.q}) has order {order}, above the enumeration bound {max_order}"
            )
        self.gf = GF(field)
        entries = self._enumerate()
        codes = self._pack(entries)
        perm = np.argsort(codes)
        self.entries = entries[perm]
        self.codes = codes[perm]
        self.order = len(self.codes)
        if self.order != order:
            raise AssertionError(f"enumerated {self.order} elements, expected {order}")
        self.identity = int(self.index_of(Mat2(1, 0, 0, 1)))
        self._powers: dict[int, np.ndarray] = {1: np.arange(self.order)}
        self._table: np.ndarray | None = None
        if self.order <= CAYLEY_LIMIT:
            all_idx = np.arange(self.order)
            self._table = np.stack([self._mul_entries(i, all_idx) for i in range(self.order)])
        self.inverse = self._compute_inverse()

    # construction ------------------------------------------------------------
    def _enumerate(self) -> np.ndarray:
        F, q = self.gf, self.q
        if self.kind in ("SL2", "PSL2"):
            a, b, c = (g.ravel() for g in np.meshgrid(*(np.arange(q),) * 3, indexing="ij"))
            nz = a != 0
            a1, b1, c1 = a[nz], b[nz], c[nz]
            d1 = F.mul(F.add(F.constant(1), F.mul(b1, c1)), F.inv(a1))
            bb, dd = (g.ravel() for g in np.meshgrid(np.arange(1, q), np.arange(q), indexing="ij"))
            cc = F.neg(F.inv(bb))
            part1 = np.stack([a1, b1, c1, d1], axis=1)
            part2 = np.stack([np.zeros_like(bb), bb, cc, dd], axis=1)
            ents = np.concatenate([part1, part2]).astype(np.int64)
            if self.kind == "PSL2":
                ents = np.unique(self._normalize(ents), axis=0)
            return ents
        grid = np.stack([g.ravel() for g in np.meshgrid(*(np.arange(q),) * 4, indexing="ij")], axis=1)
        det = F.sub(F.mul(grid[:, 0], grid[:, 3]), F.mul(grid[:, 1], grid[:, 2]))
        ents = grid[det != 0].astype(np.int64)
        if self.kind == "PGL2":
            lead = np.where(ents[:, 0] != 0, ents[:, 0], ents[:, 1])
            ents = ents[lead == 1]
        return ents

    def _normalize(self, ents: np.ndarray) -> np.ndarray:
        """Scale each row so that its first nonzero entry is 1."""
        F = self.gf
        lead = np.where(ents[:, 0] != 0, ents[:, 0], ents[:, 1])
        scale = F.inv(lead)
        return np.stack([F.mul(ents[:, j], scale) for j in range(4)], axis=1)

    def _pack(self, ents: np.ndarray) -> np.ndarray:
        q = self.q
        return ((ents[:, 0] * q + ents[:, 1]) * q + ents[:, 2]) * q + ents[:, 3]

    @property
    def projective(self) -> bool:
        return self.kind in ("PGL2", "PSL2")

    # element access ----------------------------------------------------------
    def element(self, i: int) -> Mat2:
        return Mat2(*(int(v) for v in self.entries[i]))

    def index_of(self, m: Mat2 | Sequence[int]) -> int:
        vals = m.as_tuple() if isinstance(m, Mat2) else tuple(m)
        ents = np.array([[self.gf.from_int(int(v)) for v in vals]], dtype=np.int64)
        if self.projective:
            if not ents[0, 0] and not ents[0, 1]:
                raise InputError(f"{vals} is not invertible")
            ents = self._normalize(ents)
        idx = self._lookup(ents)
        if idx[0] < 0:
            raise InputError(f"matrix {vals} is not an element of {self}")
        return int(idx[0])

    def _lookup(self, ents: np.ndarray) -> np.ndarray:
        codes = self._pack(ents)
        pos = np.searchsorted(self.codes, codes)
        pos = np.minimum(pos, self.order - 1)
        return np.where(self.codes[pos] == codes, pos, -1)

    def parse_element(self, literal: str) -> int:
        """Index of a matrix literal ``"a,b;c,d"``."""
        try:
            rows = [r.split(",") for r in literal.strip().split(";")]
            vals = [int(v) for row in rows for v in row]
        except ValueError as exc:
            raise InputError(f"bad matrix literal {literal!r}") from exc
        if len(rows) != 2 or any(len(r) != 2 for r in rows):
            raise InputError(f"matrix literal must look like 'a,b;c,d': {literal!r}")
        return self.index_of(vals)

    # group operations ----------------------------------------------------------
    def _mul_entries(self, i, j) -> np.ndarray:
        F = self.gf
        x = self.entries[np.asarray(i)]
        y = self.entries[np.asarray(j)]
        x, y = np.broadcast_arrays(x, y)
        shape = x.shape[:-1]
        x, y = x.reshape(-1, 4), y.reshape(-1, 4)
        a = F.add(F.mul(x[:, 0], y[:, 0]), F.mul(x[:, 1], y[:, 2]))
        b = F.add(F.mul(x[:, 0], y[:, 1]), F.mul(x[:, 1], y[:, 3]))
        c = F.add(F.mul(x[:, 2], y[:, 0]), F.mul(x[:, 3], y[:, 2]))
        d = F.add(F.mul(x[:, 2], y[:, 1]), F.mul(x[:, 3], y[:, 3]))
        ents = np.stack([a, b, c, d], axis=1)
        if self.projective:
            ents = self._normalize(ents)
        return self._lookup(ents).reshape(shape)

    def mul(self, i, j):
        if self._table is not None:
            return self._table[i, j]
        return self._mul_entries(i, j)

    def _compute_inverse(self) -> np.ndarray:
        F = self.gf
        e = self.entries
        det = F.sub(F.mul(e[:, 0], e[:, 3]), F.mul(e[:, 1], e[:, 2]))
        dinv = F.inv(det)
        adj = np.stack([e[:, 3], F.neg(e[:, 1]), F.neg(e[:, 2]), e[:, 0]], axis=1)
        ents = np.stack([F.mul(adj[:, j], dinv) for j in range(4)], axis=1)
        if self.projective:
            ents = self._normalize(ents)
        return self._lookup(ents)

    def inv(self, i):
        return self.inverse[i]

    def power_map(self, e: int) -> np.ndarray:
        """Array sending each element index to the index of its ``e``-th power."""
        if e in self._powers:
            return self._powers[e]
        if e == 0:
            out = np.full(self.order, self.identity)
        elif e < 0:
            out = self.inverse[self.power_map(-e)]
        else:
            half = self.power_map(e // 2)
            out = self.mul(half, half)
            if e % 2:
                out = self.mul(out, np.arange(self.order))
        self._powers[e] = out
        return out

    def power(self, i, e: int):
        return self.power_map(e)[i]

    def conjugate(self, h, g):
        """``h g h^-1``."""
        return self.mul(self.mul(h, g), self.inverse[h])

    # invariants ------------------------------------------------------------------
    @cached_property
    def all(self) -> np.ndarray:
        return np.arange(self.order)

    @cached_property
    def traces(self) -> np.ndarray:
        F = self.gf
        return F.add(self.entries[:, 0], self.entries[:, 3])

    @cached_property
    def dets(self) -> np.ndarray:
        F, e = self.gf, self.entries
        return F.sub(F.mul(e[:, 0], e[:, 3]), F.mul(e[:, 1], e[:, 2]))

    @cached_property
    def projective_invariant(self) -> np.ndarray:
        """``tr^2 / det``, a class function on PGL2 independent of the lift."""
        F = self.gf
        return F.mul(F.mul(self.traces, self.traces), F.inv(self.dets))

    @cached_property
    def center(self) -> np.ndarray:
        e = self.entries
        scalar = (e[:, 1] == 0) & (e[:, 2] == 0) & (e[:, 0] == e[:, 3])
        return np.flatnonzero(scalar)

    @cached_property
    def minus_one(self) -> int | None:
        if self.kind != "SL2":
            return None
        m1 = self.gf.constant(-1)
        return self.index_of([m1, 0, 0, m1])

    @cached_property
    def unipotent_mask(self) -> np.ndarray:
        """Nontrivial unipotent elements.

        For matrices this is ``(g - 1)^2 = 0`` with ``g != 1``, valid in every
        characteristic; projectively it is ``tr^2 = 4 det`` with ``g != 1``.
        """
        F, e = self.gf, self.entries
        if self.projective:
            four_det = F.mul(self.dets, F.constant(4))
            mask = F.mul(self.traces, self.traces) == four_det
        else:
            one = F.constant(1)
            a, b, c, d = (e[:, j] for j in range(4))
            a1, d1 = F.sub(a, one), F.sub(d, one)
            n11 = F.add(F.mul(a1, a1), F.mul(b, c))
            n12 = F.add(F.mul(a1, b), F.mul(b, d1))
            n21 = F.add(F.mul(c, a1), F.mul(d1, c))
            n22 = F.add(F.mul(c, b), F.mul(d1, d1))
            mask = (n11 == 0) & (n12 == 0) & (n21 == 0) & (n22 == 0)
        mask = mask.copy()
        mask[self.identity] = False
        return mask

    @cached_property
    def semisimple_mask(self) -> np.ndarray:
        """Central elements and those with distinct eigenvalues over ``F_{q^2}``."""
        F = self.gf
        disc = F.sub(F.mul(self.traces, self.traces), F.mul(self.dets, F.constant(4)))
        mask = disc != 0
        mask[self.center] = True
        return mask

    def __repr__(self) -> str:
        return f"{self.kind}(F_{self.q})"

    def describe(self) -> dict:
        return {"kind": self.kind, "q": self.q, "order": self.order}


_CACHE: dict[tuple, GroupTable] = {}


def build_group(kind: str, field: FieldSpec | int, max_order: int = DEFAULT_MAX_ORDER) -> GroupTable:
    """Enumerate ``kind`` over ``field`` (a :class:`FieldSpec` or the order ``q``).

    Tables are cached per ``(kind, field)``; they are immutable once built.
    """
    if isinstance(field, int):
        field = FieldSpec.of_order(field)
    kind = kind.upper()
    if kind not in KINDS:
        raise InputError(f"unknown group kind {kind!r}; expected one of {', '.join(KINDS)}")
    key = (kind, field.p, field.k, field.modulus)
    if key not in _CACHE:
        _CACHE[key] = GroupTable(kind, field, max_order)
    return _CACHE[key]
