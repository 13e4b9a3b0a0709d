"""Root systems, Weyl group elements and the root-system level criteria.

Coordinates follow Bourbaki's planches: ``A_r`` lives in ``R^{r+1}``, ``G_2``
in the plane ``x_1 + x_2 + x_3 = 0`` of ``R^3``, and ``E_6``, ``E_7`` are the
subsystems of ``E_8`` spanned by its first six, respectively seven, simple
roots.  All arithmetic uses :class:`fractions.Fraction`.
"""

from __future__ import annotations

import math
import re
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations, product
from typing import Sequence

from .errors import InputError

Vector = tuple[Fraction, ...]
Matrix = tuple[tuple[Fraction, ...], ...]

CLASSICAL = ("A", "B", "C", "D")
EXCEPTIONAL_RANKS = {"E": (6, 7, 8), "F": (4,), "G": (2,)}

# Order of the centre of the simply connected group (Bourbaki, planches I-IX).
SC_CENTER_ORDER = {"B": 2, "C": 2, "D": 4, "E6": 3, "E7": 2, "E8": 1, "F4": 1, "G2": 1}
# Product of the bad primes: A none; B, C, D {2}; G2, F4, E6, E7 {2, 3}; E8 {2, 3, 5}.
# D3 = A3 has highest root a1 + a2 + a3, so no bad primes.
BAD_PRIME_PRODUCT = {"A": 1, "B": 2, "C": 2, "D": 2, "D3": 1, "G2": 6, "F4": 6, "E6": 6, "E7": 6, "E8": 30}


# exact linear algebra ----------------------------------------------------------

def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    cols = list(zip(*B))
    return tuple(tuple(dot(row, col) for col in cols) for row in A)


def mat_vec(A: Matrix, v: Sequence[Fraction]) -> Vector:
    return tuple(dot(row, v) for row in A)


def identity_matrix(n: int) -> Matrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def determinant(A: Matrix) -> Fraction:
    m = [list(r) for r in A]
    n = len(m)
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        for r in range(col + 1, n):
            f = m[r][col] / m[col][col]
            if f:
                for c in range(col, n):
                    m[r][c] -= f * m[col][c]
    return det


def inverse_matrix(A: Matrix) -> Matrix:
    n = len(A)
    m = [list(r) + list(e) for r, e in zip(A, identity_matrix(n))]
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            raise ZeroDivisionError("singular matrix")
        m[col], m[pivot] = m[pivot], m[col]
        p = m[col][col]
        m[col] = [x / p for x in m[col]]
        for r in range(n):
            if r != col and m[r][col]:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return tuple(tuple(r[n:]) for r in m)


def characteristic_polynomial(A: Matrix) -> list[Fraction]:
    """Coefficients of ``det(x I - A)``, highest degree first (Faddeev-LeVerrier)."""
    n = len(A)
    coeffs = [Fraction(1)]
    M = tuple(tuple(Fraction(0) for _ in range(n)) for _ in range(n))
    for k in range(1, n + 1):
        AM = mat_mul(A, M)
        M = tuple(tuple(AM[i][j] + (coeffs[-1] if i == j else 0) for j in range(n)) for i in range(n))
        AM = mat_mul(A, M)
        coeffs.append(-sum((AM[i][i] for i in range(n)), Fraction(0)) / k)
    return coeffs


def _vec(*xs) -> Vector:
    return tuple(Fraction(x) for x in xs)


def _unit(n: int, i: int, scale=1) -> list[Fraction]:
    v = [Fraction(0)] * n
    v[i] = Fraction(scale)
    return v


def parse_type(type_label: str, rank: int | None = None) -> tuple[str, int]:
    """Normalize ``("B", 3)``, ``("B3", None)`` or ``("E8", None)`` to ``(letter, rank)``."""
    m = re.fullmatch(r"\s*([A-Ga-g])\s*_?(\d*)\s*", str(type_label))
    if not m:
        raise InputError(f"unknown root system type {type_label!r}")
    letter = m.group(1).upper()
    embedded = int(m.group(2)) if m.group(2) else None
    if embedded is not None and rank is not None and embedded != rank:
        raise InputError(f"type {type_label!r} conflicts with rank {rank}")
    r = embedded if embedded is not None else rank
    if letter in EXCEPTIONAL_RANKS:
        if r is None and len(EXCEPTIONAL_RANKS[letter]) == 1:
            r = EXCEPTIONAL_RANKS[letter][0]
        if r not in EXCEPTIONAL_RANKS[letter]:
            raise InputError(f"type {letter} exists only in rank {EXCEPTIONAL_RANKS[letter]}")
        return letter, r
    if letter not in CLASSICAL:
        raise InputError(f"unknown root system type {type_label!r}")
    if r is None:
        raise InputError(f"type {letter} needs a rank")
    minimum = {"A": 1, "B": 2, "C": 2, "D": 3}[letter]
    if r < minimum:
        raise InputError(f"type {letter} needs rank >= {minimum}, got {r}")
    return letter, r


def type_name(letter: str, rank: int) -> str:
    return f"{letter}{rank}"


# root data ------------------------------------------------------------------

def _e8_roots() -> tuple[list[Vector], list[Vector]]:
    roots = []
    for i, j in combinations(range(8), 2):
        for si, sj in product((1, -1), repeat=2):
            v = [Fraction(0)] * 8
            v[i], v[j] = Fraction(si), Fraction(sj)
            roots.append(tuple(v))
    half = Fraction(1, 2)
    for signs in product((1, -1), repeat=8):
        if signs.count(-1) % 2 == 0:
            roots.append(tuple(half * s for s in signs))
    simple = [
        tuple(half * s for s in (1, -1, -1, -1, -1, -1, -1, 1)),
        _vec(1, 1, 0, 0, 0, 0, 0, 0),
    ]
    for i in range(6):
        v = [Fraction(0)] * 8
        v[i + 1], v[i] = Fraction(1), Fraction(-1)
        simple.append(tuple(v))
    return roots, simple


def _classical_data(letter: str, r: int) -> tuple[list[Vector], list[Vector]]:
    if letter == "A":
        n = r + 1
        roots = []
        for i in range(n):
            for j in range(n):
                if i != j:
                    v = _unit(n, i)
                    v[j] = Fraction(-1)
                    roots.append(tuple(v))
        simple = []
        for i in range(r):
            v = _unit(n, i)
            v[i + 1] = Fraction(-1)
            simple.append(tuple(v))
        return roots, simple
    n = r
    roots = []
    for i, j in combinations(range(n), 2):
        for si, sj in product((1, -1), repeat=2):
            v = [Fraction(0)] * n
            v[i], v[j] = Fraction(si), Fraction(sj)
            roots.append(tuple(v))
    if letter in ("B", "C"):
        scale = 1 if letter == "B" else 2
        for i in range(n):
            for s in (1, -1):
                roots.append(tuple(_unit(n, i, s * scale)))
    simple = []
    for i in range(r - 1):
        v = _unit(n, i)
        v[i + 1] = Fraction(-1)
        simple.append(tuple(v))
    if letter == "B":
        simple.append(tuple(_unit(n, n - 1)))
    elif letter == "C":
        simple.append(tuple(_unit(n, n - 1, 2)))
    else:
        v = _unit(n, n - 2)
        v[n - 1] = Fraction(1)
        simple.append(tuple(v))
    return roots, simple


def _root_data(letter: str, r: int) -> tuple[list[Vector], list[Vector]]:
    if letter in CLASSICAL:
        return _classical_data(letter, r)
    if letter == "G":
        roots = []
        for i, j in combinations(range(3), 2):
            for s in (1, -1):
                v = [Fraction(0)] * 3
                v[i], v[j] = Fraction(s), Fraction(-s)
                roots.append(tuple(v))
        for i in range(3):
            for s in (1, -1):
                v = [Fraction(-s)] * 3
                v[i] = Fraction(2 * s)
                roots.append(tuple(v))
        return roots, [_vec(1, -1, 0), _vec(-2, 1, 1)]
    if letter == "F":
        roots = []
        for i in range(4):
            for s in (1, -1):
                roots.append(tuple(_unit(4, i, s)))
        for i, j in combinations(range(4), 2):
            for si, sj in product((1, -1), repeat=2):
                v = [Fraction(0)] * 4
                v[i], v[j] = Fraction(si), Fraction(sj)
                roots.append(tuple(v))
        half = Fraction(1, 2)
        for signs in product((1, -1), repeat=4):
            roots.append(tuple(half * s for s in signs))
        simple = [_vec(0, 1, -1, 0), _vec(0, 0, 1, -1), _vec(0, 0, 0, 1),
                  tuple(half * s for s in (1, -1, -1, -1))]
        return roots, simple
    # E6, E7: roots of E8 in the span of the first r simple roots.
    roots8, simple8 = _e8_roots()
    if r == 8:
        return roots8, simple8
    simple = simple8[:r]
    gram_inv = inverse_matrix(tuple(tuple(dot(a, b) for b in simple8) for a in simple8))
    keep = []
    for v in roots8:
        coeffs = mat_vec(gram_inv, tuple(dot(a, v) for a in simple8))
        if all(c == 0 for c in coeffs[r:]):
            keep.append(v)
    return keep, simple


@dataclass(frozen=True)
class RootSystem:
    letter: str
    rank: int
    roots: tuple[Vector, ...]
    simple_roots: tuple[Vector, ...]

    @property
    def type_label(self) -> str:
        return type_name(self.letter, self.rank)

    @property
    def dim(self) -> int:
        return len(self.roots[0])

    @cached_property
    def root_set(self) -> frozenset[Vector]:
        return frozenset(self.roots)

    @cached_property
    def simple_indices(self) -> tuple[int, ...]:
        pos = {v: i for i, v in enumerate(self.roots)}
        return tuple(pos[a] for a in self.simple_roots)

    @cached_property
    def gram(self) -> Matrix:
        return tuple(tuple(dot(a, b) for b in self.simple_roots) for a in self.simple_roots)

    @cached_property
    def gram_inverse(self) -> Matrix:
        return inverse_matrix(self.gram)

    def simple_coordinates(self, v: Sequence[Fraction]) -> Vector:
        """Coefficients of ``v`` in the basis of simple roots (``v`` must lie in their span)."""
        coeffs = mat_vec(self.gram_inverse, tuple(dot(a, v) for a in self.simple_roots))
        back = [sum((c * a[k] for c, a in zip(coeffs, self.simple_roots)), Fraction(0)) for k in range(self.dim)]
        if tuple(back) != tuple(v):
            raise ValueError(f"{v} is not in the span of the simple roots")
        return coeffs

    @cached_property
    def positive_roots(self) -> tuple[Vector, ...]:
        out = []
        for v in self.roots:
            c = self.simple_coordinates(v)
            if all(x >= 0 for x in c):
                out.append(v)
            elif not all(x <= 0 for x in c):
                raise AssertionError(f"root {v} is neither positive nor negative")
        return tuple(out)

    def to_json(self) -> dict:
        enc = lambda v: [[x.numerator, x.denominator] for x in v]  # noqa: E731
        return {
            "type": self.type_label,
            "rank": self.rank,
            "dim": self.dim,
            "roots": [enc(v) for v in self.roots],
            "simple_roots": [enc(v) for v in self.simple_roots],
            "simple_indices": list(self.simple_indices),
            "positive_indices": [i for i, v in enumerate(self.roots) if v in set(self.positive_roots)],
        }


@lru_cache(maxsize=None)
def build_root_system(type_label: str, rank: int | None = None) -> RootSystem:
    letter, r = parse_type(type_label, rank)
    roots, simple = _root_data(letter, r)
    return RootSystem(letter, r, tuple(sorted(roots)), tuple(simple))


# Weyl group elements ------------------------------------------------------------

def reflection_matrix(alpha: Sequence[Fraction]) -> Matrix:
    n = len(alpha)
    norm = dot(alpha, alpha)
    return tuple(
        tuple(Fraction(int(i == j)) - 2 * alpha[i] * alpha[j] / norm for j in range(n))
        for i in range(n)
    )


@dataclass(frozen=True)
class WeylElement:
    """Orthogonal map of the ambient space; ``factorization`` lists the reflections used."""

    matrix: Matrix
    factorization: tuple = ()

    def __mul__(self, other: WeylElement) -> WeylElement:
        return WeylElement(mat_mul(self.matrix, other.matrix), self.factorization + other.factorization)

    def apply(self, v: Sequence[Fraction]) -> Vector:
        return mat_vec(self.matrix, v)

    def is_orthogonal(self) -> bool:
        n = len(self.matrix)
        mt = tuple(zip(*self.matrix))
        return mat_mul(mt, self.matrix) == identity_matrix(n)

    def permutes_roots(self, rs: RootSystem) -> bool:
        return all(self.apply(v) in rs.root_set for v in rs.roots)

    def on_root_span(self, rs: RootSystem) -> Matrix:
        """Matrix in the basis of simple roots (column ``j`` is the image of ``alpha_j``)."""
        cols = [rs.simple_coordinates(self.apply(a)) for a in rs.simple_roots]
        return tuple(tuple(cols[j][i] for j in range(rs.rank)) for i in range(rs.rank))

    def order(self, limit: int = 10_000) -> int:
        n = len(self.matrix)
        ident = identity_matrix(n)
        m = self.matrix
        for k in range(1, limit + 1):
            if m == ident:
                return k
            m = mat_mul(m, self.matrix)
        raise ArithmeticError("order exceeds limit")

    def power(self, k: int) -> Matrix:
        m = identity_matrix(len(self.matrix))
        for _ in range(k):
            m = mat_mul(m, self.matrix)
        return m


def reflection(rs: RootSystem, alpha: Sequence[Fraction], label=None) -> WeylElement:
    return WeylElement(reflection_matrix(alpha), (label if label is not None else tuple(alpha),))


def simple_reflection(rs: RootSystem, i: int) -> WeylElement:
    """``w_{alpha_i}`` with ``i`` 1-based."""
    return reflection(rs, rs.simple_roots[i - 1], i)


def identity_element(rs: RootSystem) -> WeylElement:
    return WeylElement(identity_matrix(rs.dim), ())


def coxeter_element(rs: RootSystem, ordering: Sequence[int] | None = None) -> WeylElement:
    """Product ``w_{alpha_{o_1}} w_{alpha_{o_2}} ... w_{alpha_{o_r}}`` of all simple reflections."""
    ordering = list(ordering) if ordering is not None else list(range(1, rs.rank + 1))
    if sorted(ordering) != list(range(1, rs.rank + 1)):
        raise InputError(f"ordering {ordering} is not a permutation of 1..{rs.rank}")
    w = identity_element(rs)
    for i in ordering:
        w = w * simple_reflection(rs, i)
    return w


def is_fixed_point_free(w: WeylElement, rs: RootSystem) -> bool:
    """No nonzero fixed vector in the span of the simple roots: ``det(M - I) != 0`` there."""
    m = w.on_root_span(rs)
    shifted = tuple(tuple(m[i][j] - (i == j) for j in range(rs.rank)) for i in range(rs.rank))
    return determinant(shifted) != 0


def d_type_cycle_element(rs: RootSystem) -> WeylElement:
    """``w_beta w_{alpha_r} w_{alpha_{r-2}} ... w_{alpha_2} w_{alpha_1}`` with ``beta = e_1 - e_r``."""
    if rs.letter != "D":
        raise InputError(f"the cycle element is defined for type D, not {rs.type_label}")
    r = rs.rank
    beta = [Fraction(0)] * r
    beta[0], beta[r - 1] = Fraction(1), Fraction(-1)
    w = reflection(rs, beta, "beta") * simple_reflection(rs, r)
    for i in range(r - 2, 0, -1):
        w = w * simple_reflection(rs, i)
    return w


def signed_cycle_structure(w: WeylElement) -> list[int] | None:
    """Cycle lengths of ``w`` on ``{+-e_i}``, or ``None`` if it is not a signed permutation."""
    n = len(w.matrix)
    basis = []
    for i in range(n):
        for s in (1, -1):
            basis.append(tuple(_unit(n, i, s)))
    index = {v: k for k, v in enumerate(basis)}
    image = []
    for v in basis:
        u = w.apply(v)
        if u not in index:
            return None
        image.append(index[u])
    seen, lengths = set(), []
    for start in range(len(basis)):
        if start in seen:
            continue
        k, length = start, 0
        while k not in seen:
            seen.add(k)
            k = image[k]
            length += 1
        lengths.append(length)
    return sorted(lengths)


def weyl_group(rs: RootSystem, limit: int = 100_000) -> list[Matrix]:
    """All elements of ``W`` as matrices on the span of the simple roots (BFS closure)."""
    gens = [simple_reflection(rs, i).on_root_span(rs) for i in range(1, rs.rank + 1)]
    start = identity_matrix(rs.rank)
    seen = {start}
    queue = deque([start])
    while queue:
        m = queue.popleft()
        for g in gens:
            nxt = mat_mul(g, m)
            if nxt not in seen:
                seen.add(nxt)
                if len(seen) > limit:
                    raise ArithmeticError(f"Weyl group larger than {limit}")
                queue.append(nxt)
    return sorted(seen)


def are_conjugate(rs: RootSystem, w1: WeylElement, w2: WeylElement, group: list[Matrix] | None = None) -> bool:
    """Brute-force search for ``u`` with ``u w1 u^-1 = w2``."""
    a, b = w1.on_root_span(rs), w2.on_root_span(rs)
    group = group if group is not None else weyl_group(rs)
    return any(mat_mul(u, a) == mat_mul(b, u) for u in group)


def longest_element_is_minus_one(type_label: str, rank: int | None = None) -> bool:
    """``w_0 = -1`` unless the type is ``A_r`` (r >= 2), ``D_r`` (r odd) or ``E_6``."""
    letter, r = parse_type(type_label, rank)
    if letter == "A":
        return r == 1
    if letter == "D":
        return r % 2 == 0
    if letter == "E":
        return r != 6
    return True


def minus_one_in_weyl_group(rs: RootSystem) -> bool:
    """Search-based check of ``-1 in W``, for cross-checking in small rank."""
    minus = tuple(tuple(-x for x in row) for row in identity_matrix(rs.rank))
    return minus in set(weyl_group(rs))


# strictly firm parabolics ---------------------------------------------------------

def strictly_firm_parabolic(type_label: str, rank: int | None, k: int) -> dict:
    """Check that no positive root is orthogonal to every simple root other than ``alpha_k``."""
    letter, r = parse_type(type_label, rank)
    if letter not in CLASSICAL:
        raise InputError("strictly_firm_parabolic is implemented for classical types only")
    if not 1 <= k <= r:
        raise InputError(f"k must be in 1..{r}, got {k}")
    rs = build_root_system(letter, r)
    X = [a for i, a in enumerate(rs.simple_roots, start=1) if i != k]
    for beta in rs.positive_roots:
        if all(dot(beta, a) == 0 for a in X):
            return {"passes": False, "witness": beta}
    return {"passes": True, "witness": None}


# power map --------------------------------------------------------------------------

def _table_key(letter: str, r: int) -> str:
    return letter if letter in CLASSICAL else f"{letter}{r}"


def center_order(letter: str, r: int) -> int:
    if letter == "A":
        return r + 1
    return SC_CENTER_ORDER[_table_key(letter, r)]


@dataclass(frozen=True)
class IsogenyData:
    type_label: str
    center_order: int
    bad_prime_product: int


def isogeny_data(type_label: str, rank: int | None, isogeny: str | int = "simply_connected") -> IsogenyData:
    letter, r = parse_type(type_label, rank)
    sc = center_order(letter, r)
    if isogeny in ("simply_connected", "sc"):
        z = sc
    elif isogeny in ("adjoint", "ad"):
        z = 1
    else:
        try:
            z = int(isogeny)
        except (TypeError, ValueError) as exc:
            raise InputError(f"unknown isogeny {isogeny!r}") from exc
        if z < 1 or sc % z:
            raise InputError(f"centre order {z} does not divide {sc} for {type_name(letter, r)}")
    bad = BAD_PRIME_PRODUCT.get(f"{letter}{r}", BAD_PRIME_PRODUCT[_table_key(letter, r)])
    return IsogenyData(type_name(letter, r), z, bad)


def power_map_surjective(
    type_label: str, rank: int | None, isogeny: str | int, char_exponent: int, m: int
) -> bool:
    """``x -> x^m`` is onto iff ``gcd(m, p r z) = 1``."""
    if m < 1:
        raise InputError("m must be >= 1")
    if char_exponent != 1 and (char_exponent < 2 or any(char_exponent % d == 0 for d in range(2, math.isqrt(char_exponent) + 1))):
        raise InputError("characteristic exponent must be 1 or a prime")
    data = isogeny_data(type_label, rank, isogeny)
    return math.gcd(m, char_exponent * data.bad_prime_product * data.center_order) == 1


def shipped_types() -> list[tuple[str, int]]:
    out = [("A", r) for r in range(1, 9)]
    out += [(l, r) for l in ("B", "C") for r in range(2, 9)]
    out += [("D", r) for r in range(3, 9)]
    out += [("G", 2), ("F", 4), ("E", 6), ("E", 7), ("E", 8)]
    return out


def fraction_str(v: Sequence[Fraction]) -> str:
    return "(" + ",".join(str(x) for x in v) + ")"
