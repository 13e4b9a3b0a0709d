"""Finite fields F_q with vectorized arithmetic on integer element codes.

An element of ``F_{p^k}`` is encoded as the integer ``sum c_i p^i`` where
``c_0 + c_1 t + ... + c_{k-1} t^{k-1}`` is its residue modulo the defining
polynomial.  Prime fields use plain residues.  Extension fields multiply via
exp/log tables with respect to a primitive element.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Sequence

import numpy as np

from .errors import InputError

DEFAULT_MAX_Q = 2 ** 16


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, k)`` with ``q = p^k``, or raise."""
    for p in range(2, q + 1):
        if q % p == 0:
            k, r = 0, q
            while r % p == 0:
                r //= p
                k += 1
            if r != 1 or not is_prime(p):
                break
            return p, k
    raise InputError(f"q = {q} is not a prime power")


# polynomial helpers over F_p (coefficient lists, lowest degree first) ---------

def _ptrim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    a = _ptrim([x % p for x in a])
    m = _ptrim([x % p for x in m])
    inv_lead = pow(m[-1], -1, p)
    while len(a) >= len(m):
        c = a[-1] * inv_lead % p
        shift = len(a) - len(m)
        for i, x in enumerate(m):
            a[shift + i] = (a[shift + i] - c * x) % p
        _ptrim(a)
    return a


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree ``1..deg/2``."""
    k = len(modulus) - 1
    if k < 1 or modulus[-1] % p == 0:
        return False
    for d in range(1, k // 2 + 1):
        for low in product(range(p), repeat=d):
            if not _pmod(modulus, list(low) + [1], p):
                return False
    return True


def default_modulus(p: int, k: int) -> tuple[int, ...]:
    """Monic irreducible of degree ``k`` with the smallest code ``sum c_i p^i`` of its lower part."""
    if k == 1:
        return (0, 1)
    for code in range(p ** k):
        low = [(code // p ** i) % p for i in range(k)]
        cand = tuple(low + [1])
        if is_irreducible(cand, p):
            return cand
    raise ArithmeticError(f"no irreducible polynomial of degree {k} over F_{p}")


@dataclass(frozen=True)
class FieldSpec:
    p: int
    k: int = 1
    modulus: tuple[int, ...] | None = None
    max_q: int = DEFAULT_MAX_Q

    def __post_init__(self) -> None:
        if not is_prime(self.p):
            raise InputError(f"p = {self.p} is not prime")
        if self.k < 1:
            raise InputError("extension degree must be >= 1")
        if self.p ** self.k > self.max_q:
            raise InputError(f"q = {self.p ** self.k} exceeds the field size bound {self.max_q}")
        if self.modulus is None:
            object.__setattr__(self, "modulus", default_modulus(self.p, self.k))
        else:
            mod = tuple(int(c) % self.p for c in self.modulus)
            if len(mod) != self.k + 1 or mod[-1] != 1:
                raise InputError(f"modulus must be monic of degree {self.k}: {self.modulus}")
            if not is_irreducible(mod, self.p):
                raise InputError(f"modulus {self.modulus} is not irreducible over F_{self.p}")
            object.__setattr__(self, "modulus", mod)

    @property
    def q(self) -> int:
        return self.p ** self.k

    @classmethod
    def of_order(cls, q: int, modulus: Sequence[int] | None = None, max_q: int = DEFAULT_MAX_Q) -> FieldSpec:
        if q > max_q:
            raise InputError(f"q = {q} exceeds the field size bound {max_q}")
        p, k = prime_power(q)
        return cls(p, k, None if modulus is None else tuple(modulus), max_q)


class GF:
    """Arithmetic on element codes ``0..q-1``; all operations accept numpy arrays."""

    def __init__(self, spec: FieldSpec):
        self.spec = spec
        self.p, self.k, self.q = spec.p, spec.k, spec.q
        if self.k > 1:
            self._build_tables()
        else:
            inv = np.zeros(self.p, dtype=np.int64)
            inv[1:] = [pow(a, -1, self.p) for a in range(1, self.p)]
            self._inv = inv

    # scalar polynomial multiplication, used only to build tables
    def _digits(self, a: int) -> list[int]:
        return [(a // self.p ** i) % self.p for i in range(self.k)]

    def _code(self, digits: Sequence[int]) -> int:
        return sum(int(c) * self.p ** i for i, c in enumerate(digits))

    def _mul_scalar(self, a: int, b: int) -> int:
        da, db = self._digits(a), self._digits(b)
        prod = [0] * (2 * self.k - 1)
        for i, x in enumerate(da):
            for j, y in enumerate(db):
                prod[i + j] += x * y
        return self._code(_pmod(prod, self.spec.modulus, self.p) + [0] * self.k)

    def _build_tables(self) -> None:
        q = self.q
        exp = None
        for g in range(2, q):
            powers = [1]
            x = g
            while x != 1:
                powers.append(x)
                x = self._mul_scalar(x, g)
            if len(powers) == q - 1:
                exp = powers
                self.primitive = g
                break
        if exp is None:
            raise ArithmeticError("no primitive element found")
        self._exp = np.array(exp + exp, dtype=np.int64)
        log = np.zeros(q, dtype=np.int64)
        log[np.array(exp)] = np.arange(q - 1)
        self._log = log
        self._digit_table = np.array([self._digits(a) for a in range(q)], dtype=np.int64)
        self._weights = self.p ** np.arange(self.k, dtype=np.int64)

    @cached_property
    def elements(self) -> np.ndarray:
        return np.arange(self.q, dtype=np.int64)

    def add(self, a, b):
        if self.k == 1:
            return (np.asarray(a) + b) % self.p
        s = (self._digit_table[a] + self._digit_table[b]) % self.p
        return s @ self._weights

    def neg(self, a):
        if self.k == 1:
            return (-np.asarray(a)) % self.p
        return ((-self._digit_table[a]) % self.p) @ self._weights

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.k == 1:
            return (np.asarray(a) * b) % self.p
        a, b = np.asarray(a), np.asarray(b)
        out = self._exp[self._log[a] + self._log[b]]
        return np.where((a == 0) | (b == 0), 0, out)

    def inv(self, a):
        a = np.asarray(a)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero in a finite field")
        if self.k == 1:
            return self._inv[a]
        return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]

    def from_int(self, n: int) -> int:
        """Map an integer literal to an element code (residue mod p for prime fields)."""
        if self.k == 1:
            return n % self.p
        if not 0 <= n < self.q:
            raise InputError(f"element code {n} out of range for F_{self.q}")
        return n

    def constant(self, n: int) -> int:
        """Image of the integer ``n`` in the prime subfield."""
        return n % self.p

    def __repr__(self) -> str:
        return f"GF({self.q})"
