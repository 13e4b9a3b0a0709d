"""Cyclotomic polynomials, arithmetic in ``Z[zeta_n]`` and the N_g criterion.

Integer polynomials are coefficient lists, lowest degree first.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

IntPoly = tuple[int, ...]


def _trim(p: list[int]) -> IntPoly:
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return tuple(p)


def poly_mul(a: Sequence[int], b: Sequence[int]) -> IntPoly:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def poly_divmod(num: Sequence[int], den: Sequence[int]) -> tuple[IntPoly, IntPoly]:
    """Division by a monic polynomial over Z."""
    if den[-1] != 1:
        raise ValueError("divisor must be monic")
    rem = list(num)
    dq = len(den) - 1
    if len(rem) - 1 < dq:
        return (0,), _trim(rem)
    quot = [0] * (len(rem) - dq)
    for i in range(len(rem) - 1, dq - 1, -1):
        c = rem[i]
        if c:
            quot[i - dq] = c
            for j, d in enumerate(den):
                rem[i - dq + j] -= c * d
    return _trim(quot), _trim(rem[:dq] or [0])


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> IntPoly:
    """``Phi_n``, by exact division of ``x^n - 1`` by ``Phi_d`` for proper divisors ``d``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    num: IntPoly = (-1,) + (0,) * (n - 1) + (1,)
    for d in range(1, n):
        if n % d == 0:
            num, rem = poly_divmod(num, cyclotomic_poly(d))
            if any(rem):
                raise ArithmeticError(f"Phi_{d} does not divide x^{n} - 1")
    return num


@dataclass(frozen=True)
class CycloElt:
    """Element of ``Z[zeta_n]`` as a polynomial in ``zeta`` reduced mod ``Phi_n``."""

    conductor: int
    coeffs: IntPoly

    @classmethod
    def from_poly(cls, n: int, poly: Sequence[int]) -> CycloElt:
        phi = cyclotomic_poly(n)
        deg = len(phi) - 1
        _, rem = poly_divmod(poly, phi)
        padded = list(rem) + [0] * (deg - len(rem))
        return cls(n, tuple(padded[:deg]))

    @classmethod
    def zeta_power(cls, n: int, k: int) -> CycloElt:
        k %= n
        return cls.from_poly(n, (0,) * k + (1,))

    @classmethod
    def integer(cls, n: int, c: int) -> CycloElt:
        return cls.from_poly(n, (c,))

    def __add__(self, other: CycloElt) -> CycloElt:
        self._check(other)
        return CycloElt(self.conductor, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __mul__(self, other: CycloElt) -> CycloElt:
        self._check(other)
        return CycloElt.from_poly(self.conductor, poly_mul(self.coeffs, other.coeffs))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def _check(self, other: CycloElt) -> None:
        if other.conductor != self.conductor:
            raise ValueError("elements of different cyclotomic rings")


@dataclass(frozen=True)
class WeightModule:
    weights: tuple[int, ...]
    label: str = ""

    def __post_init__(self) -> None:
        if not self.weights:
            raise ValueError("a weight module needs at least one weight")
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))


def ng_eigenvalue(weight: int, m: int, g_order: int) -> CycloElt:
    """``sum_{k<m} zeta^(weight * k)`` with ``zeta`` a primitive ``g_order``-th root of 1."""
    total = CycloElt.integer(g_order, 0)
    for k in range(m):
        total = total + CycloElt.zeta_power(g_order, weight * k)
    return total


def ng_operator_analysis(module: WeightModule, m: int, g_order: int) -> dict:
    """Decide whether ``N_g = 1 + g + ... + g^(m-1)`` is singular on ``module``.

    ``g`` acts on the weight-``l`` line by ``zeta^l``.  The operator is
    diagonal in the weight basis, so it is surjective iff no eigenvalue is 0.
    """
    if m < 1 or g_order < 1:
        raise ValueError("m and g_order must be >= 1")
    eigen = {lam: ng_eigenvalue(lam, m, g_order) for lam in dict.fromkeys(module.weights)}
    kernel = [lam for lam in module.weights if eigen[lam].is_zero()]
    return {
        "label": module.label,
        "m": m,
        "g_order": g_order,
        "singular": bool(kernel),
        "kernel_weights": kernel,
        "surjective": not kernel,
        "eigenvalues": {str(lam): list(e.coeffs) for lam, e in eigen.items()},
    }
