"""Magnus embedding of the free metabelian group and the prime set ``S_w``.

Generator ``x_i`` is sent to the upper-triangular matrix
``[[t_i, s_i], [0, t_i^-1]]`` over ``Z[t^{+-1}, s]``.  Elements of the image
are stored as pairs ``(alpha, beta)`` for ``[[alpha, beta], [0, alpha^-1]]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import InputError
from .laurent import LaurentPoly
from .words import Word, abelianization

DEFAULT_MAX_LENGTH = 10_000


@lru_cache(maxsize=None)
def magnus_ring(n: int) -> LaurentPoly:
    """Zero polynomial of ``A = Z[t_1^{+-1}..t_n^{+-1}, s_1..s_n]``."""
    names = [f"t{i}" for i in range(1, n + 1)] + [f"s{i}" for i in range(1, n + 1)]
    return LaurentPoly(names, {}, [True] * n + [False] * n)


@dataclass(frozen=True)
class MagnusMatrix:
    alpha: LaurentPoly
    beta: LaurentPoly

    def __post_init__(self) -> None:
        if not self.alpha.is_unit_monomial():
            raise ValueError(f"alpha must be a unit monomial, got {self.alpha}")

    @classmethod
    def identity(cls, ring: LaurentPoly) -> MagnusMatrix:
        return cls(ring.constant(1), ring.zero())

    def __mul__(self, other: MagnusMatrix) -> MagnusMatrix:
        # [[a, b], [0, 1/a]] [[c, d], [0, 1/c]] = [[ac, ad + b/c], [0, 1/(ac)]]
        a, b, c, d = self.alpha, self.beta, other.alpha, other.beta
        return MagnusMatrix(a * c, a * d + b * c.unit_inverse())

    def inverse(self) -> MagnusMatrix:
        return MagnusMatrix(self.alpha.unit_inverse(), -self.beta)

    def is_identity(self) -> bool:
        return self.alpha == 1 and self.beta.is_zero()

    def to_json(self) -> dict:
        return {"alpha": self.alpha.to_json(), "beta": self.beta.to_json()}


def generator_matrix(i: int, n: int) -> MagnusMatrix:
    ring = magnus_ring(n)
    return MagnusMatrix(ring.monomial(f"t{i}"), ring.monomial(f"s{i}"))


def _power(m: MagnusMatrix, e: int, ring: LaurentPoly) -> MagnusMatrix:
    if e < 0:
        m, e = m.inverse(), -e
    result = MagnusMatrix.identity(ring)
    while e:
        if e & 1:
            result = result * m
        m = m * m
        e >>= 1
    return result


def magnus_image(w: Word, max_length: int = DEFAULT_MAX_LENGTH) -> MagnusMatrix:
    if len(w) > max_length:
        raise InputError(
            f"word length {len(w)} exceeds the Magnus length bound {max_length}"
        )
    n = w.arity
    ring = magnus_ring(n)
    gens = {i: generator_matrix(i, n) for i in range(1, n + 1)}
    result = MagnusMatrix.identity(ring)
    for g, e in w.letters:
        result = result * _power(gens[g], e, ring)
    return result


def f_w(w: Word, max_length: int = DEFAULT_MAX_LENGTH) -> LaurentPoly:
    """Upper-right entry of the Magnus image of a word in ``[F_n, F_n]``."""
    if any(abelianization(w)):
        raise InputError(f"word not in derived subgroup: {w}")
    m = magnus_image(w, max_length)
    if m.alpha != 1:
        raise AssertionError(f"alpha should be 1 on [F, F], got {m.alpha}")
    n = w.arity
    for exps in m.beta.terms:
        if sum(exps[n:]) != 1:
            raise AssertionError(f"term {exps} of f_w is not linear in the s-variables")
    return m.beta


def is_in_F2(w: Word) -> bool:
    """True iff ``w`` lies in the second derived subgroup ``[[F, F], [F, F]]``."""
    return magnus_image(w).is_identity()


def prime_factors(n: int) -> list[int]:
    n = abs(n)
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


def prime_set_S(w: Word) -> list[int]:
    """Primes dividing every coefficient of ``f_w``, sorted."""
    f = f_w(w)
    if f.is_zero():
        raise InputError("word lies in F_n^2, S_w undefined")
    return prime_factors(f.content())
