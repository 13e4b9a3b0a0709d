"""Sparse multivariate Laurent polynomials with integer coefficients."""

from __future__ import annotations

import math
from typing import Mapping, Sequence

Exponents = tuple[int, ...]


class LaurentPoly:
    """Element of ``Z[v_1^{+-1}, ...]`` over a fixed, named variable list.

    ``laurent`` flags which variables may carry negative exponents; the rest
    are ordinary polynomial variables and negative exponents there raise.
    Instances are treated as immutable.
    """

    __slots__ = ("variables", "laurent", "terms")

    def __init__(
        self,
        variables: Sequence[str],
        terms: Mapping[Exponents, int] | None = None,
        laurent: Sequence[bool] | None = None,
    ):
        self.variables = tuple(variables)
        self.laurent = tuple(laurent) if laurent is not None else (True,) * len(self.variables)
        if len(self.laurent) != len(self.variables):
            raise ValueError("laurent flags must match the variable list")
        clean: dict[Exponents, int] = {}
        for exps, c in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != len(self.variables):
                raise ValueError(f"exponent vector {exps} has wrong length")
            for e, ok in zip(exps, self.laurent):
                if e < 0 and not ok:
                    raise ValueError(f"negative exponent on polynomial variable in {exps}")
            if c:
                clean[exps] = clean.get(exps, 0) + c
        self.terms = {k: v for k, v in clean.items() if v}

    # constructors ----------------------------------------------------------
    def _like(self, terms: Mapping[Exponents, int]) -> LaurentPoly:
        return LaurentPoly(self.variables, terms, self.laurent)

    def zero(self) -> LaurentPoly:
        return self._like({})

    def constant(self, c: int) -> LaurentPoly:
        return self._like({(0,) * len(self.variables): c})

    def monomial(self, name_or_exps: str | Exponents, power: int = 1, coeff: int = 1) -> LaurentPoly:
        if isinstance(name_or_exps, str):
            exps = [0] * len(self.variables)
            exps[self.variables.index(name_or_exps)] = power
            return self._like({tuple(exps): coeff})
        return self._like({tuple(name_or_exps): coeff})

    def _coerce(self, other) -> LaurentPoly:
        if isinstance(other, LaurentPoly):
            if other.variables != self.variables:
                raise ValueError("polynomials live in different rings")
            return other
        if isinstance(other, int):
            return self.constant(other)
        return NotImplemented

    # ring operations ---------------------------------------------------------
    def __add__(self, other) -> LaurentPoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self.terms)
        for k, v in other.terms.items():
            terms[k] = terms.get(k, 0) + v
        return self._like(terms)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return self._like({k: -v for k, v in self.terms.items()})

    def __sub__(self, other) -> LaurentPoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> LaurentPoly:
        return (-self) + other

    def __mul__(self, other) -> LaurentPoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms: dict[Exponents, int] = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                terms[k] = terms.get(k, 0) + v1 * v2
        return self._like(terms)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> LaurentPoly:
        if n < 0:
            return self.unit_inverse() ** (-n)
        result, base = self.constant(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = self.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.variables == other.variables and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.variables, frozenset(self.terms.items())))

    # units -------------------------------------------------------------------
    def is_unit_monomial(self) -> bool:
        """True for ``+-`` a monomial in the Laurent variables only."""
        if len(self.terms) != 1:
            return False
        (exps, c), = self.terms.items()
        return c in (1, -1) and all(e == 0 or ok for e, ok in zip(exps, self.laurent))

    def unit_inverse(self) -> LaurentPoly:
        if not self.is_unit_monomial():
            raise ValueError(f"{self} is not a unit")
        (exps, c), = self.terms.items()
        return self._like({tuple(-e for e in exps): c})

    # queries -----------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def content(self) -> int:
        """gcd of all coefficients (0 for the zero polynomial)."""
        return math.gcd(*self.terms.values()) if self.terms else 0

    def degree_in(self, name: str) -> set[int]:
        i = self.variables.index(name)
        return {k[i] for k in self.terms}

    def evaluate(self, values: Mapping[str, int] | Sequence[int], modulus: int | None = None) -> int:
        """Evaluate at integer values; negative powers need ``modulus`` (prime) or unit values."""
        if isinstance(values, Mapping):
            values = [values[v] for v in self.variables]
        total = 0
        for exps, c in self.terms.items():
            term = c
            for x, e in zip(values, exps):
                if e >= 0:
                    term *= x ** e if modulus is None else pow(x, e, modulus)
                elif modulus is not None:
                    term *= pow(x, e, modulus)
                elif x in (1, -1):
                    term *= x ** (-e)
                else:
                    raise ValueError("negative power of a non-unit integer without a modulus")
            total += term
        return total % modulus if modulus is not None else total

    def reduce_mod(self, p: int) -> LaurentPoly:
        """Coefficients reduced into ``0..p-1``; terms that vanish mod ``p`` are dropped."""
        return self._like({k: v % p for k, v in self.terms.items()})

    def substitute(self, values: Mapping[str, "LaurentPoly | int"], target: LaurentPoly) -> LaurentPoly:
        """Substitute polynomials living in ``target``'s ring (``target`` supplies the ring)."""
        out = target.zero()
        for exps, c in self.terms.items():
            term = target.constant(c)
            for name, e in zip(self.variables, exps):
                if e:
                    val = values[name]
                    val = target.constant(val) if isinstance(val, int) else val
                    term = term * val ** e
            out = out + term
        return out

    # serialization -------------------------------------------------------------
    def sorted_terms(self) -> list[tuple[Exponents, int]]:
        return sorted(self.terms.items())

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for exps, c in self.sorted_terms():
            factors = [str(c)]
            factors += [f"{v}^{e}" for v, e in zip(self.variables, exps) if e]
            pieces.append("·".join(factors))
        return " + ".join(pieces)

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"

    def to_json(self) -> dict:
        return {
            "variables": list(self.variables),
            "laurent": list(self.laurent),
            "terms": [{"exponents": list(k), "coeff": v} for k, v in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, data: dict) -> LaurentPoly:
        terms = {tuple(t["exponents"]): int(t["coeff"]) for t in data["terms"]}
        return cls(data["variables"], terms, data.get("laurent"))
