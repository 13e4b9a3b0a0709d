"""Trace polynomials of words on SL_2.

The first variable is replaced by the generic matrix ``[[1, x], [y, 1 + xy]]``
and the remaining variables by fixed integer matrices of determinant 1; the
trace of the result is a polynomial in ``Z[x, y]``.
"""

from __future__ import annotations

from typing import Sequence

from .errors import InputError
from .laurent import LaurentPoly
from .words import AnyWord, Word, evaluate_with_constants

IntMatrix = tuple[tuple[int, int], tuple[int, int]]
PolyMatrix = tuple[LaurentPoly, LaurentPoly, LaurentPoly, LaurentPoly]

XY_RING = LaurentPoly(("x", "y"), {}, (False, False))


class _PolySL2:
    """2x2 matrices over ``Z[x, y]`` with determinant 1, as row-major 4-tuples."""

    identity: PolyMatrix = (XY_RING.constant(1), XY_RING.zero(), XY_RING.zero(), XY_RING.constant(1))

    @staticmethod
    def mul(m: PolyMatrix, n: PolyMatrix) -> PolyMatrix:
        a, b, c, d = m
        e, f, g, h = n
        return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)

    @staticmethod
    def inv(m: PolyMatrix) -> PolyMatrix:
        a, b, c, d = m
        return (d, -b, -c, a)


def generic_matrix() -> PolyMatrix:
    x, y = XY_RING.monomial("x"), XY_RING.monomial("y")
    return (XY_RING.constant(1), x, y, 1 + x * y)


def _lift(m: Sequence[Sequence[int]]) -> PolyMatrix:
    (a, b), (c, d) = m
    if a * d - b * c != 1:
        raise InputError(f"constant matrix {m} does not have determinant 1")
    return tuple(XY_RING.constant(int(v)) for v in (a, b, c, d))  # type: ignore[return-value]


def trace_polynomial(
    w: AnyWord,
    matrices: Sequence[Sequence[Sequence[int]]] = (),
    sigma: Sequence[Sequence[Sequence[int]]] = (),
) -> LaurentPoly:
    """``Psi(x, y) = tr w([[1, x], [y, 1 + xy]], g_2, ..., g_n)``.

    ``matrices`` supplies ``g_2..g_n``; ``sigma`` supplies the constants when
    ``w`` is a word with constants.
    """
    n = w.arity
    if n < 1:
        raise InputError("trace polynomial needs a word in at least one variable")
    if len(matrices) != n - 1:
        raise InputError(f"word of arity {n} needs {n - 1} substitution matrices, got {len(matrices)}")
    values = [generic_matrix()] + [_lift(m) for m in matrices]
    if isinstance(w, Word):
        result = evaluate_with_constants(w, values, (), _PolySL2)
    else:
        result = evaluate_with_constants(w, values, [_lift(s) for s in sigma], _PolySL2)
    return result[0] + result[3]
