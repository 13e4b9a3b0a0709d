import pytest
import sympy as sp

from wordmaps.cyclotomic import (
    CycloElt,
    WeightModule,
    cyclotomic_poly,
    ng_eigenvalue,
    ng_operator_analysis,
    poly_divmod,
    poly_mul,
)


def test_small_cyclotomics():
    assert cyclotomic_poly(1) == (-1, 1)
    assert cyclotomic_poly(3) == (1, 1, 1)
    assert cyclotomic_poly(9) == (1, 0, 0, 1, 0, 0, 1)


@pytest.mark.parametrize("n", range(1, 40))
def test_cyclotomics_against_sympy(n):
    x = sp.Symbol("x")
    ref = sp.Poly(sp.cyclotomic_poly(n, x), x).all_coeffs()[::-1]
    assert list(cyclotomic_poly(n)) == [int(c) for c in ref]


def test_divmod_roundtrip():
    a, b = (3, 0, -2, 5, 1), (1, 2, 1)
    q, r = poly_divmod(a, b)
    prod = poly_mul(q, b)
    total = [(prod[i] if i < len(prod) else 0) + (r[i] if i < len(r) else 0) for i in range(len(a))]
    assert total == list(a)


def test_zeta_arithmetic():
    z = CycloElt.zeta_power(3, 1)
    assert (CycloElt.integer(3, 1) + z + z * z).is_zero()
    assert (z * z * z + CycloElt.integer(3, -1)).is_zero()


def test_ng_eigenvalues():
    assert ng_eigenvalue(3, 3, 9).is_zero()
    assert not ng_eigenvalue(1, 3, 9).is_zero()
    assert not ng_eigenvalue(0, 3, 9).is_zero()


def test_ng_singular_example():
    out = ng_operator_analysis(WeightModule((5, 3, 1, -1, -3, -5)), 3, 9)
    assert out["singular"] and set(out["kernel_weights"]) == {3, -3}


def test_ng_nonsingular_example():
    out = ng_operator_analysis(WeightModule((2, 0, -2)), 3, 9)
    assert not out["singular"] and out["surjective"]


def test_ng_numeric_cross_check():
    import cmath

    for lam in range(-6, 7):
        for m in range(1, 6):
            for n in (2, 3, 5, 9):
                zeta = cmath.exp(2j * cmath.pi / n)
                val = sum(zeta ** (lam * k) for k in range(m))
                assert ng_eigenvalue(lam, m, n).is_zero() == (abs(val) < 1e-9)


def test_bad_module():
    with pytest.raises(ValueError):
        WeightModule(())
