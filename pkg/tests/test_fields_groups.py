import itertools

import numpy as np
import pytest

from wordmaps.errors import InputError
from wordmaps.fields import GF, FieldSpec, default_modulus, is_irreducible, prime_power
from wordmaps.groups import ElementSet, build_group, expected_order


def poly_field_mul(a, b, p, modulus):
    """Schoolbook product of digit vectors, reduced by the monic modulus."""
    k = len(modulus) - 1
    da = [(a // p ** i) % p for i in range(k)]
    db = [(b // p ** i) % p for i in range(k)]
    prod = [0] * (2 * k - 1)
    for i, x in enumerate(da):
        for j, y in enumerate(db):
            prod[i + j] += x * y
    for deg in range(len(prod) - 1, k - 1, -1):
        c = prod[deg] % p
        for i in range(k + 1):
            prod[deg - k + i] -= c * modulus[i]
    return sum((prod[i] % p) * p ** i for i in range(k))


def test_prime_power():
    assert prime_power(9) == (3, 2)
    assert prime_power(7) == (7, 1)
    with pytest.raises(InputError):
        prime_power(12)


def test_default_moduli():
    assert default_modulus(3, 2) == (1, 0, 1)
    assert default_modulus(2, 3) == (1, 1, 0, 1)
    assert is_irreducible((1, 1, 1), 2)
    assert not is_irreducible((1, 0, 1), 2)


@pytest.mark.parametrize("q,modulus", [(4, None), (8, None), (9, None), (9, (2, 2, 1)), (25, None), (27, None)])
def test_extension_field_against_schoolbook(q, modulus):
    spec = FieldSpec.of_order(q, modulus)
    F = GF(spec)
    a, b = np.meshgrid(np.arange(q), np.arange(q), indexing="ij")
    got = F.mul(a.ravel(), b.ravel())
    ref = [poly_field_mul(int(x), int(y), spec.p, spec.modulus) for x, y in zip(a.ravel(), b.ravel())]
    assert list(got) == ref
    for x in range(1, q):
        assert poly_field_mul(x, int(F.inv(x)), spec.p, spec.modulus) == 1
    # additive group is digitwise
    assert all(int(F.add(x, F.neg(x))) == 0 for x in range(q))


def test_prime_field():
    F = GF(FieldSpec(7))
    assert list(F.mul(np.arange(7), 3)) == [(3 * i) % 7 for i in range(7)]
    assert all(int(F.mul(a, F.inv(a))) == 1 for a in range(1, 7))
    with pytest.raises(ZeroDivisionError):
        F.inv(0)


def test_bad_field_specs():
    with pytest.raises(InputError):
        FieldSpec.of_order(9, (1, 1, 0))  # reducible
    with pytest.raises(InputError):
        FieldSpec(4)
    with pytest.raises(InputError):
        FieldSpec.of_order(2 ** 17)


@pytest.mark.parametrize("kind", ["SL2", "GL2", "PGL2", "PSL2"])
@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9])
def test_orders(kind, q):
    G = build_group(kind, q)
    assert G.order == expected_order(kind, q)


def test_sl2_matches_brute_force_enumeration():
    p = 5
    brute = sorted(m for m in itertools.product(range(p), repeat=4) if (m[0] * m[3] - m[1] * m[2]) % p == 1)
    G = build_group("SL2", 5)
    assert sorted(tuple(int(v) for v in row) for row in G.entries) == brute


@pytest.mark.parametrize("kind,q", [("SL2", 5), ("PGL2", 4), ("PSL2", 7), ("GL2", 3), ("SL2", 9)])
def test_group_axioms(kind, q):
    G = build_group(kind, q)
    idx = G.all
    rng = np.random.default_rng(0)
    a, b, c = (rng.integers(0, G.order, 200) for _ in range(3))
    assert np.array_equal(G.mul(G.mul(a, b), c), G.mul(a, G.mul(b, c)))
    assert np.all(G.mul(idx, G.inv(idx)) == G.identity)
    assert np.all(G.mul(idx, G.identity) == idx)


def test_multiplication_matches_integer_matrices():
    G = build_group("SL2", 7)
    rng = np.random.default_rng(1)
    for i, j in rng.integers(0, G.order, (50, 2)):
        A, B = G.element(int(i)).as_tuple(), G.element(int(j)).as_tuple()
        prod = ((A[0] * B[0] + A[1] * B[2]) % 7, (A[0] * B[1] + A[1] * B[3]) % 7,
                (A[2] * B[0] + A[3] * B[2]) % 7, (A[2] * B[1] + A[3] * B[3]) % 7)
        assert G.element(int(G.mul(i, j))).as_tuple() == prod


def test_large_group_without_cayley_table():
    G = build_group("SL2", 13)
    assert G.order == 2184
    a = np.arange(G.order)
    assert np.all(G.mul(a, G.inv(a)) == G.identity)


def test_powers():
    G = build_group("SL2", 5)
    g = G.parse_element("1,1;0,1")
    assert G.power(g, 5) == G.identity
    assert G.power(g, -1) == G.inv(g)
    assert G.power(g, 0) == G.identity


def test_element_parsing_and_projective_normalization():
    G = build_group("PGL2", 5)
    assert G.parse_element("2,0;0,2") == G.identity
    assert G.parse_element("0,3;3,0") == G.parse_element("0,1;1,0")
    with pytest.raises(InputError):
        build_group("SL2", 5).parse_element("2,0;0,2")
    with pytest.raises(InputError):
        G.parse_element("1,2,3")


def test_centers_and_minus_one():
    assert len(build_group("SL2", 5).center) == 2
    assert len(build_group("SL2", 8).center) == 1
    assert len(build_group("GL2", 5).center) == 4
    assert len(build_group("PGL2", 5).center) == 1
    G = build_group("SL2", 3)
    assert G.element(G.minus_one).as_tuple() == (2, 0, 0, 2)


@pytest.mark.parametrize("q", [4, 5, 8, 9])
def test_unipotent_count(q):
    # q^2 - 1 nontrivial unipotents in SL2(F_q)
    assert int(build_group("SL2", q).unipotent_mask.sum()) == q * q - 1


def test_order_bound():
    with pytest.raises(InputError):
        build_group("SL2", 64, max_order=1000)


def test_element_set_ops():
    a = ElementSet.from_indices(10, [1, 3, 5])
    b = ElementSet.from_indices(10, [3, 4])
    assert len(a | b) == 4 and len(a & b) == 1
    assert 3 in a and 4 not in a
    assert ElementSet.from_hex(a.to_hex(), 10) == a
    assert ElementSet.full(10).is_full()
    assert (a & b).issubset(a)
