import random

import pytest

from conftest import random_word
from wordmaps.errors import InputError
from wordmaps.parsing import parse_word
from wordmaps.trace import trace_polynomial
from wordmaps.words import Letter, Word

U = ((1, 1), (0, 1))
L = ((1, 0), (1, 1))


def mat_mul(A, B):
    return tuple(tuple(sum(A[i][k] * B[k][j] for k in range(2)) for j in range(2)) for i in range(2))


def tr(A):
    return A[0][0] + A[1][1]


def random_sl2z(rng, steps=4):
    m = ((1, 0), (0, 1))
    for _ in range(steps):
        g = rng.choice([U, L, ((1, -1), (0, 1)), ((1, 0), (-1, 1))])
        m = mat_mul(m, g)
    return m


def test_generic_trace():
    assert str(trace_polynomial(parse_word("x"))) == str(trace_polynomial(parse_word("x1")))
    psi = trace_polynomial(parse_word("x"))
    assert psi.terms == {(0, 0): 2, (1, 1): 1}


def test_commutator_with_unipotent():
    psi = trace_polynomial(parse_word("[x1,x2]"), [U])
    assert psi.terms == {(0, 0): 2, (0, 2): 1}


def test_commutator_matches_trace_identity():
    psi = trace_polynomial(parse_word("[x1,x2]"), [U])
    rng = random.Random(5)
    for _ in range(50):
        x, y = rng.randint(-20, 20), rng.randint(-20, 20)
        A = ((1, x), (y, 1 + x * y))
        a, b, ab = tr(A), tr(U), tr(mat_mul(A, U))
        assert psi.evaluate([x, y]) == a * a + b * b + ab * ab - a * b * ab - 2


@pytest.mark.parametrize("seed", range(20))
def test_value_at_origin_for_words_killed_by_x1(seed):
    # products of conjugates of powers of x1 vanish when x1 = 1
    rng = random.Random(seed)
    n = rng.randint(2, 3)
    w = Word.identity(n)
    for _ in range(rng.randint(1, 3)):
        u = random_word(rng, n, rng.randint(0, 4))
        w = w * u * Word((Letter(1, rng.choice((-2, -1, 1, 2))),), n) * u.inverse()
    mats = [random_sl2z(rng) for _ in range(n - 1)]
    psi = trace_polynomial(w, mats)
    assert psi.evaluate([0, 0]) == 2


def test_with_constants():
    psi = trace_polynomial(parse_word("x #1 x^-1 #1^-1"), [], [U])
    assert psi == trace_polynomial(parse_word("[x1,x2]"), [U])


def test_bad_inputs():
    with pytest.raises(InputError):
        trace_polynomial(parse_word("[x1,x2]"), [((2, 0), (0, 1))])
    with pytest.raises(InputError):
        trace_polynomial(parse_word("[x1,x2]"), [])
