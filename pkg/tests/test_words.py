import pytest
from hypothesis import given

from conftest import words
from wordmaps.words import (
    Letter,
    Word,
    abelianization,
    apply_nielsen,
    commutator,
    free_reduce,
    in_commutator_subgroup,
    make_family,
    nielsen_move,
    shift_variables,
)

x, y, z = (Word.generator(i) for i in (1, 2, 3))


def naive_reduce(letters):
    # expand to single letters, cancel with a stack, regroup
    flat = [(g, 1 if e > 0 else -1) for g, e in letters for _ in range(abs(e))]
    stack = []
    for g, s in flat:
        if stack and stack[-1] == (g, -s):
            stack.pop()
        else:
            stack.append((g, s))
    out = []
    for g, s in stack:
        if out and out[-1][0] == g:
            out[-1] = (g, out[-1][1] + s)
        else:
            out.append((g, s))
    return tuple(Letter(g, e) for g, e in out)


def test_reduce_cancels_and_merges():
    assert free_reduce([(1, 2), (1, -2)]) == ()
    assert free_reduce([(1, 1), (2, 1), (2, -1), (1, 1)]) == (Letter(1, 2),)
    assert free_reduce([(1, 0), (2, 3)]) == (Letter(2, 3),)


@given(words())
def test_reduce_matches_stack_oracle(w):
    assert w.letters == naive_reduce(w.letters)


@given(words())
def test_reduce_idempotent(w):
    assert free_reduce(w.letters) == w.letters


@given(words(), words(), words())
def test_group_laws(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert (a * a.inverse()).is_identity()
    assert (a * b).inverse() == b.inverse() * a.inverse()


def test_commutator_convention():
    assert commutator(x, y) == x * y * x.inverse() * y.inverse()
    assert str(commutator(x, y)) == "x1 x2 x1^-1 x2^-1"
    assert len(commutator(x, y)) == 4


def test_power_and_length():
    assert len(x ** 5) == 5
    assert x ** -3 == (x ** 3).inverse()
    assert (x * y) ** 0 == Word.identity(2)


def test_families():
    assert make_family("power", 3) == x ** 3
    assert make_family("commutator") == commutator(x, y)
    assert make_family("engel", 2) == commutator(y, commutator(y, x))
    assert make_family("multi_commutator", parts=[1, 2, 3]) == commutator(commutator(x, y), z)
    with pytest.raises(ValueError):
        make_family("engel", 0)


def test_abelianization():
    assert abelianization(x ** 2 * y.inverse()) == (2, -1)
    assert in_commutator_subgroup(make_family("engel", 3))
    assert not in_commutator_subgroup(x * y)


def test_shift_variables_disjoint():
    w = shift_variables(commutator(x, y), 2)
    assert w.generators_used() == {3, 4}
    assert w.arity == 4


def test_nielsen_moves():
    assert nielsen_move(x * y, ("swap", 1, 2)) == y * x
    assert nielsen_move(x, ("multiply", 1, 2)) == x * y
    assert nielsen_move(x ** 2, ("invert", 1)) == x ** -2
    # inverse moves undo each other
    w = commutator(x, y) * x
    back = apply_nielsen(w, [("multiply", 1, 2), ("invert", 2), ("multiply", 1, 2), ("invert", 2)])
    assert back == w
    with pytest.raises(ValueError):
        nielsen_move(x, ("multiply", 1, 1))
