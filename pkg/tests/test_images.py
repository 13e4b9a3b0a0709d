import itertools

import numpy as np
import pytest

from wordmaps.errors import BudgetExceeded, InputError
from wordmaps.groups import build_group
from wordmaps.images import (
    count_Tw,
    count_Ww,
    identity_scan,
    image_stats,
    is_identity_with_constants,
    sampled_image,
    trace_image,
    word_counts,
    word_image,
    word_image_with_constants,
)
from wordmaps.parsing import parse_plain_word, parse_word
from wordmaps.words import Word, make_family, nielsen_move, shift_variables

CORPUS = [make_family("power", m) for m in range(1, 7)] + [
    make_family("commutator"),
    make_family("engel", 1),
    make_family("engel", 2),
    make_family("engel", 3),
    parse_plain_word("[x^2,y^2]"),
]


# naive oracle over SL2(F_p) with tuples --------------------------------------------------

def sl2_elements(p):
    return [m for m in itertools.product(range(p), repeat=4) if (m[0] * m[3] - m[1] * m[2]) % p == 1]


def mmul(A, B, p):
    return ((A[0] * B[0] + A[1] * B[2]) % p, (A[0] * B[1] + A[1] * B[3]) % p,
            (A[2] * B[0] + A[3] * B[2]) % p, (A[2] * B[1] + A[3] * B[3]) % p)


def minv(A, p):
    return (A[3], -A[1] % p, -A[2] % p, A[0])


def naive_eval(w, vals, p, consts=()):
    acc = (1, 0, 0, 1)
    pieces = [(w, None)] if isinstance(w, Word) else None
    if pieces is None:
        pieces = []
        for seg, ref in zip(w.words, list(w.slots) + [None]):
            pieces.append((seg, ref))
    for seg, ref in pieces:
        for g, e in seg.letters:
            m = vals[g - 1] if e > 0 else minv(vals[g - 1], p)
            for _ in range(abs(e)):
                acc = mmul(acc, m, p)
        if ref is not None:
            c = consts[ref.index - 1] if ref.exponent > 0 else minv(consts[ref.index - 1], p)
            for _ in range(abs(ref.exponent)):
                acc = mmul(acc, c, p)
    return acc


def naive_image(w, p, consts=()):
    els = sl2_elements(p)
    return {naive_eval(w, vals, p, consts) for vals in itertools.product(els, repeat=w.arity)}


def as_tuples(image, G):
    return {G.element(int(i)).as_tuple() for i in image.indices()}


@pytest.mark.parametrize("p", [3, 5])
@pytest.mark.parametrize("w", CORPUS, ids=str)
def test_engine_matches_naive_oracle(p, w):
    G = build_group("SL2", p)
    ref = naive_image(w, p)
    for workers in (1, 2, 8):
        assert as_tuples(word_image(w, G, workers=workers), G) == ref


def test_squares_in_sl2_f3():
    G = build_group("SL2", 3)
    img = word_image(make_family("power", 2), G)
    assert len(img) == len(naive_image(make_family("power", 2), 3)) == 10


@pytest.mark.parametrize("q", [5, 7, 9])
def test_commutator_surjective(q):
    G = build_group("SL2", q)
    assert word_image(make_family("commutator"), G).is_full()


def test_commutator_not_surjective_on_sl2_f3():
    assert len(word_image(make_family("commutator"), build_group("SL2", 3))) == 8


@pytest.mark.parametrize("w", CORPUS[:7] + CORPUS[-1:], ids=str)
def test_images_are_normal_and_contain_one(w):
    G = build_group("SL2", 5)
    img = word_image(w, G)
    idx = img.indices()
    assert G.identity in img
    for h in range(G.order):
        assert img.bits[G.conjugate(h, idx)].all()


def test_nielsen_equivalent_words_same_image():
    G = build_group("SL2", 5)
    x = Word.generator(1, 2)
    assert word_image(x, G) == word_image(nielsen_move(x, ("multiply", 1, 2)), G)
    w = parse_plain_word("[x,y] x^2")
    assert word_image(w, G) == word_image(nielsen_move(w, ("multiply", 2, 1)), G)


def test_disjoint_product():
    G = build_group("SL2", 3)
    u, v = make_family("power", 2), make_family("commutator")
    uv = u * shift_variables(v, u.arity)
    A, B = word_image(u, G), word_image(v, G)
    prod = set()
    for a in A.indices():
        prod.update(int(i) for i in G.mul(int(a), B.indices()))
    assert set(int(i) for i in word_image(uv, G).indices()) == prod


def test_image_of_identity_word():
    G = build_group("SL2", 5)
    img = word_image(Word.identity(2), G)
    assert len(img) == 1 and G.identity in img


def test_budget_refusal(monkeypatch):
    G = build_group("SL2", 9)
    with pytest.raises(BudgetExceeded):
        word_image(parse_plain_word("x y z"), G, budget=10 ** 6)
    monkeypatch.setenv("WORDMAP_BUDGET", "100")
    with pytest.raises(BudgetExceeded):
        word_image(parse_plain_word("x y"), G)


def test_sampling_is_subset_and_reproducible():
    G = build_group("SL2", 5)
    w = make_family("engel", 2)
    full = word_image(w, G)
    s1 = sampled_image(w, G, 100_000, seed=3)
    assert s1.issubset(full)
    assert s1 == sampled_image(w, G, 100_000, seed=3, workers=4)
    with pytest.raises(InputError):
        sampled_image(w, G, 0, seed=1)


def test_constants_against_oracle():
    G = build_group("SL2", 5)
    wc = parse_word("x #1 x^-1 y #1 y^-1")
    u = (1, 1, 0, 1)
    img = word_image_with_constants(wc, [G.index_of(u)], G)
    assert as_tuples(img, G) == naive_image(wc, 5, [u])


def test_central_constant_rejected():
    G = build_group("SL2", 5)
    wc = parse_word("x #1")
    with pytest.raises(InputError):
        word_image_with_constants(wc, [G.minus_one], G)
    assert len(word_image_with_constants(wc, [G.minus_one], G, strict=False)) == G.order


def test_wrong_number_of_constants():
    G = build_group("SL2", 5)
    with pytest.raises((InputError, ValueError)):
        word_image_with_constants(parse_word("x #1 y #2"), [1], G)


def naive_counts(w, p):
    els = sl2_elements(p)
    ww = tw = 0
    for vals in itertools.product(els, repeat=w.arity):
        m = naive_eval(w, vals, p)
        ww += m == (1, 0, 0, 1)
        tw += (m[0] + m[3]) % p == 2 % p
    return ww, tw


def test_commutator_counts():
    G = build_group("SL2", 3)
    w = make_family("commutator")
    from wordmaps.classes import conjugacy_classes

    out = word_counts(w, G)
    assert out["count_Ww"] == 168 == G.order * len(conjugacy_classes(G))
    assert (out["count_Ww"], out["count_Tw"]) == naive_counts(w, 3)
    assert out["heuristic_q^(3n-1)"] == 243


@pytest.mark.parametrize("w", CORPUS, ids=str)
def test_ww_bounded_by_tw(w):
    G = build_group("SL2", 3)
    assert count_Ww(w, G) <= count_Tw(w, G)


def test_count_tw_only_on_sl2():
    with pytest.raises(InputError):
        count_Tw(make_family("commutator"), build_group("PGL2", 3))


def test_trace_image():
    G = build_group("SL2", 5)
    out = trace_image(make_family("commutator"), G)
    assert out["values"] == [0, 1, 2, 3, 4] and not out["singleton"]
    u = G.parse_element("1,1;0,1")
    out = trace_image(parse_word("x #1 x^-1 #1^-1"), G, [u])
    ref = {(m[0] + m[3]) % 5 for m in naive_image(parse_word("x #1 x^-1 #1^-1"), 5, [(1, 1, 0, 1)])}
    assert set(out["values"]) == ref


def test_projective_trace_image():
    G = build_group("PGL2", 5)
    out = trace_image(make_family("power", 2), G)
    assert out["invariant"] == "tr^2/det"
    assert out["cardinality"] <= out["full_cardinality"]


def test_stats_for_squares():
    G = build_group("SL2", 3)
    img = word_image(make_family("power", 2), G)
    st = image_stats(img, G)
    ref = naive_image(make_family("power", 2), 3)
    nilp = [tuple((a - b) % 3 for a, b in zip(m, (1, 0, 0, 1))) for m in ref]
    unip = [n for n in nilp if any(n) and mmul(n, n, 3) == (0, 0, 0, 0)]
    assert st["size"] == len(ref) == 10
    assert st["contains_minus_one"] is ((2, 0, 0, 2) in ref)
    assert st["unipotent_count"] == len(unip) == 8
    assert st["semisimple_count"] == 2
    assert st["class_coverage"] == {"contained": 4, "met": 4, "total": 7}


def test_identity_detection():
    G = build_group("SL2", 5)
    # [x^(period), c] is trivial since x^60 = 1
    assert is_identity_with_constants(parse_word("[x^60,#1]"), [G.parse_element("1,1;0,1")], G)
    assert not is_identity_with_constants(parse_word("[x,#1]"), [G.parse_element("1,1;0,1")], G)


def test_identity_scan_finds_nothing_on_sl2_f5():
    out = identity_scan(build_group("SL2", 5), max_length=6)
    assert out["identities"] == []
    assert out["words_checked"] > 0
