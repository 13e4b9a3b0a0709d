import random

from hypothesis import HealthCheck, settings, strategies as st

from wordmaps.words import Letter, Word

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def words(max_gen=3, max_len=10):
    letter = st.tuples(st.integers(1, max_gen), st.sampled_from([-2, -1, 1, 2]))
    return st.lists(letter, max_size=max_len).map(lambda ls: Word(tuple(Letter(g, e) for g, e in ls), max_gen))


def random_word(rng: random.Random, arity: int, length: int) -> Word:
    letters = [Letter(rng.randint(1, arity), rng.choice((-1, 1))) for _ in range(length)]
    return Word(tuple(letters), arity)


def random_derived_word(rng: random.Random, arity: int, max_len: int = 12) -> Word:
    """Nontrivial reduced word with zero exponent sums, by rejection."""
    while True:
        w = random_word(rng, arity, rng.randint(2, max_len))
        if len(w) and len(w) <= max_len and not any(_sums(w)):
            return w


def _sums(w: Word):
    out = [0] * w.arity
    for g, e in w.letters:
        out[g - 1] += e
    return out
