"""Exhaustive and sampled word-map images over enumerated groups.

The tuple space ``G^n`` is flattened to ``range(|G|^n)`` and cut into
fixed-size contiguous chunks.  Each chunk is evaluated with vectorized table
lookups and folded into a private accumulator; accumulators are merged with
bitwise OR (images) or addition (counts), so results do not depend on the
number of workers or on scheduling.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from itertools import product
from typing import Callable, Sequence, TypeVar

import numpy as np

from .errors import BudgetExceeded, InputError
from .groups import ElementSet, GroupTable
from .words import AnyWord, ConstantRef, Letter, Word, WordWithConstants, evaluate_with_constants

DEFAULT_BUDGET = 10 ** 10
CHUNK = 1 << 18
SAMPLE_CHUNK = 1 << 16

T = TypeVar("T")


def default_budget() -> int:
    env = os.environ.get("WORDMAP_BUDGET")
    if env:
        try:
            return int(float(env))
        except ValueError as exc:
            raise InputError(f"WORDMAP_BUDGET is not a number: {env!r}") from exc
    return DEFAULT_BUDGET


def _check_budget(G: GroupTable, arity: int, budget: int | None) -> int:
    budget = default_budget() if budget is None else budget
    total = G.order ** arity
    if total > budget:
        raise BudgetExceeded(
            f"|G|^n = {G.order}^{arity} = {total} tuples exceeds the exhaustive budget {budget}; "
            "use sampled_image for a lower bound"
        )
    return total


def _map_reduce(
    tasks: Sequence, fn: Callable[..., T], merge: Callable[[T, T], T], init: T, workers: int
) -> T:
    acc = init
    if workers <= 1 or len(tasks) <= 1:
        for t in tasks:
            acc = merge(acc, fn(t))
        return acc
    with ThreadPoolExecutor(max_workers=workers) as pool:
        for part in pool.map(fn, tasks):
            acc = merge(acc, part)
    return acc


def _tuple_columns(G: GroupTable, arity: int, start: int, stop: int) -> list[np.ndarray]:
    flat = np.arange(start, stop, dtype=np.int64)
    cols = []
    for i in range(arity):
        stride = G.order ** (arity - 1 - i)
        cols.append((flat // stride) % G.order)
    return cols


def _constants_for(wc: AnyWord, sigma: Sequence[int]) -> Sequence[int]:
    if isinstance(wc, Word):
        return ()
    if len(sigma) != wc.num_constants:
        raise InputError(f"word expects {wc.num_constants} constants, got {len(sigma)}")
    return [int(s) for s in sigma]


def _values(G: GroupTable, wc: AnyWord, sigma: Sequence[int], start: int, stop: int) -> np.ndarray:
    cols = _tuple_columns(G, wc.arity, start, stop)
    out = evaluate_with_constants(wc, cols, sigma, G)
    return np.broadcast_to(np.asarray(out), (stop - start,))


def _exhaustive_image(G: GroupTable, wc: AnyWord, sigma: Sequence[int], workers: int, budget: int | None) -> ElementSet:
    total = _check_budget(G, wc.arity, budget)
    if wc.arity == 0:
        val = evaluate_with_constants(wc, [], sigma, G)
        return ElementSet.from_indices(G.order, [int(val)])
    tasks = [(s, min(s + CHUNK, total)) for s in range(0, total, CHUNK)]

    def run(task: tuple[int, int]) -> np.ndarray:
        bits = np.zeros(G.order, dtype=bool)
        bits[_values(G, wc, sigma, *task)] = True
        return bits

    bits = _map_reduce(tasks, run, np.logical_or, np.zeros(G.order, dtype=bool), workers)
    return ElementSet(bits)


def word_image(w: Word, G: GroupTable, workers: int = 1, budget: int | None = None) -> ElementSet:
    """Exact image of the word map ``G^n -> G``."""
    return _exhaustive_image(G, w, (), workers, budget)


def word_image_with_constants(
    wc: AnyWord,
    sigma: Sequence[int],
    G: GroupTable,
    strict: bool = True,
    workers: int = 1,
    budget: int | None = None,
) -> ElementSet:
    """Exact image of ``x -> w_Sigma(x)`` with the constants fixed.

    ``sigma`` holds element indices.  With ``strict`` the constants must be
    non-central, as in the definition of a word with constants.
    """
    sigma = _constants_for(wc, sigma)
    if strict:
        central = set(int(c) for c in G.center)
        bad = [s for s in sigma if s in central]
        if bad:
            raise InputError(
                f"constant(s) {[str(G.element(s)) for s in bad]} are central; pass strict=False to allow"
            )
    return _exhaustive_image(G, wc, sigma, workers, budget)


def sampled_image(
    w: AnyWord,
    G: GroupTable,
    samples: int,
    seed: int,
    sigma: Sequence[int] = (),
    workers: int = 1,
) -> ElementSet:
    """Union of ``w`` over ``samples`` random tuples; a subset of the true image.

    Chunk ``c`` draws from a Philox stream keyed by ``(seed, c)``, so the
    result is reproducible and independent of ``workers``.
    """
    if samples < 1:
        raise InputError("samples must be >= 1")
    if not 0 <= seed < 2 ** 64:
        raise InputError("seed must be in [0, 2^64)")
    sigma = _constants_for(w, sigma)
    if w.arity == 0:
        return ElementSet.from_indices(G.order, [int(evaluate_with_constants(w, [], sigma, G))])
    tasks = [(c, min(SAMPLE_CHUNK, samples - c * SAMPLE_CHUNK)) for c in range(-(-samples // SAMPLE_CHUNK))]

    def run(task: tuple[int, int]) -> np.ndarray:
        chunk, size = task
        rng = np.random.Generator(np.random.Philox(key=(seed << 64) | chunk))
        cols = [rng.integers(0, G.order, size=size) for _ in range(w.arity)]
        vals = np.broadcast_to(np.asarray(evaluate_with_constants(w, cols, sigma, G)), (size,))
        bits = np.zeros(G.order, dtype=bool)
        bits[vals] = True
        return bits

    return ElementSet(_map_reduce(tasks, run, np.logical_or, np.zeros(G.order, dtype=bool), workers))


def word_counts(w: AnyWord, G: GroupTable, sigma: Sequence[int] = (), workers: int = 1, budget: int | None = None) -> dict:
    """Exact sizes of ``W_w = {w = 1}`` and, on SL2, ``T_w = {tr w = 2}``."""
    sigma = _constants_for(w, sigma)
    total = _check_budget(G, w.arity, budget)
    two = G.gf.constant(2)
    is_sl2 = G.kind == "SL2"
    if w.arity == 0:
        v = int(evaluate_with_constants(w, [], sigma, G))
        ww, tw = int(v == G.identity), int(G.traces[v] == two)
    else:
        tasks = [(s, min(s + CHUNK, total)) for s in range(0, total, CHUNK)]

        def run(task: tuple[int, int]) -> tuple[int, int]:
            vals = _values(G, w, sigma, *task)
            return int(np.count_nonzero(vals == G.identity)), int(np.count_nonzero(G.traces[vals] == two))

        ww, tw = _map_reduce(tasks, run, lambda a, b: (a[0] + b[0], a[1] + b[1]), (0, 0), workers)
    out = {"count_Ww": ww, "tuples": total}
    if is_sl2:
        out["count_Tw"] = tw
        out["heuristic_q^(3n-1)"] = G.q ** (3 * w.arity - 1) if w.arity else None
    return out


def count_Ww(w: AnyWord, G: GroupTable, **kw) -> int:
    return word_counts(w, G, **kw)["count_Ww"]


def count_Tw(w: AnyWord, G: GroupTable, **kw) -> int:
    if G.kind != "SL2":
        raise InputError("count_Tw is defined for SL2 only")
    return word_counts(w, G, **kw)["count_Tw"]


def invariant_values(G: GroupTable) -> np.ndarray:
    """Trace on SL2, ``tr^2/det`` on PGL2/PSL2."""
    if G.kind == "SL2":
        return G.traces
    if G.projective:
        return G.projective_invariant
    raise InputError(f"trace_image supports SL2, PGL2 and PSL2, not {G.kind}")


def trace_image(
    w: AnyWord, G: GroupTable, sigma: Sequence[int] = (), workers: int = 1, budget: int | None = None
) -> dict:
    inv = invariant_values(G)
    image = _exhaustive_image(G, w, _constants_for(w, sigma), workers, budget)
    values = sorted({int(v) for v in inv[image.indices()]})
    full = sorted({int(v) for v in inv})
    return {
        "invariant": "trace" if G.kind == "SL2" else "tr^2/det",
        "values": values,
        "cardinality": len(values),
        "full_cardinality": len(full),
        "singleton": len(values) == 1,
        "evidence": "finite-model evidence",
    }


def image_stats(image: ElementSet, G: GroupTable) -> dict:
    from .classes import conjugacy_classes

    idx = image.indices()
    semis = idx[G.semisimple_mask[idx]]
    if G.kind == "SL2":
        inv, all_semis = G.traces, G.all[G.semisimple_mask]
    elif G.projective:
        inv, all_semis = G.projective_invariant, G.all[G.semisimple_mask]
    else:
        inv, all_semis = None, None
    classes = conjugacy_classes(G)
    contained = sum(1 for c in classes if c.members.issubset(image))
    met = sum(1 for c in classes if np.any(c.members.bits & image.bits))
    unip = int(np.count_nonzero(G.unipotent_mask[idx]))
    stats = {
        "size": len(image),
        "contains_minus_one": (G.minus_one in image) if G.minus_one is not None else None,
        "unipotent_count": unip,
        "nontrivial_unipotent_present": unip > 0,
        "semisimple_count": int(len(semis)),
        "class_coverage": {"contained": contained, "met": met, "total": len(classes)},
    }
    if inv is not None:
        stats["semisimple_trace_coverage"] = {
            "covered": len({int(v) for v in inv[semis]}),
            "total": len({int(v) for v in inv[all_semis]}),
        }
    else:
        stats["semisimple_trace_coverage"] = None
    return stats


def is_identity_with_constants(wc: AnyWord, sigma: Sequence[int], G: GroupTable, budget: int | None = None) -> bool:
    """True iff ``w_Sigma`` is constantly 1 on ``G^n`` (a finite-group check only)."""
    image = word_image_with_constants(wc, sigma, G, strict=False, budget=budget)
    return len(image) == 1 and G.identity in image


def _scan_words(max_length: int):
    """Reduced words in ``x`` and one constant ``#1``, of token length ``<= max_length``.

    Only words that use both ``x`` and the constant are produced; runs of the
    same token are merged into a single syllable.
    """
    tokens = (("x", 1), ("x", -1), ("c", 1), ("c", -1))
    for length in range(2, max_length + 1):
        for seq in product(tokens, repeat=length):
            if any(a[0] == b[0] and a[1] != b[1] for a, b in zip(seq, seq[1:])):
                continue
            kinds = {t[0] for t in seq}
            if kinds != {"x", "c"}:
                continue
            syllables: list[list] = []
            for kind, e in seq:
                if syllables and syllables[-1][0] == kind:
                    syllables[-1][1] += e
                else:
                    syllables.append([kind, e])
            words, slots, cur = [], [], []
            for kind, e in syllables:
                if kind == "x":
                    cur.append(Letter(1, e))
                else:
                    words.append(Word(tuple(cur), 1))
                    slots.append(ConstantRef(1, e))
                    cur = []
            words.append(Word(tuple(cur), 1))
            yield WordWithConstants(tuple(words), tuple(slots), 1)


def identity_scan(G: GroupTable, max_length: int = 6, constants: Sequence[int] | None = None) -> dict:
    """Search short one-variable words with one constant for identities with constants.

    Every non-central class representative is tried as the constant unless
    ``constants`` is given.  Words in which a constant power becomes central
    are skipped and counted separately.
    """
    from .classes import conjugacy_classes

    central = set(int(c) for c in G.center)
    if constants is None:
        constants = [c.representative for c in conjugacy_classes(G) if c.representative not in central]
    found, checked, skipped = [], 0, 0
    words = list(_scan_words(max_length))
    for s in constants:
        for wc in words:
            if any(int(G.power(s, ref.exponent)) in central for ref in wc.slots):
                skipped += 1
                continue
            checked += 1
            if is_identity_with_constants(wc, [s], G):
                found.append({"word": str(wc), "constant": str(G.element(s))})
    return {
        "max_length": max_length,
        "constants_tried": len(constants),
        "words_checked": checked,
        "skipped_central_powers": skipped,
        "identities": found,
        "caveat": "finite-group check; does not model identities on the algebraic group",
    }
