"""Conjugacy classes, class products, covering numbers and commutator width."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .errors import BudgetExceeded, InputError
from .groups import ElementSet, GroupTable
from .images import word_image
from .words import make_family

MAX_COVERING_ORDER = 5_000


@dataclass(frozen=True)
class ConjClass:
    representative: int
    members: ElementSet

    @property
    def size(self) -> int:
        return len(self.members)


@lru_cache(maxsize=None)
def _classes_cached(G: GroupTable) -> tuple[tuple[ConjClass, ...], np.ndarray]:
    label = np.full(G.order, -1, dtype=np.int64)
    classes = []
    for g in range(G.order):
        if label[g] >= 0:
            continue
        orbit = np.unique(G.conjugate(G.all, g))
        label[orbit] = len(classes)
        classes.append(ConjClass(g, ElementSet.from_indices(G.order, orbit)))
    return tuple(classes), label


def conjugacy_classes(G: GroupTable) -> list[ConjClass]:
    """Classes ordered by their smallest element index (the representative)."""
    return list(_classes_cached(G)[0])


def class_labels(G: GroupTable) -> np.ndarray:
    return _classes_cached(G)[1]


def normal_closure_of_set(S: ElementSet, G: GroupTable) -> ElementSet:
    """Union of the conjugacy classes meeting ``S``."""
    labels = class_labels(G)
    hit = np.unique(labels[S.indices()])
    return ElementSet(np.isin(labels, hit))


def product_set(A: ElementSet, B: ElementSet, G: GroupTable, normal: bool = False) -> ElementSet:
    """``{ab : a in A, b in B}``.

    With ``normal=True`` both sets must be unions of classes; then only one
    representative per class of ``A`` is multiplied and the result is closed
    under conjugation.
    """
    bits = np.zeros(G.order, dtype=bool)
    b_idx = B.indices()
    if not len(b_idx):
        return ElementSet(bits)
    if normal:
        labels = class_labels(G)
        reps = [c.representative for c in conjugacy_classes(G)]
        a_reps = [reps[k] for k in np.unique(labels[A.indices()])]
        for a in a_reps:
            bits[G.mul(a, b_idx)] = True
        return normal_closure_of_set(ElementSet(bits), G)
    for a in A.indices():
        bits[G.mul(int(a), b_idx)] = True
    return ElementSet(bits)


def class_product_covers(classes: Sequence[ConjClass], G: GroupTable) -> bool:
    """True iff ``C_1 C_2 ... C_m = G``."""
    if not classes:
        raise InputError("need at least one class")
    acc = classes[0].members
    for c in classes[1:]:
        acc = product_set(acc, c.members, G, normal=True)
    return acc.is_full()


def _class_product_table(G: GroupTable) -> list[list[int]]:
    """``table[i][j]`` is the bitmask of classes contained in ``C_i C_j``."""
    classes = conjugacy_classes(G)
    labels = class_labels(G)
    table = []
    for ci in classes:
        row = []
        for cj in classes:
            prod = G.mul(ci.representative, cj.members.indices())
            mask = 0
            for k in np.unique(labels[prod]):
                mask |= 1 << int(k)
            row.append(mask)
        table.append(row)
    return table


def _times_class(mask: int, j: int, table: list[list[int]]) -> int:
    out, i = 0, 0
    while mask:
        if mask & 1:
            out |= table[i][j]
        mask >>= 1
        i += 1
    return out


def covering_numbers(G: GroupTable, max_steps: int = 64) -> dict:
    """Covering and extended covering numbers over the nontrivial classes.

    A value of ``None`` means some product of nontrivial classes never fills
    the group (e.g. central classes, or a non-perfect group).  The trivial
    group gets 0 for both.
    """
    if G.order > MAX_COVERING_ORDER:
        raise BudgetExceeded(f"covering numbers limited to |G| <= {MAX_COVERING_ORDER}")
    if G.order == 1:
        return {"covering": 0, "extended": 0}
    classes = conjugacy_classes(G)
    table = _class_product_table(G)
    full = (1 << len(classes)) - 1
    nontrivial = [k for k, c in enumerate(classes) if c.representative != G.identity]

    covering: int | None = 0
    per_class = {}
    for j in nontrivial:
        power, seen, steps = 1 << j, set(), 1
        while power != full and power not in seen and steps <= max_steps:
            seen.add(power)
            power = _times_class(power, j, table)
            steps += 1
        per_class[j] = steps if power == full else None
    if any(v is None for v in per_class.values()):
        covering = None
    else:
        covering = max(per_class.values()) - 1

    extended: int | None = None
    layer = frozenset(1 << j for j in nontrivial)
    seen_layers: set[frozenset] = set()
    m = 1
    while m <= max_steps and layer not in seen_layers:
        if layer == {full}:
            extended = m - 1
            break
        seen_layers.add(layer)
        layer = frozenset(_times_class(P, j, table) for P in layer for j in nontrivial)
        m += 1
    return {
        "covering": covering,
        "extended": extended,
        "class_powers_to_cover": {str(classes[j].representative): v for j, v in per_class.items()},
    }


def thompson_classes(G: GroupTable) -> list[ConjClass]:
    """Classes ``C`` with ``C^2 = G``."""
    return [c for c in conjugacy_classes(G) if class_product_covers([c, c], G)]


def commutator_width(G: GroupTable, workers: int = 1) -> int:
    """Least ``n`` such that every element of ``[G, G]`` is a product of ``n`` commutators."""
    comm = word_image(make_family("commutator"), G, workers=workers)
    if len(comm) == 1:
        return 0
    powers = [comm]
    while True:
        nxt = product_set(powers[-1], comm, G, normal=True)
        if nxt == powers[-1]:
            break
        powers.append(nxt)
    return len(powers)
