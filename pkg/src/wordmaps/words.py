"""Free-group words, words with constants, and their evaluation.

A :class:`Word` is stored as a tuple of syllables ``Letter(generator, exponent)``
with generators numbered from 1.  Words are always kept freely reduced, so
structural equality coincides with equality in the free group.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterable, NamedTuple, Protocol, Sequence, Union


class Letter(NamedTuple):
    generator: int
    exponent: int


class ConstantRef(NamedTuple):
    """Occurrence of the constant ``sigma_index`` raised to ``exponent``."""

    index: int
    exponent: int


class GroupOps(Protocol):
    """Minimal group interface used by :func:`evaluate`.

    ``mul``/``inv`` may operate elementwise on arrays; ``power`` is optional.
    """

    identity: Any

    def mul(self, a: Any, b: Any) -> Any: ...

    def inv(self, a: Any) -> Any: ...


def free_reduce(letters: Iterable[tuple[int, int]]) -> tuple[Letter, ...]:
    """Freely reduce a raw sequence of ``(generator, exponent)`` pairs.

    Adjacent syllables on the same generator are merged and zero exponents
    dropped, cascading through the stack.
    """
    out: list[Letter] = []
    for gen, exp in letters:
        if gen < 1:
            raise ValueError(f"generator index must be >= 1, got {gen}")
        if exp == 0:
            continue
        if out and out[-1].generator == gen:
            merged = out[-1].exponent + exp
            out.pop()
            if merged:
                out.append(Letter(gen, merged))
        else:
            out.append(Letter(gen, exp))
    return tuple(out)


@dataclass(frozen=True)
class Word:
    """A freely reduced element of the free group ``F_arity``."""

    letters: tuple[Letter, ...] = ()
    arity: int = 0

    def __post_init__(self) -> None:
        reduced = free_reduce(self.letters)
        object.__setattr__(self, "letters", reduced)
        used = max((l.generator for l in reduced), default=0)
        if self.arity < used:
            object.__setattr__(self, "arity", used)

    # construction -------------------------------------------------------
    @classmethod
    def identity(cls, arity: int = 0) -> Word:
        return cls((), arity)

    @classmethod
    def generator(cls, i: int, arity: int = 0) -> Word:
        return cls((Letter(i, 1),), max(arity, i))

    # algebra -------------------------------------------------------------
    def __mul__(self, other: Word) -> Word:
        if not isinstance(other, Word):
            return NotImplemented
        return Word(self.letters + other.letters, max(self.arity, other.arity))

    def inverse(self) -> Word:
        return Word(tuple(Letter(g, -e) for g, e in reversed(self.letters)), self.arity)

    def __invert__(self) -> Word:
        return self.inverse()

    def __pow__(self, n: int) -> Word:
        if n < 0:
            return self.inverse() ** (-n)
        result = Word.identity(self.arity)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def with_arity(self, arity: int) -> Word:
        if arity < self.arity:
            raise ValueError("cannot shrink arity below the largest generator used")
        return Word(self.letters, arity)

    # inspection ------------------------------------------------------------
    def __len__(self) -> int:
        """Reduced length, i.e. the number of letters ``x_i^{+-1}``."""
        return sum(abs(e) for _, e in self.letters)

    def is_identity(self) -> bool:
        return not self.letters

    def generators_used(self) -> set[int]:
        return {g for g, _ in self.letters}

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        parts = []
        for g, e in self.letters:
            parts.append(f"x{g}" if e == 1 else f"x{g}^{e}")
        return " ".join(parts)


def commutator(a: Word, b: Word) -> Word:
    """``[a, b] = a b a^-1 b^-1``."""
    return a * b * a.inverse() * b.inverse()


@dataclass(frozen=True)
class WordWithConstants:
    """A generalized monomial ``w_1 c_1 w_2 c_2 ... w_r c_r w_{r+1}``.

    ``words`` has ``r + 1`` entries and ``slots`` has ``r``.  Each slot names a
    constant ``sigma_index`` (1-based) with an exponent.  Interior words must be
    nontrivial; the outer ones may be empty.
    """

    words: tuple[Word, ...]
    slots: tuple[ConstantRef, ...]
    arity: int = 0

    def __post_init__(self) -> None:
        if len(self.words) != len(self.slots) + 1:
            raise ValueError("need exactly one more word segment than constant slots")
        if not self.slots:
            raise ValueError("a word with constants needs at least one constant slot")
        for ref in self.slots:
            if ref.index < 1:
                raise ValueError(f"constant index must be >= 1, got {ref.index}")
            if ref.exponent == 0:
                raise ValueError("constant exponent must be nonzero")
        for w in self.words[1:-1]:
            if w.is_identity():
                raise ValueError("interior word segments of a word with constants must be nonempty")
        used = max((w.arity for w in self.words), default=0)
        object.__setattr__(self, "arity", max(self.arity, used))
        object.__setattr__(
            self, "words", tuple(w.with_arity(self.arity) for w in self.words)
        )

    @property
    def num_slots(self) -> int:
        return len(self.slots)

    @property
    def num_constants(self) -> int:
        """Length of the constant tuple this word expects (largest index used)."""
        return max(ref.index for ref in self.slots)

    def inverse(self) -> WordWithConstants:
        return WordWithConstants(
            tuple(w.inverse() for w in reversed(self.words)),
            tuple(ConstantRef(r.index, -r.exponent) for r in reversed(self.slots)),
            self.arity,
        )

    def __str__(self) -> str:
        parts = []
        for w, ref in zip(self.words, self.slots):
            if not w.is_identity():
                parts.append(str(w))
            parts.append(f"#{ref.index}" if ref.exponent == 1 else f"#{ref.index}^{ref.exponent}")
        if not self.words[-1].is_identity():
            parts.append(str(self.words[-1]))
        return " ".join(parts)


AnyWord = Union[Word, WordWithConstants]


def abelianization(w: Word) -> tuple[int, ...]:
    """Exponent-sum vector of ``w``; zero iff ``w`` lies in ``[F_n, F_n]``."""
    vec = [0] * w.arity
    for g, e in w.letters:
        vec[g - 1] += e
    return tuple(vec)


def in_commutator_subgroup(w: Word) -> bool:
    return not any(abelianization(w))


def shift_variables(w: Word, offset: int) -> Word:
    """Rename ``x_i`` to ``x_{i+offset}``; used to build words in disjoint letters."""
    if offset < 0:
        raise ValueError("offset must be nonnegative")
    return Word(tuple(Letter(g + offset, e) for g, e in w.letters), w.arity + offset)


def make_family(kind: str, m: int | None = None, parts: Sequence[Word | int] | None = None) -> Word:
    """Standard word families.

    ``power`` gives ``x^m``; ``commutator`` gives ``[x, y]``; ``engel`` gives
    ``[y, [y, ... [y, x] ...]]`` with ``m`` nestings (``x = x1``, ``y = x2``);
    ``multi_commutator`` gives the left-normed ``[[p1, p2], p3], ...``.
    """
    x, y = Word.generator(1), Word.generator(2)
    if kind in ("power", "engel"):
        if m is None or m < 1:
            raise ValueError(f"{kind} family needs m >= 1")
    if kind == "power":
        return x ** m
    if kind == "commutator":
        return commutator(x, y)
    if kind == "engel":
        w = x
        for _ in range(m):
            w = commutator(y, w)
        return w
    if kind == "multi_commutator":
        if not parts or len(parts) < 2:
            raise ValueError("multi_commutator needs at least two entries")
        ws = [Word.generator(p) if isinstance(p, int) else p for p in parts]
        w = ws[0]
        for nxt in ws[1:]:
            w = commutator(w, nxt)
        return w
    raise ValueError(f"unknown word family {kind!r}")


# Nielsen moves ---------------------------------------------------------------

def substitute(w: Word, images: dict[int, Word], arity: int | None = None) -> Word:
    """Apply the endomorphism ``x_i -> images[i]`` (unlisted generators fixed)."""
    out = Word.identity(arity or 0)
    for g, e in w.letters:
        img = images.get(g, Word.generator(g))
        out = out * img ** e
    return out


def nielsen_move(w: Word, move: Sequence) -> Word:
    """Apply one elementary Nielsen transformation to the variables of ``w``.

    Moves are tuples: ``("swap", i, j)``, ``("invert", i)`` or
    ``("multiply", i, j)`` meaning ``x_i -> x_i x_j``.
    """
    kind = move[0]
    if kind == "swap":
        _, i, j = move
        images = {i: Word.generator(j), j: Word.generator(i)}
        return substitute(w, images, max(w.arity, i, j))
    if kind == "invert":
        _, i = move
        return substitute(w, {i: Word.generator(i).inverse()}, max(w.arity, i))
    if kind == "multiply":
        _, i, j = move
        if i == j:
            raise ValueError("multiply move needs distinct generators")
        return substitute(w, {i: Word.generator(i) * Word.generator(j)}, max(w.arity, i, j))
    raise ValueError(f"unknown Nielsen move {kind!r}")


def apply_nielsen(w: Word, moves: Iterable[Sequence]) -> Word:
    for mv in moves:
        w = nielsen_move(w, mv)
    return w


# Evaluation ------------------------------------------------------------------

def group_power(ops: GroupOps, g: Any, e: int) -> Any:
    power = getattr(ops, "power", None)
    if power is not None:
        return power(g, e)
    if e < 0:
        g, e = ops.inv(g), -e
    result = ops.identity
    while e:
        if e & 1:
            result = ops.mul(result, g)
        g = ops.mul(g, g)
        e >>= 1
    return result


def evaluate(w: Word, values: Sequence[Any], ops: GroupOps) -> Any:
    """Substitute ``values[i-1]`` for ``x_i`` and multiply left to right."""
    if len(values) < w.arity:
        raise ValueError(f"word of arity {w.arity} needs {w.arity} values, got {len(values)}")
    acc = ops.identity
    for g, e in w.letters:
        acc = ops.mul(acc, group_power(ops, values[g - 1], e))
    return acc


def evaluate_with_constants(
    wc: AnyWord, values: Sequence[Any], constants: Sequence[Any], ops: GroupOps
) -> Any:
    if isinstance(wc, Word):
        return evaluate(wc, values, ops)
    if len(constants) != wc.num_constants:
        raise ValueError(
            f"word expects {wc.num_constants} constants, got {len(constants)}"
        )
    acc = evaluate(wc.words[0], values, ops)
    for ref, w in zip(wc.slots, wc.words[1:]):
        acc = ops.mul(acc, group_power(ops, constants[ref.index - 1], ref.exponent))
        acc = ops.mul(acc, evaluate(w, values, ops))
    return acc
