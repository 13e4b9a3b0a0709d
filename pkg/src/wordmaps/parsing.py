"""Recursive-descent parser for the word grammar.

::

    expr  := term { "*"? term }
    term  := atom [ "^" int ]
    atom  := var | const | "[" expr "," expr "]" | "(" expr ")"
    var   := "x" int | x | y | z | u | v
    const := "#" int

Whitespace is ignored.  ``[a, b]`` denotes ``a b a^-1 b^-1``.
"""

from __future__ import annotations

from .errors import InputError, WordSyntaxError
from .words import AnyWord, ConstantRef, Letter, Word, WordWithConstants

_NAMED_VARS = {"x": 1, "y": 2, "z": 3, "u": 4, "v": 5}

# Raw items: ("x", generator, exponent) or ("c", constant_index, exponent).
_Raw = list[tuple[str, int, int]]


def _invert(seq: _Raw) -> _Raw:
    return [(kind, i, -e) for kind, i, e in reversed(seq)]


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str) -> WordSyntaxError:
        return WordSyntaxError(message, self.text, self.pos)

    def skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str) -> None:
        if self.peek() != ch:
            found = self.peek() or "end of input"
            raise self.error(f"expected {ch!r}, found {found!r}")
        self.pos += 1

    def integer(self, signed: bool) -> int:
        self.skip()
        start = self.pos
        if signed and self.peek() == "-":
            self.pos += 1
            self.skip()
        digits_start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == digits_start:
            self.pos = start
            raise self.error("expected an integer")
        return int(self.text[start:self.pos].replace(" ", ""))

    def parse(self) -> _Raw:
        if not self.peek():
            return []
        seq = self.expr()
        if self.peek():
            raise self.error(f"unexpected {self.peek()!r}")
        return seq

    def expr(self) -> _Raw:
        seq = self.term()
        while True:
            ch = self.peek()
            if ch == "*":
                self.pos += 1
                seq += self.term()
            elif ch and (ch in "[(#" or ch in _NAMED_VARS):
                seq += self.term()
            else:
                return seq

    def term(self) -> _Raw:
        seq = self.atom()
        if self.peek() == "^":
            self.pos += 1
            at = self.pos
            n = self.integer(signed=True)
            if n == 0:
                self.pos = at
                raise self.error("exponent must be nonzero")
            seq = (seq if n > 0 else _invert(seq)) * abs(n)
        return seq

    def atom(self) -> _Raw:
        ch = self.peek()
        if ch == "[":
            self.pos += 1
            a = self.expr()
            self.expect(",")
            b = self.expr()
            self.expect("]")
            return a + b + _invert(a) + _invert(b)
        if ch == "(":
            self.pos += 1
            inner = self.expr()
            self.expect(")")
            return inner
        if ch == "#":
            self.pos += 1
            at = self.pos
            idx = self.integer(signed=False)
            if idx == 0:
                self.pos = at
                raise self.error("constant index must be >= 1")
            return [("c", idx, 1)]
        if ch in _NAMED_VARS:
            self.pos += 1
            if ch == "x" and self.pos < len(self.text) and self.text[self.pos].isdigit():
                at = self.pos
                idx = self.integer(signed=False)
                if idx == 0:
                    self.pos = at
                    raise self.error("variable index must be >= 1")
                return [("x", idx, 1)]
            return [("x", _NAMED_VARS[ch], 1)]
        raise self.error(f"unexpected {ch!r}" if ch else "unexpected end of input")


def _reduce_mixed(seq: _Raw) -> _Raw:
    """Free reduction in ``G * F_n``: equal adjacent tokens merge, zeros vanish."""
    out: _Raw = []
    for kind, i, e in seq:
        if out and out[-1][0] == kind and out[-1][1] == i:
            merged = out[-1][2] + e
            out.pop()
            if merged:
                out.append((kind, i, merged))
        else:
            out.append((kind, i, e))
    return out


def parse_word(text: str, arity_hint: int | None = None) -> AnyWord:
    """Parse ``text`` into a reduced :class:`Word` or :class:`WordWithConstants`."""
    raw = _reduce_mixed(_Parser(text).parse())
    used = max((i for kind, i, _ in raw if kind == "x"), default=0)
    arity = max(used, arity_hint or 0)
    if not any(kind == "c" for kind, _, _ in raw):
        return Word(tuple(Letter(i, e) for _, i, e in raw), arity)

    words: list[Word] = []
    slots: list[ConstantRef] = []
    current: list[Letter] = []
    for kind, i, e in raw:
        if kind == "x":
            current.append(Letter(i, e))
        else:
            if slots and not current:
                raise InputError(
                    f"constants #{slots[-1].index} and #{i} are adjacent; "
                    f"interior word segments must be nonempty: {text!r}"
                )
            words.append(Word(tuple(current), arity))
            slots.append(ConstantRef(i, e))
            current = []
    words.append(Word(tuple(current), arity))
    return WordWithConstants(tuple(words), tuple(slots), arity)


def parse_plain_word(text: str, arity_hint: int | None = None) -> Word:
    w = parse_word(text, arity_hint)
    if not isinstance(w, Word):
        raise InputError(f"expected a word without constants: {text!r}")
    return w
