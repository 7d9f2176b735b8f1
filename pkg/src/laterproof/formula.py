"""Formula syntax: AST, concrete-syntax parser and printer, syntactic measures.

Concrete grammar (loosest to tightest)::

    expr   := disj ( '->' disj )*          right-associative
            | disj ( '~>' disj )*          right-associative; never mixed with '->'
    disj   := conj ( '|' conj )*           left-associative
    conj   := unary ( '&' unary )*         left-associative
    unary  := '@' unary | '!' unary | atom | 'T' | 'F' | '(' expr ')'
    atom   := [a-z][a-zA-Z0-9_]*

``@`` is the later modality, ``~>`` irreflexive implication, ``!φ`` is sugar
for ``φ -> F``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator

__all__ = [
    "Formula", "Atom", "Top", "Bot", "And", "Or", "Imp", "Simp", "Later",
    "TOP", "BOT", "ParseError", "parse", "to_text", "length", "subformulas",
    "closure", "atoms", "order_key", "sort_formulas", "is_modal",
]

ATOM_RE = re.compile(r"[a-z][a-zA-Z0-9_]*")


class Formula:
    """Base class of the immutable formula AST.

    Equality is structural; hashes are cached because formulas live in
    sets almost everywhere.
    """

    __slots__ = ()

    def __str__(self) -> str:
        return to_text(self)

    @cached_property
    def size(self) -> int:
        return 1 + sum(c.size for c in self.children())

    @cached_property
    def key(self) -> tuple[int, str]:
        return (self.size, to_text(self))

    def children(self) -> tuple[Formula, ...]:
        return ()


@dataclass(frozen=True, eq=True)
class Atom(Formula):
    name: str
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if not ATOM_RE.fullmatch(self.name):
            raise ValueError(f"invalid atom name {self.name!r}")
        object.__setattr__(self, "_hash", hash(("atom", self.name)))

    def __hash__(self) -> int:
        return self._hash


@dataclass(frozen=True, eq=True)
class Top(Formula):
    def __hash__(self) -> int:
        return 0x70F


@dataclass(frozen=True, eq=True)
class Bot(Formula):
    def __hash__(self) -> int:
        return 0xB07


TOP = Top()
BOT = Bot()


@dataclass(frozen=True, eq=True)
class _Binary(Formula):
    left: Formula
    right: Formula
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_hash", hash((type(self).__name__, self.left, self.right)))

    def __hash__(self) -> int:
        return self._hash

    def children(self) -> tuple[Formula, ...]:
        return (self.left, self.right)


class And(_Binary):
    pass


class Or(_Binary):
    pass


class Imp(_Binary):
    pass


class Simp(_Binary):
    """Irreflexive implication: holds when every strict successor satisfying
    ``left`` also satisfies ``right``."""


@dataclass(frozen=True, eq=True)
class Later(Formula):
    body: Formula
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_hash", hash(("later", self.body)))

    def __hash__(self) -> int:
        return self._hash

    def children(self) -> tuple[Formula, ...]:
        return (self.body,)


def is_modal(f: Formula) -> bool:
    """True for ``~>``- and ``@``-formulas (the candidates for eventualities)."""
    return isinstance(f, (Simp, Later))


# ---------------------------------------------------------------- parsing


class ParseError(ValueError):
    def __init__(self, message: str, text: str, position: int, expected: frozenset[str]):
        self.text = text
        self.position = position
        self.expected = expected
        self.message = message
        exp = ", ".join(sorted(expected)) if expected else "nothing"
        super().__init__(f"{message} at column {position + 1} (expected one of: {exp})")

    @property
    def column(self) -> int:
        return self.position + 1


_TOKEN_RE = re.compile(r"\s*(?:(->|~>|[&|@!()])|([a-z][a-zA-Z0-9_]*)|([TF])(?![a-zA-Z0-9_]))")
_ARROWS = {"->": Imp, "~>": Simp}
_UNARY_START = frozenset({"@", "!", "(", "T", "F", "<atom>"})


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens: list[tuple[str, str, int]] = []
        pos = 0
        while True:
            while pos < len(text) and text[pos].isspace():
                pos += 1
            if pos == len(text):
                break
            m = _TOKEN_RE.match(text, pos)
            if m is None:
                raise ParseError(f"unexpected character {text[pos]!r}", text, pos,
                                 _UNARY_START | {"->", "~>", "&", "|", ")"})
            start = m.start(m.lastindex)
            if m.group(1):
                self.tokens.append((m.group(1), m.group(1), start))
            elif m.group(2):
                self.tokens.append(("<atom>", m.group(2), start))
            else:
                self.tokens.append((m.group(3), m.group(3), start))
            pos = m.end()
        self.tokens.append(("<end>", "", len(text)))
        self.i = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.i]

    def advance(self) -> tuple[str, str, int]:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, expected: frozenset[str]) -> ParseError:
        kind, value, pos = self.peek()
        what = "end of input" if kind == "<end>" else repr(value)
        return ParseError(f"unexpected {what}", self.text, pos, expected)

    def parse(self) -> Formula:
        f = self.expr()
        if self.peek()[0] != "<end>":
            raise self.fail(frozenset({"->", "~>", "&", "|", "<end>"}))
        return f

    def expr(self) -> Formula:
        operands = [self.disj()]
        arrow = None
        while self.peek()[0] in _ARROWS:
            kind, _, pos = self.peek()
            if arrow is not None and kind != arrow:
                raise ParseError("cannot mix '->' and '~>' without parentheses",
                                 self.text, pos, frozenset({arrow, "&", "|", "<end>", ")"}))
            arrow = kind
            self.advance()
            operands.append(self.disj())
        f = operands[-1]
        for left in reversed(operands[:-1]):
            f = _ARROWS[arrow](left, f)
        return f

    def disj(self) -> Formula:
        f = self.conj()
        while self.peek()[0] == "|":
            self.advance()
            f = Or(f, self.conj())
        return f

    def conj(self) -> Formula:
        f = self.unary()
        while self.peek()[0] == "&":
            self.advance()
            f = And(f, self.unary())
        return f

    def unary(self) -> Formula:
        kind, value, _ = self.peek()
        if kind == "@":
            self.advance()
            return Later(self.unary())
        if kind == "!":
            self.advance()
            return Imp(self.unary(), BOT)
        if kind == "<atom>":
            self.advance()
            return Atom(value)
        if kind == "T":
            self.advance()
            return TOP
        if kind == "F":
            self.advance()
            return BOT
        if kind == "(":
            self.advance()
            f = self.expr()
            if self.peek()[0] != ")":
                raise self.fail(frozenset({")", "->", "~>", "&", "|"}))
            self.advance()
            return f
        raise self.fail(_UNARY_START)


def parse(text: str) -> Formula:
    """Parse concrete syntax into a formula; raises :class:`ParseError`."""
    return _Parser(text).parse()


# ---------------------------------------------------------------- printing

_PREC = {Imp: 1, Simp: 1, Or: 2, And: 3}

PLAIN_SYMBOLS = {
    Imp: " -> ", Simp: " ~> ", Or: " | ", And: " & ",
    Later: "@", Top: "T", Bot: "F",
}


def _prec(f: Formula) -> int:
    return _PREC.get(type(f), 4)


def render(f: Formula, symbols: dict, atom=lambda name: name) -> str:
    """Minimal-parenthesis rendering with a pluggable symbol table."""
    def go(g: Formula) -> str:
        if isinstance(g, Atom):
            return atom(g.name)
        if isinstance(g, (Top, Bot)):
            return symbols[type(g)]
        if isinstance(g, Later):
            body = go(g.body)
            return symbols[Later] + (body if _prec(g.body) == 4 else f"({body})")
        p = _prec(g)
        left, right = go(g.left), go(g.right)
        if p == 1:
            # right-assoc; an arrow of the other kind is always bracketed
            if _prec(g.left) <= 1:
                left = f"({left})"
            if _prec(g.right) < 1 or (_prec(g.right) == 1 and type(g.right) is not type(g)):
                right = f"({right})"
        else:
            # left-assoc
            if _prec(g.left) < p:
                left = f"({left})"
            if _prec(g.right) <= p:
                right = f"({right})"
        return left + symbols[type(g)] + right

    return go(f)


def to_text(f: Formula) -> str:
    """Print ``f`` so that ``parse(to_text(f)) == f``."""
    return render(f, PLAIN_SYMBOLS)


# ---------------------------------------------------------------- measures


def length(f: Formula) -> int:
    """Number of AST nodes."""
    return f.size


def _walk(f: Formula) -> Iterator[Formula]:
    stack = [f]
    while stack:
        g = stack.pop()
        yield g
        stack.extend(g.children())


def subformulas(f: Formula) -> frozenset[Formula]:
    return frozenset(_walk(f))


def closure(f: Formula) -> frozenset[Formula]:
    """Subformulas plus the ``~>``-version of every ``->``-subformula."""
    sf = subformulas(f)
    return sf | {Simp(g.left, g.right) for g in sf if isinstance(g, Imp)}


def atoms(f: Formula) -> frozenset[str]:
    return frozenset(g.name for g in _walk(f) if isinstance(g, Atom))


def order_key(f: Formula) -> tuple[int, str]:
    """Deterministic total order: by length, then by printed form."""
    return f.key


def sort_formulas(fs) -> list[Formula]:
    return sorted(fs, key=order_key)
