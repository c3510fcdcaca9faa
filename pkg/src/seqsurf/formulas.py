"""Formulas and sequents of nonsymmetric multiplicative linear logic.

The connectives are tensor and par with their units, plus the two
one-sided negations of the noncommutative setting: a right star ``f^``
and a left star ``^f``.  Negations are kept explicit in the syntax
tree; the canonical isomorphisms between ``^(f^)`` and ``f`` live in
the diagram layer, not here.
"""

from __future__ import annotations

import re
from dataclasses import dataclass


class Formula:
    """Base class for formula syntax trees."""

    __slots__ = ()

    def __str__(self) -> str:
        return print_formula(self)


@dataclass(frozen=True, repr=False)
class Atom(Formula):
    __slots__ = ("name",)
    name: str

    def __post_init__(self):
        if not re.fullmatch(r"[A-Z][A-Za-z0-9_]*", self.name):
            raise ValueError(f"bad atom name: {self.name!r}")

    def __repr__(self) -> str:
        return f"Atom({self.name})"


@dataclass(frozen=True, repr=False)
class UnitI(Formula):
    __slots__ = ()

    def __repr__(self) -> str:
        return "UnitI"


@dataclass(frozen=True, repr=False)
class UnitBot(Formula):
    __slots__ = ()

    def __repr__(self) -> str:
        return "UnitBot"


@dataclass(frozen=True, repr=False)
class Tensor(Formula):
    __slots__ = ("left", "right")
    left: Formula
    right: Formula

    def __repr__(self) -> str:
        return f"Tensor({self.left!r}, {self.right!r})"


@dataclass(frozen=True, repr=False)
class Par(Formula):
    __slots__ = ("left", "right")
    left: Formula
    right: Formula

    def __repr__(self) -> str:
        return f"Par({self.left!r}, {self.right!r})"


@dataclass(frozen=True, repr=False)
class StarR(Formula):
    """Right negation, printed postfix: ``f^``."""

    __slots__ = ("inner",)
    inner: Formula

    def __repr__(self) -> str:
        return f"StarR({self.inner!r})"


@dataclass(frozen=True, repr=False)
class StarL(Formula):
    """Left negation, printed prefix: ``^f``."""

    __slots__ = ("inner",)
    inner: Formula

    def __repr__(self) -> str:
        return f"StarL({self.inner!r})"


@dataclass(frozen=True)
class Sequent:
    antecedent: tuple[Formula, ...]
    succedent: tuple[Formula, ...]

    def __str__(self) -> str:
        return print_sequent(self)


def hom_right(a: Formula, x: Formula) -> Formula:
    """Internal hom sugar ``a -o x``, elaborated to ``(a^ (+) x)``."""
    return Par(StarR(a), x)


def hom_left(x: Formula, a: Formula) -> Formula:
    """Reversed hom sugar ``x o- a``, elaborated to ``(x (+) ^a)``."""
    return Par(x, StarL(a))


class ParseError(ValueError):
    """Syntax error carrying a position in the input text."""

    def __init__(self, message: str, text: str, pos: int):
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        super().__init__(f"{message} at line {line}, column {col}")
        self.line = line
        self.col = col


# Token kinds:  atoms, units, parens, binary operator glyphs and their
# unicode aliases, stars, turnstile, comma.
_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<atom>[A-Z][A-Za-z0-9_]*)
  | (?P<bot>bot|⊥)
  | (?P<tensor>\(x\)|⊗)
  | (?P<par>\(\+\)|⅋)
  | (?P<homr>-o|⊸)
  | (?P<homl>o-|⟜)
  | (?P<starr>\^|\*|ˡ)          # (position decides left/right star)
  | (?P<lpar>\()
  | (?P<rpar>\))
  | (?P<turnstile>\|-|⊢)
  | (?P<comma>,)
    """,
    re.VERBOSE,
)

_STAR_CHARS = {"^", "*", "ˡ"}


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unknown token {text[pos]!r}", text, pos)
        kind = m.lastgroup
        if kind != "ws":
            # 'bot' only counts as the unit when not an atom prefix; the
            # atom rule wins for names like 'B', so only lowercase 'bot'
            # reaches here and is unambiguous.
            out.append((kind, m.group(), pos))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self) -> tuple[str, str, int] | None:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def next(self) -> tuple[str, str, int]:
        t = self.peek()
        if t is None:
            raise ParseError("unexpected end of input", self.text, len(self.text))
        self.i += 1
        return t

    def expect(self, kind: str) -> tuple[str, str, int]:
        t = self.next()
        if t[0] != kind:
            raise ParseError(f"expected {kind}, found {t[1]!r}", self.text, t[2])
        return t

    def formula(self) -> Formula:
        t = self.peek()
        if t is None:
            raise ParseError("expected a formula", self.text, len(self.text))
        kind, val, pos = t
        if kind == "starr" and val in _STAR_CHARS:
            self.next()
            return StarL(self.formula())
        if kind == "atom":
            self.next()
            if val == "I":
                f: Formula = UnitI()
            else:
                f = Atom(val)
            return self._postfix(f)
        if kind == "bot":
            self.next()
            return self._postfix(UnitBot())
        if kind == "lpar":
            self.next()
            left = self.formula()
            op = self.next()
            if op[0] == "rpar":
                return self._postfix(left)
            right = self.formula()
            self.expect("rpar")
            if op[0] == "tensor":
                f = Tensor(left, right)
            elif op[0] == "par":
                f = Par(left, right)
            elif op[0] == "homr":
                f = hom_right(left, right)
            elif op[0] == "homl":
                f = hom_left(left, right)
            else:
                raise ParseError(f"expected a binary operator, found {op[1]!r}", self.text, op[2])
            return self._postfix(f)
        raise ParseError(f"unexpected token {val!r}", self.text, pos)

    def _postfix(self, f: Formula) -> Formula:
        while True:
            t = self.peek()
            if t is not None and t[0] == "starr":
                self.next()
                f = StarR(f)
            else:
                return f

    def formula_list(self, stop_kinds: set[str]) -> tuple[Formula, ...]:
        t = self.peek()
        if t is None or t[0] in stop_kinds:
            return ()
        items = [self.formula()]
        while True:
            t = self.peek()
            if t is not None and t[0] == "comma":
                self.next()
                items.append(self.formula())
            else:
                return tuple(items)


def parse_formula(text: str) -> Formula:
    """Parse one formula.  Raises ParseError on bad input."""
    if not text.strip():
        raise ParseError("empty formula", text, 0)
    p = _Parser(text)
    f = p.formula()
    if p.peek() is not None:
        raise ParseError(f"trailing input {p.peek()[1]!r}", text, p.peek()[2])
    return f


def parse_sequent(text: str) -> Sequent:
    """Parse ``Gamma |- Delta``; either side may be empty."""
    p = _Parser(text)
    ante = p.formula_list({"turnstile"})
    p.expect("turnstile")
    succ = p.formula_list(set())
    if p.peek() is not None:
        kind, val, pos = p.peek()
        msg = "more than one turnstile" if kind == "turnstile" else f"trailing input {val!r}"
        raise ParseError(msg, text, pos)
    return Sequent(ante, succ)


def print_formula(f: Formula) -> str:
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, UnitI):
        return "I"
    if isinstance(f, UnitBot):
        return "bot"
    if isinstance(f, Tensor):
        return f"({print_formula(f.left)} (x) {print_formula(f.right)})"
    if isinstance(f, Par):
        return f"({print_formula(f.left)} (+) {print_formula(f.right)})"
    if isinstance(f, StarR):
        inner = print_formula(f.inner)
        # '^A^' reads as StarL(StarR(A)); a right star over a left star
        # needs explicit grouping.
        if isinstance(f.inner, StarL):
            inner = f"({inner})"
        return f"{inner}^"
    if isinstance(f, StarL):
        return f"^{print_formula(f.inner)}"
    raise TypeError(f"not a formula: {f!r}")


def print_sequent(s: Sequent) -> str:
    left = ", ".join(print_formula(f) for f in s.antecedent)
    right = ", ".join(print_formula(f) for f in s.succedent)
    if left and right:
        return f"{left} |- {right}"
    if left:
        return f"{left} |-"
    if right:
        return f"|- {right}"
    return "|-"


def subformulas(f: Formula):
    """Yield f and all its subformulas, preorder."""
    yield f
    if isinstance(f, (Tensor, Par)):
        yield from subformulas(f.left)
        yield from subformulas(f.right)
    elif isinstance(f, (StarR, StarL)):
        yield from subformulas(f.inner)
