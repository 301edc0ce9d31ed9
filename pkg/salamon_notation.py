"""
Salamon notation for Lie algebras: the tuple (de^1, ..., de^n).

Example: "(0,-2e^{12}-2e^{34},-e^{13},-e^{14},2e^{12}+2e^{34})".

Coefficients are rational literals ("2", "3/2") optionally multiplied by
symbols bound at parse time (τ/tau, λ/lambda, h, ...). A unicode minus is
accepted wherever "-" is. With de^k = sum a_ij e^{ij} the structure constants
are c^k_ij = -a_ij, matching d alpha(X, Y) = -alpha([X, Y]).
"""

from __future__ import annotations

import logging
import re
from fractions import Fraction
from typing import Mapping, NamedTuple

from exact_linalg import ONE, ZERO, to_scalar
from lie_algebra import Form, LieAlgebra
from sasaki_errors import IndexOutOfRange, ParseError, UnboundSymbol

logger = logging.getLogger(__name__)

_SYMBOL_ALIASES = {
    "tau": "τ",
    "\\tau": "τ",
    "lambda": "λ",
    "\\lambda": "λ",
    "lam": "λ",
}

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<form>e\^(?:\{(?P<i>\d+),(?P<j>\d+)\}|\{(?P<i1>\d)(?P<j1>\d)\}|(?P<i2>\d)(?P<j2>\d)))
  | (?P<number>\d+)
  | (?P<symbol>\\?[A-Za-z]+|[Ͱ-Ͽ])
  | (?P<op>[-+−*/(),])
    """,
    re.VERBOSE,
)

Entry = dict[tuple[int, int], Fraction]


class Token(NamedTuple):
    kind: str
    text: str
    position: int
    indices: tuple[int, int] | None = None


def canonical_symbol(name: str) -> str:
    return _SYMBOL_ALIASES.get(name, name)


def _bindings(bindings: Mapping[str, object] | None) -> dict[str, Fraction]:
    return {canonical_symbol(k): to_scalar(v) for k, v in (bindings or {}).items()}


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"Unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup if m.lastgroup in ("ws", "number", "symbol", "op") else "form"
        if kind == "form":
            i = m.group("i") or m.group("i1") or m.group("i2")
            j = m.group("j") or m.group("j1") or m.group("j2")
            tokens.append(Token("form", m.group(0), pos, (int(i), int(j))))
        elif kind == "op":
            tokens.append(Token("op", "-" if m.group(0) == "−" else m.group(0), pos))
        elif kind != "ws":
            tokens.append(Token(kind, m.group(0), pos))
        pos = m.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


class _Parser:
    """Recursive descent over the token list."""

    def __init__(self, text: str, bindings: Mapping[str, Fraction]):
        self.tokens = tokenize(text)
        self.bindings = bindings
        self.k = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.k]

    def expect(self, text: str) -> Token:
        if self.tok.text != text or self.tok.kind not in ("op",):
            found = self.tok.text or "end of input"
            raise ParseError(f"Expected {text!r}, found {found!r}", self.tok.position)
        t = self.tok
        self.k += 1
        return t

    def parse_tuple(self) -> list[tuple[Entry, list[tuple[int, int, int]]]]:
        self.expect("(")
        entries = [self.parse_entry()]
        while self.tok.text == ",":
            self.k += 1
            entries.append(self.parse_entry())
        self.expect(")")
        if self.tok.kind != "end":
            raise ParseError(f"Trailing text {self.tok.text!r}", self.tok.position)
        return entries

    def parse_entry(self) -> tuple[Entry, list[tuple[int, int, int]]]:
        acc: Entry = {}
        seen: list[tuple[int, int, int]] = []
        sign = ONE
        if self.tok.text in ("+", "-"):
            sign = -ONE if self.tok.text == "-" else ONE
            self.k += 1
        while True:
            coeff, form = self.parse_term()
            if form is None:
                if coeff != 0:
                    raise ParseError("Expected a basis 2-form e^{ij}", self.tok.position)
            else:
                (i, j), pos = form
                if i == j:
                    raise ParseError(f"Repeated index in e^{{{i}{j}}}", pos)
                if i > j:
                    i, j, coeff = j, i, -coeff
                seen.append((i, j, pos))
                acc[(i, j)] = acc.get((i, j), ZERO) + sign * coeff
            if self.tok.text in ("+", "-"):
                sign = -ONE if self.tok.text == "-" else ONE
                self.k += 1
                continue
            if self.tok.text in (",", ")") or self.tok.kind == "end":
                return {k: v for k, v in acc.items() if v != 0}, seen
            found = self.tok.text or "end of input"
            raise ParseError(f"Unexpected {found!r}", self.tok.position)

    def parse_term(self):
        coeff = ONE
        have_factor = False
        while True:
            t = self.tok
            if t.kind == "number":
                self.k += 1
                value = Fraction(int(t.text))
                if self.tok.text == "/":
                    self.k += 1
                    if self.tok.kind != "number":
                        raise ParseError("Expected a denominator", self.tok.position)
                    den = int(self.tok.text)
                    if den == 0:
                        raise ParseError("Zero denominator", self.tok.position)
                    value /= den
                    self.k += 1
                coeff *= value
                have_factor = True
            elif t.kind == "symbol":
                name = canonical_symbol(t.text)
                if name not in self.bindings:
                    raise UnboundSymbol(name, t.position)
                coeff *= self.bindings[name]
                self.k += 1
                have_factor = True
            elif t.kind == "op" and t.text == "*" and have_factor:
                self.k += 1
                continue
            elif t.kind == "form":
                self.k += 1
                return coeff, (t.indices, t.position)
            else:
                if not have_factor:
                    found = t.text or "end of input"
                    raise ParseError(f"Expected a term, found {found!r}", t.position)
                return coeff, None


def parse_entries(text: str, bindings: Mapping[str, object] | None = None) -> list[Entry]:
    """The tuple as a list of {(i, j): a_ij} dictionaries (1-based, i < j)."""
    parsed = _Parser(text, _bindings(bindings)).parse_tuple()
    n = len(parsed)
    for _, seen in parsed:
        for i, j, pos in seen:
            if not (1 <= i <= n and 1 <= j <= n):
                raise IndexOutOfRange(f"Index in e^{{{i},{j}}} outside 1..{n} (at position {pos})")
    return [entry for entry, _ in parsed]


def parse_salamon(text: str, bindings: Mapping[str, object] | None = None) -> LieAlgebra:
    entries = parse_entries(text, bindings)
    n = len(entries)
    constants = []
    for k, entry in enumerate(entries):
        for (i, j), a in entry.items():
            constants.append((i - 1, j - 1, k, -a))
    logger.debug("Parsed %d-dimensional algebra with %d nonzero constants", n, len(constants))
    return LieAlgebra.from_constants(n, constants)


def parse_form(text: str, dim: int, bindings: Mapping[str, object] | None = None) -> Form:
    """A single 2-form such as "-e^{12}-τe^{35}" on a dim-dimensional algebra (0-based Form)."""
    parser = _Parser(text, _bindings(bindings))
    entry, seen = parser.parse_entry()
    if parser.tok.kind != "end":
        raise ParseError(f"Trailing text {parser.tok.text!r}", parser.tok.position)
    for i, j, pos in seen:
        if not (1 <= i <= dim and 1 <= j <= dim):
            raise IndexOutOfRange(f"Index in e^{{{i},{j}}} outside 1..{dim} (at position {pos})")
    return Form(dim, 2, {(i - 1, j - 1): a for (i, j), a in entry.items()})


def _format_coefficient(c: Fraction, first: bool) -> str:
    sign = "-" if c < 0 else ("" if first else "+")
    mag = abs(c)
    if mag == 1:
        return sign
    if mag.denominator == 1:
        return f"{sign}{mag.numerator}"
    return f"{sign}{mag.numerator}/{mag.denominator}"


def _render_entry(entry: Entry, n: int) -> str:
    terms = sorted((k, v) for k, v in entry.items() if v != 0)
    if not terms:
        return "0"
    out = []
    for idx, ((i, j), c) in enumerate(terms):
        label = f"e^{{{i},{j}}}" if n >= 10 else f"e^{{{i}{j}}}"
        out.append(_format_coefficient(c, idx == 0) + label)
    return "".join(out)


def render_entries(entries: list[Entry]) -> str:
    n = len(entries)
    return "(" + ",".join(_render_entry(e, n) for e in entries) + ")"


def print_salamon(L: LieAlgebra) -> str:
    entries: list[Entry] = [{} for _ in range(L.dim)]
    for i, j, v in L.nonzero_brackets():
        for k, c in enumerate(v):
            if c:
                entries[k][(i + 1, j + 1)] = -c
    return render_entries(entries)


def normalize(text: str, bindings: Mapping[str, object] | None = None) -> str:
    """Canonical form of Salamon text: sorted terms, ASCII signs, no spaces."""
    return render_entries(parse_entries(text, bindings))
