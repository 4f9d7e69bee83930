"""Text syntax for jets.

Grammar (whitespace is ignored)::

    jet     := expr | "(" expr ("," expr)* ")"
    expr    := ["+" | "-"] term (("+" | "-") term)*
    term    := factor (("*" | "/") factor)*
    factor  := atom ["^" INT]
    atom    := INT | NAME | "(" expr ")"

Division is only allowed by a nonzero constant, so ``3/2*x^2`` is the way to
write rational coefficients.  Names are the source variables; by default
``z1, ..., zn, x, y``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional, Sequence

from .jetalg import JetMap, TruncPoly, default_names, format_poly, mpq

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")
_ZVAR = re.compile(r"z(\d+)$")


class ParseError(ValueError):
    def __init__(self, message: str, position: int, text: str = ""):
        self.message = message
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position}")

    def pointer(self) -> str:
        """The input with a caret under the offending position."""
        return f"{self.text}\n{' ' * self.position}^"


@dataclass
class _Tok:
    kind: str  # "int", "name", "op", "end"
    value: str
    pos: int


def _tokenize(text: str) -> list:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m.end() == pos or not m.group(0).strip():
            break
        start = m.start(m.lastindex)
        if m.group(1):
            toks.append(_Tok("int", m.group(1), start))
        elif m.group(2):
            toks.append(_Tok("name", m.group(2), start))
        else:
            ch = m.group(3)
            if ch not in "+-*/^(),":
                raise ParseError(f"unexpected character {ch!r}", start, text)
            toks.append(_Tok("op", ch, start))
        pos = m.end()
    toks.append(_Tok("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, names: Sequence[str], order: int):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.index = {name: k for k, name in enumerate(names)}
        self.nvars = len(names)
        self.order = order

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def error(self, message: str, tok: Optional[_Tok] = None):
        tok = tok or self.tok
        raise ParseError(message, tok.pos, self.text)

    def take(self, value: str) -> bool:
        if self.tok.kind == "op" and self.tok.value == value:
            self.i += 1
            return True
        return False

    def expect(self, value: str):
        if not self.take(value):
            found = self.tok.value or "end of input"
            self.error(f"expected {value!r}, found {found!r}")

    def parse_jet(self) -> list:
        if self.tok.kind == "op" and self.tok.value == "(":
            save = self.i
            self.i += 1
            comps = [self.expr()]
            while self.take(","):
                comps.append(self.expr())
            if len(comps) == 1:
                self.i = save
            else:
                self.expect(")")
                if self.tok.kind != "end":
                    self.error("a tuple must be the whole input")
                return comps
        comps = [self.expr()]
        if self.tok.kind != "end":
            self.error(f"unexpected {self.tok.value!r}")
        return comps

    def expr(self) -> TruncPoly:
        negate = self.take("-")
        if not negate:
            self.take("+")
        acc = self.term()
        if negate:
            acc = -acc
        while True:
            if self.take("+"):
                acc = acc + self.term()
            elif self.take("-"):
                acc = acc - self.term()
            else:
                return acc

    def term(self) -> TruncPoly:
        acc = self.factor()
        while True:
            if self.take("*"):
                acc = acc * self.factor()
            elif self.tok.kind == "op" and self.tok.value == "/":
                slash = self.tok
                self.i += 1
                den = self.factor()
                if den.degree() > 0:
                    self.error("division by a non-constant", slash)
                if not den:
                    self.error("division by zero", slash)
                acc = acc / den.constant_term()
            else:
                return acc

    def factor(self) -> TruncPoly:
        base = self.atom()
        if self.take("^"):
            if self.tok.kind != "int":
                self.error("exponent must be a nonnegative integer")
            k = int(self.tok.value)
            self.i += 1
            return base ** k
        return base

    def atom(self) -> TruncPoly:
        tok = self.tok
        if tok.kind == "int":
            self.i += 1
            return TruncPoly.constant(self.nvars, self.order, mpq(int(tok.value)))
        if tok.kind == "name":
            if tok.value not in self.index:
                self.error(f"unknown variable {tok.value!r}")
            self.i += 1
            return TruncPoly.variable(self.nvars, self.order, self.index[tok.value])
        if self.take("("):
            inner = self.expr()
            self.expect(")")
            return inner
        found = tok.value or "end of input"
        self.error(f"unexpected {found!r}")


def variables_used(text: str) -> list:
    """Identifiers occurring in ``text`` in order of first appearance."""
    seen = []
    for tok in _tokenize(text):
        if tok.kind == "name" and tok.value not in seen:
            seen.append(tok.value)
    return seen


def infer_n(texts: Sequence[str]) -> int:
    """Largest index k of a variable ``zk`` in the texts (0 if none)."""
    n = 0
    for text in texts:
        for name in variables_used(text):
            m = _ZVAR.match(name)
            if m:
                n = max(n, int(m.group(1)))
    return n


def parse_polys(text: str, names: Sequence[str], order: int = 4) -> list:
    """Parse a polynomial or a tuple of polynomials in the given variables."""
    return _Parser(text, names, order).parse_jet()


def parse_jet(text: str, n: Optional[int] = None, order: int = 4) -> JetMap:
    """Parse a jet in ``z1..zn, x, y``; ``n`` is inferred when omitted."""
    if n is None:
        n = infer_n([text])
    names = default_names(n + 2)
    return JetMap(parse_polys(text, names, order), source_dim=n + 2, order=order)


def format_jet(f: JetMap, names: Optional[Sequence[str]] = None) -> str:
    names = names or default_names(f.source_dim)
    body = ", ".join(format_poly(c, names) for c in f)
    return f"({body})" if f.target_dim > 1 else body
