"""Text format for free CDGAs.

::

    algebra S2          # header, required, first non-comment line
    gen v : 2
    gen y : 3
    d v = 0
    d y = v^2

Grammar (LL(1); whitespace is free inside a line, ``#`` starts a comment)::

    document   := header line*
    header     := "algebra" NAME
    line       := "gen" NAME ("," NAME)* ":" INT
                | "d" NAME "=" expr
    expr       := ["+" | "-"] term (("+" | "-") term)*
    term       := factor ("*" factor)*
    factor     := NUMBER ["/" NUMBER] | NAME ["^" INT] | "(" expr ")"

A generator without a ``d`` line has zero differential.
"""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass
from fractions import Fraction

from .cdga import CDGA, DifferentialError
from .graded import Element, GradedAlgebra, render


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
        self.reason = message


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_']*)|(?P<op>[-+*/^():,=]))")


@dataclass
class _Tok:
    kind: str
    text: str
    col: int


def _tokenize(line: str, lineno: int) -> list[_Tok]:
    toks = []
    pos = 0
    stripped = line.rstrip()
    while pos < len(stripped):
        m = _TOKEN.match(stripped, pos)
        if not m or m.end() == pos:
            col = pos + len(stripped[pos:]) - len(stripped[pos:].lstrip()) + 1
            raise ParseError(f"unexpected character {stripped[col - 1]!r}", lineno, col)
        kind = m.lastgroup
        toks.append(_Tok(kind, m.group(kind), m.start(kind) + 1))
        pos = m.end()
    toks.append(_Tok("end", "", len(stripped) + 1))
    return toks


class _ExprParser:
    def __init__(self, toks: list[_Tok], pos: int, algebra: GradedAlgebra, lineno: int):
        self.toks = toks
        self.pos = pos
        self.alg = algebra
        self.lineno = lineno

    def peek(self) -> _Tok:
        return self.toks[self.pos]

    def take(self) -> _Tok:
        tok = self.toks[self.pos]
        self.pos += 1
        return tok

    def error(self, msg: str, tok: _Tok | None = None):
        tok = tok or self.peek()
        raise ParseError(msg, self.lineno, tok.col)

    def expect(self, text: str) -> _Tok:
        tok = self.peek()
        if tok.text != text or tok.kind == "end":
            self.error(f"expected {text!r}, found {tok.text or 'end of line'!r}")
        return self.take()

    def expr(self) -> Element:
        sign = 1
        if self.peek().text in "+-" and self.peek().kind == "op":
            sign = -1 if self.take().text == "-" else 1
        result = self.term().scale(sign)
        while self.peek().kind == "op" and self.peek().text in ("+", "-"):
            op = self.take().text
            t = self.term()
            result = result + t if op == "+" else result - t
        return result

    def term(self) -> Element:
        result = self.factor()
        while self.peek().kind == "op" and self.peek().text == "*":
            self.take()
            result = result * self.factor()
        return result

    def factor(self) -> Element:
        tok = self.peek()
        if tok.kind == "num":
            self.take()
            value = Fraction(int(tok.text))
            if self.peek().kind == "op" and self.peek().text == "/":
                self.take()
                den = self.peek()
                if den.kind != "num":
                    self.error("expected a denominator")
                self.take()
                if int(den.text) == 0:
                    self.error("zero denominator", den)
                value /= int(den.text)
            return self.alg.scalar(value)
        if tok.kind == "name":
            self.take()
            if tok.text not in self.alg:
                self.error(f"undeclared generator {tok.text!r}", tok)
            base = self.alg.gen(tok.text)
            if self.peek().kind == "op" and self.peek().text == "^":
                self.take()
                exp = self.peek()
                if exp.kind != "num" or int(exp.text) < 1:
                    self.error("exponent must be a positive integer")
                self.take()
                k = int(exp.text)
                if k > 1 and self.alg.is_odd(self.alg.index(tok.text)):
                    warnings.warn(
                        f"line {self.lineno}: odd generator {tok.text!r} raised to power {k} is zero",
                        stacklevel=2,
                    )
                return base ** k
            return base
        if tok.kind == "op" and tok.text == "(":
            self.take()
            inner = self.expr()
            self.expect(")")
            return inner
        self.error(f"unexpected {tok.text or 'end of line'!r}")


def _strip_comment(line: str) -> str:
    i = line.find("#")
    return line if i < 0 else line[:i]


def parse(text: str, validate: bool = True) -> CDGA:
    """Parse a DSL document; ``validate=False`` skips the d^2 = 0 check (used by ``check``)."""
    name = None
    gens: list[tuple[str, int]] = []
    seen: set[str] = set()
    d_lines: list[tuple[int, list[_Tok], _Tok]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line.strip():
            continue
        toks = _tokenize(line, lineno)
        head = toks[0]
        if name is None:
            if head.text != "algebra" or toks[1].kind != "name" or toks[2].kind != "end":
                raise ParseError("document must start with 'algebra <name>'", lineno, head.col)
            name = toks[1].text
            continue
        if head.text == "gen" and head.kind == "name":
            pos = 1
            names = []
            while True:
                tok = toks[pos]
                if tok.kind != "name":
                    raise ParseError("expected a generator name", lineno, tok.col)
                if tok.text in seen:
                    raise ParseError(f"generator {tok.text!r} declared twice", lineno, tok.col)
                if d_lines:
                    raise ParseError("generators must be declared before any 'd' line", lineno, head.col)
                seen.add(tok.text)
                names.append(tok.text)
                pos += 1
                if toks[pos].text == ",":
                    pos += 1
                    continue
                break
            if toks[pos].text != ":":
                raise ParseError("expected ':'", lineno, toks[pos].col)
            deg = toks[pos + 1]
            if deg.kind != "num":
                raise ParseError("expected a degree", lineno, deg.col)
            if int(deg.text) < 1:
                raise ParseError("generator degrees must be >= 1", lineno, deg.col)
            if toks[pos + 2].kind != "end":
                raise ParseError("trailing input", lineno, toks[pos + 2].col)
            gens.extend((n, int(deg.text)) for n in names)
        elif head.text == "d" and head.kind == "name":
            d_lines.append((lineno, toks, head))
        else:
            raise ParseError(f"expected 'gen' or 'd', found {head.text!r}", lineno, head.col)
    if name is None:
        raise ParseError("empty document", 1, 1)
    algebra = GradedAlgebra(gens)
    diff: dict[str, Element] = {}
    for lineno, toks, head in d_lines:
        target = toks[1]
        if target.kind != "name":
            raise ParseError("expected a generator name after 'd'", lineno, target.col)
        if target.text not in algebra:
            raise ParseError(f"undeclared generator {target.text!r}", lineno, target.col)
        if target.text in diff:
            raise ParseError(f"differential of {target.text!r} given twice", lineno, target.col)
        if toks[2].text != "=":
            raise ParseError("expected '='", lineno, toks[2].col)
        p = _ExprParser(toks, 3, algebra, lineno)
        value = p.expr()
        if p.peek().kind != "end":
            p.error(f"unexpected {p.peek().text!r}")
        want = algebra.generators[algebra.index(target.text)].degree + 1
        if value and (not value.is_homogeneous() or value.degree != want):
            got = sorted(value.degrees())
            raise ParseError(
                f"degree mismatch: d {target.text} must have degree {want}, expression has degree "
                f"{got[0] if len(got) == 1 else got}",
                lineno,
                toks[3].col,
            )
        diff[target.text] = value
    return CDGA(algebra, diff, name=name, validate=validate)


def render_cdga(cdga: CDGA, name: str | None = None) -> str:
    """Canonical document: header, one ``gen`` line per generator, one ``d`` line per generator."""
    header = re.sub(r"\W", "_", name or cdga.name or "A")
    if not re.match(r"[A-Za-z_]", header):
        header = "A_" + header
    lines = [f"algebra {header}"]
    for g in cdga.generators:
        lines.append(f"gen {g.name} : {g.degree}")
    for g, dg in zip(cdga.generators, cdga.differential):
        lines.append(f"d {g.name} = {render(dg)}")
    return "\n".join(lines) + "\n"


def parse_element(text: str, algebra: GradedAlgebra) -> Element:
    """Parse a standalone expression such as ``2*v^2 - x``."""
    toks = _tokenize(text, 1)
    p = _ExprParser(toks, 0, algebra, 1)
    value = p.expr()
    if p.peek().kind != "end":
        p.error(f"unexpected {p.peek().text!r}")
    return value


__all__ = ["ParseError", "DifferentialError", "parse", "parse_element", "render_cdga"]
