"""Text grammar shared by every file input and report.

EBNF (whitespace between tokens is ignored)::

    expr    = [sign] term { sign term } ;
    sign    = "+" | "-" ;
    term    = factor { ["*" | "^"] factor } ;
    factor  = number | "i" | label | "(" expr ")" ;
    number  = digits [ "/" digits ] ;
    label   = letter { letter | digit | "_" } ;      (a basis label of the space)

Juxtaposition, ``*`` and ``^`` all denote the wedge product; on scalars this is
ordinary multiplication, so ``1/2 i e1^e2`` and ``(1/2)*i*e1^e2`` agree.
"""
from __future__ import annotations

import re
from fractions import Fraction

from .exterior import BasedSpace, GaussianRational, GeneralizedVector, Multivector, ONE, wedge


class ParseError(ValueError):
    def __init__(self, message: str, text: str, position: int):
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position} in {text!r}")


_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        if m.group(0).strip() == "":
            break
        start = m.start(m.lastindex)
        if m.group(1):
            tokens.append(("num", m.group(1), start))
        elif m.group(2):
            tokens.append(("name", m.group(2), start))
        else:
            tokens.append(("op", m.group(3), start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, space: BasedSpace, text: str):
        self.space = space
        self.text = text
        self.tokens = _tokenize(text)
        self.k = 0

    def peek(self):
        return self.tokens[self.k]

    def take(self):
        tok = self.tokens[self.k]
        self.k += 1
        return tok

    def fail(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, self.text, tok[2])

    def expr(self) -> Multivector:
        kind, val, _ = self.peek()
        negative = False
        if kind == "op" and val in "+-":
            self.take()
            negative = val == "-"
        result = self.term()
        if negative:
            result = -result
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                t = self.term()
                result = result + t if val == "+" else result - t
            else:
                return result

    def _starts_factor(self, tok) -> bool:
        kind, val, _ = tok
        return kind in ("num", "name") or (kind == "op" and val == "(")

    def term(self) -> Multivector:
        result = self.factor()
        while True:
            tok = self.peek()
            kind, val, _ = tok
            if kind == "op" and val in "*^":
                self.take()
                if not self._starts_factor(self.peek()):
                    self.fail(f"expected a factor after {val!r}")
                result = wedge(result, self.factor())
            elif self._starts_factor(tok):
                result = wedge(result, self.factor())
            else:
                return result

    def factor(self) -> Multivector:
        tok = self.take()
        kind, val, _ = tok
        if kind == "num":
            return Multivector.scalar(self.space, Fraction(val))
        if kind == "name":
            if val == "i":
                return Multivector.scalar(self.space, GaussianRational(0, 1))
            try:
                j = self.space.index(val)
            except KeyError:
                self.fail(f"unknown basis label {val!r}", tok)
            return Multivector.basis(self.space, j)
        if kind == "op" and val == "(":
            inner = self.expr()
            if self.peek()[:2] != ("op", ")"):
                self.fail("expected ')'")
            self.take()
            return inner
        if kind == "end":
            self.fail("unexpected end of input", tok)
        self.fail(f"unexpected {val!r}", tok)

    def parse(self) -> Multivector:
        if self.peek()[0] == "end":
            self.fail("empty expression")
        out = self.expr()
        if self.peek()[0] != "end":
            self.fail(f"unexpected {self.peek()[1]!r}")
        return out


def parse_form(space: BasedSpace, text: str) -> Multivector:
    if not isinstance(text, str):
        raise ParseError("expected a string", repr(text), 0)
    return _Parser(space, text).parse()


_SCALAR_SPACE = BasedSpace(())


def parse_scalar(text) -> GaussianRational:
    """Parse ``a/b + c/d i``-style scalars; ints pass straight through."""
    if isinstance(text, int) and not isinstance(text, bool):
        return GaussianRational(text)
    mv = parse_form(_SCALAR_SPACE, str(text))
    return mv.terms.get((), GaussianRational(0))


def _frac(q: Fraction) -> str:
    return str(q)


def format_scalar(c: GaussianRational) -> str:
    re_, im = c.re, c.im
    if im == 0:
        return _frac(re_)
    if im == 1:
        im_s = "i"
    elif im == -1:
        im_s = "-i"
    else:
        im_s = f"{_frac(im)} i"
    if re_ == 0:
        return im_s
    if im < 0:
        return f"{_frac(re_)} - {im_s.lstrip('-')}" if im == -1 else f"{_frac(re_)} - {_frac(-im)} i"
    return f"{_frac(re_)} + {im_s}"


def _coeff_prefix(c: GaussianRational):
    """(sign, text) with text empty for a unit coefficient."""
    if c.im == 0:
        sign = "-" if c.re < 0 else "+"
        mag = abs(c.re)
        return sign, "" if mag == 1 else _frac(mag)
    if c.re == 0:
        sign = "-" if c.im < 0 else "+"
        mag = abs(c.im)
        return sign, "i" if mag == 1 else f"{_frac(mag)} i"
    return "+", f"({format_scalar(c)})"


def format_form(mv: Multivector) -> str:
    if mv.is_zero():
        return "0"
    labels = mv.space.labels
    keys = sorted(mv.terms, key=lambda k: (len(k), k))
    parts = []
    for n, key in enumerate(keys):
        sign, coeff = _coeff_prefix(mv.terms[key])
        blade = "^".join(labels[j] for j in key)
        if blade and coeff:
            body = f"{coeff}*{blade}"
        else:
            body = blade or coeff or "1"
        if n == 0:
            parts.append(("-" if sign == "-" else "") + body)
        else:
            parts.append(f" {sign} {body}")
    return "".join(parts)


def format_generalized(v: GeneralizedVector) -> str:
    space = v.space
    vec = Multivector.one_form(space, v.vector)
    form = Multivector.one_form(space, v.form)
    return f"{format_form(vec)} | {format_form(form)}*"


def parse_generalized(space: BasedSpace, vector: str = "0", form: str = "0") -> GeneralizedVector:
    """Build ``X + xi`` from two degree-1 expressions in the basis labels."""
    X = parse_form(space, vector)
    xi = parse_form(space, form)
    for part in (X, xi):
        if part.degrees() - {1}:
            raise ValueError("generalized vector parts must be homogeneous of degree 1")
    return GeneralizedVector(space, X.coords(1), xi.coords(1))


__all__ = [
    "ParseError",
    "parse_form",
    "parse_scalar",
    "format_form",
    "format_scalar",
    "format_generalized",
    "parse_generalized",
    "ONE",
]
