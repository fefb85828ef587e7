"""Chart functions: multivariate rational functions with flagged variables.

Each chart has holomorphic transverse variables ``z``, their conjugates
(written ``zbar``) and optional leaf variables ``p``. A function is
generalized holomorphic exactly when only holomorphic variables occur.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

import sympy
from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations

from ..exterior import ContractViolation, StructuralError

_TRANSFORMS = standard_transformations + (convert_xor,)


class FunctionParseError(StructuralError):
    def __init__(self, message: str, text: str, where: str = ""):
        self.text = text
        self.where = where
        loc = f" in {where}" if where else ""
        super().__init__(f"{message}{loc}: {text!r}")


def bar_name(name: str) -> str:
    return f"{name}bar"


@dataclass(frozen=True)
class Chart:
    """A chart ``U`` with holomorphic, antiholomorphic and leaf variables.

    ``laurent`` names holomorphic variables whose domain is the punctured
    line, so negative powers are regular there.
    """

    name: str
    holo: tuple
    leaf: tuple = ()
    laurent: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        names = list(self.holo) + [bar_name(v) for v in self.holo] + list(self.leaf)
        if len(set(names)) != len(names) or "i" in names or "I" in names:
            raise StructuralError(f"chart {self.name}: variable names must be distinct and not 'i'")
        if not set(self.laurent) <= set(self.holo):
            raise StructuralError(f"chart {self.name}: Laurent variables must be holomorphic variables")

    @property
    def k(self) -> int:
        return len(self.holo)

    @property
    def z(self) -> list:
        return [sympy.Symbol(v) for v in self.holo]

    @property
    def zbar(self) -> list:
        return [sympy.Symbol(bar_name(v)) for v in self.holo]

    @property
    def p(self) -> list:
        return [sympy.Symbol(v) for v in self.leaf]

    @property
    def symbols(self) -> dict:
        out = {s.name: s for s in self.z + self.zbar + self.p}
        return out

    def parse(self, text, where: str = "") -> sympy.Expr:
        return parse_function(text, self.symbols, where or self.name)

    def conj(self, expr) -> sympy.Expr:
        swap = {}
        for a, b in zip(self.z, self.zbar):
            swap[a] = b
            swap[b] = a
        swap[sympy.I] = -sympy.I
        return sympy.sympify(expr).xreplace(swap)

    def non_gh_vars(self, expr) -> list:
        bad = set(self.zbar) | set(self.p)
        return sorted((s.name for s in sympy.sympify(expr).free_symbols if s in bad))


def parse_function(text, symbols: Mapping, where: str = "") -> sympy.Expr:
    """Parse an exact rational expression; ``i`` is the imaginary unit."""
    if isinstance(text, (int,)) and not isinstance(text, bool):
        return sympy.Integer(text)
    if isinstance(text, sympy.Basic):
        expr = text
    else:
        if not isinstance(text, str):
            raise FunctionParseError("expected a string", repr(text), where)
        local = dict(symbols)
        local["i"] = sympy.I
        try:
            expr = parse_expr(text, local_dict=local, global_dict={"Integer": sympy.Integer, "Rational": sympy.Rational, "Symbol": sympy.Symbol}, transformations=_TRANSFORMS)
        except Exception as exc:  # sympy raises a zoo of exception types
            raise FunctionParseError(f"cannot parse ({exc.__class__.__name__})", text, where) from None
    if not isinstance(expr, sympy.Expr):
        raise FunctionParseError("not an expression", str(text), where)
    if expr.atoms(sympy.Float):
        raise FunctionParseError("floating point literals are not exact", str(text), where)
    unknown = {s.name for s in expr.free_symbols} - set(symbols)
    if unknown:
        raise FunctionParseError(f"unknown variables {sorted(unknown)}", str(text), where)
    if expr.has(sympy.zoo, sympy.nan, sympy.oo):
        raise FunctionParseError("expression is undefined", str(text), where)
    return expr


def canonical(expr, gens=None) -> sympy.Expr:
    """Reduced fraction with a monic denominator."""
    expr = sympy.cancel(sympy.together(sympy.sympify(expr)))
    num, den = sympy.fraction(expr)
    gens = gens or sorted(expr.free_symbols, key=lambda s: s.name)
    if gens and den.free_symbols:
        lc = sympy.Poly(den, *gens).LC()
    else:
        lc = den
    if lc != 1:
        num = sympy.expand(num / lc)
        den = sympy.expand(den / lc)
    return num / den if den != 1 else sympy.expand(num)


def is_zero(expr) -> bool:
    return sympy.cancel(sympy.together(sympy.sympify(expr))) == 0


class RationalFunction:
    """A chart function in canonical reduced form."""

    def __init__(self, chart: Chart, expr):
        self.chart = chart
        e = chart.parse(expr) if isinstance(expr, str) else sympy.sympify(expr)
        self.expr = canonical(e, list(chart.symbols.values()))
        num, den = sympy.fraction(self.expr)
        if den == 0:
            raise ContractViolation("zero denominator")
        self.numerator = num
        self.denominator = den

    @property
    def is_gh(self) -> bool:
        return not self.chart.non_gh_vars(self.expr)

    def offending_vars(self) -> list:
        return self.chart.non_gh_vars(self.expr)

    def __eq__(self, other):
        if isinstance(other, RationalFunction):
            return self.chart == other.chart and is_zero(self.expr - other.expr)
        return NotImplemented

    def __hash__(self):
        return hash(sympy.srepr(self.expr))

    def _wrap(self, e):
        return RationalFunction(self.chart, e)

    def _other(self, o):
        return o.expr if isinstance(o, RationalFunction) else sympy.sympify(o)

    def __add__(self, o):
        return self._wrap(self.expr + self._other(o))

    def __sub__(self, o):
        return self._wrap(self.expr - self._other(o))

    def __mul__(self, o):
        return self._wrap(self.expr * self._other(o))

    def __truediv__(self, o):
        d = self._other(o)
        if is_zero(d):
            raise ZeroDivisionError("division by the zero function")
        return self._wrap(self.expr / d)

    def conjugate(self) -> "RationalFunction":
        return self._wrap(self.chart.conj(self.expr))

    def __str__(self):
        return format_expr(self.expr)

    def __repr__(self):
        return f"RationalFunction({self})"


def format_expr(expr) -> str:
    """Deterministic text rendering using ``i`` for the imaginary unit."""
    s = sympy.sstr(sympy.sympify(expr), order="lex")
    return s.replace("I", "i")


class ChartNerve:
    """Charts plus coordinate changes ``glue[(a, b)]``: the variables of
    chart ``b`` written in the variables of chart ``a`` (``a`` listed first).

    Only pulls from a later chart to an earlier one are needed by the
    algorithms, so one direction per overlap suffices.
    """

    def __init__(self, charts: Sequence[Chart], glue: Mapping | None = None):
        self.charts = list(charts)
        self.by_name = {c.name: c for c in self.charts}
        if len(self.by_name) != len(self.charts):
            raise StructuralError("chart names must be distinct")
        self.order = {c.name: j for j, c in enumerate(self.charts)}
        self.glue = {}
        for (a, b), change in (glue or {}).items():
            if a not in self.by_name or b not in self.by_name:
                raise StructuralError(f"overlap {a},{b} names an unknown chart")
            A, B = self.by_name[a], self.by_name[b]
            if A.k != B.k:
                raise StructuralError(f"overlap {a},{b}: charts have different transverse dimension")
            parsed = {}
            for var in B.holo:
                if var not in change:
                    raise StructuralError(f"overlap {a},{b}: no formula for {var}")
                e = A.parse(change[var], f"glue {a},{b}")
                bad = A.non_gh_vars(e)
                if bad:
                    raise ContractViolation(f"coordinate change {a},{b} is not holomorphic in {bad}")
                parsed[var] = e
            for var in B.leaf:
                parsed[var] = A.parse(change.get(var, var if var in A.leaf else "0"), f"glue {a},{b}")
            self.glue[(a, b)] = parsed

    def chart(self, name) -> Chart:
        return self.by_name[name]

    def overlaps(self) -> list:
        return sorted(self.glue, key=lambda ab: (self.order[ab[0]], self.order[ab[1]]))

    def triples(self) -> list:
        out = []
        names = [c.name for c in self.charts]
        for i, a in enumerate(names):
            for j in range(i + 1, len(names)):
                for l in range(j + 1, len(names)):
                    b, c = names[j], names[l]
                    if (a, b) in self.glue and (b, c) in self.glue and (a, c) in self.glue:
                        out.append((a, b, c))
        return out

    def substitution(self, a: str, b: str) -> dict:
        """Symbol map pulling chart-``b`` expressions into chart ``a``."""
        if (a, b) not in self.glue:
            raise StructuralError(f"no coordinate change from {a} to {b}")
        A, B = self.chart(a), self.chart(b)
        g = self.glue[(a, b)]
        sub = {}
        for var, zs, zb in zip(B.holo, B.z, B.zbar):
            sub[zs] = g[var]
            sub[zb] = A.conj(g[var])
        for var, ps in zip(B.leaf, B.p):
            sub[ps] = g[var]
        return sub

    def pull_function(self, expr, a: str, b: str):
        if a == b:
            return expr
        return sympy.sympify(expr).xreplace(self.substitution(a, b))

    def jacobian(self, a: str, b: str) -> sympy.Matrix:
        """``J[j][s] = d w_j / d z_s`` for the coordinate change ``a -> b``."""
        A, B = self.chart(a), self.chart(b)
        g = self.glue[(a, b)]
        return sympy.Matrix([[sympy.diff(g[var], zs) for zs in A.z] for var in B.holo])

    def check_consistency(self) -> list:
        """Triple-overlap compatibility of coordinate changes; returns failures."""
        bad = []
        for a, b, c in self.triples():
            via = {v: self.pull_function(e, a, b) for v, e in self.glue[(b, c)].items()}
            for v, e in self.glue[(a, c)].items():
                if not is_zero(via[v] - e):
                    bad.append((a, b, c, v))
        return bad


__all__ = [
    "Chart",
    "ChartNerve",
    "FunctionParseError",
    "RationalFunction",
    "bar_name",
    "canonical",
    "format_expr",
    "is_zero",
    "parse_function",
]
