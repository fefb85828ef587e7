"""Transverse differential forms on a chart with rational coefficients.

The differential basis of a chart with ``k`` holomorphic variables is
``dz_1..dz_k, dzbar_1..dzbar_k`` (indices ``0..2k-1``). Derivatives in leaf
variables never appear: forms here are transverse.
"""
from __future__ import annotations

from typing import Mapping

import sympy

from ..exterior import StructuralError, permutation_sign
from .functions import Chart, ChartNerve, canonical, format_expr, is_zero


def _merge(a: tuple, b: tuple):
    if set(a) & set(b):
        return None, 0
    seq = a + b
    return tuple(sorted(seq)), permutation_sign(seq)


class ChartForm:
    """A form ``sum f_I dx_I`` over one chart; ``terms`` maps sorted index tuples to coefficients."""

    def __init__(self, chart: Chart, terms: Mapping | None = None, simplify: bool = True):
        self.chart = chart
        out = {}
        for key, c in (terms or {}).items():
            key = tuple(key)
            if list(key) != sorted(set(key)):
                raise StructuralError("form keys must be strictly increasing")
            c = sympy.sympify(c)
            if simplify:
                c = canonical(c, list(chart.symbols.values()))
            if c != 0:
                out[key] = c
        self.terms = out

    @classmethod
    def function(cls, chart: Chart, f) -> "ChartForm":
        return cls(chart, {(): f})

    @classmethod
    def dz(cls, chart: Chart, j: int, coeff=1) -> "ChartForm":
        return cls(chart, {(j,): coeff})

    @classmethod
    def dzbar(cls, chart: Chart, j: int, coeff=1) -> "ChartForm":
        return cls(chart, {(chart.k + j,): coeff})

    @property
    def n(self) -> int:
        return 2 * self.chart.k

    def _check(self, other):
        if self.chart != other.chart:
            raise StructuralError("forms live on different charts")

    def __add__(self, other):
        self._check(other)
        terms = dict(self.terms)
        for k, c in other.terms.items():
            terms[k] = terms.get(k, 0) + c
        return ChartForm(self.chart, terms)

    def __neg__(self):
        return ChartForm(self.chart, {k: -c for k, c in self.terms.items()}, simplify=False)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, f) -> "ChartForm":
        return ChartForm(self.chart, {k: c * f for k, c in self.terms.items()})

    def wedge(self, other) -> "ChartForm":
        self._check(other)
        terms = {}
        for ka, ca in self.terms.items():
            for kb, cb in other.terms.items():
                key, s = _merge(ka, kb)
                if key is None:
                    continue
                terms[key] = terms.get(key, 0) + s * ca * cb
        return ChartForm(self.chart, terms)

    def is_zero(self) -> bool:
        return all(is_zero(c) for c in self.terms.values())

    def __eq__(self, other):
        if not isinstance(other, ChartForm):
            return NotImplemented
        return self.chart == other.chart and (self - other).is_zero()

    def __hash__(self):
        return hash(tuple(sorted(self.terms)))

    def degrees(self) -> set:
        return {len(k) for k in self.terms}

    def bidegrees(self) -> set:
        k = self.chart.k
        return {(sum(1 for j in key if j < k), sum(1 for j in key if j >= k)) for key in self.terms}

    def part(self, p: int, q: int) -> "ChartForm":
        k = self.chart.k
        return ChartForm(
            self.chart,
            {key: c for key, c in self.terms.items() if sum(1 for j in key if j < k) == p and len(key) - p == q},
            simplify=False,
        )

    def _derivative(self, variables, offset) -> "ChartForm":
        out = ChartForm(self.chart)
        for key, c in self.terms.items():
            for s, v in enumerate(variables):
                dc = sympy.diff(c, v)
                if dc == 0:
                    continue
                out = out + ChartForm(self.chart, {(offset + s,): dc}).wedge(ChartForm(self.chart, {key: 1}))
        return out

    def d_L(self) -> "ChartForm":
        """Derivative in the antiholomorphic directions (raises ``q``)."""
        return self._derivative(self.chart.zbar, self.chart.k)

    def d_Lbar(self) -> "ChartForm":
        """Derivative in the holomorphic directions (raises ``p``)."""
        return self._derivative(self.chart.z, 0)

    def D(self) -> "ChartForm":
        return self.d_L() + self.d_Lbar()

    def conjugate(self) -> "ChartForm":
        k = self.chart.k
        out = ChartForm(self.chart)
        for key, c in self.terms.items():
            flipped = tuple(j + k if j < k else j - k for j in key)
            out = out + ChartForm(self.chart, {tuple(sorted(flipped)): permutation_sign(flipped) * self.chart.conj(c)})
        return out

    def __str__(self):
        if not self.terms:
            return "0"
        labels = [f"d{v}" for v in self.chart.holo] + [f"d{v}bar" for v in self.chart.holo]
        parts = []
        for key in sorted(self.terms, key=lambda t: (len(t), t)):
            c = format_expr(self.terms[key])
            blade = "^".join(labels[j] for j in key)
            parts.append(f"({c})" + (f"*{blade}" if blade else ""))
        return " + ".join(parts)

    def __repr__(self):
        return f"ChartForm({self})"


def pull_form(nerve: ChartNerve, form: ChartForm, a: str, b: str) -> ChartForm:
    """Pull a form on chart ``b`` back to chart ``a``."""
    if a == b:
        return form
    A = nerve.chart(a)
    Jm = nerve.jacobian(a, b)
    k = A.k
    images = []
    for j in range(k):
        images.append(ChartForm(A, {(s,): Jm[j, s] for s in range(k)}))
    for j in range(k):
        images.append(ChartForm(A, {(k + s,): A.conj(Jm[j, s]) for s in range(k)}))
    out = ChartForm(A)
    for key, c in form.terms.items():
        term = ChartForm.function(A, nerve.pull_function(c, a, b))
        for j in key:
            term = term.wedge(images[j])
        out = out + term
    return out


# matrices of forms are lists of rows of ChartForm


def mat_zero(chart: Chart, l: int) -> list:
    return [[ChartForm(chart) for _ in range(l)] for _ in range(l)]


def mat_from_functions(chart: Chart, M) -> list:
    M = sympy.Matrix(M)
    return [[ChartForm.function(chart, M[i, j]) for j in range(M.cols)] for i in range(M.rows)]


def mat_add(A, B) -> list:
    return [[x + y for x, y in zip(r, s)] for r, s in zip(A, B)]


def mat_sub(A, B) -> list:
    return [[x - y for x, y in zip(r, s)] for r, s in zip(A, B)]


def mat_wedge(A, B) -> list:
    n, m, inner = len(A), len(B[0]), len(B)
    chart = A[0][0].chart
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = ChartForm(chart)
            for t in range(inner):
                if A[i][t].terms and B[t][j].terms:
                    acc = acc + A[i][t].wedge(B[t][j])
            row.append(acc)
        out.append(row)
    return out


def mat_conjugate_by(phi: sympy.Matrix, X, phi_inv: sympy.Matrix | None = None) -> list:
    """``ad(phi) X = phi X phi^{-1}`` with ``phi`` a matrix of functions."""
    chart = X[0][0].chart
    phi_inv = phi_inv if phi_inv is not None else phi.inv()
    return mat_wedge(mat_wedge(mat_from_functions(chart, phi), X), mat_from_functions(chart, phi_inv))


def mat_map(fn, A) -> list:
    return [[fn(x) for x in row] for row in A]


def mat_is_zero(A) -> bool:
    return all(x.is_zero() for row in A for x in row)


def mat_equal(A, B) -> bool:
    return mat_is_zero(mat_sub(A, B))


def mat_pull(nerve, A, a, b) -> list:
    return mat_map(lambda f: pull_form(nerve, f, a, b), A)


def mat_trace(A) -> ChartForm:
    acc = A[0][0]
    for i in range(1, len(A)):
        acc = acc + A[i][i]
    return acc


def mat_str(A) -> str:
    if len(A) == 1 and len(A[0]) == 1:
        return str(A[0][0])
    return "[" + "; ".join(", ".join(str(x) for x in row) for row in A) + "]"


__all__ = [
    "ChartForm",
    "mat_add",
    "mat_conjugate_by",
    "mat_equal",
    "mat_from_functions",
    "mat_is_zero",
    "mat_map",
    "mat_pull",
    "mat_str",
    "mat_sub",
    "mat_trace",
    "mat_wedge",
    "mat_zero",
    "pull_form",
]
