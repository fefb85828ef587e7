"""Lie algebras given by the differentials of their dual generators.

The Chevalley-Eilenberg differential on invariant forms plays the role of the
exterior derivative, and invariant sections of ``(g + g*) (x) C`` carry the
Courant bracket.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from . import linalg
from .exterior import (
    BasedSpace,
    ContractViolation,
    GaussianRational,
    GeneralizedVector,
    Multivector,
    StructuralError,
    ZERO,
    gq,
    interior,
    pairing,
)


class InvalidLieAlgebra(ValueError):
    def __init__(self, report: "LieReport"):
        self.report = report
        super().__init__(report.summary())


@dataclass
class LieReport:
    antisymmetric: bool = True
    antisymmetry_violations: list = field(default_factory=list)
    d_squared_zero: bool = True
    first_failure: str | None = None
    failure_value: Multivector | None = None
    nilpotency_class: int | None = None

    @property
    def valid(self) -> bool:
        return self.antisymmetric and self.d_squared_zero

    def summary(self) -> str:
        if self.valid:
            extra = "" if self.nilpotency_class is None else f", nilpotency class {self.nilpotency_class}"
            return "valid" + extra
        if not self.antisymmetric:
            return f"bracket not antisymmetric: {self.antisymmetry_violations}"
        return f"d^2 {self.first_failure} = {self.failure_value} != 0"


def _extend_d(space: BasedSpace, table: Sequence[Multivector], omega: Multivector) -> Multivector:
    out = Multivector(space)
    for key, c in omega.terms.items():
        for pos, j in enumerate(key):
            dj = table[j]
            if dj.is_zero():
                continue
            left = Multivector.basis(space, *key[:pos])
            right = Multivector.basis(space, *key[pos + 1:])
            term = (left ^ dj ^ right) * c
            out = out - term if pos & 1 else out + term
    return out


def _normalize_table(space: BasedSpace, d) -> tuple:
    table = [Multivector(space) for _ in range(space.dim)]
    items = d.items() if isinstance(d, Mapping) else enumerate(d)
    for key, value in items:
        j = space.index(key) if isinstance(key, str) else int(key)
        if isinstance(value, str):
            value = Multivector.parse(space, value)
        if value.space != space:
            raise StructuralError("differential lives over another space")
        if value.degrees() - {2}:
            raise ContractViolation(f"d of generator {space.labels[j]} must be a 2-form")
        table[j] = value
    return tuple(table)


def check_table(space: BasedSpace, d, nilpotency: bool = True) -> LieReport:
    """Validate a differential table without constructing the algebra."""
    table = _normalize_table(space, d)
    report = LieReport()
    for j, dj in enumerate(table):
        dd = _extend_d(space, table, dj)
        if not dd.is_zero():
            report.d_squared_zero = False
            report.first_failure = space.labels[j]
            report.failure_value = dd
            break
    if report.valid and nilpotency:
        report.nilpotency_class = _nilpotency_class(space, table)
    return report


def _bracket_coords(space, table, x, y) -> list:
    X = [gq(c) for c in x]
    Y = [gq(c) for c in y]
    out = []
    for dk in table:
        v = interior(Y, interior(X, dk)).terms.get((), ZERO)
        out.append(-v)
    return out


def _nilpotency_class(space: BasedSpace, table) -> int | None:
    n = space.dim
    if n == 0:
        return 1
    basis = linalg.identity(n)
    current = linalg.span_basis(basis)
    c = 1
    while True:
        nxt = []
        for x in basis:
            for y in current:
                v = _bracket_coords(space, table, x, y)
                if any(v):
                    nxt.append(v)
        nxt = linalg.span_basis(nxt)
        if not nxt:
            return c
        if len(nxt) == len(current):
            return None
        current = nxt
        c += 1


class LieStructure:
    """Finite-dimensional real Lie algebra presented by ``d e^k``.

    Raises :class:`InvalidLieAlgebra` when ``d`` does not square to zero.
    """

    def __init__(self, space: BasedSpace | int, d=None, nilpotent: bool | None = None):
        if isinstance(space, int):
            space = BasedSpace(space)
        self.space = space
        self.d_table = _normalize_table(space, d or {})
        report = check_table(space, self.d_table, nilpotency=nilpotent is not None)
        if not report.valid:
            raise InvalidLieAlgebra(report)
        if nilpotent and report.nilpotency_class is None:
            raise InvalidLieAlgebra(report)
        self._report = report

    @classmethod
    def abelian(cls, n: int, labels=None) -> "LieStructure":
        return cls(BasedSpace(labels or n), {})

    @classmethod
    def from_structure_constants(cls, space: BasedSpace | int, constants: Mapping) -> "LieStructure":
        """``constants[(i, j)] = {k: c}`` encodes ``[e_i, e_j] = sum c e_k``.

        Only pairs with ``i < j`` are needed; both orders are checked for
        antisymmetry when supplied.
        """
        if isinstance(space, int):
            space = BasedSpace(space)
        table, violations = structure_constants_to_table(space, constants)
        if violations:
            report = LieReport(antisymmetric=False, antisymmetry_violations=violations)
            raise InvalidLieAlgebra(report)
        return cls(space, table)

    @property
    def dim(self) -> int:
        return self.space.dim

    def __repr__(self):
        shown = {self.space.labels[j]: str(dj) for j, dj in enumerate(self.d_table) if dj}
        return f"LieStructure(dim={self.dim}, d={shown})"

    def bracket(self, x: Sequence, y: Sequence) -> list:
        """Lie bracket of two vectors given by coordinates."""
        return _bracket_coords(self.space, self.d_table, x, y)

    def structure_constants(self) -> dict:
        n = self.dim
        out = {}
        for i in range(n):
            for j in range(i + 1, n):
                ei = [1 if t == i else 0 for t in range(n)]
                ej = [1 if t == j else 0 for t in range(n)]
                v = self.bracket(ei, ej)
                nz = {k: c for k, c in enumerate(v) if c}
                if nz:
                    out[(i, j)] = nz
        return out

    def is_abelian(self) -> bool:
        return all(dj.is_zero() for dj in self.d_table)


def structure_constants_to_table(space: BasedSpace, constants: Mapping):
    n = space.dim
    full = {}
    violations = []
    for (i, j), row in constants.items():
        row = {int(k): gq(v) for k, v in row.items()}
        if i == j and any(row.values()):
            violations.append((i, j))
            continue
        full[(i, j)] = row
    for (i, j), row in full.items():
        if (j, i) in full:
            other = full[(j, i)]
            keys = set(row) | set(other)
            if any(row.get(k, ZERO) + other.get(k, ZERO) for k in keys):
                violations.append((i, j))
    table = [Multivector(space) for _ in range(n)]
    for (i, j), row in full.items():
        if i > j and (j, i) in full:
            continue
        a, b, s = (i, j, 1) if i < j else (j, i, -1)
        for k, c in row.items():
            table[k] = table[k] - Multivector.basis(space, a, b, coeff=c * s)
    return table, violations


def validate(L: LieStructure | tuple, nilpotency: bool = True) -> LieReport:
    """Report on antisymmetry, ``d^2 = 0`` and the nilpotency class.

    Accepts a constructed algebra or a raw ``(space, table)`` pair so that
    invalid tables can be diagnosed rather than rejected.
    """
    if isinstance(L, LieStructure):
        return check_table(L.space, L.d_table, nilpotency)
    space, table = L
    return check_table(space, table, nilpotency)


def ce_d(L: LieStructure, omega: Multivector) -> Multivector:
    """Chevalley-Eilenberg differential, extended as an antiderivation."""
    if omega.space != L.space:
        raise StructuralError("form lives over another space")
    return _extend_d(L.space, L.d_table, omega)


def lie_derivative(L: LieStructure, X: Sequence, omega: Multivector) -> Multivector:
    """Cartan formula ``L_X = i_X d + d i_X`` on invariant forms."""
    return interior(X, ce_d(L, omega)) + ce_d(L, interior(X, omega))


def courant_bracket(L: LieStructure, u: GeneralizedVector, v: GeneralizedVector) -> GeneralizedVector:
    """Courant bracket of invariant sections of ``(g + g*) (x) C``."""
    if u.space != L.space or v.space != L.space:
        raise StructuralError("sections live over another space")
    X, xi = u.vector, u.form_part()
    Y, eta = v.vector, v.form_part()
    vec = L.bracket(X, Y)
    half = GaussianRational(1, 0) / 2
    form = (
        lie_derivative(L, X, eta)
        - lie_derivative(L, Y, xi)
        - ce_d(L, interior(X, eta) - interior(Y, xi)) * half
    )
    if form.degrees() - {1}:
        raise ContractViolation("Courant bracket produced a non-1-form part")
    return GeneralizedVector(L.space, vec, form.coords(1))


__all__ = [
    "InvalidLieAlgebra",
    "LieReport",
    "LieStructure",
    "ce_d",
    "check_table",
    "courant_bracket",
    "lie_derivative",
    "pairing",
    "structure_constants_to_table",
    "validate",
]
