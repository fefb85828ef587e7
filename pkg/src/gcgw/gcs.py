"""Linear generalized complex structures and their pure spinors.

A structure on a based space ``V`` (dim ``m``) is a ``2m x 2m`` matrix acting
on coordinate columns ``(X, xi)`` of ``V + V*``. Block maps follow the
convention ``J = (-J_V, beta; B, J_V^*)`` where ``B`` is the map ``X -> B(X, .)``.
Integrability is decided in the invariant model of a :class:`LieStructure`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from . import linalg
from .exterior import (
    ONE,
    ZERO,
    BasedSpace,
    ContractViolation,
    GaussianRational,
    GeneralizedVector,
    I,
    Multivector,
    StructuralError,
    clifford_act,
    form_exp,
    gq,
    interior,
    mukai_pairing,
    pairing,
    wedge,
    wedge_all,
)
from .lie import LieStructure, ce_d, courant_bracket


def two_form_map(omega: Multivector) -> list:
    """Matrix of ``X -> i_X omega`` in the dual basis."""
    n = omega.space.dim
    if omega.degrees() - {2}:
        raise ContractViolation("expected a 2-form")
    M = linalg.zeros(n, n)
    for (a, b), c in omega.terms.items():
        # i_{e_a}(e^a ^ e^b) = e^b, i_{e_b}(e^a ^ e^b) = -e^a
        M[b][a] = M[b][a] + c
        M[a][b] = M[a][b] - c
    return M


def map_to_two_form(space: BasedSpace, M) -> Multivector:
    n = space.dim
    return Multivector(space, {(a, b): M[b][a] for a in range(n) for b in range(a + 1, n) if M[b][a]})


def _antisym_components(M) -> list:
    """Map matrix of an antisymmetric component matrix ``A_ij``."""
    A = linalg.matrix(M)
    return linalg.transpose(A)


class GCStructure:
    """A linear generalized complex structure given by its full matrix."""

    def __init__(self, space: BasedSpace, matrix):
        m = space.dim
        M = linalg.matrix(matrix)
        if linalg.shape(M) != (2 * m, 2 * m) and m:
            raise StructuralError(f"expected a {2 * m}x{2 * m} matrix, got {linalg.shape(M)}")
        if any(not x.is_real for row in M for x in row):
            raise ContractViolation("a generalized complex structure is a real endomorphism")
        self.space = space
        self.matrix = M

    @classmethod
    def from_blocks(cls, space: BasedSpace, J=None, B=None, beta=None) -> "GCStructure":
        """Assemble ``(-J, beta; B, J^*)``.

        ``J`` is the endomorphism matrix; ``B`` and ``beta`` are antisymmetric
        component matrices (``B[i][j] = B(e_i, e_j)``) or a 2-form.
        """
        n = space.dim
        Jm = linalg.matrix(J) if J is not None else linalg.zeros(n, n)
        if isinstance(B, Multivector):
            Bm = two_form_map(B)
        else:
            Bm = _antisym_components(B) if B is not None else linalg.zeros(n, n)
        if isinstance(beta, Multivector):
            betam = two_form_map(beta)
        else:
            betam = _antisym_components(beta) if beta is not None else linalg.zeros(n, n)
        top = linalg.scale(Jm, -1)
        bottom = linalg.transpose(Jm) if n else []
        return cls(space, linalg.block([[top, betam], [Bm, bottom]]) if n else [])

    @classmethod
    def complex(cls, space: BasedSpace, J) -> "GCStructure":
        return cls.from_blocks(space, J=J)

    @classmethod
    def symplectic(cls, space: BasedSpace, omega: Multivector | str) -> "GCStructure":
        if isinstance(omega, str):
            omega = Multivector.parse(space, omega)
        w = two_form_map(omega)
        try:
            winv = linalg.inverse(w)
        except ZeroDivisionError:
            raise ContractViolation("symplectic form is degenerate") from None
        n = space.dim
        Z = linalg.zeros(n, n)
        return cls(space, linalg.block([[Z, linalg.scale(winv, -1)], [w, Z]]))

    @property
    def dim(self) -> int:
        return self.space.dim

    def blocks(self):
        """``(J, beta, B)`` as maps: ``J: V->V``, ``beta: V*->V``, ``B: V->V*``."""
        n = self.dim
        M = self.matrix
        J = [[-M[i][j] for j in range(n)] for i in range(n)]
        beta = [[M[i][n + j] for j in range(n)] for i in range(n)]
        B = [[M[n + i][j] for j in range(n)] for i in range(n)]
        return J, beta, B

    def apply(self, v: GeneralizedVector) -> GeneralizedVector:
        return GeneralizedVector.from_coords(self.space, linalg.matvec(self.matrix, v.coords))

    def __eq__(self, other):
        if not isinstance(other, GCStructure):
            return NotImplemented
        return self.space == other.space and linalg.equal(self.matrix, other.matrix)

    def __repr__(self):
        return f"GCStructure(dim={self.dim})"


def pairing_matrix(n: int) -> list:
    half = GaussianRational(Fraction(1, 2))
    G = linalg.zeros(2 * n, 2 * n)
    for i in range(n):
        G[i][n + i] = half
        G[n + i][i] = half
    return G


@dataclass
class AxiomReport:
    square_minus_one: bool
    orthogonal: bool
    integrable: bool | None = None
    square_witness: GeneralizedVector | None = None
    orthogonal_witness: tuple | None = None
    nijenhuis_witness: tuple | None = None

    @property
    def passed(self) -> bool:
        return self.square_minus_one and self.orthogonal and self.integrable is not False

    def as_dict(self) -> dict:
        return {
            "a_square_minus_one": self.square_minus_one,
            "b_orthogonal": self.orthogonal,
            "c_integrable": self.integrable,
        }


def _real_basis(space: BasedSpace) -> list:
    n = space.dim
    return [GeneralizedVector.e(space, j) for j in range(n)] + [
        GeneralizedVector.dual(space, j) for j in range(n)
    ]


def nijenhuis(J: GCStructure, L: LieStructure, C: GeneralizedVector, D: GeneralizedVector) -> GeneralizedVector:
    br = lambda a, b: courant_bracket(L, a, b)
    JC, JD = J.apply(C), J.apply(D)
    return br(JC, JD) - J.apply(br(JC, D)) - J.apply(br(C, JD)) - br(C, D)


def check_axioms(J: GCStructure, L: LieStructure | None = None) -> AxiomReport:
    """Check ``J^2 = -1``, orthogonality and (given ``L``) integrability."""
    n = J.dim
    if L is not None and L.space.dim != n:
        raise StructuralError("Lie algebra and structure have different dimensions")
    M = J.matrix
    sq = linalg.matmul(M, M) if n else []
    target = linalg.scale(linalg.identity(2 * n), -1)
    sq_ok = linalg.equal(sq, target) if n else True
    sq_witness = None
    if not sq_ok:
        for j in range(2 * n):
            if any(sq[i][j] != target[i][j] for i in range(2 * n)):
                sq_witness = _real_basis(J.space)[j]
                break
    G = pairing_matrix(n)
    orth_ok = True
    orth_witness = None
    if n:
        lhs = linalg.matmul(linalg.matmul(linalg.transpose(M), G), M)
        if not linalg.equal(lhs, G):
            orth_ok = False
            for i in range(2 * n):
                for j in range(2 * n):
                    if lhs[i][j] != G[i][j]:
                        rb = _real_basis(J.space)
                        orth_witness = (rb[i], rb[j])
                        break
                if orth_witness:
                    break
    report = AxiomReport(sq_ok, orth_ok, None, sq_witness, orth_witness)
    if L is not None:
        report.integrable = True
        basis = _real_basis(J.space)
        for a in range(len(basis)):
            for b in range(a + 1, len(basis)):
                N = nijenhuis(J, L, basis[a], basis[b])
                if not N.is_zero():
                    report.integrable = False
                    report.nijenhuis_witness = (basis[a], basis[b], N)
                    return report
    return report


def is_integrable(J: GCStructure, L: LieStructure) -> bool:
    return bool(check_axioms(J, L).integrable)


@dataclass
class Eigenbundle:
    L: list
    E: list
    delta: list
    type: int
    isotropic: bool
    real_index_zero: bool

    @property
    def delta_real_dim(self) -> int:
        return len(self.delta)


def _as_gv(space, coords) -> GeneralizedVector:
    return GeneralizedVector.from_coords(space, coords)


def _real_span(vectors: Sequence[Sequence]) -> list:
    """Real basis of a conjugation-invariant complex span."""
    parts = []
    for v in vectors:
        parts.append([GaussianRational(x.re) for x in v])
        parts.append([GaussianRational(x.im) for x in v])
    return linalg.span_basis([p for p in parts if any(p)])


def eigenbundle_and_type(J: GCStructure) -> Eigenbundle:
    """``L = ker(J - i)``, ``E = pr_V(L)``, ``Delta`` with ``E ∩ Ē = Delta (x) C``."""
    n = J.dim
    if n == 0:
        return Eigenbundle([], [], [], 0, True, True)
    A = linalg.sub(J.matrix, linalg.scale(linalg.identity(2 * n), I))
    Lc = linalg.span_basis(linalg.nullspace(A))
    if len(Lc) != n:
        raise ContractViolation(f"+i eigenspace has dimension {len(Lc)}, expected {n}")
    Lbar = [[x.conjugate() for x in v] for v in Lc]
    real_ok = linalg.span_dim(Lc + Lbar) == 2 * n
    G = pairing_matrix(n)
    iso = all(
        not linalg.matvec([u], linalg.matvec(G, v))[0] for u in Lc for v in Lc
    )
    E = linalg.span_basis([v[:n] for v in Lc])
    Ebar = [[x.conjugate() for x in v] for v in E]
    delta_c = linalg.intersection(E, Ebar, n)
    delta = _real_span(delta_c)
    k = n - len(E)
    return Eigenbundle(
        [_as_gv(J.space, v) for v in Lc], E, delta, k, iso, real_ok
    )


def structure_type(J: GCStructure) -> int:
    return eigenbundle_and_type(J).type


def b_field_matrix(space: BasedSpace, B: Multivector) -> list:
    n = space.dim
    Bm = two_form_map(B) if not B.is_zero() else linalg.zeros(n, n)
    return linalg.block([[linalg.identity(n), linalg.zeros(n, n)], [Bm, linalg.identity(n)]])


def b_transform(J: GCStructure, B: Multivector | str, L: LieStructure | None = None) -> GCStructure:
    """``e^{-B} J e^{B}`` for a real 2-form ``B`` (closed when ``L`` is given)."""
    if isinstance(B, str):
        B = Multivector.parse(J.space, B)
    if B.space != J.space:
        raise StructuralError("B lives over another space")
    if not B.is_real() or (B.degrees() - {2}):
        raise ContractViolation("B must be a real 2-form")
    if L is not None:
        dB = ce_d(L, B)
        if not dB.is_zero():
            raise ContractViolation(f"B is not closed: dB = {dB}")
    eB = b_field_matrix(J.space, B)
    emB = b_field_matrix(J.space, -B)
    return GCStructure(J.space, linalg.matmul(linalg.matmul(emB, J.matrix), eB))


# --- pure spinors -------------------------------------------------------------


def _all_keys(n: int) -> list:
    return [k for r in range(n + 1) for k in combinations(range(n), r)]


def _full_coords(rho: Multivector, keys) -> list:
    return [rho.terms.get(k, ZERO) for k in keys]


class PureSpinorLine:
    """A mixed form ``rho``, optionally with the factorisation
    ``rho = exp(B + i omega) ^ theta_1 ^ ... ^ theta_k``."""

    def __init__(self, rho: Multivector, B=None, omega=None, theta=None):
        self.rho = rho
        self.space = rho.space
        self.B = B
        self.omega = omega
        self.theta = list(theta) if theta is not None else None

    @classmethod
    def from_factors(cls, space: BasedSpace, B=None, omega=None, theta=()) -> "PureSpinorLine":
        parse = lambda x: Multivector.parse(space, x) if isinstance(x, str) else x
        B = parse(B) if B is not None else Multivector(space)
        omega = parse(omega) if omega is not None else Multivector(space)
        theta = [parse(t) for t in theta]
        for name, f in (("B", B), ("omega", omega)):
            if not f.is_real() or (f.degrees() - {2}):
                raise ContractViolation(f"{name} must be a real 2-form")
        for t in theta:
            if t.degrees() - {1} or t.is_zero():
                raise ContractViolation("theta factors must be nonzero 1-forms")
        Omega = wedge_all(space, theta)
        rho = wedge(form_exp(B + omega * I), Omega)
        return cls(rho, B, omega, theta)

    @property
    def factored(self) -> bool:
        return self.theta is not None

    @property
    def Omega(self) -> Multivector:
        if self.theta is not None:
            return wedge_all(self.space, self.theta)
        k = min(self.rho.degrees()) if self.rho.terms else 0
        return self.rho.part(k)

    def __repr__(self):
        return f"PureSpinorLine({self.rho})"


def clifford_matrix(v: GeneralizedVector, n: int, keys=None) -> list:
    keys = keys or _all_keys(n)
    cols = []
    for k in keys:
        img = clifford_act(v, Multivector.basis(v.space, *k))
        cols.append(_full_coords(img, keys))
    return linalg.transpose(cols)


def annihilator(rho: Multivector) -> list:
    """Basis of ``{v : v . rho = 0}`` as generalized vectors."""
    space = rho.space
    n = space.dim
    keys = _all_keys(n)
    cols = []
    for v in _real_basis(space):
        cols.append(_full_coords(clifford_act(v, rho), keys))
    A = linalg.transpose(cols)
    return [_as_gv(space, c) for c in linalg.span_basis(linalg.nullspace(A, 2 * n))]


@dataclass
class PurityReport:
    annihilator_dim: int
    expected_dim: int
    isotropic: bool
    real_index_zero: bool
    mukai: GaussianRational

    @property
    def pure(self) -> bool:
        return self.annihilator_dim == self.expected_dim and self.isotropic

    @property
    def nondegenerate(self) -> bool:
        return self.pure and self.real_index_zero


def purity(rho: Multivector | PureSpinorLine) -> PurityReport:
    if isinstance(rho, PureSpinorLine):
        rho = rho.rho
    n = rho.space.dim
    ann = annihilator(rho)
    coords = [list(v.coords) for v in ann]
    G = pairing_matrix(n)
    iso = all(not linalg.matvec([u], linalg.matvec(G, w))[0] for u in coords for w in coords) if n else True
    conj = [[x.conjugate() for x in v] for v in coords]
    real_ok = linalg.span_dim(coords + conj) == 2 * len(coords)
    return PurityReport(len(ann), n, iso, real_ok, mukai_pairing(rho, rho.conjugate()))


def spinor_to_structure(rho: Multivector | PureSpinorLine) -> GCStructure:
    """The structure whose +i eigenspace annihilates ``rho``."""
    if isinstance(rho, PureSpinorLine):
        rho = rho.rho
    space = rho.space
    n = space.dim
    rep = purity(rho)
    if not rep.pure:
        raise ContractViolation(
            f"spinor is not pure: annihilator has dimension {rep.annihilator_dim}, expected {n}"
        )
    if not rep.real_index_zero:
        raise ContractViolation("annihilator meets its conjugate: spinor is degenerate")
    if n == 0:
        return GCStructure(space, [])
    Lc = [list(v.coords) for v in annihilator(rho)]
    Lbar = [[x.conjugate() for x in v] for v in Lc]
    P = linalg.transpose(Lc + Lbar)
    D = linalg.zeros(2 * n, 2 * n)
    for j in range(n):
        D[j][j] = I
        D[n + j][n + j] = -I
    M = linalg.matmul(linalg.matmul(P, D), linalg.inverse(P))
    return GCStructure(space, M)


def structure_to_spinor(J: GCStructure) -> PureSpinorLine:
    """Generator of the line annihilated by ``L(J)``, normalised so that its
    first nonzero coefficient (lowest degree, lexicographic) is 1."""
    space = J.space
    n = space.dim
    eig = eigenbundle_and_type(J)
    keys = _all_keys(n)
    rows = []
    for v in eig.L:
        rows.extend(clifford_matrix(v, n, keys))
    kernel = linalg.nullspace(rows, len(keys)) if rows else [[ONE]]
    if len(kernel) != 1:
        raise ContractViolation(f"expected a spinor line, found dimension {len(kernel)}")
    vec = kernel[0]
    order = sorted(range(len(keys)), key=lambda t: (len(keys[t]), keys[t]))
    lead = next(vec[t] for t in order if vec[t])
    rho = Multivector(space, {keys[t]: vec[t] / lead for t in range(len(keys)) if vec[t]})
    return PureSpinorLine(rho)


def same_line(a: Multivector, b: Multivector) -> bool:
    keys = sorted(set(a.terms) | set(b.terms))
    va = [a.terms.get(k, ZERO) for k in keys]
    vb = [b.terms.get(k, ZERO) for k in keys]
    return linalg.span_dim([va, vb]) == 1 and any(va) and any(vb)


def one_form_annihilator(Omega: Multivector) -> list:
    """Basis of ``{theta : theta ^ Omega = 0}`` among 1-forms."""
    space = Omega.space
    n = space.dim
    cols = []
    for j in range(n):
        w = wedge(Multivector.basis(space, j), Omega)
        degs = sorted(w.degrees()) or [0]
        cols.append(w)
    keys = sorted({k for c in cols for k in c.terms})
    A = linalg.transpose([[c.terms.get(k, ZERO) for k in keys] for c in cols]) if keys else []
    basis = linalg.span_basis(linalg.nullspace(A, n)) if keys else linalg.identity(n)
    return [Multivector.one_form(space, v) for v in basis]


def factor_decomposable(Omega: Multivector):
    """Return ``(c, [theta_1..theta_k])`` with ``Omega = c theta_1^..^theta_k``
    or ``None`` when ``Omega`` is not decomposable."""
    if Omega.is_zero() or not Omega.is_homogeneous():
        return None
    k = Omega.degree
    space = Omega.space
    if k == 0:
        return Omega.terms[()], []
    ann = one_form_annihilator(Omega)
    if len(ann) != k:
        return None
    prod = wedge_all(space, ann)
    key = next(iter(Omega.terms))
    c = Omega.terms[key] / prod.terms[key]
    if prod * c != Omega:
        return None
    return c, ann


@dataclass
class CalabiYauReport:
    d_rho: Multivector
    closed: bool
    pure: bool
    nondegenerate: bool
    nondegeneracy_value: Multivector
    mukai: GaussianRational
    type: int
    decomposable: bool | None = None
    theta: list | None = None
    d_theta: list = field(default_factory=list)
    strong_requested: bool = False

    @property
    def gcy(self) -> bool:
        return self.closed and self.pure and self.nondegenerate

    @property
    def strong(self) -> bool:
        return bool(self.gcy and self.decomposable and all(d.is_zero() for d in self.d_theta))

    @property
    def passed(self) -> bool:
        return self.strong if self.strong_requested else self.gcy

    def failing_terms(self) -> str:
        return "" if self.closed else f"d rho = {self.d_rho}"


def check_calabi_yau(L: LieStructure, rho: PureSpinorLine | Multivector, strong: bool = False) -> CalabiYauReport:
    """Generalized (strong) Calabi-Yau check of an invariant spinor."""
    if isinstance(rho, Multivector):
        rho = PureSpinorLine(rho)
    space = rho.space
    if L.space != space:
        raise StructuralError("spinor and Lie algebra live over different spaces")
    n = space.dim
    d_rho = ce_d(L, rho.rho)
    pur = purity(rho)
    Omega = rho.Omega
    k = Omega.degree if Omega.terms else 0
    if rho.factored:
        half = n // 2
        omega_power = Multivector.scalar(space)
        for _ in range(half - k):
            omega_power = wedge(omega_power, rho.omega)
        nd_value = wedge(wedge(omega_power, Omega), Omega.conjugate())
    else:
        nd_value = Multivector.basis(space, *range(n), coeff=pur.mukai)
    nondeg = pur.real_index_zero and (not nd_value.is_zero() if rho.factored else bool(pur.mukai))
    report = CalabiYauReport(
        d_rho=d_rho,
        closed=d_rho.is_zero(),
        pure=pur.pure,
        nondegenerate=nondeg,
        nondegeneracy_value=nd_value,
        mukai=pur.mukai,
        type=k,
        strong_requested=strong,
    )
    if strong or rho.factored:
        if rho.factored:
            theta = rho.theta
            report.decomposable = not Omega.is_zero()
        else:
            fac = factor_decomposable(Omega)
            theta = fac[1] if fac else None
            report.decomposable = fac is not None
        report.theta = theta
        if theta is not None:
            report.d_theta = [ce_d(L, t) for t in theta]
    return report


@dataclass
class LeafDistribution:
    basis: list
    codim: int
    subalgebra: bool
    expected_codim: int

    @property
    def dim(self) -> int:
        return len(self.basis)


def leaf_distribution(L: LieStructure, rho: PureSpinorLine) -> LeafDistribution:
    """Real kernel ``{X : i_X(Omega ^ conj Omega) = 0}`` and bracket closure."""
    space = rho.space
    n = space.dim
    Omega = rho.Omega
    k = Omega.degree if Omega.terms else 0
    vol = wedge(Omega, Omega.conjugate())
    keys = sorted({key for j in range(n) for key in interior(_unit(n, j), vol).terms})
    if keys:
        cols = []
        for j in range(n):
            img = interior(_unit(n, j), vol)
            col = [img.terms.get(key, ZERO) for key in keys]
            cols.append([GaussianRational(x.re) for x in col] + [GaussianRational(x.im) for x in col])
        basis = linalg.span_basis(linalg.nullspace(linalg.transpose(cols), n))
    else:
        basis = linalg.identity(n)
    closed = True
    for a in basis:
        for b in basis:
            br = L.bracket(a, b)
            if any(br) and not linalg.contains(basis, [br]):
                closed = False
    return LeafDistribution(basis, n - len(basis), closed, 2 * k)


def _unit(n, j):
    return [ONE if t == j else ZERO for t in range(n)]


# --- GC maps --------------------------------------------------------------------


@dataclass
class GCMapCandidate:
    source: GCStructure
    target: GCStructure
    psi: list

    def __post_init__(self):
        self.psi = linalg.matrix(self.psi)
        if linalg.shape(self.psi) != (self.target.dim, self.source.dim):
            raise StructuralError(
                f"map matrix must be {self.target.dim}x{self.source.dim}, got {linalg.shape(self.psi)}"
            )


@dataclass
class GCMapReport:
    is_gc_map: bool
    failing_condition: str | None
    lemma_path: bool | None
    definition_path: bool
    image_law: bool | None


def _is_complex_type(J: GCStructure) -> bool:
    Jv, beta, B = J.blocks()
    return linalg.is_zero(beta) and linalg.is_zero(B)


def linear_poisson(J: GCStructure) -> list:
    """Basis of ``L(Delta (x) C, Omega_Delta)`` with ``Omega_Delta = Im sigma``."""
    n = J.dim
    eig = eigenbundle_and_type(J)
    Lc = [list(v.coords) for v in eig.L]
    Lvec = linalg.transpose([v[:n] for v in Lc])
    Lform = [v[n:] for v in Lc]
    delta = eig.delta
    xis = []
    for X in delta:
        c = linalg.solve(Lvec, X)
        xi = [ZERO] * n
        for coef, f in zip(c, Lform):
            if coef:
                xi = [a + coef * b for a, b in zip(xi, f)]
        xis.append(xi)
    d = len(delta)
    Om = [[GaussianRational(sum((xa * xb for xa, xb in zip(xis[a], delta[b])), ZERO).im) for b in range(d)] for a in range(d)]
    out = []
    DT = delta  # rows: eta . X_b = Om[a][b]
    for a in range(d):
        eta = linalg.solve(DT, Om[a]) if d else []
        out.append(list(delta[a]) + list(eta))
    ann = linalg.nullspace(DT, n) if d else linalg.identity(n)
    for f in ann:
        out.append([ZERO] * n + list(f))
    return out


def pushforward(psi: list, P: list, n_src: int, n_tgt: int) -> list:
    """``{psi(Y) + eta : Y + psi^*(eta) in P}``."""
    PX = linalg.transpose([p[:n_src] for p in P])
    Pxi = linalg.transpose([p[n_src:] for p in P])
    psiT = linalg.transpose(psi) if psi else linalg.zeros(n_src, n_tgt)
    # unknowns (c, eta): Pxi c - psi^T eta = 0
    A = [list(Pxi[r]) + [-x for x in psiT[r]] for r in range(n_src)]
    out = []
    for sol in linalg.nullspace(A, len(P) + n_tgt):
        c, eta = sol[: len(P)], sol[len(P):]
        Y = linalg.matvec(PX, c)
        out.append(linalg.matvec(psi, Y) + list(eta))
    return linalg.span_basis(out)


def check_gc_map(c: GCMapCandidate) -> GCMapReport:
    src, tgt, psi = c.source, c.target, c.psi
    n, m = src.dim, tgt.dim
    lemma = None
    if _is_complex_type(tgt):
        Jv, beta_v, _ = src.blocks()
        Jw, _, _ = tgt.blocks()
        lemma = linalg.equal(linalg.matmul(psi, Jv), linalg.matmul(Jw, psi)) and linalg.is_zero(
            linalg.matmul(psi, beta_v)
        )
    ev, ew = eigenbundle_and_type(src), eigenbundle_and_type(tgt)
    image_E = [linalg.matvec(psi, v) for v in ev.E]
    cond1 = linalg.contains(ew.E, image_E) if image_E else True
    Pv, Pw = linear_poisson(src), linear_poisson(tgt)
    pushed = pushforward(psi, Pv, n, m)
    cond2 = linalg.same_span(pushed, Pw)
    definition = cond1 and cond2
    failing = None
    if not cond1:
        failing = "psi(E_V) not contained in E_W"
    elif not cond2:
        failing = "pushforward of the linear Poisson structure differs"
    image_law = None
    if definition:
        dv = [linalg.matvec(psi, v) for v in ev.delta]
        image_law = linalg.same_span(linalg.span_basis(dv), ew.delta)
    return GCMapReport(definition, failing, lemma, definition, image_law)


def product(a: GCStructure, b: GCStructure, labels=None) -> GCStructure:
    """Direct sum structure on ``V_a + V_b`` (coordinates ``(X_a, X_b, xi_a, xi_b)``)."""
    n, m = a.dim, b.dim
    space = BasedSpace(labels or (n + m))
    Ja, ba, Ba = a.blocks()
    Jb, bb, Bb = b.blocks()

    def diag(P, Q):
        return linalg.block([[P, linalg.zeros(n, m)], [linalg.zeros(m, n), Q]])

    J = diag(Ja, Jb)
    beta = diag(ba, bb)
    B = diag(Ba, Bb)
    return GCStructure(space, linalg.block([[linalg.scale(J, -1), beta], [B, linalg.transpose(J)]]))


__all__ = [
    "AxiomReport",
    "CalabiYauReport",
    "Eigenbundle",
    "GCMapCandidate",
    "GCMapReport",
    "GCStructure",
    "LeafDistribution",
    "PureSpinorLine",
    "annihilator",
    "b_transform",
    "check_axioms",
    "check_calabi_yau",
    "check_gc_map",
    "eigenbundle_and_type",
    "factor_decomposable",
    "leaf_distribution",
    "linear_poisson",
    "nijenhuis",
    "pairing",
    "product",
    "purity",
    "same_line",
    "spinor_to_structure",
    "structure_to_spinor",
    "structure_type",
    "two_form_map",
]
