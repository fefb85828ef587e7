"""Transverse bigraded complexes of a regular GCS in the invariant model.

Forms on the leaf space are modelled by constant-coefficient forms in the
subalgebra generated by ``G* = L ∩ (V* (x) C)`` and its conjugate. With
``theta_a = x_a + i y_a`` a basis of ``G*``, the real frame
``x_1, y_1, ..., x_k, y_k`` is declared orthonormal and oriented, which is the
same as declaring the ``theta`` frame unitary. Every operator is an exact
matrix on the monomial basis ``theta_I ^ conj(theta)_J``.

Conventions: ``d_L`` raises ``q`` (it is the ``dbar`` of the leaf space),
``d_Lbar`` raises ``p``, ``D = d_L + d_Lbar``, ``d_L^* = -* d_Lbar *`` and
``D^* = -* D *``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from math import comb

from . import linalg
from .exterior import (
    I,
    ONE,
    ZERO,
    BasedSpace,
    ContractViolation,
    GaussianRational,
    Multivector,
    StructuralError,
    linear_substitute,
    permutation_sign,
    wedge,
    wedge_all,
)
from .gcs import GCStructure, check_axioms, eigenbundle_and_type
from .lie import LieStructure, ce_d


def frame_space(k: int) -> BasedSpace:
    labels = []
    for a in range(1, k + 1):
        labels += [f"x{a}", f"y{a}"]
    return BasedSpace(tuple(labels))


def _monomial_keys(k: int) -> list:
    n = 2 * k
    return [key for r in range(n + 1) for key in combinations(range(n), r)]


def _bidegree(key, k) -> tuple:
    p = sum(1 for a in key if a < k)
    return p, len(key) - p


class TransverseSplitting:
    """Exact data of ``G*`` for an integrable structure over ``L``.

    ``theta`` are ambient complex 1-forms; ``model`` is the Lie structure
    induced on the real transverse frame.
    """

    def __init__(self, structure, lie, theta, model, leaf_directions, change_of_basis):
        self.structure = structure
        self.lie = lie
        self.theta = list(theta)
        self.k = len(theta)
        self.space = model.space
        self.model = model
        self.leaf_directions = leaf_directions
        self._P = change_of_basis
        n = 2 * self.k
        self.keys = _monomial_keys(self.k)
        self.index = {key: j for j, key in enumerate(self.keys)}
        self.degree = [len(key) for key in self.keys]
        self.bidegree = [_bidegree(key, self.k) for key in self.keys]
        self.frame = [self._theta_frame(a) for a in range(self.k)]
        self.monomials = [self._monomial(key) for key in self.keys]
        self._tinv = {}
        for r in range(n + 1):
            cols = [m.coords(r) for key, m in zip(self.keys, self.monomials) if len(key) == r]
            self._tinv[r] = linalg.inverse(linalg.transpose(cols)) if cols and cols[0] else [[ONE]]

    def _theta_frame(self, a):
        c = [ZERO] * (2 * self.k)
        c[2 * a] = ONE
        c[2 * a + 1] = I
        return Multivector.one_form(self.space, c)

    def _generator(self, j):
        k = self.k
        return self.frame[j] if j < k else self.frame[j - k].conjugate()

    def _monomial(self, key):
        return wedge_all(self.space, [self._generator(j) for j in key])

    @property
    def dim(self) -> int:
        return len(self.keys)

    def coords(self, alpha: Multivector) -> list:
        """Coordinates of a frame-space form in the monomial basis."""
        if alpha.space != self.space:
            alpha = self.to_frame(alpha)
        out = [ZERO] * self.dim
        for r in alpha.degrees():
            c = linalg.matvec(self._tinv[r], alpha.coords(r))
            pos = [j for j, key in enumerate(self.keys) if len(key) == r]
            for j, x in zip(pos, c):
                out[j] = x
        return out

    def form(self, coords) -> Multivector:
        out = Multivector(self.space)
        for c, m in zip(coords, self.monomials):
            if c:
                out = out + m * c
        return out

    def to_frame(self, alpha: Multivector) -> Multivector:
        """Rewrite an ambient form in the transverse frame; leaf components are refused."""
        if alpha.space != self.lie.space:
            raise StructuralError("form lives over another space")
        ext = BasedSpace(tuple(self.space.labels) + tuple(f"c{j}" for j in range(self.lie.dim - 2 * self.k)))
        Q = linalg.inverse(self._P)
        images = [Multivector.one_form(ext, Q[i]) for i in range(self.lie.dim)]
        out = linear_substitute(alpha, images, ext)
        n = 2 * self.k
        if any(max(key) >= n for key in out.terms if key):
            raise ContractViolation("form is not transverse: it has leaf components")
        return Multivector(self.space, dict(out.terms))

    def indices(self, degree=None, bidegree=None) -> list:
        if bidegree is not None:
            return [j for j, b in enumerate(self.bidegree) if b == tuple(bidegree)]
        return [j for j, r in enumerate(self.degree) if r == degree]

    def matrix_of(self, fn) -> list:
        cols = [self.coords(fn(m)) for m in self.monomials]
        return linalg.transpose(cols)

    def __repr__(self):
        return f"TransverseSplitting(k={self.k}, theta={[str(t) for t in self.theta]})"


def _g_star(J: GCStructure) -> list:
    n = J.dim
    eig = eigenbundle_and_type(J)
    Lc = [list(v.coords) for v in eig.L]
    forms = [[ZERO] * n + [ONE if i == j else ZERO for i in range(n)] for j in range(n)]
    meet = linalg.intersection(Lc, forms, 2 * n) if n else []
    return [v[n:] for v in meet]


def transverse_split(J: GCStructure, L: LieStructure, theta=None, gram=None) -> TransverseSplitting:
    """Split off ``G* = L ∩ (V* (x) C)`` and build the transverse model.

    ``theta`` optionally fixes the frame (it must span ``G*`` exactly);
    ``gram`` may only be the identity, since the frame is declared unitary.
    """
    if L.space != J.space:
        raise StructuralError("structure and Lie algebra have different spaces")
    ax = check_axioms(J, L)
    if not (ax.square_minus_one and ax.orthogonal):
        raise ContractViolation("structure fails the linear axioms")
    if not ax.integrable:
        C, D, N = ax.nijenhuis_witness
        raise ContractViolation(f"structure is not integrable: N({C}, {D}) = {N}")
    space = J.space
    n = space.dim
    g_star = _g_star(J)
    k = len(g_star)
    if theta is None:
        theta = [Multivector.one_form(space, v) for v in g_star]
    else:
        theta = [Multivector.parse(space, t) if isinstance(t, str) else t for t in theta]
        vecs = [t.coords(1) for t in theta]
        if any(t.degrees() - {1} for t in theta) or len(theta) != k or not linalg.same_span(vecs, g_star or [[ZERO] * n]):
            raise ContractViolation("declared frame does not span L ∩ (V* (x) C)")
    if gram is not None:
        G = linalg.matrix(gram)
        if not linalg.equal(G, linalg.identity(k)):
            raise ContractViolation("only a unitary transverse frame is supported; orthonormalize the frame first")
    if k != eigenbundle_and_type(J).type:
        raise ContractViolation("rank of G* differs from the type")
    real_rows = []
    for t in theta:
        real_rows.append([GaussianRational(c.re) for c in t.coords(1)])
        real_rows.append([GaussianRational(c.im) for c in t.coords(1)])
    rows = list(real_rows)
    for j in range(n):
        e = [ONE if i == j else ZERO for i in range(n)]
        if linalg.span_dim(rows + [e]) > len(rows):
            rows.append(e)
    P = rows
    fs = frame_space(k)
    ext = BasedSpace(tuple(fs.labels) + tuple(f"c{j}" for j in range(n - 2 * k)))
    Q = linalg.inverse(P) if n else []
    images = [Multivector.one_form(ext, Q[i]) for i in range(n)]
    table = {}
    for a, row in enumerate(real_rows):
        d_gen = linear_substitute(ce_d(L, Multivector.one_form(space, row)), images, ext)
        if any(max(key) >= 2 * k for key in d_gen.terms):
            raise ContractViolation(
                f"d of transverse generator {fs.labels[a]} leaves the transverse subalgebra: {d_gen}"
            )
        table[a] = Multivector(fs, dict(d_gen.terms))
    model = LieStructure(fs, table)
    leaf = linalg.nullspace(real_rows, n) if real_rows else linalg.identity(n)
    return TransverseSplitting(J, L, theta, model, leaf, P)


def flat_splitting(k: int) -> TransverseSplitting:
    """Standard complex structure on the abelian algebra of dimension ``2k``."""
    space = frame_space(k)
    L = LieStructure(space, {})
    Jv = linalg.zeros(2 * k, 2 * k)
    for a in range(k):
        # J x_a = y_a on vectors, so dz = x + i y is (1,0)
        Jv[2 * a + 1][2 * a] = ONE
        Jv[2 * a][2 * a + 1] = -ONE
    J = GCStructure.complex(space, Jv)
    return transverse_split(J, L)


@dataclass
class TransverseOperators:
    splitting: TransverseSplitting
    d_L: list
    d_Lbar: list
    D: list

    def block(self, M, source, target) -> list:
        S = self.splitting
        rows = S.indices(bidegree=target) if isinstance(target, tuple) else S.indices(degree=target)
        cols = S.indices(bidegree=source) if isinstance(source, tuple) else S.indices(degree=source)
        return [[M[r][c] for c in cols] for r in rows]


def build_operators(S: TransverseSplitting) -> TransverseOperators:
    """``D`` is the restricted Chevalley-Eilenberg differential; ``d_L`` and
    ``d_Lbar`` are its ``(0,1)`` and ``(1,0)`` components."""
    D = S.matrix_of(lambda m: ce_d(S.model, m))
    N = S.dim
    dL = linalg.zeros(N, N)
    dLb = linalg.zeros(N, N)
    for c in range(N):
        p, q = S.bidegree[c]
        for r in range(N):
            x = D[r][c]
            if not x:
                continue
            bp, bq = S.bidegree[r]
            if (bp, bq) == (p, q + 1):
                dL[r][c] = x
            elif (bp, bq) == (p + 1, q):
                dLb[r][c] = x
            else:
                raise ContractViolation(
                    f"D sends bidegree {(p, q)} to {(bp, bq)}; the splitting is not integrable"
                )
    ops = TransverseOperators(S, dL, dLb, D)
    for name, M in (("D", D), ("d_L", dL), ("d_Lbar", dLb)):
        if not linalg.is_zero(linalg.matmul(M, M)):
            raise ContractViolation(f"{name}^2 != 0")
    if not linalg.is_zero(linalg.add(linalg.matmul(dL, dLb), linalg.matmul(dLb, dL))):
        raise ContractViolation("d_L d_Lbar + d_Lbar d_L != 0")
    return ops


@dataclass
class CohomologyTable:
    k: int
    D: list
    dL: list

    def as_dict(self) -> dict:
        return {"D": list(self.D), "dL": [list(r) for r in self.dL]}


def _rank(M) -> int:
    return linalg.rank(M) if M and M[0] else 0


def cohomology_dims(ops: TransverseOperators, flavor: str = "both") -> CohomologyTable:
    """``dim ker - rank`` of the incoming map, degree by degree."""
    S = ops.splitting
    k = S.k
    Ddims = []
    if flavor in ("both", "D"):
        for r in range(2 * k + 1):
            out_rank = _rank(ops.block(ops.D, r, r + 1)) if r < 2 * k else 0
            in_rank = _rank(ops.block(ops.D, r - 1, r)) if r > 0 else 0
            Ddims.append(comb(2 * k, r) - out_rank - in_rank)
    dL = []
    if flavor in ("both", "dL"):
        for p in range(k + 1):
            row = []
            for q in range(k + 1):
                out_rank = _rank(ops.block(ops.d_L, (p, q), (p, q + 1))) if q < k else 0
                in_rank = _rank(ops.block(ops.d_L, (p, q - 1), (p, q))) if q > 0 else 0
                row.append(comb(k, p) * comb(k, q) - out_rank - in_rank)
            dL.append(row)
    return CohomologyTable(k, Ddims, dL)


def hodge_star(S: TransverseSplitting, alpha: Multivector) -> Multivector:
    """``* e_I = sign(I, I^c) e_{I^c}`` on the real frame, complex-linearly."""
    if alpha.space != S.space:
        alpha = S.to_frame(alpha)
    n = 2 * S.k
    out = {}
    for key, c in alpha.terms.items():
        comp = tuple(j for j in range(n) if j not in key)
        out[comp] = out.get(comp, ZERO) + c * permutation_sign(key + comp)
    return Multivector(S.space, out)


def hermitian_product(S: TransverseSplitting, alpha: Multivector, beta: Multivector) -> GaussianRational:
    """Top coefficient of ``alpha ^ *conj(beta)``."""
    return wedge(alpha, hodge_star(S, beta.conjugate())).top()


@dataclass
class HodgeData:
    star: list
    star_inv: list
    gram: list
    D_star: list
    dL_star: list
    dLbar_star: list
    lap_D: list
    lap_dL: list
    lap_dLbar: list
    adjoint_ok: dict
    self_adjoint_ok: dict
    harmonic_D: list
    harmonic_dL: list


def _lin(*terms):
    """Sum of ``c * M`` for ``(c, M)`` pairs."""
    out = None
    for c, M in terms:
        M = linalg.scale(M, c)
        out = M if out is None else linalg.add(out, M)
    return out


def _mm(*Ms):
    out = Ms[0]
    for M in Ms[1:]:
        out = linalg.matmul(out, M)
    return out


def _is_adjoint(A, Astar, G) -> bool:
    return linalg.equal(linalg.matmul(linalg.transpose(A), G), linalg.matmul(G, linalg.conj(Astar)))


def _kernel_dim(M, idx) -> int:
    sub = [[M[r][c] for c in idx] for r in idx]
    return len(idx) - _rank(sub)


def adjoints_and_laplacians(S: TransverseSplitting, ops: TransverseOperators) -> HodgeData:
    N = S.dim
    star = S.matrix_of(lambda m: hodge_star(S, m))
    parity = [[(ONE if S.degree[i] % 2 == 0 else -ONE) if i == j else ZERO for j in range(N)] for i in range(N)]
    star_inv = linalg.matmul(star, parity)
    gram = [[hermitian_product(S, a, b) for b in S.monomials] for a in S.monomials]
    D_star = linalg.scale(_mm(star, ops.D, star), -1)
    dL_star = linalg.scale(_mm(star, ops.d_Lbar, star), -1)
    dLbar_star = linalg.scale(_mm(star, ops.d_L, star), -1)

    def lap(A, As):
        return linalg.add(linalg.matmul(A, As), linalg.matmul(As, A))

    lap_D = lap(ops.D, D_star)
    lap_dL = lap(ops.d_L, dL_star)
    lap_dLbar = lap(ops.d_Lbar, dLbar_star)
    adjoint_ok = {
        "D": _is_adjoint(ops.D, D_star, gram),
        "d_L": _is_adjoint(ops.d_L, dL_star, gram),
        "d_Lbar": _is_adjoint(ops.d_Lbar, dLbar_star, gram),
    }
    self_adj = {
        name: _is_adjoint(M, M, gram)
        for name, M in (("Delta_D", lap_D), ("Delta_dL", lap_dL), ("Delta_dLbar", lap_dLbar))
    }
    k = S.k
    hD = [_kernel_dim(lap_D, S.indices(degree=r)) for r in range(2 * k + 1)]
    hL = [[_kernel_dim(lap_dL, S.indices(bidegree=(p, q))) for q in range(k + 1)] for p in range(k + 1)]
    return HodgeData(star, star_inv, gram, D_star, dL_star, dLbar_star, lap_D, lap_dL, lap_dLbar, adjoint_ok, self_adj, hD, hL)


def star_star_ok(S: TransverseSplitting) -> dict:
    """``** = (-1)^{r(2k-r)}`` on each degree ``r``, as matrix identities."""
    star = S.matrix_of(lambda m: hodge_star(S, m))
    sq = linalg.matmul(star, star)
    out = {}
    n = 2 * S.k
    for r in range(n + 1):
        idx = S.indices(degree=r)
        sign = -ONE if (r * (n - r)) % 2 else ONE
        out[r] = all(sq[i][j] == (sign if i == j else ZERO) for i in idx for j in range(S.dim))
    return out


def fundamental_form(S: TransverseSplitting) -> Multivector:
    """``omega = sum x_a ^ y_a = (i/2) sum theta_a ^ conj(theta_a)``."""
    out = Multivector(S.space)
    for a in range(S.k):
        out = out + Multivector.basis(S.space, 2 * a, 2 * a + 1)
    return out


@dataclass
class KahlerReport:
    kahler: bool
    identities: dict = field(default_factory=dict)
    failures: dict = field(default_factory=dict)
    laplacian_relation: bool | None = None
    hodge_decomposition: bool | None = None
    diagnostic: str = ""

    @property
    def passed(self) -> bool:
        return self.kahler and all(self.identities.values()) and bool(self.laplacian_relation)


def _first_bad_bidegree(S, M):
    for c in range(S.dim):
        if any(M[r][c] for r in range(S.dim)):
            return S.bidegree[c]
    return None


def lefschetz_check(S: TransverseSplitting, ops: TransverseOperators, hodge: HodgeData | None = None) -> KahlerReport:
    """Exact check of the Kähler identities and of ``Delta_D = 2 Delta_{d_L}``."""
    hodge = hodge or adjoints_and_laplacians(S, ops)
    omega = fundamental_form(S)
    cohom = cohomology_dims(ops)
    rep = KahlerReport(kahler=True)
    r2 = sum(cohom.dL[p][q] for p in range(S.k + 1) for q in range(S.k + 1) if p + q == 2) if S.k else 0
    rep.hodge_decomposition = all(
        cohom.D[r] == sum(cohom.dL[p][r - p] for p in range(S.k + 1) if 0 <= r - p <= S.k)
        for r in range(2 * S.k + 1)
    )
    d_omega = ce_d(S.model, omega)
    if not d_omega.is_zero():
        rep.kahler = False
        rep.diagnostic = f"D omega = {d_omega} != 0; Kähler identities skipped"
        return rep
    Lef = S.matrix_of(lambda m: wedge(omega, m))
    Lam = _mm(hodge.star_inv, Lef, hodge.star)
    N = S.dim

    def br(A, B):
        return linalg.sub(linalg.matmul(A, B), linalg.matmul(B, A))

    weight = [[GaussianRational(S.k - S.degree[i]) if i == j else ZERO for j in range(N)] for i in range(N)]
    dL, dLb, dLs, dLbs = ops.d_L, ops.d_Lbar, hodge.dL_star, hodge.dLbar_star
    checks = {
        "[Lambda,L] = (k-(p+q)) id": linalg.sub(br(Lam, Lef), weight),
        "[d_L,L] = 0": br(dL, Lef),
        "[d_Lbar,L] = 0": br(dLb, Lef),
        "[d_L*,Lambda] = 0": br(dLs, Lam),
        "[d_Lbar*,Lambda] = 0": br(dLbs, Lam),
        "[d_L*,L] = i d_Lbar": linalg.sub(br(dLs, Lef), linalg.scale(dLb, I)),
        "[d_Lbar*,L] = -i d_L": linalg.sub(br(dLbs, Lef), linalg.scale(dL, -I)),
        "[Lambda,d_L] = -i d_Lbar*": linalg.sub(br(Lam, dL), linalg.scale(dLbs, -I)),
        "[Lambda,d_Lbar] = i d_L*": linalg.sub(br(Lam, dLb), linalg.scale(dLs, I)),
    }
    for name, diff in checks.items():
        ok = linalg.is_zero(diff)
        rep.identities[name] = ok
        if not ok:
            rep.failures[name] = _first_bad_bidegree(S, diff)
    rep.laplacian_relation = linalg.equal(hodge.lap_D, linalg.scale(hodge.lap_dL, 2)) and linalg.equal(
        hodge.lap_dL, hodge.lap_dLbar
    )
    return rep


@dataclass
class DualityReport:
    D_symmetric: bool
    dL_symmetric: bool
    D_gram_dets: dict
    dL_gram_dets: dict
    harmonic_matches_cohomology: bool

    @property
    def passed(self) -> bool:
        return (
            self.D_symmetric
            and self.dL_symmetric
            and self.harmonic_matches_cohomology
            and all(self.D_gram_dets.values())
            and all(self.dL_gram_dets.values())
        )


def _harmonic_basis(S, lap, idx):
    sub = [[lap[r][c] for c in idx] for r in idx]
    out = []
    for v in linalg.nullspace(sub, len(idx)) if idx else []:
        full = [ZERO] * S.dim
        for j, x in zip(idx, v):
            full[j] = x
        out.append(S.form(full))
    return out


def _pairing_det(A, B):
    if len(A) != len(B):
        return ZERO
    if not A:
        return ONE
    return linalg.det([[wedge(a, b).top() for b in B] for a in A])


def duality_report(S: TransverseSplitting, ops: TransverseOperators, hodge: HodgeData | None = None) -> DualityReport:
    """Dimension symmetry plus nonzero Gram determinants of ``top(a ^ b)``
    on harmonic bases."""
    hodge = hodge or adjoints_and_laplacians(S, ops)
    cohom = cohomology_dims(ops)
    k = S.k
    D_sym = all(cohom.D[r] == cohom.D[2 * k - r] for r in range(2 * k + 1))
    dL_sym = all(cohom.dL[p][q] == cohom.dL[k - p][k - q] for p in range(k + 1) for q in range(k + 1))
    Dd = {}
    for r in range(2 * k + 1):
        Hr = _harmonic_basis(S, hodge.lap_D, S.indices(degree=r))
        Hs = _harmonic_basis(S, hodge.lap_D, S.indices(degree=2 * k - r))
        Dd[r] = _pairing_det(Hr, Hs)
    Ld = {}
    for p in range(k + 1):
        for q in range(k + 1):
            Ha = _harmonic_basis(S, hodge.lap_dL, S.indices(bidegree=(p, q)))
            Hb = _harmonic_basis(S, hodge.lap_dL, S.indices(bidegree=(k - p, k - q)))
            Ld[(p, q)] = _pairing_det(Ha, Hb)
    match = hodge.harmonic_D == cohom.D and hodge.harmonic_dL == cohom.dL
    return DualityReport(D_sym, dL_sym, Dd, Ld, match)


__all__ = [
    "CohomologyTable",
    "DualityReport",
    "HodgeData",
    "KahlerReport",
    "TransverseOperators",
    "TransverseSplitting",
    "adjoints_and_laplacians",
    "build_operators",
    "cohomology_dims",
    "duality_report",
    "flat_splitting",
    "frame_space",
    "fundamental_form",
    "hermitian_product",
    "hodge_star",
    "lefschetz_check",
    "star_star_ok",
    "transverse_split",
]
