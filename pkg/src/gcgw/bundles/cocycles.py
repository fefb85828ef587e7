"""Transition cocycles of SGH bundles and the objects built from them.

Convention: a section has coefficient vectors ``f_a`` on chart ``a`` with
``f_a = phi_ab f_b``; ``phi_ab`` is written in the variables of ``a``. All
comparisons are made after pulling data back to the earlier chart of an
overlap. A connection is a family of matrices ``Theta_a`` of (1,0)-forms with
``d phi_ab phi_ab^{-1} = phi_ab Theta_b phi_ab^{-1} - Theta_a``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations, product
from typing import Mapping

import sympy

from .. import linalg
from ..exterior import ContractViolation, GaussianRational, StructuralError, permutation_sign
from .forms import (
    ChartForm,
    mat_add,
    mat_conjugate_by,
    mat_equal,
    mat_from_functions,
    mat_is_zero,
    mat_map,
    mat_pull,
    mat_str,
    mat_sub,
    mat_trace,
    mat_wedge,
    mat_zero,
)
from .functions import Chart, ChartNerve, canonical, format_expr, is_zero


def _simplify_matrix(M: sympy.Matrix, chart: Chart) -> sympy.Matrix:
    gens = list(chart.symbols.values())
    return M.applyfunc(lambda e: canonical(e, gens))


class TransitionCocycle:
    """Rank-``l`` transition data over a chart nerve."""

    def __init__(self, nerve: ChartNerve, rank: int, transitions: Mapping):
        if rank < 1:
            raise StructuralError("rank must be positive")
        self.nerve = nerve
        self.rank = rank
        self.phi = {}
        for (a, b), M in transitions.items():
            if a not in nerve.by_name or b not in nerve.by_name:
                raise StructuralError(f"transition {a},{b} names an unknown chart")
            A = nerve.chart(a)
            if isinstance(M, sympy.MatrixBase):
                Mat = sympy.Matrix(M)
            else:
                rows = [[A.parse(x, f"transition {a},{b}") if isinstance(x, str) else sympy.sympify(x) for x in row] for row in M]
                Mat = sympy.Matrix(rows)
            if Mat.shape != (rank, rank):
                raise StructuralError(f"transition {a},{b} must be {rank}x{rank}, got {Mat.shape}")
            self.phi[(a, b)] = _simplify_matrix(Mat, A)
        for a, b in nerve.overlaps():
            if (a, b) not in self.phi:
                raise StructuralError(f"no transition for overlap {a},{b}")

    def overlaps(self) -> list:
        return self.nerve.overlaps()

    def pulled(self, a, b, M):
        return M.applyfunc(lambda e: self.nerve.pull_function(e, a, b))

    @classmethod
    def line(cls, nerve: ChartNerve, transitions: Mapping) -> "TransitionCocycle":
        return cls(nerve, 1, {ab: [[f]] for ab, f in transitions.items()})


@dataclass
class CocycleReport:
    valid: bool
    failures: list = field(default_factory=list)

    def summary(self) -> str:
        if self.valid:
            return "valid"
        return "; ".join(f"{kind} on {where}: {detail}" for kind, where, detail in self.failures)


def _is_identity(M) -> bool:
    return all(is_zero(M[i, j] - (1 if i == j else 0)) for i in range(M.rows) for j in range(M.cols))


def validate_cocycle(c: TransitionCocycle) -> CocycleReport:
    """Invertibility, inverse identity and triple identity, exactly."""
    rep = CocycleReport(True)
    for bad in c.nerve.check_consistency():
        rep.valid = False
        rep.failures.append(("coordinate change", ",".join(bad[:3]), f"variable {bad[3]}"))
    for (a, b), M in c.phi.items():
        if is_zero(M.det()):
            raise ContractViolation(f"transition {a},{b} is not invertible (determinant is zero)")
    for (a, b), M in c.phi.items():
        if (b, a) in c.phi and c.nerve.order[a] < c.nerve.order[b]:
            prod_ = M * c.pulled(a, b, c.phi[(b, a)])
            if not _is_identity(prod_):
                rep.valid = False
                rep.failures.append(("inverse identity", f"{a},{b}", f"phi_ab phi_ba = {prod_.tolist()}"))
    for a, b, g in c.nerve.triples():
        lhs = c.phi[(a, b)] * c.pulled(a, b, c.phi[(b, g)])
        diff = (lhs - c.phi[(a, g)]).applyfunc(sympy.cancel)
        if any(not is_zero(x) for x in diff):
            rep.valid = False
            rep.failures.append(("triple identity", f"{a},{b},{g}", "phi_ab phi_bg != phi_ag"))
    return rep


@dataclass
class GHReport:
    gh: bool
    offending: list = field(default_factory=list)


def check_gh_cocycle(c: TransitionCocycle) -> GHReport:
    rep = GHReport(True)
    for (a, b), M in sorted(c.phi.items()):
        A = c.nerve.chart(a)
        for i in range(M.rows):
            for j in range(M.cols):
                bad = A.non_gh_vars(M[i, j])
                if bad:
                    rep.gh = False
                    rep.offending.append((f"{a},{b}", i, j, bad))
    return rep


def _dphi(chart: Chart, M: sympy.Matrix) -> list:
    return [[ChartForm.function(chart, M[i, j]).d_Lbar() for j in range(M.cols)] for i in range(M.rows)]


@dataclass
class AtiyahData:
    xi: dict
    b: dict
    sign_identity: bool
    twisted_law: bool
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.sign_identity and self.twisted_law


def atiyah_cocycles(c: TransitionCocycle) -> AtiyahData:
    """``xi_ab = d phi phi^{-1}`` and, by a separate route, ``b_ab = phi d(phi^{-1})``.

    ``b`` is the difference of the flat trivialising connections of the vector
    bundle; the theorem ``a(P) = -b(E)`` is the entrywise identity ``b = -xi``.
    """
    gh = check_gh_cocycle(c)
    if not gh.gh:
        raise ContractViolation(f"cocycle is not generalized holomorphic: {gh.offending[0]}")
    xi, bb, failures = {}, {}, []
    sign_ok = True
    for a, b in c.overlaps():
        A = c.nerve.chart(a)
        M = c.phi[(a, b)]
        Minv = _simplify_matrix(M.inv(), A)
        xi[(a, b)] = mat_wedge(_dphi(A, M), mat_from_functions(A, Minv))
        bb[(a, b)] = mat_wedge(mat_from_functions(A, M), _dphi(A, Minv))
        if not mat_is_zero(mat_add(bb[(a, b)], xi[(a, b)])):
            sign_ok = False
            failures.append(("b != -xi", f"{a},{b}"))
    twisted = True
    for a, b, g in c.nerve.triples():
        rhs = mat_add(xi[(a, b)], mat_conjugate_by(c.phi[(a, b)], mat_pull(c.nerve, xi[(b, g)], a, b)))
        if not mat_equal(xi[(a, g)], rhs):
            twisted = False
            failures.append(("twisted cocycle law", f"{a},{b},{g}"))
    return AtiyahData(xi, bb, sign_ok, twisted, failures)


ConnectionData = dict  # chart name -> l x l matrix of ChartForm


def zero_connection(c: TransitionCocycle) -> ConnectionData:
    return {ch.name: mat_zero(ch, c.rank) for ch in c.nerve.charts}


def coboundary_residuals(c: TransitionCocycle, theta: ConnectionData, xi: dict | None = None) -> dict:
    """``ad(phi_ab) Theta_b - Theta_a - xi_ab`` on each overlap (zero iff ``theta`` is a connection)."""
    xi = xi if xi is not None else atiyah_cocycles(c).xi
    out = {}
    for a, b in c.overlaps():
        lhs = mat_sub(mat_conjugate_by(c.phi[(a, b)], mat_pull(c.nerve, theta[b], a, b)), theta[a])
        out[(a, b)] = mat_sub(lhs, xi[(a, b)])
    return out


def is_connection(c: TransitionCocycle, theta: ConnectionData, xi=None) -> bool:
    return all(mat_is_zero(r) for r in coboundary_residuals(c, theta, xi).values())


def _monomials(chart: Chart, bound: int) -> list:
    ranges = []
    for v in chart.holo:
        ranges.append(range(-bound, bound + 1) if v in chart.laurent else range(0, bound + 1))
    out = []
    for exps in product(*ranges):
        if sum(abs(e) for e in exps) <= bound:
            m = sympy.Integer(1)
            for s, e in zip(chart.z, exps):
                m = m * s**e
            out.append(m)
    return out


def _to_gq(x) -> GaussianRational:
    x = sympy.nsimplify(x) if not x.is_Rational and x.is_number and not x.has(sympy.I) else x
    re, im = sympy.re(x), sympy.im(x)
    if not (re.is_Rational and im.is_Rational):
        raise ContractViolation(f"non-rational coefficient {x}")
    return GaussianRational(Fraction(int(re.p), int(re.q)), Fraction(int(im.p), int(im.q)))


def _from_gq(g: GaussianRational):
    return sympy.Rational(g.re.numerator, g.re.denominator) + sympy.I * sympy.Rational(g.im.numerator, g.im.denominator)


@dataclass
class SearchResult:
    found: bool
    theta: ConnectionData | None
    bound: int
    unknowns: int
    certificate: str
    residue_obstruction: dict = field(default_factory=dict)


def residue_obstruction(c: TransitionCocycle, xi: dict) -> dict:
    """Residue at the origin of ``tr xi_ab`` on two-chart projective-line nerves.

    For ``w = 1/z`` any GH connection gives residue zero (``Theta_a`` is
    regular at 0 and the pulled ``Theta_b`` only has powers ``z^{-2}`` and
    below), so a nonzero residue certifies that no connection exists.
    """
    out = {}
    for a, b in c.overlaps():
        A, B = c.nerve.chart(a), c.nerve.chart(b)
        if A.k != 1 or A.laurent or B.laurent:
            continue
        g = c.nerve.glue[(a, b)][B.holo[0]]
        if not is_zero(g - 1 / A.z[0]):
            continue
        tr = mat_trace(xi[(a, b)])
        coeff = tr.terms.get((0,), sympy.Integer(0))
        out[(a, b)] = sympy.residue(coeff, A.z[0], 0)
    return out


def gh_connection_search(c: TransitionCocycle, xi: dict | None = None, degree_bound: int = 4) -> SearchResult:
    """Exact linear solve for a GH connection within a monomial ansatz.

    Coefficients range over monomials with ``sum |exponent| <= degree_bound``;
    negative exponents only for variables declared Laurent on that chart.
    Failure certifies only that no solution exists inside the ansatz.
    """
    if degree_bound < 0:
        raise ContractViolation("degree bound must be nonnegative")
    xi = xi if xi is not None else atiyah_cocycles(c).xi
    l = c.rank
    unknowns = []
    theta = {}
    for ch in c.nerve.charts:
        monos = _monomials(ch, degree_bound)
        M = []
        for i in range(l):
            row = []
            for j in range(l):
                terms = {}
                for s in range(ch.k):
                    coeff = 0
                    for t, m in enumerate(monos):
                        u = sympy.Symbol(f"c_{ch.name}_{i}_{j}_{s}_{t}")
                        unknowns.append(u)
                        coeff = coeff + u * m
                    terms[(s,)] = coeff
                row.append(ChartForm(ch, terms, simplify=False))
            M.append(row)
        theta[ch.name] = M
    equations = []
    for (a, b), R in coboundary_residuals(c, theta, xi).items():
        A = c.nerve.chart(a)
        for row in R:
            for f in row:
                for expr in f.terms.values():
                    num = sympy.numer(sympy.together(expr))
                    poly = sympy.Poly(sympy.expand(num), *A.z) if A.z else None
                    equations.extend(poly.coeffs() if poly is not None else [num])
    res_obs = residue_obstruction(c, xi)
    if not unknowns:
        ok = all(is_zero(e) for e in equations)
        return SearchResult(ok, theta if ok else None, degree_bound, 0, "no unknowns", res_obs)
    if equations:
        Asym, bsym = sympy.linear_eq_to_matrix(equations, unknowns)
        A = [[_to_gq(x) for x in Asym.row(r)] for r in range(Asym.rows)]
        bvec = [_to_gq(x) for x in bsym]
        sol = linalg.solve(A, bvec)
    else:
        sol = [GaussianRational(0)] * len(unknowns)
    if sol is None:
        cert = f"no GH connection with coefficient degree within {degree_bound}"
        if any(r != 0 for r in res_obs.values()):
            cert += "; residue of tr xi is nonzero, so none exists at all"
        return SearchResult(False, None, degree_bound, len(unknowns), cert, res_obs)
    values = {u: _from_gq(v) for u, v in zip(unknowns, sol)}
    solved = {
        name: mat_map(lambda f: ChartForm(f.chart, {k: e.xreplace(values) for k, e in f.terms.items()}), M)
        for name, M in theta.items()
    }
    if not is_connection(c, solved, xi):
        raise ContractViolation("solver returned a non-solution")
    return SearchResult(True, solved, degree_bound, len(unknowns), "connection found", res_obs)


@dataclass
class CurvatureData:
    omega: dict
    omega11: dict
    equivariant: bool | None
    failures: list = field(default_factory=list)


def curvature(theta: ConnectionData, nerve: ChartNerve | None = None, cocycle: TransitionCocycle | None = None) -> CurvatureData:
    """``Omega = D Theta + Theta ^ Theta`` and ``Omega^{1,1} = d_L Theta``."""
    omega, omega11 = {}, {}
    for name, T in theta.items():
        for row in T:
            for f in row:
                if f.terms and f.bidegrees() != {(1, 0)}:
                    raise ContractViolation(f"connection entry on {name} is not a (1,0)-form: {f}")
        omega[name] = mat_add(mat_map(lambda f: f.D(), T), mat_wedge(T, T))
        omega11[name] = mat_map(lambda f: f.d_L(), T)
    equivariant = None
    failures = []
    if cocycle is not None:
        equivariant = True
        for a, b in cocycle.overlaps():
            rhs = mat_conjugate_by(cocycle.phi[(a, b)], mat_pull(cocycle.nerve, omega11[b], a, b))
            if not mat_equal(omega11[a], rhs):
                equivariant = False
                failures.append(f"Omega11 not equivariant on {a},{b}")
    return CurvatureData(omega, omega11, equivariant, failures)


def _det_forms(M) -> ChartForm:
    n = len(M)
    chart = M[0][0].chart
    acc = ChartForm(chart)
    for perm in permutations(range(n)):
        term = ChartForm.function(chart, permutation_sign(perm))
        for i, j in enumerate(perm):
            term = term.wedge(M[i][j])
            if not term.terms:
                break
        acc = acc + term
    return acc


def elementary_symmetric(M, k: int) -> ChartForm:
    """Sum of principal ``k``-minors of a matrix of even forms."""
    chart = M[0][0].chart
    if k == 0:
        return ChartForm.function(chart, 1)
    acc = ChartForm(chart)
    for S in combinations(range(len(M)), k):
        acc = acc + _det_forms([[M[i][j] for j in S] for i in S])
    return acc


CONVENTIONS = ("vector", "principal")


@dataclass
class CharacteristicClass:
    """``(2 pi i)^{-exponent} * forms[chart]``; the power is kept symbolic."""

    degree: int
    forms: dict
    exponent: int
    convention: str
    closed: bool
    glues: bool | None = None

    def render(self, chart: str) -> str:
        f = self.forms[chart]
        if self.exponent == 0:
            return str(f)
        return f"(2 pi i)^-{self.exponent} * ({f})"


def chern_weil(omega11: dict, degree: int, convention: str = "vector", cocycle: TransitionCocycle | None = None) -> CharacteristicClass:
    """``f_k`` from ``det(I + t A/2 pi i)`` (principal) or ``det(I - t A/2 pi i)`` (vector)."""
    if convention not in CONVENTIONS:
        raise ContractViolation(f"unknown convention {convention!r}")
    if degree < 0:
        raise ContractViolation("degree must be nonnegative")
    for name, M in omega11.items():
        for row in M:
            for f in row:
                w = f.d_L()
                if not w.is_zero():
                    raise ContractViolation(f"Omega^(1,1) on {name} is not d_L-closed: d_L = {w}")
    sign = -1 if (convention == "vector" and degree % 2) else 1
    forms = {name: elementary_symmetric(M, degree).scale(sign) for name, M in omega11.items()}
    closed = all(f.d_L().is_zero() for f in forms.values())
    glues = None
    if cocycle is not None:
        glues = all(
            forms[a] == _pull1(cocycle.nerve, forms[b], a, b) for a, b in cocycle.overlaps()
        )
    return CharacteristicClass(degree, forms, degree, convention, closed, glues)


def chern_weil_total(omega11: dict, convention: str = "vector", cocycle: TransitionCocycle | None = None) -> list:
    """All classes ``f_0 .. f_l`` of the characteristic polynomial."""
    rank = len(next(iter(omega11.values())))
    return [chern_weil(omega11, k, convention, cocycle) for k in range(rank + 1)]


def _pull1(nerve, f, a, b):
    from .forms import pull_form

    return pull_form(nerve, f, a, b)


@dataclass
class TransgressionReport:
    T: dict
    difference: dict
    holds: bool
    glues: bool | None

    @property
    def passed(self) -> bool:
        return self.holds and self.glues is not False


def transgression(theta0: ConnectionData, theta1: ConnectionData, degree: int, convention: str = "vector", cocycle: TransitionCocycle | None = None) -> TransgressionReport:
    """Witness ``T`` with ``d_L T = f(Omega_1^{1,1}) - f(Omega_0^{1,1})``.

    ``T = k int_0^1 f(w, Omega_t, ..., Omega_t) dt`` with ``w = Theta_1 - Theta_0``
    and ``Omega_t = Omega_0 + t d_L w``; the polarisation is the
    ``eps``-derivative of ``f(Omega_t + eps w)``.
    """
    t, eps = sympy.Symbol("_t"), sympy.Symbol("_eps")
    sign = -1 if (convention == "vector" and degree % 2) else 1
    f0 = chern_weil(curvature(theta0).omega11, degree, convention)
    f1 = chern_weil(curvature(theta1).omega11, degree, convention)
    T, diff = {}, {}
    holds = True
    for name in theta0:
        w = mat_sub(theta1[name], theta0[name])
        om0 = mat_map(lambda f: f.d_L(), theta0[name])
        dw = mat_map(lambda f: f.d_L(), w)
        Mt = mat_add(om0, mat_map(lambda f: f.scale(t), dw))
        Me = mat_add(Mt, mat_map(lambda f: f.scale(eps), w))
        poly = elementary_symmetric(Me, degree).scale(sign)
        chart = poly.chart
        terms = {}
        for key, e in poly.terms.items():
            lin = sympy.diff(e, eps).subs(eps, 0)
            terms[key] = sympy.integrate(sympy.expand(lin), (t, 0, 1)) if lin != 0 else 0
        Tn = ChartForm(chart, terms)
        T[name] = Tn
        diff[name] = f1.forms[name] - f0.forms[name]
        if not Tn.d_L() == diff[name]:
            holds = False
    glues = None
    if cocycle is not None:
        glues = all(T[a] == _pull1(cocycle.nerve, T[b], a, b) for a, b in cocycle.overlaps())
    return TransgressionReport(T, diff, holds, glues)


@dataclass
class ChernData:
    theta: ConnectionData
    curvature: CurvatureData
    type_10: bool
    curvature_11: bool
    skew_hermitian: bool
    metric_law: bool | None
    is_connection: bool | None


def _check_hermitian(chart: Chart, h: sympy.Matrix, name: str):
    if chart.p and any(h.has(p) for p in chart.p):
        raise ContractViolation(f"metric on {name} depends on leaf variables; a transverse metric is leafwise constant")
    if any(not is_zero(h[i, j] - chart.conj(h[j, i])) for i in range(h.rows) for j in range(h.cols)):
        raise ContractViolation(f"metric on {name} is not hermitian")


def chern_connection(nerve: ChartNerve, h: Mapping, cocycle: TransitionCocycle | None = None) -> ChernData:
    """``theta = hbar^{-1} d hbar`` (holomorphic derivative) per chart."""
    theta = {}
    hm = {}
    for name, H in h.items():
        chart = nerve.chart(name)
        H = sympy.Matrix([[chart.parse(x) if isinstance(x, str) else sympy.sympify(x) for x in row] for row in H]) if not isinstance(H, sympy.MatrixBase) else H
        _check_hermitian(chart, H, name)
        hm[name] = H
        Hbar = H.applyfunc(chart.conj)
        Hinv = _simplify_matrix(Hbar.inv(), chart)
        theta[name] = mat_wedge(mat_from_functions(chart, Hinv), _dphi(chart, Hbar))
    type10 = all(f.bidegrees() <= {(1, 0)} for T in theta.values() for row in T for f in row)
    curv = curvature(theta, nerve, cocycle)
    curv11 = True
    skew = True
    for name, Om in curv.omega.items():
        chart = nerve.chart(name)
        if any(f.bidegrees() - {(1, 1)} for row in Om for f in row):
            curv11 = False
        H = mat_from_functions(chart, hm[name])
        OmT = [[Om[j][i] for j in range(len(Om))] for i in range(len(Om))]
        Ombar = mat_map(lambda f: f.conjugate(), Om)
        if not mat_is_zero(mat_add(mat_wedge(OmT, H), mat_wedge(H, Ombar))):
            skew = False
    law = None
    conn = None
    if cocycle is not None:
        law = True
        for a, b in cocycle.overlaps():
            A = nerve.chart(a)
            phi = cocycle.phi[(a, b)]
            lhs = cocycle.pulled(a, b, hm[b])
            rhs = phi.T * hm[a] * phi.applyfunc(A.conj)
            if any(not is_zero(x) for x in (lhs - rhs)):
                law = False
        conn = is_connection(cocycle, theta)
    return ChernData(theta, curv, type10, curv11, skew, law, conn)


# --- Picard group -------------------------------------------------------------


def _require_line(c: TransitionCocycle):
    if c.rank != 1:
        raise ContractViolation("Picard operations need rank-1 cocycles")


def tensor(a: TransitionCocycle, b: TransitionCocycle) -> TransitionCocycle:
    _require_line(a)
    _require_line(b)
    if a.nerve is not b.nerve and a.overlaps() != b.overlaps():
        raise StructuralError("cocycles live on different nerves")
    return TransitionCocycle(a.nerve, 1, {ab: a.phi[ab] * b.phi[ab] for ab in a.phi if ab in b.phi})


def dual(a: TransitionCocycle) -> TransitionCocycle:
    _require_line(a)
    return TransitionCocycle(a.nerve, 1, {ab: M.inv() for ab, M in a.phi.items()})


@dataclass
class TrivialityVerdict:
    trivial: bool | None
    reason: str
    units: dict | None = None


def triviality(a: TransitionCocycle, degree_bound: int = 4) -> TrivialityVerdict:
    """Search for units ``g`` with ``phi_ab = g_a / g_b``.

    Units of a chart are nonzero constants times monomials in its Laurent
    variables; on charts without Laurent variables the search is complete for
    algebraic units. A nonzero residue of ``d log phi`` on a projective-line
    nerve proves nontriviality.
    """
    _require_line(a)
    nerve = a.nerve
    ranges = []
    slots = []
    for ch in nerve.charts:
        for s, v in zip(ch.z, ch.holo):
            if v in ch.laurent:
                ranges.append(range(-degree_bound, degree_bound + 1))
                slots.append((ch.name, s))
    complete = not slots
    for exps in product(*ranges) if ranges else [()]:
        mono = {ch.name: sympy.Integer(1) for ch in nerve.charts}
        for (name, s), e in zip(slots, exps):
            mono[name] = mono[name] * s**e
        ratio = {}
        ok = True
        for x, y in a.overlaps():
            r = sympy.cancel(a.phi[(x, y)][0, 0] * nerve.pull_function(mono[y], x, y) / mono[x])
            if r.free_symbols:
                ok = False
                break
            ratio[(x, y)] = r
        if not ok:
            continue
        consts = {nerve.charts[0].name: sympy.Integer(1)}
        changed = True
        while changed and ok:
            changed = False
            for (x, y), r in ratio.items():
                # g_x = phi g_y means c_x m_x = r m_x c_y
                if x in consts and y not in consts:
                    consts[y] = consts[x] / r
                    changed = True
                elif y in consts and x not in consts:
                    consts[x] = consts[y] * r
                    changed = True
                elif x in consts and y in consts and not is_zero(consts[x] - r * consts[y]):
                    ok = False
        if ok:
            units = {n: format_expr(consts.get(n, 1) * mono[n]) for n in mono}
            return TrivialityVerdict(True, "explicit units found", units)
    xi = atiyah_cocycles(a).xi
    res = residue_obstruction(a, xi)
    if any(r != 0 for r in res.values()):
        return TrivialityVerdict(False, f"residue of d log phi is {sorted(res.values(), key=str)[0]} != 0")
    if complete:
        return TrivialityVerdict(None, "no algebraic units solve the coboundary equation; holomorphic units not excluded")
    return TrivialityVerdict(None, f"no units within exponent bound {degree_bound}")


# --- principal <-> vector relabeling --------------------------------------------


@dataclass(frozen=True)
class PrincipalCocycle:
    """``GL(l, C)``-valued transition data of the frame bundle."""

    group: str
    nerve: ChartNerve
    transitions: tuple


def to_principal(c: TransitionCocycle) -> PrincipalCocycle:
    return PrincipalCocycle(f"GL({c.rank},C)", c.nerve, tuple(sorted(c.phi.items())))


def to_vector(P: PrincipalCocycle) -> TransitionCocycle:
    rank = int(P.group[3:].split(",")[0])
    return TransitionCocycle(P.nerve, rank, dict(P.transitions))


__all__ = [
    "AtiyahData",
    "CharacteristicClass",
    "ChernData",
    "CocycleReport",
    "ConnectionData",
    "CurvatureData",
    "GHReport",
    "PrincipalCocycle",
    "SearchResult",
    "TransgressionReport",
    "TransitionCocycle",
    "TrivialityVerdict",
    "atiyah_cocycles",
    "check_gh_cocycle",
    "chern_connection",
    "chern_weil",
    "chern_weil_total",
    "coboundary_residuals",
    "curvature",
    "dual",
    "elementary_symmetric",
    "gh_connection_search",
    "is_connection",
    "mat_str",
    "residue_obstruction",
    "tensor",
    "to_principal",
    "to_vector",
    "transgression",
    "triviality",
    "validate_cocycle",
    "zero_connection",
]
