"""Task vocabulary shared by problem files and the CLI.

Each task calls one library operation and turns its report into a
:class:`TaskResult`. Verdicts: ``pass``, ``fail``, ``skip`` (the check does not
apply, with a diagnostic) and ``error`` (a contract violation was raised).
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass, field

from . import bundles as bd
from . import complexes as cx
from . import gcs
from .bundles.forms import mat_str
from .exterior import ContractViolation, GaussianRational, Multivector, StructuralError
from .grammar import format_form, format_generalized, format_scalar
from .io import Problem, load_problem
from .lie import validate as lie_validate


@dataclass
class TaskResult:
    op: str
    verdict: str
    summary: str
    values: dict = field(default_factory=dict)
    approx: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.verdict in ("pass", "skip")

    def as_dict(self, with_approx: bool = False) -> dict:
        out = {"op": self.op, "verdict": self.verdict, "summary": self.summary, "values": self.values}
        if with_approx and self.approx:
            out["approx"] = self.approx
        return out


def _v(flag) -> str:
    return "pass" if flag else "fail"


def _approx(z: complex) -> str:
    re_, im = round(z.real, 12), round(z.imag, 12)
    if im == 0:
        return f"{re_:.6g}"
    if re_ == 0:
        return f"{im:.6g}i"
    return f"{re_:.6g}{im:+.6g}i"


def approx_scalar(c: GaussianRational) -> str:
    return _approx(complex(float(c.re), float(c.im)))


def approx_two_pi_i(exponent: int) -> str:
    return _approx((2j * cmath.pi) ** (-exponent))


class Context:
    """Lazily built objects shared by the tasks of one problem."""

    def __init__(self, problem: Problem):
        self.p = problem
        self._cache = {}

    def need(self, what: str):
        obj = {"lie": self.p.lie, "gcs": self.p.gcs, "bundle": self.p.bundle}[what]
        if obj is None:
            raise StructuralError(f"task needs a {what} block")
        return obj

    def spinor(self):
        if self.p.spinor is not None:
            return self.p.spinor
        return self._get("spinor", lambda: gcs.structure_to_spinor(self.need("gcs")))

    def _get(self, key, make):
        if key not in self._cache:
            self._cache[key] = make()
        return self._cache[key]

    def splitting(self):
        return self._get("split", lambda: cx.transverse_split(self.need("gcs"), self.need("lie"), theta=self.p.theta))

    def ops(self):
        return self._get("ops", lambda: cx.build_operators(self.splitting()))

    def hodge(self):
        return self._get("hodge", lambda: cx.adjoints_and_laplacians(self.splitting(), self.ops()))

    def atiyah(self):
        return self._get("atiyah", lambda: bd.atiyah_cocycles(self.need("bundle")))

    def metric(self, j: int):
        if j >= len(self.p.metrics):
            raise StructuralError(f"metric #{j} is not defined")
        return self._get(f"chern{j}", lambda: bd.chern_connection(self.need("bundle").nerve, self.p.metrics[j], self.need("bundle")))


# --- Lie and GCS tasks ---------------------------------------------------------


def t_validate(ctx, task):
    rep = ctx.p.lie_report if ctx.p.lie_report is not None else lie_validate(ctx.need("lie"))
    vals = {"d_squared_zero": rep.d_squared_zero, "nilpotency_class": rep.nilpotency_class}
    if not rep.valid:
        vals["witness"] = rep.summary()
    return TaskResult("validate", _v(rep.valid), rep.summary(), vals)


def t_check_axioms(ctx, task):
    J = ctx.need("gcs")
    rep = gcs.check_axioms(J, ctx.p.lie)
    vals = rep.as_dict()
    wit = []
    if rep.square_witness is not None:
        wit.append(f"J^2 v != -v for v = {format_generalized(rep.square_witness)}")
    if rep.orthogonal_witness is not None:
        u, w = rep.orthogonal_witness[:2]
        wit.append(f"<Ju,Jw> != <u,w> for u = {format_generalized(u)}, w = {format_generalized(w)}")
    if rep.nijenhuis_witness is not None:
        C, D, N = rep.nijenhuis_witness
        wit.append(f"N({format_generalized(C)}, {format_generalized(D)}) = {format_generalized(N)}")
    if wit:
        vals["witnesses"] = wit
    summ = ", ".join(f"{k}={'-' if v is None else v}" for k, v in vals.items() if k != "witnesses")
    return TaskResult("check_axioms", _v(rep.passed), summ, vals)


def t_type(ctx, task):
    eb = gcs.eigenbundle_and_type(ctx.need("gcs"))
    vals = {"type": eb.type, "delta_real_dim": eb.delta_real_dim, "isotropic": eb.isotropic, "real_index_zero": eb.real_index_zero}
    ok = eb.isotropic and eb.real_index_zero
    if "expect" in task:
        ok = ok and eb.type == task["expect"]
    return TaskResult("type", _v(ok), f"type {eb.type}", vals)


def t_b_transform(ctx, task):
    J = ctx.need("gcs")
    JB = gcs.b_transform(J, task["B"], ctx.p.lie)
    ax = gcs.check_axioms(JB, ctx.p.lie)
    t0, t1 = gcs.structure_type(J), gcs.structure_type(JB)
    ok = ax.passed and t0 == t1
    return TaskResult("b_transform", _v(ok), f"axioms {'hold' if ax.passed else 'fail'}, type {t0} -> {t1}", {"axioms": ax.as_dict(), "type_before": t0, "type_after": t1})


def t_calabi_yau(ctx, task):
    strong = bool(task.get("strong", False))
    rep = gcs.check_calabi_yau(ctx.need("lie"), ctx.spinor(), strong=strong)
    nd = rep.nondegeneracy_value
    vals = {
        "d_rho": format_form(rep.d_rho),
        "closed": rep.closed,
        "pure": rep.pure,
        "nondegenerate": rep.nondegenerate,
        "nondegeneracy_value": format_form(nd),
        "type": rep.type,
        "decomposable": rep.decomposable,
        "d_theta": [format_form(d) for d in rep.d_theta],
        "strong": rep.strong,
    }
    approx = {"nondegeneracy_top_coefficient": approx_scalar(nd.top())} if nd.terms else {}
    label = "strong generalized Calabi-Yau" if strong else "generalized Calabi-Yau"
    summ = f"{label}: {'yes' if rep.passed else 'no'}"
    if not rep.closed:
        summ += f" (d rho = {vals['d_rho']})"
    return TaskResult("calabi_yau", _v(rep.passed), summ, vals, approx)


def t_leaf_distribution(ctx, task):
    L = ctx.need("lie")
    ld = gcs.leaf_distribution(L, ctx.spinor())
    basis = [format_form(Multivector.one_form(L.space, v)) for v in ld.basis]
    ok = ld.subalgebra and ld.codim == ld.expected_codim
    vals = {"basis": basis, "codim": ld.codim, "subalgebra": ld.subalgebra}
    return TaskResult("leaf_distribution", _v(ok), f"span{{{', '.join(basis)}}}, codim {ld.codim}", vals)


# --- transverse complexes ------------------------------------------------------


def t_cohomology(ctx, task):
    flavor = task.get("flavor", "both")
    if flavor not in ("D", "dL", "both"):
        raise StructuralError(f"unknown flavor {flavor!r}")
    tab = cx.cohomology_dims(ctx.ops(), flavor)
    vals = {"k": tab.k, "dims": {}}
    if flavor in ("D", "both"):
        vals["dims"]["D"] = tab.D
    if flavor in ("dL", "both"):
        vals["dims"]["dL"] = tab.dL
    ok = True
    exp = task.get("expect", {})
    for key, want in exp.items():
        ok = ok and vals["dims"].get(key) == want
    summ = "; ".join(f"{k}: {v}" for k, v in vals["dims"].items())
    return TaskResult("cohomology", _v(ok), summ, vals)


def t_hodge(ctx, task):
    S, ops, H = ctx.splitting(), ctx.ops(), ctx.hodge()
    ss = cx.star_star_ok(S)
    tab = cx.cohomology_dims(ops)
    harm_D = H.harmonic_D == tab.D
    harm_dL = H.harmonic_dL == tab.dL
    ok = all(ss.values()) and all(H.adjoint_ok.values()) and all(H.self_adjoint_ok.values()) and harm_D and harm_dL
    vals = {
        "star_star": {str(r): v for r, v in ss.items()},
        "adjoints": dict(H.adjoint_ok),
        "self_adjoint_laplacians": dict(H.self_adjoint_ok),
        "harmonic_dims": {"D": H.harmonic_D, "dL": H.harmonic_dL},
        "harmonic_matches_cohomology": harm_D and harm_dL,
    }
    return TaskResult("hodge", _v(ok), f"operators {'consistent' if ok else 'inconsistent'}", vals)


def t_kahler(ctx, task):
    rep = cx.lefschetz_check(ctx.splitting(), ctx.ops(), ctx.hodge())
    vals = {
        "kahler_identities": ("pass" if rep.passed else "fail") if rep.kahler else "skipped",
        "identities": dict(rep.identities),
        "laplacian_relation": rep.laplacian_relation,
        "hodge_decomposition": rep.hodge_decomposition,
    }
    if rep.failures:
        vals["failures"] = {k: list(v) if v else None for k, v in rep.failures.items()}
    if not rep.kahler:
        return TaskResult("kahler", "skip", rep.diagnostic, vals)
    return TaskResult("kahler", _v(rep.passed), "all identities hold" if rep.passed else "identities fail", vals)


def t_duality(ctx, task):
    rep = cx.duality_report(ctx.splitting(), ctx.ops(), ctx.hodge())
    vals = {
        "D_symmetric": rep.D_symmetric,
        "dL_symmetric": rep.dL_symmetric,
        "D_gram_dets": {str(k): format_scalar(v) for k, v in rep.D_gram_dets.items()},
        "dL_gram_dets": {f"{k[0]},{k[1]}": format_scalar(v) for k, v in rep.dL_gram_dets.items()},
        "harmonic_matches_cohomology": rep.harmonic_matches_cohomology,
    }
    return TaskResult("duality", _v(rep.passed), "Poincaré and Serre type dualities " + ("hold" if rep.passed else "fail"), vals)


# --- bundles --------------------------------------------------------------------


def _key(ab) -> str:
    return f"{ab[0]},{ab[1]}"


def t_validate_cocycle(ctx, task):
    rep = bd.validate_cocycle(ctx.need("bundle"))
    vals = {"valid": rep.valid, "failures": [list(f) for f in rep.failures]}
    return TaskResult("validate_cocycle", _v(rep.valid), rep.summary(), vals)


def t_check_gh(ctx, task):
    rep = bd.check_gh_cocycle(ctx.need("bundle"))
    vals = {"gh": rep.gh, "offending": [list(x) for x in rep.offending]}
    summ = "all entries GH" if rep.gh else f"not GH: {rep.offending[0]}"
    return TaskResult("check_gh_cocycle", _v(rep.gh), summ, vals)


def t_atiyah(ctx, task):
    at = ctx.atiyah()
    vals = {
        "xi": {_key(k): mat_str(v) for k, v in sorted(at.xi.items())},
        "b": {_key(k): mat_str(v) for k, v in sorted(at.b.items())},
        "b_equals_minus_xi": at.sign_identity,
        "twisted_cocycle_law": at.twisted_law,
    }
    first = sorted(at.xi)[0]
    return TaskResult("atiyah", _v(at.passed), f"xi_{_key(first)} = {vals['xi'][_key(first)]}", vals)


def t_connection_search(ctx, task):
    bound = int(task.get("bound", 4))
    c = ctx.need("bundle")
    r = bd.gh_connection_search(c, ctx.atiyah().xi, bound)
    vals = {
        "found": r.found,
        "bound": r.bound,
        "unknowns": r.unknowns,
        "certificate": r.certificate,
        "residues": {_key(k): str(v) for k, v in r.residue_obstruction.items()},
    }
    if r.found:
        vals["theta"] = {n: mat_str(M) for n, M in sorted(r.theta.items())}
    ok = True
    if "expect_found" in task:
        ok = r.found == bool(task["expect_found"])
    summ = "connection found" if r.found else f"no connection within bound {bound}"
    return TaskResult("connection_search", _v(ok), summ, vals)


def _theta_for(ctx, task):
    if ctx.p.metrics:
        return ctx.metric(int(task.get("metric", 0))).theta
    r = bd.gh_connection_search(ctx.need("bundle"), ctx.atiyah().xi, int(task.get("bound", 2)))
    if not r.found:
        raise ContractViolation("no metric given and no GH connection found within bound")
    return r.theta


def t_chern_connection(ctx, task):
    j = int(task.get("metric", 0))
    ch = ctx.metric(j)
    ok = ch.type_10 and ch.curvature_11 and ch.skew_hermitian and ch.metric_law is not False and ch.is_connection is not False
    vals = {
        "theta": {n: mat_str(M) for n, M in sorted(ch.theta.items())},
        "omega11": {n: mat_str(M) for n, M in sorted(ch.curvature.omega11.items())},
        "type_10": ch.type_10,
        "curvature_type_11": ch.curvature_11,
        "skew_hermitian": ch.skew_hermitian,
        "metric_law": ch.metric_law,
        "coboundary_law": ch.is_connection,
        "equivariant": ch.curvature.equivariant,
    }
    return TaskResult("chern_connection", _v(ok), f"theta = {vals['theta'][min(vals['theta'])]}", vals)


def t_chern_weil(ctx, task):
    k = int(task.get("degree", 1))
    conv = task.get("convention", "vector")
    c = ctx.need("bundle")
    theta = _theta_for(ctx, task)
    curv = bd.curvature(theta, c.nerve, c)
    cc = bd.chern_weil(curv.omega11, k, conv, c)
    ok = cc.closed and cc.glues is not False and curv.equivariant is not False
    vals = {
        "degree": k,
        "convention": conv,
        "normalization": f"(2 pi i)^-{k}",
        "forms": {n: str(f) for n, f in sorted(cc.forms.items())},
        "closed": cc.closed,
        "glues": cc.glues,
    }
    first = min(cc.forms)
    return TaskResult("chern_weil", _v(ok), cc.render(first), vals, {"normalization": approx_two_pi_i(k)})


def t_transgression(ctx, task):
    k = int(task.get("degree", 1))
    conv = task.get("convention", "vector")
    i, j = task.get("metrics", [0, 1])
    c = ctx.need("bundle")
    rep = bd.transgression(ctx.metric(i).theta, ctx.metric(j).theta, k, conv, c)
    vals = {
        "T": {n: str(f) for n, f in sorted(rep.T.items())},
        "difference": {n: str(f) for n, f in sorted(rep.difference.items())},
        "d_L_T_equals_difference": rep.holds,
        "T_glues": rep.glues,
    }
    return TaskResult("transgression", _v(rep.passed), "difference is d_L-exact" if rep.holds else "transgression fails", vals)


def t_picard(ctx, task):
    a = ctx.need("bundle")
    vals = {}
    if "with" in task:
        other = load_problem(task["with"]).bundle
        if other is None:
            raise StructuralError("picard: the other problem has no bundle block")
        other = bd.TransitionCocycle(a.nerve, 1, {k: v for k, v in other.phi.items()})
        a = bd.tensor(a, other)
        vals["tensor"] = {_key(k): bd.format_expr(M[0, 0]) for k, M in sorted(a.phi.items())}
    vals["dual"] = {_key(k): bd.format_expr(M[0, 0]) for k, M in sorted(bd.dual(a).phi.items())}
    v = bd.triviality(a, int(task.get("bound", 4)))
    vals["trivial"] = v.trivial
    vals["reason"] = v.reason
    if v.units:
        vals["units"] = v.units
    ok = True
    if "expect_trivial" in task:
        ok = v.trivial == task["expect_trivial"]
    word = {True: "trivial", False: "nontrivial", None: "undecided"}[v.trivial]
    return TaskResult("picard", _v(ok), f"{word}: {v.reason}", vals)


# --- Bott and the oracle -----------------------------------------------------------


def t_bott(ctx, task):
    n, m, p, q = (int(task.get(x, 0)) for x in ("n", "m", "p", "q"))
    val = bd.bott_dims(n, m, p, q)
    ok = "expect" not in task or val == task["expect"]
    return TaskResult("bott", _v(ok), f"dim H^{q}(P^{n}, Omega^{p}(m={m})) = {val}", {"n": n, "m": m, "p": p, "q": q, "dim": val})


def t_oracle_p1(ctx, task):
    m, q, p = int(task.get("m", 0)), int(task.get("q", 0)), int(task.get("p", 0))
    N = task.get("truncation")
    val = bd.cech_oracle_p1(m, q, N, p)
    ok = "expect" not in task or val == task["expect"]
    vals = {"m": m, "q": q, "p": p, "dim": val, "bott": bd.bott_dims(1, m, p, q)}
    ok = ok and val == vals["bott"]
    return TaskResult("oracle_p1", _v(ok), f"Cech dim H^{q}(P^1, Omega^{p}(m={m})) = {val}", vals)


TASKS = {
    "validate": t_validate,
    "check_axioms": t_check_axioms,
    "type": t_type,
    "b_transform": t_b_transform,
    "calabi_yau": t_calabi_yau,
    "leaf_distribution": t_leaf_distribution,
    "cohomology": t_cohomology,
    "hodge": t_hodge,
    "kahler": t_kahler,
    "duality": t_duality,
    "validate_cocycle": t_validate_cocycle,
    "check_gh_cocycle": t_check_gh,
    "atiyah": t_atiyah,
    "connection_search": t_connection_search,
    "chern_connection": t_chern_connection,
    "chern_weil": t_chern_weil,
    "transgression": t_transgression,
    "picard": t_picard,
    "bott": t_bott,
    "oracle_p1": t_oracle_p1,
}


class UnknownTask(StructuralError):
    pass


def run_task(ctx: Context, task: dict) -> TaskResult:
    op = task["op"]
    if op not in TASKS:
        raise UnknownTask(f"unknown task {op!r}; known: {', '.join(sorted(TASKS))}")
    try:
        return TASKS[op](ctx, task)
    except ContractViolation as exc:
        return TaskResult(op, "error", str(exc), {"error": str(exc)})


def run_problem(problem: Problem, tasks=None) -> list:
    ctx = Context(problem)
    return [run_task(ctx, t) for t in (tasks if tasks is not None else problem.tasks)]


__all__ = ["Context", "TASKS", "TaskResult", "UnknownTask", "run_problem", "run_task"]
