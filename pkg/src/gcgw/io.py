"""Problem files and the shipped fixture directory.

A problem file is a JSON object with optional blocks ``lie_algebra``,
``gcs``, ``splitting``, ``bundle``, ``metric``/``metrics`` and a ``tasks``
list. See ``docs/schema.md`` for the full layout.
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from pathlib import Path

from .bundles import Chart, ChartNerve, TransitionCocycle
from .exterior import BasedSpace, Multivector, StructuralError
from .gcs import GCStructure, PureSpinorLine, spinor_to_structure
from .grammar import ParseError, parse_scalar
from .lie import InvalidLieAlgebra, LieReport, LieStructure

PROBLEM_SCHEMA = "gcgw/problem/1"
REPORT_SCHEMA = "gcgw/report/1"

TOP_KEYS = {"schema", "name", "description", "lie_algebra", "gcs", "splitting", "bundle", "metric", "metrics", "tasks"}


class SchemaError(StructuralError):
    """Schema violation, with a JSON-pointer-like location."""

    def __init__(self, location: str, message: str):
        self.location = location
        super().__init__(f"{location}: {message}")


def fixture_dir() -> Path:
    override = os.environ.get("GCGW_FIXTURES")
    if override is not None:
        return Path(override)
    return Path(__file__).resolve().parent / "fixtures"


def list_fixtures() -> list:
    d = fixture_dir()
    if not d.is_dir():
        return []
    return sorted(p.stem for p in d.glob("*.json"))


def resolve(path_or_name: str) -> Path:
    p = Path(path_or_name)
    if p.is_file():
        return p
    cand = fixture_dir() / f"{path_or_name}.json"
    if cand.is_file():
        return cand
    raise SchemaError(str(path_or_name), "no such file or fixture")


@dataclass
class Problem:
    name: str
    source: str
    raw: dict
    lie: LieStructure | None = None
    gcs: GCStructure | None = None
    spinor: PureSpinorLine | None = None
    theta: list | None = None
    bundle: TransitionCocycle | None = None
    metrics: list = field(default_factory=list)
    lie_report: LieReport | None = None
    tasks: list = field(default_factory=list)

    @property
    def space(self) -> BasedSpace | None:
        if self.lie is not None:
            return self.lie.space
        return self.gcs.space if self.gcs is not None else None


def _expect(cond, loc, msg):
    if not cond:
        raise SchemaError(loc, msg)


def _matrix(rows, loc) -> list:
    _expect(isinstance(rows, list) and all(isinstance(r, list) for r in rows), loc, "expected a list of rows")
    return [[parse_scalar(x) for x in r] for r in rows]


def _lie(block, loc) -> LieStructure:
    _expect(isinstance(block, dict), loc, "expected an object")
    labels = block.get("labels")
    dim = block.get("dim")
    if labels is not None:
        _expect(isinstance(labels, list) and all(isinstance(x, str) for x in labels), f"{loc}/labels", "expected strings")
        _expect(dim is None or dim == len(labels), f"{loc}/dim", "disagrees with labels")
        space = BasedSpace(labels)
    else:
        _expect(isinstance(dim, int) and dim >= 0, f"{loc}/dim", "expected a nonnegative integer")
        space = BasedSpace(dim)
    d = block.get("d", {})
    _expect(isinstance(d, dict), f"{loc}/d", "expected an object")
    parsed = {}
    for key, text in d.items():
        _expect(key in space.labels, f"{loc}/d/{key}", "unknown generator")
        parsed[key] = _form(space, text, f"{loc}/d/{key}")
    return LieStructure(space, parsed)


def _form(space, text, loc) -> Multivector:
    _expect(isinstance(text, str), loc, "expected a form string")
    try:
        return Multivector.parse(space, text)
    except ParseError as exc:
        raise SchemaError(loc, str(exc)) from None


def _gcs(block, space: BasedSpace, loc):
    _expect(isinstance(block, dict) and len(block) == 1, loc, "expected exactly one of matrix, spinor, complex, symplectic")
    kind, body = next(iter(block.items()))
    if kind == "matrix":
        _expect(isinstance(body, dict), f"{loc}/matrix", "expected an object")
        if "full" in body:
            return GCStructure(space, _matrix(body["full"], f"{loc}/matrix/full")), None
        conv = {}
        for key in ("J", "B", "beta"):
            if key in body:
                v = body[key]
                conv[key] = _form(space, v, f"{loc}/matrix/{key}") if isinstance(v, str) else _matrix(v, f"{loc}/matrix/{key}")
        return GCStructure.from_blocks(space, **conv), None
    if kind == "spinor":
        _expect(isinstance(body, dict), f"{loc}/spinor", "expected an object")
        theta = body.get("theta", [])
        _expect(isinstance(theta, list), f"{loc}/spinor/theta", "expected a list of 1-forms")
        parts = {k: _form(space, body[k], f"{loc}/spinor/{k}") for k in ("B", "omega") if k in body}
        theta = [_form(space, t, f"{loc}/spinor/theta/{j}") for j, t in enumerate(theta)]
        rho = PureSpinorLine.from_factors(space, parts.get("B"), parts.get("omega"), theta)
        return spinor_to_structure(rho), rho
    if kind == "complex":
        return GCStructure.complex(space, _matrix(body, f"{loc}/complex")), None
    if kind == "symplectic":
        _expect(isinstance(body, str), f"{loc}/symplectic", "expected a 2-form string")
        return GCStructure.symplectic(space, _form(space, body, f"{loc}/symplectic")), None
    raise SchemaError(loc, f"unknown structure kind {kind!r}")


def _bundle(block, loc) -> TransitionCocycle:
    _expect(isinstance(block, dict), loc, "expected an object")
    for key in ("charts", "vars", "transition"):
        _expect(key in block, f"{loc}/{key}", "missing")
    names = block["charts"]
    _expect(isinstance(names, list) and names, f"{loc}/charts", "expected a nonempty list")
    vars_, leaf, laurent = block["vars"], block.get("leaf", {}), block.get("laurent", {})
    charts = []
    for n in names:
        _expect(n in vars_, f"{loc}/vars/{n}", "missing")
        charts.append(Chart(n, tuple(vars_[n]), tuple(leaf.get(n, ())), frozenset(laurent.get(n, ()))))

    def pair(key, where):
        parts = key.split(",")
        _expect(len(parts) == 2, where, "overlap keys look like 'U0,U1'")
        return tuple(p.strip() for p in parts)

    glue = {pair(k, f"{loc}/glue/{k}"): v for k, v in block.get("glue", {}).items()}
    nerve = ChartNerve(charts, glue)
    trans = {pair(k, f"{loc}/transition/{k}"): v for k, v in block["transition"].items()}
    rank = block.get("rank", None)
    if rank is None:
        rank = len(next(iter(trans.values())))
    return TransitionCocycle(nerve, rank, trans)


def load_problem(path_or_name) -> Problem:
    path = resolve(str(path_or_name))
    try:
        raw = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}:{exc.lineno}:{exc.colno}", exc.msg) from None
    return problem_from_dict(raw, str(path))


def problem_from_dict(raw: dict, source: str = "<dict>") -> Problem:
    _expect(isinstance(raw, dict), "/", "expected an object")
    unknown = set(raw) - TOP_KEYS
    _expect(not unknown, "/", f"unknown keys {sorted(unknown)}")
    _expect(raw.get("schema", PROBLEM_SCHEMA) == PROBLEM_SCHEMA, "/schema", f"expected {PROBLEM_SCHEMA}")
    prob = Problem(raw.get("name", Path(source).stem), source, raw)
    if "lie_algebra" in raw:
        try:
            prob.lie = _lie(raw["lie_algebra"], "/lie_algebra")
        except InvalidLieAlgebra as exc:
            # kept so that the validate task can report the witness
            prob.lie_report = exc.report
    if "gcs" in raw:
        _expect(prob.lie is not None, "/gcs", "needs a lie_algebra block for the underlying space")
        prob.gcs, prob.spinor = _gcs(raw["gcs"], prob.lie.space, "/gcs")
    if "splitting" in raw:
        theta = raw["splitting"].get("theta")
        _expect(theta is None or isinstance(theta, list), "/splitting/theta", "expected a list of 1-forms")
        prob.theta = theta
    if "bundle" in raw:
        prob.bundle = _bundle(raw["bundle"], "/bundle")
    if "metric" in raw:
        prob.metrics = [raw["metric"]]
    if "metrics" in raw:
        _expect(isinstance(raw["metrics"], list), "/metrics", "expected a list")
        prob.metrics += list(raw["metrics"])
    for j, m in enumerate(prob.metrics):
        _expect(prob.bundle is not None, f"/metrics/{j}", "a metric needs a bundle block")
        _expect(isinstance(m, dict) and set(m) == set(c.name for c in prob.bundle.nerve.charts), f"/metrics/{j}", "need one matrix per chart")
    tasks = raw.get("tasks", [])
    _expect(isinstance(tasks, list), "/tasks", "expected a list")
    for j, t in enumerate(tasks):
        t = {"op": t} if isinstance(t, str) else t
        _expect(isinstance(t, dict) and isinstance(t.get("op"), str), f"/tasks/{j}", "expected {\"op\": name, ...}")
        prob.tasks.append(t)
    return prob


__all__ = [
    "PROBLEM_SCHEMA",
    "REPORT_SCHEMA",
    "Problem",
    "SchemaError",
    "fixture_dir",
    "list_fixtures",
    "load_problem",
    "problem_from_dict",
    "resolve",
]
