"""``gcgw`` command line.

Exit codes: 0 all verdicts pass, 1 some verdict failed, 2 the input is
malformed (schema or parse error, with its location), 3 a contract violation.
"""
from __future__ import annotations

import argparse
import json
import sys

from .exterior import ContractViolation, StructuralError
from .grammar import ParseError
from .io import REPORT_SCHEMA, Problem, SchemaError, list_fixtures, load_problem
from .tasks import run_problem

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_CONTRACT = 0, 1, 2, 3


def _fmt_value(v) -> str:
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}: {_fmt_value(x)}" for k, x in v.items()) + "}"
    if isinstance(v, list):
        return "[" + ", ".join(_fmt_value(x) for x in v) + "]"
    return str(v)


def render_text(name: str, results: list, approx: bool) -> str:
    lines = [f"gcgw report: {name}"]
    for r in results:
        lines.append(f"[{r.verdict.upper()}] {r.op}: {r.summary}")
        for k, v in r.values.items():
            lines.append(f"    {k}: {_fmt_value(v)}")
        if approx:
            for k, v in r.approx.items():
                lines.append(f"    ~{k}: {v}  (approximate, non-authoritative)")
    passed = sum(1 for r in results if r.ok)
    lines.append(f"summary: {passed}/{len(results)} tasks passed")
    return "\n".join(lines) + "\n"


def render_json(name: str, results: list, approx: bool) -> str:
    doc = {
        "schema": REPORT_SCHEMA,
        "problem": name,
        "passed": all(r.ok for r in results),
        "tasks": [r.as_dict(approx) for r in results],
    }
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"


def exit_code(results: list) -> int:
    if any(r.verdict == "error" for r in results):
        return EXIT_CONTRACT
    return EXIT_OK if all(r.ok for r in results) else EXIT_FAIL


def _emit(args, name, results) -> int:
    out = render_json if args.json else render_text
    sys.stdout.write(out(name, results, args.approx))
    return exit_code(results)


def _run_tasks(args, tasks_for) -> int:
    prob: Problem = load_problem(args.file)
    tasks = tasks_for(prob)
    return _emit(args, prob.name, run_problem(prob, tasks))


def cmd_run(args):
    return _run_tasks(args, lambda p: p.tasks)


def cmd_check(args):
    def tasks(p):
        out = []
        if p.lie is not None or p.lie_report is not None:
            out.append({"op": "validate"})
        if p.gcs is not None:
            out.append({"op": "check_axioms"})
        if p.bundle is not None:
            out += [{"op": "validate_cocycle"}, {"op": "check_gh_cocycle"}]
        if not out:
            raise SchemaError("/", "nothing to check")
        return out

    return _run_tasks(args, tasks)


def cmd_type(args):
    return _run_tasks(args, lambda p: [{"op": "type"}])


def cmd_cy(args):
    return _run_tasks(args, lambda p: [{"op": "calabi_yau", "strong": args.strong}, {"op": "leaf_distribution"}])


def cmd_cohomology(args):
    return _run_tasks(args, lambda p: [{"op": "cohomology", "flavor": args.flavor}])


def cmd_hodge(args):
    return _run_tasks(args, lambda p: [{"op": "hodge"}, {"op": "kahler"}, {"op": "duality"}])


def cmd_atiyah(args):
    return _run_tasks(
        args,
        lambda p: [{"op": "validate_cocycle"}, {"op": "atiyah"}, {"op": "connection_search", "bound": args.connection_bound}],
    )


def cmd_chern(args):
    def tasks(p):
        out = []
        if p.metrics:
            out.append({"op": "chern_connection"})
        out.append({"op": "chern_weil", "degree": args.degree, "convention": args.convention})
        if len(p.metrics) > 1:
            out.append({"op": "transgression", "degree": args.degree, "convention": args.convention})
        return out

    return _run_tasks(args, tasks)


def cmd_picard(args):
    def tasks(p):
        t = {"op": "picard", "bound": args.bound}
        if args.with_:
            t["with"] = args.with_
        return [t]

    return _run_tasks(args, tasks)


def cmd_bott(args):
    prob = Problem("bott", "<args>", {})
    return _emit(args, "bott", run_problem(prob, [{"op": "bott", "n": args.n, "m": args.m, "p": args.p, "q": args.q}]))


def cmd_oracle(args):
    prob = Problem("oracle p1", "<args>", {})
    task = {"op": "oracle_p1", "m": args.m, "q": args.q, "p": args.p}
    if args.truncation is not None:
        task["truncation"] = args.truncation
    return _emit(args, "oracle p1", run_problem(prob, [task]))


def cmd_fixtures(args):
    names = list_fixtures()
    if args.json:
        sys.stdout.write(json.dumps(names) + "\n")
    else:
        sys.stdout.write("".join(f"{n}\n" for n in names))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit the machine-readable report")
    common.add_argument("--approx", action="store_true", help="add decimal renderings (non-authoritative)")

    ap = argparse.ArgumentParser(prog="gcgw", description="Exact generalized complex geometry workbench.")
    sub = ap.add_subparsers(dest="command", required=True)

    def with_file(name, help_, fn):
        p = sub.add_parser(name, help=help_, parents=[common])
        p.add_argument("file", help="problem file or fixture name")
        p.set_defaults(fn=fn)
        return p

    with_file("run", "run the tasks listed in a problem file", cmd_run)
    with_file("check", "Lie table, GCS axioms and cocycle identities", cmd_check)
    with_file("type", "type of the generalized complex structure", cmd_type)
    p = with_file("cy", "(strong) generalized Calabi-Yau check and leaf distribution", cmd_cy)
    p.add_argument("--strong", action="store_true")
    p = with_file("cohomology", "transverse D and d_L cohomology", cmd_cohomology)
    p.add_argument("--flavor", choices=("D", "dL", "both"), default="both")
    with_file("hodge", "Hodge operators, Kähler identities and dualities", cmd_hodge)
    p = with_file("atiyah", "Atiyah cocycles and GH connection search", cmd_atiyah)
    p.add_argument("--connection-bound", type=int, default=4)
    p = with_file("chern", "Chern connection and Chern-Weil forms", cmd_chern)
    p.add_argument("--degree", type=int, default=1)
    p.add_argument("--convention", choices=("vector", "principal"), default="vector")
    p = with_file("picard", "Picard group operations on a line bundle", cmd_picard)
    p.add_argument("--with", dest="with_", help="second line bundle to tensor with")
    p.add_argument("--bound", type=int, default=4)

    p = sub.add_parser("bott", help="Bott formula dimension on projective space", parents=[common])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--p", type=int, default=0)
    p.add_argument("--q", type=int, default=0)
    p.set_defaults(fn=cmd_bott)

    p = sub.add_parser("oracle", help="independent oracles", parents=[common])
    osub = p.add_subparsers(dest="oracle", required=True)
    o = osub.add_parser("p1", help="Čech cohomology of line bundles on the projective line", parents=[common])
    o.add_argument("--m", type=int, required=True)
    o.add_argument("--q", type=int, required=True)
    o.add_argument("--p", type=int, default=0)
    o.add_argument("--truncation", type=int)
    o.set_defaults(fn=cmd_oracle)

    p = sub.add_parser("fixtures", help="list shipped fixtures", parents=[common])
    p.set_defaults(fn=cmd_fixtures)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except ParseError as exc:
        sys.stderr.write(f"gcgw: parse error: {exc}\n")
        return EXIT_INPUT
    except ContractViolation as exc:
        sys.stderr.write(f"gcgw: contract violation: {exc}\n")
        return EXIT_CONTRACT
    except (StructuralError, KeyError, ValueError) as exc:
        sys.stderr.write(f"gcgw: invalid input: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
