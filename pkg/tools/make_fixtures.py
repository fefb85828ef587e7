"""Regenerate the JSON fixtures shipped in src/gcgw/fixtures."""
import json
from pathlib import Path

OUT = Path(__file__).resolve().parents[1] / "src" / "gcgw" / "fixtures"
SCHEMA = "gcgw/problem/1"
IWASAWA_D = {"e5": "e1^e3 + e4^e2", "e6": "e1^e4 + e2^e3"}
GC_TASKS = ["validate", "check_axioms", "type"]
HODGE = ["hodge", "kahler", "duality"]

P1 = {"charts": ["U0", "U1"], "vars": {"U0": ["z"], "U1": ["w"]}, "glue": {"U0,U1": {"w": "1/z"}}}
P2 = {
    "charts": ["U0", "U1", "U2"],
    "vars": {"U0": ["z1", "z2"], "U1": ["u1", "u2"], "U2": ["v1", "v2"]},
    "glue": {
        "U0,U1": {"u1": "1/z1", "u2": "z2/z1"},
        "U0,U2": {"v1": "1/z2", "v2": "z1/z2"},
        "U1,U2": {"v1": "u1/u2", "v2": "1/u2"},
    },
}
FS_P1 = {"U0": [["1/(1 + z*zbar)"]], "U1": [["1/(1 + w*wbar)"]]}
FS_P1_B = {"U0": [["(1 + 2*z*zbar)/(1 + z*zbar)^2"]], "U1": [["(2 + w*wbar)/(1 + w*wbar)^2"]]}
BUNDLE_TASKS = ["validate_cocycle", "check_gh_cocycle", "atiyah"]


def fx(name, description, **blocks):
    doc = {"schema": SCHEMA, "name": name, "description": description}
    doc.update(blocks)
    doc["tasks"] = [{"op": t} if isinstance(t, str) else t for t in doc.get("tasks", [])]
    (OUT / f"{name}.json").write_text(json.dumps(doc, indent=2, ensure_ascii=False) + "\n")


def p1(m):
    return dict(P1, rank=1, transition={"U0,U1": [[f"z^{m}" if m >= 0 else f"1/z^{-m}"]]})


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    for old in OUT.glob("*.json"):
        old.unlink()
    fx(
        "iwasawa",
        "Iwasawa nilmanifold with the type-2 strong generalized Calabi-Yau structure "
        "rho = exp(i e56)(e1 + i e2)(e3 - i e4). The sign in the second factor makes "
        "rho closed for this differential table; see iwasawa_literal.",
        lie_algebra={"dim": 6, "d": IWASAWA_D},
        gcs={"spinor": {"omega": "e5^e6", "theta": ["e1 + i e2", "e3 - i e4"]}},
        tasks=GC_TASKS[:2] + [{"op": "type", "expect": 2}, {"op": "calabi_yau", "strong": True}, "leaf_distribution",
               {"op": "cohomology", "flavor": "D", "expect": {"D": [1, 4, 6, 4, 1]}},
               {"op": "cohomology", "flavor": "dL", "expect": {"dL": [[1, 2, 1], [2, 4, 2], [1, 2, 1]]}}] + HODGE,
    )
    fx(
        "iwasawa_literal",
        "Iwasawa nilmanifold with rho = exp(i e56)(e1 + i e2)(e3 + i e4). With this "
        "differential table d rho = 2 e12345 + 2i e12346, so the check fails.",
        lie_algebra={"dim": 6, "d": IWASAWA_D},
        gcs={"spinor": {"omega": "e5^e6", "theta": ["e1 + i e2", "e3 + i e4"]}},
        tasks=["validate", {"op": "type", "expect": 2}, {"op": "calabi_yau", "strong": True}, "leaf_distribution"],
    )
    fx(
        "iwasawa_complex",
        "Iwasawa nilmanifold with its left-invariant complex structure (type 3); the "
        "transverse model is not Kähler.",
        lie_algebra={"dim": 6, "d": IWASAWA_D},
        gcs={"spinor": {"theta": ["e1 + i e2", "e3 + i e4", "e5 + i e6"]}},
        tasks=GC_TASKS[:2] + [{"op": "type", "expect": 3}, "calabi_yau",
               {"op": "cohomology", "expect": {"D": [1, 4, 8, 10, 8, 4, 1]}}] + HODGE,
    )
    fx("complex_plane", "R^2 with the complex structure J e1 = e2.",
       lie_algebra={"dim": 2}, gcs={"complex": [[0, -1], [1, 0]]},
       tasks=GC_TASKS[:2] + [{"op": "type", "expect": 1}, "cohomology"] + HODGE)
    fx("symplectic_plane", "R^2 with the symplectic form e1^e2.",
       lie_algebra={"dim": 2}, gcs={"symplectic": "e1^e2"},
       tasks=GC_TASKS[:2] + [{"op": "type", "expect": 0}, "cohomology"] + HODGE)
    fx("corrupted_plane", "A matrix with J^2 = -2; axiom (a) fails.",
       lie_algebra={"dim": 2}, gcs={"complex": [[0, -1], [2, 0]]}, tasks=["check_axioms"])
    fx("torus4", "Abelian 4-torus with a complex structure.",
       lie_algebra={"dim": 4}, gcs={"complex": [[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]]},
       tasks=GC_TASKS[:2] + [{"op": "type", "expect": 2}, "calabi_yau",
              {"op": "cohomology", "expect": {"D": [1, 4, 6, 4, 1]}}] + HODGE)
    fx("torus6", "Abelian 6-torus with a type-2 structure, symplectic along e5, e6.",
       lie_algebra={"dim": 6}, gcs={"spinor": {"omega": "e5^e6", "theta": ["e1 + i e2", "e3 + i e4"]}},
       tasks=GC_TASKS[:2] + [{"op": "type", "expect": 2}, {"op": "calabi_yau", "strong": True}, "leaf_distribution",
              "cohomology"] + HODGE)
    fx("kodaira_thurston", "Kodaira-Thurston nilmanifold (de4 = e12) with a complex structure; "
       "the transverse differential is nonzero and the model is not Kähler.",
       lie_algebra={"dim": 4, "d": {"e4": "e1^e2"}}, gcs={"spinor": {"theta": ["e1 + i e2", "e3 + i e4"]}},
       tasks=GC_TASKS[:2] + [{"op": "type", "expect": 2},
              {"op": "cohomology", "expect": {"D": [1, 3, 4, 3, 1], "dL": [[1, 2, 1], [1, 2, 1], [1, 2, 1]]}}] + HODGE)
    fx("p1_o(1)", "Degree-1 line bundle on the projective line with two hermitian metrics.",
       bundle=p1(1), metrics=[FS_P1, FS_P1_B],
       tasks=BUNDLE_TASKS + [{"op": "connection_search", "bound": 4, "expect_found": False},
                             "chern_connection", {"op": "chern_weil", "degree": 1},
                             {"op": "transgression", "degree": 1}, {"op": "picard", "expect_trivial": False}])
    fx("p1_o(-1)", "Tautological line bundle on the projective line.",
       bundle=p1(-1), metrics=[{"U0": [["1 + z*zbar"]], "U1": [["1 + w*wbar"]]}],
       tasks=BUNDLE_TASKS + [{"op": "connection_search", "bound": 4, "expect_found": False}, "chern_connection",
                             {"op": "chern_weil", "degree": 1}, {"op": "picard", "expect_trivial": False}])
    fx("p1_o(0)", "Trivial line bundle on the projective line.",
       bundle=p1(0),
       tasks=BUNDLE_TASKS + [{"op": "connection_search", "bound": 2, "expect_found": True},
                             {"op": "chern_weil", "degree": 1}, {"op": "picard", "expect_trivial": True}])
    fx("p1_rank2_flat", "Rank-2 bundle with constant unipotent transition (flat).",
       bundle=dict(P1, rank=2, transition={"U0,U1": [[1, 1], [0, 1]]}),
       tasks=BUNDLE_TASKS + [{"op": "connection_search", "bound": 1, "expect_found": True},
                             {"op": "chern_weil", "degree": 1}, {"op": "chern_weil", "degree": 2}])
    fx("p1_rank2_jordan", "Rank-2 bundle with transition [[z, 1], [0, z]].",
       bundle=dict(P1, rank=2, transition={"U0,U1": [["z", 1], [0, "z"]]}),
       tasks=BUNDLE_TASKS + [{"op": "connection_search", "bound": 2, "expect_found": False}])
    fx("p1_rank2_diag", "O(1) + O(2) on the projective line.",
       bundle=dict(P1, rank=2, transition={"U0,U1": [["z", 0], [0, "z^2"]]}),
       metrics=[{"U0": [["1/(1 + z*zbar)", 0], [0, "1/(1 + z*zbar)^2"]], "U1": [["1/(1 + w*wbar)", 0], [0, "1/(1 + w*wbar)^2"]]}],
       tasks=BUNDLE_TASKS + [{"op": "connection_search", "bound": 2, "expect_found": False}, "chern_connection",
                             {"op": "chern_weil", "degree": 1}, {"op": "chern_weil", "degree": 2}])
    fx("p1_leaf", "A transition depending on a leaf coordinate p1; not generalized holomorphic.",
       bundle=dict(P1, vars={"U0": ["z"], "U1": ["w"]}, leaf={"U0": ["p1"], "U1": ["p1"]}, rank=1,
                   transition={"U0,U1": [["p1*z"]]}),
       tasks=["check_gh_cocycle"])
    fx("p2_o(1)", "Hyperplane bundle on the projective plane, three charts.",
       bundle=dict(P2, rank=1, transition={"U0,U1": [["z1"]], "U0,U2": [["z2"]], "U1,U2": [["u2"]]}),
       metrics=[{"U0": [["1/(1 + z1*z1bar + z2*z2bar)"]], "U1": [["1/(1 + u1*u1bar + u2*u2bar)"]],
                 "U2": [["1/(1 + v1*v1bar + v2*v2bar)"]]}],
       tasks=BUNDLE_TASKS + ["chern_connection", {"op": "chern_weil", "degree": 1}])
    fx("p2_tangent", "Holomorphic tangent bundle of the projective plane, phi[i][j] = du_j/dz_i.",
       bundle=dict(P2, rank=2, transition={
           "U0,U1": [["-1/z1^2", "-z2/z1^2"], [0, "1/z1"]],
           "U0,U2": [[0, "1/z2"], ["-1/z2^2", "-z1/z2^2"]],
           "U1,U2": [["1/u2", 0], ["-u1/u2^2", "-1/u2^2"]],
       }),
       tasks=BUNDLE_TASKS)


if __name__ == "__main__":
    main()
