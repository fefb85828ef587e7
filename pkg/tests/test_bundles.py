import mpmath
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from gcgw.bundles import (
    Chart,
    ChartForm,
    ChartNerve,
    TransitionCocycle,
    atiyah_cocycles,
    bott_dims,
    bott_dims_p0,
    cech_oracle_p1,
    check_gh_cocycle,
    chern_connection,
    chern_weil,
    chern_weil_total,
    coboundary_residuals,
    curvature,
    dual,
    gh_connection_search,
    is_connection,
    projective_line,
    residue_obstruction,
    tensor,
    to_principal,
    to_vector,
    transgression,
    triviality,
    validate_cocycle,
    zero_connection,
)
from gcgw.exterior import ContractViolation, StructuralError
from gcgw.io import load_problem

z, zbar, w = sympy.symbols("z zbar w")


def p1_nerve(leaf=(), laurent0=()):
    return ChartNerve(
        [Chart("U0", ("z",), tuple(leaf), frozenset(laurent0)), Chart("U1", ("w",), tuple(leaf))],
        {("U0", "U1"): {"w": "1/z", **{p: p for p in leaf}}},
    )


def p1(matrix, rank=1, **kw):
    return TransitionCocycle(p1_nerve(**kw), rank, {("U0", "U1"): matrix})


def p2(transitions, rank):
    return TransitionCocycle(load_problem("p2_o(1)").bundle.nerve, rank, transitions)


def dz(chart, coeff):
    return ChartForm.dz(chart, 0, coeff)


# --- cocycles -------------------------------------------------------------------


def test_degree_one_valid():
    assert validate_cocycle(projective_line(1)).valid


def test_constant_representation_valid():
    c = p2({("U0", "U1"): [[0, 1], [1, 0]], ("U0", "U2"): [[1, 1], [0, 1]], ("U1", "U2"): [[0, 1], [1, 1]]}, 2)
    # (0 1; 1 0)(0 1; 1 1) = (1 1; 0 1)
    assert validate_cocycle(c).valid


def test_inverse_identity_failure():
    nerve = p1_nerve()
    c = TransitionCocycle(nerve, 1, {("U0", "U1"): [["z"]], ("U1", "U0"): [["1/w"]]})
    rep = validate_cocycle(c)
    assert not rep.valid and rep.failures[0][:2] == ("inverse identity", "U0,U1")
    good = TransitionCocycle(nerve, 1, {("U0", "U1"): [["z"]], ("U1", "U0"): [["w"]]})
    assert validate_cocycle(good).valid


def test_triple_identity_failure_localised():
    c = p2({("U0", "U1"): [["z1"]], ("U0", "U2"): [["z1"]], ("U1", "U2"): [["u2"]]}, 1)
    rep = validate_cocycle(c)
    assert not rep.valid and rep.failures == [("triple identity", "U0,U1,U2", "phi_ab phi_bg != phi_ag")]


def test_singular_transition_rejected():
    with pytest.raises(ContractViolation, match="determinant"):
        validate_cocycle(p1([["z", "z"], ["1", "1"]], rank=2))


def test_missing_transition_and_shape():
    with pytest.raises(StructuralError):
        TransitionCocycle(p1_nerve(), 1, {})
    with pytest.raises(StructuralError):
        p1([["z"]], rank=2)


def test_gh_checks():
    assert check_gh_cocycle(projective_line(1)).gh
    rep = check_gh_cocycle(p1([["zbar"]]))
    assert not rep.gh and rep.offending == [("U0,U1", 0, 0, ["zbar"])]
    rep = check_gh_cocycle(p1([["p1*z"]], leaf=("p1",)))
    assert not rep.gh and rep.offending[0][3] == ["p1"]


def test_non_holomorphic_coordinate_change_rejected():
    with pytest.raises(ContractViolation):
        ChartNerve([Chart("A", ("z",)), Chart("B", ("w",))], {("A", "B"): {"w": "zbar"}})


# --- Atiyah cocycles ------------------------------------------------------------


def test_xi_degree_one():
    c = projective_line(1)
    at = atiyah_cocycles(c)
    U0 = c.nerve.chart("U0")
    assert at.xi[("U0", "U1")] == [[dz(U0, 1 / z)]]
    assert at.b[("U0", "U1")] == [[dz(U0, -1 / z)]]
    assert at.passed


def test_xi_constant_vanishes():
    at = atiyah_cocycles(p1([[2, 1], [0, 3]], rank=2))
    assert all(f.is_zero() for row in at.xi[("U0", "U1")] for f in row)


def test_xi_diagonal():
    c = p1([["z", 0], [0, "z^2"]], rank=2)
    U0 = c.nerve.chart("U0")
    xi = atiyah_cocycles(c).xi[("U0", "U1")]
    assert xi[0][0] == dz(U0, 1 / z) and xi[1][1] == dz(U0, 2 / z)
    assert xi[0][1].is_zero() and xi[1][0].is_zero()


def test_atiyah_rejects_non_gh():
    with pytest.raises(ContractViolation):
        atiyah_cocycles(p1([["zbar"]]))


@pytest.mark.parametrize("name", ["p1_o(1)", "p1_o(-1)", "p1_o(0)", "p1_rank2_flat", "p1_rank2_jordan", "p1_rank2_diag", "p2_o(1)", "p2_tangent"])
def test_sign_theorem_on_fixtures(name):
    at = atiyah_cocycles(load_problem(name).bundle)
    assert at.sign_identity and at.twisted_law


@settings(max_examples=10)
@given(st.integers(-3, 3), st.integers(-3, 3), st.integers(-2, 2))
def test_sign_and_twisted_law_p2(a, b, m):
    c = p2(
        {
            ("U0", "U1"): [[f"z1^{m}" if m >= 0 else f"1/z1^{-m}"]],
            ("U0", "U2"): [[f"z2^{m}" if m >= 0 else f"1/z2^{-m}"]],
            ("U1", "U2"): [[f"u2^{m}" if m >= 0 else f"1/u2^{-m}"]],
        },
        1,
    )
    assert validate_cocycle(c).valid
    at = atiyah_cocycles(c)
    assert at.sign_identity and at.twisted_law
    # rank 2 upper-triangular on P^1
    r2 = p1([[f"z^{abs(a)}", f"{b}*z"], [0, f"z^{abs(a) + 1}"]], rank=2)
    assert atiyah_cocycles(r2).passed


# --- connections ----------------------------------------------------------------


@pytest.mark.parametrize("matrix,rank", [([[1]], 1), ([[1, 1], [0, 1]], 2), ([[0, -1], [1, 0]], 2)])
def test_flat_cocycles_zero_connection(matrix, rank):
    c = p1(matrix, rank=rank)
    assert is_connection(c, zero_connection(c))
    res = gh_connection_search(c, degree_bound=2)
    assert res.found and is_connection(c, res.theta)


@pytest.mark.parametrize("bound", range(0, 9))
def test_degree_one_no_connection(bound):
    res = gh_connection_search(projective_line(1), degree_bound=bound)
    assert not res.found and res.theta is None
    assert "within" in res.certificate
    assert res.residue_obstruction[("U0", "U1")] == 1


def test_residue_matches_contour_integral():
    # independent route: (1 / 2 pi i) * contour integral of tr xi around the origin
    for name, expected in (("p1_o(1)", 1), ("p1_rank2_jordan", 2), ("p1_rank2_diag", 3), ("p1_o(-1)", -1)):
        c = load_problem(name).bundle
        tr = sum(atiyah_cocycles(c).xi[("U0", "U1")][j][j].terms[(0,)] for j in range(c.rank))
        f = sympy.lambdify(z, tr, "mpmath")
        val = mpmath.quad(lambda t: f(mpmath.expj(t)) * 1j * mpmath.expj(t), [0, 2 * mpmath.pi]) / (2j * mpmath.pi)
        assert abs(val - expected) < 1e-12
        assert residue_obstruction(c, atiyah_cocycles(c).xi)[("U0", "U1")] == expected


def test_laurent_ansatz_would_hide_the_obstruction():
    # dz/z is regular on C*, so a Laurent chart admits Theta_0 = -dz/z
    c = TransitionCocycle(p1_nerve(laurent0=("z",)), 1, {("U0", "U1"): [["z"]]})
    res = gh_connection_search(c, degree_bound=1)
    assert res.found
    assert res.theta["U0"][0][0] == dz(c.nerve.chart("U0"), -1 / z)


def test_negative_bound_rejected():
    with pytest.raises(ContractViolation):
        gh_connection_search(projective_line(1), degree_bound=-1)


def test_trivial_bundle_on_p2_has_connection():
    c = p2({("U0", "U1"): [[1]], ("U0", "U2"): [[1]], ("U1", "U2"): [[1]]}, 1)
    res = gh_connection_search(c, degree_bound=1)
    assert res.found and all(coboundary_residuals(c, res.theta)[ab][0][0].is_zero() for ab in c.overlaps())


# --- curvature and Chern-Weil ---------------------------------------------------


def single_chart(k=1):
    names = ("z",) if k == 1 else ("z1", "z2")
    return Chart("U", names)


def test_zero_connection_zero_curvature():
    c = projective_line(1)
    cd = curvature(zero_connection(c), c.nerve, c)
    assert all(f.is_zero() for M in cd.omega.values() for row in M for f in row)
    assert cd.equivariant


def test_curvature_zbar_dz():
    U = single_chart()
    cd = curvature({"U": [[dz(U, zbar)]]})
    # d_L(zbar dz) = dzbar ^ dz = -dz ^ dzbar
    assert cd.omega11["U"][0][0] == ChartForm(U, {(0, 1): -1})
    assert cd.omega["U"][0][0] == cd.omega11["U"][0][0]


def test_curvature_bracket_term():
    U = single_chart(2)
    d1, d2 = ChartForm.dz(U, 0), ChartForm.dz(U, 1)
    zero = ChartForm(U)
    cd = curvature({"U": [[zero, d1], [d2, zero]]})
    # D Theta = 0; Theta ^ Theta = diag(dz1^dz2, dz2^dz1)
    assert cd.omega["U"][0][0] == ChartForm(U, {(0, 1): 1})
    assert cd.omega["U"][1][1] == ChartForm(U, {(0, 1): -1})
    assert all(f.is_zero() for row in cd.omega11["U"] for f in row)


def test_curvature_rejects_wrong_bidegree():
    U = single_chart()
    with pytest.raises(ContractViolation):
        curvature({"U": [[ChartForm.dzbar(U, 0)]]})


def test_chern_weil_zero():
    U = single_chart()
    classes = chern_weil_total({"U": [[ChartForm(U)] * 2] * 2})
    assert classes[0].forms["U"] == ChartForm.function(U, 1)
    assert classes[1].forms["U"].is_zero() and classes[2].forms["U"].is_zero()


def test_chern_weil_rank_one_conventions():
    U = single_chart()
    om = {"U": [[ChartForm(U, {(0, 1): 5})]]}
    vec = chern_weil(om, 1)
    pri = chern_weil(om, 1, "principal")
    assert vec.forms["U"] == ChartForm(U, {(0, 1): -5}) and vec.exponent == 1
    assert pri.forms["U"] == ChartForm(U, {(0, 1): 5})
    assert vec.render("U").startswith("(2 pi i)^-1")
    with pytest.raises(ContractViolation):
        chern_weil(om, 1, "other")


def test_chern_weil_rank_two_diagonal():
    U = single_chart(2)
    w1 = ChartForm(U, {(0, 2): 1})  # dz1 ^ dz1bar
    w2 = ChartForm(U, {(1, 3): 1})  # dz2 ^ dz2bar
    zero = ChartForm(U)
    cls = chern_weil({"U": [[w1, zero], [zero, w2]]}, 2)
    assert cls.forms["U"] == w1.wedge(w2) and cls.exponent == 2 and cls.closed


def test_chern_weil_requires_closed():
    U = single_chart(2)
    z1bar = sympy.Symbol("z1bar")
    # d_L(z1bar dz2 ^ dz2bar) = dz1bar ^ dz2 ^ dz2bar
    with pytest.raises(ContractViolation, match="closed"):
        chern_weil({"U": [[ChartForm(U, {(1, 3): z1bar})]]}, 1)


def test_chern_connection_identity_metric():
    nerve = ChartNerve([single_chart()])
    cd = chern_connection(nerve, {"U": [[1, 0], [0, 1]]})
    assert all(f.is_zero() for row in cd.theta["U"] for f in row)
    assert all(f.is_zero() for row in cd.curvature.omega["U"] for f in row)


def test_chern_connection_fubini_study():
    U = single_chart()
    cd = chern_connection(ChartNerve([U]), {"U": [["1 + z*zbar"]]})
    # quotient rule by hand
    assert cd.theta["U"][0][0] == dz(U, zbar / (1 + z * zbar))
    assert cd.curvature.omega11["U"][0][0] == ChartForm(U, {(0, 1): -1 / (1 + z * zbar) ** 2})
    assert cd.type_10 and cd.curvature_11 and cd.skew_hermitian


def test_chern_connection_block_diagonal():
    U = single_chart()
    cd = chern_connection(ChartNerve([U]), {"U": [[1, 0], [0, "1 + z*zbar"]]})
    T = cd.theta["U"]
    assert T[0][0].is_zero() and T[0][1].is_zero() and T[1][0].is_zero()
    assert T[1][1] == dz(U, zbar / (1 + z * zbar))


def test_chern_connection_rejections():
    U = single_chart()
    with pytest.raises(ContractViolation, match="hermitian"):
        chern_connection(ChartNerve([U]), {"U": [["1 + z"]]})
    L = Chart("U", ("z",), ("p1",))
    with pytest.raises(ContractViolation, match="leaf"):
        chern_connection(ChartNerve([L]), {"U": [["1 + p1*p1"]]})


def test_first_chern_form_integrates_to_one():
    prob = load_problem("p1_o(1)")
    c = prob.bundle
    cd = chern_connection(c.nerve, prob.metrics[0], c)
    assert cd.metric_law and cd.is_connection and cd.curvature.equivariant
    cls = chern_weil(cd.curvature.omega11, 1, cocycle=c)
    assert cls.closed and cls.glues
    coeff = cls.forms["U0"].terms[(0, 1)]
    # dz ^ dzbar = -2i dx ^ dy; integrate (2 pi i)^-1 coeff (-2i) over the plane in polar form
    r, t = sympy.symbols("r t", positive=True)
    dens = (coeff * (-2 * sympy.I) / (2 * sympy.pi * sympy.I)).subs({z: r * sympy.exp(sympy.I * t), zbar: r * sympy.exp(-sympy.I * t)})
    total = sympy.integrate(sympy.integrate(sympy.simplify(dens) * r, (r, 0, sympy.oo)), (t, 0, 2 * sympy.pi))
    assert sympy.simplify(total) == 1


def test_transgression_two_metrics():
    prob = load_problem("p1_o(1)")
    c = prob.bundle
    th0 = chern_connection(c.nerve, prob.metrics[0], c).theta
    th1 = chern_connection(c.nerve, prob.metrics[1], c).theta
    assert is_connection(c, th0) and is_connection(c, th1)
    rep = transgression(th0, th1, 1, cocycle=c)
    assert rep.holds and rep.glues and rep.passed
    assert not rep.difference["U0"].is_zero()


# --- Picard -----------------------------------------------------------------------


def test_tensor_and_dual():
    a, b = projective_line(2), projective_line(3)
    assert tensor(a, b).phi == projective_line(5).phi
    t = triviality(tensor(a, dual(a)))
    assert t.trivial is True


@pytest.mark.parametrize("m", range(-4, 5))
def test_monomial_triviality(m):
    v = triviality(projective_line(m))
    assert v.trivial is (m == 0)
    if m:
        assert "residue" in v.reason


def test_constant_line_is_trivial_with_units():
    v = triviality(p1([["3"]]))
    assert v.trivial and v.units == {"U0": "1", "U1": "1/3"}


def test_picard_rank_check():
    with pytest.raises(ContractViolation):
        dual(p1([[1, 0], [0, 1]], rank=2))


@given(st.integers(-5, 5), st.integers(-5, 5))
def test_picard_group_law(m, n):
    assert tensor(projective_line(m), projective_line(n)).phi == projective_line(m + n).phi
    assert tensor(projective_line(m), dual(projective_line(m))).phi == projective_line(0).phi


def test_principal_round_trip():
    c = load_problem("p2_tangent").bundle
    P = to_principal(c)
    assert P.group == "GL(2,C)"
    back = to_vector(P)
    assert back.phi == c.phi and back.rank == 2


# --- Bott table and the Cech oracle -----------------------------------------------


def test_bott_spot_values():
    assert bott_dims(1, 2, 0, 0) == 3
    assert bott_dims(1, -3, 0, 1) == 2
    assert bott_dims(2, 0, 1, 1) == 1


def test_bott_p0_specialisation():
    for n in range(1, 5):
        for m in range(-7, 7):
            for q in range(n + 1):
                assert bott_dims(n, m, 0, q) == bott_dims_p0(n, m, q)


@pytest.mark.parametrize("m", range(-6, 7))
def test_bott_matches_oracle(m):
    for q in (0, 1):
        assert bott_dims(1, m, 0, q) == cech_oracle_p1(m, q)
        assert bott_dims(1, m, 1, q) == cech_oracle_p1(m, q, p=1)


def test_oracle_examples():
    assert cech_oracle_p1(2, 0) == 3
    assert (cech_oracle_p1(-1, 0), cech_oracle_p1(-1, 1)) == (0, 0)
    assert cech_oracle_p1(-3, 1) == 2


def test_oracle_truncation_guard():
    with pytest.raises(ContractViolation):
        cech_oracle_p1(4, 0, truncation_degree=5)
    assert cech_oracle_p1(4, 0, truncation_degree=6) == 5


@given(st.integers(1, 12))
def test_vanishing_instance(m):
    # p + q > 1 on the line: only p = q = 1
    assert cech_oracle_p1(m, 1, p=1) == 0


def test_bott_independent_p0_oracle():
    # H^0(P^n, O(m)) counts monomials of degree m in n+1 variables
    for n in range(1, 4):
        for m in range(0, 5):
            count = sum(1 for e in __import__("itertools").product(range(m + 1), repeat=n + 1) if sum(e) == m)
            assert bott_dims(n, m, 0, 0) == count
