from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from gcgw.exterior import BasedSpace, GaussianRational, GeneralizedVector, Multivector

settings.register_profile(
    "gcgw",
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("gcgw")

small_fraction = st.builds(Fraction, st.integers(-5, 5), st.integers(1, 4))
gaussian = st.builds(GaussianRational, small_fraction, small_fraction)
real_gaussian = st.builds(GaussianRational, small_fraction)


@st.composite
def multivectors(draw, space: BasedSpace, degree=None, real=False, max_terms=5):
    n = space.dim
    coeff = real_gaussian if real else gaussian
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        if degree is None:
            size = draw(st.integers(0, n))
        else:
            size = degree
        key = tuple(sorted(draw(st.lists(st.integers(0, n - 1), min_size=size, max_size=size, unique=True)))) if n else ()
        terms[key] = draw(coeff)
    return Multivector(space, terms)


@st.composite
def generalized_vectors(draw, space: BasedSpace, real=False):
    coeff = real_gaussian if real else gaussian
    n = space.dim
    return GeneralizedVector(space, draw(st.lists(coeff, min_size=n, max_size=n)), draw(st.lists(coeff, min_size=n, max_size=n)))


# acceptance criteria report: number -> (passed, detail)
ACCEPTANCE = {}


def record(number: int, passed: bool, detail: str) -> None:
    ACCEPTANCE[number] = (bool(passed), detail)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
