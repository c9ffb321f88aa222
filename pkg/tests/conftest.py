import itertools
import time
from fractions import Fraction

import pytest

from ratsos.numberfield import FieldElement, make_field
from ratsos.polyring import SparsePoly, norm_form, parse_poly, vandermonde_form

QUARTIC = [1, -1, 0, 0, 1]  # t^4 - t + 1
CUBIC = [-1, -4, 0, 1]  # t^3 - 4t - 1

QUARTIC_FORM = (
    "x0^4 + x0*x1^3 + x1^4 - 3*x0^2*x1*x2 - 4*x0*x1^2*x2"
    " + 2*x0^2*x2^2 + x0*x2^3 + x1*x2^3 + x2^4"
)


@pytest.fixture(scope="session")
def quartic():
    return make_field(QUARTIC)


@pytest.fixture(scope="session")
def cubic():
    return make_field(CUBIC)


@pytest.fixture(scope="session")
def vandermonde_l(quartic):
    return vandermonde_form(quartic, 3)


@pytest.fixture(scope="session")
def quartic_form():
    return parse_poly(QUARTIC_FORM, 3)


def poly(text, nvars=3, K=None):
    return parse_poly(text, nvars, K)


def frac_list(xs):
    return [Fraction(x) for x in xs]


# rational-resolvent difference of squares: 4 f = A^2 - b B^2 with b a root of CUBIC
DIFF_A = "2*x0^2 + a*x1^2 - x1*x2 + (2 + 1/a)*x2^2"
DIFF_B = "2*x0*x1 - x1^2/a + 2*x0*x2/a + a*x1*x2 - x2^2"

G_FORMS = (
    "4*x0^3 + x1^3 + x2^3 + 4*x0*x2^2 - 4*x1^2*x2 - 6*x0*x1*x2",
    "-4*x0^3 + 3*x1^3 + 4*x2^3 - 3*x0^2*x1 - x0*x1^2 + x0^2*x2 - x0*x2^2"
    " + 4*x1^2*x2 + 3*x1*x2^2 - 2*x0*x1*x2",
    "-4*x1^3 + 3*x2^3 - 3*x0^2*x1 - 7*x0*x1^2 + 7*x0^2*x2 + 3*x0*x2^2 + 3*x1*x2^2 + 8*x0*x1*x2",
)
H_FORM = "32*x0^2 + 24*x0*x1 - 8*x0*x2 + 26*x1^2 + 16*x1*x2 + 26*x2^2"


@pytest.fixture(scope="session")
def diff_witness(cubic, quartic_form):
    from ratsos.certificate import DiffOfSquaresWitness

    A = parse_poly(DIFF_A, 3, cubic)
    B = parse_poly(DIFF_B, 3, cubic)
    return DiffOfSquaresWitness(cubic, quartic_form, A, B, cubic.gen, Fraction(4))


@pytest.fixture(scope="session")
def isotropic_quartic(quartic):
    from ratsos.denominator import IsotropicVector

    a = quartic.gen
    return IsotropicVector(quartic, (quartic.one, a * a + a - 1, a * a - a))


def _conjugate(g, K):
    return SparsePoly(g.nvars, {e: FieldElement(K, (c.coords[0], -c.coords[1])) for e, c in g.terms.items()}, K)


def random_rational_sos(rng, K):
    """2-4 squares over a quadratic field K whose sum is rational.

    Conjugate pairs of random forms, plus one rational form when the count is odd.
    Forms are homogeneous of degree <= 2 in 1-3 variables.
    """
    from ratsos.certificate import SOSCertificate

    nvars = rng.randint(1, 3)
    deg = rng.randint(0, 2)
    monos = [e for e in itertools.product(range(deg + 1), repeat=nvars) if sum(e) == deg]

    def coeff(irrational):
        b = Fraction(rng.randint(-3, 3)) if irrational else Fraction(0)
        return FieldElement(K, (Fraction(rng.randint(-3, 3)), b))

    m = rng.randint(2, 4)
    gs = []
    for _ in range(m // 2):
        g = SparsePoly(nvars, {e: coeff(True) for e in monos}, K)
        gs += [g, _conjugate(g, K)]
    if m % 2:
        gs.append(SparsePoly(nvars, {e: coeff(False) for e in monos}, K))
    target = sum((g * g for g in gs), SparsePoly.zero(nvars, K))
    return SOSCertificate(target, tuple((Fraction(1), g) for g in gs))


# --- acceptance reporting ------------------------------------------------------------

_CRITERIA = []


@pytest.fixture
def timed(request):
    """Times the test body; fails at teardown when the criterion runtime limit is exceeded."""
    marker = request.node.get_closest_marker("criterion")
    start = time.perf_counter()
    yield start
    elapsed = time.perf_counter() - start
    request.node.elapsed = elapsed
    if marker is not None:
        limit = marker.args[1]
        assert elapsed < limit, f"took {elapsed:.2f} s, limit {limit} s"


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if report.when in ("setup", "call") and (report.when == "call" or not report.passed):
        item.criterion_outcome = report.outcome
    if report.when == "teardown":
        result = "failed" if report.failed else getattr(item, "criterion_outcome", "failed")
        _CRITERIA.append((*marker.args, result, getattr(item, "elapsed", None)))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number, limit, title, outcome, elapsed in sorted(_CRITERIA):
        verdict = {"passed": "PASS", "skipped": "SKIP"}.get(outcome, "FAIL")
        took = f"{elapsed:.2f} s" if elapsed is not None else "n/a"
        terminalreporter.write_line(f"{verdict}  criterion {number:>2}: {title} ({took}, limit {limit} s)")
