import pytest
from hypothesis import settings

from isotwist import FieldSpec, TwistedCurve, parse_poly
from isotwist.search import _polys_of_degree
from isotwist.poly import is_squarefree

settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile("default")

SMALL_ORDERS = [3, 5, 7, 9, 11, 13, 25, 27, 49]


@pytest.fixture(scope="session")
def gf3():
    return FieldSpec(3)


@pytest.fixture(scope="session")
def gf7():
    return FieldSpec(7)


def twist(field, A, f):
    """TwistedCurve from text; field is a FieldSpec or an order."""
    spec = field if isinstance(field, FieldSpec) else FieldSpec.from_order(field)
    return TwistedCurve.from_polys(parse_poly(A, spec, "t"), parse_poly(f, spec, "x"))


def constructed_curves(spec, f_text, degF=3, degG=2):
    """Curves A y^2 = f(x) built to carry a point: A = f(F) / G^2 when that is square-free.

    Independent of the search module's pruning: plain division over all monic F and G.
    """
    f = parse_poly(f_text, spec, "x")
    out = []
    Gs = list(_polys_of_degree(spec, degG, [1]))
    for F in _polys_of_degree(spec, degF, [1]):
        H = f.compose(F)
        for G in Gs:
            A, r = divmod(H, G * G)
            if r.is_zero() and A.degree % 2 == 1 and A.degree > 1 and is_squarefree(A):
                out.append((TwistedCurve.from_polys(A, f), F, G))
    return out


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
