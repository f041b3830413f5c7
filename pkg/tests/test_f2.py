import mpmath as mp
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from humbert.config import EvalConfig
from humbert.errors import DomainError, ParameterPole, PoleError
from humbert.f2 import F2Params, confluence_limit, f2_asym_small_y, f2_reference
from humbert.psi1 import psi1_reference
from humbert.special import f_gamma, pochhammer

from conftest import rel

P = (0.9, 0.6, 0.4, 1.4, 1.2)
Q = (0.7, 1.3, 0.5, 1.9, 0.8)


def test_params_reject_lower_poles():
    with pytest.raises(ParameterPole):
        F2Params(1, 1, 1, -1, 1)


@pytest.mark.parametrize("method", ["double_series", "laplace"])
def test_collapses(method):
    a, b, bp, c, cp = P
    assert rel(f2_reference(P, 0.4, 0, method).value, mp.hyp2f1(a, b, c, 0.4)) < 1e-12
    assert rel(f2_reference(P, 0, -0.7, method).value, mp.hyp2f1(a, bp, cp, -0.7)) < 1e-12


def test_jaeger_collapse():
    a, b, bp, c, cp = P
    assert rel(f2_reference(P, -20, 0, "jaeger").value, mp.hyp2f1(a, b, c, -20)) < 1e-12


@settings(max_examples=20)
@given(st.floats(-2, 2), st.floats(-2, 2), st.floats(-2, 2), st.floats(0.3, 3), st.floats(0.3, 3),
       st.floats(-0.45, 0.45), st.floats(-0.45, 0.45))
def test_series_symmetry_and_oracle(a, b, bp, c, cp, x, y):
    v1 = f2_reference((a, b, bp, c, cp), x, y, "double_series")
    v2 = f2_reference((a, bp, b, cp, c), y, x, "double_series")
    with mp.workdps(40):
        ref = mp.appellf2(a, b, bp, c, cp, x, y)
    assert abs(v1.value - v2.value) <= 1e-13 * max(abs(ref), 1)
    assert abs(v1.value - ref) <= 3 * v1.abs_err + 1e-13 * abs(ref)


def test_laplace_vs_series():
    s = f2_reference(P, -0.3, 0.5, "double_series")
    l = f2_reference(P, -0.3, 0.5, "laplace")
    assert abs(s.value - l.value) <= 3 * (s.abs_err + l.abs_err) + 1e-14 * abs(s.value)


def test_jaeger_vs_laplace():
    j = f2_reference(P, -20, 0.3, "jaeger")
    l = f2_reference(P, -20, 0.3, "laplace", EvalConfig(target_rel_err=1e-15))
    assert rel(j.value, l.value) <= 1e-8


def test_jaeger_reordered_first_branch():
    # first branch summed k-major against the n-major evaluator
    a, b, bp, c, cp = (mp.mpf(v) for v in P)
    x, y = mp.mpf(-20), mp.mpf(0.3)
    with mp.workdps(40):
        def coef(n):
            return pochhammer(a, n) * pochhammer(1 - c + a, n) / (pochhammer(1 - b + a, n) * mp.factorial(n)) * x ** -n

        first = mp.fsum(pochhammer(bp, k) * y ** k / (pochhammer(cp, k) * mp.factorial(k))
                        * mp.fsum(pochhammer(-n, k) * coef(n) for n in range(k, 120)) for k in range(120))
        second = mp.fsum(coef2 * mp.hyp2f1(a - b - n, bp, cp, y) for n, coef2 in enumerate(
            pochhammer(b, n) * pochhammer(1 - c + b, n) / (pochhammer(1 - a + b, n) * mp.factorial(n)) * x ** -n
            for n in range(80)))
        total = f_gamma(c, b, a) * (-x) ** -a * first + f_gamma(c, a, b) * (-x) ** -b * second
    assert rel(f2_reference(P, x, y, "jaeger").value, total) < EvalConfig().target_rel_err


def test_method_domains():
    with pytest.raises(DomainError):
        f2_reference(P, 0.6, 0.6, "double_series")
    with pytest.raises(DomainError):
        f2_reference(P, 0.7, 0.5, "laplace")
    with pytest.raises(DomainError):
        f2_reference(P, -1.5, 0.8, "jaeger")
    with pytest.raises(PoleError):
        f2_reference((1.5, 0.5, 0.4, 1.4, 1.2), -20, 0.3, "jaeger")


# small-y expansion

def test_small_y_unit_coefficients():
    e = f2_asym_small_y(Q, -2, 4)
    assert e.coefficients["first"][0] == 1 and e.coefficients["second"][0] == 1


def test_small_y_bp_zero():
    a, b, c, cp, x = mp.mpf(0.7), mp.mpf(1.3), mp.mpf(1.9), mp.mpf(0.8), mp.mpf(-2)
    e = f2_asym_small_y((a, b, 0, c, cp), x, 4)
    for m, v in enumerate(e.coefficients["first"]):
        single = pochhammer(a, m) * pochhammer(1 - c + a, m) / (pochhammer(1 - b + a, m) * mp.factorial(m)) * x ** -m
        assert rel(v, single) < 1e-14


def test_small_y_vs_jaeger():
    x, y, N = mp.mpf(-2), mp.mpf(0.05), 3
    r = f2_asym_small_y(Q, x, N)(y)
    ref = f2_reference(Q, x / y, y, "jaeger").value
    assert abs(r.value - ref) <= 10 * r.envelope


def test_small_y_reduces_to_psi1_under_confluence():
    # b' = 1/eps with x -> eps x, y -> eps y turns the F2 coefficients into the Psi1 ones
    from humbert.psi1 import small_y_coefficients
    a, b, c, cp, x, eps = mp.mpf(0.7), mp.mpf(1.3), mp.mpf(1.9), mp.mpf(0.8), mp.mpf(-2), mp.mpf(1e-8)
    f = small_y_coefficients(a, b, c, cp, eps * x, 3, bp=1 / eps)
    p = small_y_coefficients(a, b, c, cp, x, 3)
    for m in range(3):
        assert rel(eps ** m * f[0][m], p[0][m]) < 1e-6


def test_small_y_integer_gap():
    with pytest.raises(PoleError):
        f2_asym_small_y((1.5, 0.5, 0.5, 1.9, 0.8), -2, 2)


# confluence

@pytest.mark.parametrize("target,base", [("psi1_from_f2", (0.9, 0.6, 1.4, 1.2)),
                                         ("psi2_from_f2", (0.9, 1.4, 1.2)),
                                         ("psi2_from_psi1", (0.9, 1.4, 1.2))])
def test_confluence_first_order(target, base):
    d1 = abs(confluence_limit(target, base, 0.2, 0.3, 1e-3).difference)
    d2 = abs(confluence_limit(target, base, 0.2, 0.3, 5e-4).difference)
    assert 1.5 <= d1 / d2 <= 3
    assert d1 < 1e-2


@pytest.mark.parametrize("eps", [0.1, 1e-2, 1e-4])
def test_confluence_y_zero_exact(eps):
    pair = confluence_limit("psi1_from_f2", (0.9, 0.6, 1.4, 1.2), 0.2, 0, eps)
    assert rel(pair.limit_side.value, mp.hyp2f1(0.9, 0.6, 1.4, 0.2)) < 1e-13
    assert rel(pair.target_side.value, mp.hyp2f1(0.9, 0.6, 1.4, 0.2)) < 1e-13


def test_confluence_eps_range():
    with pytest.raises(DomainError):
        confluence_limit("psi1_from_f2", (0.9, 0.6, 1.4, 1.2), 0.2, 0.3, 0.2)
    with pytest.raises(ValueError):
        confluence_limit("psi3", (0.9, 1.4, 1.2), 0.2, 0.3, 0.01)


def test_confluence_psi1_target_uses_reference():
    pair = confluence_limit("psi1_from_f2", (0.9, 0.6, 1.4, 1.2), 0.2, 0.3, 1e-3)
    assert rel(pair.target_side.value, psi1_reference((0.9, 0.6, 1.4, 1.2), 0.2, 0.3, "euler").value) < 1e-12
