import mpmath as mp
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from humbert.config import EvalConfig
from humbert.errors import DomainError, ParameterPole, PoleError
from humbert.psi2 import (METHODS, BetaCoordinates, Psi2Params, UniformExpansionSpec, beta_coefficients,
                          lambda_n, lambda_n_minform, psi2_asym_beta, psi2_asym_left, psi2_asym_right,
                          psi2_reference, right_plane_prefactor, uniform_1f1, uniform_2f2)
from humbert.special import kummer_large_z

from conftest import rel

P = (0.7, 1.3, 0.9)


def oracle(p, x, y, dps=40):
    a, c, cp = p
    with mp.workdps(dps):
        return mp.hyper2d({"m+n": [a]}, {"m": [c], "n": [cp]}, x, y)


def test_params_reject_lower_poles():
    with pytest.raises(ParameterPole):
        Psi2Params(0.5, -1, 1)


@pytest.mark.parametrize("method", METHODS)
def test_x_zero_is_1f1(method):
    v = psi2_reference(P, 0, -2.5, method).value
    assert rel(v, mp.hyp1f1(0.7, 0.9, -2.5)) < 1e-12


@pytest.mark.parametrize("method", ["double_series", "f1f1_series", "kummer_series"])
def test_symmetry(method):
    a, c, cp = P
    v1 = psi2_reference((a, c, cp), 0.5, -0.4, method).value
    v2 = psi2_reference((a, cp, c), -0.4, 0.5, method).value
    assert rel(v1, v2) < 1e-14


def test_mb_vs_series():
    mb = psi2_reference(P, 0.5, -3, "mb_integral")
    ds = psi2_reference(P, 0.5, -3, "double_series")
    assert rel(mb.value, ds.value) <= 1e-8
    assert abs(mb.value - ds.value) <= 3 * (mb.abs_err + ds.abs_err) + 1e-14 * abs(ds.value)


@pytest.mark.parametrize("y", [-0.2, mp.mpc(-0.25, 0.1), -0.3])
def test_mb_small_y_residue_region(y):
    mb = psi2_reference(P, 1.5, y, "mb_integral")
    assert rel(mb.value, oracle(P, 1.5, y)) < 1e-10


def test_mb_outside_sector():
    with pytest.raises(DomainError):
        psi2_reference(P, 0.5, 3, "mb_integral")


@settings(max_examples=15)
@given(st.floats(-2, 2), st.floats(0.3, 3), st.floats(0.3, 3), st.floats(-8, 8), st.floats(-8, 8))
def test_series_methods_agree(a, c, cp, x, y):
    ref = oracle((a, c, cp), x, y)
    for method in ("double_series", "f1f1_series", "kummer_series"):
        r = psi2_reference((a, c, cp), x, y, method)
        assert abs(r.value - ref) <= 3 * r.abs_err + 1e-13 * abs(ref), method


# left half-plane

def test_left_leading_term():
    e = psi2_asym_left(P, 0.5, 1)
    y = mp.mpf(-50)
    assert rel(e(y).value, mp.gamma(0.9) / mp.gamma(0.2) * 50 ** -0.7) < 1e-14


def test_left_x_zero_reduces_to_kummer():
    e = psi2_asym_left(P, 0, 4)
    y = mp.mpf(-40)
    k = kummer_large_z(0.7, 0.9, y, 4)
    assert rel(e(y).value, k.branch_value("algebraic")) < 1e-14


def test_left_accuracy():
    x, y = 0.5, mp.mpf(-200)
    e = psi2_asym_left(P, x, 3)(y)
    ref = psi2_reference(P, x, y, "kummer_series", EvalConfig(target_rel_err=1e-15)).value
    assert abs(e.value - ref) <= 10 * e.envelope


def test_left_degenerate():
    with pytest.raises(PoleError):
        psi2_asym_left((2, 1.3, 1), 0.5, 2)
    e = psi2_asym_left((2, 1.3, 1), 0.5, 2, allow_degenerate=True)
    assert e(-50).value == 0 and e(-50).extras["degenerate"]


def test_left_sector():
    with pytest.raises(DomainError):
        psi2_asym_left(P, 0.5, 2)(50)


# right half-plane

def test_right_prefactor():
    assert rel(right_plane_prefactor(1, 1, 1), 1 / (2 * mp.sqrt(mp.pi))) < 1e-15


def test_right_variants_agree_at_unit_scale():
    p = (0.8, 1.2, 1.1)
    s = psi2_asym_right(p, (2, 3, 1), "scaled_t")
    l = psi2_asym_right(p, (2, 3), "large_y")
    assert rel(s.value, l.value) < 1e-14


def test_right_log_space_convergence():
    p = (0.8, 1.2, 1.1)
    diffs = []
    for t in (20, 40, 80):
        e = psi2_asym_right(p, (1, 1, t))
        ref = psi2_reference(p, t, t, "double_series").value
        diffs.append(abs(e.log_value - mp.log(ref)))
    assert diffs[0] < 0.1 and diffs[0] > diffs[1] > diffs[2]
    assert diffs[2] < 0.025


def test_right_no_overflow():
    e = psi2_asym_right((0.8, 1.2, 1.1), (1, 1, 1e6))
    assert mp.re(e.log_value) > 1e6


def test_right_sector():
    with pytest.raises(DomainError):
        psi2_asym_right(P, (-1, 1, 10))


# lambda_n

def test_lambda_examples():
    assert (lambda_n(2), lambda_n(5), lambda_n(6)) == (1, 2, 4)


@pytest.mark.parametrize("n", range(41))
def test_lambda_closed_form(n):
    assert lambda_n(n) == lambda_n_minform(n)


# uniform expansions

def test_uniform_2f2_unshifted_matches_direct():
    a, b, c, d, z = 0.5, 0.9, 1.3, 1.1, 60
    e = uniform_2f2(a, b, c, d, UniformExpansionSpec(0, 4.4, z))
    with mp.workdps(60):
        direct = mp.hyp2f2(a, b, c, d, -z)
    assert abs(e.value - direct) <= 10 * e.envelope
    assert e.extras["k_max_S"] == 3 and e.extras["k_max_T"] == 3


def test_uniform_2f2_envelope_lambda_scaling():
    a, b, c, d, z = 0.5, 0.9, 1.3, 1.1, 40
    e2 = uniform_2f2(a, b, c, d, UniformExpansionSpec(2, 4.4, z))
    e6 = uniform_2f2(a, b, c, d, UniformExpansionSpec(6, 4.4, z))
    assert e2.extras["normalized_envelope"] / e6.extras["normalized_envelope"] == 4


def test_uniform_2f2_example():
    a, b, c, d, z = 0.5, 0.9, 1.3, 1.1, 40
    e = uniform_2f2(a, b, c, d, UniformExpansionSpec(3, 4.4, z))
    with mp.workdps(60):
        direct = mp.hyp2f2(a, b - 3, c, d, -z)
    assert abs(e.value - direct) <= 10 * e.envelope


def test_uniform_2f2_preconditions():
    with pytest.raises(DomainError):
        uniform_2f2(0.5, 0.9, 1.3, 1.1, UniformExpansionSpec(0, 4.5, 40))
    with pytest.raises(DomainError):
        uniform_2f2(0.5, 0.9, 1.3, 1.1, UniformExpansionSpec(0, 1.0, 40))
    with pytest.raises(PoleError):
        uniform_2f2(0.5, 1.5, 1.3, 1.1, UniformExpansionSpec(0, 4.4, 40))
    with pytest.raises(DomainError):
        uniform_2f2(0.5, 0.9, 1.3, 1.1, UniformExpansionSpec(0, 4.4, 39.12))


def test_uniform_1f1_unshifted_is_kummer_algebraic():
    b, d, z = 0.9, 1.1, mp.mpf(30)
    e = uniform_1f1(b, d, 0, z, 3)
    k = kummer_large_z(b, d, -z, 4)
    assert rel(e.value, k.branch_value("algebraic")) < 1e-14


def test_uniform_1f1_envelope_n_scaling():
    b, d, z = 0.9, 1.1, 30
    r = uniform_1f1(b, d, 4, z, 3).envelope / uniform_1f1(b, d, 2, z, 3).envelope
    expected = mp.mpf(5 / 3) ** -0.9 * 12 * lambda_n(2) / lambda_n(4)
    assert rel(r, expected) < 1e-14


def test_uniform_1f1_example():
    b, d, z = 0.9, 1.1, 30
    e = uniform_1f1(b, d, 2, z, 3)
    with mp.workdps(50):
        direct = mp.hyp1f1(b - 2, d, -z)
    assert abs(e.value - direct) <= 10 * e.envelope


def test_uniform_1f1_strict_order():
    with pytest.raises(DomainError):
        uniform_1f1(2.5, 1.1, 1, 30, 2)


# beta expansion

def test_beta_forced_coefficients():
    a, c, cp, beta = mp.mpf(0.8), mp.mpf(1.3), mp.mpf(1.1), mp.mpf(1.7)
    b1, b2, b3 = beta_coefficients(a, c, cp, beta, 3)
    assert b1[0] == 1
    assert rel(b2[0], mp.hyp0f1(cp, beta)) < 1e-14
    assert rel(b3[1], (1 - a) * (c - a)) < 1e-14


@pytest.mark.parametrize("x", [200, 400, 800])
def test_beta_vs_double_series(x):
    p = (0.8, 1.3, 1.1)
    e = psi2_asym_beta(p, BetaCoordinates(x, 1), 3)
    ref = psi2_reference(p, x, mp.mpf(1) / x, "double_series").value
    assert abs(e.value - ref) <= 10 * e.envelope


@pytest.mark.parametrize("arg", [0, 0.9])
def test_beta_self_consistency(arg):
    p = (0.8, 1.3, 1.1)
    x = 200 * mp.expjpi(arg)
    e3 = psi2_asym_beta(p, BetaCoordinates(x, 1), 3)
    e4 = psi2_asym_beta(p, BetaCoordinates(x, 1), 4)
    assert abs(e3.value - e4.value) <= 10 * e3.envelope


def test_beta_preconditions():
    with pytest.raises(DomainError):
        psi2_asym_beta((0.8, 1.3, 1.1), BetaCoordinates(200, 1), 1)
    with pytest.raises(DomainError):
        psi2_asym_beta((0.8, 1.3, 1.1), BetaCoordinates(-200, 1), 3)
    with pytest.raises(DomainError):
        psi2_asym_beta((0.8, 1.3, 1.1), BetaCoordinates(200, 0), 3)
