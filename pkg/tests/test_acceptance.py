"""The eleven acceptance criteria at their stated tolerances, one PASS/FAIL line each.

Run under pytest (lines are repeated in the terminal summary) or directly with
``python3 tests/test_acceptance.py``.
"""

import functools
import time

import mpmath as mp
import pytest

from humbert.config import EvalConfig
from humbert.f2 import f2_reference
from humbert.harness import beta_identity_check
from humbert.harness import run_suite as _run_suite
from humbert.psi2 import lambda_n, lambda_n_minform

RESULTS: dict[int, str] = {}


@functools.cache
def run_suite(name):
    # criteria 2 and 3 share one cross-psi1 run
    return _run_suite(name)


def _rows_ok(rows):
    return bool(rows) and all(r.passed for r in rows)


def crit_1():
    rep = run_suite("henkel")
    devs = [r.measured for r in rep.rows_for("deviation") if "z=0.0001" in r.grid_point]
    return rep.passed and len(devs) == 3 and max(devs) <= 1e-3, f"max deviation at z=1e-4: {max(devs):.2e}", rep


def crit_2():
    rep = run_suite("cross-psi1")
    rows = [r for r in rep.rows if not r.check.startswith("far_x/")]
    worst = [r for r in rows if r.check == "max_discrepancy"][0]
    npts = len({r.grid_point for r in rows if r.check != "max_discrepancy"})
    ok = _rows_ok(rows) and npts == 20 and worst.measured <= 1e-8
    return ok, f"{npts} points, max pairwise rel discrepancy {worst.measured:.2e}", rep


def crit_3():
    rep = run_suite("cross-psi1")
    rows = [r for r in rep.rows if r.check.startswith("far_x/")]
    pairs = [r for r in rows if r.check == "far_x/continuation_vs_laplace"]
    worst = max(r.measured for r in pairs)
    ok = _rows_ok(rows) and len(pairs) == 12 and worst <= 1e-8
    return ok, f"{len(pairs)} points, max rel discrepancy {worst:.2e}", rep


def crit_4():
    rep = run_suite("cross-psi2")
    pairs = [r for r in rep.rows if "mb_integral" in r.check]
    npts = len({r.grid_point for r in pairs})
    worst = max(r.measured for r in pairs)
    ok = rep.passed and npts == 10 and worst <= 1e-8
    return ok, f"{npts} points, max mb-vs-series rel discrepancy {worst:.2e}", rep


DECAY = ("decay-psi1-smally", "decay-psi2-left", "decay-psi2-beta", "decay-f2-smally")


def crit_5():
    parts, ok, reps = [], True, []
    for name in DECAY:
        rep = run_suite(name)
        slopes = rep.rows_for("slope")
        ok &= rep.passed and len(slopes) == 2 and not rep.rows_for("below_noise_floor")
        parts.append(f"{name.removeprefix('decay-')}: " + ", ".join(
            f"{r.measured:.2f} vs {(r.lo + r.hi) / 2:.2f}" for r in slopes))
        reps.append(rep)
    return ok, "; ".join(parts), reps


def crit_6():
    rep = run_suite("glauber")
    lead = rep.rows_for("leading_coefficient")[0]
    return rep.passed, f"|fit - pi/2| = {lead.measured:.1e}, residual bound rows {len(rep.rows_for('scaled_residual'))}", rep


def crit_7():
    rep = run_suite("uniform-2f2")
    rem = rep.rows_for("remainder")
    worst = max(r.measured / r.hi for r in rem)
    ns = sorted(int(r.grid_point.split("=")[1]) for r in rem)
    ok = _rows_ok(rem) and ns == [0, 1, 5, 10] and _rows_ok(rep.rows_for("lambda_scaling"))
    return ok, f"n={ns}, worst error/(10 x envelope) = {worst:.2f}", rep


def crit_8():
    rep = run_suite("saran")
    errs = rep.rows_for("thm_log_error")
    tail = [r for r in errs if float(r.grid_point.split("=")[1]) >= 20]
    decreasing = all(b.measured < a.measured for a, b in zip(tail, tail[1:]))
    slope = rep.rows_for("saran_slope")[0]
    ok = rep.passed and len(tail) == 3 and decreasing and slope.lo <= slope.measured <= slope.hi
    return ok, f"Saran-form slope {slope.measured:.3f} (target {(slope.lo + slope.hi) / 2:.2f} +- 0.15)", rep


def crit_9():
    rep = run_suite("confluence")
    ratios = rep.rows_for("ratio")
    ok = rep.passed and len(ratios) == 3
    return ok, "ratios " + ", ".join(f"{r.measured:.3f}" for r in ratios), rep


def crit_10():
    p = (0.9, 0.6, 0.4, 1.4, 1.2)
    j = f2_reference(p, -20, 0.3, "jaeger")
    l = f2_reference(p, -20, 0.3, "laplace", EvalConfig(target_rel_err=1e-15))
    d = float(abs(j.value - l.value) / abs(l.value))
    return d <= 1e-8, f"rel difference {d:.2e}", None


def crit_11():
    lam_ok = all(lambda_n(n) == lambda_n_minform(n) for n in range(41))
    rep = beta_identity_check((0.8, 1.3, 1.1), 1.0)
    worst = max(r.measured for r in rep.rows)
    return lam_ok and rep.passed, f"lambda_n exact for n<=40: {lam_ok}; max identity error {worst:.1e}", rep


CRITERIA = {
    1: ("Henkel limit", crit_1),
    2: ("cross-method Psi1 (20 points)", crit_2),
    3: ("Psi1 continuation vs Laplace (12 points)", crit_3),
    4: ("Psi2 Mellin-Barnes vs double series (10 points)", crit_4),
    5: ("decay orders", crit_5),
    6: ("Glauber universality", crit_6),
    7: ("uniform 2F2", crit_7),
    8: ("Psi2 right plane and Saran-type slope", crit_8),
    9: ("confluence limits", crit_9),
    10: ("Jaeger vs Laplace F2", crit_10),
    11: ("lambda_n and beta coefficient identities", crit_11),
}

def evaluate(k):
    title, fn = CRITERIA[k]
    t0 = time.perf_counter()
    ok, detail, _ = fn()
    line = f"criterion {k:2d} {'PASS' if ok else 'FAIL'}  {title}: {detail} ({time.perf_counter() - t0:.1f} s)"
    RESULTS[k] = line
    print(line)
    return ok, line


@pytest.mark.parametrize("k", sorted(CRITERIA))
def test_acceptance(k):
    ok, line = evaluate(k)
    assert ok, line


if __name__ == "__main__":
    import sys
    sys.exit(0 if all([evaluate(k)[0] for k in sorted(CRITERIA)]) else 1)
