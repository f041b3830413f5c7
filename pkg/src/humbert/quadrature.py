"""Adaptive quadrature for the three integral shapes used by the evaluators.

The workhorse is a tanh-sinh rule on [0, 1] with the algebraic endpoint
factor ``t**(alpha-1) * (1-t)**(beta-1)`` folded into the node weights in log
form, so exponents close to zero and integrands far outside the double range
are both harmless.  Half-line and contour integrals are cut into panels that
are each handled by the same rule.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import mpmath as mp

from .config import EvalConfig
from .errors import DivergentTail, NoConvergence, SingularEndpoint, SlowDecay

DECAY_CLASSES = ("exponential", "gaussian", "gamma-ratio")

_MIN_LEVEL = 3
_MAX_LEVEL = 9
_MAX_DEPTH = 8


@dataclass
class IntegrandSpec:
    """An integrand together with what the rules need to know about it.

    On the unit interval the integrand is
    ``t**(alpha-1) * (1-t)**(beta-1) * evaluator(t)``; on the half-line it is
    ``t**(alpha-1) * evaluator(t)`` (``beta`` unused); on a vertical line it is
    ``evaluator(s)`` at complex ``s``.  ``hints`` may carry ``"peak"``,
    ``"width"`` or ``"max_panel"`` to steer panel placement.
    """

    evaluator: Callable
    endpoint_exponents: tuple = (1, 1)
    decay_class: str = "exponential"
    hints: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.decay_class not in DECAY_CLASSES:
            raise ValueError(f"unknown decay class {self.decay_class!r}")


@dataclass
class QuadResult:
    value: object
    abs_err_est: object
    evals: int


class _Unconverged(Exception):
    def __init__(self, evals):
        super().__init__("panel not converged")
        self.evals = evals


class _Budget:
    def __init__(self, limit):
        self.limit = limit
        self.used = 0

    def spend(self, n):
        self.used += n
        if self.used > self.limit:
            raise NoConvergence(f"quadrature exceeded {self.limit} integrand evaluations")


def _log_cut(tol) -> float:
    return float(-mp.log(tol)) + 8.0


def _tanh_sinh(F, ea, eb, tol, abs_floor, budget: _Budget):
    """Integral of tau^(ea-1) (1-tau)^(eb-1) F(tau, 1-tau) over [0, 1].

    Returns ``(value, err)``; raises ``_Unconverged`` after the finest level.
    """
    amin = min(mp.re(ea), mp.re(eb))
    umax = mp.asinh(_log_cut(tol) / (mp.pi * amin))

    def node(u):
        s = mp.pi * mp.sinh(u)
        lt = -mp.log1p(mp.exp(-s))
        lo = -mp.log1p(mp.exp(s))
        w = mp.pi * mp.cosh(u) * mp.exp(ea * lt + eb * lo)
        return w * F(mp.exp(lt), mp.exp(lo))

    total = node(mp.mpf(0))
    absum = abs(total)
    kmax = int(mp.floor(umax))
    n = 1
    for k in range(1, kmax + 1):
        for u in (k, -k):
            v = node(mp.mpf(u))
            total += v
            absum += abs(v)
            n += 1
    budget.spend(n)
    prev = total
    h = mp.mpf(1)
    for level in range(1, _MAX_LEVEL + 1):
        h /= 2
        kmax = int(mp.floor(umax / h))
        added = 0
        for k in range(1, kmax + 1, 2):
            u = k * h
            for v in (node(u), node(-u)):
                total += v
                absum += abs(v)
            added += 2
        budget.spend(added)
        est = h * total
        diff = abs(est - prev)
        prev = est
        if level >= _MIN_LEVEL:
            scale = max(abs(est), abs_floor)
            floor = mp.mp.eps * h * absum * 16
            if diff <= tol * scale or diff <= floor:
                # the node range is cut at a weight of about tol, so claim no better than that
                return est, diff + floor + tol * abs(est) / 10
    raise _Unconverged(budget.used)


def _interval(g, p, q, alpha, beta, left_sing, right_sing, tol, abs_floor, budget, depth=0):
    """Integral over [p, q] of t^(alpha-1) (1-t)^(beta-1) g(t) with bisection.

    ``left_sing`` means the factor t^(alpha-1) is singular at ``p`` (p = 0),
    ``right_sing`` that (1-t)^(beta-1) is singular at ``q`` (q = 1).
    """
    width = q - p
    ea = alpha if left_sing else 1
    eb = beta if right_sing else 1
    one_minus_q = 1 - q

    def F(tau, omt):
        t = p + width * tau
        val = g(t)
        if left_sing:
            val *= width ** (alpha - 1)
        elif alpha != 1:
            val *= t ** (alpha - 1)
        if right_sing:
            val *= width ** (beta - 1)
        elif beta != 1:
            val *= (one_minus_q + width * omt) ** (beta - 1)
        return width * val

    try:
        return _tanh_sinh(F, ea, eb, tol, abs_floor, budget)
    except _Unconverged:
        if depth >= _MAX_DEPTH:
            raise NoConvergence("quadrature panel did not converge after bisection") from None
    m = (p + q) / 2
    v1, e1 = _interval(g, p, m, alpha, beta, left_sing, False, tol, abs_floor, budget, depth + 1)
    v2, e2 = _interval(g, m, q, alpha, beta, False, right_sing, tol, abs_floor, budget, depth + 1)
    return v1 + v2, e1 + e2


def _precision(cfg):
    return max(mp.mp.dps, cfg.working_dps)


def integrate_unit_interval(f: IntegrandSpec, cfg: EvalConfig | None = None) -> QuadResult:
    """Integrate t^(alpha-1) (1-t)^(beta-1) g(t) over [0, 1]."""
    cfg = cfg or EvalConfig()
    alpha, beta = (mp.mpmathify(e) for e in f.endpoint_exponents)
    if mp.re(alpha) <= 0 or mp.re(beta) <= 0:
        raise SingularEndpoint("endpoint exponents need positive real parts")
    budget = _Budget(cfg.max_evals)
    with mp.workdps(_precision(cfg)):
        tol = mp.mpf(cfg.target_rel_err)
        val, err = _interval(f.evaluator, mp.mpf(0), mp.mpf(1), alpha, beta, True, True,
                             tol, mp.mpf(0), budget)
    return QuadResult(value=+val, abs_err_est=+err, evals=budget.used)


# --------------------------------------------------------------------------
# half-line


def _logmag(v):
    a = abs(v)
    if a == 0 or not mp.isfinite(a):
        return mp.mpf("-inf") if a == 0 else mp.inf
    return mp.log(a)


def _golden_max(fn, lo, hi, iters=40):
    """Maximize a unimodal function of one real variable on [lo, hi]."""
    gr = (mp.sqrt(5) - 1) / 2
    a, b = lo, hi
    c = b - gr * (b - a)
    d = a + gr * (b - a)
    fc, fd = fn(c), fn(d)
    for _ in range(iters):
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - gr * (b - a)
            fc = fn(c)
        else:
            a, c, fc = c, d, fd
            d = a + gr * (b - a)
            fd = fn(d)
        if b - a < 1e-6 * (abs(a) + abs(b)):
            break
    return (a + b) / 2


def _halfline_breakpoints(peak, wl, wr, cutoff, first, max_panel):
    pts = set()
    k_span = 8
    lo_peak = peak - k_span * wl
    hi_peak = peak + k_span * wr
    for k in range(1, k_span + 1):
        pts.add(peak - k * wl)
        pts.add(peak + k * wr)
    pts.add(peak)
    t = first
    while t < cutoff:
        if not lo_peak < t < hi_peak:
            pts.add(t)
        t *= 2
    pts.add(cutoff)
    pts = sorted(p for p in pts if 0 < p <= cutoff)
    out = []
    for p in pts:
        if out and p - out[-1] < 1e-12 * p:
            continue
        if max_panel is not None and out:
            while p - out[-1] > max_panel:
                out.append(out[-1] + max_panel)
        out.append(p)
    return out


def integrate_halfline(f: IntegrandSpec, cfg: EvalConfig | None = None) -> QuadResult:
    """Integrate t^(alpha-1) g(t) over [0, inf).

    The mass t |f(t)| is scanned on a sqrt(2)-geometric grid to find where the
    integrand lives; panels are then placed geometrically away from the peak
    and linearly (one peak width apart) around it.  The neglected tail beyond
    the cutoff is bounded from the local decay rate and added to the error.
    """
    cfg = cfg or EvalConfig()
    alpha = mp.mpmathify(f.endpoint_exponents[0])
    if mp.re(alpha) <= 0:
        raise SingularEndpoint("endpoint exponent at 0 needs a positive real part")
    g = f.evaluator
    budget = _Budget(cfg.max_evals)
    with mp.workdps(_precision(cfg)):
        tol = mp.mpf(cfg.target_rel_err)
        L = _log_cut(tol)

        def logmass(t):
            budget.spend(1)
            return _logmag(g(t)) + mp.re(alpha) * mp.log(t)

        cap_exp = 100 if f.decay_class == "exponential" else 60
        ks = []
        vals = []
        best = mp.mpf("-inf")
        below = 0
        cutoff_k = None
        for k in range(-40, cap_exp + 1):
            t = mp.mpf(2) ** (mp.mpf(k) / 2)
            lm = logmass(t)
            ks.append(k)
            vals.append(lm)
            if lm > best:
                best = lm
                below = 0
            elif lm < best - L:
                below += 1
                if below >= 3:
                    cutoff_k = k
                    break
            else:
                below = 0
        if cutoff_k is None:
            raise DivergentTail(
                f"integrand mass has not decayed by t = 2^{cap_exp // 2}; "
                f"inconsistent with decay class {f.decay_class!r}")
        ipk = max(range(len(vals)), key=lambda i: vals[i])
        peak = f.hints.get("peak")
        if peak is None:
            lo = mp.mpf(2) ** (mp.mpf(ks[max(ipk - 1, 0)]) / 2)
            hi = mp.mpf(2) ** (mp.mpf(ks[min(ipk + 1, len(ks) - 1)]) / 2)
            peak = _golden_max(logmass, lo, hi)
        peak = mp.mpf(peak)
        top = logmass(peak)
        width = f.hints.get("width")
        if width is None:
            wl = _drop_width(logmass, peak, top, -1)
            wr = _drop_width(logmass, peak, top, +1)
        else:
            wl = wr = mp.mpf(width)
        # trim the scan cutoff back to the first point below threshold
        cutoff = mp.mpf(2) ** (mp.mpf(cutoff_k - 2) / 2)
        cutoff = max(cutoff, peak + 8 * wr)
        first = min(mp.mpf(1), peak / 4) if peak - 8 * wl <= 0 else min(mp.mpf(1), (peak - 8 * wl) / 2)
        first = max(first, mp.mpf(2) ** -20)
        bps = _halfline_breakpoints(peak, wl, wr, cutoff, first, f.hints.get("max_panel"))
        scale_abs = mp.exp(top) * min(mp.mpf(1), (wl + wr) / peak)
        floor = tol * scale_abs
        total = mp.mpf(0)
        err = mp.mpf(0)
        prev = mp.mpf(0)
        for i, bp in enumerate(bps):
            v, e = _interval(g, prev, bp, alpha, 1, i == 0, False, tol, floor, budget)
            total += v
            err += e
            prev = bp
        # tail bound from the local exponential rate at the cutoff
        t1 = bps[-1]
        t0 = t1 / mp.sqrt(2)
        lf1 = logmass(t1) - mp.log(t1)
        lf0 = logmass(t0) - mp.log(t0)
        rate = (lf0 - lf1) / (t1 - t0)
        if rate > 0:
            tail = mp.exp(lf1) / rate
        else:
            tail = mp.exp(lf1) * t1
        err += tail
    return QuadResult(value=+total, abs_err_est=+err, evals=budget.used)


def _drop_width(logmass, peak, top, direction):
    step = peak / 100 if peak > 0 else mp.mpf(1e-3)
    t = peak
    for _ in range(200):
        nt = t + direction * step
        if nt <= 0:
            return peak / 2
        if logmass(nt) < top - 1:
            return abs(nt - peak)
        t = nt
        step *= 1.5
    return abs(t - peak)


# --------------------------------------------------------------------------
# vertical line


def integrate_vertical_line(h: IntegrandSpec, sigma, cfg: EvalConfig | None = None) -> QuadResult:
    """(1/2 pi i) times the integral of h(s) along Re s = sigma, upward.

    Panels are 5 wide on |Im s| <= 20 and half the current truncation beyond.
    Truncated symmetrically at |Im s| = T with T = 20, 40, 80, ... until the
    latest extension contributes less than a tenth of the target; the last
    extension is kept as the truncation-error estimate.
    """
    cfg = cfg or EvalConfig()
    g = h.evaluator
    budget = _Budget(cfg.max_evals)
    delta = cfg.sector_margin
    with mp.workdps(_precision(cfg)):
        sigma = mp.mpf(sigma)
        tol = mp.mpf(cfg.target_rel_err)

        def line(tau):
            return g(mp.mpc(sigma, tau))

        floor = [mp.mpf(0)]

        def span(a, b, width, running=0):
            n = max(1, int(mp.ceil((b - a) / width)))
            w = (b - a) / n
            val = mp.mpf(0)
            err = mp.mpf(0)
            # centre-out, so small outer panels are judged against the mass already found
            for i in sorted(range(n), key=lambda i: abs(a + (i + mp.mpf(0.5)) * w)):
                lo = a + i * w
                v, e = _interval(lambda t, lo=lo: line(lo + t), mp.mpf(0), w, 1, 1,
                                 False, False, tol, floor[0], budget)
                val += v
                err += e
                floor[0] = max(floor[0], tol * abs(running + val) * mp.mpf("0.01"))
            return val, err

        T = mp.mpf(20)
        total, err = span(-T, T, mp.mpf(5))
        t_cap = 20 * 2 ** 10
        while True:
            width = T / 2
            up, e1 = span(T, 2 * T, width, total)
            dn, e2 = span(-2 * T, -T, width, total)
            ext = up + dn
            total += ext
            err += e1 + e2
            T *= 2
            if abs(ext) < tol * abs(total) / 10:
                err += abs(ext)
                break
            if T >= 160:
                budget.spend(2)
                rate = (_logmag(line(T / 2)) - _logmag(line(T))) / (T / 2)
                if rate < delta / 2 and abs(ext) > tol * abs(total):
                    raise SlowDecay(f"contour integrand decays at rate {float(rate):.3g} < {delta / 2:.3g}")
            if T > t_cap:
                raise SlowDecay("contour truncation reached its cap without convergence")
        val = total / (2 * mp.pi)
    return QuadResult(value=+val, abs_err_est=err / (2 * mp.pi), evals=budget.used)
