"""Appell F2[a, b, b'; c, c'; x, y]: reference evaluators, small-y expansion, confluence limits."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import mpmath as mp

from .config import EvalConfig, EvalResult
from .errors import DomainError, ParameterPole, PoleError
from .expansion import Expansion
from .psi1 import _small_y_expansion, psi1_reference
from .psi2 import psi2_reference
from .quadrature import IntegrandSpec, integrate_halfline
from .series import accumulate, double_sum, escalating
from .special import cpow, f_gamma, hyp1f1, hypsum, is_int, is_nonpos_int, mpify

METHODS = ("double_series", "laplace", "jaeger")
CONFLUENCE_TARGETS = ("psi1_from_f2", "psi2_from_f2", "psi2_from_psi1")


@dataclass(frozen=True)
class F2Params:
    a: complex
    b: complex
    bp: complex
    c: complex
    cp: complex

    def __post_init__(self):
        for name in ("c", "cp"):
            if is_nonpos_int(getattr(self, name)):
                raise ParameterPole(f"{name} must not be a nonpositive integer")

    @property
    def mp(self):
        return tuple(mpify(v) for v in (self.a, self.b, self.bp, self.c, self.cp))


def _as_params(p) -> F2Params:
    return p if isinstance(p, F2Params) else F2Params(*p)


def _double_series(a, b, bp, c, cp, x, y, cfg, tol):
    if not abs(x) + abs(y) < 1:
        raise DomainError("F2 double series needs |x| + |y| < 1")

    def compute(loss):
        tl = tol * mp.mpf(2) ** -loss
        return double_sum(
            mp.mpf(1),
            lambda m: (a + m) * (b + m) / ((c + m) * (m + 1)) * x,
            lambda m, n: (a + m + n) * (bp + n) / ((cp + n) * (n + 1)) * y,
            tl, cfg.max_terms, outer_floor=abs(x) / (1 - abs(y)), inner_floor=abs(y))

    val, err, n = escalating(compute)
    return val, err, n, 0


def _laplace(a, b, bp, c, cp, x, y, cfg, tol):
    if not mp.re(a) > 0:
        raise DomainError("F2 Laplace integral needs Re(a) > 0")
    if not max(mp.re(x), 0) + max(mp.re(y), 0) < 1:
        raise DomainError("F2 Laplace integral needs max(Re x, 0) + max(Re y, 0) < 1")

    def g(t):
        return mp.exp(-t) * hyp1f1(b, c, x * t) * hyp1f1(bp, cp, y * t)

    q = integrate_halfline(IntegrandSpec(g, (a, 1), "exponential"), cfg)
    pref = mp.rgamma(a)
    return pref * q.value, abs(pref) * q.abs_err_est, 0, q.evals


@lru_cache(maxsize=4096)
def _inner_2f1(upper, bp, cp, y, prec):
    """2F1[upper, b'; c'; y], cached per outer index (and precision)."""
    with mp.workprec(prec):
        return hypsum([upper, bp], [cp], y)[0]


def _jaeger(a, b, bp, c, cp, x, y, cfg, tol):
    if not abs(y) < 1:
        raise DomainError("Jaeger continuation needs |y| < 1")
    if not abs(x) > abs(y) + 1:
        raise DomainError("Jaeger continuation needs |x| > |y| + 1")
    if is_int(a - b):
        raise PoleError("Jaeger continuation needs a - b not an integer")
    inv = 1 / x
    floor = (1 + abs(y)) / abs(x)
    f1 = f_gamma(c, b, a) * cpow(-x, -a)
    f2 = f_gamma(c, a, b) * cpow(-x, -b)

    def branch(p1, p2, q1, shift, tl):
        def terms():
            coef = mp.mpf(1)
            n = 0
            while True:
                yield coef * _inner_2f1(shift - n, bp, cp, y, mp.mp.prec)
                coef *= (p1 + n) * (p2 + n) / ((q1 + n) * (n + 1)) * inv
                n += 1
        return accumulate(terms(), tl, cfg.max_terms, floor)

    def compute(loss):
        tl = tol * mp.mpf(2) ** -loss
        v1, t1, n1, m1 = branch(a, 1 - c + a, 1 - b + a, mp.mpf(0), tl)
        v2, t2, n2, m2 = branch(b, 1 - c + b, 1 - a + b, a - b, tl)
        return (f1 * v1 + f2 * v2, abs(f1) * t1 + abs(f2) * t2, n1 + n2,
                max(abs(f1) * m1, abs(f2) * m2))

    val, err, n = escalating(compute)
    return val, err, n, 0


_DISPATCH = {"double_series": _double_series, "laplace": _laplace, "jaeger": _jaeger}


def f2_reference(p, x, y, method: str, cfg: EvalConfig | None = None) -> EvalResult:
    """Evaluate F2 at (x, y) with ``double_series``, ``laplace`` or ``jaeger``.

    The Laplace form carries the 1/Gamma(a) normalisation and needs
    max(Re x, 0) + max(Re y, 0) < 1; Jaeger's continuation needs |y| < 1,
    |x| > |y| + 1 and a - b not an integer.
    """
    cfg = cfg or EvalConfig()
    p = _as_params(p)
    if method not in _DISPATCH:
        raise ValueError(f"unknown method {method!r}; choose from {METHODS}")
    with mp.workdps(cfg.working_dps):
        a, b, bp, c, cp = p.mp
        x, y = mpify(x), mpify(y)
        tol = mp.mpf(cfg.target_rel_err) / 100
        val, err, terms, evals = _DISPATCH[method](a, b, bp, c, cp, x, y, cfg, tol)
        if all(mp.im(v) == 0 for v in (a, b, bp, c, cp, x, y)):
            val = mp.re(val)
        return EvalResult(value=+val, abs_err=err, method=method, terms=terms, evals=evals)


def f2_asym_small_y(p, x, N: int, cfg: EvalConfig | None = None) -> Expansion:
    """Expansion of F2[x/y, y] as y -> 0 with x fixed.

    Same shape as the Psi1 small-y expansion; every inner term carries the
    extra factor (b')_l, so ``coefficients["first"]`` and ``["second"]`` are
    the F2 tables.
    """
    cfg = cfg or EvalConfig()
    p = _as_params(p)
    with mp.workdps(cfg.working_dps):
        a, b, bp, c, cp = p.mp
    return _small_y_expansion("f2_small_y", (a, b, c, cp), x, N, cfg, bp=bp)


@dataclass
class ConfluencePair:
    limit_side: EvalResult
    target_side: EvalResult

    @property
    def difference(self):
        return self.limit_side.value - self.target_side.value

    @property
    def rel_difference(self) -> float:
        return float(abs(self.difference) / abs(self.target_side.value))


def _series_method_psi1(x):
    return "double_series" if abs(mpify(x)) < 1 else "continuation"


def confluence_limit(target: str, base_params, x, y, eps, cfg: EvalConfig | None = None) -> ConfluencePair:
    """Evaluate both sides of a confluence limit at parameter ``eps``.

    ``psi1_from_f2``: F2[a, b, 1/eps; c, c'; x, eps y] against Psi1[a, b; c, c'; x, y]
    (base_params = (a, b, c, c')).  ``psi2_from_f2``: F2[a, 1/eps, 1/eps; c, c';
    eps x, eps y] against Psi2[a; c, c'; x, y].  ``psi2_from_psi1``:
    Psi1[a, 1/eps; c, c'; eps x, y] against Psi2 (both with base_params = (a, c, c')).
    """
    cfg = cfg or EvalConfig()
    if target not in CONFLUENCE_TARGETS:
        raise ValueError(f"unknown confluence target {target!r}")
    eps = mpify(eps)
    if not 0 < eps <= mp.mpf("0.1"):
        raise DomainError("eps must lie in (0, 0.1]")
    x, y = mpify(x), mpify(y)
    big = 1 / eps
    if target == "psi1_from_f2":
        a, b, c, cp = base_params
        lim = f2_reference((a, b, big, c, cp), x, eps * y, "double_series", cfg)
        tgt = psi1_reference((a, b, c, cp), x, y, _series_method_psi1(x), cfg)
    elif target == "psi2_from_f2":
        a, c, cp = base_params
        lim = f2_reference((a, big, big, c, cp), eps * x, eps * y, "double_series", cfg)
        tgt = psi2_reference((a, c, cp), x, y, "double_series", cfg)
    else:
        a, c, cp = base_params
        lim = psi1_reference((a, big, c, cp), eps * x, y, "double_series", cfg)
        tgt = psi2_reference((a, c, cp), x, y, "double_series", cfg)
    return ConfluencePair(limit_side=lim, target_side=tgt)
