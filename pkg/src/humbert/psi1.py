"""Humbert Psi1[a, b; c, c'; x, y]: reference evaluators and asymptotic expansions."""

from __future__ import annotations

from dataclasses import dataclass

import mpmath as mp

from .config import EvalConfig, EvalResult
from .errors import DomainError, NoApplicableMethod, ParameterPole, PoleError
from .expansion import Expansion, ExpansionResult, ScaledTerm
from .quadrature import IntegrandSpec, integrate_halfline, integrate_unit_interval
from .series import accumulate, double_sum, escalating
from .special import (
    bessel_i,
    cpow,
    f_gamma,
    gamma_ratio,
    hyp0f1,
    hyp1f1,
    is_int,
    is_nonpos_int,
    mpify,
    pochhammer,
)

METHODS = ("double_series", "f1f1_series", "euler", "laplace", "continuation", "bessel_integral")


@dataclass(frozen=True)
class Psi1Params:
    a: complex
    b: complex
    c: complex
    cp: complex

    def __post_init__(self):
        for name in ("c", "cp"):
            if is_nonpos_int(getattr(self, name)):
                raise ParameterPole(f"{name} must not be a nonpositive integer")

    @property
    def mp(self):
        return tuple(mpify(v) for v in (self.a, self.b, self.c, self.cp))


def _as_params(p) -> Psi1Params:
    return p if isinstance(p, Psi1Params) else Psi1Params(*p)


def _result(val, err, method, terms=0, evals=0, inputs=()):
    if all(mp.im(mpify(v)) == 0 for v in inputs):
        val = mp.re(val)
    return EvalResult(value=val, abs_err=err, method=method, terms=terms, evals=evals)


def in_extension_region(x) -> bool:
    x = mpify(x)
    return x != 1 and not (mp.im(x) == 0 and mp.re(x) > 1)


# --------------------------------------------------------------------------
# individual methods; each returns (value, abs_err, terms, evals)


def _double_series(a, b, c, cp, x, y, cfg, tol):
    if abs(x) >= 1:
        raise DomainError("double series needs |x| < 1")

    def compute(loss):
        tl = tol * mp.mpf(2) ** -loss
        return double_sum(
            mp.mpf(1),
            lambda m: (a + m) * (b + m) / ((c + m) * (m + 1)) * x,
            lambda m, n: (a + m + n) / ((cp + n) * (n + 1)) * y,
            tl, cfg.max_terms, outer_floor=abs(x))

    val, err, n = escalating(compute)
    return val, err, n, 0


def _f1f1_series(a, b, c, cp, x, y, cfg, tol):
    if abs(x) >= 1:
        raise DomainError("1F1 row series needs |x| < 1")

    def compute(loss):
        tl = tol * mp.mpf(2) ** -loss
        def terms():
            coef = mp.mpf(1)
            k = 0
            while True:
                yield coef * hyp1f1(a + k, cp, y)
                coef *= (a + k) * (b + k) / ((c + k) * (k + 1)) * x
                k += 1
        s, tail, n, mx = accumulate(terms(), tl, cfg.max_terms, abs(x))
        return s, tail, n, mx

    val, err, n = escalating(compute)
    return val, err, n, 0


def _euler(a, b, c, cp, x, y, cfg, tol):
    if not mp.re(c) > mp.re(b) > 0:
        raise DomainError("Euler integral needs Re(c) > Re(b) > 0")
    if mp.im(x) == 0 and mp.re(x) >= 1:
        raise DomainError("Euler integral needs x outside [1, inf)")

    def g(t):
        w = 1 - x * t
        return cpow(w, -a) * hyp1f1(a, cp, y / w)

    q = integrate_unit_interval(IntegrandSpec(g, (b, c - b)), cfg)
    pref = gamma_ratio([c], [b, c - b])
    return pref * q.value, abs(pref) * q.abs_err_est, 0, q.evals


def _laplace(a, b, c, cp, x, y, cfg, tol):
    if not mp.re(a) > 0:
        raise DomainError("Laplace integral needs Re(a) > 0")
    if not mp.re(x) < 1:
        raise DomainError("Laplace integral needs Re(x) < 1")

    def g(u):
        return mp.exp(-u) * hyp1f1(b, c, x * u) * hyp0f1(cp, y * u)

    hints = {}
    if mp.re(y) > 0:
        # 0F1 grows like exp(2 sqrt(y u)); the mass then peaks near u = y / (1-x)^2
        yr = mp.re(y)
        peak = yr / (1 - mp.re(x)) ** 2
        if peak > 20:
            hints = {"peak": peak, "width": mp.sqrt(2 * peak) / (1 - mp.re(x))}
    q = integrate_halfline(IntegrandSpec(g, (a, 1), "exponential", hints), cfg)
    pref = mp.rgamma(a)
    return pref * q.value, abs(pref) * q.abs_err_est, 0, q.evals


def _continuation_sums(a, b, c, cp, x, y, tol, max_terms):
    if abs(x) <= 1:
        raise DomainError("continuation series needs |x| > 1")
    if mp.im(x) == 0 and mp.re(x) > 0:
        raise DomainError("continuation series needs |arg(-x)| < pi")
    if is_int(a - b):
        raise PoleError("continuation series needs a - b not an integer")
    inv = 1 / x

    def branch(first, p1, p2, q1, shift):
        def terms():
            coef = mp.mpf(1)
            k = 0
            while True:
                yield coef * hyp1f1(shift - k, cp, y)
                coef *= (p1 + k) * (p2 + k) / ((q1 + k) * (k + 1)) * inv
                k += 1
        return accumulate(terms(), tol, max_terms, abs(inv))

    s1 = branch(True, a, 1 - c + a, 1 - b + a, mp.mpf(0))
    s2 = branch(False, b, 1 - c + b, 1 - a + b, a - b)
    return s1, s2


def _continuation(a, b, c, cp, x, y, cfg, tol):
    f1 = f_gamma(c, b, a) * cpow(-x, -a)
    f2 = f_gamma(c, a, b) * cpow(-x, -b)

    def compute(loss):
        tl = tol * mp.mpf(2) ** -loss
        (v1, t1, n1, m1), (v2, t2, n2, m2) = _continuation_sums(a, b, c, cp, x, y, tl, cfg.max_terms)
        val = f1 * v1 + f2 * v2
        err = abs(f1) * t1 + abs(f2) * t2
        return val, err, n1 + n2, max(abs(f1) * m1, abs(f2) * m2)

    val, err, n = escalating(compute)
    return val, err, n, 0


def _bessel_integral(a, b, c, cp, x, y, cfg, tol):
    if not mp.re(a) > 0:
        raise DomainError("Bessel-kernel integral needs Re(a) > 0")
    if mp.re(x) < 0:
        X, sign = -x, -1
    elif mp.re(x) > 0:
        X, sign = x, 1
        if not mp.re(1 / X) > 1:
            raise DomainError("Bessel-kernel integral with +x needs Re(1/x) > 1")
    else:
        raise DomainError("Bessel-kernel integral needs Re(x) != 0")
    if y == 0:
        raise DomainError("Bessel-kernel integral needs y != 0")
    ratio_sq = y / X
    if mp.im(ratio_sq) == 0 and mp.re(ratio_sq) < 0:
        raise DomainError("Bessel-kernel integral needs y/x off the negative real axis")
    kappa = mp.sqrt(ratio_sq)  # Y/X with Re > 0
    bcfg = cfg.with_(dps=mp.mp.dps)

    def g(w):
        return (cpow(w, 1 - cp) * mp.exp(-w * w / X) * hyp1f1(b, c, sign * w * w)
                * bessel_i(cp - 1, 2 * kappa * w, bcfg))

    q = integrate_halfline(IntegrandSpec(g, (2 * a, 1), "gaussian"), cfg)
    pref = 2 * gamma_ratio([cp], [a]) * cpow(X, -a) * cpow(kappa, 1 - cp)
    return pref * q.value, abs(pref) * q.abs_err_est, 0, q.evals


_DISPATCH = {
    "double_series": _double_series,
    "f1f1_series": _f1f1_series,
    "euler": _euler,
    "laplace": _laplace,
    "continuation": _continuation,
    "bessel_integral": _bessel_integral,
}


def psi1_reference(p, x, y, method: str, cfg: EvalConfig | None = None) -> EvalResult:
    """Evaluate Psi1 at (x, y) with one named method.

    Methods: ``double_series`` and ``f1f1_series`` (|x| < 1), ``euler``
    (Re c > Re b > 0), ``laplace`` (Re a > 0, Re x < 1), ``continuation``
    (|x| > 1, |arg(-x)| < pi, a - b not an integer) and ``bessel_integral``
    (Re a > 0, kernel built from -x or +x, y/x off the negative axis).
    """
    cfg = cfg or EvalConfig()
    p = _as_params(p)
    if method not in _DISPATCH:
        raise ValueError(f"unknown method {method!r}; choose from {METHODS}")
    with mp.workdps(cfg.working_dps):
        a, b, c, cp = p.mp
        x, y = mpify(x), mpify(y)
        if not in_extension_region(x):
            raise DomainError("x must avoid the cut [1, inf)")
        tol = mp.mpf(cfg.target_rel_err) / 100
        val, err, terms, evals = _DISPATCH[method](a, b, c, cp, x, y, cfg, tol)
        return _result(+val, err, method, terms, evals, (a, b, c, cp, x, y))


def _applicable(p: Psi1Params, x) -> list[str]:
    a, b, c, cp = p.mp
    x = mpify(x)
    out = []
    if abs(x) <= 0.8:
        out.append("double_series")
    if abs(x) > 1.2 and not (mp.im(x) == 0 and mp.re(x) > 0) and not is_int(a - b):
        out.append("continuation")
    if mp.re(x) < 1 and mp.re(a) > 0:
        out.append("laplace")
    if mp.re(c) > mp.re(b) > 0 and in_extension_region(x):
        out.append("euler")
    return out


def psi1_auto(p, x, y, cfg: EvalConfig | None = None) -> EvalResult:
    """Pick a method by region and evaluate; the choice is recorded in ``method``."""
    p = _as_params(p)
    methods = _applicable(p, x)
    if not methods:
        raise NoApplicableMethod(f"no Psi1 method applies at x = {x}")
    return psi1_reference(p, x, y, methods[0], cfg)


# --------------------------------------------------------------------------
# asymptotic expansions


def psi1_asym_small_x(p, y, sign: str = "minus", complete: bool = False,
                      cfg: EvalConfig | None = None) -> Expansion:
    """Leading behaviour of Psi1[a, b; c, c'; +-x, y/x] as x -> 0.

    The leading form is Gamma(c')/Gamma(a) 1F1[b; c; +-y] (y/x)^(a-c') e^(y/x),
    stated for Re(a) > 0, y > 0 and |arg x| <= pi/2 - delta.  With
    ``complete=True`` the algebraic term Gamma(c')/Gamma(c'-a) (-y/x)^(-a) is
    added; that form needs Re(c) > Re(b) > 0 and any y != 0.
    """
    cfg = cfg or EvalConfig()
    p = _as_params(p)
    if sign not in ("plus", "minus"):
        raise ValueError("sign must be 'plus' or 'minus'")
    s = 1 if sign == "plus" else -1
    with mp.workdps(cfg.working_dps):
        a, b, c, cp = p.mp
        y = mpify(y)
        if complete:
            if not mp.re(c) > mp.re(b) > 0:
                raise DomainError("complete form needs Re(c) > Re(b) > 0")
            if y == 0:
                raise DomainError("complete form needs y != 0")
        else:
            if not mp.re(a) > 0:
                raise DomainError("leading form needs Re(a) > 0")
            if mp.im(y) != 0 or mp.re(y) <= 0:
                raise DomainError("leading form needs real y > 0")
        lead = gamma_ratio([cp], [a]) * hyp1f1(b, c, s * y)
        alg = gamma_ratio([cp], [cp - a]) if complete else mp.mpf(0)
    delta = cfg.sector_margin
    validity = ("x -> 0, -pi <= arg(-y/x) <= pi" if complete
                else f"x -> 0, |arg x| <= pi/2 - {delta:g}")

    def evaluate(x) -> ExpansionResult:
        with mp.workdps(cfg.working_dps):
            x = mpify(x)
            if x == 0:
                raise DomainError("x must be nonzero")
            if not complete and abs(mp.arg(x)) > mp.pi / 2 - delta:
                raise DomainError("x outside the sector |arg x| <= pi/2 - delta")
            w = y / x
            terms = [ScaledTerm("exponential", lead, (a - cp) * mp.log(w) + w, "(y/x)^(a-c') e^(y/x)")]
            if complete:
                terms.append(ScaledTerm("algebraic", alg, -a * mp.log(-w), "(-y/x)^(-a)"))
            return ExpansionResult(terms=terms, N=1, validity=validity,
                                   remainder="relative o(1) as x -> 0")

    return Expansion(
        name="psi1_small_x",
        N=1,
        coefficients={"leading": lead, "algebraic": alg},
        validity=validity,
        remainder="relative o(1) as x -> 0",
        _evaluate=evaluate,
    )


def small_y_coefficients(a, b, c, cp, x, N: int, bp=None):
    """Coefficient tables of the small-y expansions of Psi1[x/y, y] (and F2 when ``bp`` is given).

    With ``bp`` set, every l-sum term also carries (b')_l, which turns the Psi1
    coefficients into those of F2[a, b, b'; c, c'; x/y, y].
    """
    first, second = [], []
    for m in range(N):
        s1 = mp.mpf(0)
        s2 = mp.mpf(0)
        for k in range(m + 1):
            l = m - k
            common = mp.mpf(1) / (pochhammer(cp, l) * mp.factorial(l) * mp.factorial(k)) * x ** (-k)
            if bp is not None:
                common *= pochhammer(bp, l)
            s1 += (pochhammer(-k, l) * pochhammer(a, k) * pochhammer(1 - c + a, k)
                   / pochhammer(1 - b + a, k) * common)
            s2 += (pochhammer(a - b - k, l) * pochhammer(b, k) * pochhammer(1 - c + b, k)
                   / pochhammer(1 - a + b, k) * common)
        first.append(s1)
        second.append(s2)
    return first, second


def _small_y_expansion(name, p_tuple, x, N, cfg, bp=None) -> Expansion:
    a, b, c, cp = p_tuple
    if N < 1:
        raise ValueError("N must be >= 1")
    if is_int(a - b):
        raise PoleError("small-y expansion needs a - b not an integer")
    with mp.workdps(cfg.working_dps):
        x = mpify(x)
        if x == 0:
            raise DomainError("x must be nonzero")
        c1, c2 = small_y_coefficients(a, b, c, cp, x, N, bp)
        fa = f_gamma(c, b, a)
        fb = f_gamma(c, a, b)
    remainder = f"O(|y|^(Re a + {N}) + |y|^(Re b + {N}))"
    validity = "y -> 0, |arg(-x/y)| < pi"

    def evaluate(y) -> ExpansionResult:
        with mp.workdps(cfg.working_dps):
            y = mpify(y)
            if y == 0:
                raise DomainError("y must be nonzero")
            w = -x / y
            if mp.im(w) == 0 and mp.re(w) < 0:
                raise DomainError("-x/y on the branch cut")
            lw = mp.log(w)
            s1 = mp.polyval(c1[::-1], y)
            s2 = mp.polyval(c2[::-1], y)
            terms = [ScaledTerm("first", fa * s1, -a * lw, "(-x/y)^(-a)"),
                     ScaledTerm("second", fb * s2, -b * lw, "(-x/y)^(-b)")]
            env = abs(y) ** (mp.re(a) + N) + abs(y) ** (mp.re(b) + N)
            return ExpansionResult(terms=terms, N=N, validity=validity, remainder=remainder, envelope=env)

    return Expansion(name=name, N=N, coefficients={"first": c1, "second": c2},
                     validity=validity, remainder=remainder, _evaluate=evaluate)


def psi1_asym_small_y(p, x, N: int, cfg: EvalConfig | None = None) -> Expansion:
    """Expansion of Psi1[x/y, y] as y -> 0 with x fixed, two algebraic branches.

    ``coefficients["first"]`` and ``["second"]`` hold the polynomial-in-1/x
    coefficient sequences multiplying f_c(b,a)(-x/y)^(-a) and f_c(a,b)(-x/y)^(-b).
    """
    cfg = cfg or EvalConfig()
    p = _as_params(p)
    with mp.workdps(cfg.working_dps):
        params = p.mp
    return _small_y_expansion("psi1_small_y", params, x, N, cfg)
