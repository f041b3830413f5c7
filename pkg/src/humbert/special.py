"""Scalar special functions on the mpmath backend.

All routines work at the ambient mpmath precision and return mpmath numbers.
Series are summed with guard bits and re-summed at a higher precision when
the largest term exceeds the final sum by more than the guard allows, which
is the extended-precision stand-in for compensated summation.
"""

from __future__ import annotations

import math
from typing import Sequence

import mpmath as mp
from mpmath.libmp import to_fixed

from .config import EvalConfig, SeriesResult
from .errors import (
    BranchCutError,
    DomainError,
    NoConvergence,
    ParameterPole,
    PoleError,
)
from .expansion import ExpansionResult, ScaledTerm

_GUARD_BITS = 24
_MAX_PREC = 40_000


def mpify(z):
    return mp.mpmathify(z)


def is_nonpos_int(z) -> bool:
    z = mpify(z)
    return mp.im(z) == 0 and mp.isint(mp.re(z)) and mp.re(z) <= 0


def is_int(z) -> bool:
    z = mpify(z)
    return mp.im(z) == 0 and mp.isint(mp.re(z))


def _all_real(*vals) -> bool:
    for v in vals:
        if isinstance(v, (list, tuple)):
            if not _all_real(*v):
                return False
        elif mp.im(mpify(v)) != 0:
            return False
    return True


def _tidy(value, *inputs):
    """Drop a spurious imaginary part when every input is real."""
    if _all_real(*inputs):
        return mp.re(value)
    return value


def cpow(w, alpha):
    """Principal power exp(alpha * Log w) with Arg in (-pi, pi]."""
    w = mpify(w)
    if w == 0:
        if mp.re(alpha) > 0:
            return mp.mpf(0)
        raise PoleError("0 raised to a power with nonpositive real part")
    return mp.exp(alpha * mp.log(w))


def pochhammer(a, n: int):
    """Rising factorial (a)_n = a (a+1) ... (a+n-1); (a)_0 = 1 for every a."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    a = mpify(a)
    p = mp.mpf(1)
    for k in range(n):
        p *= a + k
    return p


def gamma_ratio(numerators: Sequence, denominators: Sequence = ()):
    """prod Gamma(num) / prod Gamma(den), evaluated through log-Gamma.

    Pole bookkeeping treats every argument sitting on a nonpositive integer
    as perturbed by the same infinitesimal shift, so matched pole pairs give
    the usual finite limit (e.g. Gamma(-n+k)/Gamma(-n) = (-n)_k).  Extra
    denominator poles give an exact zero; extra numerator poles raise.
    """
    num_poles = 0
    den_poles = 0
    log_part = mp.mpf(0)
    residue = mp.mpf(1)
    with mp.extradps(10):
        for z in numerators:
            z = mpify(z)
            if is_nonpos_int(z):
                n = int(-mp.re(z))
                num_poles += 1
                residue *= (-1) ** n / mp.factorial(n)
            else:
                log_part += mp.loggamma(z)
        for z in denominators:
            z = mpify(z)
            if is_nonpos_int(z):
                n = int(-mp.re(z))
                den_poles += 1
                residue /= (-1) ** n / mp.factorial(n)
            else:
                log_part -= mp.loggamma(z)
        if num_poles > den_poles:
            raise PoleError("uncancelled Gamma pole in the numerator")
        if den_poles > num_poles:
            return mp.mpf(0)
        out = residue * mp.exp(log_part)
    out = +out
    return _tidy(out, list(numerators), list(denominators))


def f_gamma(gamma, a, b):
    """Connection coefficient Gamma(g) Gamma(a-b) / (Gamma(a) Gamma(g-b))."""
    return gamma_ratio([gamma, a - b], [a, gamma - b])


# --------------------------------------------------------------------------
# generalized hypergeometric series


def _check_series_params(upper, lower, z):
    term_at = None
    for u in upper:
        if is_nonpos_int(u):
            k = int(-mp.re(u))
            term_at = k if term_at is None else min(term_at, k)
    for lo in lower:
        if is_nonpos_int(lo):
            j = int(-mp.re(lo))
            if term_at is None or term_at > j:
                raise ParameterPole(f"lower parameter {lo} is a nonpositive integer")
    p, q = len(upper), len(lower)
    if term_at is None:
        if p > q + 1:
            raise DomainError("pFq with p > q+1 requires a terminating upper parameter")
        if p == q + 1 and abs(z) > 1:
            raise DomainError("pFq with p = q+1 diverges for |z| > 1")
    return term_at


def _hypsum_once(upper, lower, z, tol, max_terms, ratio_floor):
    s = mp.mpf(1)
    t = mp.mpf(1)
    maxabs = mp.mpf(1)
    small = 0
    eps = mp.mp.eps
    for k in range(max_terms):
        num = z
        for u in upper:
            num *= u + k
        if num == 0:
            return s, mp.mpf(0), k + 1, maxabs, True
        den = mp.mpf(k + 1)
        for lo in lower:
            den *= lo + k
        ratio = num / den
        t *= ratio
        s += t
        at = abs(t)
        if at > maxabs:
            maxabs = at
        scale = max(abs(s), eps * maxabs)
        if at <= tol * scale:
            small += 1
        else:
            small = 0
        if small >= 3:
            r = max(abs(ratio), ratio_floor)
            if r < 1:
                tail = at * r / (1 - r)
                if tail <= tol * scale:
                    return s, tail, k + 2, maxabs, True
    return s, mp.inf, max_terms + 1, maxabs, False


def _hypsum_fixed(upper, lower, z, tol, max_terms, ratio_floor):
    """Real-argument twin of ``_hypsum_once`` summed in fixed point.

    Every quantity is an integer scaled by 2**P, P the ambient precision, so a
    term update costs a few integer multiplications; each update rounds by at
    most one unit per operation and that rounding is added to the tail.
    """
    for lo in lower:
        # dividing by a lower parameter near a pole needs relative, not absolute, resolution
        if abs(lo - min(mp.nint(lo), 0)) < mp.mpf(2) ** -20:
            return _hypsum_once(upper, lower, z, tol, max_terms, ratio_floor)
    P = mp.mp.prec
    one = 1 << P
    zf = to_fixed(z._mpf_, P)
    uf = [to_fixed(u._mpf_, P) for u in upper]
    lf = [to_fixed(lo._mpf_, P) for lo in lower]
    tolf = max(1, to_fixed(mp.mpf(tol)._mpf_, P))
    ops = len(upper) + len(lower) + 2
    s = t = maxabs = one
    prev = None
    small = 0
    for k in range(max_terms):
        kf = k << P
        t = (t * zf) >> P
        for u in uf:
            if u + kf == 0:
                tail = mp.mpf((ops * (k + 1), -P))
                return mp.mpf((s, -P)), tail, k + 1, mp.mpf((maxabs, -P)), True
            t = (t * (u + kf)) >> P
        for lo in lf:
            t = (t << P) // (lo + kf)
        t //= k + 1
        if -1 <= t <= 1:
            # term at the fixed-point resolution (floor division parks negatives at -1);
            # the floating loop tracks it
            return _hypsum_once(upper, lower, z, tol, max_terms, ratio_floor)
        s += t
        at = abs(t)
        if at > maxabs:
            maxabs = at
        scale = max(abs(s), maxabs >> (P - 1))
        if (at << P) <= tolf * scale:
            small += 1
        else:
            small = 0
        if small >= 3:
            r = max(at / prev, ratio_floor)
            if r < 1:
                tail = at * int(r * 2 ** 53) // int((1 - r) * 2 ** 53) + 1
                if (tail << P) <= tolf * scale:
                    tail += ops * (k + 2)
                    return mp.mpf((s, -P)), mp.mpf((tail, -P)), k + 2, mp.mpf((maxabs, -P)), True
        prev = at
    return mp.mpf((s, -P)), mp.inf, max_terms + 1, mp.mpf((maxabs, -P)), False


def hypsum(upper, lower, z, tol=None, max_terms: int = 100_000):
    """Sum a pFq series at the ambient precision with automatic re-summation.

    Returns ``(value, abs_err, terms, converged)``.  The error combines the
    geometric tail bound and the rounding floor ``eps * max|term|``.
    """
    upper = [mpify(u) for u in upper]
    lower = [mpify(lo) for lo in lower]
    z = mpify(z)
    if z == 0:
        return mp.mpf(1), mp.mpf(0), 1, True
    _check_series_params(upper, lower, z)
    ratio_floor = abs(z) if len(upper) == len(lower) + 1 else 0
    real = all(mp.im(v) == 0 for v in (*upper, *lower, z))
    if real:
        upper, lower, z = [mp.re(u) for u in upper], [mp.re(lo) for lo in lower], mp.re(z)
        ratio_floor = float(ratio_floor)
    once = _hypsum_fixed if real else _hypsum_once
    target_prec = mp.mp.prec
    if tol is None:
        tol = mp.mpf(2) ** (-target_prec + 4)
    prec = target_prec + _GUARD_BITS
    while True:
        with mp.workprec(prec):
            s, tail, n, maxabs, ok = once(upper, lower, z, mp.mpf(tol), max_terms, ratio_floor)
            mag = abs(s)
            if mag == 0:
                lost = prec
            else:
                lost = max(0, int(mp.log(maxabs / mag, 2)) + 1)
        if not ok:
            raise NoConvergence(f"pFq series not converged after {max_terms} terms")
        if lost + target_prec + 8 <= prec or prec >= _MAX_PREC:
            break
        prec = min(_MAX_PREC, target_prec + lost + _GUARD_BITS)
    with mp.workprec(prec):
        err = tail + maxabs * mp.mpf(2) ** (-prec + lost // 8 + 4)
    return +s, err, n, True


def pfq(upper, lower, z, cfg: EvalConfig | None = None) -> SeriesResult:
    """Generalized hypergeometric series with ratio-based adaptive truncation."""
    cfg = cfg or EvalConfig()
    with mp.workdps(cfg.working_dps):
        try:
            val, err, n, _ = hypsum(upper, lower, z, tol=cfg.target_rel_err * 1e-2,
                                    max_terms=cfg.max_terms)
        except NoConvergence:
            raise
        val = _tidy(val, upper, lower, z)
    return SeriesResult(value=val, abs_tail_bound=+err, terms_used=n, converged=True)


# --------------------------------------------------------------------------
# Kummer 1F1


def _asym_branch(p1, p2, w, tol):
    """sum_n (p1)_n (p2)_n / n! * w**(-n) up to its smallest term."""
    s = mp.mpf(1)
    t = mp.mpf(1)
    prev = mp.inf
    n = 0
    while True:
        if (p1 + n) * (p2 + n) == 0:
            return s, mp.mpf(0), n + 1
        nxt = t * (p1 + n) * (p2 + n) / ((n + 1) * w)
        an = abs(nxt)
        if an >= prev or an == 0:
            return s, abs(t), n + 1
        t = nxt
        s += t
        n += 1
        if an <= tol * abs(s):
            return s, an, n + 1
        prev = an


def kummer_large_z(a, c, z, N: int) -> ExpansionResult:
    """Two-branch large-|z| expansion of 1F1[a; c; z], each branch to N terms.

    Valid for -pi <= arg(-z) <= pi.  The algebraic branch carries
    Gamma(c)/Gamma(c-a) and the exponential branch Gamma(c)/Gamma(a); either
    coefficient is an exact zero on the corresponding Gamma pole.
    """
    a, c, z = mpify(a), mpify(c), mpify(z)
    if z == 0:
        raise DomainError("kummer_large_z needs z != 0")
    if N < 1:
        raise ValueError("N must be >= 1")
    if abs(mp.arg(-z)) > mp.pi:
        raise BranchCutError("arg(-z) outside [-pi, pi]")
    alg_pref = gamma_ratio([c], [c - a])
    exp_pref = gamma_ratio([c], [a])
    alg_sum = mp.fsum(pochhammer(a, n) * pochhammer(1 + a - c, n) / mp.factorial(n) * (-z) ** (-n)
                      for n in range(N))
    exp_sum = mp.fsum(pochhammer(1 - a, n) * pochhammer(c - a, n) / mp.factorial(n) * z ** (-n)
                      for n in range(N))
    terms = [
        ScaledTerm("algebraic", alg_pref * alg_sum, -a * mp.log(-z), "(-z)^(-a)"),
        ScaledTerm("exponential", exp_pref * exp_sum, (a - c) * mp.log(z) + z, "z^(a-c) e^z"),
    ]
    return ExpansionResult(
        terms=terms,
        N=N,
        validity="z -> infinity, -pi <= arg(-z) <= pi",
        remainder="O(|z|^(-Re a - N)) + O(|e^z z^(Re(a-c)-N)|)",
        extras={"algebraic_sum": alg_sum, "exponential_sum": exp_sum},
    )


def _hyp1f1_asymptotic(a, c, z, tol):
    alg_pref = gamma_ratio([c], [c - a])
    exp_pref = gamma_ratio([c], [a])
    total = mp.mpf(0)
    err = mp.mpf(0)
    if alg_pref != 0:
        s, e, _ = _asym_branch(a, 1 + a - c, -z, tol)
        scale = alg_pref * cpow(-z, -a)
        total += scale * s
        err += abs(scale) * e
    if exp_pref != 0:
        s, e, _ = _asym_branch(1 - a, c - a, z, tol)
        scale = exp_pref * mp.exp(z) * cpow(z, a - c)
        total += scale * s
        err += abs(scale) * e
    return total, err


def hyp1f1(a, c, z, tol=None):
    """Kummer 1F1[a; c; z] at ambient precision.

    Dispatch: terminating parameters sum exactly; large |z| uses the
    two-branch expansion when its smallest term meets ``tol``; otherwise the
    Maclaurin series, Kummer-flipped for Re z < 0 to limit cancellation.
    """
    a, c, z = mpify(a), mpify(c), mpify(z)
    if is_nonpos_int(c) and not (is_nonpos_int(a) and mp.re(a) >= mp.re(c)):
        raise ParameterPole("1F1 lower parameter is a nonpositive integer")
    if tol is None:
        tol = mp.mpf(2) ** (-mp.mp.prec + 6)
    if z == 0:
        return mp.mpf(1)
    if is_nonpos_int(a):
        return _tidy(hypsum([a], [c], z, tol)[0], a, c, z)
    if is_nonpos_int(c - a):
        return _tidy(mp.exp(z) * hypsum([c - a], [c], -z, tol)[0], a, c, z)
    if abs(z) > max(25, 0.7 * mp.mp.prec) + 2 * (abs(a) + abs(c)):
        with mp.extraprec(20):
            val, err = _hyp1f1_asymptotic(a, c, z, tol)
        if val != 0 and err <= tol * abs(val):
            return _tidy(+val, a, c, z)
    if mp.re(z) < 0:
        val = mp.exp(z) * hypsum([c - a], [c], -z, tol)[0]
    else:
        val = hypsum([a], [c], z, tol)[0]
    return _tidy(val, a, c, z)


def hyp2f1(a, b, c, z, tol=None):
    """Gauss 2F1 inside the unit disk (or terminating anywhere)."""
    return _tidy(hypsum([a, b], [c], z, tol)[0], a, b, c, z)


# --------------------------------------------------------------------------
# modified Bessel I and 0F1


def bessel_crossover(nu) -> float:
    return 30.0 + 2.0 * float(abs(mpify(nu))) ** 2


def _bessel_i_series(nu, z, tol):
    if is_int(nu) and mp.re(nu) < 0:
        nu = -nu
    half = z / 2
    # (z/2)^nu / Gamma(nu+1) * 0F1[; nu+1; z^2/4]
    s = hypsum([], [nu + 1], half * half, tol)[0]
    return cpow(half, nu) * mp.rgamma(nu + 1) * s


def _bessel_i_asymptotic(nu, z, tol):
    mu = 4 * nu * nu
    a = mp.mpf(1)
    s1 = mp.mpf(1)
    s2 = mp.mpf(1)
    prev = mp.inf
    k = 0
    while True:
        a_next = a * (mu - (2 * k + 1) ** 2) / (8 * (k + 1))
        term = a_next / z ** (k + 1)
        at = abs(term)
        if at == 0 or at >= prev:
            err = abs(a / z ** k)
            break
        a = a_next
        k += 1
        s1 += (-1) ** k * term
        s2 += term
        prev = at
        if at <= tol:
            err = at
            break
    root = mp.sqrt(2 * mp.pi * z)
    sign = 1 if mp.im(z) >= 0 else -1
    main = mp.exp(z) / root * s1
    other = sign * 1j * mp.exp(sign * 1j * mp.pi * nu) * mp.exp(-z) / root * s2
    return main + other, err * abs(mp.exp(z) / root)


def _bessel_i(nu, z, tol=None):
    nu, z = mpify(nu), mpify(z)
    if tol is None:
        tol = mp.mpf(2) ** (-mp.mp.prec + 6)
    if z == 0:
        if nu == 0:
            return mp.mpf(1)
        if mp.re(nu) > 0 or is_int(nu):
            return mp.mpf(0)
        raise DomainError("I_nu(0) is infinite for Re(nu) < 0")
    if abs(z) < bessel_crossover(nu):
        val = _bessel_i_series(nu, z, tol)
    else:
        with mp.extraprec(20):
            val, _ = _bessel_i_asymptotic(nu, z, tol)
    return _tidy(+val, nu, z) if mp.re(z) > 0 else val


def bessel_i(nu, z, cfg: EvalConfig | None = None, branch: str | None = None):
    """Modified Bessel function I_nu(z), principal branch.

    Series below the crossover radius 30 + 2|nu|^2, Hankel's large-argument
    form (both exponential branches, summed to the smallest term) above it.
    On the negative real axis with non-integer ``nu`` a ``branch`` of
    ``"upper"`` (arg z = pi) or ``"lower"`` (arg z = -pi) must be given.
    """
    cfg = cfg or EvalConfig()
    nu, z = mpify(nu), mpify(z)
    with mp.workdps(cfg.working_dps):
        if mp.im(z) == 0 and mp.re(z) < 0 and not is_int(nu):
            if branch not in ("upper", "lower"):
                raise BranchCutError("z on the negative real axis needs a branch directive")
            sgn = 1 if branch == "upper" else -1
            val = mp.exp(sgn * 1j * mp.pi * nu) * _bessel_i(nu, -z)
        else:
            val = _bessel_i(nu, z)
    return +val


def hyp0f1(b, z, tol=None):
    """0F1[; b; z]; large |z| goes through Gamma(b) z^((1-b)/2) I_{b-1}(2 sqrt z)."""
    b, z = mpify(b), mpify(z)
    if is_nonpos_int(b):
        raise ParameterPole("0F1 lower parameter is a nonpositive integer")
    if tol is None:
        tol = mp.mpf(2) ** (-mp.mp.prec + 6)
    w = 2 * mp.sqrt(z)
    if abs(w) < bessel_crossover(b - 1):
        return _tidy(hypsum([], [b], z, tol)[0], b, z)
    with mp.extraprec(20):
        val, _ = _bessel_i_asymptotic(b - 1, w, tol)
        val = mp.gamma(b) * cpow(z, (1 - b) / 2) * val
    return _tidy(+val, b, z)


def erf_fn(x):
    """Error function (entire); odd symmetry is exact for real input."""
    x = mpify(x)
    if mp.im(x) == 0:
        r = mp.re(x)
        return -mp.erf(-r) if r < 0 else mp.erf(r)
    return mp.erf(x)


def log10_safe(x) -> float:
    x = abs(mpify(x))
    if x == 0:
        return -math.inf
    return float(mp.log10(x))
