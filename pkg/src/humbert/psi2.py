"""Humbert Psi2[a; c, c'; x, y]: reference evaluators and asymptotic machinery."""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath as mp

from .config import EvalConfig, EvalResult
from .errors import DomainError, ParameterPole, PoleError
from .expansion import Expansion, ExpansionResult, ScaledTerm
from .quadrature import IntegrandSpec, integrate_vertical_line
from .series import accumulate, double_sum, escalating
from .special import (
    cpow,
    gamma_ratio,
    hyp1f1,
    hypsum,
    is_int,
    is_nonpos_int,
    mpify,
    pochhammer,
)

METHODS = ("double_series", "f1f1_series", "kummer_series", "mb_integral")
LATTICE_GAP = 0.1


@dataclass(frozen=True)
class Psi2Params:
    a: complex
    c: complex
    cp: complex

    def __post_init__(self):
        for name in ("c", "cp"):
            if is_nonpos_int(getattr(self, name)):
                raise ParameterPole(f"{name} must not be a nonpositive integer")

    @property
    def mp(self):
        return tuple(mpify(v) for v in (self.a, self.c, self.cp))


@dataclass(frozen=True)
class BetaCoordinates:
    """A point written as (x, beta = x*y), with an optional scale t."""

    x: complex
    beta: complex
    t: float = 1.0

    @property
    def y(self):
        return mpify(self.beta) / mpify(self.x)


@dataclass(frozen=True)
class UniformExpansionSpec:
    """Parameter shift ``n``, truncation control ``w`` (real shift) and argument ``z``."""

    n: int
    w: float
    z: complex


def _as_params(p) -> Psi2Params:
    return p if isinstance(p, Psi2Params) else Psi2Params(*p)


def _result(val, err, method, terms, evals, inputs):
    if all(mp.im(mpify(v)) == 0 for v in inputs):
        val = mp.re(val)
    return EvalResult(value=val, abs_err=err, method=method, terms=terms, evals=evals)


# --------------------------------------------------------------------------
# reference methods


def _double_series(a, c, cp, x, y, cfg, tol):
    def compute(loss):
        tl = tol * mp.mpf(2) ** -loss
        return double_sum(
            mp.mpf(1),
            lambda m: (a + m) / ((c + m) * (m + 1)) * x,
            lambda m, n: (a + m + n) / ((cp + n) * (n + 1)) * y,
            tl, cfg.max_terms)

    val, err, n = escalating(compute)
    return val, err, n, 0


def _row_series(first, coef_ratio, tol, cfg):
    def compute(loss):
        tl = tol * mp.mpf(2) ** -loss
        def terms():
            coef = mp.mpf(1)
            n = 0
            while True:
                yield coef * first(n)
                coef *= coef_ratio(n)
                n += 1
        return accumulate(terms(), tl, cfg.max_terms)

    return escalating(compute)


def _f1f1_series(a, c, cp, x, y, cfg, tol):
    val, err, n = _row_series(lambda n: hyp1f1(a + n, c, x),
                              lambda n: (a + n) / ((cp + n) * (n + 1)) * y, tol, cfg)
    return val, err, n, 0


def _kummer_series(a, c, cp, x, y, cfg, tol):
    val, err, n = _row_series(lambda n: hyp1f1(c - a - n, c, -x),
                              lambda n: (a + n) / ((cp + n) * (n + 1)) * y, tol, cfg)
    ex = mp.exp(x)
    return ex * val, abs(ex) * err, n, 0


def mb_abscissa(a, cfg: EvalConfig):
    """Contour abscissa and the Gamma(a+s) pole indices lying to its right."""
    if cfg.contour_abscissa is not None:
        sigma = mp.mpf(cfg.contour_abscissa)
        if sigma >= 0:
            raise DomainError("contour abscissa must lie left of the poles of Gamma(-s)")
    elif mp.re(a) > 0:
        sigma = -min(mp.re(a), mp.mpf(1)) / 2
    else:
        sigma = mp.mpf(-0.5)
        # keep the line at least a quarter away from the Gamma(a+s) poles
        for n in range(int(-mp.re(a)) + 3):
            if abs(mp.re(-a - n) - sigma) < 0.25:
                sigma = mp.re(-a - n) + 0.25 if mp.re(-a - n) + 0.25 < 0 else mp.re(-a - n) - 0.25
    crossed = []
    n = 0
    while mp.re(-a - n) > sigma:
        crossed.append(n)
        n += 1
    for n in crossed:
        if abs(mp.re(-a - n) - sigma) < 1e-12 and abs(mp.im(a)) < 1e-12:
            raise DomainError("contour passes through a pole of Gamma(a+s)")
    return sigma, crossed


def _mb_integral(a, c, cp, x, y, cfg, tol):
    if y == 0:
        raise DomainError("Mellin-Barnes form needs y != 0")
    if is_nonpos_int(a):
        raise DomainError("Mellin-Barnes form needs a not a nonpositive integer")
    delta = cfg.sector_margin
    if abs(mp.arg(-y)) > mp.pi / 2 - delta + 1e-15:
        raise DomainError("Mellin-Barnes form needs |arg(-y)| <= pi/2 - delta")
    sigma, crossed = mb_abscissa(a, cfg)
    log_my = mp.log(-y)

    def h(s):
        return (hyp1f1(a + s, c, x) * mp.gamma(a + s) * mp.rgamma(cp + s)
                * mp.gamma(-s) * mp.exp(s * log_my))

    q = integrate_vertical_line(IntegrandSpec(h, decay_class="gamma-ratio"), sigma, cfg)
    val = q.value
    err = q.abs_err_est
    for n in crossed:
        val += ((-1) ** n / mp.factorial(n) * hyp1f1(-n, c, x) * mp.gamma(a + n)
                * mp.rgamma(cp - a - n) * mp.exp((-a - n) * log_my))
    pref = gamma_ratio([cp], [a])
    return pref * val, abs(pref) * err, 0, q.evals


_DISPATCH = {
    "double_series": _double_series,
    "f1f1_series": _f1f1_series,
    "kummer_series": _kummer_series,
    "mb_integral": _mb_integral,
}


def psi2_reference(p, x, y, method: str, cfg: EvalConfig | None = None) -> EvalResult:
    """Evaluate Psi2 at (x, y) with one named method.

    The three series are entire in both variables; ``mb_integral`` needs
    |arg(-y)| <= pi/2 - delta and integrates along Re s = sigma, adding the
    residues of any Gamma(a+s) poles the straight line leaves on its right.
    """
    cfg = cfg or EvalConfig()
    p = _as_params(p)
    if method not in _DISPATCH:
        raise ValueError(f"unknown method {method!r}; choose from {METHODS}")
    with mp.workdps(cfg.working_dps):
        a, c, cp = p.mp
        x, y = mpify(x), mpify(y)
        tol = mp.mpf(cfg.target_rel_err) / 100
        val, err, terms, evals = _DISPATCH[method](a, c, cp, x, y, cfg, tol)
        return _result(+val, err, method, terms, evals, (a, c, cp, x, y))


# --------------------------------------------------------------------------
# left half-plane: |y| -> infinity with |arg(-y)| <= pi/2 - delta


def psi2_asym_left(p, x, N: int, cfg: EvalConfig | None = None,
                   allow_degenerate: bool = False) -> Expansion:
    """Algebraic expansion of Psi2 in (-y)^(-a-n) for large y in the left half-plane.

    Coefficients are Gamma(c')/Gamma(c'-a) 1F1[-n; c; x] (a)_n (1+a-c')_n / n!,
    each terminating 1F1 summed exactly.  When c' - a is a nonpositive integer
    the whole expansion vanishes; that raises unless ``allow_degenerate``.
    """
    cfg = cfg or EvalConfig()
    p = _as_params(p)
    if N < 1:
        raise ValueError("N must be >= 1")
    with mp.workdps(cfg.working_dps):
        a, c, cp = p.mp
        x = mpify(x)
        degenerate = is_nonpos_int(cp - a)
        if degenerate and not allow_degenerate:
            raise PoleError("c' - a is a nonpositive integer; the algebraic expansion vanishes")
        pref = gamma_ratio([cp], [cp - a])
        coeffs = [hypsum([-n], [c], x)[0] * pochhammer(a, n) * pochhammer(1 + a - cp, n)
                  / mp.factorial(n) for n in range(N)]
    delta = cfg.sector_margin
    validity = f"|y| -> inf, |arg(-y)| <= pi/2 - {delta:g}"
    if degenerate:
        validity += " (degenerate: Gamma(c'-a) pole, expansion identically zero)"
    remainder = f"O(|y|^(-Re a - {N}))"

    def evaluate(y) -> ExpansionResult:
        with mp.workdps(cfg.working_dps):
            y = mpify(y)
            if y == 0 or abs(mp.arg(-y)) > mp.pi / 2 - delta + 1e-15:
                raise DomainError("y outside |arg(-y)| <= pi/2 - delta")
            w = -y
            s = mp.fsum(cf * w ** (-n) for n, cf in enumerate(coeffs))
            term = ScaledTerm("algebraic", pref * s, -a * mp.log(w), "(-y)^(-a-n)")
            env = abs(y) ** (-mp.re(a) - N)
            return ExpansionResult(terms=[term], N=N, validity=validity, remainder=remainder,
                                   envelope=env, extras={"degenerate": degenerate})

    return Expansion(name="psi2_left", N=N, coefficients={"prefactor": pref, "series": coeffs},
                     validity=validity, remainder=remainder, _evaluate=evaluate)


# --------------------------------------------------------------------------
# right half-plane


def _in_sector(z, delta) -> bool:
    z = mpify(z)
    return z != 0 and abs(mp.arg(z)) <= mp.pi / 2 - delta + 1e-15


def right_plane_prefactor(a, c, cp):
    return gamma_ratio([c, cp], [a]) / (2 * mp.sqrt(mp.pi))


def psi2_asym_right(p, coords, variant: str = "scaled_t", cfg: EvalConfig | None = None) -> ExpansionResult:
    """Exponential leading form of Psi2 in the right half-plane.

    ``scaled_t``: coords (x, y, t) approximates Psi2[t x, t y] as t -> inf with
    x, y in the sector |arg| <= pi/2 - delta.  ``large_y``: coords (x, y)
    approximates Psi2[x, y] as y -> inf in the sector; x outside the sector
    is evaluated but flagged as unverified.  Logs are kept separately so the
    value can be compared in log space.
    """
    cfg = cfg or EvalConfig()
    p = _as_params(p)
    if variant not in ("scaled_t", "large_y"):
        raise ValueError("variant must be 'scaled_t' or 'large_y'")
    if isinstance(coords, BetaCoordinates):
        x, y, t = mpify(coords.x), coords.y, coords.t
    elif variant == "scaled_t":
        x, y, t = coords
    else:
        x, y = coords
        t = 1
    delta = cfg.sector_margin
    with mp.workdps(cfg.working_dps):
        a, c, cp = p.mp
        x, y, t = mpify(x), mpify(y), mpify(t)
        if not mp.re(a) > 0:
            raise DomainError("right-plane form needs Re(a) > 0")
        validity = f"x, y in |arg| <= pi/2 - {delta:g}"
        if variant == "scaled_t":
            if not (_in_sector(x, delta) and _in_sector(y, delta)):
                raise DomainError("x and y must lie in the sector S_delta")
            if not t > 0:
                raise DomainError("t must be positive")
            validity = "t -> +inf, " + validity
        else:
            if t != 1:
                raise DomainError("large_y variant has no scale t")
            if not _in_sector(y, delta):
                raise DomainError("y must lie in the sector S_delta")
            if not _in_sector(x, delta):
                validity = "y -> inf, x outside S_delta (unverified)"
            else:
                validity = "y -> inf, " + validity
        rx, ry = mp.sqrt(x), mp.sqrt(y)
        ssum = rx + ry
        pref = right_plane_prefactor(a, c, cp)
        log_scale = ((mp.mpf(1) / 4 - c / 2) * mp.log(x) + (mp.mpf(1) / 4 - cp / 2) * mp.log(y)
                     + (2 * a - c - cp) * mp.log(ssum) + (a - c - cp + mp.mpf(1) / 2) * mp.log(t)
                     + t * ssum ** 2)
        term = ScaledTerm("exponential", pref, log_scale,
                          "x^(1/4-c/2) y^(1/4-c'/2) (sqrt x + sqrt y)^(2a-c-c') t^(a-c-c'+1/2) e^(t (sqrt x + sqrt y)^2)")
        return ExpansionResult(terms=[term], N=1, validity=validity, remainder="relative o(1)",
                               extras={"exponent": t * ssum ** 2, "power": a - c - cp + mp.mpf(1) / 2})


# --------------------------------------------------------------------------
# lambda_n and the uniform expansions


def lambda_n(n: int) -> int:
    """Closed form of min over 1 <= k <= n-1 of (k-1)! (n-k-1)! (1 for n <= 2)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n <= 2:
        return 1
    m = n // 2
    if n % 2:
        return math.factorial(m - 1) * math.factorial(m)
    return math.factorial(m - 1) ** 2


def lambda_n_minform(n: int) -> int:
    if n <= 2:
        return 1
    return min(math.factorial(k - 1) * math.factorial(n - k - 1) for k in range(1, n))


def _lattice_guard(z, b, reach):
    for k in range(-reach, reach + 1):
        # distance exactly LATTICE_GAP is allowed; the slack absorbs binary rounding of b
        if abs(z - (-b + k)) < LATTICE_GAP * (1 - 1e-9):
            raise DomainError(f"z too close to the excluded point -b + {k}")


def uniform_2f2(a, b, c, d, spec: UniformExpansionSpec, cfg: EvalConfig | None = None) -> ExpansionResult:
    """Large-z expansion of 2F2[a, b-n; c, d; -z], uniform in the shift n.

    Returns the two algebraic sums S_n and T_n (their floors set by ``w``)
    multiplied by Gamma(c)Gamma(d)/(Gamma(a)Gamma(b-n)).  ``envelope`` is
    that prefactor times lambda_n^(-1) (|z|^(-w) + |z|^Re(a+b-c-d) e^(-Re z)).
    """
    cfg = cfg or EvalConfig()
    n, w = int(spec.n), mp.mpf(spec.w)
    if n < 0:
        raise ValueError("n must be nonnegative")
    with mp.workdps(cfg.working_dps):
        a, b, c, d, z = (mpify(v) for v in (a, b, c, d, spec.z))
        if is_int(a - b):
            raise PoleError("a - b must not be an integer")
        if is_nonpos_int(c) or is_nonpos_int(d):
            raise ParameterPole("c and d must not be nonpositive integers")
        if not w > max(mp.re(a), mp.re(b), mp.re(d)):
            raise DomainError("w must exceed Re a, Re b and Re d")
        for base in (a, b):
            frac = (w - mp.re(base)) % 1
            if not 0 < frac < 1:
                raise DomainError("fractional parts of w - Re a and w - Re b must lie in (0, 1)")
        if z == 0 or abs(mp.arg(z)) >= mp.pi:
            raise DomainError("need |arg z| < pi")
        ka = int(mp.floor(w - mp.re(a)))
        kb = int(mp.floor(w - mp.re(b))) + n
        _lattice_guard(z, b, int(mp.ceil(abs(z))) + kb)
        lz = mp.log(z)
        S = mp.fsum(gamma_ratio([a + k, b - a - n - k], [c - a - k, d - a - k]) * (-1) ** k
                    / mp.factorial(k) * mp.exp((-a - k) * lz) for k in range(ka + 1))
        T = mp.fsum(gamma_ratio([b - n + k, a - b + n - k], [c - b + n - k, d - b + n - k]) * (-1) ** k
                    / mp.factorial(k) * mp.exp((n - b - k) * lz) for k in range(kb + 1))
        pref = gamma_ratio([c, d], [a, b - n])
        lam = lambda_n(n)
        inner_env = (abs(z) ** (-w) + abs(z) ** mp.re(a + b - c - d) * mp.exp(-mp.re(z))) / lam
        terms = [ScaledTerm("S", pref * S, 0, "z^(-a-k)"), ScaledTerm("T", pref * T, 0, "z^(n-b-k)")]
        return ExpansionResult(
            terms=terms, N=max(ka, kb) + 1,
            validity="z -> inf, |arg z| < pi, z away from -b + k",
            remainder="O(lambda_n^-1 (|z|^-w + |z|^Re(a+b-c-d) e^-Re z))",
            envelope=abs(pref) * inner_env,
            extras={"S": S, "T": T, "prefactor": pref, "lambda_n": lam, "normalized_envelope": inner_env,
                    "k_max_S": ka, "k_max_T": kb})


def uniform_1f1(b, d, n: int, z, N: int, cfg: EvalConfig | None = None, strict: bool = True) -> ExpansionResult:
    """Large-z expansion of 1F1[b-n; d; -z] with an n-uniform remainder envelope.

    Sums k = 0 .. n+N of Gamma(b-n+k)/Gamma(d-b+n-k) (-1)^k/k! z^(n-b-k)
    times Gamma(d)/Gamma(b-n).  ``strict`` enforces N > max(|b|, |b-d|).
    """
    cfg = cfg or EvalConfig()
    if n < 0 or N < 1:
        raise ValueError("need n >= 0 and N >= 1")
    with mp.workdps(cfg.working_dps):
        b, d, z = mpify(b), mpify(d), mpify(z)
        if is_nonpos_int(d):
            raise ParameterPole("d must not be a nonpositive integer")
        if strict and not N > max(abs(b), abs(b - d)):
            raise DomainError("need N > max(|b|, |b - d|)")
        if z == 0 or abs(mp.arg(z)) >= mp.pi:
            raise DomainError("need |arg z| < pi")
        _lattice_guard(z, b, int(mp.ceil(abs(z))) + n + N)
        lz = mp.log(z)
        pref = gamma_ratio([d], [b - n])
        s = mp.fsum(gamma_ratio([b - n + k], [d - b + n - k]) * (-1) ** k / mp.factorial(k)
                    * mp.exp((n - b - k) * lz) for k in range(n + N + 1))
        env = ((n + 1) ** (-mp.re(b)) * mp.factorial(n) / lambda_n(n)
               * (abs(z) ** (-mp.re(b) - N - mp.mpf(1) / 2) + abs(z) ** mp.re(b - d) * mp.exp(-mp.re(z))))
        term = ScaledTerm("algebraic", pref * s, 0, "z^(n-b-k)")
        return ExpansionResult(terms=[term], N=N, validity="z -> inf, |arg z| < pi",
                               remainder="(n+1)^-Re b n! lambda_n^-1 (|z|^(-Re b-N-1/2) + |z|^Re(b-d) e^-Re z)",
                               envelope=env)


# --------------------------------------------------------------------------
# beta = x*y fixed, x -> infinity


def beta_coefficients(a, c, cp, beta, N: int):
    """Tables for the fixed-beta expansion.

    ``b1`` multiplies (-x)^(-a-m) and carries beta^n in its inner sum; ``b2``
    and ``b3`` multiply x^(a-c-m) e^x.
    """
    b1, b2, b3 = [], [], [mp.mpf(0)]
    for m in range(N):
        s = mp.mpf(0)
        for n in range(m // 2 + 1):
            k = m - 2 * n
            s += (pochhammer(a, n + k) * pochhammer(a - c + 1, n + k) * beta ** n
                  / (pochhammer(cp, n) * mp.factorial(n) * mp.factorial(k)))
        b1.append(s)
        f34 = hypsum([1, a + m, a - c + 1 + m], [a, a - c + 1, 1 + m, cp + m], beta)[0]
        b2.append(f34 * pochhammer(a, m) * pochhammer(a - c + 1, m) * beta ** m
                  / (pochhammer(cp, m) * mp.factorial(m) ** 2))
        if m >= 1:
            b3.append(mp.fsum(pochhammer(1 - a - n, m) * pochhammer(c - a - n, m) * beta ** n
                              / (pochhammer(cp, n) * mp.factorial(n)) for n in range(m)) / mp.factorial(m))
    return b1, b2, b3


def psi2_asym_beta(p, coords: BetaCoordinates, N: int, cfg: EvalConfig | None = None,
                   strict: bool = True) -> ExpansionResult:
    """Expansion of Psi2[x, beta/x] as x -> inf with beta fixed.

    Algebraic part Gamma(c)/Gamma(c-a) (-x)^(-a) sum b1(m) (-x)^(-m); exponential
    part Gamma(c)/Gamma(a) x^(a-c) e^x (sum b2(m) x^(-m) + sum b3(m) x^(-m)).
    ``strict`` enforces N > max(1, |a|, |a-c|).
    """
    cfg = cfg or EvalConfig()
    p = _as_params(p)
    if N < 1:
        raise ValueError("N must be >= 1")
    with mp.workdps(cfg.working_dps):
        a, c, cp = p.mp
        x, beta = mpify(coords.x), mpify(coords.beta)
        if strict and not N > max(1, abs(a), abs(a - c)):
            raise DomainError("need N > max(1, |a|, |a - c|)")
        if beta == 0:
            raise DomainError("beta must be nonzero")
        if x == 0 or abs(mp.arg(x)) >= mp.pi:
            raise DomainError("need |arg x| < pi")
        _lattice_guard(x, c - a, int(mp.ceil(abs(x))) + N)
        b1, b2, b3 = beta_coefficients(a, c, cp, beta, N)
        alg_sum = mp.fsum(v * (-x) ** (-m) for m, v in enumerate(b1))
        exp_sum = mp.fsum((b2[m] + b3[m]) * x ** (-m) for m in range(N))
        terms = [
            ScaledTerm("algebraic", gamma_ratio([c], [c - a]) * alg_sum, -a * mp.log(-x), "(-x)^(-a-m)"),
            ScaledTerm("exponential", gamma_ratio([c], [a]) * exp_sum, (a - c) * mp.log(x) + x, "x^(a-c-m) e^x"),
        ]
        env = abs(x) ** (-mp.re(a) - N) + abs(x) ** (mp.re(a - c) - N - mp.mpf(1) / 2) * mp.exp(mp.re(x))
        return ExpansionResult(
            terms=terms, N=N, validity="x -> inf, |arg x| < pi, beta = x y fixed",
            remainder=f"O(|x|^(-Re a - {N}) + |x|^(Re(a-c) - {N} - 1/2) e^Re x)",
            envelope=env, extras={"b1": b1, "b2": b2, "b3": b3[1:]})
