"""Configuration and result containers."""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field, replace

import mpmath as mp

DEFAULT_TARGET = 1e-12


def _env_target() -> float:
    raw = os.environ.get("HUMBERT_PRECISION")
    if raw is None:
        return DEFAULT_TARGET
    return float(raw)


@dataclass(frozen=True)
class EvalConfig:
    """Accuracy and work budgets for one evaluation.

    ``dps`` is the decimal working precision of the mpmath backend; when left
    as ``None`` it is derived from ``target_rel_err`` with ten guard digits.
    ``contour_abscissa`` of ``None`` lets Mellin-Barnes routines place the
    line between the pole families themselves.
    """

    target_rel_err: float = field(default_factory=_env_target)
    max_terms: int = 100_000
    max_evals: int = 400_000
    contour_abscissa: float | None = None
    sector_margin: float = 0.1
    dps: int | None = None

    def __post_init__(self):
        if not 0.0 < self.target_rel_err < 1.0:
            raise ValueError("target_rel_err must lie in (0, 1)")
        if self.max_terms < 16:
            raise ValueError("max_terms must be at least 16")
        if self.max_evals <= 0:
            raise ValueError("max_evals must be positive")
        if not 0.0 < self.sector_margin <= math.pi / 2:
            raise ValueError("sector_margin must lie in (0, pi/2]")

    @property
    def working_dps(self) -> int:
        if self.dps is not None:
            return self.dps
        return max(20, int(-math.log10(self.target_rel_err)) + 10)

    def with_(self, **changes) -> "EvalConfig":
        return replace(self, **changes)


@dataclass
class SeriesResult:
    value: mp.mpc
    abs_tail_bound: mp.mpf
    terms_used: int
    converged: bool


def _json_real(v):
    f = float(v)
    return f if math.isfinite(f) else mp.nstr(v, 6)


@dataclass
class EvalResult:
    """Value of a special function together with its error bookkeeping.

    ``value`` is an mpmath number, so magnitudes far outside the double range
    (the exponentially large regimes of the Humbert functions) are kept
    exactly; ``log_abs`` and ``arg`` expose them in log form.
    """

    value: mp.mpc
    abs_err: mp.mpf
    method: str
    terms: int = 0
    evals: int = 0

    @property
    def rel_err(self) -> float:
        mag = abs(self.value)
        if mag == 0:
            return float(self.abs_err)
        return float(mp.mpf(self.abs_err) / mag)

    def __post_init__(self):
        self.abs_err = mp.mpf(self.abs_err)

    @property
    def log_abs(self) -> float:
        return float(mp.log(abs(self.value))) if self.value != 0 else -math.inf

    @property
    def arg(self) -> float:
        return float(mp.arg(self.value))

    def __complex__(self) -> complex:
        return complex(self.value)

    def as_dict(self) -> dict:
        v = mp.mpc(self.value)
        return {
            "value": {"re": mp.nstr(v.real, 17), "im": mp.nstr(v.imag, 17)},
            "abs_err": _json_real(self.abs_err),
            "method": self.method,
            "terms": int(self.terms),
            "evals": int(self.evals),
        }
