"""Containers for truncated asymptotic expansions.

Every term is kept as ``coefficient * exp(log_scale)`` so that powers such as
``(y/x)**(a-c')`` and exponentials such as ``exp(y/x)`` can be combined in log
space long before their product would leave any fixed floating range.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable

import mpmath as mp


@dataclass(frozen=True)
class ScaledTerm:
    label: str
    coefficient: Any
    log_scale: Any = 0
    descriptor: str = ""

    @property
    def value(self):
        return self.coefficient * mp.exp(self.log_scale)

    @property
    def log_value(self):
        if self.coefficient == 0:
            return mp.mpf("-inf")
        return mp.log(self.coefficient) + self.log_scale


@dataclass
class ExpansionResult:
    """A truncated expansion evaluated at one point.

    ``envelope`` is the numeric size of the stated remainder with unit
    implied constant (``None`` when the theorem gives only an order), and
    ``extras`` carries per-expansion data such as coefficient tables.
    """

    terms: list[ScaledTerm]
    N: int
    validity: str
    remainder: str = ""
    envelope: Any = None
    extras: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.N < 1:
            raise ValueError("truncation order N must be >= 1")

    @property
    def value(self):
        return mp.fsum(t.value for t in self.terms)

    @property
    def log_value(self):
        logs = [t.log_value for t in self.terms if t.coefficient != 0]
        if not logs:
            return mp.mpf("-inf")
        ref = max(logs, key=lambda v: mp.re(v))
        acc = mp.fsum(mp.exp(v - ref) for v in logs)
        return ref + mp.log(acc)

    def term(self, label: str) -> ScaledTerm:
        for t in self.terms:
            if t.label == label:
                return t
        raise KeyError(label)

    def branch_value(self, label: str):
        return self.term(label).value


@dataclass
class Expansion:
    """Coefficient tables of an expansion plus an evaluator in the limit variable."""

    name: str
    N: int
    coefficients: dict
    validity: str
    remainder: str
    _evaluate: Callable[[Any], ExpansionResult] = field(repr=False)

    def evaluate(self, point) -> ExpansionResult:
        return self._evaluate(point)

    __call__ = evaluate
