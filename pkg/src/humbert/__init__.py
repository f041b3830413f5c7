"""Humbert functions Psi1, Psi2 and Appell F2: reference evaluators, asymptotic expansions, verification suites."""

from .config import EvalConfig, EvalResult, SeriesResult
from .errors import (BelowNoiseFloor, BranchCutError, DivergentTail, DomainError, EmptyOverlap, HumbertError,
                     NoApplicableMethod, NoConvergence, ParameterPole, PoleError, SingularEndpoint, SlowDecay)
from .expansion import Expansion, ExpansionResult, ScaledTerm
from .f2 import F2Params, confluence_limit, f2_asym_small_y, f2_reference
from .psi1 import Psi1Params, psi1_asym_small_x, psi1_asym_small_y, psi1_auto, psi1_reference
from .psi2 import (BetaCoordinates, Psi2Params, UniformExpansionSpec, lambda_n, psi2_asym_beta, psi2_asym_left,
                   psi2_asym_right, psi2_reference, uniform_1f1, uniform_2f2)

__all__ = [
    "EvalConfig", "EvalResult", "SeriesResult", "Expansion", "ExpansionResult", "ScaledTerm",
    "HumbertError", "DomainError", "PoleError", "ParameterPole", "BranchCutError", "NoConvergence",
    "SingularEndpoint", "DivergentTail", "SlowDecay", "NoApplicableMethod", "EmptyOverlap", "BelowNoiseFloor",
    "Psi1Params", "psi1_reference", "psi1_auto", "psi1_asym_small_x", "psi1_asym_small_y",
    "Psi2Params", "BetaCoordinates", "UniformExpansionSpec", "psi2_reference", "psi2_asym_left",
    "psi2_asym_right", "psi2_asym_beta", "uniform_2f2", "uniform_1f1", "lambda_n",
    "F2Params", "f2_reference", "f2_asym_small_y", "confluence_limit",
]
