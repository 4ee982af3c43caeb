from .asymptotics import (
    ComparisonRow,
    Decomposition,
    ErrorEnvelope,
    ErrorRow,
    FitReport,
    FittedConstant,
    Formula8Eval,
    RemainderRow,
)
from .config import RunConfig, Settings
from .constants import KTable
from .numeric import ExpansionEval, QuadratureResult
from .sieve import ExactSumResult, SieveConfig
from .summation import AuxSumKind, AuxSumResult, AuxSumTag

__all__ = [
    "ComparisonRow",
    "Decomposition",
    "ErrorEnvelope",
    "ErrorRow",
    "FitReport",
    "FittedConstant",
    "Formula8Eval",
    "RemainderRow",
    "RunConfig",
    "Settings",
    "KTable",
    "ExpansionEval",
    "QuadratureResult",
    "ExactSumResult",
    "SieveConfig",
    "AuxSumKind",
    "AuxSumResult",
    "AuxSumTag",
]
