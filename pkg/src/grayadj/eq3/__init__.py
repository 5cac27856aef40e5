from .cells import Cell3, Gen, MoveError, Swap, evaluate, to_term
from .prover import (CheckResult, EqualityCertificate, check_certificate,
                     normalize3_strict, prove_eq3, strict_equal)
from .rules import RewriteStep, StepError

__all__ = ["Cell3", "CheckResult", "EqualityCertificate", "Gen", "MoveError",
           "RewriteStep", "StepError", "Swap", "check_certificate",
           "evaluate", "normalize3_strict", "prove_eq3", "strict_equal",
           "to_term"]
