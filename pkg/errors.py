"""
Exception hierarchy shared by every module.

All errors derive from QuantizationError and from the closest builtin, so
callers may catch either.
"""
from typing import Optional, Tuple


class QuantizationError(Exception):
    """Base class for all engine errors"""


class TruncationOverflowError(QuantizationError, ArithmeticError):
    """A lambda monomial exceeded config.lambda_weight_cap"""


class DomainError(QuantizationError, ValueError):
    """Argument outside the domain of an operation"""


class DimensionMismatchError(QuantizationError, ValueError):
    """Operands live in spaces of different dimension"""


class DegreeCapExceededError(QuantizationError, ValueError):
    """Polynomial degree exceeds the truncation order of an operator"""


class ParseError(QuantizationError, ValueError):
    """Malformed expression, algebra file or graph file"""


class GraphError(QuantizationError, ValueError):
    """Invalid admissible graph or graph request"""


class NumericOverflowError(QuantizationError, OverflowError):
    """Numeric evaluation produced a non-finite value"""


class LieAlgebraError(QuantizationError, ValueError):
    """Structure constants fail validation"""

    def __init__(self, message: str, witness: Optional[Tuple[int, ...]] = None):
        super().__init__(message)
        self.witness = witness


class AntisymmetryViolation(LieAlgebraError):
    """f_ij^k != -f_ji^k for the 1-based witness (i, j, k)"""


class JacobiViolation(LieAlgebraError):
    """Jacobi sum nonzero for the 1-based witness (i, j, k, l)"""
