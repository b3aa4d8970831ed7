"""
Errors raised by the matroid kernel.

All of them are ValidationErrors: they describe input (or a requested
operation) that does not satisfy the axioms or a precondition. Witness data
rides along as attributes so callers can print it.
"""
from django.core.exceptions import ValidationError


class MatroidError(ValidationError):
    code = "matroid"

    def __init__(self, message, **witness):
        super().__init__(message, code=self.code)
        for key, value in witness.items():
            setattr(self, key, value)

    def __str__(self):
        return self.message


class EmptyBases(MatroidError):
    code = "empty_bases"


class MixedCardinality(MatroidError):
    code = "mixed_cardinality"


class ExchangeFailure(MatroidError):
    """Basis exchange fails for (first, second) at element."""
    code = "exchange_failure"


class ElementNotInGroundSet(MatroidError):
    code = "element_not_in_ground_set"


class LabelCollision(MatroidError):
    code = "label_collision"


class InvalidLabel(MatroidError):
    code = "invalid_label"


class GroundSetOverflow(MatroidError):
    code = "ground_set_overflow"


class NotACircuitHyperplane(MatroidError):
    code = "not_a_circuit_hyperplane"


class NotAFreeBasis(MatroidError):
    code = "not_a_free_basis"


class BasepointDegenerate(MatroidError):
    code = "basepoint_degenerate"


class NotConnected(MatroidError):
    code = "not_connected"


class InvalidTree(MatroidError):
    code = "invalid_tree"


class BudgetExceeded(MatroidError):
    code = "budget_exceeded"


class PreconditionViolated(MatroidError):
    code = "precondition_violated"


class UnknownName(MatroidError):
    code = "unknown_name"


class BadRank(MatroidError):
    code = "bad_rank"


class ConstraintUnsatisfiable(MatroidError):
    code = "constraint_unsatisfiable"


class WitnessNotFound(MatroidError):
    code = "witness_not_found"


class MatroidSyntaxError(MatroidError):
    code = "syntax"

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message, line=line)
