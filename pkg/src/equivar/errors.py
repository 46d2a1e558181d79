"""Exception hierarchy.

Every error carries a stable machine-readable ``code`` and the process exit
status the CLI uses when the error escapes a command.
"""

from __future__ import annotations

EXIT_OK = 0
EXIT_HYPOTHESIS = 2
EXIT_PARSE = 3
EXIT_INVARIANT = 4


class EquivarError(Exception):
    code = "error"
    exit_status = EXIT_INVARIANT


# linear algebra
class DimensionMismatchError(EquivarError, ValueError):
    code = "dimension_mismatch"


class ContainmentError(EquivarError, ValueError):
    code = "containment_violation"


# complexes and actions
class InvalidComplexError(EquivarError, ValueError):
    code = "invalid_complex"
    exit_status = EXIT_PARSE


class InvalidPermutationError(EquivarError, ValueError):
    code = "invalid_permutation"
    exit_status = EXIT_PARSE


class NotAnInvolutionError(InvalidPermutationError):
    code = "not_an_involution"


class NonSimplicialMapError(EquivarError, ValueError):
    code = "non_simplicial_map"
    exit_status = EXIT_PARSE


class SimplexCapError(EquivarError, ValueError):
    code = "simplex_cap_exceeded"
    exit_status = EXIT_PARSE


class ParseError(EquivarError, ValueError):
    code = "parse_error"
    exit_status = EXIT_PARSE


class NonRegularActionError(EquivarError, ValueError):
    code = "non_regular_action"
    exit_status = EXIT_HYPOTHESIS


# engine
class WindowTooSmallError(EquivarError, ValueError):
    code = "window_too_small"


class EmptyFixedSetError(EquivarError, ValueError):
    code = "empty_fixed_set"
    exit_status = EXIT_HYPOTHESIS


class HypothesisError(EquivarError, ValueError):
    """A caller-asserted or engine-checked hypothesis does not hold."""

    code = "hypothesis_failure"
    exit_status = EXIT_HYPOTHESIS


class InvariantViolation(EquivarError, AssertionError):
    """Two computations that must agree did not."""

    code = "invariant_violation"
    exit_status = EXIT_INVARIANT


# closed-form evaluators
class InconsistentInputsError(HypothesisError):
    code = "inconsistent_inputs"


class ConstraintViolationError(HypothesisError):
    code = "constraint_violation"


class InadmissibleError(HypothesisError):
    code = "inadmissible_invariants"


class RouteMismatchError(HypothesisError):
    code = "route_mismatch"


class BoundViolationError(HypothesisError):
    code = "bound_violation"
