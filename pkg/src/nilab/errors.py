"""Exception hierarchy.

The split that matters downstream: ContractError (and subclasses) means the
caller misused an operation; IdentityError means an exact mathematical fact
that is a theorem failed to hold, i.e. a bug somewhere; HypothesisViolation
is a reported property of the input orbit, not a failure of the code.
"""


class NilabError(Exception):
    """Base class for package errors."""


class ShapeError(NilabError):
    """Matrix dimensions do not fit the requested operation."""


class ContractError(NilabError):
    """An operation was called outside its contract."""


class DegreeMismatchError(ContractError):
    """Samples are inconsistent with the declared polynomial degree."""


class UnsupportedAlgebraError(ContractError):
    """Family/rank combination outside the supported classical range."""


class PartitionError(ContractError):
    """Partition is invalid for the requested family or matrix size."""


class GraduationError(NilabError):
    """Restriction of ad(h) is not diagonalizable with rational eigenvalues."""


class IdentityError(NilabError):
    """An identity that holds by theorem failed exactly: indicates a bug."""


class InternalError(NilabError):
    """A step that must succeed for valid inputs failed."""


class HypothesisViolation(NilabError):
    """The orbit does not satisfy a precondition of the index pipeline
    (center of the centralizer not spanned by the gradients, or duplicated
    exponents where a distinct-exponent argument is required)."""
