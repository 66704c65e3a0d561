"""Exception hierarchy for the toolkit.

Capability errors signal that an input is valid but exceeds a configured
resource cap (dimension limit, node budget); invalid-input errors signal
malformed or degenerate data.
"""


class LatgeomError(Exception):
    """Base class for all toolkit errors."""


class InvalidInputError(LatgeomError):
    """Malformed or degenerate input (CLI exit code 2)."""


class CapabilityError(LatgeomError):
    """Valid input beyond a configured resource cap (CLI exit code 1)."""


class InvalidLatticeError(InvalidInputError):
    """Basis vectors are linearly dependent (Gram determinant <= 0)."""


class UnsupportedRankError(InvalidInputError):
    """Operation requires a full-rank lattice."""


class CatalogMissError(InvalidInputError):
    """Unknown catalog name / dimension pair."""


class ProjectionMismatchError(InvalidInputError):
    """Target point lies outside the span of the lattice."""


class PolarUndefinedError(InvalidInputError):
    """Polar requested for a body without 0 in its interior."""


class DimensionMismatchError(InvalidInputError):
    """Operands live in different dimensions."""


class UnboundedBodyError(InvalidInputError):
    """Volume or vertex enumeration requested for an unbounded body."""


class NotAPackingError(InvalidInputError):
    """Ball lattice is not a packing (lambda_1 < 2r)."""


class MissingConstantError(InvalidInputError):
    """A required packing/covering constant is not in the catalog."""
