"""Exception types raised across the package.

All of them derive from ``ValueError`` so the CLI can map any of them to a
usage error without enumerating the hierarchy.
"""


class QaoaLieError(ValueError):
    """Base class for argument and contract errors."""


class DimensionError(QaoaLieError):
    """Operands act on different numbers of qubits."""


class DegenerateInputError(QaoaLieError):
    """An operand that must be nonzero is empty."""


class SiteIndexError(QaoaLieError):
    """A site index lies outside ``[1, n]``."""


class UnsupportedSizeError(QaoaLieError):
    """The requested construction does not exist for this ``n``."""


class ZeroCouplingError(QaoaLieError):
    """The sublattice couplings vanish where the construction needs them."""


class MalformedDerivationError(QaoaLieError):
    """A derivation does not have the shape an operation expects."""


class BoundaryError(QaoaLieError):
    """An extension would step past the last site of the chain."""


class SizeCapError(QaoaLieError):
    """Dense evaluation was requested above the supported qubit count."""


class NonHermitianError(QaoaLieError):
    """A pulse Hamiltonian has non-real Pauli coefficients."""


class DepthBudgetError(QaoaLieError):
    """A derivation tree is deeper than the compile budget allows."""
