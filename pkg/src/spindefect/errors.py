"""Exception hierarchy shared across the package.

Input problems (bad framings, malformed text, out-of-range parameters) raise
ValueError subclasses so that callers can treat them like ordinary argument
errors.  Internal cross-check failures raise InternalDisagreement, which is
deliberately *not* a ValueError: it signals a bug, not bad input.
"""


class SpinDefectError(Exception):
    """Base class for every error raised by this package."""


class PrecisionError(SpinDefectError):
    """A floating-point evaluation did not land close enough to an integer."""


class UnrecognizedForm(SpinDefectError, ValueError):
    """Seifert data could not be normalized onto any catalogued case."""


class NoAdmissibleRearrangement(SpinDefectError):
    """No fiber permutation/shift within the search bound meets the defect
    engine's normalization conditions."""


class DegenerateEuler(SpinDefectError, ValueError):
    """The rational Euler number vanishes; the boundary is not a rational
    homology sphere and the defect is undefined."""


class NoSpinForm(SpinDefectError, ValueError):
    """No re-presentation with even central framing and vanishing meridian
    spin values exists for the requested data."""


class NoSolution(SpinDefectError):
    """A GF(2) linear system had no solution.  Cannot happen for intersection
    forms of closed tree plumbings; kept as a guard for corrupted input."""


class InternalDisagreement(SpinDefectError):
    """Two independent computation routes returned different answers."""
