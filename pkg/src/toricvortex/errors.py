"""Exception hierarchy shared by every module."""


class ToricError(Exception):
    """Base class for all errors raised by toricvortex."""


class InvalidWeightSystem(ToricError):
    """Weights are zero, do not span, or have inconsistent dimensions."""


class NotProper(InvalidWeightSystem):
    """The weights do not lie in an open half-space, so the moment map is not proper."""


class DimensionMismatch(ToricError):
    pass


class SingularParameter(ToricError):
    """The parameter is a singular value of the moment map."""


class EmptyQuotient(ToricError):
    pass


class NotFree(ToricError):
    pass


class NotOutside(ToricError):
    pass


class DegeneratePath(ToricError):
    """No generic path was found within the retry budget."""


class NoLift(ToricError):
    pass


class NotInH2(ToricError):
    pass


class NotMonotone(ToricError):
    pass


class ChernNumberTooSmall(ToricError):
    pass


class ConstructionFailure(ToricError):
    pass


class ZeroLeadingCoefficient(ToricError):
    pass


class NegativeExpectedDimension(ToricError):
    pass


class AlgorithmMismatch(ToricError):
    """The two evaluation algorithms disagreed."""

    def __init__(self, direct, wallcross, context=""):
        self.direct = direct
        self.wallcross = wallcross
        super().__init__(
            f"direct={direct} wallcross={wallcross}" + (f" ({context})" if context else "")
        )
