"""Exception hierarchy shared by all modules."""


class HKSliceError(Exception):
    """Base class for every error raised by :mod:`hkslice`."""


class InvalidModulus(HKSliceError, ValueError):
    pass


class NodesTooClose(HKSliceError, ValueError):
    pass


class RootFindingFailed(HKSliceError, ArithmeticError):
    pass


class NoSolution(HKSliceError, ArithmeticError):
    pass


class NormTooLarge(HKSliceError, OverflowError):
    pass


class NotOnSlice(HKSliceError, ValueError):
    pass


class ShapeViolation(HKSliceError, ValueError):
    pass


class NotCanonical(HKSliceError, ValueError):
    pass


class DegenerateParameter(HKSliceError, ValueError):
    pass


class NotOnSurface(HKSliceError, ValueError):
    pass


class PointOffVariety(HKSliceError, ValueError):
    pass


class NotOnVariety(HKSliceError, ValueError):
    pass


class ConfluentRoots(HKSliceError, ValueError):
    pass


class ChartBoundary(HKSliceError, ZeroDivisionError):
    pass


class StiffnessFailure(HKSliceError, ArithmeticError):
    pass
