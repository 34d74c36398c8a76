"""Exception classes.

Every error carries the CLI exit code of its family, so the command layer maps
library failures to exit codes without a lookup table:

* 2 -- refused: a hypothesis or precondition of the computation is not met;
* 3 -- input error: malformed session text, unknown names, shape mismatches;
* 4 -- infeasible: infinite colength/covolume or an exhausted search bound.
"""


class SingulensError(Exception):
    exit_code = 2


# -- refused ---------------------------------------------------------------


class HypothesisNotMet(SingulensError):
    exit_code = 2


class NondegeneracyUnknown(HypothesisNotMet):
    pass


class NotConvenient(HypothesisNotMet):
    pass


class NonStronglyConvexCone(HypothesisNotMet):
    pass


class NotFullDimensional(HypothesisNotMet):
    pass


class DegenerateCone(HypothesisNotMet):
    pass


class UnsupportedCone(HypothesisNotMet):
    pass


class UnsupportedDimension(HypothesisNotMet):
    pass


class NonCompactFace(HypothesisNotMet):
    pass


class ZeroGerm(HypothesisNotMet):
    pass


class ConstantGerm(HypothesisNotMet):
    pass


class ConstantTermPresent(HypothesisNotMet):
    pass


class EmptySupport(HypothesisNotMet):
    pass


class NonIntegerResult(HypothesisNotMet):
    """Internal guard: a quantity that must be an integer was not."""


# -- input errors ------------------------------------------------------------


class InputError(SingulensError):
    exit_code = 3


class DimensionMismatch(InputError):
    pass


class NegativeExponent(InputError):
    pass


class UnknownVerb(InputError):
    pass


class UnknownBinding(InputError):
    pass


class IoError(InputError):
    pass


class ParseError(InputError):
    def __init__(self, line, col, expected):
        self.line = line
        self.col = col
        self.expected = expected
        super().__init__(f"line {line}, column {col}: expected {expected}")


# -- infeasible --------------------------------------------------------------


class Infeasible(SingulensError):
    exit_code = 4


class InfiniteColength(Infeasible):
    pass


class InfiniteCovolume(Infeasible):
    pass


class WitnessBoundExceeded(Infeasible):
    pass


class BoundTooSmall(Infeasible):
    pass


class RangeTooShort(Infeasible):
    pass


class NonStabilized(Infeasible):
    pass
