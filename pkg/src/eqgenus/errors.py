"""Exception hierarchy.

Every domain error carries a stable ``code`` identifier which the command
line relays verbatim.
"""


class EqGenusError(Exception):
    code = "EqGenusError"


class EmptyExpansion(EqGenusError, ValueError):
    code = "EmptyExpansion"


class DivisionByZeroInTail(EqGenusError, ZeroDivisionError):
    code = "DivisionByZeroInTail"


class NotAKnotSlope(EqGenusError, ValueError):
    code = "NotAKnotSlope"


class TrivialKnot(EqGenusError, ValueError):
    code = "TrivialKnot"


class ParseError(EqGenusError, ValueError):
    code = "ParseError"


class OddStrandCount(EqGenusError, ValueError):
    code = "OddStrandCount"


class MultiComponent(EqGenusError, ValueError):
    code = "MultiComponent"


class NonIntegerGenus(EqGenusError, ArithmeticError):
    code = "NonIntegerGenus"


class NonPositiveN(EqGenusError, ValueError):
    code = "NonPositiveN"


class MultiBoundary(EqGenusError, ValueError):
    code = "MultiBoundary"


class OddHookCount(EqGenusError, ValueError):
    code = "OddHookCount"


class MalformedRouteCode(EqGenusError, ValueError):
    code = "MalformedRouteCode"


class UnknownQuotient(EqGenusError, ValueError):
    code = "UnknownQuotient"


class NoSurface(EqGenusError, ValueError):
    code = "NoSurface"


class ConditionCFails(EqGenusError, ValueError):
    code = "ConditionCFails"


class InconsistentInput(EqGenusError, ValueError):
    code = "InconsistentInput"


class UnknownClass(EqGenusError, KeyError):
    code = "UnknownClass"

    def __str__(self):
        return str(self.args[0]) if self.args else self.code
