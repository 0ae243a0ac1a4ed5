class IetLabError(Exception):
    def __init__(self, errr: str):
        super().__init__(errr)


# ---- user / input problems: exit code 1 ----


class UsageError(IetLabError):
    pass


class ParseError(UsageError):
    def __init__(self, errr: str, line: int = 1, column: int = 1):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {errr}")


class DuplicateSymbol(UsageError):
    pass


class MalformedWitness(UsageError):
    pass


class MixedSymbolTables(UsageError):
    pass


class SizeMismatch(UsageError):
    pass


class OutOfDomain(UsageError):
    pass


class InvalidIet(UsageError):
    pass


class InvalidPlMap(UsageError):
    pass


class UnboundGenerator(UsageError):
    pass


class EnumerationBoundExceeded(UsageError):
    pass


# ---- the mathematics says no: exit code 2 ----


class Obstruction(IetLabError):
    pass


class InsufficientPrecision(Obstruction):
    pass


class AObstruction(Obstruction):
    pass


class NotAReverser(Obstruction):
    pass


class NotAnInvolution(Obstruction):
    pass


class NotInGn(Obstruction):
    def __init__(self, errr: str, block: int = 0):
        self.block = block
        super().__init__(errr)


class NotAnIet(Obstruction):
    def __init__(self, errr: str, interval=None):
        self.interval = interval
        super().__init__(errr)


class NotOfThisFormError(Obstruction):
    pass


class NotApplicable(Obstruction):
    pass


class NotAThreeIet(Obstruction):
    pass


class NotPeriodicWithinBudget(Obstruction):
    pass


class BudgetExhausted(Obstruction):
    pass


class UnresolvedComponent(Obstruction):
    pass


class RelationNotSatisfied(Obstruction):
    pass


class FreenessUnverified(Obstruction):
    pass


class HypothesesViolated(Obstruction):
    pass


class RationalGapNotFound(Obstruction):
    pass


class NotAntisymmetric(Obstruction):
    pass


class ConditionFails(Obstruction):
    pass


class InternalVerificationFailed(IetLabError):
    pass
