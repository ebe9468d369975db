"""Exception hierarchy shared by every module."""


class StabfanError(Exception):
    """Base class for domain errors raised by stabfan."""


class UnsupportedType(StabfanError):
    pass


class EmptySubset(StabfanError):
    pass


class UnknownVertex(StabfanError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class UnknownArrow(StabfanError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class InternalError(StabfanError, RuntimeError):
    """An invariant guaranteed by the theory was violated; always a bug or a finding."""


class NotInTitsCone(StabfanError):
    pass


class IterationLimit(InternalError):
    pass


class LengthMismatch(StabfanError, ValueError):
    pass


class NotAChamber(StabfanError):
    pass


class NotAWall(StabfanError):
    pass


class VertexInV(StabfanError):
    pass


class MixedSignNormal(StabfanError):
    """A wall normal with entries of both signs: would contradict sign-coherence."""


class UnsupportedRank(StabfanError):
    pass


class QuiverSyntaxError(StabfanError, ValueError):
    def __init__(self, message, line, column=1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class DuplicateArrowName(StabfanError, ValueError):
    pass


class NonCyclicPotentialTerm(StabfanError, ValueError):
    pass


class DeletesEverything(StabfanError, ValueError):
    pass


class ShapeMismatch(StabfanError, ValueError):
    pass


class FieldNotFinite(StabfanError, ValueError):
    pass


class BudgetExceeded(StabfanError):
    def __init__(self, needed, budget):
        super().__init__(f"search space {needed} exceeds budget {budget}")
        self.needed = needed
        self.budget = budget


class RelationViolation(StabfanError, ValueError):
    pass
