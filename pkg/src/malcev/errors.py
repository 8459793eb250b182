class SemigroupError(Exception):
    pass


class NotAssociative(SemigroupError):
    def __init__(self, a, b, c):
        self.triple = (a, b, c)
        super().__init__(f"associativity fails at triple ({a}, {b}, {c})")


class BadZero(SemigroupError):
    pass


class BadIdentity(SemigroupError):
    pass


class DegreeMismatch(SemigroupError):
    pass


class NotAGroup(SemigroupError):
    pass


class NotRegular(SemigroupError):
    pass


class SizeBudgetExceeded(SemigroupError):
    pass


class NotSimpleFactor(SemigroupError):
    pass


class NotPartialInjective(SemigroupError):
    pass


class IdealNotInverseForm(SemigroupError):
    pass


class DeltaNotHomomorphism(SemigroupError):
    pass


class DeltaNotPartialInjective(SemigroupError):
    pass


class ThetaPreimageWrong(SemigroupError):
    pass


class NoPairFound(SemigroupError):
    pass
