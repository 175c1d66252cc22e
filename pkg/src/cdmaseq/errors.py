"""Exception hierarchy shared by every cdmaseq module."""


class SequenceDesignError(ValueError):
    """Base class for parameter and construction errors."""


class NonPrimitiveModulus(SequenceDesignError):
    pass


class LogOfZero(SequenceDesignError):
    pass


class NotAnOddPrime(SequenceDesignError):
    pass


class HallNotDefined(SequenceDesignError):
    pass


class GcdNotOne(SequenceDesignError):
    pass


class FermatPrimeRequired(SequenceDesignError):
    pass


class DimensionMismatch(SequenceDesignError):
    pass


class NotCoprime(SequenceDesignError):
    pass


class ColumnNotAShift(SequenceDesignError):
    pass


class MultipleDotsInColumn(SequenceDesignError):
    pass


class OracleDisagreement(RuntimeError):
    """Berlekamp-Massey and the gcd oracle disagree. Indicates a bug."""
