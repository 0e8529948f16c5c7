"""Exception types raised across the package."""


class CogrowthError(Exception):
    """Base class for all errors raised by cogrowth."""


class WordSyntaxError(CogrowthError, ValueError):
    """Text could not be parsed as a word."""


class AlphabetError(CogrowthError, ValueError):
    """A letter lies outside the alphabet of the configured rank."""


class TrivialSubgroupError(CogrowthError, ValueError):
    """The operation is undefined for the trivial subgroup."""


class AutomatonError(CogrowthError, ValueError):
    """An automaton does not satisfy the preconditions of an operation."""


class NotNielsenError(CogrowthError, ValueError):
    """A generating set fails the Nielsen cancellation conditions."""


class ConvergenceError(CogrowthError, RuntimeError):
    """Power iteration did not converge within the iteration budget."""
