"""Exception hierarchy shared by every module.

Each error carries the process exit code the command line uses for it.
"""


class MinorDesignsError(Exception):
    exit_code = 4

    def to_dict(self):
        return {"error": type(self).__name__, "message": str(self)}


class ParseError(MinorDesignsError, ValueError):
    pass


class DivisionByZero(MinorDesignsError, ZeroDivisionError):
    pass


class IndexOutOfRange(MinorDesignsError, IndexError):
    pass


class InvalidParams(MinorDesignsError, ValueError):
    pass


class UnknownName(MinorDesignsError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else ""


class SymmetryMismatch(MinorDesignsError, ValueError):
    pass


class SchemeMismatch(MinorDesignsError, ValueError):
    pass


class ValueNotCovered(MinorDesignsError, ValueError):
    pass


class ValidatorFailed(MinorDesignsError):
    """A construction produced a matrix that fails its defining checks."""

    exit_code = 5


class SearchExhausted(MinorDesignsError):
    pass


class HypothesesNotSatisfied(MinorDesignsError):
    exit_code = 3


class EtaMissing(MinorDesignsError):
    exit_code = 3


class UnknownSource(MinorDesignsError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else ""


class IdentityViolated(MinorDesignsError):
    exit_code = 5


class VerificationMismatch(MinorDesignsError):
    exit_code = 2
