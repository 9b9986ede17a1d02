"""Exceptions raised by the gassmann library.

Every error knows the exit code the command line maps it to: 2 for usage
problems, 3 when a search ran out of budget.
"""


class GassmannError(Exception):
    exit_code = 2
    kind = "error"

    def to_json(self):
        return {"error": self.kind, "message": str(self)}


class ModulusMismatch(GassmannError):
    kind = "modulus_mismatch"


class NotAUnit(GassmannError):
    kind = "not_a_unit"


class NotInvertible(GassmannError):
    kind = "not_invertible"


class NotInKernel(GassmannError):
    kind = "not_in_kernel"


class BadParameter(GassmannError):
    kind = "bad_parameter"


class DegeneratePair(GassmannError):
    kind = "degenerate_pair"


class ParseError(GassmannError):
    kind = "parse_error"

    def __init__(self, text, offset, token):
        self.text = text
        self.offset = offset
        self.token = token
        super().__init__(f"unexpected {token!r} at offset {offset} in {text!r}")


class BudgetExceeded(GassmannError):
    exit_code = 3
    kind = "budget_exceeded"

    def __init__(self, message, stats=None):
        super().__init__(message)
        self.stats = dict(stats or {})
