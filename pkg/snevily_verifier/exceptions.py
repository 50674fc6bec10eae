"""
Exception hierarchy for the Snevily verifier.

Every error raised deliberately by the package derives from SnevilyError so
callers (the CLI in particular) can tell input problems apart from bugs.
"""


class SnevilyError(Exception):
    """Base class for all package errors"""


class ParseError(SnevilyError, ValueError):
    """Malformed text for a group, element, field, or character"""


class GroupError(SnevilyError, ValueError):
    """Invalid group specification or group element"""


class FieldError(SnevilyError, ValueError):
    """Invalid field construction or field operation"""


class InstanceError(SnevilyError, ValueError):
    """Invalid problem instance (sizes, duplicates, foreign elements)"""


class BudgetExceededError(SnevilyError):
    """An enumeration would exceed its configured budget"""

    def __init__(self, what: str, required: int, budget: int):
        super().__init__(f"{what} needs {required} steps, budget is {budget}")
        self.what = what
        self.required = required
        self.budget = budget


class SpecializationError(SnevilyError):
    """No nonvanishing specialization was found"""


class ConfigurationError(SnevilyError, ValueError):
    """Invalid run configuration"""
