"""Exception types shared across the package."""


class HoleyError(Exception):
    """Base class for all package errors."""


class InvalidParameters(HoleyError):
    pass


class NoSuchEdge(HoleyError):
    pass


class NotTwin(HoleyError):
    pass


class OriginNotEligible(HoleyError):
    pass


class MalformedLeave(HoleyError):
    pass


class HypothesisViolation(HoleyError):
    """An operation was invoked on a state that fails its preconditions."""


class PreconditionViolation(HoleyError):
    pass


class NotAdmissible(HoleyError):
    pass


class OutOfCoveredRange(HoleyError):
    """Parameters are admissible but fall in a window this library does not decide."""


class ResourceExhausted(HoleyError):
    """A bounded search ran out of budget.  Never a nonexistence claim."""


class InvalidInputSystem(HoleyError):
    pass


class InternalInvariantViolation(HoleyError):
    """A state arose that the underlying theory rules out; indicates a bug."""


class ParseError(HoleyError):
    pass


class Unsupported(HoleyError):
    pass
