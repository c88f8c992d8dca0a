"""Exception hierarchy shared by every umx module."""


class UmxError(Exception):
    """Base class for all umx errors."""


class RatParseError(UmxError, ValueError):
    """A rational string is malformed or not in canonical reduced form."""


class SpaceFormatError(UmxError, ValueError):
    """A space, pair or map document has the wrong shape."""


class UltrametricError(UmxError, ValueError):
    """The matrix is not an ultrametric; ``violations`` lists every failure."""

    def __init__(self, violations):
        self.violations = list(violations)
        head = ", ".join(str(v) for v in self.violations[:3])
        more = "" if len(self.violations) <= 3 else f" (+{len(self.violations) - 3} more)"
        super().__init__(f"{len(self.violations)} ultrametric violation(s): {head}{more}")


class EmptySetError(UmxError, ValueError):
    pass


class UnknownLabelError(UmxError, KeyError):
    def __str__(self):
        return f"unknown point label: {self.args[0]!r}"


class DomainMismatch(UmxError, ValueError):
    pass


class PreconditionFailed(UmxError):
    """A hypothesis of a theorem-backed operation does not hold.

    ``hypothesis`` names the failing condition (e.g. ``"separation"``).
    """

    def __init__(self, hypothesis, detail=""):
        self.hypothesis = hypothesis
        self.detail = detail
        super().__init__(f"precondition failed: {hypothesis}" + (f" ({detail})" if detail else ""))


class TheoremViolation(UmxError, AssertionError):
    """A proven statement failed on a concrete instance.

    This always indicates a bug; ``instance`` holds a JSON-ready repro.
    """

    def __init__(self, message, instance=None):
        self.instance = instance
        super().__init__(message)


class LemmaViolation(TheoremViolation):
    pass


class PoolTooShallow(UmxError, ValueError):
    pass


class NoProperBall(UmxError, ValueError):
    pass


class GenerationExhausted(UmxError, RuntimeError):
    pass
