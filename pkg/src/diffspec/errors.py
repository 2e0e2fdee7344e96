"""Exception types shared across the package.

Validation problems raise plain ``ValueError`` (or the subclasses below);
the distinction matters mostly for the CLI, which maps each class to a
dedicated exit code.
"""


class GuardExceededError(ValueError):
    """A requested field degree exceeds the sweep memory/time guard."""


class TheoremViolationError(RuntimeError):
    """An internal claim of the structured solver failed at runtime.

    The structured solution counter encodes the case analysis behind the
    closed-form spectrum as runtime assertions.  If one of them fires, the
    result is not a crash to swallow but a finding: either the arithmetic
    core is broken or the closed form does not hold for the instance.
    """
