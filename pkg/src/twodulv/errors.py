"""Exception types shared across the package."""


class TwoDulvError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(TwoDulvError):
    """An operation was applied outside its mathematical domain
    (division by an interval touching zero, negative scalar, ...)."""


class ValidationError(TwoDulvError):
    """Invalid user-supplied data. Carries the complete list of problems,
    not just the first one found."""

    def __init__(self, problems):
        if isinstance(problems, str):
            problems = [problems]
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


class PipelineError(TwoDulvError):
    """A pipeline step failed. Wraps the underlying error with the step
    number and name so batch runs report where they died."""

    def __init__(self, step, name, cause):
        self.step = step
        self.step_name = name
        self.cause = cause
        super().__init__(f"step {step} ({name}): {cause}")


class ConvergenceError(TwoDulvError):
    """The eigen solver failed to converge. ``rayleigh`` holds the two
    leading Rayleigh quotients for diagnosis (a near-tie between them is
    the only way power iteration can stall)."""

    def __init__(self, message, rayleigh):
        self.rayleigh = tuple(rayleigh)
        super().__init__(f"{message} (leading Rayleigh quotients: "
                         f"{self.rayleigh[0]:.6g}, {self.rayleigh[1]:.6g})")
