class GlkacError(Exception):
    pass


class ShapeError(GlkacError, ValueError):
    """Weights of different (m, n) were combined."""


class WeightParseError(GlkacError, ValueError):
    pass


class NotDominantError(GlkacError, ValueError):
    pass


class CapExceededError(GlkacError):
    """A configurable size guard was hit."""


class OrderError(GlkacError, ValueError):
    """An interval or matrix violated the partial order it was built on."""


class ConjectureFalsified(GlkacError):
    """The conjectured multiplicity rule produced something inconsistent.

    This is a result, not a crash: callers that stress-test the rule catch
    it and report the offending weight.
    """

    def __init__(self, reason, mu=None, theta=None, detail=None):
        self.reason = reason
        self.mu = mu
        self.theta = theta
        self.detail = detail
        msg = reason
        if mu is not None:
            msg += f" (mu={mu}"
            if theta is not None:
                msg += f", theta={tuple(theta)}"
            msg += ")"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)
