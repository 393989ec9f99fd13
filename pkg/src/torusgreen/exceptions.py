"""Exception and warning types raised by torusgreen."""


class TorusGreenError(Exception):
    """Base class for all torusgreen errors."""


class DegenerateLattice(TorusGreenError, ValueError):
    pass


class PrecisionLoss(TorusGreenError, ArithmeticError):
    """Theta series cannot be summed reliably (Im tau too small or no convergence)."""


class PoleInput(TorusGreenError, ValueError):
    """Argument lies within the pole guard radius of a lattice point."""


class RootNotBracketed(TorusGreenError, ArithmeticError):
    pass


class OracleInconclusive(TorusGreenError, ArithmeticError):
    pass


class NoConvergence(TorusGreenError, ArithmeticError):
    pass


class TorusGreenWarning(UserWarning):
    pass


class DegenerateCriterion(TorusGreenWarning):
    """Some e_j*w1^2 + eta1*w1 vanishes; the count is three by the first clause."""


class BoundaryWarning(TorusGreenWarning):
    """A neutral fixed point was found; tau sits on the 3/5 boundary."""


class SingularNewton(TorusGreenWarning):
    """Newton Jacobian nearly singular; gradient fallback was used."""
