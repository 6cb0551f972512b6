"""Exception types raised by the numerical core."""


class CPForgeError(Exception):
    """Base class for all errors raised by cpforge."""


class QuadratureFailure(CPForgeError):
    """An adaptive quadrature did not reach its tolerance within its refinement budget."""


class TruncationFailure(CPForgeError):
    """A Matsubara sum did not converge before the hard term cap."""


class UnsupportedLimit(CPForgeError, ValueError):
    """A reflection coefficient was requested at (xi, kappa) = (0, 0)."""


class MissingIndex(CPForgeError, ValueError):
    """The nonlocal graphene model was called without a Matsubara index."""
