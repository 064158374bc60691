"""Exception hierarchy.

Every failure mode of the numerical kernels gets its own class so callers can
distinguish "bad input" (precondition violations) from "the computation broke"
(convergence / conditioning problems).
"""


class OrbitCanonError(Exception):
    """Base class for all library errors."""


# --- linear algebra kernels ---------------------------------------------


class DimensionMismatch(OrbitCanonError):
    pass


class NearSingular(OrbitCanonError):
    """Input matrix is too ill-conditioned for a stable factorization."""


class NotSpecial(OrbitCanonError):
    """Determinant is not 1 within tolerance."""


class NotHermitian(OrbitCanonError):
    pass


class NotPositive(OrbitCanonError):
    """Matrix has an eigenvalue at or below the positivity floor."""


class RankDeficient(OrbitCanonError):
    pass


# --- Lie structures ------------------------------------------------------


class InvalidSpec(OrbitCanonError):
    """Orbit eigenvalue spec is not real, descending and traceless."""


class NotInSubgroup(OrbitCanonError):
    """Group element is not fixed by the relevant integrated involution."""


# --- orbit geometry ------------------------------------------------------


class BasePointMismatch(OrbitCanonError):
    pass


class MissingWitness(OrbitCanonError):
    pass


class DecompositionFailed(OrbitCanonError):
    """Tangent-space splitting over section + ruling fiber is rank deficient."""


class NotOnOrbit(OrbitCanonError):
    pass


# --- potential / flows ---------------------------------------------------


class MetricDegenerate(OrbitCanonError):
    pass


class QuadratureFailure(OrbitCanonError):
    pass


class StepCollapse(OrbitCanonError):
    """Adaptive integrator step size fell below the hard floor."""


class LeftDomain(OrbitCanonError):
    """Forward trajectory left the dense open chart."""


class NoConvergence(OrbitCanonError):
    pass


class Degenerate(OrbitCanonError):
    """Eigenvalue spacing too small to identify eigenlines / reject orbit."""


# --- Wick rotation -------------------------------------------------------


class OnSingularLocus(OrbitCanonError):
    """Point sits on the locus where the complexified field is undefined."""


class BranchCut(OrbitCanonError):
    """Square-root radicand crossed the negative real axis along the flow."""


# --- CLI / reporting -----------------------------------------------------


class ConfigInvalid(OrbitCanonError):
    pass


class IoFailure(OrbitCanonError):
    pass
