"""Central tolerance record.

Every numeric threshold used by the library lives here, with the defaults the
verification suites are calibrated against.  Checks may be scaled through the
CLI, but the effective values are always echoed into reports so a loosened run
is visible.
"""

from dataclasses import dataclass, field, replace


@dataclass(frozen=True)
class Tolerances:
    # factorization / linear algebra
    det_one: float = 1e-10            # |det - 1| precondition for Iwasawa input
    near_singular: float = 1e-8       # smallest singular value floor
    unitary: float = 1e-12            # u u^dag = 1 residual
    iwasawa_recon: float = 1e-11      # product-of-factors reconstruction
    hermitian: float = 1e-10          # ||m - m^dag||_max precondition
    eigen_resid: float = 1e-10        # m v = v diag(w) residual
    positive_floor: float = 1e-10     # eigenvalue floor for positive log
    lstsq_rank: float = 1e-9          # relative singular-value cutoff
    exp_unitary: float = 1e-12        # exp of anti-Hermitian stays unitary

    # Lie structures
    recombine: float = 1e-13          # eigen-space split recombination
    involution_commute: float = 1e-14
    subgroup: float = 1e-10           # theta*sigma fixedness of group elements
    cartan_resid: float = 1e-10       # u exp(i eta) reconstruction

    # orbit geometry
    orbit_eig: float = 1e-8           # eigenvalue-multiset orbit membership
    witness_resid: float = 1e-9       # witness reproduces the point
    frame_rank: float = 1e-9          # SVD cutoff for tangent frames
    jsq: float = 1e-8                 # J^2 = -id residual
    fd_step: float = 1e-5             # central-difference step for form checks
    fd_form: float = 1e-5             # closedness / Hamiltonian residuals
    gram_min_sv: float = 1e-6         # nondegeneracy of the symplectic Gram

    # potential
    quad_abstol: float = 1e-10
    quad_fail: float = 1e-8
    quad_max_nodes: int = 2 ** 16
    potential_floor: float = 1e-8     # positivity slack
    eta_zero: float = 1e-6            # "witness is in K" threshold

    # flows / canonical map
    flow_tol: float = 1e-10           # adaptive RK4 error per unit time
    flow_tol_nagano: float = 1e-13    # tighter tolerance for asymptotics
    step_floor: float = 1e-12
    flow_horizon: float = 60.0
    eta_limit: float = 1e-8           # backward-flow convergence criterion
    asym_horizons: tuple = (9.0, 11.0, 13.0)
    newton_iters: int = 50
    newton_tol: float = 1e-10
    gap_min: float = 1e-3             # near-degenerate orbit rejection

    # Wick rotation
    singular_locus: float = 1e-10     # |E^2+F^2| floor
    quadric_conserve: float = 1e-12
    hyperboloid: float = 1e-10

    # Gelfand-Zeitlin
    interlace: float = 1e-9
    eigenline: float = 1e-8
    eigen_tie: float = 1e-6

    def scaled(self, factor: float) -> "Tolerances":
        """Return a copy with the *check* tolerances multiplied by factor.

        Preconditions and algorithm-internal knobs (step floors, node caps,
        horizons) are left alone; only pass/fail thresholds move.
        """
        if factor <= 0.0:
            raise ValueError("tolerance scale must be positive")
        scaled_fields = (
            "iwasawa_recon", "eigen_resid", "jsq", "fd_form", "gram_min_sv",
            "potential_floor", "quadric_conserve", "hyperboloid", "interlace",
        )
        return replace(self, **{name: getattr(self, name) * factor for name in scaled_fields})


DEFAULT_TOLERANCES = Tolerances()
