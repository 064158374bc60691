"""Section one-form, potential and Liouville field on the dense open chart.

For a witness h with factorization h s^dag = U N A and m = s^dag (N A) s, the
section one-form evaluated on the pushed spherical direction c is

    zeta(h, c) = < x - m x m^{-1},  m c m^{-1} >

with the invariant form 2n tr.  Its real part, transported along the ruling,
is the closed one-form beta on the chart.  The potential is the line integral
of (1/2) Re zeta along the Cartan ray u exp(t i eta), t in [0,1], which starts
on the compact orbit of the base point where everything vanishes; for the
su(2) model this integral is 2 ln cosh(2b).

The Liouville field solves the metric gradient system G Y = beta with
G_ij = omega(t_i, J t_j); with beta = Re zeta this is half the gradient of
the potential at the normalization where the form identity
omega = i dd^c (4 h) holds, which is the scaling that reproduces the closed
form (1/2) sinh(2b) cosh(2b) d/db.
"""

from dataclasses import dataclass

import numpy as np

from .errors import MetricDegenerate, NotInSubgroup, QuadratureFailure
from .linalg import dagger, iwasawa_factor, matrix_exp, max_abs
from .orbit import (
    Frame,
    OrbitPoint,
    TangentVector,
    complex_structure_j,
    section_lift,
    tangent_frame,
)

__all__ = [
    "PotentialEvaluation",
    "zeta",
    "beta",
    "potential",
    "potential_along_path",
    "liouville_field",
    "adaptive_simpson",
]


def zeta(point_or_model, h: np.ndarray, c: np.ndarray) -> complex:
    """Section one-form at h . x on the direction pushed from c.

    c must lie in the spherical algebra (fixed by the linear composite
    involution); h in the spherical subgroup.
    """
    model = getattr(point_or_model, "model", point_or_model)
    ctx = model.ctx
    h = np.asarray(h, dtype=complex)
    c = np.asarray(c, dtype=complex)
    if not ctx.in_spherical_group(h):
        raise NotInSubgroup("zeta needs a spherical-subgroup element")
    if max_abs(ctx.theta_sigma(c) - c) > 1e-8 * max(1.0, max_abs(c)):
        raise NotInSubgroup("direction is not in the spherical algebra")
    s = ctx.conjugator_s
    factors = iwasawa_factor(h @ dagger(s), tol=ctx.tol)
    le = factors.unipotent @ factors.diagonal
    m = dagger(s) @ le @ s
    m_inv = np.linalg.inv(m)
    x = model.x
    return ctx.killing(x - m @ x @ m_inv, m @ c @ m_inv)


def beta(point: OrbitPoint, t: TangentVector) -> float:
    """Closed one-form on the chart: Re zeta after lifting t along the fiber.

    The lift [W, h.x] = t + fiber gives the spherical generator W; pairing the
    fiber displacement of the section against it evaluates the same number as
    the explicit zeta formula (invariance of the form collapses the conjugations).
    """
    w, _, _ = section_lift(point, t.value)
    y0 = point.section_value()
    return point.ctx.killing(point.value - y0, w).real


@dataclass(frozen=True)
class PotentialEvaluation:
    point: OrbitPoint
    value: float
    path_nodes: int
    estimated_error: float


def adaptive_simpson(f, a: float, b: float, abstol: float, max_nodes: int):
    """Classic adaptive Simpson with a node budget.

    Returns (value, error_estimate, nodes_used).
    """
    state = {"nodes": 3}

    def recurse(lo, mid, hi, flo, fmid, fhi, whole, tol_here, depth):
        lm = 0.5 * (lo + mid)
        mh = 0.5 * (mid + hi)
        flm, fmh = f(lm), f(mh)
        state["nodes"] += 2
        left = (mid - lo) / 6.0 * (flo + 4.0 * flm + fmid)
        right = (hi - mid) / 6.0 * (fmid + 4.0 * fmh + fhi)
        err = (left + right - whole) / 15.0
        if abs(err) <= tol_here or depth > 48 or state["nodes"] > max_nodes:
            return left + right + err, abs(err)
        vl, el = recurse(lo, lm, mid, flo, flm, fmid, left, 0.5 * tol_here, depth + 1)
        vr, er = recurse(mid, mh, hi, fmid, fmh, fhi, right, 0.5 * tol_here, depth + 1)
        return vl + vr, el + er

    fa, fm, fb = f(a), f(0.5 * (a + b)), f(b)
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    value, err = recurse(a, 0.5 * (a + b), b, fa, fm, fb, whole, abstol, 0)
    return value, err, state["nodes"]


def potential(point: OrbitPoint) -> PotentialEvaluation:
    """Line-integrated potential, normalized to vanish on the compact orbit.

    Integrates (1/2) Re zeta along the Cartan ray u exp(t i eta); the ray stays
    in the spherical subgroup and starts where the potential vanishes.
    """
    ctx = point.ctx
    h = point.require_witness()
    u, eta = ctx.cartan_decompose_kc(h)
    i_eta = 1j * eta
    if max_abs(eta) < 1e-14:
        return PotentialEvaluation(point=point, value=0.0, path_nodes=0,
                                   estimated_error=0.0)

    def integrand(t: float) -> float:
        gamma = u @ matrix_exp(t * i_eta)
        return 0.5 * zeta(point.model, gamma, i_eta).real

    value, err, nodes = adaptive_simpson(integrand, 0.0, 1.0,
                                         ctx.tol.quad_abstol, ctx.tol.quad_max_nodes)
    if err > ctx.tol.quad_fail:
        raise QuadratureFailure(f"error estimate {err:.3e}")
    return PotentialEvaluation(point=point, value=value, path_nodes=nodes,
                               estimated_error=err)


def potential_along_path(point: OrbitPoint, segments) -> float:
    """Integrate (1/2) Re zeta over piecewise exponential paths.

    Each segment is (h_start, c): t -> h_start exp(t c), t in [0, 1].  Used to
    witness path independence against the Cartan ray.
    """
    ctx = point.ctx
    total = 0.0
    for h_start, c in segments:
        def integrand(t, h0=h_start, cc=c):
            return 0.5 * zeta(point.model, h0 @ matrix_exp(t * cc), cc).real
        value, err, _ = adaptive_simpson(integrand, 0.0, 1.0,
                                         ctx.tol.quad_abstol, ctx.tol.quad_max_nodes)
        if err > ctx.tol.quad_fail:
            raise QuadratureFailure(f"error estimate {err:.3e}")
        total += value
    return total


def kahler_gram(point: OrbitPoint, frame: Frame = None):
    """Gram matrix G_ij = omega(t_i, J t_j) of the chart metric on a frame."""
    frame = frame or tangent_frame(point)
    ctx = point.ctx
    p = point.value
    gens = frame.generators
    comm = np.einsum("inm,jml->ijnl", gens, gens) - np.einsum("jnm,iml->ijnl", gens, gens)
    omega_mat = -np.imag(ctx.killing_scale * np.einsum("nm,ijmn->ij", p, comm))
    j_coefs = []
    for i in range(len(gens)):
        jt = complex_structure_j(TangentVector(point, gens[i],
                                               frame.values[i]))
        # J t expressed back in the frame (orthonormal values)
        coef = np.real(np.einsum("knm,nm->k", frame.values.conj(), jt.value))
        j_coefs.append(coef)
    c = np.array(j_coefs)
    g = omega_mat @ c.T
    return 0.5 * (g + g.T), omega_mat, c


def liouville_field(point: OrbitPoint) -> TangentVector:
    """Liouville field of the chart: solves G Y = beta on a tangent frame."""
    frame = tangent_frame(point)
    g, _, _ = kahler_gram(point, frame)
    eig = np.linalg.eigvalsh(g)
    if eig[0] <= point.ctx.tol.gram_min_sv * max(1.0, eig[-1]):
        raise MetricDegenerate(f"Gram eigenvalues in [{eig[0]:.3e}, {eig[-1]:.3e}]")
    b = np.array([beta(point, TangentVector(point, frame.generators[i], frame.values[i]))
                  for i in range(len(frame.values))])
    ycoef = np.linalg.solve(g, b)
    gen = np.einsum("i,inm->nm", ycoef, frame.generators)
    val = np.einsum("i,inm->nm", ycoef, frame.values)
    return TangentVector(base=point, generator=gen, value=val)
