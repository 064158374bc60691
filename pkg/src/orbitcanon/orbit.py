"""Orbit geometry: points, tangent frames, the holomorphic KKS form and the
Iwasawa ruling.

A point of the dense open chart is produced from a spherical-subgroup witness
h: factoring h s^dag = U N A  (special-unitary x unit-upper x positive-
diagonal) the ruling projection is

    project(h . x) = U y U^dag,      y = diag(orbit eigenvalues),

and the ruling fiber through that point is spanned by U E_jk U^dag over the
elementary matrices with positive root value on y.  The section orbit of the
spherical subgroup sits on the same fibers at h x h^{-1}, which is what the
potential machinery pairs against.

The holomorphic symplectic form is evaluated on commutator tangents,
Omega([u,p], [v,p]) = <p, [u,v]> with the invariant form 2n tr; the real KKS
form of the compact orbit is -Im Omega.
"""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .algebra import AlgebraContext, RootDatum
from .errors import (
    BasePointMismatch,
    DecompositionFailed,
    MissingWitness,
    NoConvergence,
    NotInSubgroup,
    RankDeficient,
)
from .linalg import (
    dagger,
    iwasawa_factor,
    matrix_exp,
    max_abs,
    real_basis_matrix,
    realify,
    lstsq_real,
)

MEMBER_XSTAR = "X*"
MEMBER_X = "X"
MEMBER_XVEE = "Xvee"
MEMBER_O = "O_only"
MEMBER_OFF = "NotOnOrbit"


@dataclass(frozen=True)
class OrbitModel:
    """An adjoint orbit model: algebra context plus eigenvalue multiset."""

    ctx: AlgebraContext
    spec: np.ndarray
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "spec", self.ctx.validate_spec(self.spec))

    @property
    def y(self) -> np.ndarray:
        return np.diag(self.spec.astype(complex))

    @property
    def x(self) -> np.ndarray:
        return self.ctx.base_point(self.spec)

    @property
    def roots(self) -> RootDatum:
        return self.ctx.root_datum(self.spec)

    @property
    def dim_x(self) -> int:
        mults = np.unique(np.round(self.spec, 12), return_counts=True)[1]
        return self.ctx.n ** 2 - int(np.sum(mults ** 2))

    @property
    def min_gap(self) -> float:
        gaps = [abs(a - b) for i, a in enumerate(self.spec) for b in self.spec[i + 1:]
                if abs(a - b) > 1e-12]
        return min(gaps) if gaps else 0.0


def orbit_model(ctx: AlgebraContext, spec, name: str = "") -> OrbitModel:
    return OrbitModel(ctx=ctx, spec=np.asarray(spec, dtype=float), name=name)


@dataclass
class Frame:
    """Tangent frame of the compact orbit at a point: generators in g and values."""

    generators: np.ndarray   # (r, n, n)
    values: np.ndarray       # (r, n, n), values[i] = [generators[i], p]


@dataclass
class OrbitPoint:
    model: OrbitModel
    value: np.ndarray
    witness: Optional[np.ndarray] = None          # h in the spherical subgroup
    witness_kind: str = "projection"              # value = project(h.x) | "section": value = h.x
    diag_unitary: Optional[np.ndarray] = None     # U with value = U y U^dag
    frame_cache: Optional[Frame] = field(default=None, repr=False)

    @property
    def ctx(self) -> AlgebraContext:
        return self.model.ctx

    def require_witness(self) -> np.ndarray:
        if self.witness is None:
            raise MissingWitness("operation needs a spherical-subgroup witness")
        return self.witness

    def section_value(self) -> np.ndarray:
        """The spherical-orbit point h x h^{-1} on the same ruling fiber."""
        h = self.require_witness()
        return h @ self.model.x @ np.linalg.inv(h)


@dataclass
class TangentVector:
    base: OrbitPoint
    generator: np.ndarray
    value: np.ndarray


def tangent(point: OrbitPoint, generator: np.ndarray) -> TangentVector:
    g = np.asarray(generator, dtype=complex)
    return TangentVector(base=point, generator=g,
                         value=g @ point.value - point.value @ g)


# --- ruling projection -----------------------------------------------------


def project_pi(model: OrbitModel, h: np.ndarray, require_spherical: bool = True) -> OrbitPoint:
    """Ruling projection of h . x, with h kept as witness.

    Factoring h s^dag = U N A puts the moved fiber through U y U^dag, which is
    the unique compact-orbit point on it.
    """
    h = np.asarray(h, dtype=complex)
    ctx = model.ctx
    if require_spherical and not ctx.in_spherical_group(h):
        raise NotInSubgroup("witness is not in the spherical subgroup")
    factors = iwasawa_factor(h @ dagger(ctx.conjugator_s), tol=ctx.tol)
    u = factors.unitary
    value = u @ model.y @ dagger(u)
    value = 0.5 * (value + dagger(value))
    return OrbitPoint(model=model, value=value, witness=h,
                      witness_kind="projection", diag_unitary=u)


def fiber_tangent_basis(point: OrbitPoint) -> np.ndarray:
    """Complex basis of the ruling fiber direction through the point."""
    if point.diag_unitary is None:
        point.require_witness()
        factors = iwasawa_factor(point.witness @ dagger(point.ctx.conjugator_s),
                                 tol=point.ctx.tol)
        point.diag_unitary = factors.unitary
    u = point.diag_unitary
    gens = point.model.roots.fiber_gens
    return u @ gens @ dagger(u)


def fiber_real_span(point: OrbitPoint) -> np.ndarray:
    f = fiber_tangent_basis(point)
    return np.concatenate([f, 1j * f], axis=0)


def tangent_frame(point: OrbitPoint) -> Frame:
    """Orthonormal frame of the real tangent space from su(n) generators.

    The full generator basis is rank-filtered by SVD so eigenvalue ties
    (stabilizer directions) drop out without choosing a complement by hand.
    """
    if point.frame_cache is not None:
        return point.frame_cache
    ctx = point.ctx
    basis = ctx.basis_g
    raw = basis @ point.value - point.value @ basis
    a = realify(raw).T                      # (2n^2, n^2-1)
    u_m, s, vh = np.linalg.svd(a, full_matrices=False)
    rank = int(np.sum(s > ctx.tol.frame_rank * s[0]))
    if rank != point.model.dim_x:
        raise DecompositionFailed(
            f"tangent rank {rank} != expected orbit dimension {point.model.dim_x}")
    combos = vh[:rank, :] / s[:rank, None]  # maps to orthonormal frame values
    gens = np.einsum("ri,inm->rnm", combos, basis)
    values = gens @ point.value - point.value @ gens
    frame = Frame(generators=gens, values=values)
    point.frame_cache = frame
    return frame


# --- symplectic form -------------------------------------------------------


def kks_omega(t1: TangentVector, t2: TangentVector) -> complex:
    """Holomorphic KKS form <p, [u1, u2]> on commutator tangents."""
    if max_abs(t1.base.value - t2.base.value) > 1e-10:
        raise BasePointMismatch("tangent vectors live at different points")
    u1, u2 = t1.generator, t2.generator
    return t1.base.ctx.killing(t1.base.value, u1 @ u2 - u2 @ u1)


def omega_real(t1: TangentVector, t2: TangentVector) -> float:
    """Real KKS form of the compact orbit, -Im of the holomorphic one."""
    return -kks_omega(t1, t2).imag


def generator_for(point_value: np.ndarray, ctx: AlgebraContext, v: np.ndarray) -> np.ndarray:
    """Solve [u, p] = v for u in sl(n,C) by complex least squares."""
    basis = ctx.basis_g
    cols = (basis @ point_value - point_value @ basis).reshape(len(basis), -1).T
    z, res, rank, sv = np.linalg.lstsq(cols, np.asarray(v, dtype=complex).ravel(),
                                       rcond=None)
    u = np.einsum("i,inm->nm", z, basis)
    if max_abs(u @ point_value - point_value @ u - v) > 1e-7 * max(1.0, max_abs(v)):
        raise DecompositionFailed("vector is not tangent to the orbit")
    return u


def ambient_omega(point_value: np.ndarray, ctx: AlgebraContext,
                  v1: np.ndarray, v2: np.ndarray) -> complex:
    """KKS form on arbitrary matrix tangents via generator solves."""
    u1 = generator_for(point_value, ctx, v1)
    u2 = generator_for(point_value, ctx, v2)
    return ctx.killing(point_value, u1 @ u2 - u2 @ u1)


# --- section lift ----------------------------------------------------------


def section_lift(point: OrbitPoint, value: np.ndarray):
    """Split an orbit tangent over the spherical section and the ruling fiber.

    Finds W in the spherical algebra and a fiber vector f with
        value = [W, section_point] - f.
    Returns (W, xi, coefficients) where xi = [W, section_point].
    """
    ctx = point.ctx
    y0 = point.section_value()
    kc = ctx.kc_real_basis()
    sec_cols = kc @ y0 - y0 @ kc
    fib_cols = fiber_real_span(point)
    a = real_basis_matrix(list(sec_cols) + list(fib_cols))
    try:
        coef, _ = lstsq_real(a, realify(np.asarray(value, dtype=complex)), tol=ctx.tol)
    except RankDeficient as exc:
        raise DecompositionFailed(str(exc)) from exc
    m = len(kc)
    w = np.einsum("i,inm->nm", coef[:m], kc)
    xi = w @ y0 - y0 @ w
    return w, xi, coef


def complex_structure_j(t: TangentVector) -> TangentVector:
    """Induced complex structure: multiply by i, project out the fiber part."""
    point = t.base
    frame = tangent_frame(point)
    fib = fiber_real_span(point)
    a = real_basis_matrix(list(frame.values) + list(fib))
    try:
        coef, _ = lstsq_real(a, realify(1j * t.value), tol=point.ctx.tol)
    except RankDeficient as exc:
        raise DecompositionFailed(str(exc)) from exc
    r = len(frame.values)
    gen = np.einsum("i,inm->nm", coef[:r], frame.generators)
    val = np.einsum("i,inm->nm", coef[:r], frame.values)
    return TangentVector(base=point, generator=gen, value=val)


# --- membership ------------------------------------------------------------


def membership(model: OrbitModel, m: np.ndarray) -> str:
    """Classify a raw matrix against the orbit and its real forms."""
    m = np.asarray(m, dtype=complex)
    ctx = model.ctx
    eig = np.sort_complex(np.linalg.eigvals(m))
    ref = np.sort_complex(model.spec.astype(complex))
    if max_abs(eig - ref) > ctx.tol.orbit_eig:
        return MEMBER_OFF
    hermitian = max_abs(m - dagger(m)) < ctx.tol.hermitian
    sigma_fixed = max_abs(ctx.sigma(m) - m) < ctx.tol.hermitian
    if not hermitian:
        return MEMBER_XVEE if sigma_fixed else MEMBER_O
    if model.name == "su2-weyl" or (ctx.n == 2 and ctx.involution_kind == "weyl-sigma"):
        # dense chart <=> off the two poles, i.e. the symmetric part survives
        sym = 0.5 * (m + m.swapaxes(-1, -2))
        e = 0.5 * np.trace(sym @ np.diag([1.0, -1.0])).real
        f = 0.5 * np.trace(sym @ np.array([[0.0, 1.0], [1.0, 0.0]])).real
        return MEMBER_XSTAR if e * e + f * f > 1e-10 else MEMBER_X
    if ctx.involution_kind == "tau-su21":
        from .gz import classify_matrix, CLASS_OPEN_DENSE
        return MEMBER_XSTAR if classify_matrix(m, ctx.tol) == CLASS_OPEN_DENSE else MEMBER_X
    return MEMBER_X


# --- witness recovery ------------------------------------------------------


def recover_witness(model: OrbitModel, target: np.ndarray,
                    h0: Optional[np.ndarray] = None) -> np.ndarray:
    """Newton solve for h in the spherical subgroup with project(h.x) = target.

    Used only for raw-point queries; pipeline points always carry witnesses.
    """
    ctx = model.ctx
    tol = ctx.tol
    h = np.eye(ctx.n, dtype=complex) if h0 is None else np.asarray(h0, dtype=complex)
    kc = ctx.kc_real_basis()
    target = np.asarray(target, dtype=complex)
    for _ in range(tol.newton_iters):
        point = project_pi(model, h)
        resid = point.value - target
        err = max_abs(resid)
        if err < tol.newton_tol:
            return h
        frame = tangent_frame(point)
        fib = fiber_real_span(point)
        y0 = point.section_value()
        # columns: effect of exp(eps c_j) h on the projected point
        moved = kc @ y0 - y0 @ kc
        basis_cols = []
        a = real_basis_matrix(list(frame.values) + list(fib))
        pinv = np.linalg.pinv(a)
        for col in moved:
            coef = pinv @ realify(col)
            basis_cols.append(np.einsum("i,inm->nm", coef[:len(frame.values)],
                                        frame.values))
        jac = real_basis_matrix(basis_cols)
        step, _ = lstsq_real(jac, realify(-resid), tol=tol)
        scale = 1.0
        w = np.einsum("i,inm->nm", step, kc)
        for _ in range(12):
            h_try = matrix_exp(scale * w) @ h
            if max_abs(project_pi(model, h_try).value - target) < err:
                h = h_try
                break
            scale *= 0.5
        else:
            raise NoConvergence("witness Newton line search stalled")
    raise NoConvergence(f"witness Newton did not reach {tol.newton_tol:g}")
