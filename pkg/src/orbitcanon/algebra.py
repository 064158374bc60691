"""Matrix models of the Lie-theoretic scaffolding.

The compact algebra is su(n) inside sl(n,C), with the conjugation fixing it
written theta(z) = -z^dag.  A second, commuting anti-complex involution sigma
selects the split structure: either entrywise conjugation ("weyl-sigma",
fixing sl(n,R)) or, for n = 3, the signature involution

    tau(z) = -I z^dag I,     I = diag(1, 1, -1)

("tau-su21", fixing su(2,1)).  The simultaneous eigenspaces give the split

    sl(n,C) = g + ig = is + k + s + ik

with k the compact part of the fixed algebra of sigma.  The composite
theta*sigma is complex linear; its integrated fixed-point group is the
spherical subgroup acting on the orbit with a dense open orbit.

For the tau model the stable Cartan through the base point is not diagonal;
the fixed special-unitary conjugator s moves it onto the diagonal torus, so
all factorizations happen in "diagonal-world" coordinates y = s x s^dag.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch, InvalidSpec, NotInSubgroup
from .linalg import (
    dagger,
    hermitian_eigen,
    max_abs,
    positive_log,
    realify,
)
from .tolerances import DEFAULT_TOLERANCES, Tolerances

WEYL = "weyl-sigma"
TAU = "tau-su21"


def _su_basis(n: int) -> np.ndarray:
    """Anti-Hermitian traceless basis of su(n): off-diagonal pairs then diagonals."""
    mats = []
    for j in range(n):
        for k in range(j + 1, n):
            a = np.zeros((n, n), dtype=complex)
            a[j, k], a[k, j] = 1.0, -1.0
            mats.append(a)
            b = np.zeros((n, n), dtype=complex)
            b[j, k] = b[k, j] = 1.0j
            mats.append(b)
    for m in range(n - 1):
        d = np.zeros((n, n), dtype=complex)
        d[m, m], d[m + 1, m + 1] = 1.0j, -1.0j
        mats.append(d)
    return np.array(mats)


def _orthonormal_span(mats, rank_tol: float) -> np.ndarray:
    """Orthonormal (Frobenius) basis of the real span of the given matrices."""
    stack = np.asarray(mats, dtype=complex)
    n = stack.shape[-1]
    flat = realify(stack)
    u, s, _ = np.linalg.svd(flat.T, full_matrices=False)
    rank = int(np.sum(s > rank_tol * s[0]))
    cols = u[:, :rank].T
    k = n * n
    return (cols[:, :k] + 1j * cols[:, k:]).reshape(rank, n, n)


@dataclass(frozen=True)
class RootDatum:
    """Root-space data for the diagonal base point y = diag(spec).

    positive_pairs lists (j, k) with y_j > y_k; ``fiber_gens`` holds the
    elementary matrices E_jk spanning the ruling fiber direction in
    diagonal-world coordinates, ``alpha`` the root values y_j - y_k.
    Roots with alpha = 0 (eigenvalue ties) act trivially on the base point
    and are assigned to the centralizer, never to the fiber.
    """

    positive_pairs: tuple
    fiber_gens: np.ndarray
    alpha: np.ndarray


@dataclass(frozen=True)
class AlgebraContext:
    n: int
    involution_kind: str
    conjugator_s: np.ndarray
    basis_g: np.ndarray
    k_basis: np.ndarray = field(repr=False, default=None)
    tol: Tolerances = field(repr=False, default=DEFAULT_TOLERANCES)

    @property
    def killing_scale(self) -> float:
        return 2.0 * self.n

    @property
    def signature(self) -> np.ndarray:
        sig = np.eye(self.n)
        sig[-1, -1] = -1.0
        return sig

    # --- involutions on the algebra --------------------------------------

    def theta(self, z: np.ndarray) -> np.ndarray:
        """Conjugation fixing su(n); anti-linear, fixes anti-Hermitian matrices."""
        return -dagger(np.asarray(z, dtype=complex))

    def sigma(self, z: np.ndarray) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        if self.involution_kind == WEYL:
            return z.conj()
        sig = self.signature
        return -sig @ dagger(z) @ sig

    def theta_sigma(self, z: np.ndarray) -> np.ndarray:
        """The complex-linear composite; its fixed algebra is the spherical one."""
        z = np.asarray(z, dtype=complex)
        if self.involution_kind == WEYL:
            return -z.swapaxes(-1, -2)
        sig = self.signature
        return sig @ z @ sig

    # --- involutions on the group -----------------------------------------

    def theta_group(self, h: np.ndarray) -> np.ndarray:
        return dagger(np.linalg.inv(h))

    def sigma_group(self, h: np.ndarray) -> np.ndarray:
        h = np.asarray(h, dtype=complex)
        if self.involution_kind == WEYL:
            return h.conj()
        sig = self.signature
        return sig @ dagger(np.linalg.inv(h)) @ sig

    def theta_sigma_group(self, h: np.ndarray) -> np.ndarray:
        h = np.asarray(h, dtype=complex)
        if self.involution_kind == WEYL:
            return np.linalg.inv(h.swapaxes(-1, -2))
        sig = self.signature
        return sig @ h @ sig

    def in_spherical_group(self, h: np.ndarray, slack: float = 1.0) -> bool:
        return max_abs(self.theta_sigma_group(h) - h) < self.tol.subgroup * slack

    # --- bilinear form ----------------------------------------------------

    def killing(self, a: np.ndarray, b: np.ndarray) -> complex:
        """Invariant form 2n tr(ab) on traceless matrices."""
        a = np.asarray(a, dtype=complex)
        b = np.asarray(b, dtype=complex)
        if a.shape[-1] != self.n or b.shape[-1] != self.n:
            raise DimensionMismatch("killing: wrong matrix size")
        prod = np.einsum("...ij,...ji->...", a, b)
        out = self.killing_scale * prod
        return complex(out) if out.ndim == 0 else out

    def compact_inner(self, a: np.ndarray, b: np.ndarray):
        """Inner product 2 Re<a, -theta(b)> = 4n Re tr(a b^dag); positive definite."""
        val = 2.0 * np.real(np.einsum("...ij,...ij->...", np.asarray(a).conj(),
                                      np.asarray(b)) * self.killing_scale)
        return float(val) if np.ndim(val) == 0 else val

    # --- eigenspace split --------------------------------------------------

    def component_split(self, z: np.ndarray):
        """Split z into (g, ig, k, s, ik, is) parts of the commuting involutions."""
        z = np.asarray(z, dtype=complex)
        tz = self.theta(z)
        sz = self.sigma(z)
        tsz = self.theta(sz)
        g_part = 0.5 * (z + tz)
        ig_part = 0.5 * (z - tz)
        k_part = 0.25 * (z + tz + sz + tsz)
        s_part = 0.25 * (z - tz + sz - tsz)
        ik_part = 0.25 * (z - tz - sz + tsz)
        is_part = 0.25 * (z + tz - sz - tsz)
        return g_part, ig_part, k_part, s_part, ik_part, is_part

    # --- derived bases ------------------------------------------------------

    def kc_real_basis(self) -> np.ndarray:
        """Real basis of the spherical algebra k + ik: (k_j, i k_j)."""
        return np.concatenate([self.k_basis, 1j * self.k_basis], axis=0)

    # --- base points and roots ----------------------------------------------

    def base_point(self, orbit_spec) -> np.ndarray:
        spec = self.validate_spec(orbit_spec)
        y = np.diag(spec.astype(complex))
        s = self.conjugator_s
        return dagger(s) @ y @ s

    def validate_spec(self, orbit_spec) -> np.ndarray:
        spec = np.asarray(orbit_spec, dtype=float)
        if spec.shape != (self.n,):
            raise InvalidSpec(f"expected {self.n} eigenvalues")
        if np.any(np.diff(spec) > 0):
            raise InvalidSpec("eigenvalues must be descending")
        if abs(np.sum(spec)) > 1e-12:
            raise InvalidSpec("eigenvalues must sum to zero")
        return spec

    def root_datum(self, orbit_spec) -> RootDatum:
        spec = self.validate_spec(orbit_spec)
        pairs, gens, alpha = [], [], []
        for j in range(self.n):
            for k in range(self.n):
                if j != k and spec[j] - spec[k] > 0:
                    e = np.zeros((self.n, self.n), dtype=complex)
                    e[j, k] = 1.0
                    pairs.append((j, k))
                    gens.append(e)
                    alpha.append(spec[j] - spec[k])
        return RootDatum(positive_pairs=tuple(pairs),
                         fiber_gens=np.array(gens),
                         alpha=np.array(alpha))

    # --- Cartan decomposition of spherical-group elements ---------------------

    def cartan_decompose_kc(self, h: np.ndarray):
        """Split h = u exp(i eta) with u in the compact subgroup and eta in k."""
        h = np.asarray(h, dtype=complex)
        if not self.in_spherical_group(h):
            raise NotInSubgroup("element not fixed by the integrated involution")
        p_sq = dagger(h) @ h
        w, v = hermitian_eigen(p_sq, tol=self.tol)
        p = (v * np.sqrt(w)[None, :]) @ dagger(v)
        u = h @ np.linalg.inv(p)
        eta = -1j * positive_log(p, tol=self.tol)
        return u, eta


def su_context(n: int, involution_kind: str = WEYL,
               tol: Tolerances = DEFAULT_TOLERANCES) -> AlgebraContext:
    """Build the su(n) model with the requested second involution."""
    if involution_kind not in (WEYL, TAU):
        raise InvalidSpec(f"unknown involution kind {involution_kind!r}")
    if involution_kind == TAU and n != 3:
        raise InvalidSpec("the signature involution model is implemented for n = 3")
    if not 2 <= n <= 8:
        raise InvalidSpec("matrix size must satisfy 2 <= n <= 8")
    if involution_kind == TAU:
        s = np.eye(3, dtype=complex)
        r = np.sqrt(2.0) / 2.0
        s[0, 0] = s[2, 2] = r
        s[0, 2] = s[2, 0] = 1j * r
    else:
        s = np.eye(n, dtype=complex)
    ctx = AlgebraContext(n=n, involution_kind=involution_kind,
                         conjugator_s=s, basis_g=_su_basis(n), tol=tol)
    k_raw = [ctx.component_split(b)[2] for b in ctx.basis_g]
    k_basis = _orthonormal_span([m for m in k_raw if max_abs(m) > 1e-12],
                                rank_tol=tol.frame_rank)
    object.__setattr__(ctx, "k_basis", k_basis)
    return ctx
