"""Assembly and evaluation of the 24-amplitude eigenstates.

A solved quasimomentum pair fixes the 24 plane-wave amplitudes (12 group
images times two regions) up to scale through the wall, continuity and jump
conditions; the amplitude vector is the null vector of that constraint stack.
The overall phase is pinned by making the largest amplitude real positive and
the scale by unit L2 norm over the box.  Special closed-form states live
here too: the noninteracting product states, the coupling-independent
triple-superposition states, and the infinite-repulsion states with their
product-of-sines representation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import coefficients
from .bethe import BetheRoot, _triple_class, d6_group, energy

_NORM_RESOLUTION = 512


class DegenerateNullspaceError(RuntimeError):
    """The constraint stack has a null space of dimension >= 2."""


class EmptyNullspaceError(RuntimeError):
    """No null vector below tolerance; the root is not a solution."""


@dataclass(frozen=True)
class CoefficientSet:
    """Plane-wave amplitudes of one eigenstate.

    coefficients holds the region "+" block (12 entries, x2 < x1) followed by
    the region "-" block; momenta[j] is the quasimomentum of plane wave j in
    both regions.  norm is the L2 normalization constant divided out.
    """

    coefficients: np.ndarray
    momenta: np.ndarray
    root: BetheRoot
    gamma: float
    norm: float
    singular_values: np.ndarray

    @property
    def n_waves(self) -> int:
        return self.momenta.shape[0]


@dataclass(frozen=True)
class DensityGrid:
    """|psi|^2 sampled on a uniform grid over the box, trapezoid-normalized."""

    resolution: int
    axis: np.ndarray
    values: np.ndarray
    normalization: float


@dataclass(frozen=True)
class ProductState:
    """Superposition of up to three single-particle product modes."""

    terms: tuple[tuple[tuple[int, int], int, float], ...]

    def evaluate(self, x1, x2):
        out = 0.0
        for (n1, n2), sign, weight in self.terms:
            out = out + sign * weight * mode(n1, x1) * mode(n2, x2)
        return out

    def energy(self) -> float:
        (n1, n2), _, _ = self.terms[0]
        return energy(np.array([n1 * math.pi, n2 * math.pi]))


def mode(n: int, x):
    """n-th single-particle eigenfunction of the box, vanishing at +-1/2."""
    return math.sqrt(2.0) * np.sin(n * math.pi * (0.5 + np.asarray(x)))


def _fix_phase(vec: np.ndarray) -> np.ndarray:
    j = int(np.argmax(np.abs(vec)))
    phase = vec[j] / abs(vec[j])
    return vec / phase


def _raw_psi(amplitudes: np.ndarray, momenta: np.ndarray, x1, x2) -> np.ndarray:
    x1 = np.asarray(x1, dtype=float)
    x2 = np.asarray(x2, dtype=float)
    n = momenta.shape[0]
    phases = np.exp(
        1j * (np.multiply.outer(x1, momenta[:, 0]) + np.multiply.outer(x2, momenta[:, 1]))
    )
    upper = phases @ amplitudes[:n]
    lower = phases @ amplitudes[n:]
    return np.where(x2 <= x1, upper, lower)


def _l2_norm(amplitudes: np.ndarray, momenta: np.ndarray, resolution: int = _NORM_RESOLUTION):
    xs = np.linspace(-0.5, 0.5, resolution)
    x1g, x2g = np.meshgrid(xs, xs, indexing="ij")
    dens = np.abs(_raw_psi(amplitudes, momenta, x1g, x2g)) ** 2
    return math.sqrt(float(np.trapezoid(np.trapezoid(dens, xs), xs)))


def _product_target(k: np.ndarray):
    """Product state matching a lattice root, handling the axis-orbit labels."""
    n1 = round(k[0] / math.pi)
    n2 = round(k[1] / math.pi)
    if n1 == 0:
        # orbit representative (0, 2m pi) belongs to the (3m, m) product level
        m = n2 // 2
        n1, n2 = 3 * m, m
    return (n1, n2), lambda x1, x2: mode(n1, x1) * mode(n2, x2)


def assemble_coefficients(
    root: BetheRoot,
    gamma: float | None = None,
    null_tol: float = 1e-8,
    degeneracy_gap: float = 1e-4,
    enforce_gap: bool = True,
) -> CoefficientSet:
    """Solve the homogeneous constraint system at a root.

    The null vector is extracted by singular value decomposition; the
    smallest singular value must fall below null_tol * largest, and with
    enforce_gap the second smallest must stay above degeneracy_gap * largest
    (level crossings fail this).  Noninteracting lattice roots carry a wider
    null space because orbit images coincide there; the physical state is the
    product mode, selected by projecting it onto the null space basis.  An
    infinite coupling delegates to the hard-core limit system.
    """
    if gamma is None:
        gamma = root.gamma
    if math.isinf(gamma):
        return hardcore_wavefunction(np.array([root.k1, root.k2]), parity=1)
    group = d6_group()
    k = np.array([root.k1, root.k2])
    momenta = coefficients.momenta_after(group, k)
    cmat = coefficients.constraint_matrix(group, k, gamma)
    if gamma == 0.0:
        basis = coefficients.nullspace_basis(cmat, rel_tol=null_tol)
        if basis.shape[0] == 0:
            raise EmptyNullspaceError("no null vector at the lattice root")
        _, target = _product_target(k)
        rng = np.random.default_rng(11)
        pts1 = rng.uniform(-0.5, 0.5, 48)
        pts2 = rng.uniform(-0.5, 0.5, 48)
        design = np.array([_raw_psi(b, momenta, pts1, pts2) for b in basis]).T
        rhs = target(pts1, pts2)
        mix, *_ = np.linalg.lstsq(design, rhs.astype(complex), rcond=None)
        vec = basis.T @ mix
        resid = float(np.abs(design @ mix - rhs).max())
        if resid > 1e-8 * max(1.0, float(np.abs(rhs).max())):
            raise EmptyNullspaceError("null space does not contain the product state")
        sv = np.linalg.svd(cmat, compute_uv=False)
    else:
        vec, sv = coefficients.nullvector(cmat)
        if sv[-1] > null_tol * sv[0]:
            raise EmptyNullspaceError(
                f"smallest singular value ratio {sv[-1] / sv[0]:.2e} above {null_tol:.0e}"
            )
        if enforce_gap and sv[-2] < degeneracy_gap * sv[0]:
            raise DegenerateNullspaceError(
                f"second singular value ratio {sv[-2] / sv[0]:.2e} below {degeneracy_gap:.0e}"
            )
    vec = _fix_phase(vec)
    norm = _l2_norm(vec, momenta)
    return CoefficientSet(
        coefficients=vec / norm,
        momenta=momenta,
        root=root,
        gamma=gamma,
        norm=norm,
        singular_values=sv,
    )


def evaluate_psi(cset: CoefficientSet, x1, x2):
    """Wavefunction value(s) at box coordinates; broadcasts over arrays."""
    return _raw_psi(cset.coefficients, cset.momenta, x1, x2)


def parity_of(cset: CoefficientSet) -> int:
    """Global inversion parity read off the amplitude vector."""
    group = d6_group()
    breve = coefficients.element_maps(group)["breve"]
    n = cset.n_waves
    vec = cset.coefficients
    amax = np.abs(vec).max()
    ratios = np.array(
        [vec[n + breve[j]] / vec[j] for j in range(n) if abs(vec[j]) > 0.05 * amax]
    )
    sign = int(np.sign(np.median(ratios.real)))
    if np.abs(ratios - sign).max() > 1e-6:
        raise DegenerateNullspaceError("amplitudes carry no clean parity")
    return sign


def wall_residual(cset: CoefficientSet, samples: int = 129) -> float:
    """max |psi| over the four walls relative to the interior maximum."""
    t = np.linspace(-0.5, 0.5, samples)
    vals = [
        evaluate_psi(cset, np.full_like(t, 0.5), t),
        evaluate_psi(cset, np.full_like(t, -0.5), t),
        evaluate_psi(cset, t, np.full_like(t, 0.5)),
        evaluate_psi(cset, t, np.full_like(t, -0.5)),
    ]
    xg = np.linspace(-0.5, 0.5, 101)
    x1g, x2g = np.meshgrid(xg, xg, indexing="ij")
    peak = float(np.abs(evaluate_psi(cset, x1g, x2g)).max())
    return float(max(np.abs(v).max() for v in vals)) / peak


def continuity_residual(cset: CoefficientSet, samples: int = 129) -> float:
    """Mismatch of the two region sums on the contact line, relative."""
    t = np.linspace(-0.5, 0.5, samples)
    n = cset.n_waves
    phases = np.exp(
        1j
        * (
            np.multiply.outer(t, cset.momenta[:, 0])
            + np.multiply.outer(t, cset.momenta[:, 1])
        )
    )
    up = phases @ cset.coefficients[:n]
    lo = phases @ cset.coefficients[n:]
    xg = np.linspace(-0.5, 0.5, 101)
    x1g, x2g = np.meshgrid(xg, xg, indexing="ij")
    peak = float(np.abs(evaluate_psi(cset, x1g, x2g)).max())
    return float(np.abs(up - lo).max()) / peak


def jump_condition_check(cset: CoefficientSet, gamma: float, samples: int = 64) -> float:
    """Relative residual of the derivative-jump relation on the contact line.

    The relative-coordinate derivative of each region sum is analytic (each
    plane wave picks up its relative-momentum factor); the jump across
    x1 = x2 must equal 2*gamma*psi there.
    """
    if samples < 10:
        raise ValueError("need at least 10 samples")
    t = np.linspace(-0.5 + 1e-3, 0.5 - 1e-3, samples)
    n = cset.n_waves
    kappa = coefficients.relative_momentum(cset.momenta, 3.0)
    phases = np.exp(
        1j
        * (
            np.multiply.outer(t, cset.momenta[:, 0])
            + np.multiply.outer(t, cset.momenta[:, 1])
        )
    )
    d_up = phases @ (1j * kappa * cset.coefficients[:n])
    d_lo = phases @ (1j * kappa * cset.coefficients[n:])
    psi0 = phases @ cset.coefficients[n:]
    resid = np.abs(d_up - d_lo - 2.0 * gamma * psi0)
    scale = float((np.abs(d_up) + np.abs(d_lo) + 2.0 * gamma * np.abs(psi0)).max())
    return float(resid.max()) / max(scale, 1e-300)


def density_grid(cset: CoefficientSet, resolution: int = 256) -> DensityGrid:
    """|psi|^2 on a uniform grid, normalized to unit integral."""
    if resolution < 16:
        raise ValueError("resolution must be >= 16")
    xs = np.linspace(-0.5, 0.5, resolution)
    x1g, x2g = np.meshgrid(xs, xs, indexing="ij")
    rho = np.abs(evaluate_psi(cset, x1g, x2g)) ** 2
    total = float(np.trapezoid(np.trapezoid(rho, xs), xs))
    return DensityGrid(resolution=resolution, axis=xs, values=rho / total, normalization=total)


def triple_partners(
    n1: int, n2: int
) -> tuple[tuple[int, int], tuple[int, int]] | None:
    """Partner labels of a triple-degenerate lattice level.

    Requires n1 + n2 even, n1 != n2 and n1 != 3 n2; the partners are the
    folded images of (n1 pi, n2 pi) under the scattering map with and without
    a preceding reflection.  All three pairs share one energy.
    """
    if n1 < 1 or n2 < 1:
        raise ValueError("quantum numbers must be positive integers")
    if _triple_class(n1, n2) is None:
        return None
    p1 = ((n1 + 3 * n2) // 2, abs(n1 - n2) // 2)
    p2 = (abs(n1 - 3 * n2) // 2, (n1 + n2) // 2)
    return p1, p2


def special_state(n1: int, n2: int) -> ProductState:
    """Coupling-independent superposition over a degenerate lattice triple.

    The relative signs are searched so the state vanishes identically on
    x1 = x2, which decouples it from the contact interaction.
    """
    partners = triple_partners(n1, n2)
    if partners is None:
        raise ValueError(f"({n1}, {n2}) does not head a degenerate triple")
    pairs = [(n1, n2), partners[0], partners[1]]
    t = np.linspace(-0.5, 0.5, 64)
    cols = np.array([mode(a, t) * mode(b, t) for a, b in pairs])
    weight = 1.0 / math.sqrt(3.0)
    for s1 in (1, -1):
        for s2 in (1, -1):
            if np.abs(cols[0] + s1 * cols[1] + s2 * cols[2]).max() < 1e-10:
                return ProductState(
                    terms=(
                        (pairs[0], 1, weight),
                        (pairs[1], s1, weight),
                        (pairs[2], s2, weight),
                    )
                )
    raise RuntimeError(f"no sign pattern annihilates the diagonal for ({n1}, {n2})")


def hardcore_plane_factor(kvec: np.ndarray, x1, x2):
    """Product-of-sines building block of the infinite-repulsion states.

    Equals the four-exponential sum with coefficients e^{-i k1}, -e^{-i(k1+k2)},
    -1, e^{-i k2} on momenta (k1, k2), (k1, -k2), (-k1, k2), (-k1, -k2).
    """
    k1, k2 = float(kvec[0]), float(kvec[1])
    return (
        4.0
        * np.exp(-0.5j * (k1 + k2))
        * np.sin(k1 * (0.5 - np.asarray(x1)))
        * np.sin(k2 * (0.5 + np.asarray(x2)))
    )


def hardcore_wavefunction(k: np.ndarray, parity: int = 1) -> CoefficientSet:
    """Eigenstate at infinite repulsion for a hard-core quasimomentum.

    The limit system decouples the two regions; the "+" block null vector is
    computed once and the "-" block follows from the requested parity.  The
    state vanishes on the walls and on the contact line.
    """
    if parity not in (1, -1):
        raise ValueError("parity must be +1 or -1")
    group = d6_group()
    k = np.asarray(k, dtype=float)
    momenta = coefficients.momenta_after(group, k)
    block = coefficients.hardcore_constraint_matrix(group, k)
    vec_plus, sv = coefficients.nullvector(block)
    if sv[-1] > 1e-8 * sv[0]:
        raise EmptyNullspaceError("momentum pair is not a hard-core level")
    breve = coefficients.element_maps(group)["breve"]
    n = len(group.elements)
    vec = np.zeros(2 * n, complex)
    vec[:n] = vec_plus
    for j in range(n):
        vec[n + breve[j]] = parity * vec_plus[j]
    vec = _fix_phase(vec)
    norm = _l2_norm(vec, momenta)
    branch = "cot" if parity == 1 else "tan"
    root = BetheRoot(float(k[0]), float(k[1]), branch, math.inf, 0.0)
    return CoefficientSet(
        coefficients=vec / norm,
        momenta=momenta,
        root=root,
        gamma=math.inf,
        norm=norm,
        singular_values=sv,
    )


def hardcore_closed_form(k: np.ndarray, parity: int = 1):
    """Three-sine-product form of the hard-core state, as a callable.

    psi = Phi_k - Phi_{sk} - e^{-i k2} Phi_{s sigma_z k} in the region
    x2 < x1, extended to the other region with the parity sign.
    """
    from .dihedral import SIGMA_Z, scattering_matrix

    k = np.asarray(k, dtype=float)
    s = scattering_matrix(3.0)
    kp = s @ k
    kpp = s @ (SIGMA_Z @ k)
    w = np.exp(-1j * k[1])

    def psi(x1, x2):
        x1 = np.asarray(x1, dtype=float)
        x2 = np.asarray(x2, dtype=float)
        def upper(a, b):
            return (
                hardcore_plane_factor(k, a, b)
                - hardcore_plane_factor(kp, a, b)
                - w * hardcore_plane_factor(kpp, a, b)
            )
        return np.where(x2 <= x1, upper(x1, x2), parity * upper(-x1, -x2))

    return psi
