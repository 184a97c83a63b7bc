"""Exact kinematics of two-body collisions in a hard-wall box.

An elastic collision between particles of mass ratio eta maps the momentum
pair (k1, k2) through the involutory matrix s(eta); a wall bounce flips one
momentum sign (sigma_z for particle 2, -sigma_z for particle 1).  For
eta = tan^2(l*pi/2n) with gcd(l, n) = 1 the successive collision maps close
after finitely many steps and the reachable momenta form the orbit of a
4n-element dihedral group.  This module builds those groups, classifies mass
ratios, and provides the Chebyshev closed form for matrix powers used to
check closure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]])
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]])

_DEFAULT_TOL = 1e-12


class GroupConstructionError(RuntimeError):
    """The generated collision operators do not form a valid group."""


@dataclass(frozen=True)
class MomentumVector:
    """Momentum pair (k1, k2) in units hbar/L."""

    k1: float
    k2: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.k1) and math.isfinite(self.k2)):
            raise ValueError(f"momentum components must be finite, got {(self.k1, self.k2)}")

    def as_array(self) -> np.ndarray:
        return np.array([self.k1, self.k2])

    def close_to(self, other: "MomentumVector", tol: float = _DEFAULT_TOL) -> bool:
        return abs(self.k1 - other.k1) <= tol and abs(self.k2 - other.k2) <= tol


@dataclass(frozen=True)
class MassRatioClass:
    """Nonergodic mass ratio eta = tan^2(l*pi/2n) with l, n coprime."""

    eta: float
    l: int
    n: int
    coprime: bool = True

    def __post_init__(self) -> None:
        if not (1 <= self.l <= self.n):
            raise ValueError(f"need 1 <= l <= n, got l={self.l}, n={self.n}")
        if self.coprime and math.gcd(self.l, self.n) != 1:
            raise ValueError(f"l={self.l} and n={self.n} are not coprime")

    @property
    def group_name(self) -> str:
        return f"D{2 * self.n}"


@dataclass(frozen=True)
class DihedralGroup:
    """The 4n collision operators {+-r^p, +-r^p sigma_z} for one mass ratio."""

    n: int
    eta: float
    elements: tuple
    generator_r: np.ndarray
    generator_sigma: np.ndarray

    def __len__(self) -> int:
        return len(self.elements)

    def index_of(self, m: np.ndarray, tol: float = 1e-9) -> int:
        """Index of the element equal to m within max-norm tol."""
        for i, e in enumerate(self.elements):
            if np.abs(e - m).max() < tol:
                return i
        raise KeyError("matrix is not a group element")


@dataclass(frozen=True)
class ChebyshevPower:
    """Closed-form n-th power of a unimodular 2x2 matrix."""

    base: np.ndarray
    q: float
    power: int
    result: np.ndarray


def scattering_matrix(eta: float) -> np.ndarray:
    """Momentum map of an elastic two-body collision.

    Rows are [(eta-1)/(eta+1), 2*eta/(eta+1)] and [2/(eta+1), (1-eta)/(eta+1)];
    the matrix is involutory and has determinant -1.
    """
    if not (eta > 0.0 and math.isfinite(eta)):
        raise ValueError(f"mass ratio must be positive and finite, got {eta}")
    d = eta + 1.0
    return np.array([[(eta - 1.0) / d, 2.0 * eta / d], [2.0 / d, (1.0 - eta) / d]])


def apply_element(d: np.ndarray, k: MomentumVector) -> MomentumVector:
    """Apply a collision operator to a momentum pair."""
    v = np.asarray(d) @ k.as_array()
    return MomentumVector(float(v[0]), float(v[1]))


def rescaled_norm(k: MomentumVector | np.ndarray, eta: float) -> float:
    """Conserved quantity k1^2 + eta*k2^2 (the circle of the momentum orbit)."""
    arr = k.as_array() if isinstance(k, MomentumVector) else np.asarray(k, dtype=float)
    return float(arr[0] ** 2 + eta * arr[1] ** 2)


def nonergodicity_classify(
    eta: float, n_max: int = 64, tol: float = 1e-9
) -> MassRatioClass | None:
    """Find the minimal n <= n_max with eta = tan^2(l*pi/2n), gcd(l, n) = 1.

    Returns None when no coprime pair matches within tol.  The degenerate
    ratios eta = 0 and eta = inf (a single bouncing particle) are outside the
    classification; eta must be positive and finite.
    """
    if not (eta > 0.0 and math.isfinite(eta)):
        raise ValueError(f"mass ratio must be positive and finite, got {eta}")
    if n_max < 1 or tol <= 0.0:
        raise ValueError("need n_max >= 1 and tol > 0")
    for n in range(2, n_max + 1):
        for l in range(1, n):
            if math.gcd(l, n) != 1:
                continue
            if abs(eta - math.tan(l * math.pi / (2 * n)) ** 2) < tol:
                return MassRatioClass(eta=eta, l=l, n=n)
    return None


def build_dihedral_group(cls: MassRatioClass) -> DihedralGroup:
    """Construct all 4n collision operators for a classified mass ratio.

    The generator is r = s(eta) sigma_z for eta >= 1 and r = -s(eta) sigma_z
    for eta < 1.  Elements are enumerated as +-r^p and +-r^p sigma_z for
    p = 0..n-1, which covers the full set whether r has order n or 2n.
    """
    sign = 1.0 if cls.eta >= 1.0 else -1.0
    r = sign * (scattering_matrix(cls.eta) @ SIGMA_Z)
    elements = []
    p = np.eye(2)
    for _ in range(cls.n):
        for m in (p, -p, p @ SIGMA_Z, -(p @ SIGMA_Z)):
            elements.append(m.copy())
        p = r @ p
    r2n = np.linalg.matrix_power(r, 2 * cls.n)
    if np.abs(r2n - np.eye(2)).max() > 1e-12:
        raise GroupConstructionError(f"r^(2n) != I for eta={cls.eta}: invalid classification")
    if np.abs(SIGMA_Z @ r @ SIGMA_Z - np.linalg.inv(r)).max() > 1e-12:
        raise GroupConstructionError("sigma_z r sigma_z != r^-1")
    for i in range(len(elements)):
        for j in range(i + 1, len(elements)):
            if np.abs(elements[i] - elements[j]).max() <= 1e-9:
                raise GroupConstructionError(
                    f"collision operators are not distinct for eta={cls.eta}"
                )
    return DihedralGroup(
        n=cls.n,
        eta=cls.eta,
        elements=tuple(elements),
        generator_r=r,
        generator_sigma=SIGMA_Z.copy(),
    )


@lru_cache(maxsize=16)
def cached_group(eta: float, n_max: int = 64) -> DihedralGroup:
    cls = nonergodicity_classify(eta, n_max=n_max)
    if cls is None:
        raise ValueError(f"eta={eta} is not a nonergodic mass ratio")
    return build_dihedral_group(cls)


def momentum_orbit(
    k: MomentumVector, group: DihedralGroup, tol: float = 1e-9
) -> list[MomentumVector]:
    """Deduplicated momenta {d_j k} reachable by repeated collisions.

    At most 4n vectors; fewer when k is fixed by a reflection.  All images lie
    on the circle k1^2 + eta*k2^2 = const.
    """
    arr = k.as_array()
    if np.abs(arr).max() == 0.0:
        raise ValueError("orbit of the zero vector is trivial")
    eff = tol * max(1.0, float(np.linalg.norm(arr)))
    target = rescaled_norm(k, group.eta)
    out: list[np.ndarray] = []
    for d in group.elements:
        v = d @ arr
        if abs(rescaled_norm(v, group.eta) - target) > 1e-10 * max(1.0, target):
            raise GroupConstructionError("orbit image left the energy circle")
        if not any(np.abs(v - u).max() < eff for u in out):
            out.append(v)
    return [MomentumVector(float(v[0]), float(v[1])) for v in out]


def chebyshev_power(m: np.ndarray, n: int) -> ChebyshevPower:
    """n-th power of a unimodular 2x2 matrix via sin((n+1)q)/sin(q) recursion.

    Requires det(m) = 1 and |trace(m)| <= 2 (elliptic case).  Near q = 0 or
    q = pi the sine ratio loses precision and plain repeated multiplication is
    used instead.
    """
    m = np.asarray(m, dtype=float)
    if n < 0:
        raise ValueError("power must be a nonnegative integer")
    det = float(np.linalg.det(m))
    if abs(det - 1.0) > 1e-10:
        raise ValueError(f"matrix must be unimodular, det={det}")
    tr = float(np.trace(m))
    if abs(tr) > 2.0 + 1e-12:
        raise ValueError(f"|trace| <= 2 required, got {tr}")
    q = math.acos(min(1.0, max(-1.0, tr / 2.0)))
    if abs(math.sin(q)) < 1e-8:
        result = np.linalg.matrix_power(m, n)
    else:
        u_nm1 = math.sin(n * q) / math.sin(q)
        u_nm2 = math.sin((n - 1) * q) / math.sin(q)
        result = m * u_nm1 - np.eye(2) * u_nm2
    return ChebyshevPower(base=m, q=q, power=n, result=result)


def rotation_form(cls: MassRatioClass) -> np.ndarray:
    """Similarity transform of the generator to a pure rotation.

    R = U r U^-1 with U = diag(1, sqrt(eta)) is an exact rotation; the angle
    is (n-l)*pi/n for eta >= 1 and l*pi/n for eta < 1.
    """
    group = build_dihedral_group(cls)
    u = np.diag([1.0, math.sqrt(cls.eta)])
    rot = u @ group.generator_r @ np.linalg.inv(u)
    if np.abs(rot @ rot.T - np.eye(2)).max() > 1e-12:
        raise GroupConstructionError("similarity transform did not yield a rotation")
    return rot
