"""Independent validation by dense diagonalization in a product sine basis.

The two-particle Hamiltonian with a contact interaction is assembled in the
basis phi_{n1}(x1) phi_{n2}(x2) of box modes.  Kinetic terms are diagonal;
the interaction couples states through one-dimensional overlap integrals of
four modes, evaluated by composite Simpson quadrature (exact to rounding for
these trigonometric integrands).  Contact interactions converge as 1/N in
the basis cutoff N, so eigenvalues are Richardson-extrapolated across
cutoffs before being compared against solver energies.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .params import mass_heavy, mass_light

_SIMPSON_INTERVALS = 4096
_MAX_CUTOFF = 80


class PoorFitError(RuntimeError):
    """Extrapolation fit residual too large to trust."""


@dataclass(frozen=True)
class BasisHamiltonian:
    """Dense symmetric Hamiltonian over the N^2 product basis."""

    cutoff: int
    matrix: np.ndarray
    gamma: float
    eta: float


def _simpson_weights(m: int) -> np.ndarray:
    w = np.ones(m + 1)
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    return w / (3.0 * m)


def interaction_element(n1: int, n2: int, m1: int, m2: int) -> float:
    """Overlap integral of four box modes over one coordinate.

    This is the contact matrix element divided by the coupling.  Vanishes
    whenever n1 + n2 + m1 + m2 is odd (the integrand is antisymmetric about
    the box center).
    """
    if min(n1, n2, m1, m2) < 1:
        raise ValueError("mode indices must be >= 1")
    y = np.linspace(0.0, 1.0, _SIMPSON_INTERVALS + 1)
    w = _simpson_weights(_SIMPSON_INTERVALS)
    prod = (
        4.0
        * np.sin(n1 * math.pi * y)
        * np.sin(n2 * math.pi * y)
        * np.sin(m1 * math.pi * y)
        * np.sin(m2 * math.pi * y)
    )
    return float(np.dot(w, prod))


@lru_cache(maxsize=8)
def interaction_tensor(cutoff: int) -> np.ndarray:
    """All interaction elements, indexed [(n1, n2), (m1, m2)].

    Built in one pass from the sampled mode products; identical values to
    interaction_element, cached per cutoff.
    """
    y = np.linspace(0.0, 1.0, _SIMPSON_INTERVALS + 1)
    w = _simpson_weights(_SIMPSON_INTERVALS)
    n = np.arange(1, cutoff + 1)
    s = np.sqrt(2.0) * np.sin(np.outer(n, math.pi * y))
    prod = (s[:, None, :] * s[None, :, :]).reshape(cutoff * cutoff, y.size)
    v = (prod * w) @ prod.T                      # [(n1, m1), (n2, m2)]
    v4 = v.reshape(cutoff, cutoff, cutoff, cutoff)
    return np.ascontiguousarray(v4.transpose(0, 2, 1, 3).reshape(cutoff**2, cutoff**2))


def kinetic_diagonal(eta: float, cutoff: int) -> np.ndarray:
    n = np.arange(1, cutoff + 1)
    e1 = n**2 * math.pi**2 / (2.0 * mass_heavy(eta))
    e2 = n**2 * math.pi**2 / (2.0 * mass_light(eta))
    return np.add.outer(e1, e2).reshape(-1)


def build_hamiltonian(gamma: float, eta: float = 3.0, cutoff: int = 30) -> BasisHamiltonian:
    """Kinetic diagonal plus gamma times the interaction tensor."""
    if cutoff < 4:
        raise ValueError("cutoff must be >= 4")
    if cutoff > _MAX_CUTOFF:
        raise ValueError(f"cutoff {cutoff} exceeds dense-storage guard {_MAX_CUTOFF}")
    if gamma < 0.0:
        raise ValueError("gamma must be >= 0")
    h = np.diag(kinetic_diagonal(eta, cutoff)) + gamma * interaction_tensor(cutoff)
    return BasisHamiltonian(cutoff=cutoff, matrix=h, gamma=gamma, eta=eta)


def spectrum(gamma: float, eta: float = 3.0, cutoff: int = 30, count: int = 10) -> np.ndarray:
    """Lowest `count` eigenvalues, ascending."""
    if count > cutoff**2:
        raise ValueError("count exceeds basis size")
    ham = build_hamiltonian(gamma, eta, cutoff)
    vals = np.linalg.eigvalsh(ham.matrix)
    if not np.isfinite(vals).all():
        raise RuntimeError("eigensolver returned non-finite values")
    return vals[:count]


def eigenstates(
    gamma: float, eta: float = 3.0, cutoff: int = 30, count: int = 10
) -> tuple[np.ndarray, np.ndarray]:
    """Lowest eigenpairs; vectors are columns over the product basis."""
    ham = build_hamiltonian(gamma, eta, cutoff)
    vals, vecs = np.linalg.eigh(ham.matrix)
    return vals[:count], vecs[:, :count]


def eigenstate_density(
    gamma: float, level: int, xs: np.ndarray, eta: float = 3.0, cutoff: int = 30
) -> np.ndarray:
    """|psi|^2 of one eigenstate on a grid, normalized to unit integral."""
    _, vecs = eigenstates(gamma, eta, cutoff, count=level + 1)
    n = np.arange(1, cutoff + 1)
    phi = np.sqrt(2.0) * np.sin(np.outer(n, math.pi * (0.5 + xs)))
    amp = phi.T @ vecs[:, level].reshape(cutoff, cutoff) @ phi
    rho = amp**2
    total = float(np.trapezoid(np.trapezoid(rho, xs), xs))
    return rho / total


def extrapolate(values) -> float:
    """Infinite-basis estimate from E(N) = E_inf + c/N.

    values is a sequence of (cutoff, eigenvalue) pairs, at least three.
    Raises PoorFitError when the fit residual exceeds 1e-2 relative.
    """
    pts = list(values)
    if len(pts) < 3:
        raise ValueError("need at least three cutoffs")
    cutoffs = np.array([float(c) for c, _ in pts])
    energies = np.array([float(e) for _, e in pts])
    design = np.vstack([np.ones_like(cutoffs), 1.0 / cutoffs]).T
    coef, *_ = np.linalg.lstsq(design, energies, rcond=None)
    resid = float(np.abs(design @ coef - energies).max())
    scale = max(1e-300, float(np.abs(energies).max()))
    if resid > 1e-2 * scale:
        raise PoorFitError(f"fit residual {resid:.2e} exceeds 1e-2 relative")
    return float(coef[0])


def extrapolated_spectrum(
    gamma: float, count: int, eta: float = 3.0, cutoffs: tuple[int, ...] = (20, 30, 40)
) -> np.ndarray:
    """Richardson-extrapolated lowest eigenvalues across basis cutoffs."""
    tables = {c: spectrum(gamma, eta, c, count) for c in cutoffs}
    return np.array(
        [extrapolate([(c, tables[c][i]) for c in cutoffs]) for i in range(count)]
    )


def validate_against_bethe(
    gamma: float,
    count: int,
    cutoffs: tuple[int, ...] = (20, 30, 40),
    rel_tol: float = 1e-3,
) -> dict:
    """Cross-check solver energies against extrapolated eigenvalues.

    Returns a JSON-ready report with per-level deviations and pass flags.
    """
    from .bethe import enumerate_spectrum

    levels = enumerate_spectrum(gamma, count)
    ed_vals = extrapolated_spectrum(gamma, count, cutoffs=cutoffs)
    rows = []
    for lv, ev in zip(levels, ed_vals):
        dev = abs(lv.energy - ev)
        rel = dev / abs(ev)
        rows.append(
            {
                "index": lv.index,
                "quantum_numbers": list(lv.quantum_numbers) if lv.quantum_numbers else None,
                "branch": lv.root.branch,
                "parity": lv.parity,
                "bethe_energy": lv.energy,
                "ed_energy": float(ev),
                "abs_deviation": float(dev),
                "rel_deviation": float(rel),
                "pass": bool(rel < rel_tol),
            }
        )
    return {
        "gamma": gamma,
        "cutoffs": list(cutoffs),
        "rel_tol": rel_tol,
        "levels": rows,
        "all_pass": all(r["pass"] for r in rows),
    }
