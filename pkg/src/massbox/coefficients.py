"""Homogeneous linear system for the plane-wave amplitudes.

The ansatz carries one amplitude per (group element, region) pair, region "+"
being x2 < x1 and "-" being x1 < x2.  Three families of conditions constrain
them: wall relations tying each amplitude to its single-momentum-flipped
partner, continuity across the contact line, and the derivative-jump relation
the contact interaction imposes there.  Elements d_j and d_k = s^-1 d_j share
their total momentum, so continuity and jump pair the amplitudes two by two.
A quantum state exists exactly when the stacked system has a null vector.
"""

from __future__ import annotations

import numpy as np

from .dihedral import SIGMA_Z, DihedralGroup, scattering_matrix


def element_maps(group: DihedralGroup) -> dict:
    """Index maps j -> reflected/negated/scattered partner elements."""
    els = group.elements
    s = scattering_matrix(group.eta)
    return {
        "lower": [group.index_of(-SIGMA_Z @ d) for d in els],   # flip k1'
        "bar": [group.index_of(SIGMA_Z @ d) for d in els],      # flip k2'
        "breve": [group.index_of(-d) for d in els],             # flip both
        "spair": [group.index_of(s @ d) for d in els],          # collision partner
    }


def scatter_pairs(group: DihedralGroup) -> list[tuple[int, int]]:
    """Unordered pairs {j, k} with d_j = s d_k, each listed once."""
    spair = element_maps(group)["spair"]
    done = set()
    pairs = []
    for kidx in range(len(group.elements)):
        jidx = spair[kidx]
        key = frozenset((jidx, kidx))
        if key in done:
            continue
        done.add(key)
        pairs.append((jidx, kidx))
    return pairs


def momenta_after(group: DihedralGroup, k: np.ndarray) -> np.ndarray:
    """Stacked images d_j k, shape (4n, 2)."""
    kv = np.asarray(k, dtype=float)
    return np.array([d @ kv for d in group.elements])


def relative_momentum(kprime: np.ndarray, eta: float) -> np.ndarray:
    """Coefficient of the relative coordinate in each plane-wave phase."""
    return kprime[..., 0] / (1.0 + eta) - kprime[..., 1] / (1.0 + 1.0 / eta)


def constraint_matrix(group: DihedralGroup, k: np.ndarray, gamma: float) -> np.ndarray:
    """Full condition stack over the 8n amplitudes (columns: all "+", then all "-")."""
    n = len(group.elements)
    maps = element_maps(group)
    kprime = momenta_after(group, k)
    kappa = relative_momentum(kprime, group.eta)
    rows = []
    for j in range(n):
        k1p, k2p = kprime[j]
        jl, jb = maps["lower"][j], maps["bar"][j]
        row = np.zeros(2 * n, complex)
        row[j] = 1.0
        row[jl] += np.exp(-1j * k1p)          # particle 1, region +
        rows.append(row)
        row = np.zeros(2 * n, complex)
        row[n + j] = 1.0
        row[n + jl] += np.exp(1j * k1p)       # particle 1, region -
        rows.append(row)
        row = np.zeros(2 * n, complex)
        row[j] = 1.0
        row[jb] += np.exp(1j * k2p)           # particle 2, region +
        rows.append(row)
        row = np.zeros(2 * n, complex)
        row[n + j] = 1.0
        row[n + jb] += np.exp(-1j * k2p)      # particle 2, region -
        rows.append(row)
    for jidx, kidx in scatter_pairs(group):
        row = np.zeros(2 * n, complex)
        row[jidx] = 1.0
        row[kidx] = 1.0
        row[n + jidx] = -1.0
        row[n + kidx] = -1.0                  # continuity on the diagonal
        rows.append(row)
        kap = kappa[jidx]
        row = np.zeros(2 * n, complex)
        row[jidx] = 1j * kap
        row[kidx] = -1j * kap
        row[n + jidx] = -1j * kap - 2.0 * gamma
        row[n + kidx] = 1j * kap - 2.0 * gamma  # derivative jump 2*gamma*psi
        rows.append(row)
    return np.array(rows)


def hardcore_constraint_matrix(group: DihedralGroup, k: np.ndarray) -> np.ndarray:
    """Limit system for infinite repulsion, "+" region block only.

    The jump relation divided by gamma degenerates to A_{j} + A_{k} = 0 per
    scatter pair; together with the wall relations this fixes the region
    block up to scale.  The two regions decouple, one parity each.
    """
    n = len(group.elements)
    maps = element_maps(group)
    kprime = momenta_after(group, k)
    rows = []
    for j in range(n):
        k1p, k2p = kprime[j]
        row = np.zeros(n, complex)
        row[j] = 1.0
        row[maps["lower"][j]] += np.exp(-1j * k1p)
        rows.append(row)
        row = np.zeros(n, complex)
        row[j] = 1.0
        row[maps["bar"][j]] += np.exp(1j * k2p)
        rows.append(row)
    for jidx, kidx in scatter_pairs(group):
        row = np.zeros(n, complex)
        row[jidx] = 1.0
        row[kidx] = 1.0
        rows.append(row)
    return np.array(rows)


def pair_block(
    group: DihedralGroup, kprime: np.ndarray, jidx: int, kidx: int, gamma: float
) -> np.ndarray:
    """4x4 system of one scatter pair over (A_j+, A_k+, A_j-, A_k-).

    Uses the amplitude relations of the sign-flipped partners to eliminate
    them, which brings in the unit-modulus transfer phases T = exp(-i(k2'-k1')).
    """
    eta = group.eta
    kp_j = kprime[jidx]
    kp_k = kprime[kidx]
    kap = kp_j[0] / (1.0 + eta) - kp_j[1] / (1.0 + 1.0 / eta)
    tjp = np.exp(-1j * (kp_j[1] - kp_j[0]))
    tkp = np.exp(-1j * (kp_k[1] - kp_k[0]))
    tjm, tkm = 1.0 / tjp, 1.0 / tkp
    return np.array(
        [
            [1j * kap, -1j * kap, -1j * kap - 2 * gamma, 1j * kap - 2 * gamma],
            [
                -1j * kap * tjp,
                1j * kap * tkp,
                (1j * kap - 2 * gamma) * tjm,
                (-1j * kap - 2 * gamma) * tkm,
            ],
            [1.0, 1.0, -1.0, -1.0],
            [tjp, tkp, -tjm, -tkm],
        ]
    )


def pair_determinants(
    group: DihedralGroup, k: np.ndarray, gamma: float, normalize: bool = True
) -> np.ndarray:
    """Determinant of each pair block, one complex value per scatter pair.

    Normalized by the Hadamard bound (product of row norms) so magnitudes are
    comparable across pairs and couplings.
    """
    kprime = momenta_after(group, k)
    out = []
    for jidx, kidx in scatter_pairs(group):
        m = pair_block(group, kprime, jidx, kidx, gamma)
        det = np.linalg.det(m)
        if normalize:
            det /= np.prod(np.linalg.norm(m, axis=1))
        out.append(det)
    return np.array(out)


def nullvector(matrix: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Smallest right singular vector and the full singular value list."""
    _, sv, vh = np.linalg.svd(matrix)
    return vh[-1].conj(), sv


def nullspace_basis(matrix: np.ndarray, rel_tol: float = 1e-8) -> np.ndarray:
    """Rows of V^H whose singular values fall below rel_tol * sigma_max."""
    _, sv, vh = np.linalg.svd(matrix)
    keep = sv < rel_tol * sv[0]
    return vh[keep].conj()
