"""Quantization conditions and spectrum for mass ratio 3.

An eigenstate is labelled by a quasimomentum pair (k1, k2) solving one of two
transcendental systems, the "cot" system

    k1 + 3 k2 - 2 gamma (cot((k1+k2)/2) + cot k2) = 0
    k1 - 3 k2 - 2 gamma (cot((k1-k2)/2) - cot k2) = 0

or the "tan" system with cot replaced by -tan.  At gamma = 0 the roots sit on
the lattice (n1 pi, n2 pi); each level is followed to finite coupling by a
Newton homotopy in gamma started from the analytic small-gamma expansion of
its seed.  Roots are canonicalized to the lexicographically smallest
first-quadrant representative of their 12-point group orbit, which makes
deduplication and comparisons against the infinite-coupling lattice exact.

The module also hosts the constraint-rank probe that counts how many
independent pair-determinant conditions the amplitude system imposes for a
general nonergodic mass ratio, which is what singles out eta = 3 (and 1/3) as
solvable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import coefficients
from .dihedral import (
    SIGMA_Z,
    DihedralGroup,
    MomentumVector,
    cached_group,
    nonergodicity_classify,
    scattering_matrix,
)

ETA = 3.0
_POLE_GUARD = 1e-13

COT_BRANCH = "cot"
TAN_BRANCH = "tan"


class PoleError(ArithmeticError):
    """Residual evaluated too close to a cot/tan pole to be trusted."""


class ConvergenceError(RuntimeError):
    """Newton iteration failed to reach the residual tolerance."""


class ContinuationError(RuntimeError):
    """Homotopy in gamma broke down; carries the failing coupling."""

    def __init__(self, message: str, gamma: float):
        super().__init__(f"{message} (gamma={gamma:g})")
        self.gamma = gamma


@dataclass(frozen=True)
class SolverOptions:
    residual_tol: float = 1e-10
    step_tol: float = 1e-12
    max_iter: int = 100
    fd_step: float = 1e-7


@dataclass(frozen=True)
class BetheRoot:
    """A solved quasimomentum pair with its branch and coupling."""

    k1: float
    k2: float
    branch: str
    gamma: float
    residual_norm: float

    def momentum(self) -> MomentumVector:
        return MomentumVector(self.k1, self.k2)

    @property
    def energy(self) -> float:
        return energy(np.array([self.k1, self.k2]))


@dataclass(frozen=True)
class SpectralLevel:
    """One energy level: root, orbit partners, parity and gamma = 0 labels."""

    index: int
    energy: float
    parity: int
    quantum_numbers: tuple[int, int] | None
    root: BetheRoot
    orbit: tuple[MomentumVector, MomentumVector, MomentumVector]
    interaction_independent: bool = False


@dataclass(frozen=True)
class ProbeReport:
    """Outcome of the constraint-count probe for one mass ratio."""

    eta: float
    l: int
    n: int
    group: str
    gamma: float
    n_conditions: int
    n_independent: int
    solvable: bool
    min_residual: float
    argmin: tuple[float, float]
    message: str


def d6_group() -> DihedralGroup:
    return cached_group(ETA)


def energy(k: np.ndarray | MomentumVector) -> float:
    """E = (k1^2 + 3 k2^2)/8, invariant under the full collision group."""
    arr = k.as_array() if isinstance(k, MomentumVector) else np.asarray(k, dtype=float)
    return float((arr[0] ** 2 + 3.0 * arr[1] ** 2) / 8.0)


def residual(branch: str, k1: float, k2: float, gamma: float) -> tuple[float, float]:
    """Residual pair of the chosen quantization system.

    Raises PoleError when an argument sits within 1e-13 of a cot pole
    (sin -> 0) or tan pole (cos -> 0) so callers can re-bracket.
    """
    f, _ = _residual_floor(branch, k1, k2, gamma)
    return (float(f[0]), float(f[1]))


def _residual_floor(branch: str, k1: float, k2: float, gamma: float):
    """Residual pair plus its double-precision evaluation floor.

    Near a pole the trig terms amplify the last-bit error of the arguments by
    1 + t^2; no evaluation can certify a residual below that floor, and the
    Newton driver accepts roots once they reach it.
    """
    if not (math.isfinite(k1) and math.isfinite(k2) and gamma >= 0.0):
        raise ValueError("momenta must be finite and gamma >= 0")
    args = ((k1 + k2) / 2.0, (k1 - k2) / 2.0, k2)
    if branch == COT_BRANCH:
        for a in args:
            if abs(math.sin(a)) < _POLE_GUARD:
                raise PoleError(f"cot argument {a} too close to a pole")
        trig = [1.0 / math.tan(a) for a in args]
        f = np.array(
            [
                k1 + 3.0 * k2 - 2.0 * gamma * (trig[0] + trig[2]),
                k1 - 3.0 * k2 - 2.0 * gamma * (trig[1] + (-trig[2])),
            ]
        )
    elif branch == TAN_BRANCH:
        for a in args:
            if abs(math.cos(a)) < _POLE_GUARD:
                raise PoleError(f"tan argument {a} too close to a pole")
        trig = [math.tan(a) for a in args]
        f = np.array(
            [
                k1 + 3.0 * k2 + 2.0 * gamma * (trig[0] + trig[2]),
                k1 - 3.0 * k2 + 2.0 * gamma * (trig[1] - trig[2]),
            ]
        )
    else:
        raise ValueError(f"unknown branch {branch!r}")
    eps = np.finfo(float).eps
    amp = sum(2.0 * gamma * (1.0 + t * t) * (1.0 + abs(a)) for t, a in zip(trig, args))
    floor = 32.0 * eps * (abs(k1) + 3.0 * abs(k2) + amp)
    return f, floor


def hardcore_residual(branch: str, k1: float, k2: float) -> tuple[float, float]:
    """Limit form of the quantization system at infinite repulsion."""
    if branch == COT_BRANCH:
        return (
            1.0 / math.tan((k1 + k2) / 2.0) + 1.0 / math.tan(k2),
            1.0 / math.tan((k1 - k2) / 2.0) - 1.0 / math.tan(k2),
        )
    if branch == TAN_BRANCH:
        return (
            math.tan((k1 + k2) / 2.0) + math.tan(k2),
            math.tan((k1 - k2) / 2.0) - math.tan(k2),
        )
    raise ValueError(f"unknown branch {branch!r}")


def _residual_vec(branch: str, k: np.ndarray, gamma: float) -> np.ndarray:
    f, _ = _residual_floor(branch, float(k[0]), float(k[1]), gamma)
    return f


def solve_root(
    branch: str,
    guess: MomentumVector | np.ndarray,
    gamma: float,
    opts: SolverOptions | None = None,
) -> BetheRoot:
    """Damped Newton iteration with central-difference Jacobian.

    The guess must lie in the basin of a root (continuation provides this);
    pole-adjacent guesses are nudged off the singular set before iterating.
    Convergence means the residual fell below the tolerance or below its
    provable double-precision evaluation floor, whichever is larger.
    """
    opts = opts or SolverOptions()
    k = guess.as_array() if isinstance(guess, MomentumVector) else np.array(guess, dtype=float)
    # a guess on a lattice pole means "the level seeded there": restart from
    # its analytic small-gamma expansion, which lies inside the Newton basin
    n1, n2 = round(k[0] / math.pi), round(k[1] / math.pi)
    if (
        gamma > 0.0
        and n1 >= 1
        and n2 >= 1
        and abs(k[0] - n1 * math.pi) < 1e-3
        and abs(k[1] - n2 * math.pi) < 1e-3
        and branch == branch_for(n1, n2)
    ):
        try:
            _residual_floor(branch, float(k[0]), float(k[1]), gamma)
        except PoleError:
            k = _seed_starts(n1, n2, gamma)[0]
    for _ in range(8):
        try:
            f, floor = _residual_floor(branch, float(k[0]), float(k[1]), gamma)
            break
        except PoleError:
            # asymmetric so pole-pinned sums and differences both move
            k = k + 1e-6 * np.array([1.0, 2.25]) * (1.0 + np.abs(k))
    else:
        raise ConvergenceError("guess is stuck on the singular set")
    h = opts.fd_step
    for _ in range(opts.max_iter):
        fnorm = np.abs(f).max()
        if fnorm < max(opts.residual_tol, floor):
            break
        jac = np.empty((2, 2))
        try:
            for i in range(2):
                e = np.zeros(2)
                e[i] = h
                jac[:, i] = (
                    _residual_vec(branch, k + e, gamma) - _residual_vec(branch, k - e, gamma)
                ) / (2.0 * h)
        except PoleError as exc:
            raise ConvergenceError(f"Jacobian evaluation hit a pole: {exc}") from exc
        try:
            dk = np.linalg.solve(jac, -f)
        except np.linalg.LinAlgError as exc:
            raise ConvergenceError("singular Jacobian") from exc
        lam = 1.0
        while True:
            try:
                f_new, floor_new = _residual_floor(
                    branch, float(k[0] + lam * dk[0]), float(k[1] + lam * dk[1]), gamma
                )
                if np.abs(f_new).max() <= fnorm or lam < 1e-8:
                    break
            except PoleError:
                pass
            lam *= 0.5
            if lam < 1e-10:
                raise ConvergenceError("line search failed near a pole")
        k = k + lam * dk
        f, floor = f_new, floor_new
        if np.abs(lam * dk).max() < opts.step_tol * (1.0 + np.abs(k).max()):
            break
    fnorm = float(np.abs(f).max())
    if fnorm > max(opts.residual_tol, floor):
        raise ConvergenceError(f"no convergence: residual {fnorm:.2e} at k={k}")
    return BetheRoot(float(k[0]), float(k[1]), branch, gamma, fnorm)


def orbit_partners(k: MomentumVector | np.ndarray) -> tuple[MomentumVector, MomentumVector]:
    """First-quadrant partners of a root under the collision group.

    k' = -sigma_z s sigma_z k and k'' = sigma_z s k, folded into the first
    quadrant by component sign flips; both satisfy the same branch equations.
    """
    arr = k.as_array() if isinstance(k, MomentumVector) else np.asarray(k, dtype=float)
    s = scattering_matrix(ETA)
    kp = np.abs(-SIGMA_Z @ (s @ (SIGMA_Z @ arr)))
    kpp = np.abs(SIGMA_Z @ (s @ arr))
    return (
        MomentumVector(float(kp[0]), float(kp[1])),
        MomentumVector(float(kpp[0]), float(kpp[1])),
    )


def first_quadrant_orbit(k: np.ndarray) -> np.ndarray:
    """All distinct first-quadrant representatives of the group orbit, sorted."""
    group = d6_group()
    folded = np.abs(coefficients.momenta_after(group, k))
    reps: dict = {}
    for v in folded:
        reps.setdefault((round(v[0], 9), round(v[1], 9)), v)
    return np.array([reps[key] for key in sorted(reps)])


def canonical_momentum(k: np.ndarray | MomentumVector) -> np.ndarray:
    """Lexicographically smallest first-quadrant orbit representative."""
    arr = k.as_array() if isinstance(k, MomentumVector) else np.asarray(k, dtype=float)
    return first_quadrant_orbit(arr)[0]


def orbit_is_physical(k: np.ndarray, tol: float = 1e-8) -> bool:
    """Reject momenta whose orbit degenerates.

    A vanishing component or coincident orbit images make plane waves in the
    superposition collapse onto each other; the amplitude system then admits
    only null vectors with identically zero wavefunction.  Genuine roots keep
    all 12 images distinct and component-wise nonzero.
    """
    group = d6_group()
    images = coefficients.momenta_after(group, k)
    scale = 1.0 + float(np.abs(images).max())
    if np.abs(images).min() < tol * scale:
        return False
    diff = images[:, None, :] - images[None, :, :]
    dist = np.abs(diff).max(axis=2) + np.eye(len(images)) * 1e9
    return bool(dist.min() > tol * scale)


def branch_for(n1: int, n2: int) -> str:
    """Quantization branch continuing the (n1, n2) lattice level."""
    return COT_BRANCH if (n1 + n2) % 2 == 0 else TAN_BRANCH


def _seed_starts(n1: int, n2: int, gamma0: float) -> list[np.ndarray]:
    """Analytic small-gamma starting points near the (n1, n2) lattice root.

    Even-sum seeds have two Newton basins (the root and its orbit partner
    both approach the lattice point); odd-sum seeds have one.  Seeds on the
    scattering-invariant line n1 = 3 n2 are started instead from the orbit's
    axis representative (0, 2 n2 pi), which the root leaves as k1 = 2 sqrt(gamma).
    """
    a = (n1 + 3.0 * n2) * math.pi
    b = (n1 - 3.0 * n2) * math.pi
    if branch_for(n1, n2) == TAN_BRANCH:
        d1 = 2.0 * gamma0 * (1.0 / a + 1.0 / b)
        d2 = 2.0 * gamma0 * (1.0 / a - 1.0 / b)
        return [np.array([n1 * math.pi + d1, n2 * math.pi + d2])]
    if n1 == 3 * n2:
        m = n2
        return [
            np.array([2.0 * math.sqrt(gamma0), 2.0 * m * math.pi + gamma0 / (3.0 * m * math.pi)])
        ]
    disc = 4.0 * (a - b) ** 2 + 12.0 * a * b
    sq = math.sqrt(disc)
    starts = []
    for t in ((-2.0 * (a - b) + sq) / (2.0 * a * b), (-2.0 * (a - b) - sq) / (2.0 * a * b)):
        alpha = t / (a * t - 1.0)
        beta = alpha - t
        starts.append(
            np.array(
                [n1 * math.pi + 2.0 * gamma0 * (alpha + beta), n2 * math.pi + 2.0 * gamma0 * t]
            )
        )
    return starts


_GAMMA_SEED = 1e-4
_MIN_LOG_STEP = 1e-6


def _continue_root(
    branch: str,
    start: np.ndarray,
    gamma_start: float,
    gamma_target: float,
    steps: int | None = None,
    opts: SolverOptions | None = None,
) -> BetheRoot:
    """Follow one root along a geometric gamma ladder with adaptive refinement."""
    opts = opts or SolverOptions()
    if gamma_target <= 0.0:
        raise ValueError("continuation target must be positive")
    decades = abs(math.log10(gamma_target / gamma_start))
    n_steps = steps if steps is not None else max(8, int(math.ceil(12 * decades)))
    root = solve_root(branch, start, gamma_start, opts)
    k = np.array([root.k1, root.k2])
    g_prev = gamma_start
    pending = list(np.geomspace(gamma_start, gamma_target, max(2, n_steps)))[1:]
    while pending:
        g = pending[0]
        try:
            cand = solve_root(branch, k, g, opts)
            if abs(cand.k1 - root.k1) > 0.75 or abs(cand.k2 - root.k2) > 0.75:
                raise ConvergenceError("root jumped basins; suspected branch collision")
            root = cand
            k = np.array([root.k1, root.k2])
            g_prev = g
            pending.pop(0)
        except (ConvergenceError, PoleError):
            if math.log(g / g_prev) < _MIN_LOG_STEP:
                raise ContinuationError("continuation step underflow", g)
            pending.insert(0, math.sqrt(g_prev * g))
    return root


def continue_level(
    n1: int,
    n2: int,
    gamma_target: float,
    steps: int | None = None,
    opts: SolverOptions | None = None,
) -> BetheRoot:
    """Continue the (n1, n2) lattice level from gamma = 0 to gamma_target.

    Returns the canonical first-quadrant orbit representative.  For
    gamma_target below the seeding coupling the root is solved directly at
    the target from the analytic expansion.
    """
    if n1 < 1 or n2 < 1:
        raise ValueError("quantum numbers must be positive integers")
    if gamma_target < 0.0:
        raise ValueError("gamma must be >= 0")
    branch = branch_for(n1, n2)
    if gamma_target == 0.0:
        return BetheRoot(n1 * math.pi, n2 * math.pi, branch, 0.0, 0.0)
    g0 = min(_GAMMA_SEED, gamma_target)
    start = _seed_starts(n1, n2, g0)[0]
    root = _continue_root(branch, start, g0, gamma_target, steps=steps, opts=opts)
    return _canonicalize(root, opts)


def _canonicalize(root: BetheRoot, opts: SolverOptions | None = None) -> BetheRoot:
    rep = canonical_momentum(np.array([root.k1, root.k2]))
    polished = solve_root(root.branch, rep, root.gamma, opts)
    return polished


def _continue_all(n1: int, n2: int, gamma_target: float, opts: SolverOptions | None = None):
    """All distinct continued roots of one seed (canonical, physical only)."""
    branch = branch_for(n1, n2)
    g0 = min(_GAMMA_SEED, gamma_target)
    roots = []
    for start in _seed_starts(n1, n2, g0):
        try:
            root = _continue_root(branch, start, g0, gamma_target, opts=opts)
            root = _canonicalize(root, opts)
        except (ContinuationError, ConvergenceError):
            continue
        if orbit_is_physical(np.array([root.k1, root.k2])):
            roots.append(root)
    return roots


def _triple_class(n1: int, n2: int) -> tuple[tuple[int, int], ...] | None:
    """Lattice orbit class of a triple-degenerate seed, or None.

    Valid heads need n1 + n2 even, n1 != n2, and n1 != 3 n2; the class then
    consists of three strictly positive integer pairs sharing one energy.
    """
    if (n1 + n2) % 2 != 0 or n1 == n2 or n1 == 3 * n2:
        return None
    p1 = ((n1 + 3 * n2) // 2, abs(n1 - n2) // 2)
    p2 = (abs(n1 - 3 * n2) // 2, (n1 + n2) // 2)
    return tuple(sorted({(n1, n2), p1, p2}))


def _parity_from_nullvector(k: np.ndarray, gamma: float) -> int | None:
    """Spatial parity read off the amplitude null vector.

    Inversion maps region "+" amplitudes onto region "-" amplitudes of the
    negated group element; a physical state has one global ratio +-1.
    Returns None when the ratio is not clean (degenerate null space).
    """
    group = d6_group()
    cmat = coefficients.constraint_matrix(group, k, gamma)
    vec, sv = coefficients.nullvector(cmat)
    if sv[-1] > 1e-6 * sv[0]:
        return None
    n = len(group.elements)
    breve = coefficients.element_maps(group)["breve"]
    amax = np.abs(vec).max()
    ratios = [
        vec[n + breve[j]] / vec[j] for j in range(n) if abs(vec[j]) > 0.05 * amax
    ]
    if not ratios:
        return None
    signs = np.sign(np.real(ratios))
    if np.abs(np.imag(ratios)).max() > 1e-6 or len(set(signs.tolist())) != 1:
        return None
    return int(signs[0])


def _lattice_level(index: int, n1: int, n2: int) -> SpectralLevel:
    k = np.array([n1 * math.pi, n2 * math.pi])
    root = BetheRoot(float(k[0]), float(k[1]), branch_for(n1, n2), 0.0, 0.0)
    kp, kpp = orbit_partners(k)
    return SpectralLevel(
        index=index,
        energy=energy(k),
        parity=1 if (n1 + n2) % 2 == 0 else -1,
        quantum_numbers=(n1, n2),
        root=root,
        orbit=(root.momentum(), kp, kpp),
        interaction_independent=False,
    )


def _seed_list(count: int) -> list[tuple[int, int]]:
    """Lattice seeds sorted by noninteracting energy, with margin."""
    n_keep = count + 12
    nmax = 2 * int(math.isqrt(4 * n_keep)) + 8
    seeds = [(n1, n2) for n1 in range(1, nmax) for n2 in range(1, nmax)]
    seeds.sort(key=lambda p: (p[0] ** 2 + 3 * p[1] ** 2, p))
    return seeds[:n_keep]


def enumerate_spectrum(
    gamma: float, count: int, opts: SolverOptions | None = None
) -> list[SpectralLevel]:
    """Lowest `count` levels at coupling gamma, sorted by energy.

    Every lattice seed below an adaptive cutoff is continued on its branch;
    orbit-equivalent duplicates are merged.  Triple-degenerate lattice
    classes additionally contribute their coupling-independent superposition
    state, whose energy is pinned at the lattice value for every gamma.
    Parity labels come from the assembled amplitude null vector, falling back
    to the analytic lattice parity when the null space is too degenerate to
    read (only relevant for near-zero coupling).
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    if gamma < 0.0:
        raise ValueError("gamma must be >= 0")
    seeds = _seed_list(count)
    if gamma == 0.0:
        return [_lattice_level(i, *seeds[i]) for i in range(count)]
    if math.isinf(gamma):
        return hardcore_levels(count)

    levels: list[SpectralLevel] = []
    seen: set = set()
    special_done: set = set()
    for n1, n2 in seeds:
        cls = _triple_class(n1, n2)
        if cls is not None and cls not in special_done:
            special_done.add(cls)
            head = cls[0]
            k = np.array([head[0] * math.pi, head[1] * math.pi])
            root = BetheRoot(float(k[0]), float(k[1]), COT_BRANCH, gamma, 0.0)
            kp, kpp = orbit_partners(k)
            levels.append(
                SpectralLevel(
                    index=-1,
                    energy=energy(k),
                    parity=1,
                    quantum_numbers=head,
                    root=root,
                    orbit=(root.momentum(), kp, kpp),
                    interaction_independent=True,
                )
            )
        for root in _continue_all(n1, n2, gamma, opts=opts):
            key = (root.branch, round(root.k1 / math.pi, 8), round(root.k2 / math.pi, 8))
            if key in seen:
                continue
            seen.add(key)
            k = np.array([root.k1, root.k2])
            parity = _parity_from_nullvector(k, gamma)
            if parity is None:
                parity = 1 if (n1 + n2) % 2 == 0 else -1
            kp, kpp = orbit_partners(k)
            levels.append(
                SpectralLevel(
                    index=-1,
                    energy=root.energy,
                    parity=parity,
                    quantum_numbers=(n1, n2),
                    root=root,
                    orbit=(root.momentum(), kp, kpp),
                )
            )
    levels.sort(key=lambda lv: (lv.energy, -lv.parity))
    out = []
    for i, lv in enumerate(levels[:count]):
        out.append(
            SpectralLevel(
                index=i,
                energy=lv.energy,
                parity=lv.parity,
                quantum_numbers=lv.quantum_numbers,
                root=lv.root,
                orbit=lv.orbit,
                interaction_independent=lv.interaction_independent,
            )
        )
    return out


def _hardcore_label_valid(l1: int, l2: int) -> bool:
    # k = (l1 pi, l2 pi/3); all orbit partners must stay on the lattice with
    # nonzero components and cot arguments off the poles
    return (
        l1 >= 1
        and l2 >= 1
        and (l1 + l2) % 2 == 0
        and l2 % 3 != 0
        and l1 != l2
        and l2 != 3 * l1
    )


def hardcore_levels(count: int) -> list[SpectralLevel]:
    """Exact levels at infinite repulsion, one even/odd pair per orbit.

    Quasimomenta quantize to k1 = l1 pi, k2 = l2 pi/3; a candidate survives
    only when its whole group orbit satisfies the limit equations, which
    excludes the labels l1 = l2, l2 = 3 l1, and l2 divisible by 3.  Each
    surviving orbit carries a degenerate parity doublet.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    n_orbits = (count + 1) // 2 + 4
    lmax = 4
    orbits: dict = {}
    while True:
        orbits.clear()
        for l1 in range(1, lmax + 1):
            for l2 in range(1, 3 * lmax + 1):
                if not _hardcore_label_valid(l1, l2):
                    continue
                k = np.array([l1 * math.pi, l2 * math.pi / 3.0])
                rep = canonical_momentum(k)
                key = (round(rep[0] / math.pi, 9), round(rep[1] / math.pi, 9))
                if key not in orbits:
                    orbits[key] = rep
        if len(orbits) >= n_orbits:
            # energy-complete up to the lmax boundary shell
            ordered = sorted(orbits.values(), key=energy)
            if energy(ordered[n_orbits - 1]) < (lmax**2) * math.pi**2 / 8.0:
                break
        lmax += 2
    ordered = sorted(orbits.values(), key=energy)
    levels = []
    for rep in ordered:
        for parity, branch in ((1, COT_BRANCH), (-1, TAN_BRANCH)):
            res = hardcore_residual(branch, float(rep[0]), float(rep[1]))
            root = BetheRoot(
                float(rep[0]), float(rep[1]), branch, math.inf, float(np.abs(res).max())
            )
            kp, kpp = orbit_partners(rep)
            levels.append(
                SpectralLevel(
                    index=len(levels),
                    energy=energy(rep),
                    parity=parity,
                    quantum_numbers=None,
                    root=root,
                    orbit=(root.momentum(), kp, kpp),
                )
            )
            if len(levels) == count:
                return levels
    return levels


def constraint_rank_probe(
    eta: float,
    gamma: float = 1.0,
    k_window: tuple[float, float] = (0.0, 6.0 * math.pi),
    n_samples: int = 240,
    grid: int = 96,
    n_polish: int = 30,
    rank_tol: float = 1e-8,
    root_tol: float = 1e-8,
    seed: int = 7,
) -> ProbeReport:
    """Count independent amplitude conditions and scan for common roots.

    Each scatter pair contributes one 4x4 determinant condition on (k1, k2).
    The number of linearly independent condition functions is the numerical
    rank of their values sampled across the window.  A mass ratio is solvable
    when the conditions share zeros: the scan minimizes the largest
    normalized determinant over the window (grid plus Gauss-Newton polish),
    skipping momenta with degenerate orbits where all determinants vanish for
    trivial reasons.
    """
    cls = nonergodicity_classify(eta)
    if cls is None:
        raise ValueError(f"eta={eta} is not a nonergodicity point; probe undefined")
    group = cached_group(eta)
    pairs = coefficients.scatter_pairs(group)
    lo, hi = k_window

    rng = np.random.default_rng(seed)
    samples = rng.uniform(max(lo, 0.05) + 0.25, hi, size=(n_samples, 2))
    det_matrix = np.array(
        [coefficients.pair_determinants(group, kv, gamma) for kv in samples]
    )
    sv = np.linalg.svd(det_matrix, compute_uv=False)
    n_independent = int((sv > rank_tol * sv[0]).sum())

    def degenerate(kv: np.ndarray) -> bool:
        images = coefficients.momenta_after(group, kv)
        scale = 1.0 + float(np.abs(images).max())
        if np.abs(images).min() < 1e-3 * scale:
            return True
        diff = np.abs(images[:, None, :] - images[None, :, :]).max(axis=2)
        diff += np.eye(len(images)) * 1e9
        return bool(diff.min() < 1e-3 * scale)

    axis = np.linspace(lo, hi, grid + 1)[1:]
    cand = []
    for k1 in axis:
        for k2 in axis:
            kv = np.array([k1, k2])
            if degenerate(kv):
                continue
            r = float(np.abs(coefficients.pair_determinants(group, kv, gamma)).max())
            cand.append((r, k1, k2))
    cand.sort()
    best_res, best_k1, best_k2 = cand[0]

    def stacked(kv: np.ndarray) -> np.ndarray:
        d = coefficients.pair_determinants(group, kv, gamma)
        return np.concatenate([d.real, d.imag])

    for r0, k1, k2 in cand[:n_polish]:
        kv = np.array([k1, k2])
        for _ in range(40):
            f = stacked(kv)
            jac = np.empty((f.size, 2))
            h = 1e-7
            for i in range(2):
                e = np.zeros(2)
                e[i] = h
                jac[:, i] = (stacked(kv + e) - stacked(kv - e)) / (2.0 * h)
            dk, *_ = np.linalg.lstsq(jac, -f, rcond=None)
            kv_new = kv + dk
            if not (lo < kv_new[0] <= hi and lo < kv_new[1] <= hi) or degenerate(kv_new):
                break
            kv = kv_new
            if np.abs(dk).max() < 1e-12:
                break
        r = float(np.abs(coefficients.pair_determinants(group, kv, gamma)).max())
        if r < best_res:
            best_res, best_k1, best_k2 = r, float(kv[0]), float(kv[1])

    solvable = best_res < root_tol
    verdict = "solvable" if solvable else "overdetermined"
    return ProbeReport(
        eta=eta,
        l=cls.l,
        n=cls.n,
        group=cls.group_name,
        gamma=gamma,
        n_conditions=len(pairs),
        n_independent=n_independent,
        solvable=solvable,
        min_residual=best_res,
        argmin=(best_k1, best_k2),
        message=f"{verdict}: {n_independent} independent conditions",
    )
