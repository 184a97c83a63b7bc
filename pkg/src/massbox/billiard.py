"""Event-driven simulation of two hard-core particles in the box [-1/2, 1/2].

Between events both particles fly freely, so event times are roots of linear
equations and there is no integration drift.  Particle 2 stays to the left of
particle 1; a contact never swaps the ordering, it exchanges momenta through
the scattering matrix.  Wall bounces flip one momentum sign.  For nonergodic
mass ratios the momentum sequence visits at most 4n distinct vectors.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .dihedral import MomentumVector, scattering_matrix
from .params import mass_heavy, mass_light

PAIR_SCATTER = "pair_scatter"
LEFT_WALL_P2 = "left_wall_p2"
RIGHT_WALL_P1 = "right_wall_p1"

_TIE_BREAK = 1e-12


class StuckStateError(RuntimeError):
    """Both momenta vanish; no further event can occur."""


@dataclass
class BilliardState:
    """Positions, momenta and elapsed time of the two-particle billiard."""

    x1: float
    x2: float
    k1: float
    k2: float
    eta: float
    t: float = 0.0
    scatter: np.ndarray = field(init=False, repr=False)

    def __post_init__(self) -> None:
        if not (-0.5 <= self.x2 <= self.x1 <= 0.5):
            raise ValueError(
                f"need -1/2 <= x2 <= x1 <= 1/2, got x1={self.x1}, x2={self.x2}"
            )
        self.scatter = scattering_matrix(self.eta)

    @property
    def m1(self) -> float:
        return mass_heavy(self.eta)

    @property
    def m2(self) -> float:
        return mass_light(self.eta)

    @property
    def v1(self) -> float:
        return self.k1 / self.m1

    @property
    def v2(self) -> float:
        return self.k2 / self.m2

    def energy(self) -> float:
        return 0.5 * self.k1**2 / self.m1 + 0.5 * self.k2**2 / self.m2

    def momentum(self) -> MomentumVector:
        return MomentumVector(self.k1, self.k2)


@dataclass(frozen=True)
class CollisionEvent:
    """Next event: its kind, the time from now, and the outgoing momenta."""

    kind: str
    time: float
    post_momenta: MomentumVector


def next_event(state: BilliardState) -> CollisionEvent:
    """Earliest of: particle 1 on the right wall, particle 2 on the left wall,
    or pair contact x1 = x2.

    Simultaneous wall/pair contacts (within 1e-12) resolve wall-first.
    """
    if state.k1 == 0.0 and state.k2 == 0.0:
        raise StuckStateError("both momenta are zero")
    v1, v2 = state.v1, state.v2
    t_right = (0.5 - state.x1) / v1 if v1 > 0.0 else np.inf
    t_left = (-0.5 - state.x2) / v2 if v2 < 0.0 else np.inf
    t_pair = (state.x1 - state.x2) / (v2 - v1) if v2 > v1 else np.inf
    t_wall = min(t_right, t_left)
    if not np.isfinite(min(t_wall, t_pair)):
        raise StuckStateError("no future event; state is frozen")
    if t_pair < t_wall - _TIE_BREAK:
        post = state.scatter @ np.array([state.k1, state.k2])
        return CollisionEvent(PAIR_SCATTER, t_pair, MomentumVector(post[0], post[1]))
    if t_right <= t_left:
        return CollisionEvent(RIGHT_WALL_P1, t_right, MomentumVector(-state.k1, state.k2))
    return CollisionEvent(LEFT_WALL_P2, t_left, MomentumVector(state.k1, -state.k2))


def _advance(state: BilliardState, event: CollisionEvent) -> None:
    dt = event.time
    state.x1 = min(0.5, max(-0.5, state.x1 + state.v1 * dt))
    state.x2 = min(0.5, max(-0.5, state.x2 + state.v2 * dt))
    if state.x2 > state.x1:
        mid = 0.5 * (state.x1 + state.x2)
        state.x1 = state.x2 = mid
    state.k1 = event.post_momenta.k1
    state.k2 = event.post_momenta.k2
    state.t += dt


def simulate(initial: BilliardState, n_events: int) -> list[MomentumVector]:
    """Momentum vector after each of n_events collisions.

    Aborts with a diagnostic if an event time turns non-finite or the total
    energy drifts by more than 1e-9 relative.
    """
    if n_events < 1:
        raise ValueError("n_events must be >= 1")
    e0 = initial.energy()
    out = []
    for i in range(n_events):
        ev = next_event(initial)
        if not np.isfinite(ev.time) or ev.time < 0.0:
            raise RuntimeError(f"non-finite event time at event {i}: {ev}")
        _advance(initial, ev)
        out.append(initial.momentum())
    if abs(initial.energy() - e0) > 1e-9 * max(1.0, e0):
        raise RuntimeError("energy conservation violated during simulation")
    return out


def trajectory(initial: BilliardState, n_events: int) -> list[tuple[int, float, float, float]]:
    """(collision_index, t, k1, k2) rows for export."""
    rows = []
    for i in range(n_events):
        ev = next_event(initial)
        _advance(initial, ev)
        rows.append((i, initial.t, initial.k1, initial.k2))
    return rows


def momentum_walk(
    k: MomentumVector, eta: float, n_steps: int, kind: str = "s_sigma"
) -> list[MomentumVector]:
    """Structured scattering-reflection word iteration.

    Applies the composite map s*sigma_z (or sigma_z*s) repeatedly, the
    trajectory type in which every scattering-reflection pair produces a new
    momentum vector.  For nonergodic mass ratios the walk closes after at
    most 2n steps; otherwise it fills the energy circle densely.  The
    position-resolved simulation revisits directions far more often than
    this idealized walk (its inter-scatter words reverse the accumulated
    rotation at every double-bounce), so non-closure counts should be
    measured here.
    """
    w = scattering_matrix(eta) @ np.diag([1.0, -1.0])
    if kind == "sigma_s":
        w = np.diag([1.0, -1.0]) @ scattering_matrix(eta)
    elif kind != "s_sigma":
        raise ValueError(f"unknown walk kind {kind!r}")
    v = np.array([k.k1, k.k2])
    out = []
    for _ in range(n_steps):
        v = w @ v
        out.append(MomentumVector(float(v[0]), float(v[1])))
    return out


def distinct_momentum_count(seq: list[MomentumVector], tol: float = 1e-8) -> int:
    """Number of tolerance-distinct momentum vectors in a sequence.

    Two-level sweep: sort by k1 and split into bands at gaps wider than tol,
    then count k2 runs inside each band.  Intended for sequences whose
    clusters are either much tighter or much wider than tol, which holds both
    for closed orbits and for ergodic wandering.
    """
    if not seq:
        raise ValueError("sequence must be non-empty")
    arr = np.array([[m.k1, m.k2] for m in seq])
    arr = arr[np.argsort(arr[:, 0], kind="stable")]
    count = 0
    start = 0
    n = len(arr)
    while start < n:
        stop = start + 1
        while stop < n and arr[stop, 0] - arr[stop - 1, 0] <= tol:
            stop += 1
        k2s = np.sort(arr[start:stop, 1])
        count += 1 + int((np.diff(k2s) > tol).sum())
        start = stop
    return count
