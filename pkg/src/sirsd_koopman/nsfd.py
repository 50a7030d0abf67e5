"""Positivity-preserving time stepping for the normalized model.

The production scheme advances the compartments sequentially with a
denominator function phi(dt). Each update divides a nonnegative numerator
by a denominator >= 1, so s, i, r stay nonnegative for any step size, and
the closing update d = 1 - s - i - r keeps the discrete total exactly one.

A classical fixed-step fourth-order integrator over the same vector field
is included purely as an accuracy reference for convergence testing; it
carries none of the structural guarantees above.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, SimplexError
from .model import LIVING_GUARD, EpidemicParams, StateVec, _f, validate_state


def denominator_phi(dt: float, eta: float) -> float:
    """Denominator function phi = (exp(eta*dt) - 1) / eta.

    The eta -> 0 limit is phi = dt, returned exactly when eta == 0.
    Always satisfies phi = dt + O(dt^2).
    """
    if dt <= 0:
        raise ValueError(f"dt must be > 0, got {dt}")
    if eta < 0:
        raise ValueError(f"eta must be >= 0, got {eta}")
    if eta == 0.0:
        return dt
    return math.expm1(eta * dt) / eta


@dataclass(frozen=True)
class NsfdConfig:
    """Configuration of one simulation run.

    Attributes:
        dt: Time step (> 0).
        t_end: Final time (>= dt); the step count is round(t_end / dt).
        initial: Initial state, validated against the simplex invariants.
        eta: Denominator-function rate; 0 selects the phi = dt limit.
        differential_d: Advance d by its own difference update instead of
            the algebraic closure. Exact conservation is then lost; kept
            only for comparison.
    """

    dt: float
    t_end: float
    initial: StateVec
    eta: float = 0.0
    differential_d: bool = False

    def __post_init__(self):
        if not self.dt > 0:
            raise ValueError(f"dt must be > 0, got {self.dt}")
        if not self.t_end >= self.dt:
            raise ValueError(f"t_end must be >= dt, got {self.t_end}")
        if not self.eta >= 0:
            raise ValueError(f"eta must be >= 0, got {self.eta}")
        validate_state(self.initial)

    @property
    def steps(self) -> int:
        return round(self.t_end / self.dt)


@dataclass(frozen=True)
class Trajectory:
    """Uniformly sampled states: row k of ``states`` is (s, i, r, d) at
    time t0 + k*dt."""

    t0: float
    dt: float
    states: np.ndarray

    def __post_init__(self):
        states = np.asarray(self.states, dtype=float)
        if states.ndim != 2 or states.shape[1] != 4:
            raise ValueError(f"states must be (M+1) x 4, got {states.shape}")
        if states.shape[0] < 1:
            raise ValueError("a trajectory needs at least one sample")
        object.__setattr__(self, "states", states)

    def __len__(self) -> int:
        return self.states.shape[0]

    @property
    def times(self) -> np.ndarray:
        return self.t0 + self.dt * np.arange(len(self))

    def state(self, k: int) -> StateVec:
        return StateVec.from_array(self.states[k])

    def validate(self, atol: float = 1e-12) -> "Trajectory":
        """Run every sample through the simplex check."""
        for k in range(len(self)):
            try:
                validate_state(self.state(k), atol=atol)
            except SimplexError as exc:
                raise SimplexError(
                    [f"sample {k}: {violation}" for violation in exc.violations]
                ) from exc
        return self


def _nsfd_update(s, i, r, d, p: EpidemicParams, phi: float, differential_d: bool):
    living = 1.0 - d
    if living <= LIVING_GUARD:
        raise DomainError(f"living fraction 1 - d = {living:g} is below the guard")
    # Sequential updates: each uses the newest available values. The
    # waning inflow uses the current r so the sweep stays explicit.
    s1 = (s + p.omega * r * phi) / (1.0 + p.beta * i * phi / living)
    i1 = (i + p.beta * s1 * i * phi / living) / (1.0 + (p.gamma + p.mu) * phi)
    r1 = (r + p.gamma * i1 * phi) / (1.0 + p.omega * phi)
    if differential_d:
        d1 = d + p.mu * i1 * phi + p.omega * (r1 - r)
    else:
        # 1 - u is exact for u in [1/2, 2], so the closure makes the
        # left-associated sum s + i + r + d round to exactly 1.
        d1 = 1.0 - (s1 + i1 + r1)
    return s1, i1, r1, d1


def nsfd_step(
    x: StateVec,
    p: EpidemicParams,
    phi: float,
    differential_d: bool = False,
) -> StateVec:
    """Advance one step of the positivity-preserving scheme.

    Args:
        x: Current state with d < 1.
        p: Disease rate constants.
        phi: Denominator value, typically denominator_phi(dt, eta).
        differential_d: See NsfdConfig.

    Returns:
        The next state. With the default closure update the components
        sum to one exactly.

    Raises:
        DomainError: If 1 - d underflows the guard.
    """
    return StateVec(*_nsfd_update(x.s, x.i, x.r, x.d, p, phi, differential_d))


def simulate_nsfd(cfg: NsfdConfig, p: EpidemicParams) -> Trajectory:
    """Generate a trajectory with the positivity-preserving scheme.

    Returns:
        Trajectory of cfg.steps + 1 states starting at cfg.initial.

    Raises:
        DomainError: Tagged with the failing step index.
    """
    phi = denominator_phi(cfg.dt, cfg.eta)
    M = cfg.steps
    out = np.empty((M + 1, 4))
    s, i, r, d = cfg.initial.s, cfg.initial.i, cfg.initial.r, cfg.initial.d
    out[0] = (s, i, r, d)
    for k in range(M):
        try:
            s, i, r, d = _nsfd_update(s, i, r, d, p, phi, cfg.differential_d)
        except DomainError as exc:
            raise DomainError(f"step {k}: {exc}") from exc
        out[k + 1] = (s, i, r, d)
    return Trajectory(t0=0.0, dt=cfg.dt, states=out)


def simulate_reference(cfg: NsfdConfig, p: EpidemicParams) -> Trajectory:
    """Classical fourth-order reference integration of the vector field.

    Used as an accuracy oracle at small dt. Unlike the production scheme
    it has no positivity or conservation guarantee and may step outside
    the guard region, which raises.

    Raises:
        DomainError: Tagged with the failing step index.
    """
    dt = cfg.dt
    M = cfg.steps
    out = np.empty((M + 1, 4))
    s, i, r, d = cfg.initial.s, cfg.initial.i, cfg.initial.r, cfg.initial.d
    out[0] = (s, i, r, d)
    half = 0.5 * dt
    sixth = dt / 6.0
    for k in range(M):
        try:
            a1, b1, c1, e1 = _f(s, i, r, d, p)
            a2, b2, c2, e2 = _f(s + half * a1, i + half * b1, r + half * c1, d + half * e1, p)
            a3, b3, c3, e3 = _f(s + half * a2, i + half * b2, r + half * c2, d + half * e2, p)
            a4, b4, c4, e4 = _f(s + dt * a3, i + dt * b3, r + dt * c3, d + dt * e3, p)
        except DomainError as exc:
            raise DomainError(f"step {k}: {exc}") from exc
        s += sixth * (a1 + 2.0 * a2 + 2.0 * a3 + a4)
        i += sixth * (b1 + 2.0 * b2 + 2.0 * b3 + b4)
        r += sixth * (c1 + 2.0 * c2 + 2.0 * c3 + c4)
        d += sixth * (e1 + 2.0 * e2 + 2.0 * e3 + e4)
        out[k + 1] = (s, i, r, d)
    return Trajectory(t0=0.0, dt=dt, states=out)
