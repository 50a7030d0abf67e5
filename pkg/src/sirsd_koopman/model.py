"""Normalized SIRSD state space, parameters, vector field, and Jacobian.

The model tracks proportions s, i, r, d of a constant total population.
Transmission is frequency dependent: new infections scale with
``beta * s * i / (1 - d)``, where ``1 - d`` is the living fraction.
Recovered individuals lose immunity at rate omega and return to the
susceptible pool; deaths accumulate in d at rate ``mu * i``.

Valid states live on the epidemic simplex: components nonnegative,
summing to one, with d strictly below one so the living fraction never
vanishes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, SimplexError

#: Absolute tolerance on the simplex sum constraint s + i + r + d = 1.
SIMPLEX_ATOL = 1e-12

#: States with 1 - d <= LIVING_GUARD are rejected before dividing.
LIVING_GUARD = 1e-12


@dataclass(frozen=True)
class EpidemicParams:
    """Rate constants defining one disease, all in units of 1/time.

    Attributes:
        beta: Transmission rate (> 0).
        gamma: Recovery rate (> 0).
        mu: Disease-induced mortality rate (> 0).
        omega: Immunity-loss rate (>= 0; 0 means permanent immunity).
    """

    beta: float
    gamma: float
    mu: float
    omega: float

    def __post_init__(self):
        if not self.beta > 0:
            raise ValueError(f"beta must be > 0, got {self.beta}")
        if not self.gamma > 0:
            raise ValueError(f"gamma must be > 0, got {self.gamma}")
        if not self.mu > 0:
            raise ValueError(f"mu must be > 0, got {self.mu}")
        if not self.omega >= 0:
            raise ValueError(f"omega must be >= 0, got {self.omega}")


@dataclass(frozen=True)
class StateVec:
    """Compartment proportions (s, i, r, d), each dimensionless."""

    s: float
    i: float
    r: float
    d: float

    def as_array(self) -> np.ndarray:
        return np.array([self.s, self.i, self.r, self.d], dtype=float)

    @classmethod
    def from_array(cls, arr) -> "StateVec":
        s, i, r, d = (float(v) for v in arr)
        return cls(s, i, r, d)


@dataclass(frozen=True)
class DerivVec:
    """Time derivatives of the four proportions, in 1/time."""

    ds: float
    di: float
    dr: float
    dd: float

    def as_array(self) -> np.ndarray:
        return np.array([self.ds, self.di, self.dr, self.dd], dtype=float)


def _check_living(d: float) -> float:
    """Return the living fraction 1 - d, rejecting states too close to d = 1."""
    living = 1.0 - d
    if living <= LIVING_GUARD:
        raise DomainError(f"living fraction 1 - d = {living:g} is below the guard")
    return living


def _f(s: float, i: float, r: float, d: float, p: EpidemicParams):
    """Vector field on raw floats; shared by the integrators.

    The incidence product is computed once so that the components cancel
    exactly when summed.
    """
    living = _check_living(d)
    incidence = p.beta * s * i / living
    waning = p.omega * r
    return (
        -incidence + waning,
        incidence - (p.gamma + p.mu) * i,
        p.gamma * i - waning,
        p.mu * i,
    )


def vector_field(x: StateVec, p: EpidemicParams) -> DerivVec:
    """Evaluate the continuous-time dynamics at a state.

    Args:
        x: State on the simplex with d < 1.
        p: Disease rate constants.

    Returns:
        The four derivatives; they sum to zero (total population is
        conserved).

    Raises:
        DomainError: If 1 - d underflows the division guard.
    """
    return DerivVec(*_f(x.s, x.i, x.r, x.d, p))


def jacobian(x: StateVec, p: EpidemicParams) -> np.ndarray:
    """Analytic 4x4 Jacobian of the vector field at a state.

    Terms in 1/(1-d) and 1/(1-d)^2 come from differentiating the
    frequency-dependent incidence with respect to the compartments and
    to d. Every column sums to zero, mirroring conservation.

    Raises:
        DomainError: If 1 - d underflows the division guard.
    """
    living = _check_living(x.d)
    bi = p.beta * x.i / living
    bs = p.beta * x.s / living
    bsi2 = p.beta * x.s * x.i / living**2
    return np.array(
        [
            [-bi, -bs, p.omega, -bsi2],
            [bi, bs - (p.gamma + p.mu), 0.0, bsi2],
            [0.0, p.gamma, -p.omega, 0.0],
            [0.0, p.mu, 0.0, 0.0],
        ]
    )


def validate_state(x: StateVec, atol: float = SIMPLEX_ATOL) -> StateVec:
    """Check the simplex invariants, returning the state unchanged.

    Args:
        x: Candidate state.
        atol: Absolute tolerance on the sum constraint.

    Returns:
        The same state when all invariants hold.

    Raises:
        SimplexError: Listing every violated invariant.
    """
    violations = []
    for name, value in (("s", x.s), ("i", x.i), ("r", x.r), ("d", x.d)):
        if not np.isfinite(value):
            violations.append(f"{name} = {value} is not finite")
        elif value < 0.0:
            violations.append(f"{name} = {value:g} is negative")
    total = x.s + x.i + x.r + x.d
    if abs(total - 1.0) > atol:
        violations.append(f"components sum to {total!r}, not 1 within {atol:g}")
    if x.d >= 1.0 - LIVING_GUARD:
        violations.append(f"d = {x.d!r} leaves no living population")
    if violations:
        raise SimplexError(violations)
    return x
