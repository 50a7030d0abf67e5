"""Observable dictionaries and state lifting.

A dictionary is an ordered list of named scalar functions of the state.
Both built-in dictionaries start with the four identity observables
s, i, r, d; their positions form the linear block used to read states
back out of lifted vectors.

The minimal dictionary adds only the incidence ratio s*i/(1-d). The
extended dictionary adds pairwise products, the incidence ratio, and the
four squares, in that order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DomainError
from .model import LIVING_GUARD, StateVec
from .nsfd import Trajectory

Observable = Callable[[StateVec], float]


@dataclass(frozen=True)
class Dictionary:
    """Ordered set of named observables with a state-readback block.

    Attributes:
        name: Identifier recorded in lifted vectors and fitted models.
        observables: Ordered (label, function) pairs.
        linear_block: Indices of the observables equal to s, i, r, d,
            in that order.
    """

    name: str
    observables: tuple
    linear_block: tuple

    def __post_init__(self):
        labels = [label for label, _ in self.observables]
        if len(set(labels)) != len(labels):
            raise ValueError("observable labels must be unique")
        if len(self.observables) < 4:
            raise ValueError("a dictionary needs at least the four identity observables")
        if len(self.linear_block) != 4:
            raise ValueError("linear_block must index exactly (s, i, r, d)")

    @property
    def size(self) -> int:
        return len(self.observables)

    @property
    def labels(self) -> tuple:
        return tuple(label for label, _ in self.observables)


@dataclass(frozen=True)
class LiftedVec:
    """One state pushed through a dictionary: values[j] = psi_j(x)."""

    values: np.ndarray
    dictionary: str

    def __post_init__(self):
        object.__setattr__(self, "values", np.asarray(self.values, dtype=float))


def _incidence_ratio(x: StateVec) -> float:
    living = 1.0 - x.d
    if living <= LIVING_GUARD:
        raise DomainError(f"living fraction 1 - d = {living:g} is below the guard")
    return x.s * x.i / living


def dictionary_d1() -> Dictionary:
    """Minimal dictionary: the compartments plus the incidence ratio."""
    return Dictionary(
        name="d1",
        observables=(
            ("s", lambda x: x.s),
            ("i", lambda x: x.i),
            ("r", lambda x: x.r),
            ("d", lambda x: x.d),
            ("s*i/(1-d)", _incidence_ratio),
        ),
        linear_block=(0, 1, 2, 3),
    )


def dictionary_d2() -> Dictionary:
    """Extended dictionary: compartments, cross products, incidence
    ratio, and quadratic self-terms."""
    return Dictionary(
        name="d2",
        observables=(
            ("s", lambda x: x.s),
            ("i", lambda x: x.i),
            ("r", lambda x: x.r),
            ("d", lambda x: x.d),
            ("s*i", lambda x: x.s * x.i),
            ("s*r", lambda x: x.s * x.r),
            ("i*r", lambda x: x.i * x.r),
            ("s*i/(1-d)", _incidence_ratio),
            ("s^2", lambda x: x.s * x.s),
            ("i^2", lambda x: x.i * x.i),
            ("r^2", lambda x: x.r * x.r),
            ("d^2", lambda x: x.d * x.d),
        ),
        linear_block=(0, 1, 2, 3),
    )


def lift(x: StateVec, dictionary: Dictionary) -> LiftedVec:
    """Evaluate every observable at one state.

    Raises:
        DomainError: When a rational observable's denominator is below
            the guard, or an observable evaluates to a non-finite value.
    """
    values = np.array([fn(x) for _, fn in dictionary.observables], dtype=float)
    if not np.all(np.isfinite(values)):
        bad = dictionary.labels[int(np.flatnonzero(~np.isfinite(values))[0])]
        raise DomainError(f"observable {bad!r} is not finite at {x}")
    return LiftedVec(values=values, dictionary=dictionary.name)


def lift_trajectory(traj: Trajectory, dictionary: Dictionary) -> list:
    """Lift every sample of a trajectory, preserving order.

    Raises:
        DomainError: Tagged with the failing sample index.
    """
    lifted = []
    for k in range(len(traj)):
        try:
            lifted.append(lift(traj.state(k), dictionary))
        except DomainError as exc:
            raise DomainError(f"sample {k}: {exc}") from exc
    return lifted
