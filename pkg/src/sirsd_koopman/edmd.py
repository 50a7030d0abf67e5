"""Snapshot assembly, least-squares operator fitting, spectra, and
free-run prediction.

From a lifted trajectory y_0 .. y_M the snapshot matrices take columns
Y = (y_0 .. y_{M-1}) and Yp = (y_1 .. y_M). The fitted operator is the
Frobenius-norm minimizer of ||Yp - K Y||, i.e. K = Yp pinv(Y), with
singular values below a relative threshold treated as zero.

Prediction iterates y <- K y from the lifted initial state and reads the
(s, i, r, d) components back out of the linear block. No clamping or
renormalization is applied, so unphysical negative readbacks are
preserved rather than hidden; ``clamp_nonnegative`` is available as an
explicit post-processing step.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import ConvergenceError, DimensionError, SpectrumError
from .jsonfmt import dumps
from .model import StateVec
from .nsfd import Trajectory
from .observables import Dictionary, lift

#: Default relative singular-value truncation threshold.
DEFAULT_SVD_TOL = 1e-10

#: A free-run entry beyond this magnitude counts as divergence.
FREE_RUN_LIMIT = 1e12

_COMPARTMENTS = ("s", "i", "r", "d")


@dataclass(frozen=True)
class SnapshotMatrices:
    """Paired data matrices; column j of Yp is the successor of column j
    of Y."""

    Y: np.ndarray
    Yp: np.ndarray
    dictionary: str
    dt: float

    def __post_init__(self):
        if self.Y.shape != self.Yp.shape:
            raise DimensionError(
                f"Y and Yp must share a shape, got {self.Y.shape} vs {self.Yp.shape}"
            )


@dataclass(frozen=True)
class KoopmanModel:
    """Fitted operator with its spectral decomposition.

    Attributes:
        K: N x N operator matrix.
        dictionary: Name of the dictionary the data were lifted with.
        dt: Sampling step of the training data.
        svd_tol: Relative truncation threshold used in the fit.
        eigenvalues: Complex eigenvalues, sorted by magnitude descending
            with conjugate pairs adjacent.
        modes: Complex matrix whose column j is the eigenvector of
            eigenvalues[j].
        residual: Frobenius norm of Yp - K Y on the training data.
        rank: Number of singular values kept in the fit.
    """

    K: np.ndarray
    dictionary: str
    dt: float
    svd_tol: float
    eigenvalues: np.ndarray | None = None
    modes: np.ndarray | None = None
    residual: float = 0.0
    rank: int | None = None

    @property
    def size(self) -> int:
        return self.K.shape[0]


def build_snapshots(lifted: list, dt: float) -> SnapshotMatrices:
    """Assemble snapshot matrices from a lifted trajectory.

    Args:
        lifted: At least two LiftedVec from a single dictionary.
        dt: Sampling step between consecutive entries.

    Raises:
        DimensionError: On fewer than two snapshots, mixed dictionaries,
            or inconsistent lengths.
    """
    if len(lifted) < 2:
        raise DimensionError("need at least two snapshots to form a pair")
    names = {vec.dictionary for vec in lifted}
    if len(names) != 1:
        raise DimensionError(f"snapshots mix dictionaries: {sorted(names)}")
    sizes = {vec.values.shape[0] for vec in lifted}
    if len(sizes) != 1:
        raise DimensionError(f"snapshots mix vector lengths: {sorted(sizes)}")
    data = np.column_stack([vec.values for vec in lifted])
    return SnapshotMatrices(Y=data[:, :-1], Yp=data[:, 1:], dictionary=names.pop(), dt=dt)


def _truncated_svd(A: np.ndarray, svd_tol: float):
    try:
        U, sig, Vt = np.linalg.svd(A, full_matrices=False)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceError(f"singular value decomposition failed: {exc}") from exc
    if sig.size == 0 or sig[0] == 0.0:
        rank = 0
    else:
        rank = int(np.count_nonzero(sig > svd_tol * sig[0]))
    return U, sig, Vt, rank


def pseudoinverse(A: np.ndarray, svd_tol: float = DEFAULT_SVD_TOL) -> np.ndarray:
    """Moore-Penrose pseudoinverse with relative truncation.

    Singular values below ``svd_tol`` times the largest are treated as
    zero. The result satisfies the four Penrose identities on the kept
    subspace.

    Raises:
        ConvergenceError: If the decomposition fails.
    """
    A = np.asarray(A, dtype=float)
    U, sig, Vt, rank = _truncated_svd(A, svd_tol)
    if rank == 0:
        return np.zeros((A.shape[1], A.shape[0]))
    return (Vt[:rank].T / sig[:rank]) @ U[:, :rank].T


def fit_edmd(snap: SnapshotMatrices, svd_tol: float = DEFAULT_SVD_TOL) -> KoopmanModel:
    """Fit the least-squares operator K = Yp pinv(Y).

    Returns:
        KoopmanModel with residual, spectrum, and kept rank recorded.

    Raises:
        ConvergenceError: If a decomposition fails.
    """
    Y, Yp = snap.Y, snap.Yp
    if Y.shape[1] < 1:
        raise DimensionError("need at least one snapshot pair")
    U, sig, Vt, rank = _truncated_svd(Y, svd_tol)
    if rank == 0:
        K = np.zeros((Y.shape[0], Y.shape[0]))
    else:
        # Contract Yp against the right singular vectors before dividing
        # by the singular values: the columns of Yp @ Vt[:rank].T scale
        # like the corresponding singular values, so the division stays
        # well-conditioned even when Y is nearly rank-deficient. Forming
        # pinv(Y) explicitly and multiplying loses that cancellation.
        G = Yp @ Vt[:rank].T
        K = (G / sig[:rank]) @ U[:, :rank].T
    residual = float(np.linalg.norm(Yp - K @ Y, "fro"))
    try:
        eigenvalues, modes = np.linalg.eig(K)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceError(f"eigendecomposition failed: {exc}") from exc
    order = np.lexsort((-eigenvalues.imag, -eigenvalues.real, -np.abs(eigenvalues)))
    return KoopmanModel(
        K=K,
        dictionary=snap.dictionary,
        dt=snap.dt,
        svd_tol=svd_tol,
        eigenvalues=eigenvalues[order],
        modes=modes[:, order],
        residual=residual,
        rank=rank,
    )


class SpectralPair(NamedTuple):
    eigenvalue: complex
    continuous_rate: complex
    mode: np.ndarray


def spectrum(model: KoopmanModel) -> list:
    """Eigenvalues with continuous-time rates log(lambda)/dt.

    Rates use the principal log branch; a zero eigenvalue gets a rate of
    -infinity. Entries are sorted by eigenvalue magnitude descending with
    conjugate pairs adjacent.

    Raises:
        SpectrumError: If the model carries no eigendecomposition.
    """
    if model.eigenvalues is None or model.modes is None:
        raise SpectrumError("model carries no spectral data; fit it first")
    pairs = []
    for j, lam in enumerate(model.eigenvalues):
        if lam == 0:
            rate = complex(float("-inf"), 0.0)
        else:
            rate = complex(np.log(complex(lam)) / model.dt)
        pairs.append(SpectralPair(complex(lam), rate, model.modes[:, j]))
    return pairs


def free_run(K: np.ndarray, y0: np.ndarray, steps: int, limit: float = FREE_RUN_LIMIT) -> np.ndarray:
    """Iterate y <- K y for ``steps`` steps; row k of the result is y_k.

    Raises:
        OverflowError: When any entry magnitude exceeds ``limit``,
            reporting the step.
    """
    y = np.asarray(y0, dtype=float).copy()
    out = np.empty((steps + 1, y.shape[0]))
    out[0] = y
    for k in range(1, steps + 1):
        y = K @ y
        if np.max(np.abs(y)) > limit:
            raise OverflowError(f"free run diverged at step {k}")
        out[k] = y
    return out


def predict(model: KoopmanModel, x0: StateVec, dictionary: Dictionary, steps: int) -> Trajectory:
    """Multi-step free-run prediction with state readback.

    The initial state is lifted once; afterwards the linear iteration
    runs purely in observable space and the states are read from the
    linear-block entries. Readbacks are not clamped to the simplex.

    Raises:
        DimensionError: If the dictionary does not match the model.
        OverflowError: If the free run diverges, reporting the step.
    """
    if dictionary.name != model.dictionary:
        raise DimensionError(
            f"model was fitted with {model.dictionary!r}, got {dictionary.name!r}"
        )
    if dictionary.size != model.size:
        raise DimensionError(
            f"dictionary has {dictionary.size} observables, model expects {model.size}"
        )
    lifted = free_run(model.K, lift(x0, dictionary).values, steps)
    states = lifted[:, list(dictionary.linear_block)]
    return Trajectory(t0=0.0, dt=model.dt, states=states)


@dataclass(frozen=True)
class ErrorStats:
    """Per-compartment and aggregate deviation between two trajectories."""

    rmse: dict
    rmse_total: float
    max_abs_error: float
    max_abs_error_time: float


def reconstruction_error(truth: Trajectory, pred: Trajectory) -> ErrorStats:
    """Root-mean-square and worst-case errors of a prediction.

    The total is the quadratic mean of the four per-compartment RMSE
    values, which equals the global RMSE over all entries.

    Raises:
        DimensionError: On length or sampling-step mismatch.
    """
    if len(truth) != len(pred):
        raise DimensionError(f"length mismatch: {len(truth)} vs {len(pred)}")
    if truth.dt != pred.dt:
        raise DimensionError(f"sampling mismatch: dt {truth.dt} vs {pred.dt}")
    diff = pred.states - truth.states
    per = np.sqrt(np.mean(diff**2, axis=0))
    flat = np.argmax(np.abs(diff))
    worst_k = int(flat // 4)
    return ErrorStats(
        rmse={name: float(v) for name, v in zip(_COMPARTMENTS, per)},
        rmse_total=float(np.sqrt(np.mean(per**2))),
        max_abs_error=float(np.max(np.abs(diff))),
        max_abs_error_time=float(truth.times[worst_k]),
    )


def clamp_nonnegative(traj: Trajectory) -> Trajectory:
    """Optional post-processing: floor every component at zero."""
    return Trajectory(t0=traj.t0, dt=traj.dt, states=np.maximum(traj.states, 0.0))


def model_json_text(model: KoopmanModel, labels) -> str:
    """Serialize a fitted model for export.

    Numbers carry 17 significant digits so the matrix round-trips
    exactly through the text form.
    """
    if model.eigenvalues is None:
        raise SpectrumError("model carries no spectral data; fit it first")
    doc = {
        "dictionary": {"name": model.dictionary, "labels": list(labels)},
        "dt": float(model.dt),
        "svd_tol": float(model.svd_tol),
        "K": [float(v) for v in model.K.ravel(order="C")],
        "eigenvalues": [
            {"re": float(lam.real), "im": float(lam.imag)} for lam in model.eigenvalues
        ],
        "residual": float(model.residual),
    }
    return dumps(doc) + "\n"
