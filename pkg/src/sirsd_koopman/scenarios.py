"""Disease presets and the simulate -> lift -> fit -> predict pipeline.

Each preset carries the published parameter quadruple for one disease,
the shared initial condition (a 10% infectious seed, nobody recovered or
deceased), and the default horizon. A pipeline run produces the ground
truth, a fitted operator and free-run prediction per dictionary, and a
report of errors, spectra, and negativity flags, all exported as CSV and
JSON artifacts.

Artifact writes go through a temp-file-and-rename so concurrent runs
never observe half-written files.
"""

from __future__ import annotations

import os
import tempfile
import warnings
from dataclasses import dataclass, replace

import numpy as np

from .edmd import (
    DEFAULT_SVD_TOL,
    ErrorStats,
    KoopmanModel,
    build_snapshots,
    fit_edmd,
    model_json_text,
    predict,
    reconstruction_error,
)
from .errors import UnknownPresetError
from .jsonfmt import dumps
from .model import EpidemicParams, StateVec
from .nsfd import NsfdConfig, Trajectory, simulate_nsfd
from .observables import dictionary_d1, dictionary_d2, lift_trajectory

#: A compartment is flagged as unphysical when a predicted value drops
#: below this level; tiny round-off excursions above it do not count.
NEGATIVITY_TOL = -1e-9

_COMPARTMENTS = ("s", "i", "r", "d")

#: Published plausible ranges per disease, used for override warnings.
PUBLISHED_RANGES = {
    "covid": {"beta": (0.3, 0.6), "gamma": (0.07, 0.1), "mu": (0.005, 0.01), "omega": (0.0, 0.02)},
    "influenza": {"beta": (0.4, 0.8), "gamma": (0.2, 0.33), "mu": (0.0001, 0.001), "omega": (0.1, 0.3)},
    "ebola": {"beta": (0.18, 0.25), "gamma": (0.086, 0.1), "mu": (0.35, 0.5), "omega": (0.0, 0.0)},
    "measles": {"beta": (1.5, 3.5), "gamma": (0.1, 0.14), "mu": (0.0001, 0.002), "omega": (0.0, 0.0)},
}


@dataclass(frozen=True)
class ScenarioPreset:
    """One named experiment: disease rates plus sampling defaults."""

    name: str
    params: EpidemicParams
    i0: float = 0.1
    dt: float = 0.1
    t_end: float = 200.0
    long_t_end: float | None = None

    @property
    def initial(self) -> StateVec:
        return StateVec(s=1.0 - self.i0, i=self.i0, r=0.0, d=0.0)

    def nsfd_config(self, eta: float = 0.0, t_end: float | None = None) -> NsfdConfig:
        return NsfdConfig(
            dt=self.dt,
            t_end=self.t_end if t_end is None else t_end,
            initial=self.initial,
            eta=eta,
        )


_PRESETS = {
    "covid": ScenarioPreset(
        name="covid",
        params=EpidemicParams(beta=0.5, gamma=0.08, mu=0.01, omega=0.005),
    ),
    "influenza": ScenarioPreset(
        name="influenza",
        params=EpidemicParams(beta=0.4, gamma=0.2, mu=0.001, omega=0.15),
    ),
    "ebola": ScenarioPreset(
        name="ebola",
        params=EpidemicParams(beta=0.25, gamma=0.1, mu=0.35, omega=0.0),
    ),
    "measles": ScenarioPreset(
        name="measles",
        params=EpidemicParams(beta=1.5, gamma=0.12, mu=0.001, omega=0.0),
        long_t_end=500.0,
    ),
}

PRESET_NAMES = tuple(_PRESETS)


def preset(name: str) -> ScenarioPreset:
    """Look up a preset by name.

    Raises:
        UnknownPresetError: For anything outside the four diseases.
    """
    try:
        return _PRESETS[name]
    except KeyError:
        raise UnknownPresetError(
            f"unknown preset {name!r}; choose from {', '.join(PRESET_NAMES)}"
        ) from None


def apply_overrides(base: ScenarioPreset, **overrides) -> ScenarioPreset:
    """Return a preset with selected fields replaced.

    Rate overrides (beta, gamma, mu, omega) that fall outside the
    published range for the disease emit a warning naming the range but
    are still applied. Sampling overrides (i0, dt, t_end) are taken as
    given.
    """
    overrides = {k: v for k, v in overrides.items() if v is not None}
    rate_keys = {"beta", "gamma", "mu", "omega"}
    rates = {k: v for k, v in overrides.items() if k in rate_keys}
    other = {k: v for k, v in overrides.items() if k not in rate_keys}
    ranges = PUBLISHED_RANGES.get(base.name, {})
    for key, value in rates.items():
        lo, hi = ranges.get(key, (None, None))
        if lo is not None and not lo <= value <= hi:
            warnings.warn(
                f"{key}={value:g} is outside the {base.name} range [{lo:g}, {hi:g}]",
                stacklevel=2,
            )
    params = base.params
    if rates:
        params = replace(params, **rates)
    return replace(base, params=params, **other)


@dataclass(frozen=True)
class RunReport:
    """Summary of one preset-dictionary validation run."""

    preset: str
    dictionary: str
    errors: ErrorStats
    residual: float
    eigenvalues: list
    negativity: dict
    windows: dict | None = None

    def as_dict(self) -> dict:
        doc = {
            "preset": self.preset,
            "dictionary": self.dictionary,
            "rmse": dict(self.errors.rmse),
            "rmse_total": self.errors.rmse_total,
            "max_abs_error": self.errors.max_abs_error,
            "max_abs_error_time": self.errors.max_abs_error_time,
            "residual": self.residual,
            "eigenvalues": self.eigenvalues,
            "negativity": dict(self.negativity),
        }
        if self.windows is not None:
            doc["windows"] = dict(self.windows)
        return doc


def _atomic_write(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def trajectory_csv_text(traj: Trajectory) -> str:
    """CSV with header t,s,i,r,d and 17-significant-digit values."""
    lines = ["t,s,i,r,d"]
    times = traj.times
    for k in range(len(traj)):
        row = traj.states[k]
        lines.append(
            f"{times[k]:.17g},{row[0]:.17g},{row[1]:.17g},{row[2]:.17g},{row[3]:.17g}"
        )
    return "\n".join(lines) + "\n"


def write_trajectory_csv(path: str, traj: Trajectory) -> None:
    _atomic_write(path, trajectory_csv_text(traj))


def _eigenvalue_summary(model: KoopmanModel) -> list:
    out = []
    for lam in model.eigenvalues:
        out.append(
            {
                "re": float(lam.real),
                "im": float(lam.imag),
                "magnitude": float(abs(lam)),
            }
        )
    return out


def _negativity_flags(pred: Trajectory) -> dict:
    mins = pred.states.min(axis=0)
    return {name: bool(mins[j] < NEGATIVITY_TOL) for j, name in enumerate(_COMPARTMENTS)}


def _windowed_max_errors(truth: Trajectory, pred: Trajectory, windows) -> dict:
    t = truth.times
    err = np.max(np.abs(pred.states - truth.states), axis=1)
    out = {}
    for lo, hi in windows:
        mask = (t >= lo) & (t <= hi)
        out[f"max_abs_error_{lo:g}_{hi:g}"] = float(err[mask].max())
    return out


_DICTIONARIES = {"d1": dictionary_d1, "d2": dictionary_d2}


def _validate_one(
    scenario: ScenarioPreset,
    dict_name: str,
    truth: Trajectory,
    svd_tol: float,
    windows=None,
):
    dictionary = _DICTIONARIES[dict_name]()
    lifted = lift_trajectory(truth, dictionary)
    snap = build_snapshots(lifted, dt=truth.dt)
    model = fit_edmd(snap, svd_tol=svd_tol)
    pred = predict(model, scenario.initial, dictionary, steps=len(truth) - 1)
    report = RunReport(
        preset=scenario.name,
        dictionary=dict_name,
        errors=reconstruction_error(truth, pred),
        residual=model.residual,
        eigenvalues=_eigenvalue_summary(model),
        negativity=_negativity_flags(pred),
        windows=_windowed_max_errors(truth, pred, windows) if windows else None,
    )
    return model, dictionary, pred, report


def run_pipeline(
    scenario: ScenarioPreset,
    dictionaries=("d1", "d2"),
    out_dir: str | None = None,
    svd_tol: float = DEFAULT_SVD_TOL,
    eta: float = 0.0,
    file_prefix: str | None = None,
) -> list:
    """Simulate ground truth, fit the selected dictionaries, free-run
    predictions over the same horizon, and export artifacts.

    Args:
        scenario: Preset (possibly with overrides applied).
        dictionaries: Subset of ("d1", "d2") to fit.
        out_dir: Artifact directory; nothing is written when None.
        svd_tol: Relative truncation threshold for the fits.
        eta: Denominator-function rate for the ground-truth scheme.
        file_prefix: Artifact basename; defaults to the preset name.

    Returns:
        One RunReport per fitted dictionary.
    """
    unknown = set(dictionaries) - set(_DICTIONARIES)
    if unknown:
        raise ValueError(f"unknown dictionaries: {sorted(unknown)}")
    truth = simulate_nsfd(scenario.nsfd_config(eta=eta), scenario.params)
    prefix = scenario.name if file_prefix is None else file_prefix
    reports = []
    report_docs = []
    for dict_name in dictionaries:
        model, dictionary, pred, report = _validate_one(
            scenario, dict_name, truth, svd_tol
        )
        reports.append(report)
        report_docs.append(report.as_dict())
        if out_dir is not None:
            write_trajectory_csv(
                os.path.join(out_dir, f"{prefix}_koopman_{dict_name}.csv"), pred
            )
            _atomic_write(
                os.path.join(out_dir, f"{prefix}_model_{dict_name}.json"),
                model_json_text(model, dictionary.labels),
            )
    if out_dir is not None:
        write_trajectory_csv(os.path.join(out_dir, f"{prefix}_nsfd.csv"), truth)
        _atomic_write(
            os.path.join(out_dir, f"{prefix}_report.json"),
            dumps({"preset": scenario.name, "reports": report_docs}) + "\n",
        )
    return reports


#: Windows over which the long-horizon run reports worst-case errors.
LONG_MEASLES_WINDOWS = ((150.0, 250.0), (350.0, 500.0))


def run_long_measles(
    out_dir: str | None = None,
    svd_tol: float = DEFAULT_SVD_TOL,
    eta: float = 0.0,
) -> RunReport:
    """Extended-horizon measles run with the extended dictionary.

    Trains on the full 500-time-unit trajectory, free-runs over the same
    horizon, and reports worst-case errors on the mid and late windows.
    """
    scenario = preset("measles")
    truth = simulate_nsfd(
        scenario.nsfd_config(eta=eta, t_end=scenario.long_t_end), scenario.params
    )
    model, dictionary, pred, report = _validate_one(
        scenario, "d2", truth, svd_tol, windows=LONG_MEASLES_WINDOWS
    )
    if out_dir is not None:
        write_trajectory_csv(os.path.join(out_dir, "measles_long_nsfd.csv"), truth)
        write_trajectory_csv(os.path.join(out_dir, "measles_long_koopman_d2.csv"), pred)
        _atomic_write(
            os.path.join(out_dir, "measles_long_model_d2.json"),
            model_json_text(model, dictionary.labels),
        )
        _atomic_write(
            os.path.join(out_dir, "measles_long_report.json"),
            dumps({"preset": "measles_long", "reports": [report.as_dict()]}) + "\n",
        )
    return report


def run_all(out_dir: str, svd_tol: float = DEFAULT_SVD_TOL, eta: float = 0.0) -> dict:
    """Validate every preset with both dictionaries, then the long run.

    Returns:
        Mapping of preset name (plus "measles_long") to its reports.
    """
    results = {}
    for name in PRESET_NAMES:
        results[name] = run_pipeline(
            preset(name), out_dir=out_dir, svd_tol=svd_tol, eta=eta
        )
    results["measles_long"] = [run_long_measles(out_dir=out_dir, svd_tol=svd_tol, eta=eta)]
    return results
