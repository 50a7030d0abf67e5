import numpy as np
import pytest


def write_trajectory(path, n=50, t_end=10.0, seed=0):
    """Synthetic but schema-correct trajectory file."""
    rng = np.random.default_rng(seed)
    t = np.linspace(0.0, t_end, n)
    i = 0.1 + 0.4 * np.sin(np.pi * t / t_end) ** 2
    r = np.linspace(0.0, 0.3, n)
    d = np.linspace(0.0, 0.05, n)
    s = 1.0 - i - r - d + 0.0 * rng.random(n)
    rows = ["t,s,i,r,d"]
    for k in range(n):
        rows.append(f"{t[k]:.17g},{s[k]:.17g},{i[k]:.17g},{r[k]:.17g},{d[k]:.17g}")
    path.write_text("\n".join(rows) + "\n")
    return path


@pytest.fixture
def trajectory_csv(tmp_path):
    return write_trajectory(tmp_path / "truth.csv")


@pytest.fixture
def trajectory_pair(tmp_path):
    truth = write_trajectory(tmp_path / "truth.csv")
    pred = write_trajectory(tmp_path / "pred.csv", seed=1)
    return truth, pred
