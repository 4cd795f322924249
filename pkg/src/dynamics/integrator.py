"""
Integration of the collective dynamics x' = -Lx.

`exact` evaluates Q e^{-Lambda t} Q^T x(0) from the spectral decomposition, `rk4` is a fixed-step
classical Runge-Kutta scheme and `adaptive` uses scipy's RK45 with tight tolerances.
"""
import csv
import logging
from pathlib import Path
from typing import Optional, Sequence, Union

import numpy as np
from scipy.integrate import solve_ivp

from src.config import DEFAULT_TOLERANCES, Tolerances
from src.exception.dynamics import StepTooLargeError
from src.models.graph import Laplacian
from src.models.subspace import SpectralDecomposition
from src.models.trajectory import IntegrationMethod, Trajectory
from src.spectral.null_space import decompose

logger = logging.getLogger(__name__)

HORIZON_FACTOR = 30.0


def default_horizon(decomposition: SpectralDecomposition) -> float:
    """30 / lambda_2^+, or 1.0 when L = 0."""
    lam = decomposition.smallest_nonzero
    return 1.0 if lam is None else HORIZON_FACTOR / lam


def _exact(decomposition: SpectralDecomposition, x0: np.ndarray, times: np.ndarray) -> np.ndarray:
    q = decomposition.eigenvectors
    lam = decomposition.clipped_eigenvalues()
    coeffs = q.T @ x0
    return (np.exp(-np.outer(times, lam)) * coeffs) @ q.T


def _rk4(blocks: np.ndarray, x0: np.ndarray, times: np.ndarray) -> np.ndarray:
    states = np.empty((times.size, x0.size))
    states[0] = x0
    x = x0.copy()
    for k in range(1, times.size):
        h = times[k] - times[k - 1]
        k1 = -blocks @ x
        k2 = -blocks @ (x + 0.5 * h * k1)
        k3 = -blocks @ (x + 0.5 * h * k2)
        k4 = -blocks @ (x + h * k3)
        x = x + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        states[k] = x
    return states


def _adaptive(blocks: np.ndarray, x0: np.ndarray, times: np.ndarray) -> np.ndarray:
    solution = solve_ivp(
        lambda t, x: -blocks @ x,
        (float(times[0]), float(times[-1])),
        x0,
        method="RK45",
        t_eval=times,
        rtol=1e-10,
        atol=1e-12,
    )
    if not solution.success:
        raise RuntimeError(f"adaptive integration failed: {solution.message}")
    return solution.y.T


def integrate(laplacian: Laplacian, x0: np.ndarray, horizon: Optional[float] = None, steps: int = 2000,
              method: Union[str, IntegrationMethod] = IntegrationMethod.EXACT,
              decomposition: Optional[SpectralDecomposition] = None,
              tol: Tolerances = DEFAULT_TOLERANCES) -> Trajectory:
    """
    Integrate x' = -Lx from x0 over [0, horizon] on `steps` uniform intervals.

    Raises:
        ValueError: non-positive horizon or step count, or a mis-sized initial state.
        StepTooLargeError: rk4 step above 2 / lambda_max.
    """
    method = IntegrationMethod(method)
    x0 = np.asarray(x0, dtype=float)
    size = laplacian.n * laplacian.d
    if x0.shape != (size,):
        raise ValueError(f"initial state must have length {size}, got shape {x0.shape}")
    if steps < 1:
        raise ValueError(f"steps must be positive, got {steps}")
    decomposition = decomposition or decompose(laplacian, tol)
    if horizon is None:
        horizon = default_horizon(decomposition)
    if not horizon > 0:
        raise ValueError(f"horizon must be positive, got {horizon}")

    times = np.linspace(0.0, float(horizon), steps + 1)
    if method is IntegrationMethod.EXACT:
        states = _exact(decomposition, x0, times)
    elif method is IntegrationMethod.RK4:
        step = float(horizon) / steps
        lam_max = decomposition.largest
        if lam_max > 0 and step > 2.0 / lam_max:
            raise StepTooLargeError(step, 2.0 / lam_max)
        states = _rk4(laplacian.blocks, x0, times)
    else:
        states = _adaptive(laplacian.blocks, x0, times)

    logger.debug(f"Integrated {method.value} over [0, {horizon:.6g}] in {steps} steps")
    return Trajectory(times, states, method)


def energy(trajectory: Trajectory, laplacian: Laplacian) -> np.ndarray:
    """V(t) = x(t)^T L x(t) at every stamp."""
    x = trajectory.states
    return np.einsum("ki,ij,kj->k", x, laplacian.blocks, x)


def export_csv(trajectory: Trajectory, node_ids: Sequence[str], d: int, path: Union[str, Path]) -> Path:
    """One row per stamp; header `t,node<id>_<k>` with k = 1..d."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    header = ["t"] + [f"node{node}_{k + 1}" for node in node_ids for k in range(d)]
    with path.open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for t, x in zip(trajectory.times, trajectory.states):
            writer.writerow([repr(float(t))] + [repr(float(v)) for v in x])
    return path
