"""The convex program characterizing the unique stable positive equilibrium.

On the slice {Ax = omega} inside the open box (-1, 1)^n we minimize

    F(x) = (pi/2) b.x - sum_j (x_j arccos(x_j) - sqrt(1 - x_j^2)),

whose gradient is (pi/2) b - arccos(x) and whose Hessian diag(1/sqrt(1-x^2))
is positive definite, so F is strictly convex. A minimizer exists iff omega
lies in the projected positive region; it then satisfies
``arccos(x*) - pi b/2 in Row(A)`` and the stable steady state is recovered
from ``A^t theta* = pi b/2 - arccos(x*)``. For quarter-period shifts
(b = 1) the objective reduces exactly to sum_j (x_j arcsin(x_j) +
sqrt(1 - x_j^2)).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import linprog

from .errors import InfeasibleSlice, OutOfDomain
from .variety import LissajousModel

BOX_MARGIN = 1e-12
STALL_DISTANCE = 1e-6
STALL_GRADIENT = 1e-4
STALL_RUNS = 20


@dataclass(frozen=True)
class OptResult:
    status: str  # "Optimal" | "NotInOmegaPlus" | "MaxIterations"
    x_star: np.ndarray | None
    theta_star: np.ndarray | None
    objective_value: float | None
    kkt_residual: float | None


def objective(model: LissajousModel, x) -> float:
    """Objective value; defined on the open box (-1, 1)^n only."""
    x = np.asarray(x, dtype=float)
    if np.any(np.abs(x) >= 1.0):
        raise OutOfDomain("point is outside the open box (-1, 1)^n")
    b = model.b_floats()
    return float(np.pi / 2 * b @ x - np.sum(x * np.arccos(x) - np.sqrt(1 - x * x)))


def objective_gradient(model: LissajousModel, x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if np.any(np.abs(x) >= 1.0):
        raise OutOfDomain("point is outside the open box (-1, 1)^n")
    return np.pi / 2 * model.b_floats() - np.arccos(x)


def _interior_start(A: np.ndarray, x_p: np.ndarray, N: np.ndarray) -> np.ndarray:
    """A strictly interior point of the slice, or raise InfeasibleSlice.

    Maximizes the box margin over the kernel parametrization with an LP
    (Chebyshev-center style).
    """
    n, r = N.shape
    if r == 0:
        if np.max(np.abs(x_p)) < 1.0 - 1e-9:
            return x_p
        raise InfeasibleSlice("the slice is a single point outside the open box")
    # variables (s, t): maximize t  s.t.  +-(x_p + N s) <= 1 - t
    c = np.zeros(r + 1)
    c[-1] = -1.0
    A_ub = np.vstack([
        np.hstack([N, np.ones((n, 1))]),
        np.hstack([-N, np.ones((n, 1))]),
    ])
    b_ub = np.concatenate([1.0 - x_p, 1.0 + x_p])
    res = linprog(c, A_ub=A_ub, b_ub=b_ub,
                  bounds=[(None, None)] * r + [(None, None)], method="highs")
    if not res.success or res.x[-1] <= 1e-9:
        raise InfeasibleSlice("the affine slice misses the open box (-1, 1)^n")
    return x_p + N @ res.x[:-1]


def solve_positive(model: LissajousModel, omega, tol: float = 1e-8,
                   max_iter: int = 200, x0=None) -> OptResult:
    """Damped Newton on the kernel parametrization of the feasible slice.

    Status is ``Optimal`` when the projected gradient norm falls below tol,
    ``NotInOmegaPlus`` when the iterates stall against the box boundary with
    a non-vanishing projected gradient (the observable signature that no
    interior minimizer exists), ``MaxIterations`` otherwise. An optional
    feasible interior start ``x0`` overrides the default least-norm one.
    """
    A = np.array(model.A.rows, dtype=float)
    omega = np.asarray(omega, dtype=float)
    n = model.num_coords
    x_p, *_ = np.linalg.lstsq(A, omega, rcond=None)
    if model.kernel_basis.num_cols:
        N = np.array(model.kernel_basis.rows, dtype=float)
    else:
        N = np.zeros((n, 0))
    if x0 is not None:
        x = np.asarray(x0, dtype=float)
        if np.max(np.abs(A @ x - omega)) > 1e-9:
            raise ValueError("x0 does not satisfy the slice equations")
        if np.max(np.abs(x)) >= 1.0:
            raise OutOfDomain("x0 is outside the open box (-1, 1)^n")
    elif np.max(np.abs(x_p)) >= 1.0 - 1e-9:
        x = _interior_start(A, x_p, N)
    else:
        x = x_p.copy()

    if N.shape[1] == 0:
        return _finish(model, A, omega, x, 0.0)

    stall = 0
    for _ in range(max_iter):
        grad = objective_gradient(model, x)
        g_s = N.T @ grad
        gnorm = float(np.linalg.norm(g_s))
        if gnorm < tol:
            return _finish(model, A, omega, x, gnorm)
        boundary_dist = 1.0 - float(np.max(np.abs(x)))
        if boundary_dist < STALL_DISTANCE and gnorm > STALL_GRADIENT:
            stall += 1
            if stall >= STALL_RUNS:
                return OptResult("NotInOmegaPlus", None, None, None, gnorm)
        else:
            stall = 0
        hess_diag = 1.0 / np.sqrt(1.0 - x * x)
        H = N.T @ (hess_diag[:, None] * N)
        try:
            step_s = np.linalg.solve(H, -g_s)
        except np.linalg.LinAlgError:
            step_s = -g_s
        direction = N @ step_s
        # largest step keeping max|x_j| <= 1 - BOX_MARGIN
        alpha = 1.0
        with np.errstate(divide="ignore"):
            for xj, dj in zip(x, direction):
                if dj > 0:
                    alpha = min(alpha, (1.0 - BOX_MARGIN - xj) / dj)
                elif dj < 0:
                    alpha = min(alpha, (-1.0 + BOX_MARGIN - xj) / dj)
        f0 = objective(model, x)
        slope = float(g_s @ step_s)
        accepted = False
        while alpha > 1e-18:
            trial = x + alpha * direction
            if np.max(np.abs(trial)) < 1.0:
                armijo = objective(model, trial) <= f0 + 1e-4 * alpha * slope
                # near the minimizer the objective decrease drowns in double
                # rounding; a shrinking projected gradient is progress too
                grad_drop = (
                    float(np.linalg.norm(N.T @ objective_gradient(model, trial)))
                    <= (1.0 - alpha / 4.0) * gnorm
                )
                if armijo or grad_drop:
                    x = trial
                    accepted = True
                    break
            alpha *= 0.5
        if not accepted:
            # cannot decrease further: either optimal or pushed to boundary
            if gnorm < np.sqrt(tol):
                return _finish(model, A, omega, x, gnorm)
            return OptResult("NotInOmegaPlus", None, None, None, gnorm)
    return OptResult("MaxIterations", None, None, None, None)


def _finish(model, A, omega, x, gnorm):
    b = model.b_floats()
    target = np.pi / 2 * b - np.arccos(x)
    theta, *_ = np.linalg.lstsq(A.T, target, rcond=None)
    recovery = float(np.max(np.abs(A.T @ theta - target)))
    slice_res = float(np.max(np.abs(A @ x - omega)))
    return OptResult(
        status="Optimal",
        x_star=x,
        theta_star=theta,
        objective_value=objective(model, x),
        kkt_residual=max(gnorm, recovery, slice_res),
    )


def omega_plus_contains(model: LissajousModel, omega) -> bool:
    """Whether the strictly convex program has an interior minimizer."""
    try:
        return solve_positive(model, omega).status == "Optimal"
    except InfeasibleSlice:
        return False
