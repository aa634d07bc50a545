"""The coupled-oscillator flow ``theta' = -A phi(theta) + omega``.

For a graph's reduced incidence matrix with quarter-period shifts this is
the classical Kuramoto system with the last oscillator used as gauge.
Equilibrium finding is multistart damped Newton in angle space; stability is
read off the exact Jacobian ``A diag(sin(A^t theta - pi b/2)) A^t``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .variety import DEFAULT_SEED, LissajousModel, param_point

STABILITY_MARGIN = 1e-9
DEDUPE_RADIUS = 1e-5


@dataclass(frozen=True)
class Equilibrium:
    theta: np.ndarray
    residual: float
    eigenvalues: np.ndarray
    stable: bool
    classification: str  # "stable" | "unstable" | "degenerate"


@dataclass(frozen=True)
class EquilibriumSet:
    equilibria: tuple
    ceiling: int  # root-count ceiling d! vol(P_A)

    def __len__(self):
        return len(self.equilibria)

    def stable(self) -> tuple:
        return tuple(e for e in self.equilibria if e.stable)


def rhs(model: LissajousModel, omega, theta) -> np.ndarray:
    """Right-hand side ``-A phi(theta) + omega`` of the flow."""
    A = np.array(model.A.rows, dtype=float)
    return -A @ param_point(model, theta) + np.asarray(omega, dtype=float)


def jacobian(model: LissajousModel, theta) -> np.ndarray:
    """Derivative of :func:`rhs` in theta: ``A diag(sin(A^t theta - pi b/2)) A^t``.

    Negative definite exactly where all shifted angles lie in (-pi, 0), which
    is the stability region of the flow.
    """
    A = np.array(model.A.rows, dtype=float)
    angles = A.T @ np.asarray(theta, dtype=float) - np.pi / 2 * model.b_floats()
    return A @ np.diag(np.sin(angles)) @ A.T


def _wrap(theta: np.ndarray) -> np.ndarray:
    return (theta + np.pi) % (2.0 * np.pi) - np.pi


def torus_distance(a, b) -> float:
    d = _wrap(np.asarray(a, dtype=float) - np.asarray(b, dtype=float))
    return float(np.max(np.abs(d)))


def _newton_polish(model, omega, theta, max_iter=60, target=1e-14):
    theta = np.array(theta, dtype=float)
    for _ in range(max_iter):
        r = rhs(model, omega, theta)
        norm = np.max(np.abs(r))
        if norm < target:
            break
        J = jacobian(model, theta)
        try:
            step = np.linalg.solve(J, -r)
        except np.linalg.LinAlgError:
            step, *_ = np.linalg.lstsq(J, -r, rcond=None)
        size = np.linalg.norm(step)
        if size > 5.0:
            step *= 5.0 / size
        # damped: accept the first halving that does not increase the residual
        alpha = 1.0
        for _ in range(30):
            trial = theta + alpha * step
            if np.max(np.abs(rhs(model, omega, trial))) <= norm:
                break
            alpha *= 0.5
        else:
            return theta
        theta = theta + alpha * step
    return theta


def _classify(eigenvalues: np.ndarray, margin: float):
    if np.any(np.abs(eigenvalues) <= margin):
        return False, "degenerate"
    if np.all(eigenvalues < -margin):
        return True, "stable"
    return False, "unstable"


def find_equilibria(model: LissajousModel, omega, starts: int | None = None,
                    seed: int = DEFAULT_SEED, tol: float = 1e-10,
                    dedupe_radius: float = DEDUPE_RADIUS) -> EquilibriumSet:
    """All isolated real steady states found by multistart damped Newton.

    Converged roots are wrapped to [-pi, pi)^d, deduplicated in the torus
    metric and classified by the Jacobian spectrum. The number of distinct
    roots can never exceed the ceiling d! vol(P_A); that invariant is
    asserted on every call.
    """
    d = model.dim
    omega = np.asarray(omega, dtype=float)
    ceiling = model.normalized_volume()
    if starts is None:
        starts = 20 * ceiling
    rng = np.random.default_rng(seed)
    points = []
    if d <= 4:
        axes = [np.linspace(-np.pi, np.pi, 5, endpoint=False)] * d
        grid = np.meshgrid(*axes, indexing="ij")
        points.extend(np.stack([g.ravel() for g in grid], axis=1))
    points.extend(rng.uniform(-np.pi, np.pi, size=(starts, d)))

    roots = []
    for start in points:
        theta = _newton_polish(model, omega, start)
        residual = float(np.max(np.abs(rhs(model, omega, theta))))
        if residual >= tol:
            continue
        theta = _wrap(theta)
        if any(torus_distance(theta, r) < dedupe_radius for r in roots):
            continue
        roots.append(theta)
    if len(roots) > ceiling:
        raise RuntimeError(
            f"found {len(roots)} equilibria above the ceiling {ceiling}"
        )
    records = []
    for theta in sorted(roots, key=lambda t: tuple(t)):
        eigs = np.linalg.eigvalsh(jacobian(model, theta))
        stable, label = _classify(eigs, STABILITY_MARGIN)
        records.append(Equilibrium(
            theta=theta,
            residual=float(np.max(np.abs(rhs(model, omega, theta)))),
            eigenvalues=eigs,
            stable=stable,
            classification=label,
        ))
    return EquilibriumSet(tuple(records), ceiling)


def integrate(model: LissajousModel, omega, theta0, t_end: float, step: float):
    """Classical fixed-step RK4 trajectory; angles are left unwrapped."""
    if step <= 0:
        raise ValueError("step must be positive")
    omega = np.asarray(omega, dtype=float)
    theta = np.array(theta0, dtype=float)
    nsteps = max(1, int(np.ceil(t_end / step)))
    h = t_end / nsteps
    path = [(0.0, theta.copy())]
    t = 0.0
    for _ in range(nsteps):
        k1 = rhs(model, omega, theta)
        k2 = rhs(model, omega, theta + 0.5 * h * k1)
        k3 = rhs(model, omega, theta + 0.5 * h * k2)
        k4 = rhs(model, omega, theta + h * k3)
        theta = theta + h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4)
        t += h
        path.append((t, theta.copy()))
    return path
