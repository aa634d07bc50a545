"""Branch loci of the frequency-to-equilibrium projection.

The ramification condition is the vanishing of the toric Jacobian
``J(v) = (1/2) A diag(beta v^a - beta^-1 v^-a) A^t``; exact univariate
discriminants (one-parameter families) come from Sylvester resultants over
Q[i], while higher-dimensional branch loci are sampled numerically on the
real torus.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

import numpy as np

from . import graphs as _graphs
from .dynamics import find_equilibria, jacobian
from .errors import DegenerateJacobian, NonIntegerShift, NotUnivariate, ZeroCoordinate
from .gaussian import (
    GaussianRational,
    gi_add,
    gi_conj,
    gi_det,
    gi_scale,
    unit_phase,
)
from .polynomials import PolynomialDense
from .variety import DEFAULT_SEED, LissajousModel, param_point, torus_param_point


@dataclass(frozen=True)
class DiscriminantSample:
    """One sampled real branch point with its torus witness."""

    omega: np.ndarray
    residual: float
    witness_theta: np.ndarray


@dataclass(frozen=True)
class DiscriminantResult:
    kind: str  # "ExactUnivariate" | "SampledCloud"
    degree_bound: int
    delta: PolynomialDense | None = None
    samples: tuple = ()
    empty_caveat: bool = False  # empty cloud may mean codimension > 1
    model: LissajousModel | None = field(default=None, repr=False)


def toric_jacobian(model: LissajousModel, v) -> np.ndarray:
    """The matrix (1/2) A diag(beta_j v^{a_j} - beta_j^-1 v^-{a_j}) A^t."""
    v = np.asarray(v, dtype=complex)
    if np.any(v == 0):
        raise ZeroCoordinate("torus coordinates must be nonzero")
    A = np.array(model.A.rows, dtype=float)
    diag = np.empty(model.num_coords, dtype=complex)
    for j, col in enumerate(model.A.columns()):
        mono = np.prod([vk ** e for vk, e in zip(v, col)])
        diag[j] = model.beta[j] * mono - mono ** -1 / model.beta[j]
    return 0.5 * A @ np.diag(diag) @ A.T


def ramification_function(model: LissajousModel, theta) -> float:
    """det(A diag(sin(A^t theta - pi b/2)) A^t); vanishes on the branch set.

    On the real torus v = exp(i theta) the toric Jacobian determinant equals
    i^d times this real number.
    """
    return float(np.linalg.det(jacobian(model, theta)))


def _ramification_gradient(model, theta, h=1e-6):
    d = len(theta)
    grad = np.zeros(d)
    for k in range(d):
        e = np.zeros(d)
        e[k] = h
        grad[k] = (ramification_function(model, theta + e)
                   - ramification_function(model, theta - e)) / (2 * h)
    return grad


def _converge_to_branch(model, theta, max_iter=80, target=1e-11):
    """Gauss-Newton for the scalar ramification equation."""
    theta = np.array(theta, dtype=float)
    for _ in range(max_iter):
        val = ramification_function(model, theta)
        if abs(val) < target:
            return theta
        grad = _ramification_gradient(model, theta)
        norm2 = float(grad @ grad)
        if norm2 < 1e-18:
            return None
        step = -val * grad / norm2
        size = np.linalg.norm(step)
        if size > 1.0:
            step /= size
        theta = theta + step
    return theta if abs(ramification_function(model, theta)) < target else None


def sample_discriminant(model: LissajousModel, num_samples: int = 200,
                        seed: int = DEFAULT_SEED) -> DiscriminantResult:
    """Sample real branch points by multistart Newton on the real torus.

    Each converged start yields omega = A phi(theta) with witness residual
    |det J|; both the slice residual and the determinant residual are
    certified below 1e-8 before a sample is kept.
    """
    d = model.dim
    rng = np.random.default_rng(seed)
    # detect an identically vanishing toric Jacobian (degenerate phases)
    probes = rng.uniform(-np.pi, np.pi, size=(24, d))
    if all(abs(ramification_function(model, p)) < 1e-12 for p in probes):
        raise DegenerateJacobian("toric Jacobian vanishes identically")
    A = np.array(model.A.rows, dtype=float)
    samples = []
    for _ in range(num_samples):
        theta = _converge_to_branch(model, rng.uniform(-np.pi, np.pi, d))
        if theta is None:
            continue
        det_res = abs(ramification_function(model, theta))
        # cross-check the complex toric Jacobian on the unit torus
        v = np.exp(1j * theta)
        det_complex = complex(np.linalg.det(toric_jacobian(model, v)))
        phase = 1j ** d
        if abs(det_complex - phase * ramification_function(model, theta)) > 1e-8:
            continue
        x = torus_param_point(model, v)
        if np.max(np.abs(x.imag)) > 1e-10:
            continue
        omega = A @ x.real
        slice_res = float(np.max(np.abs(A @ param_point(model, theta) - omega)))
        residual = max(det_res, slice_res)
        if residual < 1e-8:
            samples.append(DiscriminantSample(omega, residual, theta))
    from .polytope import discriminant_degree_bound

    return DiscriminantResult(
        kind="SampledCloud",
        degree_bound=discriminant_degree_bound(model.A),
        samples=tuple(samples),
        empty_caveat=not samples,
        model=model,
    )


# ---------------------------------------------------------------------------
# exact univariate discriminants via resultants over Q[i]


def _laurent_pair_1d(model: LissajousModel):
    """Cleared slice and ramification polynomials in v for a 1 x n matrix.

    Returns (p_const, p_omega, q): coefficient lists (low degree first) of
    Gaussian integers with p(v, w) = p_const(v) + w * p_omega(v).
    """
    row = [model.A.rows[0][j] for j in range(model.num_coords)]
    betas = [unit_phase(int(x)) for x in model.b]
    amax = max((abs(a) for a in row if a != 0), default=0)
    if amax == 0:
        raise DegenerateJacobian("all exponents vanish")
    deg = 2 * amax
    p_const = [(0, 0)] * (deg + 1)
    p_omega = [(0, 0)] * (deg + 1)
    q = [(0, 0)] * (deg + 1)
    for a, be in zip(row, betas):
        if a == 0:
            continue
        binv = gi_conj(be)
        p_const[amax + a] = gi_add(p_const[amax + a], gi_scale(be, a))
        p_const[amax - a] = gi_add(p_const[amax - a], gi_scale(binv, a))
        q[amax + a] = gi_add(q[amax + a], gi_scale(be, a * a))
        q[amax - a] = gi_add(q[amax - a], gi_scale(binv, -a * a))
    p_omega[amax] = (-2, 0)

    def strip_valuation(*polys):
        v = 0
        top = len(polys[0]) - 1
        while v < top and all(p[v] == (0, 0) for p in polys):
            v += 1
        return [p[v:] for p in polys]

    p_const, p_omega = strip_valuation(p_const, p_omega)
    (q,) = strip_valuation(q)
    while q and q[-1] == (0, 0):
        q.pop()
    if not any(c != (0, 0) for c in q):
        raise DegenerateJacobian("ramification polynomial is identically zero")
    return p_const, p_omega, q


def _sylvester_resultant_gi(p, q):
    """Resultant of two Gaussian-integer coefficient lists (low first)."""
    dp = len(p) - 1
    dq = len(q) - 1
    size = dp + dq
    if size == 0:
        return (1, 0)
    M = [[(0, 0)] * size for _ in range(size)]
    p_high = list(reversed(p))
    q_high = list(reversed(q))
    for i in range(dq):
        for j, c in enumerate(p_high):
            M[i][i + j] = c
    for i in range(dp):
        for j, c in enumerate(q_high):
            M[dq + i][i + j] = c
    return gi_det(M)


def _gq_poly_trim(p):
    while p and p[-1].is_zero:
        p.pop()
    return p


def _gq_poly_divmod(a, b):
    a = list(a)
    db = len(b) - 1
    quo = [GaussianRational(0)] * max(1, len(a) - db)
    while len(a) - 1 >= db:
        if a[-1].is_zero:
            a.pop()
            continue
        f = a[-1] / b[-1]
        shift = len(a) - 1 - db
        quo[shift] = f
        for i in range(db + 1):
            a[shift + i] = a[shift + i] - f * b[i]
        a.pop()
    return quo, _gq_poly_trim(a)


def _gq_poly_gcd(a, b):
    a = _gq_poly_trim(list(a))
    b = _gq_poly_trim(list(b))
    while b:
        _, r = _gq_poly_divmod(a, b)
        a, b = b, r
    lead = a[-1]
    return [c / lead for c in a]


def _interp_univariate_gq(values):
    """Coefficients (low first) through the integer nodes 0..D."""
    D = len(values) - 1
    c = list(values)
    for j in range(1, D + 1):
        for i in range(D, j - 1, -1):
            c[i] = (c[i] - c[i - 1]).divided_by_int(j)
    coeffs = [GaussianRational(0)] * (D + 1)
    for k in range(D, -1, -1):
        shifted = [GaussianRational(0)] * (D + 1)
        for t in range(D):
            shifted[t + 1] = coeffs[t]
        node = GaussianRational(k)
        for t in range(D + 1):
            term = shifted[t] - coeffs[t] * node
            if t == 0:
                term = term + c[k]
            coeffs[t] = term
    return coeffs


def exact_discriminant_1d(model: LissajousModel) -> DiscriminantResult:
    """Exact squarefree discriminant polynomial for one-parameter models.

    Requires dim 1 and integer shifts. The slice and ramification equations
    are cleared of denominators, the resultant in v is computed at integer
    frequency nodes by exact Sylvester determinants and interpolated, and
    the squarefree content-normalized part with positive leading coefficient
    is returned. Spurious factors introduced by the clearing are frequency
    independent, so content normalization removes them.
    """
    if model.dim != 1:
        raise NotUnivariate(f"model has dimension {model.dim}")
    if not model.b_is_integral:
        raise NonIntegerShift("exact discriminants need integer shifts")
    p_const, p_omega, q = _laurent_pair_1d(model)
    deg_bound = len(q) - 1
    values = []
    for node in range(deg_bound + 1):
        pt = [gi_add(c, gi_scale(w, node)) for c, w in zip(p_const, p_omega)]
        while len(pt) > 1 and pt[-1] == (0, 0):
            pt.pop()
        values.append(GaussianRational.from_pair(_sylvester_resultant_gi(pt, q)))
    coeffs = _gq_poly_trim(_interp_univariate_gq(values))
    if not coeffs:
        raise DegenerateJacobian("resultant vanishes identically")
    if len(coeffs) > 1:
        deriv = [coeffs[i] * GaussianRational(i) for i in range(1, len(coeffs))]
        g = _gq_poly_gcd(coeffs, deriv)
        coeffs, rem = _gq_poly_divmod(coeffs, g)
        assert not rem, "squarefree division left a remainder"
        coeffs = _gq_poly_trim(coeffs)
    lead = coeffs[-1]
    monic = [c / lead for c in coeffs]
    for c in monic:
        if not c.is_real:
            raise DegenerateJacobian("discriminant is not real up to scalar")
    fracs = [Fraction(c.re) for c in monic]
    denom = 1
    for f in fracs:
        denom = denom * f.denominator // gcd(denom, f.denominator)
    ints = [int(f * denom) for f in fracs]
    g = 0
    for x in ints:
        g = gcd(g, x)
    ints = [x // g for x in ints]
    if ints[-1] < 0:
        ints = [-x for x in ints]
    terms = {(k,): c for k, c in enumerate(ints) if c != 0}
    from .polytope import discriminant_degree_bound

    return DiscriminantResult(
        kind="ExactUnivariate",
        degree_bound=discriminant_degree_bound(model.A),
        delta=PolynomialDense(1, terms),
        model=model,
    )


# ---------------------------------------------------------------------------
# chamber profiles and symmetries


def real_count_profile(model: LissajousModel, omega0, omega1, grid_size: int,
                       seed: int = DEFAULT_SEED, starts: int | None = None):
    """Real equilibrium counts along the segment (1-s) omega0 + s omega1."""
    omega0 = np.asarray(omega0, dtype=float)
    omega1 = np.asarray(omega1, dtype=float)
    profile = []
    for i in range(grid_size):
        s = i / (grid_size - 1) if grid_size > 1 else 0.0
        omega = (1 - s) * omega0 + s * omega1
        eqs = find_equilibria(model, omega, seed=seed, starts=starts)
        profile.append((s, len(eqs)))
    return profile


def check_sign_symmetry(delta: PolynomialDense):
    """+1 if every monomial has even total degree, -1 if odd, else None."""
    parities = {sum(e) % 2 for e in delta.terms}
    if parities == {0}:
        return 1
    if parities == {1}:
        return -1
    return None


def _polish_branch_point(model, omega_target, theta0, max_iter=50):
    """Gauss-Newton for [A phi(theta) - omega; ramification(theta)] = 0."""
    A = np.array(model.A.rows, dtype=float)
    theta = np.array(theta0, dtype=float)
    for _ in range(max_iter):
        top = A @ param_point(model, theta) - omega_target
        bottom = ramification_function(model, theta)
        F = np.concatenate([top, [bottom]])
        if np.max(np.abs(F)) < 1e-12:
            break
        J = np.vstack([-jacobian(model, theta),
                       _ramification_gradient(model, theta)[None, :]])
        step, *_ = np.linalg.lstsq(J, -F, rcond=None)
        size = np.linalg.norm(step)
        if size > 0.5:
            step *= 0.5 / size
        theta = theta + step
    return theta


def check_graph_symmetry(graph: _graphs.Graph, cloud: DiscriminantResult) -> float:
    """Largest distance from permuted branch points back to the branch locus.

    The sampled frequencies are lifted to the zero-sum vector of the full
    incidence matrix, permuted by each graph automorphism, and polished back
    onto the ramification system from the correspondingly permuted witness;
    the reported value is the max over samples and automorphisms of the
    distance between the permuted point and the polished branch point.
    """
    if cloud.model is None or cloud.kind != "SampledCloud":
        raise ValueError("need a sampled cloud with its model attached")
    model = cloud.model
    _, reduced = _graphs.incidence(graph)
    if reduced.rows != model.A.rows:
        raise ValueError("cloud was not sampled from this graph's model")
    if any(float(x) != 1.0 for x in model.b):
        raise ValueError("graph symmetry check needs quarter-period shifts")
    d = model.dim
    autos = _graphs.automorphisms(graph)
    worst = 0.0
    for sample in cloud.samples:
        omega_full = np.append(sample.omega, -np.sum(sample.omega))
        theta_full = np.append(sample.witness_theta, 0.0)
        for sigma in autos:
            omega_perm = np.empty(d + 1)
            theta_perm = np.empty(d + 1)
            for k in range(d + 1):
                omega_perm[sigma[k] - 1] = omega_full[k]
                theta_perm[sigma[k] - 1] = theta_full[k]
            target = omega_perm[:d]
            start = theta_perm[:d] - theta_perm[d]
            polished = _polish_branch_point(model, target, start)
            if abs(ramification_function(model, polished)) > 1e-9:
                worst = max(worst, float("inf"))
                continue
            A = np.array(model.A.rows, dtype=float)
            dist = float(np.max(np.abs(A @ param_point(model, polished) - target)))
            worst = max(worst, dist)
    return worst
