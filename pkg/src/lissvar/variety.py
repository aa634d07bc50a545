"""Trigonometrically parametrized varieties: models, degrees, membership.

The central object is :class:`LissajousModel`, the pair ``(A, b)`` of an
integer exponent matrix and a real phase-shift vector, together with its
derived combinatorics (circuits, coloops, kernel lattice, lattice index,
unit phases ``beta``). Coordinates of points on the variety are
``x_j = cos(a_j . t - b_j pi/2)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

import numpy as np

from . import polytope as _polytope
from .errors import (
    DimensionGuard,
    Inconclusive,
    NotHypersurface,
    RankDeficient,
    RootExtractionFailed,
    ZeroCoordinate,
)
from .exactmat import CircuitData, IntMatrix, as_int_matrix, circuits as _circuits
from .exactmat import kernel_lattice_basis, lattice_index, rank_rational
from .gaussian import GaussianRational, gi_det, gi_mul, unit_phase
from .polynomials import (
    PolynomialDense,
    interpolate_grid,
    lex_leading,
    normalize_integer_content,
    poly_pow,
    poly_sub,
    poly_kth_root_monic,
    realify,
)

FIBER_SUBSET_GUARD = 16
MEMBERSHIP_DEFAULT_GUARD = 12
HYPERSURFACE_GUARD = 6

DEFAULT_SEED = 20240601


@dataclass
class LissajousModel:
    """An exponent matrix with phase shifts and its derived exact data."""

    A: IntMatrix
    b: tuple
    beta: np.ndarray
    beta_exact: tuple | None  # Gaussian units when b is integral
    circuits: CircuitData
    kernel_basis: IntMatrix
    index: int
    _volume: int | None = field(default=None, repr=False)
    _fiber_degree: int | None = field(default=None, repr=False)

    @property
    def dim(self) -> int:
        return self.A.num_rows

    @property
    def num_coords(self) -> int:
        return self.A.num_cols

    @property
    def b_is_integral(self) -> bool:
        return self.beta_exact is not None

    def b_floats(self) -> np.ndarray:
        return np.array([float(x) for x in self.b], dtype=float)

    def normalized_volume(self) -> int:
        if self._volume is None:
            hull = _polytope.symmetric_hull(self.A)
            self._volume = _polytope.normalized_volume(hull)
        return self._volume


def _as_real_number(x):
    if isinstance(x, bool) or isinstance(x, complex):
        raise ValueError("phase shifts must be real numbers")
    if isinstance(x, (int, Fraction)):
        return x
    return float(x)


def build_model(matrix, b) -> LissajousModel:
    """Build a model from an integer matrix and a real shift vector.

    Rows that are identically zero are dropped; the remaining matrix must
    have full row rank (pass a row-reduced matrix otherwise).
    """
    A = as_int_matrix(matrix)
    kept = tuple(r for r in A.rows if any(x != 0 for x in r))
    if not kept:
        raise RankDeficient("matrix has no nonzero rows")
    A = IntMatrix(kept)
    d, n = A.num_rows, A.num_cols
    if len(b) != n:
        raise ValueError(f"b has length {len(b)}, expected {n}")
    r = rank_rational(A)
    if r < d:
        raise RankDeficient(
            f"rank {r} < {d} rows; pass a row-reduced matrix with independent rows"
        )
    b_vals = tuple(_as_real_number(x) for x in b)
    beta = np.exp(-1j * np.pi / 2 * np.array([float(x) for x in b_vals]))
    integral = all(
        (isinstance(x, int))
        or (isinstance(x, Fraction) and x.denominator == 1)
        or (isinstance(x, float) and x.is_integer())
        for x in b_vals
    )
    beta_exact = (
        tuple(unit_phase(int(x)) for x in b_vals) if integral else None
    )
    return LissajousModel(
        A=A,
        b=b_vals,
        beta=beta,
        beta_exact=beta_exact,
        circuits=_circuits(A),
        kernel_basis=kernel_lattice_basis(A),
        index=lattice_index(A),
    )


# ---------------------------------------------------------------------------
# parametrizations


def _shift_angles(model: LissajousModel, t) -> np.ndarray:
    At = np.array(model.A.transpose().rows, dtype=float)
    return At @ np.asarray(t, dtype=float) - np.pi / 2 * model.b_floats()


def param_point(model: LissajousModel, t) -> np.ndarray:
    """The point ``(cos(a_j . t - b_j pi/2))_j`` on the variety."""
    return np.cos(_shift_angles(model, t))


def torus_param_point(model: LissajousModel, v) -> np.ndarray:
    """The rational parametrization ``(beta_j v^{a_j} + beta_j^-1 v^-{a_j})/2``."""
    v = np.asarray(v, dtype=complex)
    if np.any(v == 0):
        raise ZeroCoordinate("torus coordinates must be nonzero")
    out = np.empty(model.num_coords, dtype=complex)
    for j, col in enumerate(model.A.columns()):
        mono = np.prod([vk ** e for vk, e in zip(v, col)])
        out[j] = (model.beta[j] * mono + mono ** -1 / model.beta[j]) / 2
    return out


# ---------------------------------------------------------------------------
# genericity and degrees


def genericity_test(model: LissajousModel):
    """Per circuit: is the pairing of its relation vector with b not an even
    integer? Exact for int/Fraction shifts, 1e-9 tolerance for floats."""
    exact = all(isinstance(x, (int, Fraction)) for x in model.b)
    results = []
    for vec in model.circuits.circuit_vectors:
        if exact:
            pairing = sum(Fraction(m) * Fraction(x) for m, x in zip(vec, model.b))
            even = pairing.denominator == 1 and pairing.numerator % 2 == 0
            results.append(not even)
        else:
            pairing = float(sum(m * float(x) for m, x in zip(vec, model.b)))
            nearest_even = 2.0 * round(pairing / 2.0)
            results.append(abs(pairing - nearest_even) > 1e-9)
    return tuple(results)


def fiber_degree(model: LissajousModel, trials: int = 5, seed: int = DEFAULT_SEED,
                 tol: float = 1e-8) -> int:
    """Generic fiber cardinality of the torus-variety projection.

    At a random unit-modulus point, count the coordinate sign-flip subsets
    that still satisfy every kernel binomial; majority vote over trials.
    """
    n = model.num_coords
    if n > FIBER_SUBSET_GUARD:
        raise DimensionGuard(f"{n} coordinates exceeds guard {FIBER_SUBSET_GUARD}")
    kernel_cols = [model.kernel_basis.column(j)
                   for j in range(model.kernel_basis.num_cols)]
    rng = np.random.default_rng(seed)
    b = model.b_floats()
    At = np.array(model.A.transpose().rows, dtype=float)
    subsets = np.arange(2 ** n)
    signs = 1.0 - 2.0 * ((subsets[:, None] >> np.arange(n)[None, :]) & 1)
    counts = []
    for _ in range(trials):
        t = rng.uniform(-np.pi, np.pi, model.dim)
        alpha = At @ t - np.pi / 2 * b  # angles of y_j on the unit circle
        good = np.ones(2 ** n, dtype=bool)
        for m_vec in kernel_cols:
            m = np.array(m_vec, dtype=float)
            target = -np.pi / 2 * float(np.dot(m, b))
            theta = signs @ (m * alpha)
            delta = np.angle(np.exp(1j * (theta - target)))
            good &= np.abs(delta) < tol
        counts.append(int(np.sum(good)))
    best = max(set(counts), key=counts.count)
    if counts.count(best) * 2 <= trials:
        raise Inconclusive(f"fiber counts disagree: {counts}")
    return best


def degree(model: LissajousModel) -> int:
    """Exact degree: normalized volume over (fiber degree * lattice index)."""
    if model._fiber_degree is None:
        model._fiber_degree = fiber_degree(model)
    vol = model.normalized_volume()
    denom = model._fiber_degree * model.index
    if vol % denom:
        raise Inconclusive(
            f"normalized volume {vol} not divisible by fiber degree * index {denom}"
        )
    return vol // denom


def cycle_poly_degree(n: int) -> int:
    """Degree (n/2) * C(n-1, floor((n-1)/2)) of the n-th cycle polynomial."""
    if n < 3:
        raise ValueError("need n >= 3")
    value = Fraction(n, 2) * comb(n - 1, (n - 1) // 2)
    assert value.denominator == 1
    return int(value)


# ---------------------------------------------------------------------------
# membership via multiplication matrices


@dataclass(frozen=True)
class MembershipReport:
    is_member: bool
    min_singular_value: float
    threshold_used: float
    matrix_dim: int
    scale: float = 1.0  # largest singular value; the rank test is relative


def _split_kernel_vector(m_vec):
    u = tuple(max(x, 0) for x in m_vec)
    w = tuple(max(-x, 0) for x in m_vec)
    return u, w


def _mult_block(x) -> np.ndarray:
    return np.array([[0.0, -1.0], [1.0, 2.0 * x]], dtype=complex)


def _kron_power_matrix(x, exponents) -> np.ndarray:
    out = np.array([[1.0 + 0j]])
    for xj, e in zip(x, exponents):
        out = np.kron(out, np.linalg.matrix_power(_mult_block(xj), e))
    return out


def membership(model: LissajousModel, x, tol: float = 1e-8,
               max_n: int = MEMBERSHIP_DEFAULT_GUARD) -> MembershipReport:
    """Decide membership of x via rank deficiency of multiplication matrices.

    For each kernel generator m = u - w the matrix
    ``beta^w M^u - beta^u M^w`` is singular on the variety; the concatenated
    block row loses rank exactly on it. Rank deficiency is measured by the
    smallest singular value relative to the largest.
    """
    n = model.num_coords
    if n > max_n:
        raise DimensionGuard(f"{n} coordinates exceeds membership guard {max_n}")
    x = np.asarray(x, dtype=complex)
    dim = 2 ** n
    r = model.kernel_basis.num_cols
    if r == 0:
        return MembershipReport(True, 0.0, tol, dim)
    blocks = []
    for k in range(r):
        m_vec = model.kernel_basis.column(k)
        u, w = _split_kernel_vector(m_vec)
        beta_u = np.prod(model.beta ** np.array(u))
        beta_w = np.prod(model.beta ** np.array(w))
        Mu = _kron_power_matrix(x, u)
        Mw = _kron_power_matrix(x, w)
        blocks.append(beta_w * Mu - beta_u * Mw)
    stacked = np.hstack(blocks)
    svals = np.linalg.svd(stacked, compute_uv=False)
    smax, smin = float(svals[0]), float(svals[-1])
    return MembershipReport(
        is_member=bool(smin < tol * smax),
        min_singular_value=smin,
        threshold_used=tol,
        matrix_dim=dim,
        scale=smax,
    )


# ---------------------------------------------------------------------------
# hypersurface equations by exact interpolation of det(M_g)


@dataclass(frozen=True)
class HypersurfaceEquation:
    """det(M_g) together with its fiber-degree-th root f (det = c * f^k)."""

    det_poly: PolynomialDense
    root_poly: PolynomialDense
    fiber_deg: int


def _int_kron(blocks):
    out = np.array([[1]], dtype=object)
    for blk in blocks:
        out = np.kron(out, blk)
    return out


def _int_block_power(x: int, e: int) -> np.ndarray:
    out = np.array([[1, 0], [0, 1]], dtype=object)
    B = np.array([[0, -1], [1, 2 * x]], dtype=object)
    for _ in range(e):
        out = out @ B
    return out


def _det_mg_exact(x_nodes, u, w, beta_u, beta_w) -> tuple:
    """det of beta^w M^u - beta^u M^w at integer coordinates, in Z[i]."""
    Ku = _int_kron([_int_block_power(xj, e) for xj, e in zip(x_nodes, u)])
    Kw = _int_kron([_int_block_power(xj, e) for xj, e in zip(x_nodes, w)])
    size = Ku.shape[0]
    rows = []
    for i in range(size):
        row = []
        for j in range(size):
            a = int(Ku[i, j])
            c = int(Kw[i, j])
            row.append((beta_w[0] * a - beta_u[0] * c, beta_w[1] * a - beta_u[1] * c))
        rows.append(row)
    return gi_det(rows)


def _float_kth_root(det_terms: dict, k: int) -> dict:
    lead_e, lead_c = lex_leading(det_terms)
    p = {e: c / lead_c for e, c in det_terms.items()}
    if any(e % k for e in lead_e):
        raise RootExtractionFailed("leading exponent not divisible by k")
    root_lead = tuple(e // k for e in lead_e)
    f = {root_lead: 1.0 + 0j}
    scale = max(abs(c) for c in p.values())
    for _ in range(4096):
        r = poly_sub(p, poly_pow(f, k))
        r = {e: c for e, c in r.items() if abs(c) > 1e-9 * scale}
        if not r:
            return f
        e_r, c_r = lex_leading(r)
        e_t = tuple(a - (k - 1) * b for a, b in zip(e_r, root_lead))
        if any(t < 0 for t in e_t) or e_t >= root_lead:
            raise RootExtractionFailed("input is not a numerical k-th power")
        f[e_t] = c_r / k
    raise RootExtractionFailed("float root extraction did not terminate")


def hypersurface_equation(model: LissajousModel) -> HypersurfaceEquation:
    """Reconstruct det(M_g) by interpolation and extract its root.

    Needs a one-dimensional kernel (n - d = 1). With integer shifts the
    computation is exact over Q[i] and the root has coprime integer
    coefficients with positive lexicographic leading term; otherwise the
    reconstruction runs in complex floats.
    """
    n = model.num_coords
    if model.kernel_basis.num_cols != 1:
        raise NotHypersurface(
            f"kernel rank is {model.kernel_basis.num_cols}, expected 1"
        )
    if n > HYPERSURFACE_GUARD:
        raise DimensionGuard(f"{n} coordinates exceeds guard {HYPERSURFACE_GUARD}")
    m_vec = model.kernel_basis.column(0)
    u, w = _split_kernel_vector(m_vec)
    dims = [(2 ** n) * (uj + wj) for uj, wj in zip(u, w)]
    k = fiber_degree(model)

    if model.b_is_integral:
        beta_u = (1, 0)
        beta_w = (1, 0)
        for bj, uj, wj in zip(model.beta_exact, u, w):
            for _ in range(uj):
                beta_u = gi_mul(beta_u, bj)
            for _ in range(wj):
                beta_w = gi_mul(beta_w, bj)
        values = {}
        for idx in itertools.product(*[range(D + 1) for D in dims]):
            re, im = _det_mg_exact(idx, u, w, beta_u, beta_w)
            values[idx] = GaussianRational(re, im)
        det_terms = interpolate_grid(values, dims, exact=True)
        _, lead = lex_leading(det_terms)
        monic = {e: c / lead for e, c in det_terms.items()}
        try:
            root = poly_kth_root_monic(monic, k)
            root_real = realify(root)
        except (RootExtractionFailed, ValueError) as exc:
            raise RootExtractionFailed(str(exc)) from exc
        if poly_sub(det_terms, {e: c * lead for e, c in poly_pow(root, k).items()}):
            raise RootExtractionFailed("verification det != c * f^k")
        root_terms = normalize_integer_content(root_real)
        det_poly = PolynomialDense(n, det_terms)
        root_poly = PolynomialDense(n, root_terms)
        return HypersurfaceEquation(det_poly, root_poly, k)

    # non-integral shifts: same pipeline in complex floats
    beta_u = complex(np.prod(model.beta ** np.array(u)))
    beta_w = complex(np.prod(model.beta ** np.array(w)))
    values = {}
    for idx in itertools.product(*[range(D + 1) for D in dims]):
        Mu = _kron_power_matrix(np.array(idx, dtype=float), u)
        Mw = _kron_power_matrix(np.array(idx, dtype=float), w)
        values[idx] = complex(np.linalg.det(beta_w * Mu - beta_u * Mw))
    det_terms = interpolate_grid(values, dims, exact=False)
    root = _float_kth_root(det_terms, k)
    scale = max(abs(c) for c in root.values())
    if any(abs(c.imag) > 1e-7 * scale for c in root.values()):
        raise RootExtractionFailed("root polynomial is not numerically real")
    root_terms = {e: c.real for e, c in root.items()}
    return HypersurfaceEquation(
        PolynomialDense(n, det_terms), PolynomialDense(n, root_terms), k
    )
