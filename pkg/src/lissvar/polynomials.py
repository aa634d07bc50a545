"""Sparse multivariate polynomials keyed by exponent tuples.

Coefficients are either exact (:class:`~lissvar.gaussian.GaussianRational`,
``Fraction`` or ``int``) or ``complex`` floats; the algorithms below are
written against the small common surface of those types. Terms with zero
coefficient are never stored.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm

from .errors import RootExtractionFailed
from .gaussian import GaussianRational


def _is_zero(c) -> bool:
    if isinstance(c, GaussianRational):
        return c.is_zero
    return c == 0


@dataclass(frozen=True)
class PolynomialDense:
    """A polynomial given by a full exponent-to-coefficient mapping."""

    num_vars: int
    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        for e, c in self.terms.items():
            if len(e) != self.num_vars:
                raise ValueError("exponent arity mismatch")
            if _is_zero(c):
                raise ValueError("zero coefficient stored")

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def evaluate(self, point):
        total = 0
        for e, c in self.terms.items():
            mono = 1.0
            for xi, ei in zip(point, e):
                mono *= xi ** ei
            cc = complex(c) if isinstance(c, GaussianRational) else c
            total = total + cc * mono
        return total

    def __eq__(self, other):
        if not isinstance(other, PolynomialDense):
            return NotImplemented
        if self.num_vars != other.num_vars or set(self.terms) != set(other.terms):
            return False
        return all(_coeff_eq(self.terms[e], other.terms[e]) for e in self.terms)


def _coeff_eq(a, b) -> bool:
    ag = isinstance(a, GaussianRational)
    bg = isinstance(b, GaussianRational)
    if ag and not bg:
        return a == GaussianRational(b)
    if bg and not ag:
        return GaussianRational(a) == b
    return a == b


# ---------------------------------------------------------------------------
# dict-level arithmetic


def poly_mul(p: dict, q: dict) -> dict:
    out = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            c = c1 * c2
            if e in out:
                c = out[e] + c
            if _is_zero(c):
                out.pop(e, None)
            else:
                out[e] = c
    return out


def poly_pow(p: dict, k: int) -> dict:
    if k == 0:
        raise ValueError("power must be positive")
    out = p
    for _ in range(k - 1):
        out = poly_mul(out, p)
    return out


def poly_sub(p: dict, q: dict) -> dict:
    out = dict(p)
    for e, c in q.items():
        nc = out[e] - c if e in out else -c
        if _is_zero(nc):
            out.pop(e, None)
        else:
            out[e] = nc
    return out


def lex_leading(p: dict):
    """(exponent, coefficient) of the lexicographically largest monomial."""
    e = max(p)
    return e, p[e]


# ---------------------------------------------------------------------------
# exact Newton interpolation on the integer grid {0..D_1} x ... x {0..D_n}


def _interp_axis_exact(values: list) -> list:
    """Monomial coefficients of the polynomial through (t, values[t]), t=0..D."""
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
        # reuse list in place for next round
    return coeffs


def _interp_axis_float(values: list) -> list:
    D = len(values) - 1
    c = list(values)
    for j in range(1, D + 1):
        for i in range(D, j - 1, -1):
            c[i] = (c[i] - c[i - 1]) / j
    coeffs = [0j] * (D + 1)
    for k in range(D, -1, -1):
        shifted = [0j] * (D + 1)
        for t in range(D):
            shifted[t + 1] = coeffs[t]
        for t in range(D + 1):
            term = shifted[t] - coeffs[t] * k
            if t == 0:
                term = term + c[k]
            coeffs[t] = term
    return coeffs


def interpolate_grid(values: dict, dims, exact: bool) -> dict:
    """Interpolate a polynomial from values on an integer tensor grid.

    ``values`` maps full grid index tuples to coefficients (GaussianRational
    when ``exact``, complex otherwise); ``dims[j]`` is the per-axis degree
    bound. Returns a sparse exponent dict.
    """
    n = len(dims)
    zero = GaussianRational(0) if exact else 0j
    axis_fn = _interp_axis_exact if exact else _interp_axis_float
    data = values
    for axis in range(n):
        groups = {}
        other = [a for a in range(n) if a != axis]
        for idx, val in data.items():
            key = tuple(idx[a] for a in other)
            groups.setdefault(key, {})[idx[axis]] = val
        out = {}
        for key, col in groups.items():
            coeffs = axis_fn([col.get(t, zero) for t in range(dims[axis] + 1)])
            for e, cf in enumerate(coeffs):
                if _is_zero(cf):
                    continue
                idx = [0] * n
                for a, k in zip(other, key):
                    idx[a] = k
                idx[axis] = e
                out[tuple(idx)] = cf
        data = out
    if not exact:
        scale = max((abs(c) for c in data.values()), default=1.0)
        data = {e: c for e, c in data.items() if abs(c) > 1e-9 * scale}
    return data


# ---------------------------------------------------------------------------
# k-th roots of exact polynomials (used to undo det = c * f^k)


def poly_kth_root_monic(p: dict, k: int) -> dict:
    """k-th root of a lex-monic polynomial dict over Q[i]; exact, or raises.

    The leading coefficient of ``p`` in lexicographic order must be 1. The
    root is constructed term by term from the lex-leading part and verified
    by re-expansion; any mismatch raises :class:`RootExtractionFailed`.
    """
    if k == 1:
        return dict(p)
    lead_e, lead_c = lex_leading(p)
    if not _coeff_eq(lead_c, GaussianRational(1)):
        raise RootExtractionFailed("root extraction requires a monic input")
    if any(e % k for e in lead_e):
        raise RootExtractionFailed("leading exponent not divisible by k")
    root_lead = tuple(e // k for e in lead_e)
    f = {root_lead: GaussianRational(1)}
    kq = GaussianRational(k)
    prev_lex = None
    while True:
        r = poly_sub(p, poly_pow(f, k))
        if not r:
            return f
        e_r, c_r = lex_leading(r)
        if prev_lex is not None and e_r >= prev_lex:
            raise RootExtractionFailed("no progress extracting root")
        prev_lex = e_r
        # next term t satisfies k * lead(f)^(k-1) * t = leading of remainder
        e_t = tuple(a - (k - 1) * b for a, b in zip(e_r, root_lead))
        if any(x < 0 for x in e_t) or e_t >= root_lead:
            raise RootExtractionFailed("input is not a perfect k-th power")
        f[e_t] = c_r / kq


# ---------------------------------------------------------------------------
# normalization of exact polynomials with Gaussian-rational coefficients


def realify(p: dict) -> dict:
    """Scale a Q[i]-polynomial by its lex-leading coefficient to make it real.

    Raises ``ValueError`` if the rescaled polynomial is not exactly real.
    """
    _, lead = lex_leading(p)
    out = {e: c / lead for e, c in p.items()}
    for c in out.values():
        if not c.is_real:
            raise ValueError("polynomial is not real up to a scalar")
    return {e: c.re for e, c in out.items()}


def normalize_integer_content(p: dict) -> dict:
    """Scale a rational polynomial to coprime integers, lex-leading positive."""
    fracs = {e: Fraction(c) for e, c in p.items()}
    denom = lcm(*[c.denominator for c in fracs.values()])
    ints = {e: int(c * denom) for e, c in fracs.items()}
    g = 0
    for v in ints.values():
        g = gcd(g, v)
    ints = {e: v // g for e, v in ints.items()}
    _, lead = lex_leading(ints)
    if lead < 0:
        ints = {e: -v for e, v in ints.items()}
    return ints
