"""Exact convex hulls and normalized volumes of centrally symmetric polytopes.

Volumes are computed from a regular triangulation: points are lifted by
random integer heights, qhull proposes the lower hull, and every piece of
the proposal is then re-certified in exact integer arithmetic (supporting
hyperplanes, ridge matching, a degree-one point check). The certified cells
give the normalized volume as an exact integer sum of determinants, so no
floating-point value ever enters the result.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb, gcd

import numpy as np
from scipy.spatial import ConvexHull, QhullError

from .errors import NotFullDimensional
from .exactmat import as_int_matrix, rank_rational

_LIFT_SEED = 0x5EED
_MAX_LIFT_ATTEMPTS = 8


@dataclass(frozen=True)
class Polytope:
    """A polytope given by its irredundant rational vertex list."""

    ambient_dim: int
    vertices: tuple  # tuple of coordinate tuples (ints or Fractions)


def _int_det(rows) -> int:
    """Bareiss determinant of a square integer matrix."""
    m = [list(r) for r in rows]
    n = len(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def _affine_normal(points):
    """Integer normal and offset of the hyperplane spanned by d points in Z^d.

    Returns ``(None, None)`` when the points are affinely dependent.
    """
    d = len(points[0])
    base = points[0]
    rows = [[p[j] - base[j] for j in range(d)] for p in points[1:]]
    h = []
    for j in range(d):
        sub = [[r[t] for t in range(d) if t != j] for r in rows]
        h.append((-1) ** j * _int_det(sub))
    if all(x == 0 for x in h):
        return None, None
    return h, sum(hj * bj for hj, bj in zip(h, base))


def _dot(h, p):
    return sum(a * b for a, b in zip(h, p))


def _solve_fraction(matrix, rhs):
    """Solve a square rational system exactly; None if singular."""
    n = len(rhs)
    A = [[Fraction(matrix[i][j]) for j in range(n)] + [Fraction(rhs[i])]
         for i in range(n)]
    for k in range(n):
        piv = next((i for i in range(k, n) if A[i][k] != 0), None)
        if piv is None:
            return None
        A[k], A[piv] = A[piv], A[k]
        pk = A[k][k]
        A[k] = [x / pk for x in A[k]]
        for i in range(n):
            if i != k and A[i][k] != 0:
                f = A[i][k]
                A[i] = [a - f * b for a, b in zip(A[i], A[k])]
    return [A[i][n] for i in range(n)]


def _barycentric(z, verts):
    d = len(z)
    M = [[verts[i][j] for i in range(d + 1)] for j in range(d)]
    M.append([1] * (d + 1))
    return _solve_fraction(M, list(z) + [1])


class _CertifiedTriangulation:
    """A regular triangulation of conv(points) with exact certificates."""

    def __init__(self, cells, boundary_planes):
        self.cells = cells  # list of (vertex-index tuple, normalized volume)
        self.boundary_planes = boundary_planes  # list of primitive (h, c)

    @property
    def normalized_volume(self) -> int:
        return sum(v for _, v in self.cells)


def _certify_triangulation(points) -> _CertifiedTriangulation:
    """Compute and exactly certify a regular triangulation of integer points.

    Certificates (all in exact integer/rational arithmetic):
      * every accepted lower facet of the lift is genuinely supporting;
      * every cell ridge is shared by exactly two cells, or spans a
        supporting hyperplane of the whole point set (boundary ridge);
      * a generic interior probe point lies in exactly one closed cell.
    Together these force the cells to tile the hull exactly once, so the
    summed cell determinants give d! vol exactly.
    """
    d = len(points[0])
    npts = len(points)
    rng = np.random.default_rng(_LIFT_SEED + 101 * npts + d)
    last = "no attempt"
    for _ in range(_MAX_LIFT_ATTEMPTS):
        heights = [int(h) for h in rng.integers(1, 2**30, npts)]
        lifted = [tuple(p) + (h,) for p, h in zip(points, heights)]
        try:
            hull = ConvexHull(np.asarray(lifted, dtype=float))
        except QhullError:
            last = "qhull failure"
            continue
        cells = []
        seen = set()
        degenerate = False
        for simplex in hull.simplices:
            s = tuple(sorted(int(i) for i in simplex))
            if s in seen:
                continue
            seen.add(s)
            h, c = _affine_normal([lifted[i] for i in s])
            if h is None:
                continue  # degenerate sliver inside a vertical facet
            above = any(_dot(h, q) > c for q in lifted)
            below = any(_dot(h, q) < c for q in lifted)
            if above and below:
                continue  # not supporting: qhull artifact, ignore
            if above:
                h = [-x for x in h]
                c = -c
            if h[d] >= 0:
                continue  # not a lower facet
            base = [points[i] for i in s]
            vol = abs(_int_det([[base[i][j] - base[0][j] for j in range(d)]
                                for i in range(1, d + 1)]))
            if vol == 0:
                degenerate = True
                break
            cells.append((s, vol))
        if degenerate or not cells:
            last = "degenerate lower cell"
            continue

        ridge_count = {}
        for s, _ in cells:
            for r in combinations(s, d):
                ridge_count[r] = ridge_count.get(r, 0) + 1
        boundary_planes = []
        ok = True
        for r, cnt in ridge_count.items():
            if cnt == 2:
                continue
            if cnt != 1:
                ok = False
                break
            h, c = _affine_normal([points[i] for i in r])
            if h is None:
                ok = False
                break
            vals = [_dot(h, p) for p in points]
            if all(v <= c for v in vals):
                boundary_planes.append((h, c))
            elif all(v >= c for v in vals):
                boundary_planes.append(([-x for x in h], -c))
            else:
                ok = False
                break
        if not ok:
            last = "unmatched interior ridge"
            continue

        # degree-one probe: a generic point of the first cell must lie in
        # exactly one closed cell
        s0 = cells[0][0]
        weights = [Fraction(i + 2) for i in range(d + 1)]
        total = sum(weights)
        probe = [sum(w * Fraction(points[i][j]) for w, i in zip(weights, s0)) / total
                 for j in range(d)]
        inside = 0
        touched_boundary = False
        for s, _ in cells:
            lam = _barycentric(probe, [points[i] for i in s])
            if lam is None:
                continue
            if all(l > 0 for l in lam):
                inside += 1
            elif all(l >= 0 for l in lam):
                touched_boundary = True
        if touched_boundary or inside != 1:
            last = "probe degree check failed"
            continue

        # primitive, deduplicated boundary planes
        dedup = {}
        for h, c in boundary_planes:
            g = 0
            for x in h:
                g = gcd(g, x)
            g = gcd(g, c)
            dedup[(tuple(x // g for x in h), c // g)] = None
        planes = list(dedup)
        return _CertifiedTriangulation(cells, planes)
    raise RuntimeError(f"could not certify a regular triangulation ({last})")


def _integerize(vertices):
    """Scale rational vertices to integers; returns (points, scale)."""
    denom = 1
    for v in vertices:
        for x in v:
            denom = denom * Fraction(x).denominator // gcd(denom, Fraction(x).denominator)
    pts = [tuple(int(Fraction(x) * denom) for x in v) for v in vertices]
    return pts, denom


def symmetric_hull(matrix) -> Polytope:
    """Irredundant vertex set of conv{+-a_1, ..., +-a_n} for the columns a_j.

    The input must have full row rank so the hull is full-dimensional.
    """
    A = as_int_matrix(matrix)
    d = A.num_rows
    if rank_rational(A) < d:
        raise NotFullDimensional("matrix rank is below its row count")
    pts = sorted({tuple(c) for c in A.columns()}
                 | {tuple(-x for x in c) for c in A.columns()})
    if d == 1:
        lo = min(p[0] for p in pts)
        hi = max(p[0] for p in pts)
        return Polytope(1, ((lo,), (hi,)))
    tri = _certify_triangulation(pts)
    vertices = []
    for p in pts:
        active = [h for h, c in tri.boundary_planes if _dot(h, p) == c]
        if active and rank_rational(active) == d:
            vertices.append(p)
    return Polytope(d, tuple(sorted(vertices)))


def normalized_volume(polytope: Polytope):
    """Exact normalized volume d! vol of a full-dimensional polytope.

    Integer for lattice polytopes, Fraction otherwise.
    """
    d = polytope.ambient_dim
    verts = polytope.vertices
    if len(verts) < d + 1:
        raise NotFullDimensional("too few vertices")
    base = verts[0]
    diffs = [[Fraction(v[j]) - Fraction(base[j]) for j in range(d)] for v in verts[1:]]
    scaled, denom_r = _integerize(diffs)
    if rank_rational(scaled) < d:
        raise NotFullDimensional("vertices span a lower-dimensional space")
    if d == 1:
        xs = [Fraction(v[0]) for v in verts]
        vol = max(xs) - min(xs)
    else:
        pts, denom = _integerize(verts)
        tri = _certify_triangulation(pts)
        vol = Fraction(tri.normalized_volume, denom**d)
    return int(vol) if vol.denominator == 1 else vol


def discriminant_degree_bound(matrix) -> int:
    """The exact integer d * d! vol(P_A) for a full-row-rank matrix A."""
    A = as_int_matrix(matrix)
    hull = symmetric_hull(A)
    return A.num_rows * normalized_volume(hull)


def cycle_volume_closed_form(n: int) -> int:
    """Closed form n * C(n-1, floor((n-1)/2)) for the cycle-graph polytope."""
    return n * comb(n - 1, (n - 1) // 2)
