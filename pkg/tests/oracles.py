"""Independent exact oracles used only by the test suite.

These deliberately avoid the library's own hull/triangulation machinery:
convex-position questions are answered by a small exact-rational simplex
method, and lattice point counts come from brute-force enumeration.
"""

from __future__ import annotations

import itertools
from fractions import Fraction


def _phase_one_simplex(A, b):
    """Feasibility of {x >= 0 : A x = b} with exact Fractions (Bland's rule)."""
    m = len(A)
    n = len(A[0])
    # make b >= 0
    A = [row[:] for row in A]
    b = list(b)
    for i in range(m):
        if b[i] < 0:
            A[i] = [-x for x in A[i]]
            b[i] = -b[i]
    # tableau with artificial variables
    T = [A[i] + [Fraction(1) if j == i else Fraction(0) for j in range(m)] + [b[i]]
         for i in range(m)]
    cost = [Fraction(0)] * n + [Fraction(1)] * m + [Fraction(0)]
    basis = list(range(n, n + m))
    # reduced cost row = cost - sum of basic rows
    z = [Fraction(0)] * (n + m + 1)
    for j in range(n + m + 1):
        z[j] = cost[j] - sum(T[i][j] for i in range(m))
    while True:
        enter = next((j for j in range(n + m) if z[j] < 0), None)
        if enter is None:
            break
        ratios = [(T[i][-1] / T[i][enter], i) for i in range(m) if T[i][enter] > 0]
        if not ratios:
            return False  # unbounded phase-1: cannot happen, defensive
        _, leave = min(ratios, key=lambda p: (p[0], basis[p[1]]))
        piv = T[leave][enter]
        T[leave] = [x / piv for x in T[leave]]
        for i in range(m):
            if i != leave and T[i][enter] != 0:
                f = T[i][enter]
                T[i] = [a - f * c for a, c in zip(T[i], T[leave])]
        f = z[enter]
        z = [a - f * c for a, c in zip(z, T[leave])]
        basis[leave] = enter
    objective = -z[-1]
    return objective == 0


def point_in_hull(point, points) -> bool:
    """Exact: is `point` a convex combination of `points`?"""
    d = len(point)
    cols = list(points)
    A = [[Fraction(p[i]) for p in cols] for i in range(d)]
    A.append([Fraction(1)] * len(cols))
    b = [Fraction(x) for x in point] + [Fraction(1)]
    return _phase_one_simplex(A, b)


def count_lattice_points_in_dilate(vertices, k: int) -> int:
    """Number of lattice points of k*P, brute force with exact LP membership."""
    d = len(vertices[0])
    scaled = [tuple(Fraction(x) * k for x in v) for v in vertices]
    lo = [min(v[i] for v in scaled) for i in range(d)]
    hi = [max(v[i] for v in scaled) for i in range(d)]
    ranges = [range(int(lo[i]), int(hi[i]) + 1) for i in range(d)]
    count = 0
    for z in itertools.product(*ranges):
        if point_in_hull(z, scaled):
            count += 1
    return count


def ehrhart_normalized_volume(vertices) -> Fraction:
    """d! times the leading Ehrhart coefficient, from d+1 dilation counts."""
    d = len(vertices[0])
    counts = [count_lattice_points_in_dilate(vertices, k) for k in range(1, d + 2)]
    # solve for the polynomial through (k, counts) exactly, Newton form
    xs = list(range(1, d + 2))
    coef = [Fraction(c) for c in counts]
    for j in range(1, d + 1):
        for i in range(d, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    lead = coef[d]  # leading monomial coefficient = volume
    fact = 1
    for t in range(2, d + 1):
        fact *= t
    return lead * fact


def simple_cycles_edge_sets(graph_edges, num_vertices):
    """All simple cycles of an undirected graph as frozensets of edge indices.

    Brute force over edge subsets; fine for the handful of small test graphs.
    """
    m = len(graph_edges)
    cycles = []
    for size in range(3, m + 1):
        for subset in itertools.combinations(range(m), size):
            # every vertex in the sub-multigraph must have degree exactly 2
            deg = {}
            for e in subset:
                for v in graph_edges[e]:
                    deg[v] = deg.get(v, 0) + 1
            if any(v != 2 for v in deg.values()):
                continue
            # connected on its support
            verts = list(deg)
            adj = {v: set() for v in verts}
            for e in subset:
                a, b = graph_edges[e]
                adj[a].add(b)
                adj[b].add(a)
            seen = {verts[0]}
            stack = [verts[0]]
            while stack:
                v = stack.pop()
                for w in adj[v]:
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            if len(seen) == len(verts):
                cycles.append(frozenset(subset))
    return set(cycles)
