import numpy as np
import pytest

import lissvar as lv
from lissvar.errors import (
    DegenerateJacobian,
    NonIntegerShift,
    NotUnivariate,
    ZeroCoordinate,
)
from lissvar.polynomials import PolynomialDense

from conftest import (
    delta_triangle_cos,
    delta_triangle_sin,
    numeric_gradient_2d,
)

DELTA_A12_SIN = {(4,): 256, (2,): -2367, (0,): 3375}
DELTA_A12_COS = {(3,): 16, (2,): -31, (1,): -84, (0,): 99}
DELTA_CIRCLE = {(2,): 1, (0,): -2}


def test_toric_jacobian_at_one(c3_sin):
    J = lv.toric_jacobian(c3_sin, [1.0, 1.0])
    A = np.array(c3_sin.A.rows, float)
    expected_det = np.linalg.det(-1j * A @ A.T)
    assert abs(np.linalg.det(J) - expected_det) < 1e-12
    assert abs(expected_det) > 0.5


def test_toric_jacobian_symmetric_and_consistent(c3_sin, circle):
    rng = np.random.default_rng(31)
    for model in (c3_sin, circle):
        d = model.dim
        A = np.array(model.A.rows, float)
        for _ in range(10):
            v = np.exp(1j * rng.uniform(-np.pi, np.pi, d)) * rng.uniform(0.5, 1.5, d)
            J = lv.toric_jacobian(model, v)
            assert np.max(np.abs(J - J.T)) < 1e-12
            # Euler derivative check: J[j,k] = d/ds (A psi)(v * e^(s e_j))_k at 0
            h = 1e-6
            for j in range(d):
                scale_up = v.copy()
                scale_up[j] *= np.exp(h)
                scale_dn = v.copy()
                scale_dn[j] *= np.exp(-h)
                fd = (A @ lv.torus_param_point(model, scale_up)
                      - A @ lv.torus_param_point(model, scale_dn)) / (2 * h)
                assert np.max(np.abs(J[j] - fd)) < 1e-7


def test_toric_jacobian_zero_coordinate(circle):
    with pytest.raises(ZeroCoordinate):
        lv.toric_jacobian(circle, [0.0])


def test_exact_discriminants_paper_values(circle, a12_sin):
    assert lv.exact_discriminant_1d(a12_sin).delta.terms == DELTA_A12_SIN
    a12_cos = lv.build_model([[1, 2]], [0, 0])
    assert lv.exact_discriminant_1d(a12_cos).delta.terms == DELTA_A12_COS
    assert lv.exact_discriminant_1d(circle).delta.terms == DELTA_CIRCLE


def test_exact_discriminant_normalization_and_bound():
    from math import gcd

    for row, shifts in [((1, 1), (0, 1)), ((1, 2), (0, 0)), ((1, 2), (1, 1)),
                        ((1, 3), (1, 1)), ((2, 3), (1, 1)), ((1, 3), (0, 0)),
                        ((2, 3), (0, 0))]:
        model = lv.build_model([list(row)], list(shifts))
        res = lv.exact_discriminant_1d(model)
        coeffs = list(res.delta.terms.values())
        g = 0
        for c in coeffs:
            g = gcd(g, c)
        assert g == 1  # content one
        lead = res.delta.terms[max(res.delta.terms)]
        assert lead > 0
        assert res.delta.total_degree() <= res.degree_bound
        # squarefree: no repeated roots numerically
        degree = res.delta.total_degree()
        poly = np.zeros(degree + 1)
        for (k,), c in res.delta.terms.items():
            poly[degree - k] = c
        roots = np.roots(poly)
        for i in range(len(roots)):
            for j in range(i + 1, len(roots)):
                assert abs(roots[i] - roots[j]) > 1e-6


def test_exact_discriminant_roots_are_branch_points(circle):
    res = lv.exact_discriminant_1d(circle)
    roots = sorted(np.roots([1, 0, -2]).real)
    assert np.allclose(roots, [-np.sqrt(2), np.sqrt(2)], atol=1e-12)
    cloud = lv.sample_discriminant(circle, num_samples=40, seed=5)
    for s in cloud.samples:
        assert min(abs(s.omega[0] - r) for r in roots) < 1e-8


def test_exact_discriminant_guards(c3_sin):
    with pytest.raises(NotUnivariate):
        lv.exact_discriminant_1d(c3_sin)
    half = lv.build_model([[1, 2]], [0, 0.5])
    with pytest.raises(NonIntegerShift):
        lv.exact_discriminant_1d(half)


def test_degenerate_phases_detected():
    # opposite quarter shifts cancel the ramification identically
    model = lv.build_model([[1, 1]], [1, -1])
    with pytest.raises(DegenerateJacobian):
        lv.sample_discriminant(model, num_samples=10)
    with pytest.raises(DegenerateJacobian):
        lv.exact_discriminant_1d(model)


def test_sampled_cloud_invariants(c3_sin):
    cloud = lv.sample_discriminant(c3_sin, num_samples=80, seed=3)
    assert cloud.kind == "SampledCloud"
    assert not cloud.empty_caveat
    assert len(cloud.samples) > 20
    A = np.array(c3_sin.A.rows, float)
    for s in cloud.samples:
        assert s.residual < 1e-8
        x = lv.torus_param_point(c3_sin, np.exp(1j * s.witness_theta))
        assert np.max(np.abs(x.imag)) < 1e-10
        assert np.max(np.abs(A @ x.real - s.omega)) < 1e-10
        assert abs(np.linalg.det(lv.toric_jacobian(
            c3_sin, np.exp(1j * s.witness_theta)))) < 1e-8


def test_sampled_clouds_lie_on_displayed_curves(c3_cos, c3_sin):
    for model, curve in ((c3_cos, delta_triangle_cos), (c3_sin, delta_triangle_sin)):
        cloud = lv.sample_discriminant(model, num_samples=150, seed=11)
        assert len(cloud.samples) > 50
        for s in cloud.samples:
            w1, w2 = s.omega
            value = abs(curve(w1, w2))
            grad = numeric_gradient_2d(curve, w1, w2)
            assert value / max(grad, 1e-9) < 1e-6


def test_real_count_profile_a12_sin(a12_sin):
    profile = lv.real_count_profile(a12_sin, [0.0], [3.0], 25)
    counts = [c for _, c in profile]
    # weakly decreasing from 4 to 0
    assert counts[0] == 4 and counts[-1] == 0
    assert all(a >= b for a, b in zip(counts, counts[1:]))
    # count changes only near the positive roots of the discriminant
    roots = np.roots([256, 0, -2367, 0, 3375])
    positive = sorted(r.real for r in roots if abs(r.imag) < 1e-12 and r.real > 0)
    grid = 3.0 * np.arange(25) / 24.0
    for (s0, c0), (s1, c1) in zip(profile, profile[1:]):
        if c0 != c1:
            lo, hi = 3.0 * s0, 3.0 * s1
            assert any(lo - 1e-9 <= r <= hi + 1e-9 for r in positive)
    # constant inside each chamber
    boundaries = [0.0] + positive + [3.0]
    for lo, hi in zip(boundaries, boundaries[1:]):
        inside = [c for (s, c) in profile if lo + 0.15 < 3.0 * s < hi - 0.15]
        assert len(set(inside)) <= 1


def test_real_count_profile_circle(circle):
    profile = lv.real_count_profile(circle, [0.0], [2.0], 21)
    counts = [c for _, c in profile]
    assert counts[0] == 2 and counts[-1] == 0
    drops = [(s, a, b) for (s, a), (_, b) in zip(profile, profile[1:]) if a != b]
    assert len(drops) == 1
    s_drop = drops[0][0]
    assert abs(2.0 * s_drop - np.sqrt(2)) < 0.15
    # tangency: the count changes by an even amount
    assert (drops[0][1] - drops[0][2]) % 2 == 0


def test_chamber_counts_change_by_even_amounts(a12_sin):
    # compare counts at chamber midpoints across each real discriminant root
    a12_cos = lv.build_model([[1, 2]], [0, 0])
    for model in (a12_sin, a12_cos):
        delta = lv.exact_discriminant_1d(model).delta
        degree = delta.total_degree()
        poly = np.zeros(degree + 1)
        for (k,), c in delta.terms.items():
            poly[degree - k] = c
        roots = sorted(r.real for r in np.roots(poly) if abs(r.imag) < 1e-10)
        edges = [roots[0] - 1.0] + roots + [roots[-1] + 1.0]
        mids = [(a + b) / 2 for a, b in zip(edges, edges[1:])]
        counts = [len(lv.find_equilibria(model, [m])) for m in mids]
        for a, b in zip(counts, counts[1:]):
            # every real root is a genuine tangency: nonzero even change
            assert a != b
            assert (a - b) % 2 == 0


def test_check_sign_symmetry(a12_sin):
    assert lv.check_sign_symmetry(lv.exact_discriminant_1d(a12_sin).delta) == 1
    assert lv.check_sign_symmetry(PolynomialDense(1, DELTA_CIRCLE)) == 1
    assert lv.check_sign_symmetry(PolynomialDense(1, {(3,): 1, (1,): 1})) == -1
    assert lv.check_sign_symmetry(PolynomialDense(1, {(2,): 1, (1,): 1})) is None


def test_sign_symmetry_of_quarter_shift_discriminants():
    for row in [(1, 1), (1, 2), (1, 3), (2, 3)]:
        model = lv.build_model([list(row)], [1, 1])
        delta = lv.exact_discriminant_1d(model).delta
        assert lv.check_sign_symmetry(delta) in (1, -1)


def test_graph_symmetry_triangle(c3_sin):
    cloud = lv.sample_discriminant(c3_sin, num_samples=40, seed=19)
    graph = lv.cycle_graph(3)
    assert len(lv.automorphisms(graph)) == 6
    assert lv.check_graph_symmetry(graph, cloud) < 1e-6


def test_graph_symmetry_path():
    graph = lv.from_edges(3, [(1, 2), (2, 3)])
    reduced = lv.incidence(graph)[1]
    model = lv.build_model(reduced, [1, 1])
    cloud = lv.sample_discriminant(model, num_samples=40, seed=23)
    assert len(cloud.samples) > 5
    assert len(lv.automorphisms(graph)) == 2
    assert lv.check_graph_symmetry(graph, cloud) < 1e-6


def test_graph_symmetry_identity_is_exact(c3_sin):
    cloud = lv.sample_discriminant(c3_sin, num_samples=10, seed=29)
    # restricting to the identity permutation polishes in place
    from lissvar.discriminant import _polish_branch_point
    from lissvar.discriminant import ramification_function

    A = np.array(c3_sin.A.rows, float)
    for s in cloud.samples:
        polished = _polish_branch_point(c3_sin, s.omega, s.witness_theta)
        dist = np.max(np.abs(A @ lv.param_point(c3_sin, polished) - s.omega))
        assert dist < 1e-10
        assert abs(ramification_function(c3_sin, polished)) < 1e-9


def test_graph_symmetry_requires_matching_model(c3_sin):
    cloud = lv.sample_discriminant(c3_sin, num_samples=5, seed=1)
    with pytest.raises(ValueError):
        lv.check_graph_symmetry(lv.cycle_graph(4), cloud)
