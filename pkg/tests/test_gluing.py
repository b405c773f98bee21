import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from indefembed import (
    GluingOptions,
    Signature,
    build_complex,
    build_star_complex,
    closed_star,
    gram_form,
    inner,
    iota,
    metric_from_lengths,
    metric_from_squares,
    partition_vertices,
    signed_sqrt,
    solve_gluing,
    verify,
)
from indefembed.complex import num_classes
from indefembed.families import random_complex
from indefembed.gluing import same_class_pairs
from indefembed.gram import inertia


def path(n):
    return build_complex([[i, i + 1] for i in range(n - 1)])


@pytest.mark.parametrize("c", [build_complex([[0, 1, 2]]), path(3)], ids=["triangle", "path"])
def test_partition_small(c):
    part = partition_vertices(c)
    assert part.size == 7
    assert part.classes[:3] == ((0,), (1,), (2,))
    assert part.mu == (1, 1, 1)


def test_partition_single_vertex():
    part = partition_vertices(build_complex([[0]]))
    assert part.size == 1 and part.classes == ((0,),)


def test_partition_reuses_far_classes():
    part = partition_vertices(path(9))
    assert part.class_of[0] == part.class_of[4]
    assert part.mu[4] == 2


@given(st.integers(0, 2**32 - 1))
def test_partition_invariants(seed):
    c = random_complex(np.random.default_rng(seed), max_vertices=16, max_degree=5)
    part = partition_vertices(c)
    assert part.size == num_classes(c.max_degree)
    assert sorted(v for k in part.classes for v in k) == list(range(c.vertex_count))
    for u, v in same_class_pairs(part):
        assert u not in closed_star(c, v, 3).vertices
    for k in part.classes:
        assert sorted(part.mu[v] for v in k) == list(range(1, len(k) + 1))


def test_figure_one_star(figure1):
    c, m, g = figure1
    sv = build_star_complex(c, m, 0)
    labels = sv.complex.vertex_labels
    assert labels == ("v", "A", "C", "E", "F", "*")
    assert sv.apex == 5
    ghat = {
        (labels[a], labels[b]): float(signed_sqrt(val))
        for (a, b), val in zip(sv.complex.edges, sv.metric.squared)
    }
    expected = {
        ("v", "A"): math.sqrt(2), ("v", "C"): 1 / math.sqrt(2), ("v", "E"): 1.0,
        ("v", "F"): 3 / math.sqrt(2),
        ("A", "C"): 0.0, ("C", "E"): 0.0, ("E", "F"): 0.0,
        ("A", "*"): 0.0, ("C", "*"): 0.0, ("E", "*"): 0.0,
    }
    assert ghat.keys() == expected.keys()
    for key, val in expected.items():
        assert ghat[key] == pytest.approx(val, rel=2.3e-16, abs=0), key
    # the stored squares are exactly half of the parent's
    for (a, b), val in zip(sv.complex.edges, sv.metric.squared):
        if a == 0:
            u, w = sv.vertices[a], sv.vertices[b]
            assert val == m.squared[c.edge_id(u, w)] / 2
    assert not sv.complex.has_edge(0, sv.apex)
    assert sv.complex.dimension <= c.dimension and sv.complex.max_degree <= c.max_degree


def test_path_star_has_no_apex():
    c = path(3)
    m = metric_from_lengths(c, [2.0, -4.0])
    sv = build_star_complex(c, m, 1)
    assert sv.apex is None
    np.testing.assert_array_equal(sv.metric.squared, [2.0, -8.0])
    end = build_star_complex(c, m, 0)
    assert end.apex == 2 and end.complex.has_edge(1, 2)


def test_isolated_vertex_star():
    c = build_complex([[0, 1]], vertex_count=3)
    sv = build_star_complex(c, metric_from_lengths(c, [1.0]), 2)
    assert sv.apex is None and sv.complex.vertex_count == 1 and sv.complex.num_edges == 0


def test_iota_examples():
    x = np.array([3.0, 4.0])
    np.testing.assert_array_equal(iota(x, 1), [3, 4, 0, 0])
    y = iota(x, 2)
    np.testing.assert_allclose(y, np.array([3, 4, 3, 4]) / math.sqrt(2), rtol=1e-15)
    s2 = Signature.minkowski(1, 1)
    assert inner(y, y, s2 + s2) == pytest.approx(-7.0, abs=1e-12)
    with pytest.raises(ValueError):
        iota(x, 0)


def test_iota_images_meet_only_at_zero():
    rng = np.random.default_rng(0)
    a = iota(rng.normal(size=(6, 3)), 1)
    b = iota(rng.normal(size=(6, 3)), 2)
    ra, rb = np.linalg.matrix_rank(a), np.linalg.matrix_rank(b)
    assert np.linalg.matrix_rank(np.vstack([a, b])) == ra + rb


@given(st.integers(0, 2**32 - 1), st.integers(1, 9))
def test_iota_preserves_inner(seed, mu):
    rng = np.random.default_rng(seed)
    sig = Signature((1, -1, 1, -1, -1))
    x, y = rng.normal(size=5) * 10, rng.normal(size=5) * 10
    assert abs(inner(iota(x, mu), iota(y, mu), sig + sig) - inner(x, y, sig)) <= 1e-12 * max(
        1.0, abs(inner(x, y, sig))
    ) * 100


def test_triangle_dimension_and_contributions(hollow_triangle):
    m = metric_from_lengths(hollow_triangle, [1.0, 1.0, 100.0])
    res = solve_gluing(hollow_triangle, m)
    assert res.q == 3 and res.partition.size == 7
    assert res.p == 42 and res.map.signature.q == 42
    assert verify(res.map, m, 1e-8).passed
    contrib = res.contributions()
    for k, g2 in enumerate(m.squared):
        col = contrib[:, k]
        nonzero = np.abs(col) > 1e-8 * max(1, abs(g2))
        assert nonzero.sum() == 2
        np.testing.assert_allclose(col[nonzero], g2 / 2, atol=1e-8 * max(1, abs(g2)))


def test_single_edge():
    c = build_complex([[0, 1]])
    m = metric_from_lengths(c, [5.0])
    res = solve_gluing(c, m)
    contrib = res.contributions()[:, 0]
    np.testing.assert_allclose(np.sort(contrib)[-2:], [12.5, 12.5], atol=1e-9)
    assert abs(contrib.sum() - 25.0) <= 1e-9


def test_size_independent_dimension():
    ps = set()
    for n in (4, 7, 12):
        c = path(n)
        m = metric_from_squares(c, np.linspace(-3, 3, c.num_edges))
        res = solve_gluing(c, m)
        assert verify(res.map, m, 1e-8).passed
        ps.add(res.p)
    assert ps == {2 * 3 * 7}


def test_same_class_stars_are_separate():
    c = path(10)
    m = metric_from_squares(c, np.arange(1.0, 10.0) * (-1) ** np.arange(9))
    res = solve_gluing(c, m)
    blocks = res.class_blocks()
    for i, members in enumerate(res.partition.classes):
        images = []
        for v in members:
            sv = res.stars[v]
            rows = blocks[i][list(sv.vertices)]
            images.append(rows[np.any(rows != 0, axis=1)])
        # vertices outside every star of the class sit at the origin
        owned = set().union(*(res.stars[v].vertices for v in members))
        outside = [u for u in range(c.vertex_count) if u not in owned]
        assert not blocks[i][outside].any()
        for a in range(len(images)):
            for b in range(a + 1, len(images)):
                ra = np.linalg.matrix_rank(images[a])
                rb = np.linalg.matrix_rank(images[b])
                assert np.linalg.matrix_rank(np.vstack([images[a], images[b]])) == ra + rb


@pytest.mark.parametrize("mode, width", [("local_embedding", 2), ("immersion", 2)])
def test_weaker_modes_skip_doubling(k5, mode, width):
    m = metric_from_lengths(k5, np.ones(10))
    res = solve_gluing(k5, m, GluingOptions(mode=mode))
    assert res.block_width == width * res.q
    assert res.p == res.q * 53
    rep = verify(res.map, m, 1e-8)
    assert rep.isometric and rep.is_immersion


def test_solver_gram_matches_metric(triangle):
    m = metric_from_squares(triangle, [2.0, -1.0, 0.5])
    res = solve_gluing(triangle, m)
    sig = res.map.signature.array()
    pts = res.map.coords
    diff = pts[1:] - pts[0]
    np.testing.assert_allclose((diff * sig) @ diff.T, gram_form(triangle, m, (0, 1, 2)).matrix, atol=1e-6)
    assert inertia(gram_form(triangle, m, (0, 1, 2))).n_zero == 0
