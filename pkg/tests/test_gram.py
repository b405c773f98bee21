import itertools
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from indefembed import (
    build_complex,
    classify,
    complete_complex,
    gram_form,
    inertia,
    metric_from_lengths,
    metric_from_squares,
    obstruction,
    segment_energy,
)
from indefembed.errors import BadBarycentric, CliqueCapTooSmall, UnknownSimplex
from indefembed.gram import MetricClass
from oracles import euclidean_by_cayley_menger


def unit(c):
    return metric_from_lengths(c, np.ones(c.num_edges))


def test_unit_triangle_form(triangle):
    G = gram_form(triangle, unit(triangle), (0, 1, 2))
    np.testing.assert_array_equal(G.matrix, [[1.0, 0.5], [0.5, 1.0]])
    assert G.base_vertex == 0 and G.k == 2
    assert inertia(G).as_tuple() == (2, 0, 0)


def test_k5_four_point_form(k5):
    c = complete_complex(5, 4)  # solid 4-simplex carries the same edges
    G = gram_form(c, unit(c), range(5))
    expected = np.full((4, 4), 0.5) + 0.5 * np.eye(4)
    np.testing.assert_array_equal(G.matrix, expected)
    np.testing.assert_allclose(np.linalg.eigvalsh(G.matrix), [0.5, 0.5, 0.5, 2.5], atol=1e-12)
    assert inertia(G).as_tuple() == (4, 0, 0)


def test_negative_edge_form():
    c = build_complex([[0, 1]])
    G = gram_form(c, metric_from_lengths(c, [-3.0]), (0, 1))
    np.testing.assert_array_equal(G.matrix, [[-9.0]])


def test_gram_form_errors(k5):
    with pytest.raises(UnknownSimplex):
        gram_form(k5, unit(k5), (0, 1, 2))
    with pytest.raises(UnknownSimplex):
        gram_form(k5, unit(k5), (0,))


def test_segment_energy_examples(triangle):
    G = gram_form(triangle, unit(triangle), (0, 1, 2))
    a = [0.2, 0.3, 0.5]
    assert segment_energy(G, a, a) == 0.0
    assert segment_energy(G, [0, 0, 1], [1, 0, 0]) == 1.0
    assert segment_energy(G, [1, 0, 0], [0, 0.5, 0.5]) == pytest.approx(0.75, abs=1e-15)
    with pytest.raises(BadBarycentric):
        segment_energy(G, [1, 0], [0, 1])
    with pytest.raises(BadBarycentric):
        segment_energy(G, [1, 0, 0.5], [0, 1, 0])


def test_inertia_examples():
    assert inertia(np.array([[0.0]])).as_tuple() == (0, 1, 0)
    assert inertia(np.diag([1.0, -2.0, 0.0])).as_tuple() == (1, 1, 1)


def test_classify_examples(triangle):
    assert classify(triangle, unit(triangle)).kind is MetricClass.EUCLIDEAN
    m = metric_from_lengths(triangle, [1.0, 1.0, 100.0])
    G = gram_form(triangle, m, (0, 1, 2))
    np.testing.assert_array_equal(G.matrix, [[1.0, -4999.0], [-4999.0, 1.0]])
    assert classify(triangle, m).kind is MetricClass.MINKOWSKI
    z = metric_from_lengths(triangle, [1.0, 0.0, 1.0])
    assert classify(triangle, z).kind is MetricClass.DEGENERATE


def test_obstruction_examples(k5):
    ob = obstruction(k5, unit(k5))
    assert (ob.p_min, ob.q_min) == (4, 0)
    assert len(ob.witness_plus) == 5
    neg = metric_from_lengths(k5, -np.ones(10))
    assert (obstruction(k5, neg).p_min, obstruction(k5, neg).q_min) == (0, 4)
    edge = build_complex([[0, 1]])
    ob = obstruction(edge, unit(edge))
    assert (ob.p_min, ob.q_min) == (1, 0)
    # simplices only: single edges see one positive direction
    ob = obstruction(k5, unit(k5), cliques=False)
    assert (ob.p_min, ob.q_min) == (1, 0)


def test_obstruction_cap(triangle):
    with pytest.raises(CliqueCapTooSmall):
        obstruction(triangle, unit(triangle), clique_cap=2)
    c = complete_complex(6)
    ob = obstruction(c, unit(c), clique_cap=4)
    assert ob.truncated and ob.p_min == 3


form_seeds = st.integers(0, 2**32 - 1)


def random_simplex_metric(seed, k):
    rng = np.random.default_rng(seed)
    c = complete_complex(k + 1, k)
    return c, metric_from_squares(c, rng.uniform(-10, 10, c.num_edges))


@given(form_seeds, st.integers(1, 4))
def test_inertia_permutation_invariant(seed, k):
    c, m = random_simplex_metric(seed, k)
    base = inertia(gram_form(c, m, range(k + 1))).as_tuple()
    for perm in itertools.permutations(range(k + 1)):
        assert inertia(gram_form(c, m, range(k + 1), order=perm)).as_tuple() == base


@given(form_seeds, st.integers(1, 3))
def test_energy_independent_of_base(seed, k):
    c, m = random_simplex_metric(seed, k)
    rng = np.random.default_rng(seed + 1)
    a, b = rng.dirichlet(np.ones(k + 1)), rng.dirichlet(np.ones(k + 1))
    ref = segment_energy(gram_form(c, m, range(k + 1)), a, b)
    for perm in itertools.permutations(range(k + 1)):
        p = list(perm)
        e = segment_energy(gram_form(c, m, range(k + 1), order=p), a[p], b[p])
        assert e == pytest.approx(ref, abs=1e-9 * max(1.0, abs(ref)))


@given(form_seeds, st.integers(1, 3))
def test_edge_energy_is_g2(seed, k):
    c, m = random_simplex_metric(seed, k)
    G = gram_form(c, m, range(k + 1))
    eye = np.eye(k + 1)
    for (i, j), g2 in zip(c.edges, m.squared):
        assert segment_energy(G, eye[i], eye[j]) == pytest.approx(g2, abs=1e-12 * max(1, abs(g2)))


@given(form_seeds, st.integers(1, 3))
def test_classify_matches_cayley_menger(seed, k):
    rng = np.random.default_rng(seed)
    c = complete_complex(k + 1, k)
    lengths = rng.uniform(0.1, 2.0, c.num_edges)
    m = metric_from_lengths(c, lengths)
    sq = np.zeros((k + 1, k + 1))
    for (i, j), v in zip(c.edges, m.squared):
        sq[i, j] = sq[j, i] = v
    expect = euclidean_by_cayley_menger(sq)
    assert (classify(c, m).kind is MetricClass.EUCLIDEAN) == expect


def test_right_triangle_is_euclidean_and_flat_is_degenerate(triangle):
    ok = metric_from_lengths(triangle, [3.0, 4.0, 5.0])
    assert classify(triangle, ok).kind is MetricClass.EUCLIDEAN
    flat = metric_from_lengths(triangle, [1.0, 2.0, 3.0])  # collinear
    assert classify(triangle, flat).kind is MetricClass.DEGENERATE
    assert math.isclose(classify(triangle, flat).margin, 0.0, abs_tol=1e-9)
