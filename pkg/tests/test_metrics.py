import numpy as np
import pytest

from commtopo import community_view, from_edges
from commtopo.metrics import (CSV_COLUMNS, METRIC_NAMES, clustering_coefficient, conductance,
                              density, expansion, hub_dominance, max_odf, mean_odf,
                              records_from_csv, records_to_csv, scaled_density, score_community,
                              score_partition, triangle_participation)
from commtopo.partition import Partition

from . import oracles
from .graphs import atlas, barbell, clique, random_graph, ring, set_partitions, star


def view(g, members=None):
    return community_view(g, range(g.n) if members is None else members)


@pytest.mark.parametrize("g,expected", [(clique(3), 1.0), (star(5), 0.4),
                                        (from_edges(3, [(0, 1), (1, 2)]), 2 / 3)])
def test_density(g, expected):
    assert density(view(g)) == pytest.approx(expected, abs=1e-15)


@pytest.mark.parametrize("g,expected", [(clique(3), 3.0), (star(5), 2.0), (clique(5), 5.0)])
def test_scaled_density(g, expected):
    assert scaled_density(view(g)) == pytest.approx(expected, abs=1e-15)


@pytest.mark.parametrize("g,expected", [(star(7), 1.0), (ring(5), 0.5), (ring(6), 0.4)])
def test_hub_dominance(g, expected):
    assert hub_dominance(view(g)) == pytest.approx(expected, abs=1e-15)


def test_small_communities_are_undefined():
    v = view(clique(3), [1])
    assert density(v) is None and scaled_density(v) is None and hub_dominance(v) is None


def k4_minus_edge():
    return from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])


@pytest.mark.parametrize("g,expected", [(clique(4), 1.0), (ring(5), 0.0), (k4_minus_edge(), 0.75)])
def test_clustering_coefficient(g, expected):
    a = oracles.adjacency(g)
    assert oracles.community_metrics(a, range(g.n))["ccf"] == pytest.approx(expected)
    assert clustering_coefficient(view(g), g) == pytest.approx(expected, abs=1e-15)


def test_clustering_coefficient_undefined_without_triples():
    g = from_edges(4, [(0, 1), (2, 3)])
    assert clustering_coefficient(view(g), g) is None


def test_clustering_coefficient_ignores_external_edges():
    # triangle 0-1-2 is cut by the community boundary; only the path 0-1-3 is inside
    g = from_edges(4, [(0, 1), (1, 2), (0, 2), (1, 3)])
    assert clustering_coefficient(view(g, [0, 1, 3]), g) == 0.0


def triangle_with_pendant():
    return from_edges(4, [(0, 1), (1, 2), (0, 2), (2, 3)])


@pytest.mark.parametrize("g,expected", [(star(5), 0.0), (triangle_with_pendant(), 0.75),
                                        (clique(5), 1.0)])
def test_triangle_participation(g, expected):
    a = oracles.adjacency(g)
    assert oracles.community_metrics(a, range(g.n))["tpr"] == expected
    assert triangle_participation(view(g), g) == expected


def test_expansion():
    assert expansion(view(clique(4))) == 0.0
    # 4 members with two edges leaving
    g = from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 5)])
    assert expansion(view(g, [0, 1, 2, 3])) == 0.5
    assert expansion(view(barbell(4), range(4))) == 0.25


def test_conductance():
    assert conductance(view(clique(4))) == 0.0
    assert conductance(view(star(4), [0])) == 1.0
    assert conductance(view(barbell(4), range(4))) == pytest.approx(1 / 13, abs=1e-15)
    g = from_edges(3, [(0, 1)])
    assert conductance(view(g, [2])) is None


def test_odf():
    assert mean_odf(view(clique(4))) == 0.0 and max_odf(view(clique(4))) == 0.0
    # a has degree 2 with one edge leaving, b only links to a
    g = from_edges(3, [(0, 1), (0, 2)])
    v = view(g, [0, 1])
    assert mean_odf(v, g) == 0.25 and max_odf(v, g) == 0.5
    v = view(star(4), [0])
    assert mean_odf(v, g) == 1.0 and max_odf(v, g) == 1.0


def test_odf_of_isolated_node_is_zero():
    g = from_edges(3, [(0, 1)])
    v = view(g, [2])
    assert mean_odf(v, g) == 0.0 and max_odf(v, g) == 0.0


def test_score_barbell_cliques():
    g = barbell(5)
    recs = score_partition(g, Partition([0] * 5 + [1] * 5))
    assert len(recs) == 2
    for r in recs:
        assert r.density == 1.0 and r.ccf == 1.0 and r.hub_dom == 1.0
        assert r.conductance == pytest.approx(1 / 21, abs=1e-15)


def test_size_filter():
    g = barbell(4)
    part = Partition([0, 0, 0, 1, 1, 2, 2, 2])
    assert [r.size for r in score_partition(g, part, min_size=3)] == [3, 3]
    assert len(score_partition(g, part, min_size=1)) == 3


def test_ring_as_one_community():
    (r,) = score_partition(ring(12), Partition(np.zeros(12, dtype=int)))
    assert r.density == pytest.approx(12 / 66, abs=1e-15)
    assert r.hub_dom == pytest.approx(2 / 11, abs=1e-15)
    assert r.ccf == 0.0


def assert_matches_oracle(rec, ref, tol=1e-12):
    assert rec.size == ref["size"]
    for name in METRIC_NAMES:
        got, want = getattr(rec, name), ref[name]
        if want is None:
            assert got is None, name
        else:
            assert got == pytest.approx(want, abs=tol), name


def test_all_metrics_match_oracle_small_graphs():
    """Every partition of every graph on up to 5 nodes, per-operation path."""
    for g in atlas(5):
        a = oracles.adjacency(g)
        for labels in set_partitions(g.n):
            part = Partition(labels)
            for cid, members in enumerate(part.communities):
                assert_matches_oracle(score_community(g, members, cid),
                                      oracles.community_metrics(a, members))


def test_metrics_match_oracle_random_larger_graphs():
    rng = np.random.default_rng(2024)
    for _ in range(1000):
        n = int(rng.integers(8, 25))
        g = random_graph(rng, n, float(rng.uniform(0.05, 0.6)))
        a = oracles.adjacency(g)
        part = Partition(rng.integers(0, int(rng.integers(1, 5)), size=n))
        for rec, members in zip(score_partition(g, part, min_size=1), part.communities):
            assert_matches_oracle(rec, oracles.community_metrics(a, members))


@pytest.mark.parametrize("k", [3, 4, 6, 9])
def test_clique_community_invariants(k):
    g = barbell(k)
    rec = score_partition(g, Partition([0] * k + [1] * k))[0]
    assert rec.density == rec.ccf == rec.tpr == rec.hub_dom == 1.0
    assert rec.sc_den == pytest.approx(k)


def test_record_invariants_on_random_graphs():
    rng = np.random.default_rng(5)
    for _ in range(200):
        n = int(rng.integers(5, 30))
        g = random_graph(rng, n, float(rng.uniform(0.05, 0.5)))
        part = Partition(rng.integers(0, 4, size=n))
        for r in score_partition(g, part, min_size=2):
            assert r.max_odf >= r.mean_odf
            assert (r.max_odf == 0.0) == (r.expansion == 0.0)
            assert r.sc_den == pytest.approx(r.size * r.density, abs=1e-12)
            for name in ("density", "hub_dom", "ccf", "tpr", "conductance", "mean_odf", "max_odf"):
                x = getattr(r, name)
                assert x is None or 0.0 <= x <= 1.0


def test_conductance_drops_when_internal_edge_added():
    g = from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)])
    members = [0, 1, 2, 3]
    before = conductance(view(g, members))
    g2 = from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 3)])
    after = conductance(view(g2, members))
    assert view(g, members).c_S == view(g2, members).c_S
    assert after < before


def test_csv_round_trip(tmp_path):
    g = barbell(4)
    part = Partition([0, 0, 0, 1, 1, 1, 1, 0])
    recs = score_partition(g, part, min_size=1) + score_partition(
        from_edges(4, [(0, 1), (2, 3)]), Partition([0, 0, 1, 1]), min_size=1)
    text = records_to_csv(recs)
    assert text.splitlines()[0] == ",".join(CSV_COLUMNS)
    f = tmp_path / "m.csv"
    f.write_text(text)
    assert records_from_csv(f) == recs


def test_csv_nulls_are_empty_fields():
    g = from_edges(4, [(0, 1), (2, 3)])
    text = records_to_csv(score_partition(g, Partition([0, 0, 1, 1]), min_size=1))
    row = text.splitlines()[1].split(",")
    assert row[CSV_COLUMNS.index("ccf")] == ""
