import io

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from commtopo import (community_view, connected_components, from_edges, load_edge_list,
                      parse_edge_list, write_edge_list)
from commtopo.graph import EdgeListError, edge_list_text

from .graphs import barbell, clique, edgeless, path


def test_triangle_from_text():
    g = parse_edge_list("0 1\n1 2\n2 0\n")
    assert (g.n, g.m) == (3, 3)
    assert [list(a) for a in g.adjacency] == [[1, 2], [0, 2], [0, 1]]


def test_loops_and_duplicates_reported():
    g = parse_edge_list("a b\nb a\na a\n")
    assert (g.n, g.m) == (2, 1)
    assert g.report.self_loops == 1
    assert g.report.duplicates == 1
    assert g.original_ids == ("a", "b")


SNAP_SAMPLE = """# Directed graph (each unordered pair of nodes is saved once): sample.txt
# Nodes: 8 Edges: 10
# FromNodeId\tToNodeId
10\t20
20\t30
30\t10
10\t40
40\t50
50\t60
60\t40
70\t80
80\t70
30\t30
"""


def naive_counts(text):
    nodes, edges = set(), set()
    for line in text.splitlines():
        if not line.strip() or line[0] in "#%":
            continue
        a, b = line.split()[:2]
        nodes.update((a, b))
        if a != b:
            edges.add(frozenset((a, b)))
    return len(nodes), len(edges)


def test_snap_file_matches_naive_parser(tmp_path):
    f = tmp_path / "sample.txt"
    f.write_text(SNAP_SAMPLE)
    g = load_edge_list(f)
    assert (g.n, g.m) == naive_counts(SNAP_SAMPLE) == (8, 8)
    assert g.report.duplicates == 1 and g.report.self_loops == 1


def test_integer_labels_sorted_numerically():
    g = parse_edge_list("10 9\n9 100\n")
    assert g.original_ids == ("9", "10", "100")


def test_weights_ignored_and_counted():
    g = parse_edge_list("% konect\n1 2 0.5 1234\n2 3 1.0\n")
    assert g.m == 2 and g.report.extra_columns == 2
    with pytest.raises(EdgeListError, match="line 2"):
        parse_edge_list("% konect\n1 2 0.5\n", allow_extra_columns=False)


@pytest.mark.parametrize("text,line", [("1 2\n3\n", 2), ("# c\n\nx\n", 3)])
def test_malformed_line_reports_line_number(text, line):
    with pytest.raises(EdgeListError) as exc:
        parse_edge_list(text)
    assert exc.value.line == line


@pytest.mark.parametrize("text", ["", "# only a comment\n\n"])
def test_empty_input_rejected(text):
    with pytest.raises(EdgeListError, match="empty"):
        parse_edge_list(text)


def test_view_of_whole_clique():
    v = community_view(clique(3), [0, 1, 2])
    assert (v.m_S, v.c_S) == (3, 0)


def test_view_on_path():
    v = community_view(path(3), [0, 1])
    assert (v.m_S, v.c_S) == (1, 1)
    assert list(v.d_ext) == [0, 1]


def test_view_of_one_barbell_side():
    v = community_view(barbell(4), range(4))
    assert (v.m_S, v.c_S) == (6, 1)


@pytest.mark.parametrize("members", [[], [0, 7]])
def test_view_rejects_bad_members(members):
    with pytest.raises(ValueError):
        community_view(path(3), members)


def test_components():
    assert connected_components(clique(3)).k == 1
    two = from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    part = connected_components(two)
    assert part.k == 2 and list(part.sizes()) == [3, 3]
    assert list(connected_components(edgeless(4)).assignment) == [0, 1, 2, 3]


def test_graph_invariants_on_random_graph():
    rng = np.random.default_rng(7)
    g = from_edges(40, rng.integers(0, 40, size=(200, 2)))
    for u in range(g.n):
        nb = g.neighbors(u)
        assert np.all(np.diff(nb) > 0) and u not in nb
        for v in nb:
            assert u in g.neighbors(v)
    assert g.degrees.sum() == 2 * g.m


edge_lists = st.lists(st.tuples(st.integers(0, 15), st.integers(0, 15)), min_size=1, max_size=60)


@given(edge_lists)
def test_round_trip(pairs):
    g = from_edges(16, pairs)
    if g.m == 0:
        return
    keep = np.flatnonzero(g.degrees > 0)
    g, _ = g.subgraph(keep)
    again = parse_edge_list(edge_list_text(g))
    assert again.n == g.n
    assert again.same_structure(g)
    assert again.original_ids == g.original_ids


def test_loading_twice_is_identical(tmp_path):
    f = tmp_path / "s.txt"
    f.write_text(SNAP_SAMPLE)
    a, b = load_edge_list(f), load_edge_list(f)
    assert a.indptr.tobytes() == b.indptr.tobytes()
    assert a.indices.tobytes() == b.indices.tobytes()
    assert a.original_ids == b.original_ids


@settings(max_examples=1000, deadline=None)
@given(st.integers(2, 12), st.floats(0.0, 1.0), st.data())
def test_view_identities(n, p, data):
    rng = np.random.default_rng(data.draw(st.integers(0, 2**32 - 1)))
    iu = np.triu_indices(n, 1)
    keep = rng.random(iu[0].size) < p
    g = from_edges(n, np.column_stack([iu[0][keep], iu[1][keep]]))
    members = data.draw(st.sets(st.integers(0, n - 1), min_size=1))
    v = community_view(g, members)
    assert v.d_int.sum() == 2 * v.m_S
    assert v.d_ext.sum() == v.c_S
    assert np.array_equal(v.d_int + v.d_ext, g.degrees[v.nodes])


def test_write_uses_original_labels():
    g = parse_edge_list("x y\ny z\n")
    buf = io.StringIO()
    write_edge_list(g, buf)
    assert buf.getvalue() == "x y\ny z\n"
