import io

import pytest

from domgame.graph import (Graph, GraphFormatError, all_isolate_free, c_step, complete, cycle,
                           format_edge_list, generate, hat, load_graph, parse_edge_list,
                           parse_family, path, random_isolate_free, star, tilde)


def test_parse_round_trip():
    g = parse_edge_list("# comment\n3 2\n0 1\n2 1\n")
    assert g.n == 3 and g.edges == ((0, 1), (1, 2))
    assert parse_edge_list(format_edge_list(g)) == g
    assert load_graph(io.StringIO("2 1\n0 1\n")) == path(2)
    assert load_graph(b"2 1\n1 0\n") == path(2)


@pytest.mark.parametrize("text, fragment", [
    ("3 1\n0 0\n", "self-loop"),
    ("3 2\n0 1\n1 0\n", "duplicate"),
    ("3 1\n0 5\n", "out of range"),
    ("3 2\n0 1\n", "declares 2"),
    ("", "header"),
    ("3 1\n0 x\n", "non-integer"),
])
def test_parse_errors(text, fragment):
    with pytest.raises(GraphFormatError, match=fragment):
        parse_edge_list(text)


def test_error_carries_line_number():
    with pytest.raises(GraphFormatError) as e:
        parse_edge_list("3 2\n0 1\n1 1\n")
    assert e.value.line == 3


def test_basic_families():
    assert path(5).m == 4 and cycle(5).m == 5 and complete(4).m == 6 and star(3).m == 3
    assert cycle(4).deg == (2, 2, 2, 2)
    with pytest.raises(ValueError):
        cycle(2)


def test_labeled_isolate_free_counts():
    # number of labeled graphs without isolated vertices: 0, 1, 4, 41, 768, 27449
    assert [sum(1 for _ in all_isolate_free(n)) for n in range(1, 6)] == [0, 1, 4, 41, 768]


def test_labeled_isolate_free_count_six():
    assert sum(1 for _ in all_isolate_free(6)) == 27449


def test_hat_shape():
    g = hat(complete(2))
    assert g.n == 10 and g.m == 1 + 8
    leaves = [v for v in range(g.n) if g.deg[v] == 1]
    assert len(leaves) == 4
    assert all(g.deg[g.adj[lf][0]] == 2 for lf in leaves)


def test_c_step_and_tilde():
    h = hat(complete(2))
    c = c_step(h, 2)  # vertex 2 is a dependent parent of vertex 0
    assert c.n == h.n + 5
    t = tilde(h, 0, 2)
    assert t.n == 11 and t.deg[10] == 1 and t.has_edge(0, 10)
    with pytest.raises(ValueError):
        tilde(h, 5, 2)
    with pytest.raises(ValueError):
        c_step(h, 0)


def test_family_specs():
    assert generate(parse_family("path:5")) == path(5)
    assert generate(parse_family("hat(complete:2)")) == hat(complete(2))
    assert generate(parse_family("tilde(hat(K:2),1)")).n == 11
    assert generate(parse_family("c_step(hat(complete:2),2)")).n == 15
    g = generate(parse_family("random:9:0.3:4"))
    assert g == random_isolate_free(9, 0.3, 4) and g.isolate_free()
    with pytest.raises(ValueError):
        parse_family("nosuch:3")


def test_random_is_deterministic_and_isolate_free():
    for seed in range(20):
        g = random_isolate_free(10, 0.1, seed)
        assert g.isolate_free()
        assert g == random_isolate_free(10, 0.1, seed)


def test_graph_rejects_bad_edges():
    with pytest.raises(ValueError):
        Graph(2, [(0, 0)])
    with pytest.raises(ValueError):
        Graph(2, [(0, 1), (1, 0)])
