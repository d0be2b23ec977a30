import numpy as np
import pytest

from rlsa import (
    from_edge_list,
    generate_ba,
    generate_er,
    parse_instance,
    read_instance,
    write_instance,
)
from rlsa.graph import detect_format

from oracles import triangle


# -- construction ------------------------------------------------------------

def test_triangle_canonical_form():
    g = triangle()
    assert g.num_nodes == 3
    assert g.num_edges == 3
    assert np.array_equal(g.offsets, [0, 2, 4, 6])
    assert np.array_equal(g.neighbors, [1, 2, 0, 2, 0, 1])
    assert np.array_equal(g.degrees(), [2, 2, 2])


def test_duplicate_pairs_collapse():
    g = from_edge_list(2, [(0, 1), (1, 0)])
    assert g.num_edges == 1
    assert np.array_equal(g.neighbors_of(0), [1])


def test_input_order_irrelevant():
    a = from_edge_list(4, [(2, 3), (0, 1), (1, 3)])
    b = from_edge_list(4, [(3, 1), (1, 0), (3, 2)])
    assert a == b


def test_self_loop_rejected():
    with pytest.raises(ValueError, match=r"self loop \(0, 0\)"):
        from_edge_list(3, [(0, 0)])


def test_out_of_range_rejected():
    with pytest.raises(ValueError, match="out of range"):
        from_edge_list(3, [(0, 3)])
    with pytest.raises(ValueError, match="out of range"):
        from_edge_list(3, [(-1, 2)])


def test_zero_node_graph():
    g = from_edge_list(0, [])
    assert g.num_nodes == 0
    assert g.num_edges == 0


# -- Erdos-Renyi -------------------------------------------------------------

def test_er_forced_inclusion_and_exclusion():
    assert generate_er(2, 1.0, seed=5).num_edges == 1
    assert generate_er(10, 0.0, seed=5).num_edges == 0


def test_er_probability_range_checked():
    with pytest.raises(ValueError):
        generate_er(5, -0.1, seed=0)
    with pytest.raises(ValueError):
        generate_er(5, 1.5, seed=0)


def test_er_deterministic():
    a = generate_er(50, 0.2, seed=7)
    b = generate_er(50, 0.2, seed=7)
    assert a == b
    assert a != generate_er(50, 0.2, seed=8)


def test_er_mean_edges_matches_binomial_expectation():
    # n=700, p=0.15 over 100 seeds: the mean edge count lands within 2% of
    # the binomial expectation p * n * (n - 1) / 2.
    n, p = 700, 0.15
    counts = [generate_er(n, p, seed=s).num_edges for s in range(100)]
    expected = p * n * (n - 1) / 2
    assert abs(np.mean(counts) - expected) < 0.02 * expected


# -- Barabasi-Albert ---------------------------------------------------------

def test_ba_edge_count_closed_form():
    assert generate_ba(5, 1, seed=0).num_edges == 4
    assert generate_ba(2, 1, seed=0).num_edges == 1
    assert generate_ba(300, 4, seed=3).num_edges == 4 * (300 - 4)


def test_ba_m1_is_a_tree():
    g = generate_ba(5, 1, seed=11)
    assert g.num_edges == 4
    # connected: BFS from 0 reaches everything
    seen = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for u in frontier:
            for v in g.neighbors_of(u):
                if int(v) not in seen:
                    seen.add(int(v))
                    nxt.append(int(v))
        frontier = nxt
    assert seen == set(range(5))


def test_ba_parameter_validation():
    with pytest.raises(ValueError):
        generate_ba(5, 0, seed=0)
    with pytest.raises(ValueError):
        generate_ba(5, 5, seed=0)


def test_ba_deterministic():
    assert generate_ba(40, 2, seed=9) == generate_ba(40, 2, seed=9)


def test_degree_sum_is_twice_edge_count():
    rng = np.random.default_rng(1)
    for _ in range(10):
        n = int(rng.integers(2, 40))
        g = generate_er(n, float(rng.uniform(0, 1)), seed=int(rng.integers(1000)))
        assert int(g.degrees().sum()) == 2 * g.num_edges


# -- parsing and writing -------------------------------------------------------

def test_parse_dimacs_triangle():
    g = parse_instance("c a triangle\np edge 3 3\ne 1 2\ne 2 3\ne 1 3\n", "dimacs")
    assert g == triangle()


def test_parse_edge_list_path():
    g = parse_instance("3 2\n0 1\n1 2\n", "edge-list")
    assert g.num_nodes == 3
    assert g.num_edges == 2
    assert np.array_equal(g.neighbors_of(1), [0, 2])


def test_parse_edge_list_comments_and_blanks():
    text = "# instance\n3 1\n\n0 2  # an edge\n"
    g = parse_instance(text, "edge-list")
    assert g.num_edges == 1


def test_parse_dimacs_out_of_range_edge():
    with pytest.raises(ValueError, match="out of range"):
        parse_instance("p edge 3 1\ne 1 4\n", "dimacs")


def test_parse_reports_line_numbers():
    with pytest.raises(ValueError, match="line 2"):
        parse_instance("3 1\n0 x\n", "edge-list")
    with pytest.raises(ValueError, match="line 3"):
        parse_instance("c ok\np edge 3 1\ne 1\n", "dimacs")


def test_parse_dimacs_requires_header():
    with pytest.raises(ValueError, match="p edge"):
        parse_instance("e 1 2\n", "dimacs")
    with pytest.raises(ValueError, match="missing"):
        parse_instance("c nothing here\n", "dimacs")


def test_parse_edge_count_mismatch():
    with pytest.raises(ValueError, match="declares 2 edges"):
        parse_instance("3 2\n0 1\n", "edge-list")


def test_parse_unknown_format():
    with pytest.raises(ValueError, match="unknown instance format"):
        parse_instance("3 0\n", "csv")


def test_write_dimacs_header():
    assert write_instance(triangle(), "dimacs").startswith("p edge 3 3\n")
    assert write_instance(from_edge_list(4, []), "dimacs") == "p edge 4 0\n"


def test_roundtrip_random_graphs():
    rng = np.random.default_rng(4)
    graphs = [generate_ba(50, 2, seed=1)]
    for _ in range(10):
        n = int(rng.integers(2, 60))
        graphs.append(generate_er(n, float(rng.uniform(0, 0.5)), seed=int(rng.integers(1000))))
        if n > 3:
            graphs.append(generate_ba(n, int(rng.integers(1, 3)), seed=int(rng.integers(1000))))
    for g in graphs:
        for fmt in ("edge-list", "dimacs"):
            assert parse_instance(write_instance(g, fmt), fmt) == g


def test_detect_format():
    assert detect_format("c comment\np edge 2 1\ne 1 2\n") == "dimacs"
    assert detect_format("# comment\n2 1\n0 1\n") == "edge-list"


def test_read_instance_sniffs_format(tmp_path):
    d = tmp_path / "g.dimacs"
    d.write_text(write_instance(triangle(), "dimacs"))
    e = tmp_path / "g.txt"
    e.write_text(write_instance(triangle(), "edge-list"))
    assert read_instance(d) == triangle()
    assert read_instance(e) == triangle()
