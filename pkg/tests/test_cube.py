import itertools
import random

import networkx as nx
import pytest

from fibcube import counting, cube, words


def test_full_cube_shape():
    Q3 = cube.build_graph(3)
    assert Q3.n == 8
    assert cube.edge_count(Q3) == 12
    for d in range(1, 9):
        Q = cube.build_graph(d)
        assert Q.n == 2**d
        assert cube.edge_count(Q) == d * 2 ** (d - 1)


def test_avoidance_graph_vertices():
    G = cube.build_graph(3, "11")
    assert G.vertices == ("000", "001", "010", "100", "101")
    assert cube.edge_count(G) == 5
    assert cube.build_graph(4, "0110").n == 15


def test_vertex_count_matches_counting():
    for f in ("0", "01", "010", "0110", "00110", "010101"):
        for d in range(1, 13):
            if len(f) > 6:
                continue
            G = cube.build_graph(d, f)
            assert G.n == counting.count_avoiders(d, f)


def test_adjacency_is_hamming_one():
    rng = random.Random(21)
    for _ in range(10):
        d = rng.randint(2, 7)
        f = "".join(rng.choice("01") for _ in range(rng.randint(1, d)))
        G = cube.build_graph(d, f)
        for i, row in enumerate(G.neighbors):
            for j in row:
                diff = sum(a != b for a, b in zip(G.vertices[i], G.vertices[j]))
                assert diff == 1
        # no false negatives: any Hamming-1 pair of kept vertices is an edge
        for i, j in itertools.combinations(range(G.n), 2):
            diff = sum(a != b for a, b in zip(G.vertices[i], G.vertices[j]))
            if diff == 1:
                assert j in G.neighbors[i]


def test_build_rejects_bad_dimension():
    with pytest.raises(ValueError):
        cube.build_graph(0)
    with pytest.raises(ValueError):
        cube.build_graph(15)


def test_flip_bit():
    assert cube.flip_bit("000", 2) == "010"
    assert cube.flip_bit("0110", 1) == "1110"
    rng = random.Random(22)
    for _ in range(50):
        w = "".join(rng.choice("01") for _ in range(rng.randint(1, 10)))
        i = rng.randint(1, len(w))
        assert cube.flip_bit(cube.flip_bit(w, i), i) == w
    with pytest.raises(ValueError):
        cube.flip_bit("00", 3)


def test_excluded_sets_staircase():
    es = cube.excluded_sets(5, "0011")
    assert set(es.excluded) == {"00110", "00111", "00011", "10011"}
    assert es.layers is not None
    assert [len(layer) for layer in es.layers] == [2, 2]
    flat = [w for layer in es.layers for w in layer]
    assert sorted(flat) == sorted(es.excluded)
    # layers are pairwise disjoint
    for a, b in itertools.combinations(es.layers, 2):
        assert not (set(a) & set(b))


def test_excluded_sets_staircase_sizes():
    for k in (2, 3):
        for f in ("0" * k + "1" * k, "0" * (k + 1) + "1" * (k - 1)):
            es = cube.excluded_sets(3 * k - 1, f)
            assert es.layers is not None
            assert all(len(layer) == 2 ** (k - 1) for layer in es.layers)
            assert len(es.excluded) == k * 2 ** (k - 1)


def test_excluded_sets_length_d_minus_1():
    # |f| = d-1: three excluded words when the factor is constant, else four
    for d in range(3, 9):
        for f in words.all_words(d - 1):
            es = cube.excluded_sets(d, f)
            expected = 3 if words.bit_change_count(f) == 0 else 4
            assert len(es.excluded) == expected, (d, f)


def test_excluded_set_members_contain_factor():
    for d, f in ((5, "0011"), (6, "010"), (7, "00110")):
        es = cube.excluded_sets(d, f)
        assert all(words.contains_factor(w, f) for w in es.excluded)
        G = cube.build_graph(d, f)
        assert len(es.excluded) + G.n == 2**d


def test_graph_distance_full_cube_is_hamming():
    Q = cube.build_graph(5)
    rng = random.Random(23)
    for _ in range(100):
        u = "".join(rng.choice("01") for _ in range(5))
        v = "".join(rng.choice("01") for _ in range(5))
        assert cube.graph_distance(Q, u, v) == sum(a != b for a, b in zip(u, v))


def test_graph_distance_block_facts():
    # d(f_1 f, f f_k) equals the bit-change count; the outer pair adds two
    for f in ("0110", "0011", "01010", "000110"):
        d = len(f) + 1
        Q = cube.build_graph(d)
        nu = words.bit_change_count(f)
        b = f[0] + f
        c = f + f[-1]
        a = words.complement(f[0]) + f
        dd = f + words.complement(f[-1])
        assert cube.graph_distance(Q, b, c) == nu
        assert cube.graph_distance(Q, a, dd) == nu + 2
    assert cube.graph_distance(cube.build_graph(5), "00110", "01100") == 2


def test_graph_distance_same_vertex_and_errors():
    G = cube.build_graph(4, "11")
    assert cube.graph_distance(G, "0000", "0000") == 0
    with pytest.raises(ValueError):
        cube.graph_distance(G, "0000", "1111")


def test_c4_counts_full_cube():
    for d in (3, 4, 5):
        Q = cube.build_graph(d)
        for v in ("0" * d, "0" * (d - 1) + "1"):
            for j in Q.neighbors[Q.index[v]]:
                assert cube.count_c4_through_edge(Q, v, Q.vertices[j]) == d - 1


def test_c4_non_edge_rejected():
    Q = cube.build_graph(3)
    with pytest.raises(ValueError):
        cube.count_c4_through_edge(Q, "000", "011")


def test_c4_case_configuration():
    # with three bit changes, the mid-path edge loses exactly two 4-cycles
    for f in ("0101", "01001", "001011"):
        assert words.bit_change_count(f) == 3
        d = len(f) + 1
        G = cube.build_graph(d, f)
        b = f[0] + f
        x1 = cube.flip_bit(b, words.bit_change_indices(f)[0])
        x2 = cube.flip_bit(x1, words.bit_change_indices(f)[1])
        assert cube.count_c4_through_edge(G, x1, x2) == d - 3


def test_left_to_right_path():
    assert cube.left_to_right_path("00110", "01100") == ["00110", "01110", "01100"]
    assert cube.left_to_right_path("00", "11") == ["00", "10", "11"]
    assert cube.left_to_right_path("0101", "0101") == ["0101"]
    rng = random.Random(24)
    for _ in range(50):
        d = rng.randint(1, 10)
        b = "".join(rng.choice("01") for _ in range(d))
        c = "".join(rng.choice("01") for _ in range(d))
        path = cube.left_to_right_path(b, c)
        assert path[0] == b and path[-1] == c
        assert len(path) == 1 + sum(x != y for x, y in zip(b, c))
        for u, v in zip(path, path[1:]):
            assert sum(x != y for x, y in zip(u, v)) == 1


def test_edge_count_formulas_sample():
    # |f| = d-1: one bit change costs 4d-3 edges, two or more cost 4d-2
    G = cube.build_graph(5, "0011")
    assert cube.edge_count(G) == 5 * 16 - 17 == 63
    G = cube.build_graph(5, "0110")
    assert cube.edge_count(G) == 5 * 16 - 18 == 62
    for d in range(2, 9):
        for f in words.all_words(d - 1):
            m = cube.edge_count(cube.build_graph(d, f))
            nu = words.bit_change_count(f)
            if nu == 0:
                continue
            expected = d * 2 ** (d - 1) - (4 * d - 3 if nu == 1 else 4 * d - 2)
            assert m == expected, (d, f)


def test_excluded_set_induced_shape():
    # one bit change: the four excluded words induce a path; more: two edges
    full = {d: cube.build_graph(d) for d in range(3, 8)}
    for d in range(3, 8):
        for f in words.all_words(d - 1):
            nu = words.bit_change_count(f)
            shape = cube.induced_degrees(full[d], cube.excluded_sets(d, f).excluded)
            if nu == 0:
                assert shape == (1, 1, 2)
            elif nu == 1:
                assert shape == (1, 1, 2, 2)
            else:
                assert shape == (1, 1, 1, 1)


def test_bipartite():
    rng = random.Random(25)
    for _ in range(12):
        d = rng.randint(1, 8)
        f = "".join(rng.choice("01") for _ in range(rng.randint(1, d + 1)))
        G = cube.build_graph(d, f)
        for i, row in enumerate(G.neighbors):
            pi = G.vertices[i].count("1") % 2
            for j in row:
                assert G.vertices[j].count("1") % 2 != pi


def test_common_neighbor_bound():
    # no two vertices of a cube share more than two neighbors
    for d in range(2, 9):
        Q = cube.build_graph(d)
        common = {}
        for w in range(Q.n):
            for u, v in itertools.combinations(Q.neighbors[w], 2):
                common[u, v] = common.get((u, v), 0) + 1
        assert max(common.values()) == 2


def test_three_disjoint_shortest_paths_at_distance_three():
    for d in range(3, 7):
        Q = cube.build_graph(d)
        rng = random.Random(d)
        pairs = []
        for u in Q.vertices:
            for v in Q.vertices:
                if u < v and sum(a != b for a, b in zip(u, v)) == 3:
                    pairs.append((u, v))
        if d >= 5:
            pairs = rng.sample(pairs, 60)
        for u, v in pairs:
            assert _max_disjoint_shortest_paths(Q, u, v) == 3


def _max_disjoint_shortest_paths(Q, u, v):
    dist = cube.graph_distance(Q, u, v)
    paths = []

    def extend(path):
        last = path[-1]
        if len(path) - 1 == dist:
            if last == v:
                paths.append(path[1:-1])
            return
        for j in Q.neighbors[Q.index[last]]:
            w = Q.vertices[j]
            if sum(a != b for a, b in zip(w, v)) == dist - len(path):
                extend(path + [w])

    extend([u])
    best = 0
    for size in range(len(paths), 0, -1):
        for combo in itertools.combinations(paths, size):
            interiors = [set(p) for p in combo]
            if all(not (a & b) for a, b in itertools.combinations(interiors, 2)):
                best = size
                break
        if best:
            break
    return best


def test_graph6_known_values():
    assert cube.graph6_from_neighbors([()]) == "@"
    assert cube.graph6_from_neighbors([(1,), (0,)]) == "A_"
    assert cube.graph6_from_neighbors([(), ()]) == "A?"


def test_graph6_matches_networkx():
    rng = random.Random(26)
    for _ in range(40):
        n = rng.randint(1, 20)
        g = nx.gnp_random_graph(n, 0.4, seed=rng.randint(0, 10**6))
        adj = [tuple(sorted(g.neighbors(v))) for v in range(n)]
        ours = cube.graph6_from_neighbors(adj)
        ref = nx.to_graph6_bytes(g, header=False).decode().strip()
        assert ours == ref, (adj, ours, ref)


def test_graph6_round_trip():
    rng = random.Random(27)
    for _ in range(40):
        n = rng.randint(0, 18)
        adj = [set() for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                if rng.random() < 0.3:
                    adj[i].add(j)
                    adj[j].add(i)
        adj = [tuple(sorted(r)) for r in adj]
        back = cube.from_graph6(cube.graph6_from_neighbors(adj))
        assert back.neighbors == tuple(adj)
    G = cube.build_graph(6, "0110")
    assert cube.from_graph6(cube.to_graph6(G)).neighbors == G.neighbors


def test_graph6_large_n_prefix():
    adj = [() for _ in range(100)]
    text = cube.graph6_from_neighbors(adj)
    assert text[0] == chr(126)
    assert cube.from_graph6(text).n == 100


def test_graph6_header_tolerated():
    assert cube.from_graph6(">>graph6<<A_").neighbors == ((1,), (0,))


def test_graph6_malformed_rejected():
    for bad in ("", "A", "A_X", "\x19", "@@"):
        with pytest.raises(ValueError):
            cube.from_graph6(bad)
