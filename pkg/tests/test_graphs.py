import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import random_graph, small_graph
from vecchrom import graphs
from vecchrom.errors import (
    CapacityError,
    DimensionError,
    DomainError,
    ParseError,
    ValidationError,
)
from vecchrom.graphs import (
    Graph,
    ProductKind,
    complement,
    generate,
    graph_from_edges,
    is_bipartite,
    is_homomorphism,
    parse_edge_list,
    product,
    remove_isolated,
    union,
    write_edge_list,
)


# --- generators -------------------------------------------------------------

def test_omega_odd_is_empty():
    G = generate("omega", 3)
    assert G.n == 8
    assert G.edge_count == 0
    assert generate("omega", 5).edge_count == 0


def test_omega_matches_orthogonality_oracle():
    # oracle: enumerate the documented sign-vector encoding directly
    for n in (2, 3, 4):
        G = generate("omega", n)
        count = 1 << n
        vecs = {i: [(-1 if (i >> b) & 1 else 1) for b in range(n)] for i in range(count)}
        for i, j in itertools.combinations(range(count), 2):
            dot = sum(a * b for a, b in zip(vecs[i], vecs[j]))
            assert G.has_edge(i, j) == (dot == 0)
    G = generate("omega", 2)
    assert G.n == 4
    assert G.edge_count == 4
    flag, _ = is_bipartite(G)
    assert flag
    # isomorphic to the 4-cycle: same degree sequence and edge count
    assert list(G.degrees()) == [2, 2, 2, 2]


def test_omega_regularity_even():
    from math import comb

    for n in (2, 4, 6):
        G = generate("omega", n)
        assert set(G.degrees()) == {comb(n, n // 2)}


def test_omega_capacity():
    with pytest.raises(CapacityError):
        generate("omega", 11)
    generate("omega", 11, omega_cap=11)  # raising the cap unlocks it


def test_complete_one_vertex():
    G = generate("complete", 1)
    assert (G.n, G.edge_count) == (1, 0)


def test_named_families():
    assert generate("cycle", 5).edge_count == 5
    assert generate("cycle", 2).edge_count == 1
    assert generate("path", 4).edge_count == 3
    assert generate("empty", 6).edge_count == 0
    P = generate("petersen")
    assert (P.n, P.edge_count) == (10, 15)
    assert set(P.degrees()) == {3}
    with pytest.raises(DomainError):
        generate("hypercube", 3)
    with pytest.raises(DomainError):
        generate("cycle", -1)


# --- complement -------------------------------------------------------------

def test_complement_complete_is_empty():
    assert complement(generate("complete", 4)).edge_count == 0
    assert complement(generate("empty", 3)).edge_count == 3


def test_complement_c5_self_complementary():
    # oracle: exhaustive search over all 5! vertex bijections
    C5 = generate("cycle", 5)
    co = complement(C5)
    assert co.edge_count == 5
    assert set(co.degrees()) == {2}
    found = any(
        all(co.adj[perm[u], perm[v]] for u, v in C5.edges())
        for perm in itertools.permutations(range(5))
    )
    assert found


@given(small_graph())
def test_complement_involution(G):
    assert np.array_equal(complement(complement(G)).adj, G.adj)


# --- products ---------------------------------------------------------------

def test_cartesian_k2_k2_is_square():
    G = product("cartesian", generate("complete", 2), generate("complete", 2))
    # vertex order 00, 01, 10, 11; the square visits them as 0, 1, 3, 2
    cycle_order = [0, 1, 3, 2]
    C4 = generate("cycle", 4)
    assert all(
        G.has_edge(cycle_order[i], cycle_order[(i + 1) % 4]) for i in range(4)
    )
    assert G.edge_count == C4.edge_count == 4


def test_categorical_k2_k2_two_disjoint_edges():
    K2 = generate("complete", 2)
    G = product("categorical", K2, K2)
    # oracle: scan the definition over all vertex pairs
    expected = set()
    for (u1, v1), (u2, v2) in itertools.combinations(
        itertools.product(range(2), range(2)), 2
    ):
        if K2.adj[u1, u2] and K2.adj[v1, v2]:
            expected.add((u1 * 2 + v1, u2 * 2 + v2))
    assert set(G.edges()) == expected
    assert G.edge_count == 2
    assert set(G.degrees()) == {1}


def _definition_adjacent(kind, G, H, a, b):
    u1, v1 = divmod(a, H.n)
    u2, v2 = divmod(b, H.n)
    gu = bool(G.adj[u1, u2])
    hv = bool(H.adj[v1, v2])
    if kind == "categorical":
        return gu and hv
    if kind == "cartesian":
        return (gu and v1 == v2) or (u1 == u2 and hv)
    if kind == "strong":
        return (gu and hv) or (gu and v1 == v2) or (u1 == u2 and hv)
    if kind == "disjunctive":
        return gu or hv
    return gu or (u1 == u2 and hv)  # lexicographic


@pytest.mark.parametrize("kind", [k.value for k in ProductKind])
def test_products_match_definitions(kind):
    for seed in range(4):
        G = random_graph(4, seed=seed)
        H = random_graph(3, seed=seed + 50)
        P = product(kind, G, H)
        for a in range(P.n):
            for b in range(a + 1, P.n):
                assert P.has_edge(a, b) == _definition_adjacent(kind, G, H, a, b)


def test_strong_is_union_of_categorical_and_cartesian():
    for seed in range(10):
        G = random_graph(5, seed=seed)
        H = random_graph(6, seed=seed + 10)
        strong = product("strong", G, H)
        both = union(product("categorical", G, H), product("cartesian", G, H))
        assert np.array_equal(strong.adj, both.adj)


def test_disjunctive_complement_identity():
    # complement(G * H) equals strong product of the complements, exactly
    for seed in range(8):
        G = random_graph(4, seed=seed)
        H = random_graph(4, seed=seed + 20)
        lhs = complement(product("disjunctive", G, H))
        rhs = product("strong", complement(G), complement(H))
        assert np.array_equal(lhs.adj, rhs.adj)


@given(small_graph(max_n=4), small_graph(max_n=4))
def test_product_vertex_counts(G, H):
    for kind in ProductKind:
        assert product(kind, G, H).n == G.n * H.n


def test_categorical_projections_are_homomorphisms():
    G = random_graph(5, seed=1)
    H = random_graph(4, seed=2)
    P = product("categorical", G, H)
    for a, b in P.edges():
        u1, v1 = divmod(a, H.n)
        u2, v2 = divmod(b, H.n)
        assert G.adj[u1, u2] and H.adj[v1, v2]


# --- union ------------------------------------------------------------------

def test_union_identity_and_partition():
    G = random_graph(6, seed=3)
    assert np.array_equal(union(G, generate("empty", 6)).adj, G.adj)
    C5 = generate("cycle", 5)
    K5 = generate("complete", 5)
    assert np.array_equal(union(C5, complement(C5)).adj, K5.adj)


def test_union_dimension_error():
    with pytest.raises(DimensionError):
        union(generate("complete", 3), generate("complete", 4))


# --- bipartite and isolated vertices ----------------------------------------

def test_bipartite_cases():
    flag, part = is_bipartite(generate("cycle", 4))
    assert flag
    C4 = generate("cycle", 4)
    assert all(part[u] != part[v] for u, v in C4.edges())
    assert is_bipartite(generate("cycle", 5)) == (False, None)
    flag, part = is_bipartite(generate("omega", 2))
    assert flag


def test_bipartite_partition_covers_components():
    G = graph_from_edges(6, [(0, 1), (2, 3)])
    flag, part = is_bipartite(G)
    assert flag
    assert part[0] != part[1] and part[2] != part[3]


def test_remove_isolated():
    G = graph_from_edges(4, [(0, 1), (0, 2), (1, 2)])
    H, mapping = remove_isolated(G)
    assert H.n == 3 and H.edge_count == 3
    assert len(set(mapping.values())) == len(mapping)
    empty = generate("empty", 5)
    H, mapping = remove_isolated(empty)
    assert H.n == 0 and mapping == {}


# --- homomorphism check -----------------------------------------------------

def test_is_homomorphism():
    C4 = generate("cycle", 4)
    K2 = generate("complete", 2)
    ok, witness = is_homomorphism(C4, K2, [0, 1, 0, 1])
    assert ok and witness is None
    f = [0, 1, 1, 0]
    ok, witness = is_homomorphism(C4, K2, f)
    assert not ok and witness is not None
    u, v = witness
    assert C4.has_edge(u, v) and not K2.adj[f[u], f[v]]


# --- construction validation ------------------------------------------------

def test_graph_validation():
    with pytest.raises(ValidationError):
        Graph(2, np.array([[False, True], [False, False]]))
    with pytest.raises(ValidationError):
        Graph(1, np.array([[True]]))
    with pytest.raises(ValidationError):
        graph_from_edges(3, [(0, 0)])
    with pytest.raises(ValidationError):
        graph_from_edges(3, [(0, 5)])
    assert not generate("complete", 3).adj.flags.writeable


# --- edge-list format -------------------------------------------------------

def test_parse_simple_graphs():
    assert parse_edge_list("2 1\n0 1").edge_count == 1
    K3 = parse_edge_list("3 3\n0 1\n1 2\n0 2")
    assert K3.edge_count == 3 and K3.n == 3


def test_parse_self_loop_line_number():
    with pytest.raises(ValidationError) as err:
        parse_edge_list("2 1\n0 0")
    assert err.value.line == 2


def test_parse_errors():
    with pytest.raises(ParseError):
        parse_edge_list("2\n0 1")
    with pytest.raises(ParseError):
        parse_edge_list("2 2\n0 1")  # fewer edges than promised
    with pytest.raises(ParseError):
        parse_edge_list("2 1\n0 x")
    with pytest.raises(ValidationError):
        parse_edge_list("2 1\n0 7")
    with pytest.raises(ParseError):
        parse_edge_list("# nothing\n")


def test_parse_comments_and_duplicates():
    G = parse_edge_list("# header comment\n3 3  # n m\n0 1\n0 1\n1 2\n")
    assert G.edge_count == 2  # duplicates collapse


def test_write_then_read_roundtrip():
    G = random_graph(7, seed=9)
    text = write_edge_list(G)
    back = parse_edge_list(text)
    assert np.array_equal(back.adj, G.adj)
    lines = text.strip().splitlines()
    assert lines[0] == f"{G.n} {G.edge_count}"
    assert lines[1:] == sorted(lines[1:], key=lambda s: tuple(map(int, s.split())))


@given(small_graph())
def test_roundtrip_property(G):
    assert np.array_equal(parse_edge_list(write_edge_list(G)).adj, G.adj)
