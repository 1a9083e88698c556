import functools
import itertools
import json
import math
import random

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st
from sympy import Matrix

from hymcg.errors import ComplexTooLarge, InvalidFamily, NoEssentialCurves, RangeError
from hymcg.strata import (
    HomologyResult,
    LaminarFamily,
    StableTree,
    all_simplices,
    canonical_form,
    complex_dimension,
    count_vertex_orbits,
    enumerate_simplices,
    f_vector,
    family_to_tree,
    homology,
    normalize_subset,
    parse_family,
    random_family,
    simplicial_homology,
    tree_to_family,
    vertex_subsets,
)


# -- independent oracles --------------------------------------------------------

def brute_splits(n, variant="full"):
    """Unordered splits {A, A^c} of 1..n with both sides of size >= 2."""
    points = frozenset(range(1, n + 1))
    splits = set()
    for mask in range(1 << n):
        side = frozenset(i + 1 for i in range(n) if mask >> i & 1)
        other = points - side
        if len(side) < 2 or len(other) < 2:
            continue
        if variant == "b" and 2 not in (len(side), len(other)):
            continue
        splits.add(frozenset([side, other]))
    return splits


def splits_compatible(s, t):
    # two splits are realizable disjointly iff some pair of sides is disjoint
    return s != t and any(not (x & y) for x in s for y in t)


def compatibility_graph(n, variant):
    splits = sorted(brute_splits(n, variant), key=lambda s: sorted(map(sorted, s)))
    graph = nx.Graph()
    graph.add_nodes_from(range(len(splits)))
    for i, j in itertools.combinations(range(len(splits)), 2):
        if splits_compatible(splits[i], splits[j]):
            graph.add_edge(i, j)
    return splits, graph


def as_split(subset, n):
    subset = frozenset(subset)
    return frozenset([subset, frozenset(range(1, n + 1)) - subset])


def rational_betti(simplices, top):
    """Betti numbers over Q from sympy ranks of dense boundary matrices."""
    by_dim = {}
    for s in simplices:
        by_dim.setdefault(len(s) - 1, []).append(tuple(sorted(s)))
    ranks = {}
    for d in range(1, top + 2):
        rows = {s: i for i, s in enumerate(by_dim.get(d - 1, []))}
        cols = by_dim.get(d, [])
        if not rows or not cols:
            ranks[d] = 0
            continue
        m = [[0] * len(cols) for _ in rows]
        for j, s in enumerate(cols):
            for k in range(len(s)):
                m[rows[s[:k] + s[k + 1:]]][j] = (-1) ** k
        ranks[d] = Matrix(m).rank()
    return tuple(len(by_dim.get(d, [])) - ranks.get(d, 0) - ranks.get(d + 1, 0)
                 for d in range(top + 1))


# -- families and trees ---------------------------------------------------------

def test_normalization():
    assert normalize_subset({1, 2, 3}, 6) == {4, 5, 6}
    assert normalize_subset({4, 5}, 6) == {4, 5}


@pytest.mark.parametrize("n", range(4, 10))
def test_normalization_involution(n):
    for a in vertex_subsets(n):
        complement = frozenset(range(1, n + 1)) - a
        assert normalize_subset(complement, n) == a


@pytest.mark.parametrize("members", [
    [[2, 3], [3, 4]],          # crossing
    [[2, 3], [2, 3]],          # duplicate
    [[2]],                     # inessential
    [[2, 3, 4, 5, 6]],         # complement of a point
    [[1, 2]],                  # not normalized
    [[2, 9]],                  # outside range
])
def test_invalid_families(members):
    with pytest.raises(InvalidFamily):
        LaminarFamily(6, [frozenset(m) for m in members])


def test_small_n_rejected():
    with pytest.raises(NoEssentialCurves):
        LaminarFamily(3)
    with pytest.raises(NoEssentialCurves):
        count_vertex_orbits(3)


def test_parse_family_normalizes():
    f = parse_family("[[1,2,3],[2,3]]", 6)
    assert f.literal() == [[2, 3], [4, 5, 6]]
    with pytest.raises(InvalidFamily):
        parse_family("[[2,3", 6)


def test_tree_single_curve():
    t = family_to_tree(LaminarFamily.from_sides(6, [[2, 3]]))
    assert sorted(map(sorted, t.legs)) == [[1, 4, 5, 6], [2, 3]]
    assert len(t.edges) == 1


def test_tree_path():
    t = family_to_tree(LaminarFamily.from_sides(6, [[2, 3], [2, 3, 4, 5]]))
    assert len(t.legs) == 3 and len(t.edges) == 2
    assert [sorted(t.legs[v]) for v in _path_order(t)] == [[1, 6], [4, 5], [2, 3]]


def _path_order(t):
    adj = {v: set() for v in range(len(t.legs))}
    for a, b in t.edges:
        adj[a].add(b)
        adj[b].add(a)
    order, prev = [0], None
    while True:
        nxt = [w for w in adj[order[-1]] if w != prev]
        if not nxt:
            return order
        prev = order[-1]
        order.append(nxt[0])


def test_tree_empty_family():
    t = family_to_tree(LaminarFamily(5))
    assert len(t.legs) == 1 and t.edges == ()


def test_unstable_tree_rejected():
    with pytest.raises(InvalidFamily):
        StableTree(4, (frozenset({1, 2}), frozenset({3}), frozenset({4})), ((0, 1), (1, 2)))


@st.composite
def families(draw, n_min=4, n_max=9, variant="full"):
    n = draw(st.integers(n_min, n_max))
    seed = draw(st.integers(0, 10**6))
    keep = draw(st.floats(0.05, 1.0))
    return random_family(n, random.Random(seed), variant, keep)


@settings(max_examples=80)
@given(families())
def test_tree_round_trip(f):
    t = family_to_tree(f)
    assert len(t.edges) == len(f)
    assert all(t.valence(v) >= 3 for v in range(len(t.legs)))
    assert tree_to_family(t) == f
    assert StableTree.from_json(json.loads(json.dumps(t.to_json()))) == t
    assert LaminarFamily.from_json(json.loads(json.dumps(f.to_json()))) == f
    assert parse_family(json.dumps(f.literal()), f.n) == f


@settings(max_examples=60)
@given(families())
def test_laminar_matches_split_compatibility(f):
    splits = [as_split(m, f.n) for m in f.members]
    assert all(splits_compatible(s, t) for s, t in itertools.combinations(splits, 2))


def test_dot_export():
    dot = family_to_tree(LaminarFamily.from_sides(6, [[2, 3]])).to_dot()
    assert dot.startswith("graph")
    assert '"2,3"' in dot and "--" in dot


# -- counting and enumeration ---------------------------------------------------

@pytest.mark.parametrize("n", range(4, 11))
def test_vertex_counts_against_brute_force(n):
    assert count_vertex_orbits(n, "full", "pure") == len(brute_splits(n)) == 2 ** (n - 1) - n - 1
    assert count_vertex_orbits(n, "b", "pure") == len(brute_splits(n, "b"))
    # every pair bounds a disc; at n = 4 both sides of a curve are pairs
    assert len(brute_splits(n, "b")) == (math.comb(n, 2) if n > 4 else 3)
    assert {as_split(v, n) for v in vertex_subsets(n)} == brute_splits(n)
    assert {as_split(v, n) for v in vertex_subsets(n, "b")} == brute_splits(n, "b")


@pytest.mark.parametrize("n, full, b", [(5, 10, 10), (6, 25, 15)])
def test_vertex_count_examples(n, full, b):
    assert count_vertex_orbits(n, "full") == full
    assert count_vertex_orbits(n, "b") == b


@pytest.mark.parametrize("n", range(4, 9))
def test_full_group_vertex_orbits(n):
    for variant in ("full", "b"):
        assert count_vertex_orbits(n, variant, "full") == len(enumerate_simplices(n, 0, variant, "full"))


@pytest.mark.parametrize("n", [4, 5])
def test_small_n_variants_coincide(n):
    assert vertex_subsets(n, "b") == vertex_subsets(n, "full")


@pytest.mark.parametrize("n", range(4, 8))
def test_edges_against_brute_force(n):
    splits = brute_splits(n)
    brute = sum(1 for s, t in itertools.combinations(splits, 2) if splits_compatible(s, t))
    assert len(enumerate_simplices(n, 1)) == brute
    splits_b = brute_splits(n, "b")
    brute_b = sum(1 for s, t in itertools.combinations(splits_b, 2) if splits_compatible(s, t))
    assert len(enumerate_simplices(n, 1, "b")) == brute_b


def test_enumeration_examples():
    assert len(enumerate_simplices(5, 1, "full", "pure")) == 15
    target = LaminarFamily.from_sides(6, [[2, 3], [4, 5], [2, 3, 4, 5]])
    assert target in enumerate_simplices(6, 2, "b", "pure")
    assert enumerate_simplices(4, 1, "b", "pure") == []
    assert enumerate_simplices(6, -1) == []


@pytest.mark.parametrize("n", range(4, 8))
def test_full_group_orbits_cover_pure_simplices(n):
    perms = list(itertools.permutations(range(1, n + 1)))
    for dim in range(n - 3):
        reps = enumerate_simplices(n, dim, "full", "full")
        pure = {f.key() for f in enumerate_simplices(n, dim, "full", "pure")}
        orbits = [{f.relabel(p).key() for p in perms} for f in reps]
        # orbits are disjoint and exhaust the pure simplices
        assert sum(len(o) for o in orbits) == len(pure)
        assert set().union(*orbits) == pure
        assert all(f.key() == min(o) for f, o in zip(reps, orbits))
        if n <= 6:
            assert all(canonical_form(f) == f for f in reps)


def test_full_group_pants_orbits():
    # maximal simplices of S_(0,6): caterpillar and star-shaped trivalent trees
    assert len(enumerate_simplices(6, 2, "full", "full")) == 2
    assert len(enumerate_simplices(5, 1, "full", "full")) == 1


def test_full_group_range():
    with pytest.raises(RangeError):
        enumerate_simplices(9, 0, "full", "full")


@functools.lru_cache(maxsize=None)
def simplex_keys(n, dim):
    return frozenset(f.key() for f in enumerate_simplices(n, dim))


@settings(max_examples=50, deadline=None)
@given(families(n_max=8))
def test_faces_are_simplices(f):
    for face in f.faces():
        assert face.dimension < 0 or face.key() in simplex_keys(f.n, face.dimension)
    if f.n <= 6:
        assert canonical_form(canonical_form(f)) == canonical_form(f)


@pytest.mark.parametrize("n", range(4, 8))
def test_enumeration_is_face_closed(n):
    for variant in ("full", "b"):
        levels = [set(enumerate_simplices(n, d, variant)) for d in range(n - 3)]
        for d in range(1, len(levels)):
            for f in levels[d]:
                assert all(face in levels[d - 1] for face in f.faces())


# -- dimension ------------------------------------------------------------------

@pytest.mark.parametrize("n", range(4, 13))
def test_b_dimension_against_max_clique(n):
    _, graph = compatibility_graph(n, "b")
    clique = max(len(c) for c in nx.find_cliques(graph))
    assert complex_dimension(n, "b") == clique - 1
    assert complex_dimension(n, "b") == (0 if n == 4 else n // 2 - 1)


@pytest.mark.parametrize("n, expected", [(4, 0), (5, 1), (6, 2), (7, 2), (8, 3)])
def test_b_dimension_examples(n, expected):
    assert complex_dimension(n, "b") == expected


@pytest.mark.parametrize("n", range(4, 9))
def test_full_dimension_against_max_clique(n):
    _, graph = compatibility_graph(n, "full")
    clique = max(len(c) for c in nx.find_cliques(graph))
    assert complex_dimension(n, "full") == clique - 1 == n - 4


# -- homology -------------------------------------------------------------------

def test_homology_n5():
    h = homology(5, "full")
    assert h.f_vector == (10, 15)
    assert h.betti == (1, 6)
    assert h.euler_from_faces == 10 - 15 == h.euler_from_betti


def test_homology_n4():
    h = homology(4, "full")
    assert h.f_vector == (3,)
    assert h.betti == (3,)


def test_single_vertex_complex():
    h = simplicial_homology([("v",)])
    assert h.betti == (1,)
    assert simplicial_homology([(0,), (1,), (2,), (0, 1), (1, 2), (0, 2)]).betti == (1, 1)
    # boundary of a tetrahedron is a 2-sphere
    tet = [s for k in (1, 2, 3) for s in itertools.combinations(range(4), k)]
    assert simplicial_homology(tet).betti == (1, 0, 1)


def test_projective_plane_torsion():
    # six-vertex triangulation of RP^2
    faces = [(0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 1, 5),
             (1, 3, 5), (1, 3, 4), (1, 2, 4), (2, 4, 5), (2, 3, 5)]
    simplices = {tuple(sorted(c)) for f in faces for k in (1, 2, 3)
                 for c in itertools.combinations(f, k)}
    h = simplicial_homology(simplices)
    assert h.betti == (1, 0, 0)
    assert h.torsion[1] == (2,)


@pytest.mark.parametrize("n, variant", [(5, "full"), (6, "full"), (5, "b"), (6, "b"), (7, "b")])
def test_betti_against_rational_ranks(n, variant):
    h = homology(n, variant)
    vertices = vertex_subsets(n, variant)
    order = {v: i for i, v in enumerate(vertices)}
    simplices = [tuple(order[m] for m in f.members) for f in all_simplices(n, variant)]
    assert h.betti == rational_betti(simplices, len(h.betti) - 1)


@pytest.mark.parametrize("n", range(4, 8))
def test_full_complex_is_wedge_of_spheres(n):
    # the tree-space complex on n leaves is a wedge of (n-2)! spheres of dimension n-4
    h = homology(n, "full")
    expected = [0] * (n - 3)
    expected[0] += 1
    expected[n - 4] += math.factorial(n - 2)
    if n == 4:
        expected = [3]
    assert list(h.betti) == expected


@pytest.mark.parametrize("n", range(4, 8))
def test_euler_consistency(n):
    for variant in ("full", "b"):
        h = homology(n, variant)
        assert h.f_vector == f_vector(n, variant)
        assert h.euler_from_faces == h.euler_from_betti


def test_homology_json_round_trip():
    h = homology(6, "b")
    assert HomologyResult.from_json(json.loads(json.dumps(h.to_json()))) == h


def test_homology_caps():
    with pytest.raises(ComplexTooLarge):
        homology(9, "b")
    with pytest.raises(ComplexTooLarge):
        homology(7, "full", cap=10)
