import heapq
import math
import random
from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import monoalgs, subuniverses
from gendist.algebra import (
    FiniteAlgebra,
    Operation,
    alternating_group,
    boolean_algebra,
    builtin,
    closure,
    cyclic_group,
    enumerate_subalgebras,
    fa_isomorphic,
    format_fa,
    is_large_subalgebra,
    monounary_as_fa,
    parse_fa,
    symmetric_group,
)
from gendist.census import MonounaryCensus
from gendist.distance import distance, is_largely_embeddable
from gendist.errors import ContractViolation, ParseError
from gendist.monounary import MonoAlg, canonical_code, disjoint_union, is_isomorphic, make_cycle, make_mpl
from gendist.network import (
    Network,
    build_monounary_network,
    build_subalgebra_network,
    component_diameter,
    enumerate_monounary,
    enumerate_monounary_tables,
    export_dot,
    network_distance,
    oracle_distance,
)


def _find(fa: FiniteAlgebra, *labels: str) -> frozenset[int]:
    index = {fa.label(x): x for x in range(fa.n)}
    return frozenset(index[s] for s in labels)


# -- operation-table algebras ----------------------------------------------------


def test_closure_examples():
    s4 = symmetric_group(4)
    assert closure(s4, _find(s4, "(12)")) == _find(s4, "e", "(12)")
    assert closure(s4, range(24)) == frozenset(range(24))
    a4 = alternating_group(4)
    assert len(closure(a4, _find(a4, "(123)"))) == 3
    b = boolean_algebra(3)
    assert closure(b, ()) == {0, 7}


def test_subalgebra_counts():
    assert Counter(len(s) for s in enumerate_subalgebras(symmetric_group(4))) == {1: 1, 2: 9, 3: 4, 4: 7, 6: 4, 8: 3, 12: 1, 24: 1}
    assert len(enumerate_subalgebras(alternating_group(4))) == 10
    assert len(enumerate_subalgebras(boolean_algebra(3))) == 5
    subs = enumerate_subalgebras(cyclic_group(12))
    assert sorted(len(s) for s in subs) == [1, 2, 3, 4, 6, 12]


def test_subalgebras_sorted_and_closed():
    fa = symmetric_group(4)
    subs = enumerate_subalgebras(fa)
    keys = [(len(s), s.sorted) for s in subs]
    assert keys == sorted(keys) and len(set(keys)) == len(keys)
    for s in subs:
        assert closure(fa, s.elements) == s.elements


@settings(max_examples=100)
@given(monoalgs(max_size=7))
def test_subalgebras_match_brute_force(a):
    fa = monounary_as_fa(a.f)
    assert {s.elements for s in enumerate_subalgebras(fa)} == subuniverses(a)


def test_large_examples():
    s4 = symmetric_group(4)
    amb = s4.universe
    subs = {s.elements: s for s in enumerate_subalgebras(s4)}
    assert is_large_subalgebra(subs[_find(s4, "e", "(12)")], amb)
    assert not is_large_subalgebra(subs[_find(s4, "e", "(12)(34)")], amb)
    assert not is_large_subalgebra(subs[_find(s4, "e", "(12)(34)", "(13)(24)", "(14)(23)")], amb)
    with pytest.raises(ContractViolation):
        is_large_subalgebra(amb, subs[_find(s4, "e", "(12)")])


@pytest.mark.parametrize("fa", [symmetric_group(4), alternating_group(4), boolean_algebra(3)], ids=["S4", "A4", "B8"])
def test_maximal_implies_large(fa):
    subs = enumerate_subalgebras(fa)
    amb = fa.universe
    for s in subs[:-1]:
        maximal = not any(s.elements < t.elements < amb.elements for t in subs)
        if maximal:
            assert is_large_subalgebra(s, amb)


def test_large_but_not_maximal():
    s4 = symmetric_group(4)
    subs = enumerate_subalgebras(s4)
    z2 = next(s for s in subs if s.elements == _find(s4, "e", "(12)"))
    assert is_large_subalgebra(z2, s4.universe)
    assert any(z2.elements < t.elements < frozenset(range(24)) for t in subs)


def test_isomorphism_examples():
    s4 = symmetric_group(4)
    subs = {s.elements: s for s in enumerate_subalgebras(s4)}
    t = subs[_find(s4, "e", "(12)")]
    d = subs[_find(s4, "e", "(12)(34)")]
    assert fa_isomorphic(t, d)
    z4 = subs[_find(s4, "e", "(1234)", "(13)(24)", "(1432)")]
    klein = subs[_find(s4, "e", "(12)(34)", "(13)(24)", "(14)(23)")]
    assert not fa_isomorphic(z4, klein)
    for s in subs.values():
        assert fa_isomorphic(s, s)


@settings(max_examples=200)
@given(monoalgs(max_size=6), st.randoms(use_true_random=False))
def test_fa_isomorphic_matches_codes(a, rng):
    n = a.n
    b = MonoAlg(tuple(rng.randrange(n) for _ in range(n))) if rng.random() < 0.5 else a
    perm = list(range(n))
    rng.shuffle(perm)
    from gendist.monounary import relabel

    b = relabel(b, perm)
    fa, fb = monounary_as_fa(a.f), monounary_as_fa(b.f)
    assert fa_isomorphic(fa.universe, fb.universe) == is_isomorphic(a, b)


def test_fa_signature_mismatch():
    with pytest.raises(ContractViolation):
        fa_isomorphic(symmetric_group(2).universe, boolean_algebra(1).universe)


def test_parse_fa_roundtrip():
    fa = symmetric_group(3)
    back = parse_fa("# S3\n" + format_fa(fa))
    assert back.signature == fa.signature
    for x, y in zip(back.ops, fa.ops):
        assert (x.table == y.table).all()
    assert len(enumerate_subalgebras(back)) == 6


@pytest.mark.parametrize(
    "text",
    ["", "m 2", "n 0", "n 2\nop 1\n0 2", "n 2\nop 1\n0", "n 2\nop x", "n 2\nfoo 1", "n 2\nop -1"],
)
def test_parse_fa_errors(text):
    with pytest.raises(ParseError):
        parse_fa(text)


def test_builtin_spec():
    assert builtin("sym:3").n == 6
    assert builtin("alt:4").n == 12
    assert builtin("bool:2").n == 4
    assert builtin("cyc:5").n == 5
    for bad in ["sym", "foo:3", "sym:x"]:
        with pytest.raises(ParseError):
            builtin(bad)
    with pytest.raises(ContractViolation):
        builtin("sym:6")


def test_bad_tables():
    with pytest.raises(ContractViolation):
        FiniteAlgebra(2, (Operation(1, __import__("numpy").array([0, 2])),))
    with pytest.raises(ContractViolation):
        FiniteAlgebra(2, (Operation(2, __import__("numpy").array([0, 1])),))


# -- subalgebra networks ---------------------------------------------------------


def test_boolean_network():
    fa = boolean_algebra(3)
    net = build_subalgebra_network(fa)
    assert (len(net), len(net.red_edges), len(net.blue_edges)) == (5, 3, 6)
    bottom = next(v for v, s in enumerate(net.vertices) if s.elements == {0, 7})
    top = next(v for v, s in enumerate(net.vertices) if len(s) == 8)
    assert network_distance(net, bottom, top) == 2
    assert network_distance(net, top, top) == 0
    assert component_diameter(net, bottom) == 2
    dot = export_dot(net)
    assert dot.count("style=dashed,color=red") == 3
    assert dot.count("[color=blue]") == 6
    assert dot.count("[label=") == 5
    assert dot == export_dot(build_subalgebra_network(boolean_algebra(3)))


def test_a4_network():
    net = build_subalgebra_network(alternating_group(4))
    assert len(net) == 10
    tags = net.iso_classes()
    assert sorted(Counter(tags).values()) == [1, 1, 1, 3, 4]
    sizes = sorted(Counter((len(net.vertices[v]), t) for v, t in enumerate(tags)).items())
    assert [(size, count) for (size, _), count in sizes] == [(1, 1), (2, 3), (3, 4), (4, 1), (12, 1)]
    assert len(net.red_edges) == 9 and len(net.blue_edges) == 18
    diam = component_diameter(net, 0)
    assert diam < math.inf
    assert all(network_distance(net, 0, v) < math.inf for v in range(len(net)))


def test_trivial_network():
    net = build_subalgebra_network(cyclic_group(1))
    assert (len(net), len(net.red_edges), len(net.blue_edges)) == (1, 0, 0)
    assert component_diameter(net, 0) == 0


def test_empty_network_dot():
    dot = export_dot(Network((), frozenset(), frozenset()))
    assert dot.startswith("graph") and dot.rstrip().endswith("}")
    assert "--" not in dot


def test_network_contract():
    net = build_subalgebra_network(boolean_algebra(1))
    with pytest.raises(ContractViolation):
        network_distance(net, 0, 5)
    with pytest.raises(ContractViolation):
        Network((1, 2), frozenset({(1, 0)}), frozenset())


def _dijkstra(net: Network, s: int) -> list[float]:
    dist = [math.inf] * len(net)
    dist[s] = 0
    heap = [(0, s)]
    while heap:
        d, u = heapq.heappop(heap)
        if d > dist[u]:
            continue
        for v, w in net.adjacency[u]:
            if d + w < dist[v]:
                dist[v] = d + w
                heapq.heappush(heap, (d + w, v))
    return dist


@settings(max_examples=100)
@given(st.integers(1, 12), st.randoms(use_true_random=False))
def test_zero_one_bfs_matches_dijkstra(n, rng):
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    red = frozenset(p for p in pairs if rng.random() < 0.15)
    blue = frozenset(p for p in pairs if p not in red and rng.random() < 0.25)
    net = Network(tuple(range(n)), red, blue)
    for s in range(n):
        expect = _dijkstra(net, s)
        assert [network_distance(net, s, v) for v in range(n)] == expect


@settings(max_examples=50)
@given(st.randoms(use_true_random=False))
def test_subclass_monotone(rng):
    net = build_subalgebra_network(symmetric_group(4))
    keep = sorted(rng.sample(range(len(net)), rng.randint(2, len(net))))
    index = {v: i for i, v in enumerate(keep)}

    def restrict(edges):
        return frozenset((index[u], index[v]) for u, v in edges if u in index and v in index)

    sub = Network(tuple(net.vertices[v] for v in keep), restrict(net.red_edges), restrict(net.blue_edges))
    for i, u in enumerate(keep):
        for j, v in enumerate(keep):
            assert network_distance(sub, i, j) >= network_distance(net, u, v)


# -- monounary census and network --------------------------------------------------


def test_enumerate_examples():
    assert len(enumerate_monounary(1)) == 1
    two = enumerate_monounary(2)
    assert len(two) == 4
    assert {canonical_code(a).data for a in two} == {
        canonical_code(x).data for x in (make_cycle(1), make_cycle(2), make_mpl(1, 1), MonoAlg((0, 1)))
    }
    assert len(enumerate_monounary(3)) == 11
    with pytest.raises(ContractViolation):
        enumerate_monounary(99)
    with pytest.raises(ContractViolation):
        enumerate_monounary_tables(9)


def test_census_counts_match_table_scan():
    census = enumerate_monounary(6)
    tables = enumerate_monounary_tables(6)
    assert sorted(canonical_code(a).data for a in census) == sorted(canonical_code(a).data for a in tables)
    assert Counter(a.n for a in census) == {1: 1, 2: 3, 3: 7, 4: 19, 5: 47, 6: 130}


def test_census_sizes_larger():
    c = MonounaryCensus(10)
    counts = [c.bound(k) - c.bound(k - 1) for k in range(2, 11)]
    assert [c.bound(1)] + counts == [1, 3, 7, 19, 47, 130, 343, 951, 2615, 7318]
    with pytest.raises(ValueError):
        MonounaryCensus(15)


def test_census_roundtrip():
    c = MonounaryCensus(7)
    for v in range(len(c)):
        a = c.algebra(v)
        assert c.vertex_of(a) == v and c.size_of(v) == a.n


def test_census_edges_match_decision():
    c = MonounaryCensus(6)
    algs = [c.algebra(v) for v in range(len(c))]
    for u in range(len(c)):
        nbrs = set(int(x) for x in c.neighbors(u))
        for v in range(len(c)):
            if u == v:
                continue
            expect = is_largely_embeddable(algs[u], algs[v])[0] or is_largely_embeddable(algs[v], algs[u])[0]
            assert (v in nbrs) == expect, (algs[u], algs[v])


def test_monounary_network_examples():
    net = build_monounary_network(2)
    index = {canonical_code(a).data: v for v, a in enumerate(net.vertices)}
    c1 = index[canonical_code(make_cycle(1)).data]

    def has(a):
        v = index[canonical_code(a).data]
        return (min(c1, v), max(c1, v)) in net.blue_edges

    assert has(make_mpl(1, 1)) and has(MonoAlg((0, 1)))
    assert not has(make_cycle(2))
    assert not net.red_edges


def test_monounary_network_union_edges():
    cap = 5
    net = build_monounary_network(cap)
    index = {canonical_code(a).data: v for v, a in enumerate(net.vertices)}
    for v, a in enumerate(net.vertices):
        if a.n < cap:
            w = index[canonical_code(disjoint_union(a, make_cycle(1))).data]
            assert (min(v, w), max(v, w)) in net.blue_edges


def test_census_bfs_matches_network():
    cap = 5
    net = build_monounary_network(cap)
    c = MonounaryCensus(cap)
    for s in range(0, len(net), 7):
        fast = c.distances_from(s)
        for v in range(len(net)):
            expect = network_distance(net, s, v)
            assert fast[v] == (-1 if expect == math.inf else expect)


def test_oracle_small_pairs():
    rng = random.Random(11)
    for _ in range(40):
        a = MonoAlg(tuple(rng.randrange(3) for _ in range(3)))
        n = rng.randint(1, 4)
        b = MonoAlg(tuple(rng.randrange(n) for _ in range(n)))
        assert oracle_distance(a, b) == distance(a, b)
    with pytest.raises(ContractViolation):
        oracle_distance(make_cycle(5), make_cycle(1), cap=3)


def test_oracle_figure_cap_12(fig_a, fig_b):
    assert oracle_distance(fig_a, fig_b, cap=12) == 4 == distance(fig_a, fig_b)
