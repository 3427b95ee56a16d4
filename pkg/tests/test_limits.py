import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import maps, posets
from oracles import isomorphic, monotone_maps
from ordkit.errors import TypeMismatch
from ordkit.finposet import (
    MonotoneMap,
    antichain,
    chain,
    classify,
    constant,
    hom_poset,
    identity,
    is_isomorphic,
    product,
    terminal,
)
from ordkit.generate import posets_up_to_iso
from ordkit.limits import (
    FiniteDiagram,
    Weight,
    all_cones,
    comma_as_weighted_limit,
    conical_weight,
    cotensor,
    epi_diagonal,
    equalizer,
    lax_kernel,
    lax_pullback,
    limit_product,
    verify_weighted_limit,
    weighted_limit,
)
from ordkit.subobjects import canonical_pullback, order_relation

C2 = chain(2)
A2 = antichain(2)
APEXES = [P for n in range(4) for P in posets_up_to_iso(n)]


def test_conical_product():
    L = limit_product(C2, C2)
    assert L.poset.n == 4
    assert isomorphic(L.poset, product(C2, C2))


def test_cotensor_c2_c2():
    L = cotensor(C2, C2)
    assert L.poset.elements == ((0, 0), (0, 1), (1, 1))
    assert L.poset.pairs() == [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)]


def test_equalizer_id_const():
    L = equalizer(identity(C2), constant(C2, C2, 1))
    assert L.poset.elements == ((1, 1),)


def test_equalizer_needs_parallel_pair():
    with pytest.raises(TypeMismatch):
        equalizer(identity(C2), identity(A2))


def test_weight_must_match_diagram():
    D = FiniteDiagram({"X": C2}, ())
    with pytest.raises(TypeMismatch):
        weighted_limit(D, Weight({"Y": C2}, ()))


def test_edge_typing_checked():
    with pytest.raises(TypeMismatch):
        FiniteDiagram({"X": C2, "Y": A2}, (("X", "Y", identity(C2)),))


def test_lax_pullback_identities():
    L, (p, q) = lax_pullback(identity(C2), identity(C2))
    assert L.elements == ((0, 0), (0, 1), (1, 1))


def test_lax_pullback_const0_const1_is_everything():
    L, _ = lax_pullback(constant(C2, C2, 0), constant(C2, C2, 1))
    assert L.n == 4


def test_lax_pullback_const1_const0_is_empty():
    L, _ = lax_pullback(constant(C2, C2, 1), constant(C2, C2, 0))
    assert L.n == 0


def test_lax_pullback_type_mismatch():
    with pytest.raises(TypeMismatch):
        lax_pullback(identity(C2), identity(A2))


def test_lax_kernel_examples():
    f = MonotoneMap.from_dict(A2, C2, {"a": 0, "b": 1})
    assert lax_kernel(f).element_pairs() == [("a", "a"), ("a", "b"), ("b", "b")]
    V = posets_up_to_iso(3)[2]
    assert lax_kernel(identity(V)).pairs == order_relation(V).pairs
    assert len(lax_kernel(constant(V, C2, 0))) == 9


def test_epi_diagonal_examples():
    assert epi_diagonal(C2).members() == [(0, 0), (0, 1), (1, 1)]
    assert epi_diagonal(A2).members() == [("a", "a"), ("b", "b")]
    assert len(epi_diagonal(terminal())) == 1


@given(posets(max_n=3), posets(max_n=3))
def test_epi_diagonal_represents_pointwise_order(X, T):
    D = epi_diagonal(X)
    P = D.as_poset()
    pairs = {
        (f, g) for f in monotone_maps(T, X) for g in monotone_maps(T, X)
        if all(X.leq(a, b) for a, b in zip(f, g))
    }
    got = set()
    for h in monotone_maps(T, P):
        got.add((tuple(X.index(P.elements[k][0]) for k in h),
                 tuple(X.index(P.elements[k][1]) for k in h)))
    assert got == pairs


def _random_diagram(data):
    X = data.draw(posets(min_n=1, max_n=3))
    Y = data.draw(posets(min_n=1, max_n=3))
    f, g = data.draw(maps(X, Y)), data.draw(maps(X, Y))
    D = FiniteDiagram({"X": X, "Y": Y}, (("X", "Y", f), ("X", "Y", g)))
    WX = data.draw(posets(min_n=1, max_n=2))
    WY = data.draw(posets(min_n=1, max_n=2))
    wf, wg = data.draw(maps(WX, WY)), data.draw(maps(WX, WY))
    return D, Weight({"X": WX, "Y": WY}, (wf, wg))


def _cone_oracle(D, W, T):
    """Cones by brute force: every family of maps, filtered by the conditions."""
    coords = [(i, w) for i in D.nodes for w in range(W.nodes[i].n)]
    legs = [monotone_maps(T, D.nodes[i]) for i, _ in coords]
    pos = {c: k for k, c in enumerate(coords)}
    out = []
    for fam in itertools.product(*legs):
        ok = True
        for i in D.nodes:
            Wi = W.nodes[i]
            for w, w2 in itertools.product(range(Wi.n), repeat=2):
                if Wi.leq(w, w2):
                    a, b = fam[pos[(i, w)]], fam[pos[(i, w2)]]
                    ok &= all(D.nodes[i].leq(x, y) for x, y in zip(a, b))
        for (src, dst, fm), wm in zip(D.edges, W.edges):
            for w in range(W.nodes[src].n):
                a = fam[pos[(src, w)]]
                b = fam[pos[(dst, wm.images[w])]]
                ok &= tuple(fm.images[x] for x in a) == tuple(b)
        if ok:
            out.append(fam)
    return out


@given(st.data())
def test_weighted_limit_universal_property(data):
    D, W = _random_diagram(data)
    lim = weighted_limit(D, W)
    assert verify_weighted_limit(D, W, lim, APEXES[:4]).verdict


@given(st.data())
def test_cones_match_brute_force(data):
    D, W = _random_diagram(data)
    T = data.draw(posets(max_n=2))
    expect = _cone_oracle(D, W, T)
    lim = weighted_limit(D, W)
    assert len(hom_poset(T, lim.poset)) == len(expect)
    assert len(all_cones(D, W, T)) == len(expect)


@given(st.data())
def test_conical_limit_matches_direct_equalizer(data):
    X = data.draw(posets(min_n=1, max_n=4))
    Y = data.draw(posets(min_n=1, max_n=3))
    f, g = data.draw(maps(X, Y)), data.draw(maps(X, Y))
    L = equalizer(f, g)
    direct = [x for x in range(X.n) if f.images[x] == g.images[x]]
    assert [e[0] for e in L.poset.elements] == [X.elements[x] for x in direct]


@given(st.data())
def test_comma_weighted_matches_lax_pullback(data):
    X, Y, Z = (data.draw(posets(min_n=1, max_n=3)) for _ in range(3))
    f, g = data.draw(maps(X, Y)), data.draw(maps(Z, Y))
    L, _ = lax_pullback(f, g)
    C = comma_as_weighted_limit(f, g)
    assert is_isomorphic(L, C.poset)


@given(st.data())
def test_conical_product_of_two(data):
    X, Y = data.draw(posets(max_n=3)), data.draw(posets(max_n=3))
    D = FiniteDiagram({"X": X, "Y": Y}, ())
    assert is_isomorphic(weighted_limit(D, conical_weight(D)).poset, product(X, Y))


@given(st.data())
def test_embeddings_stable_under_pullback(data):
    X, Y, Z = (data.draw(posets(min_n=1, max_n=3)) for _ in range(3))
    f, g = data.draw(maps(X, Y)), data.draw(maps(Z, Y))
    # v: W -> X is the pullback of g along f
    _, u, v = canonical_pullback(f, g)
    if classify(g).embedding:
        assert classify(v).embedding
    if classify(g).surjection:
        assert classify(v).surjection
