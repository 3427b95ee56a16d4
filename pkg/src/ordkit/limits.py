"""Finite weighted limits over finite graphs and their special cases.

A weighted limit of ``F`` with weight ``W`` is the sub-poset of
``prod_i prod_{w in W(i)} F(i)`` of tuples ``(x_{i,w})`` such that

* ``x_{i,w} <= x_{i,w'}`` whenever ``w <= w'`` in ``W(i)``, and
* ``F(e)(x_{i,w}) = x_{j,W(e)(w)}`` for every edge ``e: i -> j``.

The construction is polynomial in the size of the carrier; checking the
universal property is a separate, exponential, opt-in step.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import SizeLimit, TypeMismatch
from .finposet import (
    FinPoset,
    MonotoneMap,
    bits,
    hom_poset,
    identity,
    mask_of,
    product,
    terminal,
)
from .report import Report
from .subobjects import Relation, Subobject

MAX_LIMIT_CARRIER = 200_000


@dataclass(frozen=True)
class FiniteDiagram:
    nodes: dict  # node id -> FinPoset, in insertion order
    edges: tuple  # (src, dst, MonotoneMap)

    def __post_init__(self):
        for src, dst, f in self.edges:
            if src not in self.nodes or dst not in self.nodes:
                raise TypeMismatch(f"edge {src!r} -> {dst!r} mentions an unknown node")
            if f.dom != self.nodes[src] or f.cod != self.nodes[dst]:
                raise TypeMismatch(f"edge {src!r} -> {dst!r} is not typed by its nodes")

    def __hash__(self):
        return hash((tuple(self.nodes.items()), self.edges))


@dataclass(frozen=True)
class Weight:
    nodes: dict  # node id -> FinPoset
    edges: tuple  # one MonotoneMap per diagram edge, in the same order

    def __hash__(self):
        return hash((tuple(self.nodes.items()), self.edges))

    def check(self, D: FiniteDiagram) -> None:
        if set(self.nodes) != set(D.nodes):
            raise TypeMismatch("weight and diagram have different nodes")
        if len(self.edges) != len(D.edges):
            raise TypeMismatch("weight needs one map per diagram edge")
        for (src, dst, _), wf in zip(D.edges, self.edges):
            if wf.dom != self.nodes[src] or wf.cod != self.nodes[dst]:
                raise TypeMismatch(f"weight of edge {src!r} -> {dst!r} is mistyped")


def conical_weight(D: FiniteDiagram) -> Weight:
    one = terminal()
    return Weight({i: one for i in D.nodes}, tuple(identity(one) for _ in D.edges))


@dataclass(frozen=True)
class Cone:
    apex: FinPoset
    legs: dict  # (node, weight index) -> MonotoneMap apex -> F(node)


@dataclass(frozen=True)
class WeightedLimit:
    poset: FinPoset
    cone: Cone
    coords: tuple  # (node, weight index), the coordinate order of the carrier


def _coordinates(D: FiniteDiagram, W: Weight) -> list:
    return [(i, w) for i in D.nodes for w in range(W.nodes[i].n)]


def weighted_limit(D: FiniteDiagram, W: Weight) -> WeightedLimit:
    W.check(D)
    coords = _coordinates(D, W)
    pos = {c: k for k, c in enumerate(coords)}
    F = [D.nodes[i] for i, _ in coords]
    # constraints are attached to the later of their two coordinates
    order_cons = [[] for _ in coords]  # (earlier k, earlier_is_lower)
    eq_cons = [[] for _ in coords]  # (earlier k, map images, map applied to earlier?)
    for i in D.nodes:
        Wi = W.nodes[i]
        for w in range(Wi.n):
            for w2 in bits(Wi.up[w]):
                if w2 == w:
                    continue
                a, b = pos[(i, w)], pos[(i, w2)]
                if a < b:
                    order_cons[b].append((a, True))
                else:
                    order_cons[a].append((b, False))
    for (src, dst, f), wf in zip(D.edges, W.edges):
        for w in range(W.nodes[src].n):
            a, b = pos[(src, w)], pos[(dst, wf.images[w])]
            if a == b:
                eq_cons[a].append((a, f.images, True))
            elif a < b:
                eq_cons[b].append((a, f.images, True))
            else:
                eq_cons[a].append((b, f.images, False))

    n = len(coords)
    tup = [0] * n
    found = []

    def consistent(k, x):
        Pk = F[k]
        for j, lower in order_cons[k]:
            if lower:
                if not Pk.leq(tup[j], x):
                    return False
            elif not Pk.leq(x, tup[j]):
                return False
        for j, fimg, earlier_is_src in eq_cons[k]:
            if j == k:
                if fimg[x] != x:
                    return False
            elif earlier_is_src:
                if fimg[tup[j]] != x:
                    return False
            elif fimg[x] != tup[j]:
                return False
        return True

    def rec(k):
        if k == n:
            found.append(tuple(tup))
            if len(found) > MAX_LIMIT_CARRIER:
                raise SizeLimit("weighted limit carrier too large")
            return
        for x in range(F[k].n):
            if consistent(k, x):
                tup[k] = x
                rec(k + 1)

    rec(0)
    up = []
    for a in found:
        m = 0
        for bi, b in enumerate(found):
            if all(F[k].leq(a[k], b[k]) for k in range(n)):
                m |= 1 << bi
        up.append(m)
    elements = tuple(tuple(F[k].elements[t[k]] for k in range(n)) for t in found)
    L = FinPoset(elements, tuple(up))
    legs = {
        c: MonotoneMap(L, F[k], tuple(t[k] for t in found)) for k, c in enumerate(coords)
    }
    return WeightedLimit(L, Cone(L, legs), tuple(coords))


def all_cones(D: FiniteDiagram, W: Weight, T: FinPoset) -> list:
    """Brute-force enumeration of weighted cones with apex ``T``.

    Each cone is a tuple of maps ``T -> F(i)`` in coordinate order.
    """
    coords = _coordinates(D, W)
    homs = {i: hom_poset(T, D.nodes[i]) for i in D.nodes}
    out = []
    chosen = [None] * len(coords)
    pos = {c: k for k, c in enumerate(coords)}

    def ok(k):
        i, w = coords[k]
        u = chosen[k]
        Wi = W.nodes[i]
        for j in range(k):
            i2, w2 = coords[j]
            if i2 == i and Wi.leq(w2, w) and not chosen[j].pointwise_le(u):
                return False
            if i2 == i and Wi.leq(w, w2) and not u.pointwise_le(chosen[j]):
                return False
        for (src, dst, f), wf in zip(D.edges, W.edges):
            for ws in range(W.nodes[src].n):
                a, b = pos[(src, ws)], pos[(dst, wf.images[ws])]
                if max(a, b) == k and chosen[a].then(f) != chosen[b]:
                    return False
        return True

    def rec(k):
        if k == len(coords):
            out.append(tuple(chosen))
            return
        for u in homs[coords[k][0]].maps:
            chosen[k] = u
            if ok(k):
                rec(k + 1)
        chosen[k] = None

    rec(0)
    return out


def verify_weighted_limit(D: FiniteDiagram, W: Weight, lim: WeightedLimit, apexes) -> Report:
    """Maps ``T -> L`` must correspond order-isomorphically to cones on ``T``."""
    coords = lim.coords
    for T in apexes:
        maps = hom_poset(T, lim.poset)
        induced = [tuple(h.then(lim.cone.legs[c]) for c in coords) for h in maps.maps]
        cones = all_cones(D, W, T)
        if len(set(induced)) != len(induced) or set(induced) != set(cones):
            return Report("weighted-limit-universal", "weighted-limit", T, False,
                          {"maps": len(induced), "cones": len(cones)})
        for a in range(len(induced)):
            for b in range(len(induced)):
                cone_le = all(x.pointwise_le(y) for x, y in zip(induced[a], induced[b]))
                if cone_le != maps.poset.leq(a, b):
                    return Report("weighted-limit-universal", "weighted-limit", T, False,
                                  {"pair": (a, b)})
    return Report("weighted-limit-universal", "weighted-limit", len(apexes), True)


# special cases -----------------------------------------------------------------------------


def limit_product(*posets: FinPoset) -> WeightedLimit:
    D = FiniteDiagram({k: P for k, P in enumerate(posets)}, ())
    return weighted_limit(D, conical_weight(D))


def equalizer(f: MonotoneMap, g: MonotoneMap) -> WeightedLimit:
    if f.dom != g.dom or f.cod != g.cod:
        raise TypeMismatch("equalizer needs a parallel pair")
    D = FiniteDiagram({"X": f.dom, "Y": f.cod}, (("X", "Y", f), ("X", "Y", g)))
    return weighted_limit(D, conical_weight(D))


def cotensor(P: FinPoset, X: FinPoset) -> WeightedLimit:
    """``{P, X}``: monotone ``P``-indexed families in ``X``."""
    D = FiniteDiagram({"X": X}, ())
    return weighted_limit(D, Weight({"X": P}, ()))


def comma_as_weighted_limit(f: MonotoneMap, g: MonotoneMap) -> WeightedLimit:
    """The lax pullback of ``f`` and ``g`` written as a weighted limit."""
    from .finposet import chain

    two, one = chain(2), terminal()
    D = FiniteDiagram({"X": f.dom, "Y": f.cod, "Z": g.dom}, (("X", "Y", f), ("Z", "Y", g)))
    W = Weight({"X": one, "Y": two, "Z": one},
               (MonotoneMap(one, two, (0,)), MonotoneMap(one, two, (1,))))
    return weighted_limit(D, W)


def lax_pullback(f: MonotoneMap, g: MonotoneMap) -> tuple:
    """``{(x, z) : f(x) <= g(z)}`` with its two projections."""
    if f.cod != g.cod:
        raise TypeMismatch("lax pullback needs a common codomain")
    X, Z, Y = f.dom, g.dom, f.cod
    XZ = product(X, Z)
    mask = mask_of(x * Z.n + z for x in range(X.n) for z in range(Z.n)
                   if Y.leq(f.images[x], g.images[z]))
    L = XZ.restrict(mask)
    keep = list(bits(mask))
    p1 = MonotoneMap(L, X, tuple(k // Z.n for k in keep))
    p2 = MonotoneMap(L, Z, tuple(k % Z.n for k in keep))
    return L, (p1, p2)


def lax_kernel(f: MonotoneMap) -> Relation:
    X, Y = f.dom, f.cod
    return Relation(X, X, frozenset(
        (a, b) for a in range(X.n) for b in range(X.n) if Y.leq(f.images[a], f.images[b])
    ))


def epi_diagonal(X: FinPoset) -> Subobject:
    """``[<=_X]`` as a subobject of ``X x X``."""
    return lax_kernel(identity(X)).as_subobject()
