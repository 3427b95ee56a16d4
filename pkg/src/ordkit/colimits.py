"""Congruences, quotients and the finite colimits built from them."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotACongruence, TypeMismatch
from .finposet import (
    FinPoset,
    MonotoneMap,
    bits,
    discrete,
    hom_poset,
    tensor,
)
from .report import Report
from .subobjects import Relation, Subobject, image


@dataclass(frozen=True)
class Congruence:
    base: FinPoset
    pairs: Relation

    def __post_init__(self):
        problem = congruence_violation(self.pairs)
        if problem is not None:
            raise NotACongruence(*problem)

    def holds(self, a, b) -> bool:
        return (a, b) in self.pairs


def congruence_violation(R: Relation):
    """``(axiom, witness)`` for the first failed congruence axiom, else None."""
    X = R.src
    if R.dst != X:
        return "typing", "relation is not on a single poset"
    for a, b in X.pairs():
        if (a, b) not in R.pairs:
            return "contains-order", (X.elements[a], X.elements[b])
    rows = R.rows()
    for a in range(X.n):
        for b in bits(rows[a]):
            extra = rows[b] & ~rows[a]
            if extra:
                c = (extra & -extra).bit_length() - 1
                return "transitivity", tuple(X.elements[i] for i in (a, b, c))
    return None


def _step(X: FinPoset, rows: list) -> list:
    """``R |-> [<=] or R or (R o R)`` on bitmask rows."""
    out = []
    for a in range(X.n):
        r = X.up[a] | rows[a]
        for b in bits(rows[a]):
            r |= rows[b]
        out.append(r)
    return out


def congruence_closure(X: FinPoset, R: Relation) -> Congruence:
    """Least congruence containing ``R``: iterate the expansive map to its fixpoint."""
    if R.src != X or R.dst != X:
        raise TypeMismatch("relation is not on the given poset")
    rows = R.rows()
    while True:
        nxt = _step(X, rows)
        if nxt == rows:
            break
        rows = nxt
    pairs = frozenset((a, b) for a in range(X.n) for b in bits(rows[a]))
    return Congruence(X, Relation(X, X, pairs))


def all_congruences(X: FinPoset):
    """Every congruence on ``X`` (transitive relations containing the order)."""
    order = set(X.pairs())
    free = [(a, b) for a in range(X.n) for b in range(X.n) if (a, b) not in order]
    base = [X.up[a] for a in range(X.n)]

    def transitive(rows):
        return all(rows[b] & ~rows[a] == 0 for a in range(X.n) for b in bits(rows[a]))

    for choice in range(1 << len(free)):
        rows = list(base)
        for k in bits(choice):
            a, b = free[k]
            rows[a] |= 1 << b
        if transitive(rows):
            yield Congruence(X, Relation(X, X, frozenset(
                (a, b) for a in range(X.n) for b in bits(rows[a]))))


@dataclass(frozen=True)
class Quotient:
    poset: FinPoset
    map: MonotoneMap
    classes: tuple  # member index masks, one per element of ``poset``


def quotient(X: FinPoset, C: Congruence | Relation) -> Quotient:
    """``X/C``: classes of mutual relatedness ordered by ``C``.

    A class is named by its member with the smallest index.
    """
    R = C.pairs if isinstance(C, Congruence) else C
    problem = congruence_violation(R)
    if problem is not None:
        raise NotACongruence(*problem)
    if R.src != X:
        raise TypeMismatch("congruence is not on the given poset")
    rows = R.rows()
    cols = [0] * X.n
    for a in range(X.n):
        for b in bits(rows[a]):
            cols[b] |= 1 << a
    cls_of = [-1] * X.n
    classes = []
    for a in range(X.n):
        if cls_of[a] < 0:
            members = rows[a] & cols[a]
            for b in bits(members):
                cls_of[b] = len(classes)
            classes.append(members)
    reps = [(m & -m).bit_length() - 1 for m in classes]
    up = []
    for ra in reps:
        up.append(sum(1 << k for k, rb in enumerate(reps) if (rows[ra] >> rb) & 1))
    Q = FinPoset(tuple(X.elements[r] for r in reps), tuple(up))
    return Quotient(Q, MonotoneMap(X, Q, tuple(cls_of)), tuple(classes))


def coinserter(f: MonotoneMap, g: MonotoneMap) -> Quotient:
    """Universal ``q`` with ``f;q <= g;q``, as a quotient of the codomain."""
    if f.dom != g.dom or f.cod != g.cod:
        raise TypeMismatch("coinserter needs a parallel pair")
    X = f.cod
    R = Relation(X, X, frozenset(zip(f.images, g.images)))
    return quotient(X, congruence_closure(X, R))


def maps_inverting(R: Relation, T: FinPoset) -> list:
    """Maps ``u: X -> T`` whose lax kernel contains ``R``."""
    X = R.src
    return [
        u for u in hom_poset(X, T).maps
        if all(T.leq(u.images[a], u.images[b]) for a, b in R.pairs)
    ]


def verify_represents(q: MonotoneMap, R: Relation, apexes) -> Report:
    """``h |-> q;h`` is an order-iso ``hom(Q, T) -> {u : R <= lker u}`` for each apex."""
    for T in apexes:
        targets = maps_inverting(R, T)
        mine = hom_poset(q.cod, T)
        induced = [q.then(h) for h in mine.maps]
        if len(set(induced)) != len(induced) or set(induced) != set(targets):
            return Report("quotient-law", "quotient-represents-congruence", T, False,
                          {"factored": len(induced), "inverting": len(targets)})
        for a, u in enumerate(induced):
            for b, v in enumerate(induced):
                if u.pointwise_le(v) != mine.poset.leq(a, b):
                    return Report("quotient-law", "quotient-represents-congruence", T, False,
                                  {"pair": (a, b)})
    return Report("quotient-law", "quotient-represents-congruence", len(apexes), True)


def verify_coinserter(f: MonotoneMap, g: MonotoneMap, q: MonotoneMap, apexes) -> Report:
    X = f.cod
    return verify_represents(q, Relation(X, X, frozenset(zip(f.images, g.images))), apexes)


# disjoint unions ------------------------------------------------------------------------


def disjoint_union(A: FinPoset, B: FinPoset) -> tuple:
    """``A + B`` with elements ``(0, a)`` and ``(1, b)``, plus both injections."""
    elements = tuple((0, a) for a in A.elements) + tuple((1, b) for b in B.elements)
    shift = A.n
    up = tuple(A.up) + tuple(m << shift for m in B.up)
    S = FinPoset(elements, up)
    ia = MonotoneMap(A, S, tuple(range(A.n)))
    ib = MonotoneMap(B, S, tuple(range(shift, shift + B.n)))
    return S, ia, ib


def disjoint_union_axioms(ia: MonotoneMap, ib: MonotoneMap) -> dict:
    """The covering and incomparability conditions on two embeddings."""
    S = ia.cod
    in_a, in_b = image(ia), image(ib)
    cover = (in_a | in_b) == Subobject.top(S)
    a_le_b = any(S.leq(x, y) for x in bits(in_a.mask) for y in bits(in_b.mask))
    b_le_a = any(S.leq(y, x) for x in bits(in_a.mask) for y in bits(in_b.mask))
    return {
        "cover": cover,
        "a-not-below-b": not a_le_b,
        "b-not-below-a": not b_le_a,
        "embeddings": ia.is_embedding() and ib.is_embedding(),
    }


def copairing(ia: MonotoneMap, ib: MonotoneMap, f: MonotoneMap, g: MonotoneMap) -> MonotoneMap:
    S = ia.cod
    images = [None] * S.n
    for a, s in enumerate(ia.images):
        images[s] = f.images[a]
    for b, s in enumerate(ib.images):
        images[s] = g.images[b]
    return MonotoneMap(S, f.cod, tuple(images))


def verify_coproduct(ia: MonotoneMap, ib: MonotoneMap, T: FinPoset) -> bool:
    """``hom(A+B, T) -> hom(A, T) x hom(B, T)`` is an order-isomorphism."""
    S = ia.cod
    left = hom_poset(S, T)
    ha, hb = hom_poset(ia.dom, T), hom_poset(ib.dom, T)
    pairs = [(ia.then(h), ib.then(h)) for h in left.maps]
    if len(set(pairs)) != len(pairs) or len(pairs) != len(ha) * len(hb):
        return False
    for a, (f, g) in enumerate(pairs):
        for b, (f2, g2) in enumerate(pairs):
            if left.poset.leq(a, b) != (f.pointwise_le(f2) and g.pointwise_le(g2)):
                return False
    return True


def copower(S, X: FinPoset) -> FinPoset:
    """``S . X`` for a set ``S``: ``S``-indexed disjoint copies of ``X``."""
    return tensor(discrete(tuple(S)), X)


# lax pushouts ----------------------------------------------------------------------------


@dataclass(frozen=True)
class LaxPushout:
    poset: FinPoset
    iota_a: MonotoneMap
    iota_b: MonotoneMap
    conditions: dict


def lax_pushout(f: MonotoneMap, g: MonotoneMap) -> LaxPushout:
    """Quotient of ``A + B`` forcing ``iota_A f(r) <= iota_B g(r)``.

    The three characterising conditions are evaluated on the result and
    reported rather than assumed.
    """
    if f.dom != g.dom:
        raise TypeMismatch("lax pushout needs a common domain")
    A, B = f.cod, g.cod
    S, ia, ib = disjoint_union(A, B)
    forced = frozenset((ia.images[f.images[r]], ib.images[g.images[r]]) for r in range(f.dom.n))
    q = quotient(S, congruence_closure(S, Relation(S, S, forced)))
    ja, jb = ia.then(q.map), ib.then(q.map)
    P = q.poset
    spans = {(f.images[r], g.images[r]) for r in range(f.dom.n)}
    cond_ii = all(
        (a, b) in spans
        for a in range(A.n) for b in range(B.n)
        if P.leq(ja.images[a], jb.images[b])
    )
    cond_iii = all(P.leq(ja.images[a], jb.images[b]) for a, b in spans)
    cover = (image(ja) | image(jb)) == Subobject.top(P)
    # order-mediated variant: a <= f(r) and g(r) <= b for some r
    mediated = {
        (a, b)
        for r in range(f.dom.n)
        for a in bits(A.down[f.images[r]])
        for b in bits(B.up[g.images[r]])
    }
    below = {(a, b) for a in range(A.n) for b in range(B.n) if P.leq(ja.images[a], jb.images[b])}
    conditions = {
        "cover": cover,
        "below-implies-span": cond_ii,
        "span-implies-below": cond_iii,
        "iota-a-embedding": ja.is_embedding(),
        "iota-b-embedding": jb.is_embedding(),
        "below-iff-mediated": below == mediated,
    }
    return LaxPushout(P, ja, jb, conditions)


def verify_lax_pushout(f: MonotoneMap, g: MonotoneMap, lp: LaxPushout, apexes) -> Report:
    """Maps ``P -> T`` correspond order-isomorphically to pairs ``(u, v)`` with ``f;u <= g;v``."""
    A, B = f.cod, g.cod
    for T in apexes:
        mine = hom_poset(lp.poset, T)
        induced = [(lp.iota_a.then(h), lp.iota_b.then(h)) for h in mine.maps]
        wanted = {
            (u, v)
            for u in hom_poset(A, T).maps
            for v in hom_poset(B, T).maps
            if f.then(u).pointwise_le(g.then(v))
        }
        if len(set(induced)) != len(induced) or set(induced) != wanted:
            return Report("lax-pushout-universal", "lax-pushout", T, False,
                          {"maps": len(induced), "pairs": len(wanted)})
        for a, (u, v) in enumerate(induced):
            for b, (u2, v2) in enumerate(induced):
                if mine.poset.leq(a, b) != (u.pointwise_le(u2) and v.pointwise_le(v2)):
                    return Report("lax-pushout-universal", "lax-pushout", T, False,
                                  {"pair": (a, b)})
    return Report("lax-pushout-universal", "lax-pushout", len(apexes), True)


def surjection_is_quotient_of_kernel(f: MonotoneMap) -> bool:
    """Is a surjection, up to iso, the quotient by its own lax kernel?"""
    from .limits import lax_kernel

    if not f.is_surjective():
        raise TypeMismatch("map is not surjective")
    q = quotient(f.dom, lax_kernel(f))
    comparison = [None] * q.poset.n
    for x, c in enumerate(q.map.images):
        comparison[c] = f.images[x]
    k = MonotoneMap(q.poset, f.cod, tuple(comparison))
    return k.is_embedding() and k.is_surjective()
