"""Subobjects, relations, images and the direct/inverse image adjunction.

In finite posets an embedding modulo isomorphism is just a subset carrying
the induced order, so a :class:`Subobject` is an ambient poset plus a
member bitmask and ``Sub(X)`` is the powerset of ``X``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import config
from .errors import NotAPullback, NotOrderPreserving, NotTotal, TypeMismatch
from .finposet import (
    FinPoset,
    MonotoneMap,
    bits,
    from_jsonable,
    hom_poset,
    inclusion,
    label,
    mask_of,
    poset_from_json,
    poset_to_json,
    product,
    to_jsonable,
)
from .generate import upset_masks
from .lattice import DistLattice
from .report import Report


@dataclass(frozen=True)
class Subobject:
    ambient: FinPoset
    mask: int

    @classmethod
    def of(cls, X: FinPoset, elements) -> Subobject:
        return cls(X, mask_of(X.index(e) for e in elements))

    @classmethod
    def top(cls, X: FinPoset) -> Subobject:
        return cls(X, X.full_mask)

    @classmethod
    def bottom(cls, X: FinPoset) -> Subobject:
        return cls(X, 0)

    def members(self) -> list:
        return self.ambient.elems(self.mask)

    def __contains__(self, element) -> bool:
        return bool((self.mask >> self.ambient.index(element)) & 1)

    def __len__(self):
        return self.mask.bit_count()

    def __repr__(self):
        return f"Subobject({[label(e) for e in self.members()]})"

    def _same(self, other: Subobject):
        if self.ambient != other.ambient:
            raise TypeMismatch("subobjects of different objects")

    def __le__(self, other: Subobject) -> bool:
        self._same(other)
        return self.mask & ~other.mask == 0

    def __and__(self, other: Subobject) -> Subobject:
        self._same(other)
        return Subobject(self.ambient, self.mask & other.mask)

    def __or__(self, other: Subobject) -> Subobject:
        self._same(other)
        return Subobject(self.ambient, self.mask | other.mask)

    def as_poset(self) -> FinPoset:
        return self.ambient.restrict(self.mask)

    def inclusion(self) -> MonotoneMap:
        return inclusion(self.ambient, self.mask)

    def is_upward(self) -> bool:
        return self.ambient.is_upset(self.mask)

    def complement(self) -> Subobject | None:
        """Search ``Sub(X)`` for a complement (meet bottom, join top)."""
        full = self.ambient.full_mask
        for d in range(full + 1):
            if d & self.mask == 0 and d | self.mask == full:
                return Subobject(self.ambient, d)
        return None


def all_subobjects(X: FinPoset) -> list:
    config.check_size(X.n, "Sub(X) ambient")
    return [Subobject(X, m) for m in range(1 << X.n)]


# relations ------------------------------------------------------------------------


@dataclass(frozen=True)
class Relation:
    src: FinPoset
    dst: FinPoset
    pairs: frozenset  # index pairs

    @classmethod
    def of(cls, src: FinPoset, dst: FinPoset, pairs) -> Relation:
        return cls(src, dst, frozenset((src.index(a), dst.index(b)) for a, b in pairs))

    def __contains__(self, pair) -> bool:
        a, b = pair
        return (self.src.index(a), self.dst.index(b)) in self.pairs

    def element_pairs(self) -> list:
        return [(self.src.elements[i], self.dst.elements[j]) for i, j in sorted(self.pairs)]

    def __len__(self):
        return len(self.pairs)

    def rows(self) -> list:
        """Bitmask of related targets per source index."""
        rows = [0] * self.src.n
        for i, j in self.pairs:
            rows[i] |= 1 << j
        return rows

    def as_subobject(self) -> Subobject:
        P = product(self.src, self.dst)
        m = self.dst.n
        return Subobject(P, mask_of(i * m + j for i, j in self.pairs))

    def to_json(self) -> dict:
        return {
            "src": poset_to_json(self.src),
            "dst": poset_to_json(self.dst),
            "pairs": [[to_jsonable(a), to_jsonable(b)] for a, b in self.element_pairs()],
        }

    @classmethod
    def from_json(cls, data: dict, src: FinPoset | None = None,
                  dst: FinPoset | None = None) -> Relation:
        src = src if src is not None else poset_from_json(data["src"])
        if dst is None:
            dst = poset_from_json(data["dst"]) if "dst" in data else src
        pairs = [(from_jsonable(a), from_jsonable(b)) for a, b in data["pairs"]]
        return cls.of(src, dst, pairs)


def order_relation(X: FinPoset) -> Relation:
    return Relation(X, X, frozenset(X.pairs()))


def graph_of(f: MonotoneMap) -> Relation:
    return Relation(f.dom, f.cod, frozenset(enumerate(f.images)))


def relation_to_morphism(R: Relation) -> MonotoneMap:
    """The monotone map whose graph is ``R``.

    ``R`` must be total and order-preserving (which forces functionality).
    The witness reported on failure is the lexicographically least one.
    """
    X, Y = R.src, R.dst
    rows = R.rows()
    for x in range(X.n):
        if rows[x] == 0:
            raise NotTotal(X.elements[x])
    ordered = sorted(R.pairs)
    for (x, y), (x2, y2) in itertools.product(ordered, ordered):
        if X.leq(x, x2) and not Y.leq(y, y2):
            raise NotOrderPreserving(
                (X.elements[x], Y.elements[y]), (X.elements[x2], Y.elements[y2])
            )
    return MonotoneMap(X, Y, tuple(r.bit_length() - 1 for r in rows))


# images -----------------------------------------------------------------------------


def image(f: MonotoneMap) -> Subobject:
    return Subobject(f.cod, f.image_mask())


def factorize(f: MonotoneMap) -> tuple:
    """``f`` as a surjection onto its image followed by the image embedding."""
    S = image(f)
    emb = S.inclusion()
    pos = {old: new for new, old in enumerate(bits(S.mask))}
    surj = MonotoneMap(f.dom, emb.dom, tuple(pos[y] for y in f.images))
    return surj, emb


def inverse_image(f: MonotoneMap, S: Subobject) -> Subobject:
    if S.ambient != f.cod:
        raise TypeMismatch("subobject does not live on the codomain")
    return Subobject(f.dom, mask_of(x for x, y in enumerate(f.images) if (S.mask >> y) & 1))


def direct_image(f: MonotoneMap, S: Subobject) -> Subobject:
    if S.ambient != f.dom:
        raise TypeMismatch("subobject does not live on the domain")
    return Subobject(f.cod, mask_of(f.images[x] for x in bits(S.mask)))


def upward_closure(S: Subobject) -> Subobject:
    return Subobject(S.ambient, S.ambient.up_closure(S.mask))


def up_lattice(X: FinPoset) -> DistLattice:
    """``Up(X)``: the upward subobjects under intersection and union."""
    config.check_size(X.n, "Up(X) ambient")
    return DistLattice.of_sets(X, upset_masks(X))


def cu_lattice(X: FinPoset) -> tuple:
    """``CU(X)`` and a complement witness for each member.

    Complements are found by searching ``Sub(X)``; an upset without one is
    left out.
    """
    config.check_size(X.n, "CU(X) ambient")
    members = []
    complements = {}
    for m in upset_masks(X):
        c = Subobject(X, m).complement()
        if c is not None:
            members.append(m)
            complements[m] = c.mask
    return DistLattice.of_sets(X, members), complements


# laws ---------------------------------------------------------------------------------


def check_adjunction(f: MonotoneMap) -> Report:
    """``f[S] <= T`` iff ``S <= f^-1(T)`` for all subobjects."""
    for S in all_subobjects(f.dom):
        fS = direct_image(f, S)
        for T in all_subobjects(f.cod):
            if (fS <= T) != (S <= inverse_image(f, T)):
                return Report("image-adjunction", "direct-inverse-image", f, False,
                              {"S": S.members(), "T": T.members()})
    return Report("image-adjunction", "direct-inverse-image", f, True)


def check_frobenius(f: MonotoneMap) -> Report:
    """``f[S and f^-1 T] = f[S] and T`` for all subobjects."""
    for S in all_subobjects(f.dom):
        fS = direct_image(f, S)
        for T in all_subobjects(f.cod):
            if direct_image(f, S & inverse_image(f, T)) != fS & T:
                return Report("frobenius", "frobenius", f, False,
                              {"S": S.members(), "T": T.members()})
    return Report("frobenius", "frobenius", f, True)


def is_pullback_square(u: MonotoneMap, v: MonotoneMap, f: MonotoneMap, g: MonotoneMap) -> bool:
    """Is ``W --u--> Z``, ``W --v--> X`` a pullback of ``X --f--> Y <--g-- Z``?"""
    if u.dom != v.dom or v.cod != f.dom or u.cod != g.dom or f.cod != g.cod:
        raise TypeMismatch("maps do not form a square")
    if v.then(f) != u.then(g):
        return False
    W, X, Z = u.dom, f.dom, g.dom
    pairs = [(v.images[w], u.images[w]) for w in range(W.n)]
    expected = {(x, z) for x in range(X.n) for z in range(Z.n) if f.images[x] == g.images[z]}
    if len(set(pairs)) != len(pairs) or set(pairs) != expected:
        return False
    # the comparison map must reflect the componentwise order
    for a in range(W.n):
        for b in range(W.n):
            ordered = X.leq(pairs[a][0], pairs[b][0]) and Z.leq(pairs[a][1], pairs[b][1])
            if ordered != W.leq(a, b):
                return False
    return True


def check_beck_chevalley(u: MonotoneMap, v: MonotoneMap, f: MonotoneMap, g: MonotoneMap) -> Report:
    """``g^-1(f[S]) = u[v^-1(S)]`` for every ``S`` in ``Sub(X)``."""
    if not is_pullback_square(u, v, f, g):
        raise NotAPullback("the given square is not a pullback")
    for S in all_subobjects(f.dom):
        lhs = inverse_image(g, direct_image(f, S))
        rhs = direct_image(u, inverse_image(v, S))
        if lhs != rhs:
            return Report("beck-chevalley", "beck-chevalley", (f, g), False,
                          {"S": S.members(), "left": lhs.members(), "right": rhs.members()})
    return Report("beck-chevalley", "beck-chevalley", (f, g), True)


def canonical_pullback(f: MonotoneMap, g: MonotoneMap) -> tuple:
    """``(W, u, v)`` with ``W = {(x, z) : f x = g z}``, ``v`` and ``u`` the projections."""
    if f.cod != g.cod:
        raise TypeMismatch("pullback needs a common codomain")
    X, Z = f.dom, g.dom
    XZ = product(X, Z)
    mask = mask_of(x * Z.n + z for x in range(X.n) for z in range(Z.n)
                   if f.images[x] == g.images[z])
    W = XZ.restrict(mask)
    keep = list(bits(mask))
    v = MonotoneMap(W, X, tuple(k // Z.n for k in keep))
    u = MonotoneMap(W, Z, tuple(k % Z.n for k in keep))
    return W, u, v


# orthogonality ---------------------------------------------------------------------------


def diagonal_filler(f: MonotoneMap, i: MonotoneMap, u: MonotoneMap, v: MonotoneMap) -> MonotoneMap:
    """The diagonal ``w: B -> X`` of a square ``f;v = u;i`` (``f`` surjective, ``i`` embedding).

    Built by reading ``u`` along any section of ``f``; monotonicity is
    checked by the map constructor.
    """
    if f.then(v) != u.then(i):
        raise TypeMismatch("square does not commute")
    B = f.cod
    chosen = [None] * B.n
    for a, b in enumerate(f.images):
        if chosen[b] is None:
            chosen[b] = u.images[a]
    if any(c is None for c in chosen):
        raise TypeMismatch("top map is not surjective")
    return MonotoneMap(B, u.cod, tuple(chosen))


def all_diagonal_fillers(f: MonotoneMap, i: MonotoneMap, u: MonotoneMap, v: MonotoneMap) -> list:
    """Brute force: every monotone ``w`` with ``f;w = u`` and ``w;i = v``."""
    return [w for w in hom_poset(f.cod, u.cod).maps if f.then(w) == u and w.then(i) == v]
