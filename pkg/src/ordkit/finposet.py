"""Finite posets, monotone maps and hom-posets.

Elements are stored by index ``0..n-1``; identifiers are kept for I/O and
for building readable carriers of derived constructions.  The order is a
closed relation held as one bitmask per element: bit ``j`` of ``up[i]`` is
set iff ``i <= j``.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import cached_property
from typing import Hashable, Iterable, Iterator, Sequence

from . import config
from .errors import (
    CycleError,
    DuplicateElement,
    NotMonotone,
    SizeLimit,
    TypeMismatch,
    UnknownElement,
)


def bits(mask: int) -> Iterator[int]:
    """Indices of the set bits of ``mask``, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


@dataclass(frozen=True, eq=False)
class FinPoset:
    elements: tuple
    up: tuple

    def __post_init__(self):
        n = len(self.elements)
        if len(self.up) != n:
            raise ValueError("one up-mask per element required")
        if len(set(self.elements)) != n:
            seen = set()
            for e in self.elements:
                if e in seen:
                    raise DuplicateElement(e)
                seen.add(e)
        full = (1 << n) - 1
        for i, m in enumerate(self.up):
            if not (m >> i) & 1 or m & ~full:
                raise ValueError(f"up-mask of {self.elements[i]!r} is malformed")
            for j in bits(m):
                if j != i and (self.up[j] >> i) & 1:
                    raise CycleError(self.elements[i], self.elements[j])
                if self.up[j] & ~m:
                    raise ValueError("order relation is not transitively closed")

    @classmethod
    def trusted(cls, elements: tuple, up: tuple) -> FinPoset:
        """Skip validation; for orders that hold by construction."""
        P = object.__new__(cls)
        object.__setattr__(P, "elements", elements)
        object.__setattr__(P, "up", up)
        return P

    # identity and hashing -------------------------------------------------

    @cached_property
    def _hash(self) -> int:
        return hash((self.elements, self.up))

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, FinPoset):
            return NotImplemented
        return self.elements == other.elements and self.up == other.up

    def __repr__(self):
        return f"FinPoset({list(self.elements)!r}, covers={self.cover_pairs()!r})"

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    # lookups ---------------------------------------------------------------

    @cached_property
    def _index(self) -> dict:
        return {e: i for i, e in enumerate(self.elements)}

    def index(self, element) -> int:
        try:
            return self._index[element]
        except KeyError:
            raise UnknownElement(f"{element!r} is not an element") from None

    def __contains__(self, element):
        return element in self._index

    @property
    def n(self) -> int:
        return len(self.elements)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def leq(self, i: int, j: int) -> bool:
        return bool((self.up[i] >> j) & 1)

    def le(self, a, b) -> bool:
        """Order test on element identifiers."""
        return self.leq(self.index(a), self.index(b))

    @cached_property
    def down(self) -> tuple:
        down = [0] * self.n
        for i, m in enumerate(self.up):
            for j in bits(m):
                down[j] |= 1 << i
        return tuple(down)

    def pairs(self) -> list:
        """All index pairs ``(i, j)`` with ``i <= j``."""
        return [(i, j) for i in range(self.n) for j in bits(self.up[i])]

    @cached_property
    def cover_masks(self) -> tuple:
        strict = [m & ~(1 << i) for i, m in enumerate(self.up)]
        out = []
        for i in range(self.n):
            above = 0
            for k in bits(strict[i]):
                above |= strict[k]
            out.append(strict[i] & ~above)
        return tuple(out)

    @cached_property
    def lower_cover_masks(self) -> tuple:
        low = [0] * self.n
        for i, m in enumerate(self.cover_masks):
            for j in bits(m):
                low[j] |= 1 << i
        return tuple(low)

    def cover_pairs(self) -> list:
        return [
            (self.elements[i], self.elements[j])
            for i in range(self.n)
            for j in bits(self.cover_masks[i])
        ]

    @cached_property
    def linear_extension(self) -> tuple:
        # a strictly smaller element has a strictly smaller down-set
        return tuple(sorted(range(self.n), key=lambda i: (self.down[i].bit_count(), i)))

    def is_discrete(self) -> bool:
        return all(m == 1 << i for i, m in enumerate(self.up))

    def is_upset(self, mask: int) -> bool:
        return all(self.up[i] & ~mask == 0 for i in bits(mask))

    def up_closure(self, mask: int) -> int:
        out = 0
        for i in bits(mask):
            out |= self.up[i]
        return out

    def down_closure(self, mask: int) -> int:
        out = 0
        for i in bits(mask):
            out |= self.down[i]
        return out

    def minimal(self, mask: int) -> int:
        return mask_of(i for i in bits(mask) if self.down[i] & mask == 1 << i)

    def maximal(self, mask: int) -> int:
        return mask_of(i for i in bits(mask) if self.up[i] & mask == 1 << i)

    def elems(self, mask: int) -> list:
        return [self.elements[i] for i in bits(mask)]

    def dual(self) -> FinPoset:
        return FinPoset(self.elements, self.down)

    def relabel(self, names: Sequence) -> FinPoset:
        return FinPoset(tuple(names), self.up)

    def restrict(self, mask: int) -> FinPoset:
        """Sub-poset on the members of ``mask`` with the induced order."""
        keep = list(bits(mask))
        pos = {old: new for new, old in enumerate(keep)}
        up = tuple(mask_of(pos[j] for j in bits(self.up[i] & mask)) for i in keep)
        return FinPoset(tuple(self.elements[i] for i in keep), up)


def _from_masks(elements, up) -> FinPoset:
    return FinPoset(tuple(elements), tuple(up))


def make_poset(elements: Iterable[Hashable], pairs: Iterable = ()) -> FinPoset:
    """Close ``pairs`` (covers or any relation) into a partial order.

    >>> make_poset([0, 1], [(0, 1)]).le(0, 1)
    True
    """
    elements = tuple(elements)
    index = {}
    for i, e in enumerate(elements):
        if e in index:
            raise DuplicateElement(e)
        index[e] = i
    n = len(elements)
    up = [1 << i for i in range(n)]
    for a, b in pairs:
        if a not in index or b not in index:
            raise UnknownElement(f"pair ({a!r}, {b!r}) mentions an undeclared element")
        up[index[a]] |= 1 << index[b]
    for k in range(n):
        bit = 1 << k
        uk = up[k]
        for i in range(n):
            if up[i] & bit:
                up[i] |= uk
    for i in range(n):
        for j in bits(up[i]):
            if j > i and (up[j] >> i) & 1:
                raise CycleError(elements[i], elements[j])
    return FinPoset(elements, tuple(up))


# standard posets -----------------------------------------------------------


def chain(n: int) -> FinPoset:
    return make_poset(range(n), [(i, i + 1) for i in range(n - 1)])


def antichain(n: int, names: Sequence | None = None) -> FinPoset:
    names = tuple(names) if names is not None else tuple("abcdefghijklmnopqrstuvwxyz"[:n])
    return discrete(names)


def discrete(elements: Iterable) -> FinPoset:
    elements = tuple(elements)
    return FinPoset(elements, tuple(1 << i for i in range(len(elements))))


def terminal() -> FinPoset:
    """The one-element poset; its element is the empty tuple."""
    return FinPoset(((),), (1,))


def empty() -> FinPoset:
    return FinPoset((), ())


def vee() -> FinPoset:
    """``x, y < z``."""
    return make_poset("xyz", [("x", "z"), ("y", "z")])


# monotone maps ---------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class MonotoneMap:
    dom: FinPoset
    cod: FinPoset
    images: tuple

    def __post_init__(self):
        if len(self.images) != self.dom.n:
            raise TypeMismatch("assignment must be total on the domain")
        m = self.cod.n
        for y in self.images:
            if not 0 <= y < m:
                raise TypeMismatch(f"image index {y} outside the codomain")
        for i in range(self.dom.n):
            fi = self.images[i]
            for j in bits(self.dom.cover_masks[i]):
                if not self.cod.leq(fi, self.images[j]):
                    raise NotMonotone(self.dom.elements[i], self.dom.elements[j])

    @cached_property
    def _hash(self) -> int:
        return hash((self.dom, self.cod, self.images))

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, MonotoneMap):
            return NotImplemented
        return (
            self.images == other.images and self.dom == other.dom and self.cod == other.cod
        )

    def __repr__(self):
        return f"MonotoneMap({self.to_dict()!r})"

    @classmethod
    def from_dict(cls, dom: FinPoset, cod: FinPoset, mapping: dict) -> MonotoneMap:
        try:
            images = tuple(cod.index(mapping[e]) for e in dom.elements)
        except KeyError as exc:
            raise TypeMismatch(f"no image given for {exc.args[0]!r}") from None
        return cls(dom, cod, images)

    @classmethod
    def from_function(cls, dom: FinPoset, cod: FinPoset, fn) -> MonotoneMap:
        return cls(dom, cod, tuple(cod.index(fn(e)) for e in dom.elements))

    def __call__(self, element):
        return self.cod.elements[self.images[self.dom.index(element)]]

    def to_dict(self) -> dict:
        return {e: self.cod.elements[y] for e, y in zip(self.dom.elements, self.images)}

    def then(self, g: MonotoneMap) -> MonotoneMap:
        """Diagrammatic composite: first ``self``, then ``g``."""
        if self.cod != g.dom:
            raise TypeMismatch("codomain of the first map is not the domain of the second")
        gi = g.images
        return MonotoneMap(self.dom, g.cod, tuple(gi[y] for y in self.images))

    def image_mask(self) -> int:
        return mask_of(self.images)

    def is_injective(self) -> bool:
        return len(set(self.images)) == len(self.images)

    def is_surjective(self) -> bool:
        return self.image_mask() == self.cod.full_mask

    def is_embedding(self) -> bool:
        f = self.images
        n = self.dom.n
        return all(
            self.dom.leq(i, j) or not self.cod.leq(f[i], f[j])
            for i in range(n)
            for j in range(n)
        )

    def pointwise_le(self, other: MonotoneMap) -> bool:
        return all(self.cod.leq(a, b) for a, b in zip(self.images, other.images))


def compose(f: MonotoneMap, g: MonotoneMap) -> MonotoneMap:
    """The composite written ``fg``: apply ``f`` first."""
    return f.then(g)


def identity(X: FinPoset) -> MonotoneMap:
    return MonotoneMap(X, X, tuple(range(X.n)))


def constant(X: FinPoset, Y: FinPoset, y) -> MonotoneMap:
    return MonotoneMap(X, Y, (Y.index(y),) * X.n)


def inclusion(X: FinPoset, mask: int) -> MonotoneMap:
    """The embedding of the induced sub-poset on ``mask`` into ``X``."""
    return MonotoneMap(X.restrict(mask), X, tuple(bits(mask)))


@dataclass(frozen=True)
class Classification:
    embedding: bool
    injection: bool
    surjection: bool
    iso: bool


def classify(f: MonotoneMap) -> Classification:
    emb = f.is_embedding()
    sur = f.is_surjective()
    return Classification(emb, f.is_injective(), sur, emb and sur)


# products, tensors -----------------------------------------------------------


def product(*posets: FinPoset) -> FinPoset:
    """Cartesian product with the componentwise order.

    Elements are tuples of component identifiers, indexed lexicographically
    (first factor most significant).
    """
    sizes = [P.n for P in posets]
    strides = []
    s = 1
    for n in reversed(sizes):
        strides.append(s)
        s *= n
    strides.reverse()
    elements = tuple(itertools.product(*(P.elements for P in posets)))
    ups = []
    for idx in itertools.product(*(range(n) for n in sizes)):
        choices = [list(bits(P.up[i])) for P, i in zip(posets, idx)]
        m = 0
        for combo in itertools.product(*choices):
            m |= 1 << sum(c * st for c, st in zip(combo, strides))
        ups.append(m)
    return FinPoset(elements, tuple(ups))


def product_index(posets: Sequence[FinPoset], coords: Sequence[int]) -> int:
    k = 0
    for P, c in zip(posets, coords):
        k = k * P.n + c
    return k


def projection(posets: Sequence[FinPoset], k: int, prod: FinPoset | None = None) -> MonotoneMap:
    prod = prod if prod is not None else product(*posets)
    sizes = [P.n for P in posets]
    stride = 1
    for n in sizes[k + 1:]:
        stride *= n
    size_k = sizes[k]
    return MonotoneMap(prod, posets[k], tuple((i // stride) % size_k for i in range(prod.n)))


def pairing(maps: Sequence[MonotoneMap], dom: FinPoset | None = None,
            cod: FinPoset | None = None) -> MonotoneMap:
    """``<f1, ..., fn>`` into the product of the codomains."""
    if not maps and dom is None:
        raise TypeMismatch("empty pairing needs an explicit domain")
    dom = dom if dom is not None else maps[0].dom
    for f in maps:
        if f.dom != dom:
            raise TypeMismatch("pairing needs a common domain")
    cods = [f.cod for f in maps]
    cod = cod if cod is not None else product(*cods)
    images = tuple(
        product_index(cods, [f.images[x] for f in maps]) for x in range(dom.n)
    )
    return MonotoneMap(dom, cod, images)


def product_map(maps: Sequence[MonotoneMap]) -> MonotoneMap:
    """``f1 x ... x fn`` between the products of domains and codomains."""
    doms = [f.dom for f in maps]
    src = product(*doms)
    projs = [projection(doms, k, src) for k in range(len(doms))]
    return pairing([p.then(f) for p, f in zip(projs, maps)], src)


def tensor(P: FinPoset, X: FinPoset) -> FinPoset:
    """``P . X`` in finite posets: ``P x X`` with elements ``(p, x)``."""
    config.check_size(P.n, "tensor weight")
    config.check_size(X.n, "tensor object")
    return product(P, X)


# hom-posets --------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class HomPoset:
    dom: FinPoset
    cod: FinPoset
    maps: tuple
    poset: FinPoset

    def __len__(self):
        return len(self.maps)

    def __iter__(self):
        return iter(self.maps)

    def index(self, f: MonotoneMap) -> int:
        return self.poset.index(f)

    def le(self, f: MonotoneMap, g: MonotoneMap) -> bool:
        return self.poset.le(f, g)


def monotone_assignments(X: FinPoset, Y: FinPoset, fixed: dict | None = None) -> Iterator[tuple]:
    """Yield the image tuples of all monotone maps ``X -> Y``.

    Backtracks along a linear extension of ``X`` so an element is assigned
    only after everything below it.  ``fixed`` pins some indices.
    """
    order = X.linear_extension
    lower = X.lower_cover_masks
    yup = Y.up
    img = [0] * X.n
    fixed = fixed or {}
    n = X.n
    full = Y.full_mask

    def rec(k):
        if k == n:
            yield tuple(img)
            return
        x = order[k]
        allowed = full
        for z in bits(lower[x]):
            allowed &= yup[img[z]]
        if x in fixed:
            allowed &= 1 << fixed[x]
        for y in bits(allowed):
            img[x] = y
            yield from rec(k + 1)

    yield from rec(0)


def hom_poset(X: FinPoset, Y: FinPoset) -> HomPoset:
    # the codomain is bounded only through the hom cap
    config.check_size(X.n, "hom domain")
    if Y.n ** X.n > config.hom_cap():
        raise SizeLimit(f"|Y|^|X| = {Y.n}^{X.n} exceeds the hom cap {config.hom_cap()}")
    maps = tuple(MonotoneMap(X, Y, imgs) for imgs in sorted(monotone_assignments(X, Y)))
    ups = pointwise_up_masks([f.images for f in maps], Y)
    # the pointwise order is a partial order by construction
    return HomPoset(X, Y, maps, FinPoset.trusted(maps, tuple(ups)))


def pointwise_up_masks(tuples: Sequence[tuple], Y: FinPoset) -> list:
    """Up-masks of the pointwise order on a list of image tuples into ``Y``.

    ``g >= f`` iff ``g(x)`` lies above ``f(x)`` for every ``x``; with one
    bitmask per (position, value) that is an intersection of masks.
    """
    if not tuples:
        return []
    width = len(tuples[0])
    at = [[0] * Y.n for _ in range(width)]
    for k, t in enumerate(tuples):
        bit = 1 << k
        for x, y in enumerate(t):
            at[x][y] |= bit
    above = [[0] * Y.n for _ in range(width)]
    for x in range(width):
        for y in range(Y.n):
            m = 0
            for y2 in bits(Y.up[y]):
                m |= at[x][y2]
            above[x][y] = m
    full = (1 << len(tuples)) - 1
    ups = []
    for t in tuples:
        m = full
        for x, y in enumerate(t):
            m &= above[x][y]
        ups.append(m)
    return ups


def points(X: FinPoset) -> list:
    """Points ``1 -> X`` as maps from the terminal poset."""
    one = terminal()
    return [MonotoneMap(one, X, (i,)) for i in range(X.n)]


# isomorphism ---------------------------------------------------------------------


def _invariant(P: FinPoset, i: int) -> tuple:
    return (P.down[i].bit_count(), P.up[i].bit_count(),
            P.lower_cover_masks[i].bit_count(), P.cover_masks[i].bit_count())


def find_isomorphism(P: FinPoset, Q: FinPoset) -> MonotoneMap | None:
    """An order-isomorphism ``P -> Q``, or None."""
    if P.n != Q.n:
        return None
    inv_p = [_invariant(P, i) for i in range(P.n)]
    inv_q = [_invariant(Q, i) for i in range(Q.n)]
    if sorted(inv_p) != sorted(inv_q):
        return None
    order = P.linear_extension
    sigma = [-1] * P.n
    used = [False] * Q.n

    def ok(i, c):
        for j in range(P.n):
            t = sigma[j]
            if t < 0:
                continue
            if P.leq(i, j) != Q.leq(c, t) or P.leq(j, i) != Q.leq(t, c):
                return False
        return True

    def rec(k):
        if k == P.n:
            return True
        i = order[k]
        for c in range(Q.n):
            if not used[c] and inv_q[c] == inv_p[i] and ok(i, c):
                sigma[i] = c
                used[c] = True
                if rec(k + 1):
                    return True
                sigma[i] = -1
                used[c] = False
        return False

    if rec(0):
        return MonotoneMap(P, Q, tuple(sigma))
    return None


def is_isomorphic(P: FinPoset, Q: FinPoset) -> bool:
    return find_isomorphism(P, Q) is not None


def is_order_isomorphism(f: MonotoneMap) -> bool:
    return classify(f).iso


def canonical_form(P: FinPoset) -> tuple:
    """A labelling-independent key: equal iff the posets are isomorphic."""
    n = P.n
    groups: dict = {}
    for i in range(n):
        groups.setdefault(_invariant(P, i), []).append(i)
    keys = sorted(groups)
    best = None
    for perms in itertools.product(*(itertools.permutations(groups[k]) for k in keys)):
        order = [i for perm in perms for i in perm]
        pos = {old: new for new, old in enumerate(order)}
        code = tuple(mask_of(pos[j] for j in bits(P.up[i])) for i in order)
        if best is None or code < best:
            best = code
    return (n, best or ())


# tensor universal property -------------------------------------------------------


def curry(f: MonotoneMap, P: FinPoset, X: FinPoset, hom_xy: HomPoset) -> MonotoneMap:
    """Transpose ``f: P.X -> Y`` to ``P -> hom(X, Y)``."""
    Y = f.cod
    images = []
    for p in range(P.n):
        row = tuple(f.images[p * X.n + x] for x in range(X.n))
        images.append(hom_xy.index(MonotoneMap(X, Y, row)))
    return MonotoneMap(P, hom_xy.poset, tuple(images))


def verify_tensor(P: FinPoset, X: FinPoset, Y: FinPoset) -> bool:
    """Check that currying ``hom(P.X, Y) -> Pos(P, hom(X, Y))`` is an order-iso."""
    PX = tensor(P, X)
    left = hom_poset(PX, Y)
    hxy = hom_poset(X, Y)
    right = hom_poset(P, hxy.poset)
    if len(left) != len(right):
        return False
    transposed = [curry(f, P, X, hxy) for f in left.maps]
    if len(set(transposed)) != len(transposed) or set(transposed) != set(right.maps):
        return False
    # order of Pos(P, hom(X, Y)) read along the transposition
    rows = pointwise_up_masks([t.images for t in transposed], hxy.poset)
    return tuple(rows) == left.poset.up


# serialisation ---------------------------------------------------------------------


def to_jsonable(e):
    if isinstance(e, tuple):
        return [to_jsonable(x) for x in e]
    if isinstance(e, frozenset):
        return sorted((to_jsonable(x) for x in e), key=json.dumps)
    if isinstance(e, (MonotoneMap,)):
        return {label(k): to_jsonable(v) for k, v in e.to_dict().items()}
    return e


def from_jsonable(e):
    if isinstance(e, list):
        return tuple(from_jsonable(x) for x in e)
    return e


def label(e) -> str:
    if isinstance(e, str):
        return e
    if isinstance(e, tuple):
        return "(" + ",".join(label(x) for x in e) + ")"
    if isinstance(e, frozenset):
        return "{" + ",".join(sorted(label(x) for x in e)) + "}"
    if isinstance(e, MonotoneMap):
        return "[" + ",".join(f"{label(k)}>{label(v)}" for k, v in e.to_dict().items()) + "]"
    return str(e)


def poset_to_json(P: FinPoset) -> dict:
    return {
        "elements": [to_jsonable(e) for e in P.elements],
        "leq": [[to_jsonable(a), to_jsonable(b)] for a, b in P.cover_pairs()],
    }


def poset_from_json(data: dict) -> FinPoset:
    elements = [from_jsonable(e) for e in data["elements"]]
    pairs = [(from_jsonable(a), from_jsonable(b)) for a, b in data.get("leq", [])]
    return make_poset(elements, pairs)


def map_to_json(f: MonotoneMap) -> dict:
    return {
        "dom": poset_to_json(f.dom),
        "cod": poset_to_json(f.cod),
        "map": [[to_jsonable(a), to_jsonable(b)] for a, b in f.to_dict().items()],
    }


def map_from_json(data: dict, dom: FinPoset | None = None, cod: FinPoset | None = None) -> MonotoneMap:
    dom = dom if dom is not None else poset_from_json(data["dom"])
    cod = cod if cod is not None else poset_from_json(data["cod"])
    raw = data["map"]
    if isinstance(raw, dict):
        # object keys are strings; match them against the labels
        by_label = {label(e): e for e in dom.elements}
        cod_label = {label(e): e for e in cod.elements}
        mapping = {by_label[k]: cod_label[label(from_jsonable(v))] for k, v in raw.items()}
    else:
        mapping = {from_jsonable(a): from_jsonable(b) for a, b in raw}
    return MonotoneMap.from_dict(dom, cod, mapping)


def to_dot(P: FinPoset, name: str = "P") -> str:
    """Hasse diagram in Graphviz DOT; edges run from lower to upper covers."""
    lines = [f"digraph {name} {{", "  rankdir=BT;"]
    for i, e in enumerate(P.elements):
        lines.append(f'  n{i} [label="{label(e)}"];')
    for i in range(P.n):
        for j in bits(P.cover_masks[i]):
            lines.append(f"  n{i} -> n{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"
