"""Finite bounded distributive lattices with explicit operation tables."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .errors import NotALattice
from .finposet import FinPoset, bits, from_jsonable, make_poset, to_jsonable


@dataclass(frozen=True, eq=False)
class DistLattice:
    carrier: FinPoset
    meet: tuple
    join: tuple
    bottom: int
    top: int

    def __post_init__(self):
        P = self.carrier
        n = P.n
        if n == 0:
            raise NotALattice("a bounded lattice has at least one element")
        for a in range(n):
            for b in range(n):
                m, j = self.meet[a][b], self.join[a][b]
                lower = P.down[a] & P.down[b]
                upper = P.up[a] & P.up[b]
                if not (lower >> m) & 1 or P.down[m] & lower != lower:
                    raise NotALattice("meet table is not the greatest lower bound", (a, b))
                if not (upper >> j) & 1 or P.up[j] & upper != upper:
                    raise NotALattice("join table is not the least upper bound", (a, b))
        if P.up[self.bottom] != P.full_mask or P.down[self.top] != P.full_mask:
            raise NotALattice("bottom/top are not the extreme elements")
        mt, jn = self.meet, self.join
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    if mt[a][jn[b][c]] != jn[mt[a][b]][mt[a][c]]:
                        raise NotALattice(
                            "not distributive",
                            tuple(P.elements[i] for i in (a, b, c)),
                        )

    def __len__(self):
        return self.carrier.n

    def __eq__(self, other):
        if not isinstance(other, DistLattice):
            return NotImplemented
        return self.carrier == other.carrier

    def __hash__(self):
        return hash(self.carrier)

    @property
    def n(self) -> int:
        return self.carrier.n

    @property
    def elements(self) -> tuple:
        return self.carrier.elements

    def leq(self, a: int, b: int) -> bool:
        return self.carrier.leq(a, b)

    @cached_property
    def join_irreducible_indices(self) -> tuple:
        """Elements with exactly one lower cover."""
        low = self.carrier.lower_cover_masks
        return tuple(i for i in range(self.n) if low[i].bit_count() == 1)

    @classmethod
    def from_poset(cls, P: FinPoset) -> DistLattice:
        """Read meets and joins off the order; fails unless ``P`` is a distributive lattice."""
        n = P.n
        if n == 0:
            raise NotALattice("empty poset")
        meet = [[0] * n for _ in range(n)]
        join = [[0] * n for _ in range(n)]
        for a in range(n):
            for b in range(n):
                lo = P.maximal(P.down[a] & P.down[b])
                hi = P.minimal(P.up[a] & P.up[b])
                if lo.bit_count() != 1:
                    raise NotALattice("no greatest lower bound", (P.elements[a], P.elements[b]))
                if hi.bit_count() != 1:
                    raise NotALattice("no least upper bound", (P.elements[a], P.elements[b]))
                meet[a][b] = lo.bit_length() - 1
                join[a][b] = hi.bit_length() - 1
        bottom = P.minimal(P.full_mask)
        top = P.maximal(P.full_mask)
        return cls(P, tuple(map(tuple, meet)), tuple(map(tuple, join)),
                   bottom.bit_length() - 1, top.bit_length() - 1)

    @classmethod
    def of_sets(cls, ambient: FinPoset, masks) -> DistLattice:
        """Lattice of subsets of ``ambient`` (closed under union and intersection)."""
        masks = sorted(set(masks), key=lambda m: (m.bit_count(), m))
        pos = {m: i for i, m in enumerate(masks)}
        names = [frozenset(ambient.elems(m)) for m in masks]
        up = []
        for m in masks:
            row = 0
            for k, m2 in enumerate(masks):
                if m & ~m2 == 0:
                    row |= 1 << k
            up.append(row)
        carrier = FinPoset(tuple(names), tuple(up))
        try:
            meet = tuple(tuple(pos[a & b] for b in masks) for a in masks)
            join = tuple(tuple(pos[a | b] for b in masks) for a in masks)
        except KeyError:
            raise NotALattice("family not closed under union and intersection") from None
        lat = cls(carrier, meet, join, 0, len(masks) - 1)
        object.__setattr__(lat, "_masks", tuple(masks))
        return lat

    def mask(self, i: int) -> int:
        """Underlying subset for lattices built by :meth:`of_sets`."""
        return self._masks[i]


def lattice_to_json(L: DistLattice) -> dict:
    el = [to_jsonable(e) for e in L.elements]
    return {
        "carrier": el,
        "meet": [[el[c] for c in row] for row in L.meet],
        "join": [[el[c] for c in row] for row in L.join],
        "bottom": el[L.bottom],
        "top": el[L.top],
    }


def lattice_from_json(data: dict) -> DistLattice:
    elements = [from_jsonable(e) for e in data["carrier"]]
    idx = {e: i for i, e in enumerate(elements)}
    meet = tuple(tuple(idx[from_jsonable(c)] for c in row) for row in data["meet"])
    join = tuple(tuple(idx[from_jsonable(c)] for c in row) for row in data["join"])
    n = len(elements)
    pairs = [(elements[a], elements[b]) for a in range(n) for b in range(n) if meet[a][b] == a]
    carrier = make_poset(elements, pairs)
    return DistLattice(carrier, meet, join, idx[from_jsonable(data["bottom"])],
                       idx[from_jsonable(data["top"])])


def lattice_iso(L: DistLattice, M: DistLattice):
    """Order-isomorphism between the carriers (lattices are determined by their order)."""
    from .finposet import find_isomorphism

    return find_isomorphism(L.carrier, M.carrier)


def principal_filter_mask(L: DistLattice, a: int) -> int:
    return L.carrier.up[a]


def is_filter(L: DistLattice, mask: int) -> bool:
    if mask == 0 or not L.carrier.is_upset(mask):
        return False
    members = list(bits(mask))
    return all((mask >> L.meet[a][b]) & 1 for a in members for b in members)
