"""Abstract syntax and signatures for the coherent internal language."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from ..errors import OrdkitError, TypeMismatch
from ..finposet import (
    FinPoset,
    MonotoneMap,
    from_jsonable,
    poset_from_json,
    product,
)
from ..subobjects import Subobject


class LogicError(OrdkitError):
    pass


class LogicSyntaxError(LogicError):
    def __init__(self, message, line, col):
        super().__init__(f"{message} at line {line}, column {col}")
        self.line = line
        self.col = col


class UnknownSymbol(LogicError):
    pass


class SortMismatch(LogicError):
    pass


# terms ----------------------------------------------------------------------------


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class App:
    op: str
    args: tuple = ()

    def __str__(self):
        if not self.args:
            return self.op
        return f"{self.op}({', '.join(map(str, self.args))})"


Term = Var | App


# formulas ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Top:
    def __str__(self):
        return "top"


@dataclass(frozen=True)
class Bot:
    def __str__(self):
        return "bot"


@dataclass(frozen=True)
class And:
    left: object
    right: object

    def __str__(self):
        return f"({self.left} /\\ {self.right})"


@dataclass(frozen=True)
class Or:
    left: object
    right: object

    def __str__(self):
        return f"({self.left} \\/ {self.right})"


@dataclass(frozen=True)
class Eq:
    lhs: object
    rhs: object

    def __str__(self):
        return f"{self.lhs} = {self.rhs}"


@dataclass(frozen=True)
class Le:
    lhs: object
    rhs: object

    def __str__(self):
        return f"{self.lhs} <= {self.rhs}"


@dataclass(frozen=True)
class Pred:
    name: str
    args: tuple

    def __str__(self):
        return f"{self.name}({', '.join(map(str, self.args))})"


@dataclass(frozen=True)
class Exists:
    var: str
    sort: str
    body: object

    def __str__(self):
        return f"(exists {self.var}:{self.sort}. {self.body})"


Formula = Top | Bot | And | Or | Eq | Le | Pred | Exists

Context = tuple  # ((name, sort), ...)


@dataclass(frozen=True)
class Judgement:
    """A formula or term together with its ordered context."""

    node: object
    context: Context

    def __str__(self):
        ctx = ", ".join(f"{x}:{s}" for x, s in self.context)
        return f"[{ctx}] {self.node}"


@dataclass(frozen=True)
class Sequent:
    lhs: object
    rhs: object
    context: Context

    def __str__(self):
        ctx = ", ".join(f"{x}:{s}" for x, s in self.context)
        return f"[{ctx}] {self.lhs} |- {self.rhs}"


# signatures -------------------------------------------------------------------------


@dataclass
class Signature:
    """Sorts, predicates and operations over finite posets.

    Operations are stored on the product of their argument sorts (a
    constant is an operation out of the empty product); predicates are
    subobjects of the product of their sorts.
    """

    sorts: dict = field(default_factory=dict)
    predicates: dict = field(default_factory=dict)  # name -> (sorts, Subobject)
    operations: dict = field(default_factory=dict)  # name -> (dom sorts, cod sort, map)

    def _fresh(self, name):
        if name in self.sorts or name in self.predicates or name in self.operations:
            raise LogicError(f"symbol {name!r} declared twice")

    def add_sort(self, name: str, P: FinPoset) -> Signature:
        self._fresh(name)
        self.sorts[name] = P
        return self

    def sort(self, name: str) -> FinPoset:
        try:
            return self.sorts[name]
        except KeyError:
            raise UnknownSymbol(f"unknown sort {name!r}") from None

    def arg_product(self, sorts) -> FinPoset:
        return product(*(self.sort(s) for s in sorts))

    def add_operation(self, name: str, dom: tuple, cod: str, table) -> Signature:
        """``table``: a MonotoneMap, a callable, or a dict from argument tuples."""
        self._fresh(name)
        dom = tuple(dom)
        src = self.arg_product(dom)
        tgt = self.sort(cod)
        if isinstance(table, MonotoneMap):
            if table.cod != tgt:
                raise TypeMismatch(f"operation {name!r} has the wrong codomain")
            if table.dom == src:
                fmap = table
            elif len(dom) == 1 and table.dom == self.sort(dom[0]):
                fmap = MonotoneMap(src, tgt, table.images)
            else:
                raise TypeMismatch(f"operation {name!r} has the wrong domain")
        elif callable(table):
            fmap = MonotoneMap.from_function(src, tgt, lambda args: table(*args))
        else:
            fmap = MonotoneMap.from_dict(src, tgt, {tuple(k): v for k, v in table.items()})
        self.operations[name] = (dom, cod, fmap)
        return self

    def add_constant(self, name: str, sort: str, value) -> Signature:
        return self.add_operation(name, (), sort, {(): value})

    def add_predicate(self, name: str, sorts: tuple, members) -> Signature:
        """``members``: tuples of elements, or a ready Subobject of the product."""
        self._fresh(name)
        sorts = tuple(sorts)
        amb = self.arg_product(sorts)
        if isinstance(members, Subobject):
            if members.ambient != amb:
                raise TypeMismatch(f"predicate {name!r} lives on the wrong product")
            sub = members
        else:
            sub = Subobject.of(amb, [tuple(m) for m in members])
        self.predicates[name] = (sorts, sub)
        return self

    def is_constant(self, name: str) -> bool:
        return name in self.operations and not self.operations[name][0]

    @classmethod
    def from_json(cls, data: dict) -> Signature:
        sig = cls()
        for name, pj in data.get("sorts", {}).items():
            sig.add_sort(name, poset_from_json(pj))
        for name, entry in data.get("operations", {}).items():
            dom = tuple(entry["dom"])
            raw = entry["map"]
            if isinstance(raw, dict):
                P = sig.sort(dom[0])
                lookup = {str(e): e for e in P.elements}
                table = {(lookup[k],): from_jsonable(v) for k, v in raw.items()}
            else:
                table = {}
                for args, val in raw:
                    args = from_jsonable(args)
                    if len(dom) == 1 and not (isinstance(args, tuple) and len(args) == 1):
                        args = (args,)
                    table[tuple(args)] = from_jsonable(val)
            sig.add_operation(name, dom, entry["cod"], table)
        for name, entry in data.get("constants", {}).items():
            sig.add_constant(name, entry["sort"], from_jsonable(entry["value"]))
        for name, entry in data.get("predicates", {}).items():
            members = [from_jsonable(m) for m in entry["members"]]
            if len(entry["sorts"]) == 1:
                members = [m if isinstance(m, tuple) and len(m) == 1 else (m,) for m in members]
            sig.add_predicate(name, tuple(entry["sorts"]), members)
        return sig


# traversal helpers --------------------------------------------------------------------


def term_vars(t) -> list:
    if isinstance(t, Var):
        return [t.name]
    out = []
    for a in t.args:
        for v in term_vars(a):
            if v not in out:
                out.append(v)
    return out


def free_vars(phi) -> list:
    """Free variables in order of first occurrence."""
    out: list = []

    def add(names):
        for v in names:
            if v not in out:
                out.append(v)

    def walk(f, bound):
        if isinstance(f, (Top, Bot)):
            return
        if isinstance(f, (And, Or)):
            walk(f.left, bound)
            walk(f.right, bound)
        elif isinstance(f, (Eq, Le)):
            add(v for v in term_vars(f.lhs) + term_vars(f.rhs) if v not in bound)
        elif isinstance(f, Pred):
            add(v for a in f.args for v in term_vars(a) if v not in bound)
        elif isinstance(f, Exists):
            walk(f.body, bound | {f.var})
        else:
            raise TypeError(f"not a formula: {f!r}")

    walk(phi, frozenset())
    return out


def fresh_name(base: str, avoid) -> str:
    avoid = set(avoid)
    for k in itertools.count(1):
        cand = f"{base}{k}"
        if cand not in avoid:
            return cand


def subst_term(t, bindings: dict):
    if isinstance(t, Var):
        return bindings.get(t.name, t)
    return App(t.op, tuple(subst_term(a, bindings) for a in t.args))


def substitute(phi, bindings: dict):
    """Simultaneous capture-avoiding substitution of terms for variables."""
    if isinstance(phi, (Top, Bot)):
        return phi
    if isinstance(phi, And):
        return And(substitute(phi.left, bindings), substitute(phi.right, bindings))
    if isinstance(phi, Or):
        return Or(substitute(phi.left, bindings), substitute(phi.right, bindings))
    if isinstance(phi, Eq):
        return Eq(subst_term(phi.lhs, bindings), subst_term(phi.rhs, bindings))
    if isinstance(phi, Le):
        return Le(subst_term(phi.lhs, bindings), subst_term(phi.rhs, bindings))
    if isinstance(phi, Pred):
        return Pred(phi.name, tuple(subst_term(a, bindings) for a in phi.args))
    if isinstance(phi, Exists):
        inner = {k: v for k, v in bindings.items() if k != phi.var}
        live = [k for k in free_vars(phi.body) if k in inner]
        incoming = {v for k in live for v in term_vars(inner[k])}
        if phi.var in incoming:
            avoid = incoming | set(free_vars(phi.body)) | set(inner)
            new = fresh_name(phi.var, avoid)
            body = substitute(phi.body, {phi.var: Var(new)})
            return Exists(new, phi.sort, substitute(body, inner))
        return Exists(phi.var, phi.sort, substitute(phi.body, inner))
    raise TypeError(f"not a formula: {phi!r}")
