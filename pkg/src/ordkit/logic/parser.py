"""Recursive-descent parser and sort inference for the internal language.

Grammar (ASCII connectives; the usual unicode symbols are accepted too)::

    sequent := [formula] "|-" formula
    formula := conj { "\\/" conj }
    conj    := unary { "/\\" unary }
    unary   := "exists" var ":" sort "." formula
             | "top" | "bot" | "(" formula ")" | atom
    atom    := pred "(" terms ")" | term ("=" | "<=") term
    term    := name | name "(" terms ")"

``exists`` extends as far to the right as possible.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .syntax import (
    And,
    App,
    Bot,
    Eq,
    Exists,
    Judgement,
    Le,
    LogicSyntaxError,
    Or,
    Pred,
    Sequent,
    Signature,
    SortMismatch,
    Top,
    UnknownSymbol,
    Var,
    free_vars,
    term_vars,
)

_UNICODE = {"∧": "/\\", "∨": "\\/", "⊢": "|-", "≤": "<=", "∃": "exists", "⊤": "top", "⊥": "bot"}

_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<sym>/\\|\\/|\|-|<=|[=(),:.])
  | (?P<name>[A-Za-z0-9_'][A-Za-z0-9_']*)
  | (?P<uni>[∧∨⊢≤∃⊤⊥])
    """,
    re.VERBOSE,
)

KEYWORDS = {"exists", "top", "bot"}


@dataclass(frozen=True)
class Token:
    kind: str  # "sym", "name", "eof"
    text: str
    line: int
    col: int


def tokenize(source: str) -> list:
    out = []
    line, col, pos = 1, 1, 0
    while pos < len(source):
        m = _TOKEN.match(source, pos)
        if m is None:
            raise LogicSyntaxError(f"unexpected character {source[pos]!r}", line, col)
        kind = m.lastgroup
        text = m.group()
        if kind == "nl":
            line, col = line + 1, 1
        else:
            if kind == "uni":
                text = _UNICODE[text]
                kind = "name" if text in KEYWORDS else "sym"
            if kind != "ws":
                out.append(Token(kind, text, line, col))
            col += len(m.group())
        pos = m.end()
    out.append(Token("eof", "", line, col))
    return out


class _Parser:
    def __init__(self, source: str, sig: Signature):
        self.toks = tokenize(source)
        self.k = 0
        self.sig = sig
        self.bound_sorts: list = []  # (var, sort) pairs for binders seen

    @property
    def tok(self) -> Token:
        return self.toks[self.k]

    def error(self, message, tok=None):
        tok = tok or self.tok
        return LogicSyntaxError(message, tok.line, tok.col)

    def accept(self, text) -> bool:
        if self.tok.text == text and self.tok.kind in ("sym", "name"):
            self.k += 1
            return True
        return False

    def expect(self, text):
        if not self.accept(text):
            shown = self.tok.text or "end of input"
            raise self.error(f"expected {text!r}, found {shown!r}")

    def name(self, what="name") -> Token:
        tok = self.tok
        if tok.kind != "name" or tok.text in KEYWORDS:
            raise self.error(f"expected {what}")
        self.k += 1
        return tok

    # formulas

    def formula(self):
        left = self.conj()
        while self.accept("\\/"):
            left = Or(left, self.conj())
        return left

    def conj(self):
        left = self.unary()
        while self.accept("/\\"):
            left = And(left, self.unary())
        return left

    def unary(self):
        if self.accept("exists"):
            var = self.name("bound variable").text
            self.expect(":")
            stok = self.name("sort")
            if stok.text not in self.sig.sorts:
                raise UnknownSymbol(f"unknown sort {stok.text!r} at line {stok.line}, column {stok.col}")
            self.expect(".")
            self.bound_sorts.append((var, stok.text))
            return Exists(var, stok.text, self.formula())
        if self.accept("top"):
            return Top()
        if self.accept("bot"):
            return Bot()
        if self.accept("("):
            inner = self.formula()
            self.expect(")")
            return inner
        return self.atom()

    def atom(self):
        tok = self.tok
        if tok.kind == "name" and tok.text in self.sig.predicates:
            self.k += 1
            self.expect("(")
            args = self.terms()
            self.expect(")")
            return Pred(tok.text, tuple(args))
        lhs = self.term()
        if self.accept("="):
            return Eq(lhs, self.term())
        if self.accept("<="):
            return Le(lhs, self.term())
        raise self.error("expected '=' or '<=' after a term")

    def terms(self):
        out = [self.term()]
        while self.accept(","):
            out.append(self.term())
        return out

    def term(self):
        tok = self.name("term")
        if self.tok.text == "(" and self.tok.kind == "sym":
            if tok.text not in self.sig.operations:
                raise UnknownSymbol(
                    f"unknown operation {tok.text!r} at line {tok.line}, column {tok.col}"
                )
            self.k += 1
            args = [] if self.tok.text == ")" else self.terms()
            self.expect(")")
            return App(tok.text, tuple(args))
        if self.sig.is_constant(tok.text):
            return App(tok.text, ())
        if tok.text in self.sig.operations or tok.text in self.sig.predicates:
            raise SortMismatch(f"{tok.text!r} used without arguments at line {tok.line}, column {tok.col}")
        return Var(tok.text)

    def at_end(self):
        if self.tok.kind != "eof":
            raise self.error(f"unexpected {self.tok.text!r}")


# sort inference ---------------------------------------------------------------------


def term_sort(t, env: dict, sig: Signature):
    """Sort of a term under ``env`` (None if it is an unsorted variable)."""
    if isinstance(t, Var):
        return env.get(t.name)
    dom, cod, _ = sig.operations[t.op]
    if len(dom) != len(t.args):
        raise SortMismatch(f"{t.op} takes {len(dom)} arguments, got {len(t.args)}")
    for a, s in zip(t.args, dom):
        got = term_sort(a, env, sig)
        if got is not None and got != s:
            raise SortMismatch(f"argument {a} of {t.op} has sort {got}, expected {s}")
    return cod


def _unify(t, sort, env, sig, changed):
    if isinstance(t, Var):
        have = env.get(t.name)
        if have is None:
            env[t.name] = sort
            changed.append(t.name)
        elif have != sort:
            raise SortMismatch(f"variable {t.name} used at sorts {have} and {sort}")
        return
    dom, cod, _ = sig.operations[t.op]
    if cod != sort:
        raise SortMismatch(f"{t} has sort {cod}, expected {sort}")
    if len(dom) != len(t.args):
        raise SortMismatch(f"{t.op} takes {len(dom)} arguments, got {len(t.args)}")
    for a, s in zip(t.args, dom):
        _unify(a, s, env, sig, changed)


def _constrain(phi, env: dict, sig: Signature, changed: list):
    """One propagation pass; free-variable sorts land in ``env``."""
    if isinstance(phi, (Top, Bot)):
        return
    if isinstance(phi, (And, Or)):
        _constrain(phi.left, env, sig, changed)
        _constrain(phi.right, env, sig, changed)
    elif isinstance(phi, (Eq, Le)):
        sl = term_sort(phi.lhs, env, sig)
        sr = term_sort(phi.rhs, env, sig)
        if sl is not None and sr is not None and sl != sr:
            raise SortMismatch(f"{phi.lhs} : {sl} compared with {phi.rhs} : {sr}")
        s = sl or sr
        if s is not None:
            _unify(phi.lhs, s, env, sig, changed)
            _unify(phi.rhs, s, env, sig, changed)
    elif isinstance(phi, Pred):
        sorts, _ = sig.predicates[phi.name]
        if len(sorts) != len(phi.args):
            raise SortMismatch(f"{phi.name} takes {len(sorts)} arguments, got {len(phi.args)}")
        for a, s in zip(phi.args, sorts):
            _unify(a, s, env, sig, changed)
    elif isinstance(phi, Exists):
        inner = dict(env)
        inner[phi.var] = phi.sort
        _constrain(phi.body, inner, sig, changed)
        for k, v in inner.items():
            if k != phi.var and k not in env:
                env[k] = v


def infer_context(formulas, sig: Signature, context=()) -> tuple:
    """Ordered context: the given entries first, then inferred free variables."""
    env = {}
    for x, s in context:
        sig.sort(s)
        env[x] = s
    names = [x for x, _ in context]
    for phi in formulas:
        for v in (free_vars(phi) if not isinstance(phi, (Var, App)) else term_vars(phi)):
            if v not in names:
                names.append(v)
    while True:
        changed: list = []
        for phi in formulas:
            if isinstance(phi, App):
                _unify(phi, sig.operations[phi.op][1], env, sig, changed)
            elif not isinstance(phi, Var):
                _constrain(phi, env, sig, changed)
        if not changed:
            break
    unsorted = [v for v in names if v not in env]
    if unsorted:
        if len(sig.sorts) == 1:
            only = next(iter(sig.sorts))
            for v in unsorted:
                env[v] = only
        else:
            raise SortMismatch(f"cannot infer the sort of {', '.join(unsorted)}")
    # a final pass surfaces any remaining conflicts
    for phi in formulas:
        if isinstance(phi, (Var, App)):
            term_sort(phi, env, sig)
        else:
            _constrain(phi, dict(env), sig, [])
    return tuple((v, env[v]) for v in names)


# entry points ---------------------------------------------------------------------------


def parse_formula(source: str, sig: Signature, context=()) -> Judgement:
    p = _Parser(source, sig)
    phi = p.formula()
    p.at_end()
    return Judgement(phi, infer_context([phi], sig, context))


def parse_term(source: str, sig: Signature, context=()) -> Judgement:
    p = _Parser(source, sig)
    t = p.term()
    p.at_end()
    return Judgement(t, infer_context([t], sig, context))


def parse_sequent(source: str, sig: Signature, context=()) -> Sequent:
    p = _Parser(source, sig)
    if p.tok.text == "|-" and p.tok.kind == "sym":
        lhs = Top()
    else:
        lhs = p.formula()
    p.expect("|-")
    rhs = p.formula()
    p.at_end()
    return Sequent(lhs, rhs, infer_context([lhs, rhs], sig, context))


def parse(source: str, sig: Signature, context=()):
    """Sequent if the text contains a turnstile, else a formula, else a term."""
    if any(t.text == "|-" and t.kind == "sym" for t in tokenize(source)):
        return parse_sequent(source, sig, context)
    try:
        return parse_formula(source, sig, context)
    except LogicSyntaxError as exc:
        try:
            return parse_term(source, sig, context)
        except LogicSyntaxError:
            raise exc from None


def parse_context(text: str) -> tuple:
    """``"x:C2, y:C2"`` to ``(("x", "C2"), ("y", "C2"))``."""
    out = []
    for part in filter(None, (p.strip() for p in text.split(","))):
        name, _, sort = part.partition(":")
        if not sort:
            raise LogicSyntaxError(f"context entry {part!r} lacks a sort", 1, 1)
        out.append((name.strip(), sort.strip()))
    return tuple(out)
