"""The coherent internal language of finite posets: syntax, parsing, semantics."""

from .parser import parse, parse_context, parse_formula, parse_sequent, parse_term
from .semantics import (
    context_product,
    entails,
    interpret,
    interpret_formula,
    interpret_term,
    is_surjective_by_logic,
    substitution_pullback,
)
from .syntax import (
    And,
    App,
    Bot,
    Eq,
    Exists,
    Judgement,
    Le,
    LogicError,
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
    substitute,
)
