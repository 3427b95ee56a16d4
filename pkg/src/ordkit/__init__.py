"""Finite posets as a poset-enriched category.

Limits and colimits, subobjects and images, the coherent internal logic,
Birkhoff duality at finite scale, structural checkers and the nerve.
"""

from .errors import OrdkitError
from .finposet import (
    FinPoset,
    MonotoneMap,
    antichain,
    chain,
    discrete,
    empty,
    hom_poset,
    make_poset,
    product,
    tensor,
    terminal,
    vee,
)
from .report import Report

__version__ = "0.1.0"
