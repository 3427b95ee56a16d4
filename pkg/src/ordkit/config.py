"""Enumeration caps.

Every exponential enumeration checks its inputs against these caps before
starting.  ``ORDKIT_SIZE_CAP`` bounds the number of elements of a poset
handed to an enumeration, ``ORDKIT_HOM_CAP`` bounds ``|Y|**|X|`` for
hom-poset enumeration.
"""

import os
from contextlib import contextmanager

from .errors import SizeLimit

DEFAULT_SIZE_CAP = 10
DEFAULT_HOM_CAP = 10**7

_overrides: dict = {}


def size_cap() -> int:
    if "size" in _overrides:
        return _overrides["size"]
    return int(os.environ.get("ORDKIT_SIZE_CAP", DEFAULT_SIZE_CAP))


def hom_cap() -> int:
    if "hom" in _overrides:
        return _overrides["hom"]
    return int(os.environ.get("ORDKIT_HOM_CAP", DEFAULT_HOM_CAP))


@contextmanager
def caps(size=None, hom=None):
    """Temporarily override the caps (process-wide)."""
    saved = dict(_overrides)
    if size is not None:
        _overrides["size"] = size
    if hom is not None:
        _overrides["hom"] = hom
    try:
        yield
    finally:
        _overrides.clear()
        _overrides.update(saved)


def check_size(n: int, what: str = "poset") -> None:
    cap = size_cap()
    if n > cap:
        raise SizeLimit(f"{what} has {n} elements, cap is {cap}")
