import os
import sys

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from ordkit.finposet import FinPoset, MonotoneMap, make_poset  # noqa: E402
from oracles import monotone_maps  # noqa: E402

settings.register_profile(
    "ordkit", max_examples=60, deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("ordkit")


@st.composite
def posets(draw, min_n=0, max_n=4):
    """Random posets from forward edges, so no cycle can appear."""
    n = draw(st.integers(min_n, max_n))
    edges = [(i, j) for i in range(n) for j in range(i + 1, n)]
    keep = draw(st.lists(st.booleans(), min_size=len(edges), max_size=len(edges)))
    return make_poset(range(n), [e for e, k in zip(edges, keep) if k])


@st.composite
def maps(draw, X: FinPoset, Y: FinPoset):
    """A monotone map drawn from the brute-force list of all of them."""
    return MonotoneMap(X, Y, draw(st.sampled_from(monotone_maps(X, Y))))


@st.composite
def poset_maps(draw, max_n=4, min_cod=1):
    X = draw(posets(max_n=max_n))
    Y = draw(posets(min_n=min_cod, max_n=max_n))
    return draw(maps(X, Y))
