"""Shared strategies for the property-based tests."""

from __future__ import annotations

from hypothesis import strategies as st

from pcdynkin import A, BC1, Combination, D, E, G1, G2


def ade_kinds(max_rank: int = 10):
    options = [st.integers(1, max_rank).map(A)]
    if max_rank >= 4:
        options.append(st.integers(4, max_rank).map(D))
    if max_rank >= 6:
        options.append(st.integers(6, min(8, max_rank)).map(E))
    return st.one_of(options)


def catalog_kinds(max_rank: int = 10):
    return st.one_of(ade_kinds(max_rank), st.sampled_from([BC1, G1, G2]))


@st.composite
def ade_combinations(draw, max_rank: int = 10, max_components: int = 6):
    """Combinations of A/D/E kinds with total rank at most max_rank."""
    drawn = draw(st.lists(ade_kinds(max_rank), max_size=max_components))
    kinds, total = [], 0
    for kind in drawn:
        if total + kind.rank <= max_rank:
            kinds.append(kind)
            total += kind.rank
    return Combination(tuple(kinds))


@st.composite
def decorated_combinations(draw, max_rank: int = 10, max_components: int = 6):
    """Combinations drawn from the whole catalog, rank-bounded."""
    drawn = draw(st.lists(catalog_kinds(max_rank), max_size=max_components))
    kinds, total = [], 0
    for kind in drawn:
        if total + kind.rank <= max_rank:
            kinds.append(kind)
            total += kind.rank
    return Combination(tuple(kinds))
