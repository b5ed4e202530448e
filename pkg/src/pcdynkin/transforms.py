"""Elementary and tie transformations of combinations of Dynkin graphs.

Both transformations start from the extended graph of each component: the
component plus one added vertex, every vertex carrying the coefficient of the
maximal root (the added vertex always carries 1).  An elementary step removes
a nonempty vertex set from each extended component and reads off the
remainder.  A tie step removes a nonempty set A (at least one vertex per
component), picks a disjoint set B of at most three surviving vertices whose
coefficient data passes a per-component gcd test, and joins one new norm-2
vertex to every member of B; only results that classify as catalog graphs are
kept.

Per-kind enumerations are memoized process-wide, so repeated closure
computations over many combinations stay cheap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Optional

from .graphs import (
    EMPTY,
    Combination,
    ComponentKind,
    DecoratedGraph,
    Norm,
    _bits,
    _component_masks,
    _recognize_mask,
    build_component,
)

ELEMENTARY = "elem"
TIE = "tie"
ALL_STEP_PAIRS = (
    (ELEMENTARY, ELEMENTARY),
    (ELEMENTARY, TIE),
    (TIE, ELEMENTARY),
    (TIE, TIE),
)


class InvariantViolation(RuntimeError):
    """An internal consistency guarantee failed: a bug, not bad input."""


# ---------------------------------------------------------------------------
# extended components


@dataclass(frozen=True)
class ExtendedComponent:
    """One catalog component with its extension vertex and root coefficients.

    Vertices 0..rank-1 are laid out exactly as build_component does, vertex
    ``added_vertex`` (always the last one) is the extension, and ``coeffs[i]``
    is the maximal-root coefficient of vertex i (1 on the added vertex).
    """

    kind: ComponentKind
    graph: DecoratedGraph
    added_vertex: int
    coeffs: tuple[int, ...]


@lru_cache(maxsize=None)
def extend_component(kind: ComponentKind) -> ExtendedComponent:
    """Extended graph with coefficients for one catalog kind.

    Shapes: A(1) gains a second norm-2 vertex joined by a single edge, A(n>=2)
    closes into an (n+1)-cycle, D(n) gains a second fork next to the long-arm
    endpoint (for D(4): a star with four leaves), E(6)/E(7)/E(8) become the
    three-arm trees with arms (2,2,2), (1,3,3), (1,2,5).  BC1 gains a norm-2
    neighbor (coefficients 1 and 2), G1 a norm-2/3 neighbor (1 and 1), and G2
    a norm-2 vertex joined to its norm-2 vertex (coefficients 1, 2, 3).
    """
    base = build_component(kind)
    s, n = kind.series, kind.rank
    added = n
    edges = set(base.edges)
    norms = base.norms + (Norm.LONG,)
    if s == "A":
        if n == 1:
            edges.add((0, 1))
        else:
            edges.add((added, 0))
            edges.add((added, n - 1))
        coeffs = (1,) * (n + 1)
    elif s == "D":
        # attach next to the long-arm endpoint n-1 (its chain predecessor,
        # which is the branch vertex itself when n = 4)
        edges.add((added, 0 if n == 4 else n - 2))
        coeffs = tuple(
            2 if v == 0 or 3 <= v <= n - 2 else 1 for v in range(n + 1)
        )
    elif s == "E":
        arm_coeff = {6: (3, 2, 2, 1, 2, 1), 7: (4, 2, 3, 2, 3, 2, 1),
                     8: (6, 3, 4, 2, 5, 4, 3, 2)}[n]
        # E6 extends the one-vertex arm, E7 the two-vertex arm, E8 the long arm
        edges.add((added, {6: 1, 7: 3, 8: 7}[n]))
        coeffs = arm_coeff + (1,)
    elif s == "BC1":
        edges.add((0, 1))
        coeffs = (2, 1)
    elif s == "G1":
        norms = base.norms + (Norm.TWOTHIRDS,)
        edges.add((0, 1))
        coeffs = (1, 1)
    else:  # G2
        edges.add((added, 0))
        coeffs = (2, 3, 1)
    graph = DecoratedGraph(norms, frozenset(edges))
    return ExtendedComponent(kind, graph, added, coeffs)


# ---------------------------------------------------------------------------
# elementary transformation


@lru_cache(maxsize=None)
def _elementary_options(kind: ComponentKind) -> frozenset[Combination]:
    """All remainders of the extended graph after removing a nonempty set."""
    ext = extend_component(kind)
    adj = ext.graph.adjacency
    norms = ext.graph.norms
    full = (1 << ext.graph.n) - 1
    piece_kind: dict[int, Optional[ComponentKind]] = {}
    options = set()
    for removed in range(1, full + 1):
        kept = full ^ removed
        kinds = []
        for piece in _component_masks(adj, kept):
            if piece not in piece_kind:
                piece_kind[piece] = _recognize_mask(norms, adj, piece)
            k = piece_kind[piece]
            if k is None:
                raise InvariantViolation(
                    f"remainder of extended {kind.label} failed to classify"
                )
            kinds.append(k)
        options.add(Combination(tuple(kinds)))
    return frozenset(options)


@lru_cache(maxsize=None)
def elementary_results(combination: Combination) -> frozenset[Combination]:
    """Every combination reachable by one elementary transformation.

    Each component is extended and loses a nonempty vertex set independently;
    the per-component remainders are merged.  The empty combination maps to
    {empty}.
    """
    results = {EMPTY}
    for kind in combination:
        options = _elementary_options(kind)
        results = {base + extra for base in results for extra in options}
    return frozenset(results)


# ---------------------------------------------------------------------------
# tie transformation


def gcd_condition(removed_coeffs: Iterable[int], attach_sum: int) -> bool:
    """Per-component admissibility test for a tie choice.

    ``removed_coeffs`` are the coefficients of the removed vertices of one
    component (at least one required) and ``attach_sum`` is the coefficient
    sum over that component's attachment vertices (0 when none).  The choice
    is admissible iff the gcd of all these numbers is 1.
    """
    coeffs = list(removed_coeffs)
    if not coeffs:
        raise ValueError("gcd_condition requires at least one removed vertex")
    return math.gcd(attach_sum, *coeffs) == 1


@dataclass(frozen=True)
class TieChoice:
    """A removal set and an attachment set for one tie transformation.

    ``removed`` and ``attach`` are vertex sets of the disjoint union of
    extended components (disjoint from each other); every component must lose
    at least one vertex and at most three vertices in total may be attachment
    points of the new vertex.
    """

    removed: frozenset[int]
    attach: frozenset[int]

    def __post_init__(self):
        if self.removed & self.attach:
            raise ValueError("removed and attachment sets must be disjoint")
        if len(self.attach) > 3:
            raise ValueError("at most three attachment vertices are allowed")


# A tie result decomposes into remainder components without attachment
# points, which survive unchanged, and the single new component glued from
# the new vertex plus every remainder piece containing an attachment point.
# Options are enumerated per kind and keyed by (unchanged part, canonical
# codes of the marked pieces, number of attachment points); marked pieces are
# deduplicated by a canonical rooted-tree encoding and re-instantiated from a
# representative registry when gluing.

_piece_registry: dict[
    tuple, tuple[tuple[Norm, ...], tuple[tuple[int, int], ...], tuple[int, ...]]
] = {}


def _tree_code(
    norms: tuple[Norm, ...], nbrs: list[list[int]], marks: frozenset[int]
) -> tuple:
    """Canonical code of a labeled tree (labels: norm class + marked flag)."""
    n = len(norms)
    if sum(len(row) for row in nbrs) != 2 * (n - 1):
        raise InvariantViolation("tie remainder piece is not a tree")
    # peel leaves to find the 1 or 2 center vertices
    degree = [len(row) for row in nbrs]
    layer = [v for v in range(n) if degree[v] <= 1]
    alive = n
    while alive > 2:
        nxt = []
        for v in layer:
            degree[v] = 0
            for w in nbrs[v]:
                if degree[w] > 0:
                    degree[w] -= 1
                    if degree[w] == 1:
                        nxt.append(w)
        alive -= len(layer)
        layer = nxt
    centers = layer

    def encode(v: int, parent: int) -> tuple:
        children = tuple(
            sorted(encode(w, v) for w in nbrs[v] if w != parent)
        )
        return ((norms[v].value, v in marks), children)

    return min(encode(c, -1) for c in centers)


def _register_piece(
    norms: tuple[Norm, ...],
    adj: tuple[int, ...],
    piece: int,
    attach_mask: int,
) -> tuple:
    """Canonical code of a remainder piece with marked attachment points."""
    verts = list(_bits(piece))
    index = {v: i for i, v in enumerate(verts)}
    pnorms = tuple(norms[v] for v in verts)
    nbrs: list[list[int]] = [[] for _ in verts]
    pedges = []
    for v in verts:
        for w in _bits(adj[v] & piece):
            if v < w:
                nbrs[index[v]].append(index[w])
                nbrs[index[w]].append(index[v])
                pedges.append((index[v], index[w]))
    marks = frozenset(index[v] for v in _bits(attach_mask & piece))
    code = _tree_code(pnorms, nbrs, marks)
    _piece_registry.setdefault(code, (pnorms, tuple(pedges), tuple(marks)))
    return code


@lru_cache(maxsize=None)
def _glued_kind(codes: tuple) -> Optional[ComponentKind]:
    """Kind of the new vertex glued to the given marked pieces, if catalog."""
    norms: list[Norm] = [Norm.LONG]
    edges: list[tuple[int, int]] = []
    for code in codes:
        pnorms, pedges, marks = _piece_registry[code]
        off = len(norms)
        norms.extend(pnorms)
        edges.extend((u + off, v + off) for (u, v) in pedges)
        edges.extend((0, v + off) for v in marks)
    graph = DecoratedGraph(tuple(norms), frozenset(edges))
    return _recognize_mask(graph.norms, graph.adjacency, (1 << graph.n) - 1)


@lru_cache(maxsize=None)
def _tie_options(
    kind: ComponentKind,
) -> tuple[tuple[Combination, tuple, int], ...]:
    """Per-kind tie contributions: (unchanged part, marked codes, #attach).

    Enumerates every surviving-vertex set (a proper subset, so at least one
    vertex is removed) together with every admissible attachment set of size
    at most three inside it, applying the per-component gcd test.
    """
    ext = extend_component(kind)
    adj = ext.graph.adjacency
    norms = ext.graph.norms
    coeffs = ext.coeffs
    m = ext.graph.n
    full = (1 << m) - 1
    # gcd of the removed coefficients for every removal set
    gcd_removed = [0] * (full + 1)
    for mask in range(1, full + 1):
        low = mask & -mask
        gcd_removed[mask] = math.gcd(
            coeffs[low.bit_length() - 1], gcd_removed[mask ^ low]
        )
    piece_kind: dict[int, Optional[ComponentKind]] = {}
    code_memo: dict[tuple[int, int], tuple] = {}
    options = set()
    for kept in range(full):
        g = gcd_removed[full ^ kept]
        pieces = _component_masks(adj, kept)
        kinds = []
        for piece in pieces:
            if piece not in piece_kind:
                piece_kind[piece] = _recognize_mask(norms, adj, piece)
            k = piece_kind[piece]
            if k is None:
                raise InvariantViolation(
                    f"remainder of extended {kind.label} failed to classify"
                )
            kinds.append(k)
        if g == 1:
            options.add((Combination(tuple(kinds)), (), 0))
        kept_bits = [1 << v for v in _bits(kept)]
        for size in (1, 2, 3):
            if size > len(kept_bits):
                break
            for chosen in combinations(kept_bits, size):
                attach = 0
                total = 0
                for bit in chosen:
                    attach |= bit
                    total += coeffs[bit.bit_length() - 1]
                if math.gcd(g, total) != 1:
                    continue
                unchanged = []
                codes = []
                for piece, k in zip(pieces, kinds):
                    if piece & attach:
                        key = (piece, piece & attach)
                        if key not in code_memo:
                            code_memo[key] = _register_piece(
                                norms, adj, piece, attach
                            )
                        codes.append(code_memo[key])
                    else:
                        unchanged.append(k)
                options.add(
                    (Combination(tuple(unchanged)), tuple(sorted(codes)), size)
                )
    return tuple(options)


@lru_cache(maxsize=None)
def tie_results(combination: Combination) -> frozenset[Combination]:
    """Every combination reachable by one tie transformation.

    Component contributions are combined subject to the global limit of three
    attachment points, the new norm-2 vertex is glued to every attachment
    point, and results whose glued component is not a catalog shape are
    silently dropped.  The empty combination maps to {A1} (the new vertex
    stands alone).
    """
    states = {(EMPTY, (), 0)}
    for kind in combination:
        options = _tie_options(kind)
        states = {
            (u + u2, tuple(sorted(codes + codes2)), b + b2)
            for (u, codes, b) in states
            for (u2, codes2, b2) in options
            if b + b2 <= 3
        }
    results = set()
    for unchanged, codes, _ in states:
        glued = _glued_kind(codes)
        if glued is not None:
            results.add(unchanged + glued)
    return frozenset(results)


# ---------------------------------------------------------------------------
# composed steps


def step_results(combination: Combination, op: str) -> frozenset[Combination]:
    """Apply one named transformation ("elem" or "tie")."""
    if op == ELEMENTARY:
        return elementary_results(combination)
    if op == TIE:
        return tie_results(combination)
    raise ValueError(f"unknown transformation {op!r} (use 'elem' or 'tie')")


def two_step_closure(
    seed: Combination, pairs: Iterable[tuple[str, str]] = ALL_STEP_PAIRS
) -> frozenset[Combination]:
    """Union of op2(op1(seed)) over the given ordered operation pairs.

    Intermediate combinations keep any BC1/G1/G2 components; filtering (for
    callers that want plain Dynkin results only) happens downstream.
    """
    firsts: dict[str, frozenset[Combination]] = {}
    out: set[Combination] = set()
    for op1, op2 in pairs:
        if op1 not in firsts:
            firsts[op1] = step_results(seed, op1)
        for mid in firsts[op1]:
            out |= step_results(mid, op2)
    return frozenset(out)
