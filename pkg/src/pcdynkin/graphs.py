"""Decorated Dynkin graphs: catalog shapes, recognition, and combination labels.

A decorated graph is a finite simple graph whose vertices carry one of three
root-norm classes (square length 2, 1/2 or 2/3).  The connected catalog
shapes are the simply laced trees A(n), D(n), E(6|7|8) built from norm-2
vertices, the one-vertex shapes BC1 (norm 1/2) and G1 (norm 2/3), and the
two-vertex shape G2 (a norm-2 vertex joined to a norm-2/3 vertex).  A
Combination is the isomorphism class of a disjoint union of catalog shapes
and is written with labels such as ``D4+3A1`` or ``E8+BC1``.

Everything in this module is immutable and side-effect free; functions can be
shared freely across threads.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from itertools import groupby
from typing import Iterable, Iterator, Optional


class LabelError(ValueError):
    """A combination label does not match the label grammar."""


class Norm(Enum):
    """Root-norm class of a vertex."""

    LONG = "long"            # square length 2
    HALF = "half"            # square length 1/2
    TWOTHIRDS = "two-thirds"  # square length 2/3


# ---------------------------------------------------------------------------
# graphs


@dataclass(frozen=True)
class DecoratedGraph:
    """A finite simple graph with a norm class attached to every vertex.

    Vertices are 0..n-1 where n = len(norms).  Edges are unordered pairs of
    distinct vertices; an edge records a nonzero inner product between the
    corresponding roots.
    """

    norms: tuple[Norm, ...]
    edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        n = len(self.norms)
        fixed = set()
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for {n} vertices")
            fixed.add((u, v) if u < v else (v, u))
        object.__setattr__(self, "edges", frozenset(fixed))

    @property
    def n(self) -> int:
        return len(self.norms)

    @cached_property
    def adjacency(self) -> tuple[int, ...]:
        """Bitmask adjacency rows: bit v of adjacency[u] is set iff u--v."""
        adj = [0] * self.n
        for u, v in self.edges:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return tuple(adj)

    def induced(self, vertices: Iterable[int]) -> "DecoratedGraph":
        """Induced subgraph on ``vertices``, renumbered by position.

        The order of ``vertices`` fixes the new vertex numbering, so passing a
        permutation of range(n) relabels the whole graph.
        """
        order = list(vertices)
        if len(set(order)) != len(order):
            raise ValueError("duplicate vertices in induced-subgraph selection")
        index = {v: i for i, v in enumerate(order)}
        norms = tuple(self.norms[v] for v in order)
        edges = frozenset(
            (index[u], index[v])
            for (u, v) in self.edges
            if u in index and v in index
        )
        return DecoratedGraph(norms, edges)


def disjoint_union(graphs: Iterable[DecoratedGraph]) -> DecoratedGraph:
    """Disjoint union, vertices of later graphs shifted past earlier ones."""
    norms: list[Norm] = []
    edges: set[tuple[int, int]] = set()
    for g in graphs:
        off = len(norms)
        norms.extend(g.norms)
        edges.update((u + off, v + off) for (u, v) in g.edges)
    return DecoratedGraph(tuple(norms), frozenset(edges))


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _component_masks(adj: tuple[int, ...], mask: int) -> list[int]:
    """Connected components of the induced subgraph on ``mask``, as bitmasks."""
    pieces = []
    rest = mask
    while rest:
        comp = rest & -rest
        frontier = comp
        while frontier:
            grown = 0
            for v in _bits(frontier):
                grown |= adj[v]
            frontier = grown & mask & ~comp
            comp |= frontier
        pieces.append(comp)
        rest &= ~comp
    return pieces


# ---------------------------------------------------------------------------
# catalog kinds

_SERIES_ORDER = {"E": 0, "D": 1, "A": 2, "G2": 3, "G1": 4, "BC1": 5}


@dataclass(frozen=True)
class ComponentKind:
    """One connected catalog shape: A(n), D(n), E(6|7|8), BC1, G1 or G2.

    ``rank`` equals the number of vertices for every series, including the
    decorated ones (BC1 and G1 have one vertex, G2 has two).
    """

    series: str
    rank: int

    def __post_init__(self):
        s, r = self.series, self.rank
        if s == "A":
            if r < 1:
                raise ValueError(f"A requires rank >= 1, got {r}")
        elif s == "D":
            if r < 4:
                raise ValueError(f"D requires rank >= 4, got {r}")
        elif s == "E":
            if r not in (6, 7, 8):
                raise ValueError(f"E requires rank 6, 7 or 8, got {r}")
        elif s in ("BC1", "G1", "G2"):
            want = 2 if s == "G2" else 1
            if r != want:
                raise ValueError(f"{s} has exactly {want} vertex(es), got rank {r}")
        else:
            raise ValueError(f"unknown series {s!r}")

    @property
    def vertex_count(self) -> int:
        return self.rank

    @property
    def is_ade(self) -> bool:
        return self.series in ("A", "D", "E")

    @property
    def label(self) -> str:
        if self.series in ("A", "D", "E"):
            return f"{self.series}{self.rank}"
        return self.series

    def __str__(self) -> str:
        return self.label


def _kind_sort_key(kind: ComponentKind) -> tuple[int, int]:
    return (-kind.vertex_count, _SERIES_ORDER[kind.series])


def A(n: int) -> ComponentKind:
    return ComponentKind("A", n)


def D(n: int) -> ComponentKind:
    return ComponentKind("D", n)


def E(n: int) -> ComponentKind:
    return ComponentKind("E", n)


BC1 = ComponentKind("BC1", 1)
G1 = ComponentKind("G1", 1)
G2 = ComponentKind("G2", 2)


@dataclass(frozen=True)
class Combination:
    """A finite multiset of catalog kinds, kept in canonical order.

    Canonical order sorts by vertex count descending, ties broken
    E < D < A < G2 < G1 < BC1, which is exactly the term order of canonical
    labels.  Construction accepts kinds in any order.
    """

    kinds: tuple[ComponentKind, ...] = ()

    def __post_init__(self):
        object.__setattr__(
            self, "kinds", tuple(sorted(self.kinds, key=_kind_sort_key))
        )

    @property
    def total_rank(self) -> int:
        return sum(k.rank for k in self.kinds)

    @property
    def is_ade_only(self) -> bool:
        return all(k.is_ade for k in self.kinds)

    def __add__(self, other: "Combination | ComponentKind") -> "Combination":
        extra = (other,) if isinstance(other, ComponentKind) else other.kinds
        return Combination(self.kinds + extra)

    def __len__(self) -> int:
        return len(self.kinds)

    def __iter__(self) -> Iterator[ComponentKind]:
        return iter(self.kinds)

    def __str__(self) -> str:
        return format_label(self)


EMPTY = Combination()


# ---------------------------------------------------------------------------
# labels

_TERM_RE = re.compile(r"^(\d+)?(BC1|G1|G2|([ADE])(\d+))$")


def format_label(combination: Combination) -> str:
    """Canonical label: terms in canonical order, equal kinds merged.

    The empty combination prints as "0"; repeated kinds get a multiplicity
    prefix, e.g. ``D4+3A1``.
    """
    if not combination.kinds:
        return "0"
    terms = []
    for kind, group in groupby(combination.kinds):
        count = len(list(group))
        terms.append(kind.label if count == 1 else f"{count}{kind.label}")
    return "+".join(terms)


def parse_label(text: str) -> Combination:
    """Parse a combination label; inverse of format_label on canonical input.

    Whitespace around terms is tolerated.  Raises LabelError naming the
    offending term on malformed input.
    """
    text = text.strip()
    if text == "0":
        return EMPTY
    if not text:
        raise LabelError("empty label (use '0' for the empty combination)")
    kinds: list[ComponentKind] = []
    for term in (part.strip() for part in text.split("+")):
        m = _TERM_RE.match(term)
        if m is None:
            raise LabelError(f"malformed term {term!r} in label {text!r}")
        mult_text, kind_text, ade_series, ade_rank = m.groups()
        mult = 1
        if mult_text is not None:
            mult = int(mult_text)
            if mult < 2:
                raise LabelError(
                    f"multiplicity prefix must be >= 2 in term {term!r}"
                )
        try:
            if ade_series is not None:
                kind = ComponentKind(ade_series, int(ade_rank))
            else:
                kind = ComponentKind(kind_text, 2 if kind_text == "G2" else 1)
        except ValueError as exc:
            raise LabelError(f"invalid term {term!r} in label {text!r}: {exc}")
        kinds.extend([kind] * mult)
    return Combination(tuple(kinds))


# ---------------------------------------------------------------------------
# building and recognizing catalog shapes


def build_component(kind: ComponentKind) -> DecoratedGraph:
    """The standard realization of one catalog kind.

    Vertex layout (fixed, relied on by the extension tables): A(n) is the
    path 0-1-...-(n-1).  D(n) has branch vertex 0, leaves 1 and 2, and the
    long arm 0-3-4-...-(n-1).  E(n) has branch vertex 0, the one-vertex arm
    {1}, the two-vertex arm 0-2-3, and the long arm 0-4-...-(n-1).
    """
    s, n = kind.series, kind.rank
    if s == "A":
        return DecoratedGraph(
            (Norm.LONG,) * n, frozenset((i, i + 1) for i in range(n - 1))
        )
    if s == "D":
        edges = {(0, 1), (0, 2), (0, 3)}
        edges.update((i, i + 1) for i in range(3, n - 1))
        return DecoratedGraph((Norm.LONG,) * n, frozenset(edges))
    if s == "E":
        edges = {(0, 1), (0, 2), (2, 3), (0, 4)}
        edges.update((i, i + 1) for i in range(4, n - 1))
        return DecoratedGraph((Norm.LONG,) * n, frozenset(edges))
    if s == "BC1":
        return DecoratedGraph((Norm.HALF,), frozenset())
    if s == "G1":
        return DecoratedGraph((Norm.TWOTHIRDS,), frozenset())
    # G2
    return DecoratedGraph((Norm.LONG, Norm.TWOTHIRDS), frozenset({(0, 1)}))


def realization(combination: Combination) -> DecoratedGraph:
    """Disjoint union of the standard component realizations."""
    return disjoint_union(build_component(k) for k in combination.kinds)


def _arm_length(adj: tuple[int, ...], mask: int, branch: int, first: int) -> int:
    """Length of the arm leaving ``branch`` through ``first`` inside ``mask``."""
    length = 0
    prev, cur = branch, first
    while True:
        length += 1
        forward = adj[cur] & mask & ~(1 << prev)
        if forward == 0:
            return length
        prev, cur = cur, forward.bit_length() - 1


def _recognize_mask(
    norms: tuple[Norm, ...], adj: tuple[int, ...], mask: int
) -> Optional[ComponentKind]:
    """Recognize one connected induced subgraph given as a bitmask.

    Returns None when the piece is not a catalog shape (for example a cycle,
    a vertex of degree 4, two branch vertices, or a norm pattern outside the
    catalog, such as a norm-2 vertex joined to a norm-1/2 vertex).
    """
    verts = list(_bits(mask))
    count = len(verts)
    present = {norms[v] for v in verts}
    if Norm.HALF in present:
        return BC1 if count == 1 else None
    if Norm.TWOTHIRDS in present:
        if count == 1:
            return G1
        if count == 2 and present == {Norm.LONG, Norm.TWOTHIRDS}:
            return G2
        return None
    # all vertices have norm 2
    degrees = {v: (adj[v] & mask).bit_count() for v in verts}
    if 2 * (count - 1) != sum(degrees.values()):
        return None  # connected with an extra edge: contains a cycle
    if max(degrees.values(), default=0) >= 4:
        return None
    branches = [v for v in verts if degrees[v] == 3]
    if not branches:
        return A(count)
    if len(branches) > 1:
        return None
    b = branches[0]
    arms = sorted(
        _arm_length(adj, mask, b, w) for w in _bits(adj[b] & mask)
    )
    if arms[0] == 1 and arms[1] == 1:
        return D(count)
    if arms[0] == 1 and arms[1] == 2 and arms[2] in (2, 3, 4):
        return E(count)
    return None


def recognize_component(graph: DecoratedGraph) -> Optional[ComponentKind]:
    """Identify a nonempty connected decorated graph, or None if not catalog.

    Raises ValueError on empty or disconnected input.
    """
    if graph.n == 0:
        raise ValueError("recognize_component requires a nonempty graph")
    full = (1 << graph.n) - 1
    if _component_masks(graph.adjacency, full) != [full]:
        raise ValueError("recognize_component requires a connected graph")
    return _recognize_mask(graph.norms, graph.adjacency, full)


def classify(graph: DecoratedGraph) -> Optional[Combination]:
    """Split into connected components and recognize each.

    Returns the Combination of component kinds, or None as soon as any
    component falls outside the catalog.  The empty graph classifies as the
    empty combination.
    """
    kinds = []
    full = (1 << graph.n) - 1
    for piece in _component_masks(graph.adjacency, full):
        kind = _recognize_mask(graph.norms, graph.adjacency, piece)
        if kind is None:
            return None
        kinds.append(kind)
    return Combination(tuple(kinds))


def dynkin_subgraph_classes(graph: DecoratedGraph) -> frozenset[Combination]:
    """Combinations of all induced subgraphs that are plain Dynkin graphs.

    Every vertex subset is taken, the induced subgraph classified, and the
    ADE-only results collected (the empty combination is always present).
    The input must be all norm-2; subsets whose induced subgraph contains a
    non-catalog component are simply skipped.
    """
    if any(norm is not Norm.LONG for norm in graph.norms):
        raise ValueError("dynkin_subgraph_classes requires an all norm-2 graph")
    adj = graph.adjacency
    piece_kind: dict[int, Optional[ComponentKind]] = {}
    found = {EMPTY}
    for mask in range(1, 1 << graph.n):
        kinds = []
        for piece in _component_masks(adj, mask):
            if piece not in piece_kind:
                piece_kind[piece] = _recognize_mask(graph.norms, adj, piece)
            kind = piece_kind[piece]
            if kind is None or not kind.is_ade:
                kinds = None
                break
            kinds.append(kind)
        if kinds is not None:
            found.add(Combination(tuple(kinds)))
    return frozenset(found)
