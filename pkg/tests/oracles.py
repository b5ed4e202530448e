"""Independent brute-force oracles used to pin expected values.

Everything here deliberately avoids the library's recognition and
enumeration logic.  Shapes are identified by explicit isomorphism search
against built catalog graphs, subgraph classes by direct subset enumeration,
transformation results by direct application of the definitions, and the
extended-graph coefficients by exact linear algebra over Fractions.  Library
code used: only the graph container, the component builders and (for the
transformation oracles) the classifier, each of which is itself validated
against these oracles first.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction
from itertools import combinations as subsets
from itertools import product

from pcdynkin import (
    A,
    BC1,
    Combination,
    D,
    DecoratedGraph,
    E,
    G1,
    G2,
    Norm,
    build_component,
    classify,
    extend_component,
)

# ---------------------------------------------------------------------------
# brute-force graph isomorphism


def graphs_isomorphic(g: DecoratedGraph, h: DecoratedGraph) -> bool:
    """Norm-preserving isomorphism test by backtracking search."""
    if g.n != h.n or len(g.edges) != len(h.edges):
        return False

    def signature(graph):
        deg = [0] * graph.n
        for u, v in graph.edges:
            deg[u] += 1
            deg[v] += 1
        return deg, sorted(
            (graph.norms[v].value, deg[v]) for v in range(graph.n)
        )

    gdeg, gsig = signature(g)
    hdeg, hsig = signature(h)
    if gsig != hsig:
        return False
    gadj = {v: set() for v in range(g.n)}
    hadj = {v: set() for v in range(h.n)}
    for u, v in g.edges:
        gadj[u].add(v)
        gadj[v].add(u)
    for u, v in h.edges:
        hadj[u].add(v)
        hadj[v].add(u)
    order = sorted(range(g.n), key=lambda v: -gdeg[v])
    mapping: dict[int, int] = {}
    used: set[int] = set()

    def extend(i: int) -> bool:
        if i == len(order):
            return True
        u = order[i]
        for w in range(h.n):
            if w in used:
                continue
            if h.norms[w] is not g.norms[u] or hdeg[w] != gdeg[u]:
                continue
            if any(
                (x in mapping) and ((mapping[x] in hadj[w]) != (x in gadj[u]))
                for x in range(g.n)
            ):
                continue
            mapping[u] = w
            used.add(w)
            if extend(i + 1):
                return True
            del mapping[u]
            used.remove(w)
        return False

    return extend(0)


# ---------------------------------------------------------------------------
# shape identification by isomorphism against built catalog graphs


def _catalog_candidates(n: int):
    kinds = [A(n)]
    if n >= 4:
        kinds.append(D(n))
    if n in (6, 7, 8):
        kinds.append(E(n))
    if n == 1:
        kinds += [BC1, G1]
    if n == 2:
        kinds.append(G2)
    return kinds


def _split_components(g: DecoratedGraph) -> list[list[int]]:
    adj = {v: set() for v in range(g.n)}
    for u, v in g.edges:
        adj[u].add(v)
        adj[v].add(u)
    seen: set[int] = set()
    parts = []
    for v in range(g.n):
        if v in seen:
            continue
        stack, part = [v], []
        seen.add(v)
        while stack:
            x = stack.pop()
            part.append(x)
            for w in adj[x]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        parts.append(sorted(part))
    return parts


def oracle_classify(g: DecoratedGraph):
    """Combination of g, identified purely by isomorphism matching."""
    kinds = []
    for part in _split_components(g):
        piece = g.induced(part)
        for kind in _catalog_candidates(piece.n):
            if graphs_isomorphic(piece, build_component(kind)):
                kinds.append(kind)
                break
        else:
            return None
    return Combination(tuple(kinds))


def oracle_subgraph_classes(g: DecoratedGraph) -> frozenset[Combination]:
    """ADE combinations over all vertex subsets, via direct enumeration."""
    out = set()
    for size in range(g.n + 1):
        for chosen in subsets(range(g.n), size):
            combo = oracle_classify(g.induced(chosen))
            if combo is not None and combo.is_ade_only:
                out.add(combo)
    return frozenset(out)


# ---------------------------------------------------------------------------
# transformations applied straight from their definitions


def _assemble_extended(combination: Combination):
    norms: list[Norm] = []
    edges: list[tuple[int, int]] = []
    coeffs: list[int] = []
    component_ranges = []
    for kind in combination:
        ext = extend_component(kind)
        off = len(norms)
        norms.extend(ext.graph.norms)
        coeffs.extend(ext.coeffs)
        edges.extend((u + off, v + off) for (u, v) in ext.graph.edges)
        component_ranges.append(range(off, off + ext.graph.n))
    return norms, edges, coeffs, component_ranges


def brute_elementary(combination: Combination) -> frozenset[Combination]:
    """Remove a nonempty vertex set from every extended component."""
    norms, edges, coeffs, ranges = _assemble_extended(combination)
    per_component = []
    for rng in ranges:
        choices = [
            set(chosen)
            for size in range(1, len(rng) + 1)
            for chosen in subsets(rng, size)
        ]
        per_component.append(choices)
    out = set()
    for removal_parts in product(*per_component):
        removed = set().union(*removal_parts) if removal_parts else set()
        keep = [v for v in range(len(norms)) if v not in removed]
        index = {v: i for i, v in enumerate(keep)}
        g = DecoratedGraph(
            tuple(norms[v] for v in keep),
            frozenset(
                (index[u], index[v])
                for (u, v) in edges
                if u in index and v in index
            ),
        )
        combo = classify(g)
        if combo is None:
            raise AssertionError("elementary remainder failed to classify")
        out.add(combo)
    return frozenset(out)


def brute_tie(combination: Combination) -> frozenset[Combination]:
    """Try every (removed, attach) split of the extended disjoint union.

    Vertices are assigned kept/removed/attach independently; a split is
    admissible when every component loses a vertex, at most three vertices
    are attachment points, and each component passes the gcd test.  The new
    norm-2 vertex is joined to every attachment point and the result kept
    when it classifies.
    """
    norms, edges, coeffs, ranges = _assemble_extended(combination)
    m = len(norms)
    out = set()
    for assign in product((0, 1, 2), repeat=m):  # 0 keep, 1 remove, 2 attach
        attach = [v for v in range(m) if assign[v] == 2]
        if len(attach) > 3:
            continue
        admissible = True
        for rng in ranges:
            removed_coeffs = [coeffs[v] for v in rng if assign[v] == 1]
            if not removed_coeffs:
                admissible = False
                break
            attach_sum = sum(coeffs[v] for v in rng if assign[v] == 2)
            if math.gcd(attach_sum, *removed_coeffs) != 1:
                admissible = False
                break
        if not admissible:
            continue
        keep = [v for v in range(m) if assign[v] != 1]
        index = {v: i for i, v in enumerate(keep)}
        new_vertex = len(keep)
        g = DecoratedGraph(
            tuple(norms[v] for v in keep) + (Norm.LONG,),
            frozenset(
                (index[u], index[v])
                for (u, v) in edges
                if u in index and v in index
            )
            | frozenset((index[v], new_vertex) for v in attach),
        )
        combo = classify(g)
        if combo is not None:
            out.add(combo)
    return frozenset(out)


# ---------------------------------------------------------------------------
# exact linear algebra for the extended coefficient vectors

_NORM_SQUARE = {
    Norm.LONG: Fraction(2),
    Norm.HALF: Fraction(1, 2),
    Norm.TWOTHIRDS: Fraction(2, 3),
}

_INNER = {
    frozenset([Norm.LONG]): Fraction(-1),
    frozenset([Norm.LONG, Norm.TWOTHIRDS]): Fraction(-1),
    frozenset([Norm.LONG, Norm.HALF]): Fraction(-1),
    frozenset([Norm.TWOTHIRDS]): Fraction(-2, 3),
}


def extended_cartan_matrix(
    graph: DecoratedGraph,
    double_bonds: frozenset[tuple[int, int]] = frozenset(),
) -> list[list[Fraction]]:
    """C[i][j] = 2 (a_i, a_j) / (a_j, a_j) with table-driven inner products.

    ``double_bonds`` lists edges whose inner product is doubled; the rank-1
    extension needs this, because its two norm-2 vertices are joined by a
    double bond that the simple-graph flattening cannot express.
    """
    n = graph.n
    C = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        C[i][i] = Fraction(2)
    for u, v in graph.edges:
        inner = _INNER[frozenset([graph.norms[u], graph.norms[v]])]
        if (u, v) in double_bonds or (v, u) in double_bonds:
            inner *= 2
        C[u][v] = 2 * inner / _NORM_SQUARE[graph.norms[v]]
        C[v][u] = 2 * inner / _NORM_SQUARE[graph.norms[u]]
    return C


def matrix_rank(rows: list[list[Fraction]]) -> int:
    """Gaussian elimination over Fractions."""
    rows = [row[:] for row in rows]
    rank = 0
    cols = len(rows[0]) if rows else 0
    for col in range(cols):
        pivot = next(
            (i for i in range(rank, len(rows)) if rows[i][col] != 0), None
        )
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        lead = rows[rank][col]
        rows[rank] = [x / lead for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col] != 0:
                factor = rows[i][col]
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def coefficient_vector_checks(kind) -> None:
    """Assert the stored coefficients are the primitive annihilating vector.

    Checks: the vector lies in the left kernel of the extended Cartan matrix,
    the kernel is one-dimensional, all entries are positive with gcd 1, and
    the added vertex carries 1.
    """
    ext = extend_component(kind)
    double_bonds = frozenset({(0, 1)}) if kind == A(1) else frozenset()
    C = extended_cartan_matrix(ext.graph, double_bonds)
    n = ext.graph.n
    coeffs = ext.coeffs
    for j in range(n):
        total = sum(coeffs[i] * C[i][j] for i in range(n))
        assert total == 0, f"{kind}: column {j} not annihilated"
    assert matrix_rank(C) == n - 1, f"{kind}: kernel not one-dimensional"
    assert all(c > 0 for c in coeffs), f"{kind}: coefficients must be positive"
    assert math.gcd(*coeffs) == 1, f"{kind}: coefficients not primitive"
    assert coeffs[ext.added_vertex] == 1, f"{kind}: added vertex must carry 1"


# ---------------------------------------------------------------------------
# seeded random combinations for the bulk property run


def random_ade_combination(rng: random.Random, max_rank: int) -> Combination:
    kinds = []
    budget = max_rank
    while budget >= 1:
        if kinds and rng.random() < 0.3:
            break
        series = rng.choice(["A", "A", "A", "D", "E"])
        if series == "A":
            kinds.append(A(rng.randint(1, budget)))
        elif series == "D" and budget >= 4:
            kinds.append(D(rng.randint(4, budget)))
        elif series == "E" and budget >= 6:
            kinds.append(E(rng.randint(6, min(8, budget))))
        else:
            kinds.append(A(rng.randint(1, budget)))
        budget = max_rank - sum(k.rank for k in kinds)
    return Combination(tuple(kinds))
