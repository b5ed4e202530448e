"""Singularity-class registry: class names, Gabrielov graphs, tabulated data.

Four families of classes are supported: rational double points (named by an
ADE combination label), the simple elliptic classes P8/X9/J10, cusp classes
T(p,q,r), and the fourteen triangle classes.  Each class carries the static
data its PC computation needs: a Gabrielov star type, a basic graph, an
essential basic graph (for the nine E/Z/Q triangle classes), and a set of
exceptional member combinations.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional, Union

from .graphs import (
    Combination,
    DecoratedGraph,
    LabelError,
    Norm,
    parse_label,
)


class SelectorError(ValueError):
    """A class selector string does not name a known singularity class."""


# ---------------------------------------------------------------------------
# static tables

TRIANGLE_GABRIELOV: dict[str, tuple[int, int, int]] = {
    "E12": (2, 3, 7), "Z11": (2, 4, 5), "Q10": (3, 3, 4),
    "E13": (2, 3, 8), "Z12": (2, 4, 6), "Q11": (3, 3, 5),
    "E14": (2, 3, 9), "Z13": (2, 4, 7), "Q12": (3, 3, 6),
    "W12": (2, 5, 5), "S11": (3, 4, 4),
    "W13": (2, 5, 6), "S12": (3, 4, 5),
    "U12": (4, 4, 4),
}

ELLIPTIC_BASIC: dict[str, str] = {"P8": "E6", "X9": "E7", "J10": "E8"}

# the nine triangle classes whose PC set has a second, two-step description
ESSENTIAL_BASIC: dict[str, str] = {
    "E12": "E8", "Z11": "E7", "Q10": "E6",
    "E13": "E8+BC1", "Z12": "E7+BC1", "Q11": "E6+BC1",
    "E14": "E8+G2", "Z13": "E7+G2", "Q12": "E6+G2",
}

TRIANGLE_EXCEPTIONS: dict[str, tuple[str, ...]] = {
    "Z13": ("A7+A4",),
    "S11": ("2A4+A1",),
    "U12": ("2D4+A2", "A6+A4", "A5+A4+A1", "2A4+A1"),
}

TRIANGLE_NAMES = tuple(TRIANGLE_GABRIELOV)
NINE_NAMES = tuple(ESSENTIAL_BASIC)


# ---------------------------------------------------------------------------
# class types


@dataclass(frozen=True)
class RationalDoublePoint:
    """An ADE singularity, named by the combination of its resolution graph."""

    combination: Combination

    def __post_init__(self):
        if not self.combination.is_ade_only:
            raise SelectorError(
                "rational double point classes must be ADE combinations, "
                f"got {self.combination}"
            )


@dataclass(frozen=True)
class SimpleElliptic:
    name: str

    def __post_init__(self):
        if self.name not in ELLIPTIC_BASIC:
            raise SelectorError(f"unknown simple elliptic class {self.name!r}")


@dataclass(frozen=True)
class Cusp:
    """A cusp class T(p,q,r) with 2 <= p <= q <= r and 1/p+1/q+1/r < 1."""

    p: int
    q: int
    r: int

    def __post_init__(self):
        _check_star_type(self.p, self.q, self.r)


@dataclass(frozen=True)
class Triangle:
    name: str

    def __post_init__(self):
        if self.name not in TRIANGLE_GABRIELOV:
            raise SelectorError(f"unknown triangle class {self.name!r}")


SingularityClass = Union[RationalDoublePoint, SimpleElliptic, Cusp, Triangle]


@dataclass(frozen=True)
class ClassData:
    """Static data backing one class's PC computation (unused fields None)."""

    gabrielov_type: Optional[tuple[int, int, int]] = None
    basic_graph: Optional[Combination] = None
    essential_basic_graph: Optional[Combination] = None
    exceptions: frozenset[Combination] = frozenset()


# ---------------------------------------------------------------------------
# Gabrielov graphs


def _check_star_type(p: int, q: int, r: int) -> None:
    if not (2 <= p <= q <= r):
        raise SelectorError(
            f"star type requires 2 <= p <= q <= r, got ({p}, {q}, {r})"
        )
    if q * r + p * r + p * q >= p * q * r:
        raise SelectorError(
            f"star type ({p}, {q}, {r}) is not hyperbolic "
            "(needs 1/p + 1/q + 1/r < 1)"
        )


def gabrielov_graph(p: int, q: int, r: int) -> DecoratedGraph:
    """Three-armed star tree on p+q+r-2 norm-2 vertices.

    Vertex 0 is the center; the three arms have p-1, q-1 and r-1 further
    vertices.  Only hyperbolic types (1/p + 1/q + 1/r < 1) are accepted.
    """
    _check_star_type(p, q, r)
    edges = set()
    nxt = 1
    for arm in (p - 1, q - 1, r - 1):
        prev = 0
        for _ in range(arm):
            edges.add((prev, nxt))
            prev = nxt
            nxt += 1
    return DecoratedGraph((Norm.LONG,) * nxt, frozenset(edges))


# ---------------------------------------------------------------------------
# class data and selectors


def class_data(singularity: SingularityClass) -> ClassData:
    """Static table lookup; total over all valid classes."""
    if isinstance(singularity, RationalDoublePoint):
        return ClassData()
    if isinstance(singularity, SimpleElliptic):
        return ClassData(basic_graph=parse_label(ELLIPTIC_BASIC[singularity.name]))
    if isinstance(singularity, Cusp):
        return ClassData(
            gabrielov_type=(singularity.p, singularity.q, singularity.r)
        )
    if isinstance(singularity, Triangle):
        name = singularity.name
        essential = ESSENTIAL_BASIC.get(name)
        return ClassData(
            gabrielov_type=TRIANGLE_GABRIELOV[name],
            essential_basic_graph=(
                parse_label(essential) if essential is not None else None
            ),
            exceptions=frozenset(
                parse_label(x) for x in TRIANGLE_EXCEPTIONS.get(name, ())
            ),
        )
    raise TypeError(f"not a singularity class: {singularity!r}")


def class_label(singularity: SingularityClass) -> str:
    """Canonical selector string for a class (inverse of parse_class)."""
    if isinstance(singularity, RationalDoublePoint):
        return str(singularity.combination)
    if isinstance(singularity, (SimpleElliptic, Triangle)):
        return singularity.name
    if isinstance(singularity, Cusp):
        return f"T({singularity.p},{singularity.q},{singularity.r})"
    raise TypeError(f"not a singularity class: {singularity!r}")


_CUSP_RE = re.compile(r"^T\(\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\)$")


def parse_class(selector: str) -> SingularityClass:
    """Resolve a selector string to a singularity class.

    Triangle names (E12..U12) and elliptic names (P8/X9/J10) are matched
    first, then the cusp pattern T(p,q,r); anything else must parse as an
    ADE combination label and names a rational double point.  The namespaces
    cannot collide: E-series labels stop at E8, so E12/E13/E14 are free.
    """
    if selector in TRIANGLE_GABRIELOV:
        return Triangle(selector)
    if selector in ELLIPTIC_BASIC:
        return SimpleElliptic(selector)
    m = _CUSP_RE.match(selector)
    if m:
        return Cusp(*(int(g) for g in m.groups()))
    try:
        combination = parse_label(selector)
    except LabelError as exc:
        raise SelectorError(
            f"{selector!r} is not a class name, a cusp type T(p,q,r), "
            f"or a combination label ({exc})"
        )
    return RationalDoublePoint(combination)
