"""PC sets: which combinations a class can degenerate into, with receipts.

Each singularity class has a canonical enumeration method: rational double
points take the induced-subgraph classes of their own graph, simple elliptic
classes apply two elementary transformations to their basic graph, cusp
classes apply one elementary transformation to every Dynkin subgraph of the
Gabrielov graph, and triangle classes apply one elementary or one tie
transformation to every Dynkin subgraph plus a short table of exceptional
members.  The nine E/Z/Q triangle classes additionally admit a second,
independent method (two transformation steps from an essential basic graph,
keeping only plain Dynkin results), and the two methods must agree, which is
the main internal cross-check this module exposes.

Results can be persisted as small JSON documents; membership queries can be
asked to produce a witness, a replayable derivation chain.
"""

from __future__ import annotations

import json
import logging
import os
import tempfile
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Iterable, Optional

from .catalog import (
    Cusp,
    NINE_NAMES,
    RationalDoublePoint,
    SimpleElliptic,
    SingularityClass,
    Triangle,
    class_data,
    class_label,
    gabrielov_graph,
)
from .graphs import (
    Combination,
    LabelError,
    dynkin_subgraph_classes,
    parse_label,
    realization,
)
from .transforms import (
    ALL_STEP_PAIRS,
    ELEMENTARY,
    TIE,
    InvariantViolation,
    elementary_results,
    step_results,
    tie_results,
    two_step_closure,
)

log = logging.getLogger(__name__)

SCHEMA_VERSION = 1

METHOD_RDP = "rdp"
METHOD_ELLIPTIC = "elliptic"
METHOD_CUSP = "cusp"
METHOD_THM1 = "thm1"
METHOD_THM2 = "thm2"


class CacheCorruptionError(RuntimeError):
    """A cache file exists but cannot be decoded."""


@dataclass(frozen=True)
class PcResult:
    """A computed PC set together with how it was obtained."""

    singularity: SingularityClass
    method: str
    members: frozenset[Combination]
    exceptions_included: Optional[bool] = None  # thm1 only

    @property
    def options(self) -> dict:
        if self.method == METHOD_THM1:
            return {"exceptions": bool(self.exceptions_included)}
        return {}

    def member_labels(self) -> list[str]:
        return sorted(str(m) for m in self.members)


def canonical_method(singularity: SingularityClass) -> str:
    if isinstance(singularity, RationalDoublePoint):
        return METHOD_RDP
    if isinstance(singularity, SimpleElliptic):
        return METHOD_ELLIPTIC
    if isinstance(singularity, Cusp):
        return METHOD_CUSP
    if isinstance(singularity, Triangle):
        return METHOD_THM1
    raise TypeError(f"not a singularity class: {singularity!r}")


# ---------------------------------------------------------------------------
# the five enumeration methods


@lru_cache(maxsize=None)
def _star_subgraph_classes(pqr: tuple[int, int, int]) -> frozenset[Combination]:
    return dynkin_subgraph_classes(gabrielov_graph(*pqr))


def pc_rational_double_point(combination: Combination) -> PcResult:
    """PC set of an ADE singularity: induced-subgraph classes of its graph."""
    singularity = RationalDoublePoint(combination)  # rejects non-ADE input
    members = dynkin_subgraph_classes(realization(combination))
    return PcResult(singularity, METHOD_RDP, members)


def pc_simple_elliptic(singularity: SimpleElliptic) -> PcResult:
    """Two elementary transformations applied to the basic graph."""
    basic = class_data(singularity).basic_graph
    members: set[Combination] = set()
    for mid in elementary_results(basic):
        members |= elementary_results(mid)
    return PcResult(singularity, METHOD_ELLIPTIC, frozenset(members))


def pc_cusp(singularity: Cusp) -> PcResult:
    """One elementary transformation from each Dynkin subgraph of the star."""
    pqr = class_data(singularity).gabrielov_type
    members: set[Combination] = set()
    for sub in _star_subgraph_classes(pqr):
        members |= elementary_results(sub)
    return PcResult(singularity, METHOD_CUSP, frozenset(members))


def pc_triangle_thm1(
    singularity: Triangle, include_exceptions: bool = True
) -> PcResult:
    """One elementary or one tie step from each Dynkin subgraph of the star.

    The tabulated exceptional members are added on top unless switched off;
    they are asserted to be unreachable by the one-step enumeration, so the
    flag cleanly splits the two sources.
    """
    data = class_data(singularity)
    reachable: set[Combination] = set()
    for sub in _star_subgraph_classes(data.gabrielov_type):
        reachable |= elementary_results(sub)
        reachable |= tie_results(sub)
    for member in reachable:
        if not member.is_ade_only:
            raise InvariantViolation(
                f"non-ADE member {member} from all-ADE subgraph input"
            )
    overlap = data.exceptions & reachable
    if overlap:
        raise InvariantViolation(
            f"tabulated exceptions reachable by one step: "
            f"{sorted(map(str, overlap))}"
        )
    members = reachable | data.exceptions if include_exceptions else reachable
    return PcResult(
        singularity, METHOD_THM1, frozenset(members),
        exceptions_included=include_exceptions,
    )


def pc_nine_thm2(singularity: Triangle) -> PcResult:
    """Two transformation steps from the essential basic graph (nine classes).

    All four ordered operation pairs are taken; intermediate combinations may
    contain BC1/G1/G2 components, which are filtered from the final answer.
    """
    essential = class_data(singularity).essential_basic_graph
    if essential is None:
        raise ValueError(
            f"{singularity.name} has no essential basic graph; "
            f"the two-step method covers only {', '.join(NINE_NAMES)}"
        )
    closure = two_step_closure(essential, ALL_STEP_PAIRS)
    members = frozenset(c for c in closure if c.is_ade_only)
    return PcResult(singularity, METHOD_THM2, members)


def compute_pc(
    singularity: SingularityClass,
    method: Optional[str] = None,
    include_exceptions: bool = True,
    cache_dir: Optional[Path] = None,
) -> PcResult:
    """Compute (or load from cache) the PC set of a class.

    ``method`` defaults to the class's canonical method; ``thm2`` may be
    requested for the nine E/Z/Q triangle classes.  When ``cache_dir`` is
    given, a hit is returned as-is and a fresh result is written back.
    """
    if method is None:
        method = canonical_method(singularity)
    if cache_dir is not None:
        cached = load_cache(singularity, method, include_exceptions, cache_dir)
        if cached is not None:
            return cached
    if method == METHOD_RDP:
        if not isinstance(singularity, RationalDoublePoint):
            raise ValueError(f"method {method!r} needs a rational double point")
        result = pc_rational_double_point(singularity.combination)
    elif method == METHOD_ELLIPTIC:
        if not isinstance(singularity, SimpleElliptic):
            raise ValueError(f"method {method!r} needs a simple elliptic class")
        result = pc_simple_elliptic(singularity)
    elif method == METHOD_CUSP:
        if not isinstance(singularity, Cusp):
            raise ValueError(f"method {method!r} needs a cusp class")
        result = pc_cusp(singularity)
    elif method == METHOD_THM1:
        if not isinstance(singularity, Triangle):
            raise ValueError(f"method {method!r} needs a triangle class")
        result = pc_triangle_thm1(singularity, include_exceptions)
    elif method == METHOD_THM2:
        if not isinstance(singularity, Triangle):
            raise ValueError(f"method {method!r} needs a triangle class")
        result = pc_nine_thm2(singularity)
    else:
        raise ValueError(f"unknown method {method!r}")
    if cache_dir is not None:
        save_cache(result, cache_dir)
    return result


# ---------------------------------------------------------------------------
# membership and witnesses


@dataclass(frozen=True)
class Witness:
    """A replayable derivation of one member.

    ``start`` is the graph the derivation begins from (an induced-subgraph
    class, or the class's basic graph); ``steps`` lists (operation, result)
    pairs.  Exceptional members carry no derivation chain and are flagged.
    """

    start: Combination
    steps: tuple[tuple[str, Combination], ...] = ()
    exception: bool = False


@dataclass(frozen=True)
class Verdict:
    singularity: SingularityClass
    combination: Combination
    member: bool
    witness: Optional[Witness] = None


def _by_label(combos: Iterable[Combination]) -> list[Combination]:
    return sorted(combos, key=str)


def find_witness(
    singularity: SingularityClass, member: Combination
) -> Witness:
    """First derivation of ``member`` in deterministic scan order.

    Candidate start graphs are scanned in lexicographic label order; for
    triangle classes the elementary step is tried before the tie step.
    Raises InvariantViolation if no derivation exists (the caller should have
    established membership first).
    """
    method = canonical_method(singularity)
    data = class_data(singularity)
    if method == METHOD_RDP:
        subs = dynkin_subgraph_classes(realization(singularity.combination))
        if member in subs:
            return Witness(start=member)
    elif method == METHOD_ELLIPTIC:
        basic = data.basic_graph
        for mid in _by_label(elementary_results(basic)):
            if member in elementary_results(mid):
                return Witness(
                    start=basic, steps=((ELEMENTARY, mid), (ELEMENTARY, member))
                )
    elif method == METHOD_CUSP:
        for sub in _by_label(_star_subgraph_classes(data.gabrielov_type)):
            if member in elementary_results(sub):
                return Witness(start=sub, steps=((ELEMENTARY, member),))
    elif method == METHOD_THM1:
        for sub in _by_label(_star_subgraph_classes(data.gabrielov_type)):
            if member in elementary_results(sub):
                return Witness(start=sub, steps=((ELEMENTARY, member),))
            if member in tie_results(sub):
                return Witness(start=sub, steps=((TIE, member),))
        if member in data.exceptions:
            return Witness(start=member, exception=True)
    raise InvariantViolation(
        f"no witness found for {member} in {class_label(singularity)}"
    )


def replay_witness(
    singularity: SingularityClass, witness: Witness
) -> Combination:
    """Re-derive the member a witness claims, checking every step.

    Returns the derived combination; raises InvariantViolation if the start
    graph is not admissible for the class or any step is not reproducible.
    """
    method = canonical_method(singularity)
    data = class_data(singularity)
    if witness.exception:
        if witness.start not in data.exceptions:
            raise InvariantViolation(
                f"{witness.start} is not a tabulated exception of "
                f"{class_label(singularity)}"
            )
        return witness.start
    if method == METHOD_RDP:
        subs = dynkin_subgraph_classes(realization(singularity.combination))
        if witness.steps or witness.start not in subs:
            raise InvariantViolation("invalid subgraph witness")
        return witness.start
    if method == METHOD_ELLIPTIC:
        if witness.start != data.basic_graph:
            raise InvariantViolation("elliptic witness must start at the basic graph")
    elif method in (METHOD_CUSP, METHOD_THM1):
        if witness.start not in _star_subgraph_classes(data.gabrielov_type):
            raise InvariantViolation(
                f"{witness.start} is not a Dynkin subgraph class of the "
                f"{class_label(singularity)} star graph"
            )
    current = witness.start
    for op, result in witness.steps:
        if result not in step_results(current, op):
            raise InvariantViolation(
                f"step {current} --{op}--> {result} is not reproducible"
            )
        current = result
    return current


def format_witness(witness: Witness) -> str:
    if witness.exception:
        return f"{witness.start}: tabulated exception"
    if not witness.steps:
        return f"{witness.start} (induced subgraph)"
    parts = [str(witness.start)]
    for op, result in witness.steps:
        parts.append(f"--{op}--> {result}")
    return " ".join(parts)


def check_membership(
    singularity: SingularityClass,
    combination: Combination,
    want_witness: bool = False,
    cache_dir: Optional[Path] = None,
) -> Verdict:
    """Decide membership by the class's canonical method.

    When a witness is requested for a member, its replay is verified before
    returning, so a returned witness is always reproducible.
    """
    result = compute_pc(singularity, cache_dir=cache_dir)
    member = combination in result.members
    witness = None
    if member and want_witness:
        witness = find_witness(singularity, combination)
        if replay_witness(singularity, witness) != combination:
            raise InvariantViolation(
                f"witness replay diverged for {combination}"
            )
    return Verdict(singularity, combination, member, witness)


# ---------------------------------------------------------------------------
# twin-method consistency


@dataclass(frozen=True)
class ConsistencyReport:
    singularity: Triangle
    only_thm1: frozenset[Combination]
    only_thm2: frozenset[Combination]

    @property
    def consistent(self) -> bool:
        return not self.only_thm1 and not self.only_thm2


def verify_consistency(singularity: Triangle) -> ConsistencyReport:
    """Compare the one-step and two-step answers for one of the nine classes."""
    if singularity.name not in NINE_NAMES:
        raise ValueError(
            f"{singularity.name} has a single method only; consistency "
            f"checking covers {', '.join(NINE_NAMES)}"
        )
    via1 = pc_triangle_thm1(singularity, include_exceptions=True).members
    via2 = pc_nine_thm2(singularity).members
    return ConsistencyReport(
        singularity, frozenset(via1 - via2), frozenset(via2 - via1)
    )


# ---------------------------------------------------------------------------
# diagnostics


def subgraph_closure_gaps(
    members: Iterable[Combination],
) -> dict[Combination, frozenset[Combination]]:
    """Members whose induced-subgraph classes are not all members themselves.

    A PC set is expected to be closed under taking induced subgraphs; this is
    a soft sanity diagnostic, so gaps are logged as warnings rather than
    raised.
    """
    universe = frozenset(members)
    gaps: dict[Combination, frozenset[Combination]] = {}
    for member in universe:
        missing = dynkin_subgraph_classes(realization(member)) - universe
        if missing:
            gaps[member] = frozenset(missing)
    if gaps:
        log.warning(
            "subgraph-closure gaps at %s",
            ", ".join(sorted(str(m) for m in gaps)),
        )
    return gaps


# ---------------------------------------------------------------------------
# persistence


def _slug(text: str) -> str:
    return (
        text.replace("(", "").replace(")", "").replace(",", "-")
    )


def cache_path(
    singularity: SingularityClass,
    method: str,
    include_exceptions: bool,
    cache_dir: Path,
) -> Path:
    """Deterministic cache file location for one (class, method, options) key."""
    name = f"{_slug(class_label(singularity))}.{method}"
    if method == METHOD_THM1 and not include_exceptions:
        name += ".noexc"
    return Path(cache_dir) / f"{name}.json"


def save_cache(result: PcResult, cache_dir: Path) -> Path:
    """Write one result atomically (temp file then rename)."""
    path = cache_path(
        result.singularity,
        result.method,
        bool(result.exceptions_included),
        cache_dir,
    )
    path.parent.mkdir(parents=True, exist_ok=True)
    document = {
        "schema_version": SCHEMA_VERSION,
        "class": class_label(result.singularity),
        "method": result.method,
        "options": result.options,
        "members": result.member_labels(),
    }
    fd, tmp = tempfile.mkstemp(
        dir=path.parent, prefix=path.name, suffix=".tmp"
    )
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            json.dump(document, handle, indent=1, sort_keys=True)
            handle.write("\n")
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise
    return path


def load_cache(
    singularity: SingularityClass,
    method: str,
    include_exceptions: bool,
    cache_dir: Path,
) -> Optional[PcResult]:
    """Load a cached result; miss on absent file or schema-version mismatch.

    A file that exists but cannot be decoded raises CacheCorruptionError
    naming the file.
    """
    path = cache_path(singularity, method, include_exceptions, cache_dir)
    try:
        text = path.read_text(encoding="utf-8")
    except FileNotFoundError:
        return None
    try:
        document = json.loads(text)
        if not isinstance(document, dict):
            raise ValueError("top level is not an object")
        version = document["schema_version"]
        members = frozenset(
            parse_label(label) for label in document["members"]
        )
    except (ValueError, KeyError, TypeError, LabelError) as exc:
        raise CacheCorruptionError(f"unreadable cache file {path}: {exc}")
    if version != SCHEMA_VERSION:
        return None
    if (
        document.get("class") != class_label(singularity)
        or document.get("method") != method
    ):
        return None
    exceptions_included = None
    if method == METHOD_THM1:
        exceptions_included = bool(
            document.get("options", {}).get("exceptions", True)
        )
        if exceptions_included != include_exceptions:
            return None
    return PcResult(singularity, method, members, exceptions_included)
