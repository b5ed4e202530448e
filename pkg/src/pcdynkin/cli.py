"""Command line front end.

Commands: ``pc`` (members of a class's PC set), ``check`` (membership of one
combination, optionally with a replayable witness), ``transform`` (one
elementary or tie step from a combination), ``subgraphs`` (Dynkin subgraph
classes of a star graph), ``extend`` (extended graph of one component kind
with maximal-root coefficients) and ``consistency`` (twin-method agreement
for the nine E/Z/Q triangle classes).

Exit codes: 0 success/member/consistent, 1 non-member or inconsistency,
2 usage or parse error, 3 internal invariant violation.
"""

from __future__ import annotations

import functools
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import click

from . import __version__
from .catalog import (
    NINE_NAMES,
    SelectorError,
    SingularityClass,
    Triangle,
    class_label,
    gabrielov_graph,
    parse_class,
)
from .engine import (
    CacheCorruptionError,
    METHOD_THM1,
    METHOD_THM2,
    SCHEMA_VERSION,
    check_membership,
    compute_pc,
    format_witness,
    verify_consistency,
)
from .graphs import (
    Combination,
    LabelError,
    dynkin_subgraph_classes,
    parse_label,
)
from .transforms import (
    ELEMENTARY,
    TIE,
    InvariantViolation,
    extend_component,
    step_results,
)


@dataclass(frozen=True)
class CliConfig:
    """Resolved global options shared by all subcommands."""

    as_json: bool = False
    cache_dir: Optional[Path] = None


def _internal_errors(fn):
    """Map invariant violations and cache corruption to exit code 3."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except (InvariantViolation, CacheCorruptionError) as exc:
            click.echo(f"internal error: {exc}", err=True)
            sys.exit(3)

    return wrapper


def _parse_class(selector: str) -> SingularityClass:
    try:
        return parse_class(selector)
    except SelectorError as exc:
        raise click.UsageError(str(exc))


def _parse_label(text: str) -> Combination:
    try:
        return parse_label(text)
    except LabelError as exc:
        raise click.UsageError(str(exc))


def _emit_json(payload) -> None:
    click.echo(json.dumps(payload, indent=2, sort_keys=True))


@click.group()
@click.version_option(__version__)
@click.option("--json", "as_json", is_flag=True, help="Emit JSON instead of text.")
@click.option(
    "--cache-dir",
    type=click.Path(file_okay=False, path_type=Path),
    envvar="PCDYNKIN_CACHE_DIR",
    default=None,
    help="Directory for the JSON result cache (flag beats PCDYNKIN_CACHE_DIR).",
)
@click.pass_context
def main(ctx: click.Context, as_json: bool, cache_dir: Optional[Path]) -> None:
    """Dynkin graph transformations and PC sets of singularity classes."""
    ctx.obj = CliConfig(as_json=as_json, cache_dir=cache_dir)


@main.command("pc")
@click.argument("selector")
@click.option(
    "--via",
    type=click.Choice([METHOD_THM1, METHOD_THM2]),
    default=None,
    help="Method override for the nine E/Z/Q triangle classes.",
)
@click.option(
    "--no-exceptions",
    is_flag=True,
    help="Triangle classes: omit the tabulated exceptional members.",
)
@click.pass_obj
@_internal_errors
def cmd_pc(config: CliConfig, selector: str, via: Optional[str], no_exceptions: bool):
    """List all members of the PC set of the class SELECTOR."""
    singularity = _parse_class(selector)
    if (via or no_exceptions) and not isinstance(singularity, Triangle):
        raise click.UsageError(
            "--via and --no-exceptions apply to triangle classes only"
        )
    try:
        result = compute_pc(
            singularity,
            method=via,
            include_exceptions=not no_exceptions,
            cache_dir=config.cache_dir,
        )
    except ValueError as exc:  # e.g. thm2 requested outside the nine
        raise click.UsageError(str(exc))
    if config.as_json:
        _emit_json(
            {
                "schema_version": SCHEMA_VERSION,
                "class": class_label(singularity),
                "method": result.method,
                "options": result.options,
                "members": result.member_labels(),
            }
        )
    else:
        for label in result.member_labels():
            click.echo(label)


@main.command("check")
@click.argument("selector")
@click.argument("label")
@click.option("--witness", "want_witness", is_flag=True,
              help="Print a replayable derivation for members.")
@click.pass_obj
@_internal_errors
def cmd_check(config: CliConfig, selector: str, label: str, want_witness: bool):
    """Decide whether LABEL belongs to the PC set of SELECTOR."""
    singularity = _parse_class(selector)
    combination = _parse_label(label)
    verdict = check_membership(
        singularity, combination,
        want_witness=want_witness, cache_dir=config.cache_dir,
    )
    if config.as_json:
        payload = {
            "class": class_label(singularity),
            "combination": str(combination),
            "member": verdict.member,
        }
        if verdict.witness is not None:
            payload["witness"] = {
                "start": str(verdict.witness.start),
                "steps": [
                    {"op": op, "result": str(result)}
                    for op, result in verdict.witness.steps
                ],
                "exception": verdict.witness.exception,
            }
        _emit_json(payload)
    else:
        click.echo("MEMBER" if verdict.member else "NON-MEMBER")
        if verdict.witness is not None:
            click.echo(f"witness: {format_witness(verdict.witness)}")
    sys.exit(0 if verdict.member else 1)


@main.command("transform")
@click.argument("op", type=click.Choice([ELEMENTARY, TIE]))
@click.argument("label")
@click.pass_obj
@_internal_errors
def cmd_transform(config: CliConfig, op: str, label: str):
    """Apply one transformation step to the combination LABEL."""
    combination = _parse_label(label)
    results = sorted(str(c) for c in step_results(combination, op))
    if config.as_json:
        _emit_json({"op": op, "start": str(combination), "results": results})
    else:
        for line in results:
            click.echo(line)


@main.command("subgraphs")
@click.argument("p", type=int)
@click.argument("q", type=int)
@click.argument("r", type=int)
@click.pass_obj
@_internal_errors
def cmd_subgraphs(config: CliConfig, p: int, q: int, r: int):
    """Dynkin subgraph classes of the star graph of type (P, Q, R)."""
    try:
        graph = gabrielov_graph(p, q, r)
    except SelectorError as exc:
        raise click.UsageError(str(exc))
    classes = sorted(str(c) for c in dynkin_subgraph_classes(graph))
    if config.as_json:
        _emit_json({"type": [p, q, r], "classes": classes})
    else:
        for line in classes:
            click.echo(line)


@main.command("extend")
@click.argument("kind")
@click.pass_obj
@_internal_errors
def cmd_extend(config: CliConfig, kind: str):
    """Show the extended graph of one component kind with coefficients."""
    combination = _parse_label(kind)
    if len(combination.kinds) != 1:
        raise click.UsageError(
            f"extend takes a single component kind, got {kind!r}"
        )
    ext = extend_component(combination.kinds[0])
    edges = sorted(ext.graph.edges)
    if config.as_json:
        _emit_json(
            {
                "kind": str(combination),
                "added_vertex": ext.added_vertex,
                "vertices": [
                    {
                        "id": v,
                        "norm": ext.graph.norms[v].value,
                        "coeff": ext.coeffs[v],
                        "added": v == ext.added_vertex,
                    }
                    for v in range(ext.graph.n)
                ],
                "edges": [[u, v] for u, v in edges],
            }
        )
    else:
        click.echo(f"extended {combination}: {ext.graph.n} vertices")
        for v in range(ext.graph.n):
            added = "  [added]" if v == ext.added_vertex else ""
            click.echo(
                f"vertex {v}: norm={ext.graph.norms[v].value} "
                f"coeff={ext.coeffs[v]}{added}"
            )
        for u, v in edges:
            click.echo(f"edge {u}-{v}")


@main.command("consistency")
@click.argument("target")
@click.pass_obj
@_internal_errors
def cmd_consistency(config: CliConfig, target: str):
    """Compare the two methods for one of the nine classes, or for all9."""
    if target == "all9":
        names = list(NINE_NAMES)
    elif target in NINE_NAMES:
        names = [target]
    else:
        raise click.UsageError(
            f"consistency target must be one of {', '.join(NINE_NAMES)} or all9"
        )
    reports = [verify_consistency(Triangle(name)) for name in names]
    if config.as_json:
        _emit_json(
            [
                {
                    "class": report.singularity.name,
                    "consistent": report.consistent,
                    "only_thm1": sorted(map(str, report.only_thm1)),
                    "only_thm2": sorted(map(str, report.only_thm2)),
                }
                for report in reports
            ]
        )
    else:
        for report in reports:
            if report.consistent:
                click.echo(f"{report.singularity.name}: consistent")
            else:
                click.echo(
                    f"{report.singularity.name}: DISCREPANCY "
                    f"only-thm1={sorted(map(str, report.only_thm1))} "
                    f"only-thm2={sorted(map(str, report.only_thm2))}"
                )
    sys.exit(0 if all(r.consistent for r in reports) else 1)
