"""Command-line interface for dihedrants"""

import json
import logging
import sys
from pathlib import Path
from typing import Optional, Tuple

import click
from rich.console import Console

from .core.autsearch import automorphism_group
from .core.cayley import ConnectionSet, GroupKind, GroupSpec, cayley_graph
from .core.census import CensusRunner
from .core.errors import (
    ConfigurationError,
    DihedrantsError,
    FamilyParameterError,
    GraphFormatError,
    InvalidConnectionSetError,
    TokenError,
)
from .core.families import FAMILY_NAMES, build_family, recognize
from .core.graph import INFINITE, Extent, Graph, diameter, girth, valency
from .core.permgroup import Permutation
from .core.symmetry import quotient, subgroup_from_generators, symmetry_profile
from .core.types import CensusOptions, OutputFormat, RunConfig, RunVerdict, VerifyTarget
from .io.graphio import format_graph, read_graph, write_graph
from .ui.formatters import TableFormatter
from .ui.styles import GREEN
from .version import __version__

# Configure logging
logging.basicConfig(level=logging.INFO, format="%(levelname)s: %(message)s")
logger = logging.getLogger(__name__)

EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_SKIPPED = 3
EXIT_INTERRUPTED = 130

FORMAT_CHOICE = click.Choice([f.value for f in OutputFormat])


def handle_error(error: BaseException, console: Console) -> int:
    """Report an error and choose the exit code.

    Args:
        error: Exception that occurred
        console: Rich console for output

    Returns:
        Exit code to use
    """
    if isinstance(error, KeyboardInterrupt):
        console.print("\n[yellow]Interrupted.[/]")
        return EXIT_INTERRUPTED
    elif isinstance(error, GraphFormatError):
        console.print(f"[red]Format error:[/] {error}")
        return EXIT_USAGE
    elif isinstance(
        error, (ConfigurationError, FamilyParameterError, TokenError, InvalidConnectionSetError)
    ):
        console.print(f"[red]Invalid input:[/] {error}")
        return EXIT_USAGE
    elif isinstance(error, DihedrantsError):
        console.print(f"[red]Error:[/] {error}")
        return EXIT_FAIL
    else:
        console.print(f"[red]Unexpected error:[/] {error}")
        logger.exception("Unexpected error")
        return EXIT_FAIL


def _stderr() -> Console:
    return Console(stderr=True)


def _emit_graph(g: Graph, out: Optional[Path], g6: bool, status: Console) -> None:
    if out is None:
        click.echo(format_graph(g, g6), nl=False)
        return
    write_graph(out, g, g6)
    status.print(f"[{GREEN}]Wrote {g.n} vertices, {g.num_edges} edges to {out}[/]")


def _build_graph(family: str, params: Tuple[str, ...]) -> Graph:
    if family == "cayley":
        if len(params) != 3:
            raise ConfigurationError("cayley", "expected GROUP N TOKENS, e.g. D 6 'x^1,y'")
        kind_text, n_text, tokens = params
        try:
            kind = GroupKind(kind_text.upper())
        except ValueError:
            raise ConfigurationError("group", f"expected D or Z, got {kind_text!r}") from None
        group = GroupSpec(kind, _int_param(family, n_text))
        return cayley_graph(ConnectionSet.parse(group, tokens))
    values = tuple(_int_param(family, p) for p in params)
    return build_family(family, values)


def _json_extent(value: Extent) -> Optional[int]:
    return None if value == INFINITE else int(value)


def _int_param(family: str, text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise ConfigurationError(family, f"expected an integer parameter, got {text!r}") from None


@click.group()
@click.option("--debug", is_flag=True, help="Enable debug logging")
@click.version_option(__version__, prog_name="dihedrants")
def main(debug: bool) -> None:
    """Symmetry of dihedrants: build graphs, test transitivity, run the census."""
    if debug:
        logging.getLogger().setLevel(logging.DEBUG)


@main.command("build")
@click.argument("family", type=click.Choice(list(FAMILY_NAMES) + ["cayley"]))
@click.argument("params", nargs=-1)
@click.option(
    "--out",
    "-o",
    type=click.Path(dir_okay=False, path_type=Path),
    default=None,
    help="Output file (default: standard output)",
)
@click.option("--g6", is_flag=True, help="Write graph6 instead of edgelist v1")
def cmd_build(family: str, params: Tuple[str, ...], out: Optional[Path], g6: bool) -> None:
    """Build a graph from a named FAMILY and its PARAMS.

    For Cayley graphs pass the group and connection set:
    `build cayley D 6 "x^1,x^2,x^1*y,x^2*y"` or `build cayley Z 13 "1,12"`.
    """
    status = _stderr()
    try:
        g = _build_graph(family, params)
        _emit_graph(g, out, g6, status)
    except (Exception, KeyboardInterrupt) as e:
        sys.exit(handle_error(e, status))


@main.command("check")
@click.argument("file", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--g6", is_flag=True, help="Read graph6 instead of edgelist v1")
@click.option("--format", "fmt", type=FORMAT_CHOICE, default="table", show_default=True)
def cmd_check(file: Path, g6: bool, fmt: str) -> None:
    """Symmetry profile of the graph in FILE under its full automorphism group."""
    console = Console()
    try:
        g = read_graph(file, g6)
        aut = automorphism_group(g)
        profile = symmetry_profile(g, aut.chain)
        family = recognize(g)
        if OutputFormat(fmt) is OutputFormat.RECORDS:
            record = {
                "n": g.n,
                "edges": g.num_edges,
                "valency": valency(g),
                "girth": _json_extent(girth(g)),
                "diameter": _json_extent(diameter(g)),
                "family": str(family) if family.recognized else None,
                "profile": profile.to_dict(),
            }
            click.echo(json.dumps(record, sort_keys=True))
            return
        formatter = TableFormatter(console)
        console.print(formatter.format_graph_table(g, family))
        console.print(formatter.format_profile_table(profile))
    except (Exception, KeyboardInterrupt) as e:
        sys.exit(handle_error(e, _stderr()))


@main.command("aut")
@click.argument("file", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--g6", is_flag=True, help="Read graph6 instead of edgelist v1")
@click.option("--format", "fmt", type=FORMAT_CHOICE, default="table", show_default=True)
def cmd_aut(file: Path, g6: bool, fmt: str) -> None:
    """Generators and order of the automorphism group of the graph in FILE."""
    console = Console()
    try:
        g = read_graph(file, g6)
        aut = automorphism_group(g)
        if OutputFormat(fmt) is OutputFormat.RECORDS:
            record = {
                "order": aut.chain.order,
                "base": list(aut.chain.base),
                "generators": [str(p) for p in aut.generators],
            }
            click.echo(json.dumps(record, sort_keys=True))
            return
        console.print(TableFormatter(console).format_aut_table(aut))
    except (Exception, KeyboardInterrupt) as e:
        sys.exit(handle_error(e, _stderr()))


@main.command("quotient")
@click.argument("file", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option(
    "--generator",
    "-g",
    "generators",
    multiple=True,
    required=True,
    help="Generator of N in cycle notation, e.g. '(0 7)(1 6)'; repeatable",
)
@click.option(
    "--out",
    "-o",
    type=click.Path(dir_okay=False, path_type=Path),
    default=None,
    help="Output file for the quotient (default: standard output)",
)
@click.option("--g6", is_flag=True, help="Read and write graph6 instead of edgelist v1")
def cmd_quotient(file: Path, generators: Tuple[str, ...], out: Optional[Path], g6: bool) -> None:
    """Quotient of the graph in FILE by the orbits of N = <generators>.

    N must be normal in the full automorphism group.
    """
    status = _stderr()
    try:
        g = read_graph(file, g6)
        perms = [Permutation.parse(text, g.n) for text in generators]
        normal = subgroup_from_generators(g, perms)
        aut = automorphism_group(g)
        result = quotient(g, aut.chain, normal)
        status.print(
            TableFormatter(status).format_quotient_table(result, recognize(result.quotient))
        )
        _emit_graph(result.quotient, out, g6, status)
    except (Exception, KeyboardInterrupt) as e:
        sys.exit(handle_error(e, status))


@main.command("verify")
@click.argument("target", type=click.Choice([t.value for t in VerifyTarget]))
@click.option("--min-n", type=int, default=None, help="Smallest n (default per target)")
@click.option("--max-n", type=int, default=None, help="Largest n (default per target)")
@click.option("--jobs", "-j", type=int, default=1, show_default=True, help="Worker processes")
@click.option("--format", "fmt", type=FORMAT_CHOICE, default="table", show_default=True)
@click.option(
    "--budget",
    type=int,
    default=10_000_000,
    show_default=True,
    help="Search nodes per graph; 0 for unlimited",
)
@click.option("--allow-skips", is_flag=True, help="Do not fail on records skipped by the budget")
@click.option(
    "--dedup-isomorphic",
    is_flag=True,
    help="Also count isomorphism classes by canonical form",
)
@click.option(
    "--out",
    "-o",
    type=click.Path(dir_okay=False, path_type=Path),
    default=None,
    help="Write the newline-delimited report to this file",
)
def cmd_verify(
    target: str,
    min_n: Optional[int],
    max_n: Optional[int],
    jobs: int,
    fmt: str,
    budget: int,
    allow_skips: bool,
    dedup_isomorphic: bool,
    out: Optional[Path],
) -> None:
    """Run a census harness: theorem11, circulants or lemma41.

    Exits 0 on PASS, 1 on FAIL and 3 when records were skipped without
    --allow-skips.
    """
    status = _stderr()
    try:
        options = CensusOptions(
            budget=budget or None,
            jobs=jobs,
            allow_skips=allow_skips,
            dedup_isomorphic=dedup_isomorphic,
        )
        config = RunConfig(
            target=VerifyTarget(target),
            n_min=min_n,
            n_max=max_n,
            output=out,
            format=OutputFormat(fmt),
            options=options,
        )
        assert config.n_min is not None and config.n_max is not None
        runner = CensusRunner(config.options, status)
        report = runner.run(config.target, config.n_min, config.n_max)

        if config.output is not None and not runner.save_report(config.output, report):
            sys.exit(EXIT_FAIL)
        if config.format is OutputFormat.RECORDS and config.output is None:
            for line in runner.report_lines(report):
                click.echo(line)
        else:
            console = Console() if config.format is OutputFormat.TABLE else status
            TableFormatter(console).print_census_summary(report)
    except (Exception, KeyboardInterrupt) as e:
        sys.exit(handle_error(e, status))

    if report.skipped and not config.options.allow_skips:
        sys.exit(EXIT_SKIPPED)
    if report.verdict is RunVerdict.FAIL:
        sys.exit(EXIT_FAIL)


if __name__ == "__main__":
    main()
