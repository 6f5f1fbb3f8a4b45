"""Rich tables for symmetry profiles, automorphism data and census reports."""

from typing import Optional, Sequence

from rich.console import Console
from rich.table import Table
from rich.text import Text

from ..core.autsearch import AutomorphismGroup
from ..core.families import FamilyLabel
from ..core.graph import Graph, diameter, girth, valency
from ..core.symmetry import QuotientResult, SymmetryProfile
from ..core.types import CensusReport, RunVerdict
from ..utils.formatters import (
    format_bytes,
    format_duration,
    format_extent,
    format_order,
    yes_no,
)
from .styles import BLUE, CLASS_STYLES, CYAN, FG_0, FG_1, GREEN, RED, YELLOW


def _flag(value: bool) -> Text:
    return Text(yes_no(value), style=GREEN if value else RED)


class TableFormatter:
    """Format dihedrants results into rich tables."""

    def __init__(self, console: Optional[Console] = None):
        """Initialize the formatter.

        Args:
            console: Rich console to use for output
        """
        self.console = console or Console()

    def _table(self, title: str, border: str) -> Table:
        table = Table(
            title=f"[{FG_1}]{title}[/]",
            border_style=border,
            header_style=f"bold {FG_1}",
            padding=(0, 1),
            min_width=len(title) + 4,
        )
        return table

    def format_graph_table(self, g: Graph, family: Optional[FamilyLabel] = None) -> Table:
        """Basic invariants of ``g``."""
        table = self._table("Graph", BLUE)
        table.add_column("Property", style=FG_0)
        table.add_column("Value", style=CYAN, justify="right")
        r = valency(g)
        table.add_row("vertices", str(g.n))
        table.add_row("edges", str(g.num_edges))
        table.add_row("valency", str(r) if r is not None else "irregular")
        table.add_row("girth", format_extent(girth(g)))
        table.add_row("diameter", format_extent(diameter(g)))
        if family is not None:
            table.add_row("family", str(family) if family.recognized else "unrecognized")
        return table

    def format_profile_table(self, profile: SymmetryProfile) -> Table:
        """Transitivity flags under ``X``.

        Args:
            profile: Profile to display

        Returns:
            Rich table with one row per flag
        """
        table = self._table("Symmetry Profile", CYAN)
        table.add_column("Property", style=FG_0)
        table.add_column("Holds", justify="center")
        table.add_row("vertex-transitive", _flag(profile.vertex_transitive))
        table.add_row("edge-transitive", _flag(profile.edge_transitive))
        table.add_row("arc-transitive", _flag(profile.arc_transitive))
        table.add_row("2-arc-transitive", _flag(profile.two_arc_transitive))
        for s, flag in enumerate(profile.s_distance_transitive, start=1):
            table.add_row(f"{s}-distance-transitive", _flag(flag))
        table.add_row("distance-transitive", _flag(profile.distance_transitive))
        table.add_row("2-geodesic-transitive", _flag(profile.two_geodesic_transitive))
        table.add_row(
            "locally 2-distance-transitive", _flag(profile.locally_two_distance_transitive)
        )
        table.add_row("|X|", Text(format_order(profile.group_order), style=CYAN))
        table.add_row("|X_u|", Text(format_order(profile.stabilizer_order), style=CYAN))
        sizes = ", ".join(str(s) for s in profile.layer_sizes)
        table.add_row("distance layers", Text(sizes, style=CYAN))
        return table

    def format_aut_table(self, group: AutomorphismGroup) -> Table:
        """Order, base and generators of Aut(g)."""
        table = self._table(f"Automorphism Group (order {format_order(group.chain.order)})", BLUE)
        table.add_column("#", justify="right", style=CYAN, no_wrap=True)
        table.add_column("Generator", style=FG_0)
        for index, p in enumerate(group.generators, start=1):
            table.add_row(str(index), str(p))
        if not group.generators:
            table.add_row("-", "identity")
        table.caption = (
            f"base {list(group.chain.base)}, orbits of sizes "
            f"{sorted(len(o) for o in group.chain.orbits())}, {group.nodes} search nodes"
        )
        return table

    def format_quotient_table(self, result: QuotientResult, family: FamilyLabel) -> Table:
        table = self._table("Quotient", CYAN)
        table.add_column("Property", style=FG_0)
        table.add_column("Value", style=CYAN, justify="right")
        table.add_row("|N|", format_order(result.kernel_order))
        table.add_row("orbits", str(len(result.orbits)))
        table.add_row("quotient edges", str(result.quotient.num_edges))
        table.add_row("cover", _flag(result.is_cover))
        table.add_row("family", str(family) if family.recognized else "unrecognized")
        return table

    def format_census_table(self, report: CensusReport) -> Table:
        """Record counts per ``n`` and theorem class."""
        classes = sorted(report.counts_per_class)
        table = self._table(f"Census {report.target.value}", BLUE)
        table.add_column("n", justify="right", style=CYAN, no_wrap=True)
        for name in classes:
            table.add_column(name.replace("_", " "), justify="right", style=CLASS_STYLES[name])
        iso = report.isomorphism_counts
        if iso is not None:
            table.add_column("iso classes", justify="right", style=FG_0)
        for n, counts in report.counts_per_n.items():
            row = [str(n)] + [str(counts.get(name, 0)) for name in classes]
            if iso is not None:
                row.append(str(iso.get(n, 0)))
            table.add_row(*row)
        return table

    def format_problems(self, report: CensusReport) -> Optional[Table]:
        """Counterexamples, violations and skipped records, if any."""
        lines: Sequence[str] = (
            [
                f"counterexample {r.group}{r.n} {{{r.connection_set}}}"
                for r in report.counterexamples
            ]
            + list(report.violations)
            + (list(report.lemma.violations) if report.lemma else [])
            + [f"skipped {r.group}{r.n} {{{r.connection_set}}}" for r in report.skipped]
        )
        if not lines:
            return None
        table = Table(
            show_header=False,
            box=None,
            padding=(0, 1),
            title=f"[bold {YELLOW}]Problems[/]",
            title_justify="left",
        )
        for line in lines[:20]:
            table.add_row(f"[{YELLOW}]•[/]", line)
        if len(lines) > 20:
            table.add_row(" ", f"[dim]...and {len(lines) - 20} more[/dim]")
        return table

    def print_census_summary(self, report: CensusReport) -> None:
        """Print counts, problems, lemma branches and the verdict."""
        self.console.print()
        self.console.print(self.format_census_table(report))
        problems = self.format_problems(report)
        if problems is not None:
            self.console.print(problems)
        if report.lemma is not None and report.lemma.instances:
            branches = ", ".join(f"{k}: {v}" for k, v in sorted(report.lemma.branch_counts.items()))
            self.console.print(f"Cover instances: [{CYAN}]{report.lemma.instances}[/] ({branches})")
        colour = GREEN if report.verdict is RunVerdict.PASS else RED
        self.console.print(
            f"\nVerdict: [bold {colour}]{report.verdict.value}[/] "
            f"({len(report.records):,} records in {format_duration(report.elapsed)}, "
            f"peak memory {format_bytes(report.peak_memory)})"
        )
