"""Exhaustive classification of dihedrants and circulants up to a bound."""

import json
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import replace
from pathlib import Path
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from rich.console import Console
from rich.progress import BarColumn, Progress, TextColumn, TimeElapsedColumn

from ..metrics.utils import ResourceMonitor, ThroughputMeter, format_rate
from .autsearch import AutomorphismGroup, automorphism_group, canonical_labeling
from .cayley import (
    ConnectionSet,
    DihedralElement,
    EnumerationMode,
    GroupKind,
    GroupSpec,
    cayley_graph,
    enumerate_connection_sets,
    right_translation,
)
from .errors import DisconnectedGraphError, NoArcsError, SearchBudgetExceeded
from .families import FamilyLabel, FamilyTag, recognize
from .graph import (
    INFINITE,
    Graph,
    diameter,
    distance_partition,
    edge_count_between,
    girth,
    is_bipartite,
    valency,
)
from .permgroup import (
    BlockSystem,
    StabilizerChain,
    is_quasiprimitive,
    kernel_of_block_action,
    minimal_block_system,
    schreier_sims,
)
from .symmetry import (
    induced_quotient_action,
    is_s_arc_transitive,
    is_s_distance_transitive,
    quotient,
    symmetry_profile,
)
from .types import (
    CensusOptions,
    CensusReport,
    ClassificationRecord,
    CoverBranch,
    CoverInstance,
    LemmaReport,
    TheoremClass,
    VerifyTarget,
)

logger = logging.getLogger(__name__)

# (group kind value, n, connection set string, options)
Task = Tuple[str, int, str, CensusOptions]


def _theorem_class_dihedral(two_distance: bool, two_arc: bool, family: FamilyLabel) -> TheoremClass:
    if not two_distance:
        return TheoremClass.NOT_TWO_DISTANCE_TRANSITIVE
    if two_arc:
        return TheoremClass.TWO_ARC_TRANSITIVE
    if family.tag is FamilyTag.COMPLETE_MULTIPARTITE:
        return TheoremClass.COMPLETE_MULTIPARTITE
    return TheoremClass.COUNTEREXAMPLE


def _allowed_two_arc_circulant(n: int, family: FamilyLabel) -> bool:
    """``K_n``, ``C_n``, ``K_{n/2,n/2}`` or the matching-minus graph with ``n/2`` odd and >= 5."""
    tag, params = family.tag, family.params
    if tag in (FamilyTag.COMPLETE, FamilyTag.CYCLE):
        return params == (n,)
    if tag is FamilyTag.COMPLETE_BIPARTITE:
        return n % 2 == 0 and params == (n // 2, n // 2)
    if tag is FamilyTag.COMPLETE_BIPARTITE_MINUS_MATCHING:
        k = params[0]
        return 2 * k == n and k % 2 == 1 and k >= 5
    return False


def _theorem_class_cyclic(
    n: int, two_distance: bool, two_arc: bool, family: FamilyLabel
) -> TheoremClass:
    if not two_distance:
        return TheoremClass.NOT_TWO_DISTANCE_TRANSITIVE
    if two_arc:
        if _allowed_two_arc_circulant(n, family):
            return TheoremClass.TWO_ARC_TRANSITIVE
        return TheoremClass.COUNTEREXAMPLE
    if family.tag is FamilyTag.COMPLETE_MULTIPARTITE:
        return TheoremClass.COMPLETE_MULTIPARTITE
    if family.tag is FamilyTag.PALEY and family.params == (n,):
        return TheoremClass.PALEY
    return TheoremClass.COUNTEREXAMPLE


def _square_index(kernel: StabilizerChain) -> int:
    """``|N : M|`` with ``M = <g^2 : g in N>``."""
    squares = [g * g for g in kernel.elements()]
    return kernel.order // schreier_sims(squares, degree=kernel.degree).order


def _cover_instance(g: Graph, chain: StabilizerChain, kernel: StabilizerChain) -> CoverInstance:
    """Quotient by ``N``; the induced-action flags are filled in for covers only."""
    result = quotient(g, chain, kernel)
    instance = CoverInstance(
        block_count=len(result.orbits),
        block_size=g.n // len(result.orbits),
        kernel_order=kernel.order,
        branch=CoverBranch.NOT_A_COVER,
        is_cover=result.is_cover,
    )
    if not result.is_cover:
        return instance
    induced = induced_quotient_action(chain, result)
    q = result.quotient
    try:
        two_arc = is_s_arc_transitive(q, induced, 2)
    except NoArcsError:
        two_arc = True
    orbit_blocks = BlockSystem.from_cells(result.orbits, g.n)
    return replace(
        instance,
        kernel_matches=kernel_of_block_action(chain, orbit_blocks).order == kernel.order,
        quotient_two_arc=two_arc,
        quotient_two_distance=is_s_distance_transitive(q, induced, 2),
        quotient_family=recognize(q),
    )


def block_systems(chain: StabilizerChain) -> List[BlockSystem]:
    """Distinct nontrivial block systems generated by a pair ``{0, j}``, sorted by cells."""
    n = chain.degree
    gens = chain.strong_generators
    found: Dict[Tuple[Tuple[int, ...], ...], BlockSystem] = {}
    for j in range(1, n):
        blocks = minimal_block_system(gens, (0, j), n)
        if not blocks.is_trivial:
            found.setdefault(blocks.cells, blocks)
    return [found[key] for key in sorted(found)]


def cover_instances(
    g: Graph, group: GroupSpec, chain: StabilizerChain
) -> Tuple[CoverInstance, ...]:
    """Kernel, quotient and cover-dichotomy branch for every block system of ``X``.

    Args:
        g: The dihedrant ``Cay(D_2n, S)`` in cayley vertex order
        group: ``D_2n``
        chain: Stabilizer chain of ``X`` with ``R(D_2n) <= X <= Aut(g)``
    """
    rotations = [right_translation(group, DihedralElement(group.n, i)) for i in range(group.n)]
    instances = []
    for blocks in block_systems(chain):
        kernel = kernel_of_block_action(chain, blocks)
        if kernel.is_trivial:
            instances.append(
                CoverInstance(
                    block_count=blocks.num_cells,
                    block_size=blocks.cell_size,
                    kernel_order=1,
                    branch=CoverBranch.TRIVIAL_KERNEL,
                )
            )
            continue
        instance = _cover_instance(g, chain, kernel)
        if not instance.is_cover:
            instances.append(instance)
            continue
        rotation_part = sum(1 for r in rotations if kernel.contains(r))
        square_index = None
        if rotation_part == kernel.order and kernel.order < group.n:
            branch = CoverBranch.ROTATION_SUBGROUP
        elif kernel.order == 2 * rotation_part:
            square_index = _square_index(kernel)
            branch = CoverBranch.INDEX_TWO if square_index in (2, 4) else CoverBranch.VIOLATION
        else:
            branch = CoverBranch.VIOLATION
        instances.append(
            replace(
                instance,
                branch=branch,
                rotation_part=rotation_part,
                square_index=square_index,
            )
        )
    return tuple(instances)


def classify_cayley(
    g: Graph,
    connection_set: ConnectionSet,
    options: Optional[CensusOptions] = None,
    aut: Optional[AutomorphismGroup] = None,
) -> ClassificationRecord:
    """Classify ``Cay(G, S)`` with ``X = Aut``.

    Raises:
        DisconnectedGraphError: If ``g`` is disconnected
        SearchBudgetExceeded: If the automorphism search runs out of budget
    """
    options = options or CensusOptions()
    group = connection_set.group
    dp = distance_partition(g, 0) if g.n else None
    if dp is not None and dp.unreachable:
        raise DisconnectedGraphError(g.n, g.n - dp.unreachable.bit_count())

    if aut is None:
        aut = automorphism_group(g, options.budget)
    chain = aut.chain
    profile = symmetry_profile(g, chain)
    form = None
    if options.dedup_isomorphic:
        form = canonical_labeling(g, options.budget, group=aut).form
    family = recognize(g, form)
    two_distance = profile.two_distance_transitive
    if group.is_dihedral:
        theorem_class = _theorem_class_dihedral(two_distance, profile.two_arc_transitive, family)
    else:
        theorem_class = _theorem_class_cyclic(
            group.n, two_distance, profile.two_arc_transitive, family
        )

    covers: Tuple[CoverInstance, ...] = ()
    quasiprimitive = None
    if two_distance:
        quasiprimitive = is_quasiprimitive(chain, options.quasiprimitive_cap).verdict.value
        if group.is_dihedral and options.check_covers:
            covers = cover_instances(g, group, chain)

    g_girth = girth(g)
    g_diameter = diameter(g)
    layer_edges = edge_count_between(g, dp.layer(1), dp.layer(2)) if dp is not None else None
    record = ClassificationRecord(
        n=group.n,
        group=group.kind.value,
        tokens=connection_set.tokens,
        theorem_class=theorem_class,
        valency=valency(g) or 0,
        girth=None if g_girth == INFINITE else int(g_girth),
        diameter=None if g_diameter == INFINITE else int(g_diameter),
        bipartite=is_bipartite(g) is not None,
        aut_order=chain.order,
        profile=profile,
        family=family,
        covers=covers,
        quasiprimitive=quasiprimitive,
        canonical_form=form,
        layer_edges=layer_edges,
    )
    logger.debug(
        "%s {%s}: |Aut| = %d, %s, %s",
        group.label(),
        connection_set,
        chain.order,
        family,
        theorem_class.value,
    )
    return record


def classify_dihedrant(
    g: Graph, connection_set: ConnectionSet, options: Optional[CensusOptions] = None
) -> ClassificationRecord:
    """Classify a dihedrant against the two-alternative theorem.

    Args:
        g: ``Cay(D_2n, S)`` as built by :func:`cayley_graph`
        connection_set: ``S``
        options: Budget and cover settings

    Raises:
        ValueError: If ``S`` is not a subset of a dihedral group
        DisconnectedGraphError: If ``g`` is disconnected
    """
    if not connection_set.group.is_dihedral:
        raise ValueError(f"{connection_set.group.label()} is not a dihedral group")
    return classify_cayley(g, connection_set, options)


def _skipped_record(group: GroupSpec, s: ConnectionSet, reason: str) -> ClassificationRecord:
    return ClassificationRecord(
        n=group.n,
        group=group.kind.value,
        tokens=s.tokens,
        theorem_class=TheoremClass.SKIPPED,
        skip_reason=reason,
    )


def _classify_task(task: Task) -> ClassificationRecord:
    """Worker entry point; module level so process pools can pickle it."""
    kind, n, text, options = task
    group = GroupSpec(GroupKind(kind), n)
    s = ConnectionSet.parse(group, text)
    g = cayley_graph(s)
    try:
        return classify_cayley(g, s, options)
    except SearchBudgetExceeded as e:
        logger.warning("Skipping %s {%s}: %s", group.label(), s, e)
        return _skipped_record(group, s, f"budget ({e.budget} nodes)")


def census_tasks(kind: GroupKind, n_min: int, n_max: int, options: CensusOptions) -> List[Task]:
    """One task per connection set up to ``Aut(G)``-equivalence, over ``n_min .. n_max``."""
    tasks = []
    for n in range(n_min, n_max + 1):
        group = GroupSpec(kind, n)
        count = 0
        for s in enumerate_connection_sets(group, EnumerationMode.UP_TO_EQUIVALENCE):
            tasks.append((kind.value, n, str(s), options))
            count += 1
        logger.debug("%s: %d connection sets up to equivalence", group.label(), count)
    return tasks


def _describe(record: ClassificationRecord) -> str:
    return f"{record.group}{record.n} {{{record.connection_set}}}"


def check_lemma_4_1(records: Iterable[ClassificationRecord]) -> LemmaReport:
    """Tally the cover dichotomy over every cover instance in ``records``."""
    report = LemmaReport()
    for record in records:
        for instance in record.covers:
            if not instance.is_cover:
                continue
            report.instances += 1
            key = instance.branch.value
            report.branch_counts[key] = report.branch_counts.get(key, 0) + 1
            if instance.branch is CoverBranch.VIOLATION:
                report.violations.append(
                    f"{_describe(record)}: kernel of order {instance.kernel_order} with "
                    f"|N cap R(H)| = {instance.rotation_part}, "
                    f"|N : M| = {instance.square_index}"
                )
    return report


def _record_violations(record: ClassificationRecord) -> Iterator[str]:
    p = record.profile
    if p is None:
        return
    family = record.family or FamilyLabel.unrecognized()
    r = record.valency
    two_distance = p.two_distance_transitive
    if p.two_arc_transitive and not two_distance:
        yield "2-arc transitive but not 2-distance transitive"
    if p.distance_transitive and not two_distance:
        yield "distance transitive but not 2-distance transitive"
    if p.two_geodesic_transitive and not two_distance:
        yield "2-geodesic transitive but not 2-distance transitive"
    if record.girth is not None and record.girth >= 5 and two_distance and not p.two_arc_transitive:
        yield f"girth {record.girth} and 2-distance transitive but not 2-arc transitive"
    if (
        two_distance
        and record.girth == 4
        and r >= 3
        and len(p.layer_sizes) > 2
        and p.layer_sizes[2] == r
        and family != FamilyLabel(FamilyTag.COMPLETE_BIPARTITE_MINUS_MATCHING, (r + 1,))
    ):
        yield f"girth 4 with |Gamma_2(u)| = {r} but family {family}"
    if two_distance and record.bipartite and r >= 3 and p.stabilizer_order == r:
        allowed = (
            FamilyLabel(FamilyTag.COMPLETE_BIPARTITE, (r, r)),
            FamilyLabel(FamilyTag.COMPLETE_BIPARTITE_MINUS_MATCHING, (r + 1,)),
        )
        if family not in allowed:
            yield f"bipartite with |X_u| = {r} but family {family}"
    triangle_free = record.girth is None or record.girth >= 4
    if triangle_free and record.layer_edges is not None and record.layer_edges != r * (r - 1):
        yield f"triangle-free with {record.layer_edges} edges between Gamma(u) and Gamma_2(u)"
    if record.theorem_class is TheoremClass.COMPLETE_MULTIPARTITE:
        m, b = family.params
        if m * b != record.order:
            yield f"K_{{{m}[{b}]}} on {record.order} vertices"
    for instance in record.covers:
        if not instance.is_cover:
            continue
        if not instance.kernel_matches:
            yield "cover kernel differs from the kernel on its own orbits"
        if instance.quotient_two_arc != p.two_arc_transitive:
            yield f"2-arc transitivity differs on the quotient {instance.quotient_family}"
        if two_distance and not instance.quotient_two_distance:
            yield f"quotient {instance.quotient_family} is not 2-distance transitive"
        quotient_tag = instance.quotient_family.tag if instance.quotient_family else None
        if quotient_tag is FamilyTag.COMPLETE_MULTIPARTITE:
            yield f"2-distance transitive cover of {instance.quotient_family}"
        if quotient_tag is FamilyTag.PALEY:
            yield f"2-distance transitive cover of {instance.quotient_family}"


def check_properties(records: Iterable[ClassificationRecord]) -> List[str]:
    """Implications every record must satisfy; one message per violation."""
    violations = []
    for record in records:
        for message in _record_violations(record):
            violations.append(f"{_describe(record)}: {message}")
    return violations


def isomorphism_counts(records: Sequence[ClassificationRecord]) -> Dict[int, int]:
    """Distinct canonical forms per ``n`` among records that carry one."""
    forms: Dict[int, set] = {}
    for record in records:
        if record.canonical_form is not None:
            forms.setdefault(record.n, set()).add(record.canonical_form)
    return {n: len(found) for n, found in sorted(forms.items())}


class CensusRunner:
    """Fan classification out over a worker pool and merge the records."""

    def __init__(self, options: Optional[CensusOptions] = None, console: Optional[Console] = None):
        """Initialize the runner.

        Args:
            options: Census configuration options
            console: Rich console for progress and status output
        """
        self.options = options or CensusOptions()
        self.console = console or Console(stderr=True)
        self._monitor = ResourceMonitor()

    def classify_all(
        self, tasks: Sequence[Task], meter: Optional[ThroughputMeter] = None
    ) -> List[ClassificationRecord]:
        """Classify every task; the result is sorted by ``(n, connection set)``."""
        meter = meter or ThroughputMeter()
        records: List[ClassificationRecord] = []
        progress = Progress(
            TextColumn("[progress.description]{task.description}"),
            BarColumn(),
            TextColumn("{task.completed}/{task.total}"),
            TimeElapsedColumn(),
            console=self.console,
            transient=True,
        )
        with progress:
            bar = progress.add_task("Classifying", total=len(tasks))
            if self.options.jobs == 1:
                results: Iterable[ClassificationRecord] = map(_classify_task, tasks)
                for record in results:
                    records.append(record)
                    meter.record(record.n)
                    progress.advance(bar)
                    self._monitor.check_resources()
            else:
                chunksize = max(1, len(tasks) // (self.options.jobs * 8))
                with ProcessPoolExecutor(max_workers=self.options.jobs) as pool:
                    for record in pool.map(_classify_task, tasks, chunksize=chunksize):
                        records.append(record)
                        meter.record(record.n)
                        progress.advance(bar)
                        self._monitor.check_resources()
        records.sort(key=lambda r: r.sort_key)
        return records

    def run(self, target: VerifyTarget, n_min: int, n_max: int) -> CensusReport:
        """Run one census harness.

        Args:
            target: Which harness to run
            n_min: Smallest ``n``
            n_max: Largest ``n``

        Returns:
            Report with sorted records, checks and verdict
        """
        kind = GroupKind.CYCLIC if target is VerifyTarget.CIRCULANTS else GroupKind.DIHEDRAL
        options = self.options
        if target is VerifyTarget.LEMMA41 and not options.check_covers:
            logger.warning("Cover checks are required for lemma41; enabling them")
            options = CensusOptions(**{**vars(options), "check_covers": True})
            self.options = options

        with ThroughputMeter() as meter:
            tasks = census_tasks(kind, n_min, n_max, options)
            logger.debug("Classifying %d connection sets with %d job(s)", len(tasks), options.jobs)
            records = self.classify_all(tasks, meter)
            classified = [r for r in records if not r.is_skipped]
            violations = check_properties(classified)
            lemma = check_lemma_4_1(classified) if kind is GroupKind.DIHEDRAL else None

        memory = self._monitor.check_resources(force=True)
        report = CensusReport(
            target=target,
            n_min=n_min,
            n_max=n_max,
            records=records,
            violations=violations,
            lemma=lemma,
            isomorphism_counts=isomorphism_counts(records) if options.dedup_isomorphic else None,
            allow_skips=options.allow_skips,
            elapsed=meter.elapsed,
            peak_memory=max(memory, self._monitor.peak_memory),
        )
        for record in report.skipped:
            logger.warning("SKIPPED %s: %s", _describe(record), record.skip_reason)
        for n, count in meter.counts.items():
            logger.debug("n = %d: %d records at %s", n, count, format_rate(meter.rate(n)))
        logger.debug(
            "Census %s finished in %.2fs (%s): %s",
            target.value,
            meter.elapsed,
            format_rate(meter.rate()),
            report.counts_per_class,
        )
        return report

    @staticmethod
    def report_lines(report: CensusReport) -> List[str]:
        """One JSON object per record, then the summary object."""
        lines = [json.dumps(r.to_dict(), sort_keys=True) for r in report.records]
        lines.append(json.dumps({"summary": report.summary()}, sort_keys=True))
        return lines

    def save_report(self, output_path: Path, report: CensusReport) -> bool:
        """Write the newline-delimited report to ``output_path``.

        Args:
            output_path: Path of the report file
            report: Report to write

        Returns:
            True if the file was written
        """
        from ..ui.styles import GREEN, RED

        try:
            with open(output_path, "w", encoding="utf-8", newline="\n") as f:
                for line in self.report_lines(report):
                    f.write(line + "\n")
            self.console.print(f"[{GREEN}]Report saved to {output_path.absolute()}[/]")
            return True
        except OSError as e:
            self.console.print(f"[{RED}]Failed to save report: {e}[/]")
            return False


def verify_theorem_1_1(
    n_min: int,
    n_max: int,
    parallelism: int = 1,
    options: Optional[CensusOptions] = None,
    console: Optional[Console] = None,
) -> CensusReport:
    """Classify every connected dihedrant ``Cay(D_2n, S)`` for ``n_min <= n <= n_max``.

    The verdict is PASS iff no record is a counterexample, every property
    check holds and nothing was skipped (unless skips are allowed).
    """
    options = _with_jobs(options, parallelism)
    return CensusRunner(options, console).run(VerifyTarget.THEOREM11, n_min, n_max)


def verify_circulants(
    n_min: int,
    n_max: int,
    parallelism: int = 1,
    options: Optional[CensusOptions] = None,
    console: Optional[Console] = None,
) -> CensusReport:
    """Classify every connected circulant ``Cay(Z_n, S)`` for ``n_min <= n <= n_max``."""
    options = _with_jobs(options, parallelism)
    return CensusRunner(options, console).run(VerifyTarget.CIRCULANTS, n_min, n_max)


def _with_jobs(options: Optional[CensusOptions], jobs: int) -> CensusOptions:
    if options is None:
        return CensusOptions(jobs=jobs)
    if options.jobs != jobs and jobs != 1:
        return CensusOptions(**{**vars(options), "jobs": jobs})
    return options
