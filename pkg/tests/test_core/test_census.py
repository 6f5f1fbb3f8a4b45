import dataclasses
import json

import pytest
from rich.console import Console

from dihedrants.core.autsearch import automorphism_group
from dihedrants.core.cayley import ConnectionSet, GroupKind, GroupSpec, cayley_graph
from dihedrants.core.census import (
    CensusRunner,
    _allowed_two_arc_circulant,
    _classify_task,
    _theorem_class_cyclic,
    block_systems,
    census_tasks,
    check_lemma_4_1,
    check_properties,
    classify_cayley,
    classify_dihedrant,
    cover_instances,
    verify_circulants,
    verify_theorem_1_1,
)
from dihedrants.core.errors import ConfigurationError, DisconnectedGraphError
from dihedrants.core.families import FamilyLabel, FamilyTag
from dihedrants.core.graph import Graph
from dihedrants.core.types import (
    CensusOptions,
    CensusReport,
    ClassificationRecord,
    CoverBranch,
    RunConfig,
    RunVerdict,
    TheoremClass,
    VerifyTarget,
)


@pytest.fixture
def quiet_console():
    """Console that swallows progress output."""
    return Console(stderr=True, quiet=True)


def test_octahedron_is_complete_multipartite(octahedron, octahedron_set, fast_options):
    """Test the classification of K_{3[2]} as a dihedrant."""
    record = classify_dihedrant(octahedron, octahedron_set, fast_options)
    assert record.theorem_class is TheoremClass.COMPLETE_MULTIPARTITE
    assert record.family == FamilyLabel(FamilyTag.COMPLETE_MULTIPARTITE, (3, 2))
    assert record.aut_order == 48
    assert record.valency == 4
    assert record.girth == 3
    assert record.diameter == 2
    assert not record.bipartite
    assert record.quasiprimitive == "no"
    assert [c.branch for c in record.covers] == [CoverBranch.NOT_A_COVER]
    assert check_properties([record]) == []


def test_cube_is_two_arc_transitive(cube_dihedrant, cube_set, fast_options):
    """Test the 3-cube as Cay(D_8, {y, xy, x^2y}) and its antipodal cover."""
    record = classify_dihedrant(cube_dihedrant, cube_set, fast_options)
    assert record.theorem_class is TheoremClass.TWO_ARC_TRANSITIVE
    assert str(record.family) == "K_{4,4}-4K_2"
    assert record.aut_order == 48
    assert record.bipartite

    covers = {c.block_size: c for c in record.covers}
    assert set(covers) == {2, 4}
    antipodal = covers[2]
    assert antipodal.is_cover
    assert antipodal.branch is CoverBranch.INDEX_TWO
    assert antipodal.kernel_order == 2
    assert antipodal.rotation_part == 1
    assert antipodal.square_index == 2
    assert antipodal.kernel_matches
    assert antipodal.quotient_family == FamilyLabel(FamilyTag.COMPLETE, (4,))
    assert antipodal.quotient_two_arc
    assert antipodal.quotient_two_distance
    assert covers[4].branch is CoverBranch.NOT_A_COVER
    assert check_properties([record]) == []


def test_rotation_subgroup_cover_of_octagon():
    """Test that C_8 covers C_4 through the rotation x^2."""
    s = ConnectionSet.parse(GroupSpec.dihedral(4), "y,x^1*y")
    g = cayley_graph(s)
    chain = automorphism_group(g).chain
    instances = [c for c in cover_instances(g, s.group, chain) if c.is_cover]
    branches = {c.kernel_order: c.branch for c in instances}
    assert branches[2] is CoverBranch.ROTATION_SUBGROUP


def test_block_systems_of_hexagon():
    """Test the nontrivial block systems of Aut(C_6)."""
    s = ConnectionSet.parse(GroupSpec.dihedral(3), "y,x^1*y")
    chain = automorphism_group(cayley_graph(s)).chain
    sizes = sorted(b.cell_size for b in block_systems(chain))
    assert sizes == [2, 3]


def test_mobius_ladder_is_not_two_distance_transitive(fast_options):
    """Test Cay(D_12, {y, xy, x^3})."""
    s = ConnectionSet.parse(GroupSpec.dihedral(6), "y,x^1*y,x^3")
    record = classify_dihedrant(cayley_graph(s), s, fast_options)
    assert record.theorem_class is TheoremClass.NOT_TWO_DISTANCE_TRANSITIVE
    assert record.connection_set == "x^3,y,x^1*y"
    assert record.covers == ()
    assert record.quasiprimitive is None


def test_paley_circulant(paley13, fast_options):
    """Test that P(13) lands in the Paley class as a circulant."""
    s = ConnectionSet.parse(GroupSpec.cyclic(13), "1,3,4,9,10,12")
    record = classify_cayley(cayley_graph(s), s, fast_options)
    assert record.theorem_class is TheoremClass.PALEY
    assert record.aut_order == 78
    assert record.quasiprimitive == "yes"
    assert record.order == 13


def test_circulant_two_arc_families():
    """Test which 2-arc-transitive circulants are allowed."""
    cube = FamilyLabel(FamilyTag.COMPLETE_BIPARTITE_MINUS_MATCHING, (4,))
    assert _theorem_class_cyclic(8, True, True, cube) is TheoremClass.COUNTEREXAMPLE
    five = FamilyLabel(FamilyTag.COMPLETE_BIPARTITE_MINUS_MATCHING, (5,))
    assert _allowed_two_arc_circulant(10, five)
    assert _allowed_two_arc_circulant(6, FamilyLabel(FamilyTag.COMPLETE_BIPARTITE, (3, 3)))
    assert not _allowed_two_arc_circulant(8, FamilyLabel(FamilyTag.CYCLE, (4,)))
    unknown = FamilyLabel.unrecognized()
    assert _theorem_class_cyclic(9, True, False, unknown) is TheoremClass.COUNTEREXAMPLE


def test_classification_input_errors(octahedron_set, fast_options):
    """Test rejection of circulants and disconnected graphs."""
    s = ConnectionSet.parse(GroupSpec.cyclic(5), "1,4")
    with pytest.raises(ValueError):
        classify_dihedrant(cayley_graph(s), s, fast_options)

    triangles = Graph.from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)])
    with pytest.raises(DisconnectedGraphError):
        classify_cayley(triangles, octahedron_set, fast_options)


def test_budget_exhaustion_gives_skipped_record():
    """Test that a worker turns a budget overrun into a skipped record."""
    record = _classify_task(("D", 4, "y,x^1*y,x^2*y", CensusOptions(budget=1)))
    assert record.is_skipped
    assert record.skip_reason == "budget (1 nodes)"
    assert record.to_dict()["skipped"] == "budget (1 nodes)"
    assert "profile" not in record.to_dict()


def test_census_tasks(fast_options):
    """Test one task per connection set up to equivalence."""
    tasks = census_tasks(GroupKind.DIHEDRAL, 2, 3, fast_options)
    assert [t[1] for t in tasks].count(2) == 2
    assert [t[1] for t in tasks].count(3) == 5
    assert all(t[0] == "D" for t in tasks)


def test_theorem_census_small_range(fast_options, quiet_console):
    """Test that every dihedrant of order at most 10 fits the dichotomy."""
    report = verify_theorem_1_1(2, 5, options=fast_options, console=quiet_console)
    assert report.verdict is RunVerdict.PASS
    assert report.counterexamples == []
    assert report.violations == []
    assert report.lemma is not None and report.lemma.violations == []
    assert list(report.counts_per_n) == [2, 3, 4, 5]
    assert report.counts_per_n[2] == {"two_arc_transitive": 2}
    assert report.counts_per_n[3] == {
        "complete_multipartite": 1,
        "not_two_distance_transitive": 1,
        "two_arc_transitive": 3,
    }
    assert [r.sort_key for r in report.records] == sorted(r.sort_key for r in report.records)


def test_circulant_census_small_range(fast_options, quiet_console):
    """Test circulants of order 3 to 8."""
    report = verify_circulants(3, 8, options=fast_options, console=quiet_console)
    assert report.verdict is RunVerdict.PASS
    assert report.lemma is None
    five = [str(r.family) for r in report.records if r.n == 5]
    assert sorted(five) == ["C_5", "K_5"]


def test_lemma_target_enables_covers(quiet_console):
    """Test the cover dichotomy over small dihedrants."""
    runner = CensusRunner(CensusOptions(check_covers=False), quiet_console)
    report = runner.run(VerifyTarget.LEMMA41, 2, 4)
    assert runner.options.check_covers
    assert report.lemma is not None
    assert report.lemma.instances > 0
    assert report.lemma.violations == []
    assert set(report.lemma.branch_counts) <= {"rotation_subgroup", "index_two"}
    assert report.summary()["lemma_4_1"]["instances"] == report.lemma.instances


def test_check_lemma_counts_only_covers(cube_dihedrant, cube_set, fast_options):
    """Test the branch tally for a single record."""
    record = classify_dihedrant(cube_dihedrant, cube_set, fast_options)
    lemma = check_lemma_4_1([record])
    assert lemma.instances == 1
    assert lemma.branch_counts == {"index_two": 1}


def test_isomorphism_classes(quiet_console):
    """Test canonical-form dedup over the D_6 census."""
    options = CensusOptions(dedup_isomorphic=True)
    report = verify_theorem_1_1(3, 3, options=options, console=quiet_console)
    assert report.isomorphism_counts == {3: 5}
    assert report.summary()["isomorphism_classes"] == {"3": 5}


@pytest.mark.slow
def test_report_is_independent_of_jobs(quiet_console):
    """Test byte-identical reports for one and two worker processes."""
    serial = verify_theorem_1_1(2, 4, parallelism=1, console=quiet_console)
    parallel = verify_theorem_1_1(2, 4, parallelism=2, console=quiet_console)
    assert CensusRunner.report_lines(serial) == CensusRunner.report_lines(parallel)


def test_save_report(temp_dir, fast_options, quiet_console):
    """Test the newline-delimited report file."""
    runner = CensusRunner(fast_options, quiet_console)
    report = runner.run(VerifyTarget.THEOREM11, 2, 3)
    path = temp_dir / "report.ndjson"
    assert runner.save_report(path, report)

    lines = path.read_text(encoding="utf-8").splitlines()
    assert len(lines) == len(report.records) + 1
    first = json.loads(lines[0])
    assert first["n"] == 2
    assert first["group"] == "D"
    summary = json.loads(lines[-1])["summary"]
    assert summary["verdict"] == "PASS"
    assert summary["n_range"] == [2, 3]
    assert "elapsed" not in summary

    assert not runner.save_report(temp_dir / "missing" / "report.ndjson", report)


def test_report_verdict_with_skips():
    """Test that skipped records fail the run unless allowed."""
    skipped = ClassificationRecord(
        n=3, group="D", tokens=("y",), theorem_class=TheoremClass.SKIPPED, skip_reason="budget"
    )
    report = CensusReport(target=VerifyTarget.THEOREM11, n_min=3, n_max=3, records=[skipped])
    assert report.verdict is RunVerdict.FAIL
    report.allow_skips = True
    assert report.verdict is RunVerdict.PASS
    assert report.summary()["skipped"] == ["D3 {y}"]


def test_run_config_defaults_and_validation():
    """Test default ranges and rejected settings."""
    config = RunConfig(VerifyTarget.CIRCULANTS)
    assert (config.n_min, config.n_max) == (3, 20)
    config = RunConfig(VerifyTarget.THEOREM11, n_max=4)
    assert (config.n_min, config.n_max) == (2, 4)
    config = RunConfig(VerifyTarget.LEMMA41, n_min=12)
    assert (config.n_min, config.n_max) == (12, 12)

    with pytest.raises(ConfigurationError):
        RunConfig(VerifyTarget.CIRCULANTS, n_min=2)
    with pytest.raises(ConfigurationError):
        RunConfig(VerifyTarget.THEOREM11, n_min=5, n_max=4)
    with pytest.raises(ConfigurationError):
        CensusOptions(jobs=0)
    with pytest.raises(ConfigurationError):
        CensusOptions(budget=0)


def test_layer_edges_of_triangle_free_graph(cube_dihedrant, cube_set, fast_options):
    """Test the r(r-1) edges between the first two distance layers."""
    record = classify_dihedrant(cube_dihedrant, cube_set, fast_options)
    assert record.layer_edges == 6
    assert record.to_dict()["layer_edges"] == 6

    broken = dataclasses.replace(record, layer_edges=5)
    [violation] = check_properties([broken])
    assert "triangle-free with 5 edges" in violation


def test_layer_edges_ignored_with_triangles(octahedron, octahedron_set, fast_options):
    """Test that graphs with triangles skip the layer-edge count."""
    record = classify_dihedrant(octahedron, octahedron_set, fast_options)
    assert record.layer_edges == 4
    assert check_properties([dataclasses.replace(record, layer_edges=0)]) == []


@pytest.mark.slow
def test_theorem_census_up_to_ten(quiet_console):
    """Test every dihedrant of order at most 20."""
    report = verify_theorem_1_1(2, 10, parallelism=4, console=quiet_console)
    assert report.verdict is RunVerdict.PASS
    assert report.counterexamples == []
    assert report.violations == []
    assert all(not r.is_skipped for r in report.records)
    for record in report.records:
        if not record.profile.two_distance_transitive:
            continue
        assert record.theorem_class in (
            TheoremClass.TWO_ARC_TRANSITIVE,
            TheoremClass.COMPLETE_MULTIPARTITE,
        )
        if record.theorem_class is TheoremClass.COMPLETE_MULTIPARTITE:
            m, b = record.family.params
            assert m * b == record.order


@pytest.mark.slow
def test_circulant_census_up_to_twenty(quiet_console):
    """Test the 2-distance-transitive circulants of order at most 20."""
    report = verify_circulants(3, 20, parallelism=4, console=quiet_console)
    assert report.verdict is RunVerdict.PASS
    two_arc_tags = {
        FamilyTag.COMPLETE,
        FamilyTag.CYCLE,
        FamilyTag.COMPLETE_BIPARTITE,
        FamilyTag.COMPLETE_BIPARTITE_MINUS_MATCHING,
    }
    for record in report.records:
        if record.profile.two_arc_transitive:
            assert record.family.tag in two_arc_tags
        elif record.profile.two_distance_transitive:
            assert record.family.tag in (FamilyTag.COMPLETE_MULTIPARTITE, FamilyTag.PALEY)

    families = {str(r.family) for r in report.records}
    assert "P(13)" in families
    assert "P(17)" in families
    five = [r for r in report.records if r.n == 5 and r.valency == 2]
    assert [str(r.family) for r in five] == ["C_5"]


@pytest.mark.slow
def test_theorem_census_at_seventeen(quiet_console):
    """Test the dihedrants of D_34."""
    report = verify_theorem_1_1(17, 17, parallelism=4, console=quiet_console)
    assert report.verdict is RunVerdict.PASS
    assert report.counterexamples == []
    assert report.skipped == []
    assert list(report.counts_per_n) == [17]
