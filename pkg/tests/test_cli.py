import json

import pytest
from click.testing import CliRunner

from dihedrants.cli import main
from dihedrants.core.families import HadamardKind, hadamard11
from dihedrants.io.graphio import read_graph, write_graph
from dihedrants.version import __version__


@pytest.fixture
def runner():
    return CliRunner()


def test_version(runner):
    """Test the version option."""
    result = runner.invoke(main, ["--version"])
    assert result.exit_code == 0
    assert __version__ in result.output


@pytest.mark.parametrize(
    "args,header",
    [
        (["build", "paley", "13"], "13 39"),
        (["build", "gp", "8", "3"], "16 24"),
        (["build", "cube", "3"], "8 12"),
        (["build", "cayley", "Z", "13", "1,3,4,9,10,12"], "13 39"),
    ],
)
def test_build_to_stdout(runner, args, header):
    """Test that built graphs are written as edgelist v1."""
    result = runner.invoke(main, args)
    assert result.exit_code == 0
    lines = result.stdout.splitlines()
    assert lines[0] == "# edgelist v1"
    assert lines[1] == header


def test_build_cayley_to_file(runner, temp_dir):
    """Test building the octahedron as a dihedrant into a file."""
    out = temp_dir / "octahedron.txt"
    args = ["build", "cayley", "D", "3", "x^1,x^2,x^1*y,x^2*y", "-o", str(out)]
    result = runner.invoke(main, args)
    assert result.exit_code == 0
    g = read_graph(out)
    assert (g.n, g.num_edges) == (6, 12)


def test_build_graph6(runner, temp_dir):
    """Test graph6 output."""
    out = temp_dir / "petersen.g6"
    result = runner.invoke(main, ["build", "gp", "5", "2", "--g6", "--out", str(out)])
    assert result.exit_code == 0
    assert read_graph(out, g6=True).num_edges == 15


@pytest.mark.parametrize(
    "args",
    [
        ["build", "paley", "12"],
        ["build", "paley", "thirteen"],
        ["build", "gp", "8"],
        ["build", "cayley", "D", "4", "x^2,y"],
        ["build", "cayley", "Q", "4", "1"],
        ["build", "cayley", "D", "4", "x^1,w"],
        ["build", "cayley", "D", "4"],
    ],
)
def test_build_invalid_input(runner, args):
    """Test that invalid parameters exit with code 2."""
    result = runner.invoke(main, args)
    assert result.exit_code == 2


def test_check_records(runner, edgelist_file):
    """Test the JSON symmetry profile of the 3-cube."""
    result = runner.invoke(main, ["check", str(edgelist_file), "--format", "records"])
    assert result.exit_code == 0
    record = json.loads(result.stdout)
    assert record["n"] == 8
    assert record["edges"] == 12
    assert record["valency"] == 3
    assert record["girth"] == 4
    assert record["diameter"] == 3
    assert record["family"] == "K_{4,4}-4K_2"
    assert record["profile"]["two_arc_transitive"] is True
    assert record["profile"]["group_order"] == 48


def test_check_table(runner, edgelist_file):
    """Test the default table output."""
    result = runner.invoke(main, ["check", str(edgelist_file)])
    assert result.exit_code == 0
    assert "Symmetry Profile" in result.stdout


def test_check_malformed_file(runner, temp_dir):
    """Test that parse errors exit with code 2."""
    bad = temp_dir / "bad.txt"
    bad.write_text("3 1\n0 7\n")
    result = runner.invoke(main, ["check", str(bad)])
    assert result.exit_code == 2


def test_aut_records(runner, temp_dir):
    """Test the automorphism group of the H_11 incidence graph."""
    path = temp_dir / "h11.txt"
    write_graph(path, hadamard11(HadamardKind.INCIDENCE))
    result = runner.invoke(main, ["aut", str(path), "--format", "records"])
    assert result.exit_code == 0
    record = json.loads(result.stdout)
    assert record["order"] == 1320
    assert all(gen.startswith("(") for gen in record["generators"])


def test_quotient(runner, edgelist_file, temp_dir):
    """Test the antipodal quotient of the 3-cube."""
    out = temp_dir / "k4.txt"
    result = runner.invoke(
        main, ["quotient", str(edgelist_file), "-g", "(0 7)(1 6)(2 5)(3 4)", "-o", str(out)]
    )
    assert result.exit_code == 0
    q = read_graph(out)
    assert (q.n, q.num_edges) == (4, 6)


def test_quotient_rejects_bad_generators(runner, edgelist_file):
    """Test non-normal and non-automorphism generators."""
    result = runner.invoke(main, ["quotient", str(edgelist_file), "-g", "(1 2)(5 6)"])
    assert result.exit_code == 1
    result = runner.invoke(main, ["quotient", str(edgelist_file), "-g", "(0 1)"])
    assert result.exit_code == 1


def test_verify_writes_report(runner, temp_dir):
    """Test a small theorem census with a report file."""
    out = temp_dir / "report.ndjson"
    result = runner.invoke(
        main, ["verify", "theorem11", "--min-n", "2", "--max-n", "3", "--out", str(out)]
    )
    assert result.exit_code == 0
    lines = out.read_text(encoding="utf-8").splitlines()
    assert len(lines) == 2 + 5 + 1
    assert json.loads(lines[-1])["summary"]["verdict"] == "PASS"


def test_verify_invalid_range(runner):
    """Test that out-of-range settings exit with code 2."""
    result = runner.invoke(main, ["verify", "circulants", "--min-n", "2", "--max-n", "4"])
    assert result.exit_code == 2
    result = runner.invoke(main, ["verify", "theorem11", "--min-n", "3", "--max-n", "3", "-j", "0"])
    assert result.exit_code == 2


def test_verify_budget_skips(runner, temp_dir):
    """Test exit code 3 for skipped records, and 0 when skips are allowed."""
    args = ["verify", "theorem11", "--min-n", "3", "--max-n", "3", "--budget", "1"]
    result = runner.invoke(main, args + ["--out", str(temp_dir / "skips.ndjson")])
    assert result.exit_code == 3
    result = runner.invoke(main, args + ["--allow-skips", "--out", str(temp_dir / "ok.ndjson")])
    assert result.exit_code == 0
    summary = json.loads((temp_dir / "ok.ndjson").read_text().splitlines()[-1])["summary"]
    assert len(summary["skipped"]) == 5
