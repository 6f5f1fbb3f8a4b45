import tempfile
from pathlib import Path

import pytest

from dihedrants.core.cayley import ConnectionSet, GroupSpec, cayley_graph
from dihedrants.core.families import complete, complete_multipartite, cycle, hypercube, paley
from dihedrants.core.types import CensusOptions


@pytest.fixture
def temp_dir():
    """Provide a clean temporary directory for tests."""
    with tempfile.TemporaryDirectory() as tmpdir:
        yield Path(tmpdir)


@pytest.fixture
def octahedron_set():
    """Cay(D_6, {x, x^2, xy, x^2y}), the octahedron K_{3[2]}."""
    return ConnectionSet.parse(GroupSpec.dihedral(3), "x^1,x^2,x^1*y,x^2*y")


@pytest.fixture
def octahedron(octahedron_set):
    return cayley_graph(octahedron_set)


@pytest.fixture
def cube_set():
    """Cay(D_8, {y, xy, x^2y}), which is the 3-cube."""
    return ConnectionSet.parse(GroupSpec.dihedral(4), "y,x^1*y,x^2*y")


@pytest.fixture
def cube_dihedrant(cube_set):
    return cayley_graph(cube_set)


@pytest.fixture
def q3():
    return hypercube(3)


@pytest.fixture
def k4():
    return complete(4)


@pytest.fixture
def c6():
    return cycle(6)


@pytest.fixture
def k222():
    return complete_multipartite(3, 2)


@pytest.fixture
def paley13():
    return paley(13)


@pytest.fixture
def fast_options():
    """Census options for small test ranges."""
    return CensusOptions(budget=1_000_000, jobs=1)


@pytest.fixture
def edgelist_file(temp_dir):
    """Write the 3-cube as an edgelist v1 file."""
    path = temp_dir / "cube.txt"
    lines = ["# edgelist v1", "8 12"]
    for v in range(8):
        for bit in (1, 2, 4):
            w = v ^ bit
            if v < w:
                lines.append(f"{v} {w}")
    path.write_text("\n".join(lines) + "\n")
    return path
