"""Shared fixtures: the small named lattices every test module leans on."""

from __future__ import annotations

import pytest

import cellman as cm

# The 6-vertex triangulation of the real projective plane: every vertex pair
# is an edge, ten triangles, every edge in exactly two of them.  It is a
# valid excess-2 lattice but not a sphere, which makes it the standard
# negative control for anything sphere-shaped.
RP2_FACETS = (
    (0, 1, 4),
    (0, 1, 5),
    (0, 2, 3),
    (0, 2, 5),
    (0, 3, 4),
    (1, 2, 3),
    (1, 2, 4),
    (1, 3, 5),
    (2, 4, 5),
    (3, 4, 5),
)

RP2_LABELS = ("u1", "u2", "u3", "u4", "u5", "u6")


@pytest.fixture(scope="session")
def rp2():
    return cm.from_facets(RP2_LABELS, RP2_FACETS)


@pytest.fixture(scope="session")
def octahedron():
    return cm.join(cm.join(cm.standard_sphere(0), cm.standard_sphere(0)), cm.standard_sphere(0))


@pytest.fixture(scope="session")
def bipyramid():
    """Two cone points over a triangle: the 5-vertex excess-1 2-sphere."""
    return cm.join(cm.standard_sphere(0), cm.standard_sphere(1))


@pytest.fixture(scope="session")
def square_tensor_point():
    """The square tensored with the point sphere: a 5-vertex pyramid boundary."""
    return cm.tensor(cm.join(cm.standard_sphere(0), cm.standard_sphere(0)), cm.standard_sphere(-1))


@pytest.fixture(scope="session")
def s1_doubled_pentagon():
    """The 6-vertex 2-sphere obtained by doubling one pentagon vertex."""
    return cm.inflate(cm.cycle(5, labels=("a", "b", "c", "d", "e")), {"a": 2})


@pytest.fixture(scope="session")
def quad_join_lattice():
    """The 7-vertex excess-2 3-sphere with one quadrilateral 2-face."""
    sq = cm.join(cm.standard_sphere(0), cm.standard_sphere(0))
    return cm.join(cm.tensor(sq, cm.standard_sphere(-1)), cm.standard_sphere(0))


@pytest.fixture(scope="session")
def pentagon_diagram():
    """Five points on every fourth ray of twenty: regular-pentagon directions."""
    return cm.GaleDiagram.from_assignment(
        20, {"v0": 0, "v1": 4, "v2": 8, "v3": 12, "v4": 16}
    )


@pytest.fixture(scope="session")
def octahedron_diagram():
    """Three doubled points on alternating rays of six."""
    return cm.GaleDiagram.from_assignment(
        6, {"a1": 0, "a2": 0, "b1": 2, "b2": 2, "c1": 4, "c2": 4}
    )


def assert_valid(L):
    report = cm.validate(L)
    assert report.verdict, report.violations
