from __future__ import annotations

import pytest

from jumpnum import parse_fixture

FIXTURES = (
    "cusp.json",
    "x2y5.json",
    "node.json",
    "squared_cubic_times_plane.json",
    "whitney_plus_plane.json",
    "d5_surface.json",
    "squared_cone_quartic.json",
)

SURFACE_FIXTURES = ("cusp.json", "x2y5.json", "node.json")
LATTICE_FIXTURES = (
    "squared_cubic_times_plane.json",
    "whitney_plus_plane.json",
    "d5_surface.json",
    "squared_cone_quartic.json",
)


@pytest.fixture(scope="session")
def fixtures():
    return {name: parse_fixture(name) for name in FIXTURES}


@pytest.fixture
def ex45(fixtures):
    return fixtures["squared_cubic_times_plane.json"]


@pytest.fixture
def ex61(fixtures):
    return fixtures["whitney_plus_plane.json"]


@pytest.fixture
def d5(fixtures):
    return fixtures["d5_surface.json"]


@pytest.fixture
def sec7(fixtures):
    return fixtures["squared_cone_quartic.json"]


@pytest.fixture
def cusp(fixtures):
    return fixtures["cusp.json"]
