# 786
# Flossh source: conftest.py
#   This file is subject to the terms and conditions defined in
#   file 'LICENSE', which is part of this source code package.


import pytest

from flossh.lattice import ChainGeometry
from flossh.drive import DriveSpec, DriveKind


@pytest.fixture
def topological_chain():
    return ChainGeometry(20, 0.3)


@pytest.fixture
def trivial_chain():
    return ChainGeometry(20, 1.1, 1.0, 0.6)


@pytest.fixture
def small_chain():
    return ChainGeometry(4, 0.3, 1.0, 0.6)


@pytest.fixture
def mono():
    def make(g, **kw):
        return DriveSpec(DriveKind.MONOCHROMATIC, g, 10.0, **kw)

    return make


@pytest.fixture
def drives():
    """One drive of every kind at g = 1."""
    return [
        DriveSpec(DriveKind.MONOCHROMATIC, 1.0, 10.0),
        DriveSpec(DriveKind.GAUSSIAN, 1.0, 10.0, c=10.0),
        DriveSpec(DriveKind.BEATING, 1.0, 10.0, omega_env=5.0),
    ]
