import pytest

from coulomb_pt.cross_section import XSecConfig
from coulomb_pt.kinematics import make_kinematics
from coulomb_pt.phase_shifts import build_table


@pytest.fixture(scope="session")
def kin_nr():
    """Nonrelativistic point used for the phase-shift comparison."""
    return make_kinematics(0.02)


@pytest.fixture(scope="session")
def kin_rel():
    return make_kinematics(5.0)


@pytest.fixture(scope="session")
def table_nr(kin_nr):
    return build_table(kin_nr, XSecConfig().l_max, 50)


@pytest.fixture(scope="session")
def table_rel(kin_rel):
    return build_table(kin_rel, XSecConfig().l_max, 50)
