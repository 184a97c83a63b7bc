import math

import pytest

from massbox import bethe, wavefunction
from massbox.dihedral import build_dihedral_group, nonergodicity_classify

PI = math.pi

# paper-reported ground-state quasimomenta at gamma = 1, 5-digit rounding
GROUND_ROOT_G1 = (0.93667 * PI, 1.17904 * PI)
PARTNER_1_G1 = (1.30023 * PI, 1.05786 * PI)
PARTNER_2_G1 = (2.2369 * PI, 0.12119 * PI)


@pytest.fixture(scope="session")
def d6():
    return build_dihedral_group(nonergodicity_classify(3.0))


@pytest.fixture(scope="session")
def ground_state_g1():
    root = bethe.continue_level(1, 1, 1.0)
    return wavefunction.assemble_coefficients(root, 1.0)


@pytest.fixture(scope="session")
def lowest_levels_g1():
    return bethe.enumerate_spectrum(1.0, 6)
