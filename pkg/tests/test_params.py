import math

import pytest

from massbox.params import ModelParams, mass_heavy, mass_light


def test_eta3_masses():
    p = ModelParams(eta=3.0, gamma=1.0)
    assert p.m1 == 4.0
    assert abs(p.m2 - 4.0 / 3.0) < 1e-15
    assert p.g == 1.0


def test_reduced_mass_is_one():
    for eta in (0.3, 1.0, 3.0, 7.7):
        m1, m2 = mass_heavy(eta), mass_light(eta)
        assert abs(m1 * m2 / (m1 + m2) - 1.0) < 1e-12


def test_infinite_coupling_allowed():
    assert ModelParams(gamma=math.inf).gamma == math.inf


@pytest.mark.parametrize("kwargs", [{"eta": 0.0}, {"eta": -1.0}, {"gamma": -0.5}, {"L": 2.0}])
def test_rejects_invalid(kwargs):
    with pytest.raises(ValueError):
        ModelParams(**kwargs)
