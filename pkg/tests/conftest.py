import numpy as np
import pytest

import fracspec as fs


@pytest.fixture(scope="session")
def p_third():
    return fs.make_frac_param(np.pi / 3)


@pytest.fixture(scope="session")
def p_half():
    return fs.make_frac_param(np.pi / 2)


@pytest.fixture(scope="session")
def hermite():
    return fs.hermite_wavelet_window()


@pytest.fixture(scope="session")
def mexican():
    return fs.mexican_hat_window()


@pytest.fixture(scope="session")
def gauss():
    return fs.gaussian_window()


@pytest.fixture(scope="session")
def unit_gauss():
    return fs.gaussian_window(unit_mass=True)
