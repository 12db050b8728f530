"""ODE oracle: Numerov shooting and plane-wave transmission.

These are the Bessel-free reference paths, so they are tested both for
internal consistency (method order, flux conservation) and against the
closed-form results."""

import numpy as np
import pytest

from expwell import (
    PotentialParams,
    ShootingConfig,
    amplitudes,
    numerov_eigenvalue,
    numerov_wavefunction,
    transmission_numeric,
)
from expwell.errors import BracketError


def _bracket(kappa):
    return (max(kappa - 1e-4, kappa / 2), kappa + 1e-4)


def test_numerov_matches_g1(spectrum_of):
    st0 = spectrum_of(1.0).states[0]
    cfg = ShootingConfig(parity="even", kappa_bracket=(0.5, 0.7))
    assert abs(numerov_eigenvalue(PotentialParams(1.0), cfg) - st0.kappa) <= 1e-8


def test_numerov_full_spectrum_g5(spectrum_of):
    s = spectrum_of(5.0)
    for st_ in s.states:
        cfg = ShootingConfig(parity=st_.parity, kappa_bracket=_bracket(st_.kappa))
        assert abs(numerov_eigenvalue(s.params, cfg) - st_.kappa) <= 1e-7, st_.m


def test_numerov_step_refinement_order(spectrum_of):
    st0 = spectrum_of(1.0).states[0]
    p = PotentialParams(1.0)
    k_coarse = numerov_eigenvalue(
        p, ShootingConfig(parity="even", kappa_bracket=(0.5, 0.7), h=1e-3))
    k_fine = numerov_eigenvalue(
        p, ShootingConfig(parity="even", kappa_bracket=(0.5, 0.7), h=5e-4))
    assert abs(k_coarse - k_fine) <= 1e-9
    assert abs(k_fine - st0.kappa) <= 1e-9


def test_numerov_bracket_error():
    cfg = ShootingConfig(parity="even", kappa_bracket=(0.8, 0.9))
    with pytest.raises(BracketError):
        numerov_eigenvalue(PotentialParams(1.0), cfg)


def test_shooting_config_validation():
    with pytest.raises(ValueError):
        ShootingConfig(parity="mixed", kappa_bracket=(0.1, 0.2))
    with pytest.raises(ValueError):
        ShootingConfig(parity="even", kappa_bracket=(0.2, 0.1))
    with pytest.raises(ValueError):
        ShootingConfig(parity="even", kappa_bracket=(0.1, 0.2), h=2e-3)


def test_numerov_wave_node_counts(spectrum_of):
    s = spectrum_of(5.0)
    for st_ in s.states[:4]:
        cfg = ShootingConfig(parity=st_.parity,
                             kappa_bracket=_bracket(st_.kappa))
        kappa = numerov_eigenvalue(s.params, cfg)
        xs, psi = numerov_wavefunction(kappa, s.params, cfg)
        interior = psi[(xs > 1e-9) & (xs < xs[-1] - 5.0)]
        sgn = np.sign(interior[np.abs(interior) > 0])
        changes = int(np.sum(sgn[:-1] != sgn[1:]))
        total = 2 * changes + (1 if st_.parity == "odd" else 0)
        assert total == st_.m


def test_transmission_against_closed_form(spectrum_of):
    pt = amplitudes(1.0, PotentialParams(1.0))
    r, t = transmission_numeric(1.0, PotentialParams(1.0))
    assert abs(abs(t) ** 2 - abs(pt.t) ** 2) <= 1e-4


def test_transmission_flux_conservation():
    r, t = transmission_numeric(0.7, PotentialParams(2.0))
    assert abs(abs(r) ** 2 + abs(t) ** 2 - 1.0) <= 1e-6


def test_transmission_vanishing_potential():
    r, t = transmission_numeric(1.0, PotentialParams(1e-4))
    assert abs(t) ** 2 >= 1.0 - 1e-6
    assert abs(r) ** 2 <= 1e-6


def test_transmission_validation():
    with pytest.raises(ValueError):
        transmission_numeric(0.0, PotentialParams(1.0))
    with pytest.raises(ValueError):
        transmission_numeric(1.0, PotentialParams(1.0), x_max=10.0)
