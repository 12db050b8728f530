import pytest

from expwell import PotentialParams, find_spectrum, normalize

_SPECTRA = {}
_NORMALIZED = {}


@pytest.fixture(scope="session")
def spectrum_of():
    """Session-cached spectra so expensive scans run once per coupling."""

    def get(g: float):
        if g not in _SPECTRA:
            _SPECTRA[g] = find_spectrum(PotentialParams(g))
        return _SPECTRA[g]

    return get


@pytest.fixture(scope="session")
def normalized_spectrum_of(spectrum_of):
    def get(g: float):
        if g not in _NORMALIZED:
            _NORMALIZED[g] = normalize(spectrum_of(g))
        return _NORMALIZED[g]

    return get
