import numpy as np
import pytest

from pittka import corpus, fka1d as F
from pittka.errors import UnsupportedParameterError
from pittka.pitt import FkaParams

POINTS = [FkaParams(0.0, 2.0), FkaParams(0.5, 1.0), FkaParams(1.0, 2.0), FkaParams(0.5, 2 / 3)]


def test_parity_decompose():
    pf = F.parity_decompose(lambda x: np.exp(-x * x) * (1 + x))
    x = np.linspace(0.1, 3, 7)
    assert np.allclose(pf.even(x), np.exp(-x * x))
    assert np.allclose(pf.odd_over_r(x), np.exp(-x * x))


@pytest.mark.parametrize("pf", corpus.parity_corpus(), ids=lambda p: p.name)
@pytest.mark.parametrize("params", POINTS[:2], ids=str)
def test_plancherel(pf, params):
    assert F.fka_plancherel_defect(pf, params) <= 1e-6 * F.fka_norm(pf, params)


def test_fourier_case_matches_numpy():
    # k = 0, a = 2 is the unitary Fourier transform
    pf = F.as_parity(corpus.gaussian())
    y = np.array([0.0, 0.7, -1.5])
    assert np.allclose(F.fka_transform(pf, FkaParams(0.0, 2.0), y), np.exp(-y * y / 2), atol=1e-10)


def test_inversion_family():
    assert F.inversion_family(1.0) == ("identity", 1)
    assert F.inversion_family(2.0) == ("reflection", 0)
    assert F.inversion_family(0.7) is None
    with pytest.raises(UnsupportedParameterError):
        F.inversion_roundtrip(corpus.parity_corpus()[1], FkaParams(0.5, 0.7))


@pytest.mark.parametrize("params", [FkaParams(0.5, 1.0), FkaParams(0.0, 2.0)], ids=str)
def test_inversion_roundtrip(params):
    assert F.inversion_roundtrip(corpus.parity_corpus()[3], params) <= 1e-6


@pytest.mark.parametrize("params", POINTS, ids=str)
def test_eigenfunctions(params):
    for n in (0, 1):
        for s in range(0, 6, 2):
            assert F.eigen_defect(F.BasisIndex(n, s), params) <= 1e-6


@pytest.mark.parametrize("params", POINTS, ids=str)
def test_gram(params):
    assert F.gram_defect(1, 5, params) <= 1e-8


def test_translation_contracts():
    pf = corpus.parity_corpus()[0]
    params = FkaParams(1.0, 1.0)
    assert F.translation_norm_check(0.0, pf, params) == pytest.approx(1.0, abs=1e-9)
    assert F.translation_norm_check(0.8, pf, params) <= 1 + 1e-9
