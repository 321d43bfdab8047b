import numpy as np
import pytest

from pittka import corpus
from pittka import transform as T
from pittka.errors import DomainError

PARAMS = [(0.0, 2.0), (1.0, 2.0), (0.5, 1.0), (0.25, 0.5), (-0.5, 2.0)]


def test_normalization_b_classical():
    # b^{-1} = 2^{1/2} Gamma(3/2) at lam = 1/2, a = 2
    assert T.normalization_b(0.5, 2.0) == pytest.approx(np.sqrt(2 / np.pi), rel=1e-14)
    assert T.normalization_b(0.0, 1.0) == 1.0
    with pytest.raises(DomainError):
        T.normalization_b(-1.0, 1.0)


def test_measure_substitution_roundtrip():
    m = T.MeasureSpec(0.3, 0.7)
    r = np.geomspace(1e-3, 1e3, 9)
    assert np.allclose(m.r_of_s(m.s_of_r(r)), r, rtol=1e-14)
    assert m.order == pytest.approx(2 * 0.3 / 0.7)


@pytest.mark.parametrize("lam,a", PARAMS)
def test_gaussian_family_is_fixed(lam, a):
    f = corpus.deformed_gaussian(a)
    m = T.MeasureSpec(lam, a)
    rho = np.array([0.0, 0.3, 1.0, 2.5])
    assert np.allclose(T.hankel_deformed(f, m, rho), f(rho), atol=1e-10)


def test_known_transforms_of_corpus():
    rho = np.array([0.2, 1.0, 3.0])
    for f in corpus.regular_corpus():
        for lam, a in PARAMS[:4]:
            if f.known_transform is None:
                continue
            exact = f.known_transform(rho, lam, a)
            if exact is None:
                continue
            got = T.hankel_deformed(f, T.MeasureSpec(lam, a), rho)
            assert np.allclose(got, exact, atol=1e-9), (f.name, lam, a)


def test_direct_quadrature_agrees_with_reduction():
    f = corpus.exponential()
    m = T.MeasureSpec(0.25, 0.5)
    rho = np.array([0.5, 1.5])
    assert np.allclose(T.hankel_deformed_direct(f, m, rho), T.hankel_deformed(f, m, rho), atol=1e-8)


@pytest.mark.parametrize("lam,a", PARAMS)
def test_plancherel_and_involution(lam, a):
    f = corpus.sech()
    m = T.MeasureSpec(lam, a)
    assert T.plancherel_defect(f, m) < 1e-8
    assert T.involution_defect(f, m) < 1e-8


def test_dilation_rule():
    f = corpus.gaussian()
    assert T.dilation_defect(f, T.MeasureSpec(0.5, 1.0), 2.0, np.array([0.3, 1.0])) < 1e-9


def test_weighted_norm_gaussian_closed_form():
    from scipy.special import gamma
    lam, beta = 0.5, 0.3
    m = T.MeasureSpec(lam, 2.0)
    got = T.weighted_norm(corpus.gaussian(), 2.0, beta, m)
    # closed form: int r^{2 beta + 2 lam + 1} e^{-r^2} dr = Gamma(lam+beta+1)/2
    assert got == pytest.approx(np.sqrt(m.b * gamma(lam + beta + 1) / 2), rel=1e-10)


def test_export_csv_stream(tmp_path):
    path = tmp_path / "t.csv"
    T.export_csv(corpus.gaussian(), T.MeasureSpec(0.0, 2.0), np.array([0.0, 1.0]), str(path))
    lines = path.read_text().splitlines()
    assert lines[0] == "rho,value,error_estimate" and len(lines) == 3
