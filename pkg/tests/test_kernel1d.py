import csv

import numpy as np
import pytest
from scipy.special import jv

from pittka import kernel1d as K
from pittka.errors import DomainError


def test_kernel_params_validation():
    with pytest.raises(DomainError):
        K.KernelParams(-0.1, 1.0)
    with pytest.raises(DomainError):
        K.KernelParams(0.0, 1.0)
    assert K.KernelParams(0.3, 2 / 3).experimental


def test_quarter_closed_form():
    # k = 1/4, a = 1, xy > 0: g(t) = 2 cos t - sin t / t
    t = np.linspace(0.05, 30, 200)
    assert np.allclose(K.g_positive(0.25, t), 2 * np.cos(t) - np.sin(t) / t, atol=1e-12)


def test_g_positive_matches_bessel_derivative():
    k = 0.7
    t = np.linspace(0.5, 20, 30)
    from scipy.special import gamma, jvp
    g = 2 ** (2 * k) * gamma(2 * k) * t ** (1 - 2 * k) * jvp(2 * k, t)
    assert np.allclose(K.g_positive(k, t), g, atol=1e-12)


def test_kernel_at_origin_is_one():
    for kp in [K.KernelParams(0.5, 1.0), K.KernelParams(1.0, 2.0), K.KernelParams(0.3, 2 / 3)]:
        assert K.kernel_general(kp, 0.0, 1.7) == pytest.approx(1.0, abs=1e-14)


def test_a2_kernel_is_dunkl_kernel():
    # k = 0, a = 2: the kernel is e^{-i x y}
    kp = K.KernelParams(0.0, 2.0)
    x, y = 1.3, np.linspace(-4, 4, 17)
    assert np.allclose(K.kernel_general(kp, x, y), np.exp(-1j * x * y), atol=1e-12)


def test_two_bessel_form_agrees():
    k, t = 0.6, np.linspace(0.1, 15, 25)
    assert np.allclose(K.two_bessel_form(k, t, 1), K.g_positive(k, t), atol=1e-12)


def test_quarter_sup_is_2028():
    s = K.kernel_sup(0.25)
    assert s.sup == pytest.approx(2.028146109717125, rel=1e-10)
    assert s.argmax == pytest.approx(2.964635007768117, rel=1e-8)
    # independent check on a fine grid
    t = np.linspace(1e-6, 50, 2_000_001)
    assert np.max(np.abs(2 * np.cos(t) - np.sin(t) / t)) == pytest.approx(s.sup, rel=1e-9)


@pytest.mark.parametrize("k", [0.5, 0.7, 1.0, 2.0])
def test_sup_bounded_for_large_k(k):
    assert K.kernel_sup(k).sup <= 1 + 1e-9


def test_find_k0():
    k0, resid, tmin = K.find_k0(1e-6, details=True)
    assert abs(k0 - 0.44) <= 0.01 and resid <= 1e-6
    assert K.g_positive(k0, tmin) == pytest.approx(-1.0, abs=1e-6)


def test_growth_exponent():
    assert K.growth_exponent(0.1) == pytest.approx(0.3, abs=0.05)


def test_classification():
    assert K.classify_boundedness(1.0) == "bounded_by_1"
    assert K.classify_boundedness(0.25) == "bounded_above_1"


def test_integral_representation():
    for x, y in [(0.5, 1.3), (-0.7, 2.0)]:
        assert K.integral_representation_check(0.7, x, y) < 1e-10


def test_conjecture_scan_flags():
    out = K.conjecture_scan([(0.44, 1.0), (1.0, 1.0), (0.5, 2.0)])
    assert out[0]["flag"] == "only_sufficient"
    assert all(r["sup"] <= 1 + 1e-6 for r in out[1:])


def test_hausdorff_young():
    assert K.hausdorff_young_constant(2.0, 1.5) == pytest.approx(2 ** (1 / 3))
    assert K.hausdorff_young_constant(2.0, 2.0) == 1.0


def test_sweep_csv(tmp_path):
    path = tmp_path / "s.csv"
    K.export_sweep_csv(0.25, 1.0, [0.1, 0.2], [1.0, 0.9], str(path))
    rows = list(csv.reader(path.open()))
    assert rows[0] == ["k", "a", "t", "value"] and len(rows) == 3
