import csv

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.special import gamma

from pittka import corpus, pitt as P
from pittka.errors import DomainError
from pittka.fka1d import as_parity


def c_oracle(beta, lam, a):
    return a ** (-2 * beta / a) * gamma((lam + a / 2 - beta) / a) / gamma((lam + a / 2 + beta) / a)


@pytest.mark.parametrize("beta,lam,a,frozen", [
    (0.5, 0.0, 2.0, 2.092099240106203),
    (0.5, 0.5, 2.0, 1.2533141373155001),
    (0.25, 0.5, 1.0, 1.3519564801345694),
])
def test_sharp_constant_frozen(beta, lam, a, frozen):
    assert P.sharp_constant(beta, lam, a) == pytest.approx(frozen, rel=1e-13)
    assert P.sharp_constant(beta, lam, a) == pytest.approx(c_oracle(beta, lam, a), rel=1e-12)


def test_sharp_constant_beta_zero_is_one():
    for lam, a in [(0.0, 2.0), (1.3, 0.5), (-0.2, 1.0)]:
        assert P.sharp_constant(0.0, lam, a) == 1.0


def test_sharp_constant_outside_range():
    with pytest.raises(DomainError):
        P.sharp_constant(1.0, 0.0, 2.0)


@settings(max_examples=60, deadline=None)
@given(st.floats(0.0, 3.0), st.floats(0.3, 4.0), st.floats(0.0, 0.99))
def test_scaling_identity(lam, a, frac):
    beta = frac * (lam + a / 2)
    assert P.scaling_identity_defect(beta, lam, a) <= 1e-12


@settings(max_examples=40, deadline=None)
@given(st.floats(0.05, 4.0), st.floats(0.05, 4.0), st.floats(0.5, 3.0))
def test_monotone_in_lambda(l1, l2, a):
    beta = 0.1
    lo, hi = sorted((l1, l2))
    assert P.sharp_constant(beta, hi, a) <= P.sharp_constant(beta, lo, a) + 1e-14


def test_admissibility_reasons():
    assert P.admissible(P.PittParams(2, 2, 0.3, 0.3, 0.5, 2)).admissible
    assert P.admissible(P.PittParams(3, 2, 0.3, 0.3, 0.5, 2)).failed == "p≤q"
    assert P.admissible(P.PittParams(2, 2, 1.0, 1.0, 0.0, 2)).failed == "upper-bound"
    assert P.admissible(P.PittParams(2, 2, 0.3, 0.2, 0.5, 2)).failed == "balance"


@pytest.mark.parametrize("f", corpus.regular_corpus(), ids=lambda f: f.name)
def test_pitt_bound_on_corpus(f):
    pp = P.PittParams(2, 2, 0.3, 0.3, 0.5, 2.0)
    assert P.pitt_quotient(f, pp) <= P.sharp_constant(0.3, 0.5, 2.0) * (1 + 1e-6)


def test_sharpness_probe_approaches_constant():
    assert P.sharpness_probe(0.3, 1.0, 2.0, 1e-3) >= 0.95


def test_fka_constants_match_parity_orders():
    fp = P.FkaParams(0.5, 1.0)
    assert fp.lam == 0.0
    assert P.sharp_constant_fka(0.2, fp) == P.sharp_constant(0.2, 0.0, 1.0)
    assert P.sharp_constant_fka(0.2, fp, 1) == P.sharp_constant(0.2, 1.0, 1.0)


def test_heisenberg_equality_for_deformed_gaussian():
    for k, a in [(0.5, 1.0), (1.0, 2.0)]:
        fp = P.FkaParams(k, a)
        for c in (1 / a, 2.0):
            pf = as_parity(corpus.deformed_gaussian(a, c))
            assert abs(P.heisenberg_defect(pf, fp)) < 1e-7
    assert P.heisenberg_constant(P.FkaParams(0.5, 1.0)) == 0.5


def test_log_up_gap_gaussian_positive():
    gap = P.log_up_gap(as_parity(corpus.gaussian()), P.FkaParams(0.5, 2.0))
    assert gap == pytest.approx(np.log(2) / 2, abs=1e-7)


def test_log_up_constant_is_beta_derivative():
    assert P.derivative_identity_defect(P.FkaParams(0.5, 1.0)) < 1e-6
    assert P.derivative_identity_defect(P.FkaParams(1.0, 2.0)) < 1e-6


def test_proof_chain():
    out = P.proof_chain_check(corpus.parity_corpus()[2], P.FkaParams(0.5, 1.0), 0.2)
    assert out["ok"] and out["direct"] <= out["parity_bound"] <= out["overall_bound"] + 1e-12


def test_export_constants_csv(tmp_path):
    path = tmp_path / "c.csv"
    P.export_constants_csv([(0.5, 0.0, 2.0), (0.0, 1.0, 1.0)], str(path))
    rows = list(csv.reader(path.open()))
    assert len(rows) == 3
    assert float(rows[1][-1]) == pytest.approx(2.092099240106203, rel=1e-12)
