import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.integrate import quad

from pittka import corpus, gmclass as G
from pittka.acceptance import critical_example
from pittka.errors import DivergenceError, DomainError
from pittka.transform import TestFunction


def test_witness_validation():
    with pytest.raises(DomainError):
        G.GMWitness(1.0, 1.0)


@pytest.mark.parametrize("c", [2.0, np.e, 4.0])
def test_monotone_functions_certified(c):
    for f in corpus.monotone_corpus():
        assert G.gm_witness_search(f, c).C <= 1 / np.log(c) + 1e-6


def test_witness_certifies_on_grid():
    f = corpus.modulated_gaussian()
    wit = G.gm_witness_search(f, 2.0)
    assert wit.max_defect <= 1e-12
    assert G.gm_defect(f, G.GMWitness(0.5 * wit.C, 2.0)) > 0


def test_variation_tail_counts_support_jump():
    f = TestFunction("box", lambda r: np.where(np.asarray(r) < 1, 1.0, 0.0), decay="compact",
                     support=(0.0, 1.0), derivative=lambda r: np.zeros_like(np.asarray(r, dtype=float)))
    assert G.variation_tail(f, 0.5) == pytest.approx(1.0)
    assert G.variation_tail(f, 2.0) == 0.0


def test_ranges():
    two = G.gm_pitt_range(2, 2, 0.5, 1.0, "two-sided")
    assert (two.lower, two.upper) == (-0.25, 1.0)
    direct = G.gm_pitt_range(1.5, 3, 0.0, 2.0)
    assert direct.balance_residual(0.5, direct.gamma(0.5)) == 0.0
    with pytest.raises(DomainError):
        G.gm_pitt_range(3, 2, 0.0, 2.0, "direct")
    with pytest.raises(DomainError):
        G.gm_pitt_range(2, 2, 0.0, 2.0, "sideways")


def test_integral_condition_critical_example():
    for lam, a in [(0.0, 2.0), (0.5, 1.0)]:
        assert not G.integral_condition(critical_example(lam, a), lam, a)[0]
        assert G.integral_condition(critical_example(lam, a, 0.5), lam, a)[0]


def test_boas_sagher_dilation_invariance():
    vals = list(G.boas_sagher_ratios(corpus.exponential(), 2.0, 0.2, 0.0, 2.0).values())
    assert max(vals) - min(vals) <= 1e-6
    assert max(vals) <= G.boas_sagher_bound(0.2, 0.0, 2.0) * (1 + 1e-6)
    with pytest.raises(DomainError):
        G.boas_sagher_ratios(corpus.exponential(), 2.0, 1.5, 0.0, 2.0)


@settings(max_examples=25, deadline=None)
@given(st.floats(1.3, 4.0), st.floats(0.0, 2.0), st.floats(0.5, 3.0), st.floats(0.05, 0.95))
def test_holder_factor_against_quad(p, lam, a, frac):
    rng = G.gm_pitt_range(p, p, lam, a, "two-sided")
    beta = rng.lower + frac * (rng.upper - rng.lower)
    pc = p / (p - 1)
    d = 2 * lam + a - 1
    w = lambda r: r ** d if r < 1 else r ** (lam + a / 4 - 1)
    h = lambda r: (r ** (-beta - d / p) * w(r)) ** pc
    val = quad(h, 0, 1, limit=200)[0] + quad(h, 1, np.inf, limit=200)[0]
    assert G.holder_factor(p, beta, lam, a) == pytest.approx(val ** (1 / pc), rel=1e-6)


def test_holder_factor_diverges_outside_range():
    with pytest.raises(DivergenceError):
        G.holder_factor(2.0, 1.5, 0.5, 1.0)


def test_holder_chain_bound():
    assert G.remark_bound_check(corpus.exponential(), 2.0, 0.2, 0.5, 1.0) <= 1e-9
