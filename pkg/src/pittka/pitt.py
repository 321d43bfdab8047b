"""Pitt-type inequalities for the a-deformed Hankel transform.

Admissibility of (p, q, beta, gamma), the sharp L2 constant c(beta, lam, a),
the empirical Pitt quotient and a near-extremal probe family, plus the
logarithmic and Heisenberg uncertainty functionals for the d=1 transform.
"""
import csv
from dataclasses import dataclass, field

import numpy as np
from scipy import special as sc

from .errors import DegenerateInputError, DomainError
from .specfun import digamma
from .transform import (MeasureSpec, TestFunction, normalization_b, transform_log_moment,
                        transform_norm, weighted_integral, weighted_norm)

BALANCE_TOL = 1e-12


@dataclass(frozen=True)
class PittParams:
    p: float
    q: float
    beta: float
    gamma: float
    lam: float
    a: float = 2.0
    p_conj: float = field(init=False)

    def __post_init__(self):
        if not (1 < self.p < np.inf and 1 < self.q < np.inf):
            raise DomainError("p and q must lie in (1, inf)")
        if not self.a > 0:
            raise DomainError("a must be positive")
        object.__setattr__(self, "p_conj", self.p / (self.p - 1))

    @property
    def measure(self):
        return MeasureSpec(self.lam, self.a)


@dataclass(frozen=True)
class FkaParams:
    """Multiplicity k and deformation a of the d-dimensional transform."""
    k: float
    a: float
    d: int = 1

    def __post_init__(self):
        if int(self.d) != self.d or self.d < 1:
            raise DomainError("d must be a positive integer")
        if self.k < 0 or not self.a > 0:
            raise DomainError("need k >= 0 and a > 0")
        if not 2 * self.lam + self.a > 0:
            raise DomainError(f"2 lam_k + a must be positive (lam_k={self.lam})")

    @property
    def lam(self):
        return self.d / 2 - 1 + self.k


@dataclass(frozen=True)
class AdmissibilityVerdict:
    admissible: bool
    failed: str = "none"

    def __bool__(self):
        return self.admissible


def admissible(params):
    """First failed condition among p<=q, balance, lower-bound, upper-bound."""
    P = params
    if 4 * P.lam + P.a < 0:
        raise DomainError("4 lam + a must be nonnegative")
    if P.p > P.q:
        return AdmissibilityVerdict(False, "p≤q")
    shift = 1 / P.p_conj - 1 / P.q
    if abs(P.beta - P.gamma - (2 * P.lam + P.a) * shift) > BALANCE_TOL:
        return AdmissibilityVerdict(False, "balance")
    lower = (0.5 - 1 / P.p) * (2 * P.lam + P.a / 2) + (P.a / 2) * max(shift, 0.0)
    if P.beta < lower - BALANCE_TOL:
        return AdmissibilityVerdict(False, "lower-bound")
    if not P.beta < (2 * P.lam + P.a) / P.p_conj:
        return AdmissibilityVerdict(False, "upper-bound")
    return AdmissibilityVerdict(True, "none")


def _c_formula(beta, lam, a):
    # unchecked; also valid for small negative beta (used by the derivative check)
    return np.exp(-2 * beta / a * np.log(a) + sc.gammaln((lam + a / 2 - beta) / a)
                  - sc.gammaln((lam + a / 2 + beta) / a))


def sharp_constant(beta, lam, a=2.0):
    """c(beta, lam, a) = a^{-2beta/a} G((lam+a/2-beta)/a) / G((lam+a/2+beta)/a)."""
    beta, lam, a = float(beta), float(lam), float(a)
    if not a > 0 or not 2 * lam + a > 0:
        raise DomainError("need a > 0 and 2 lam + a > 0")
    if not 0 <= beta < lam + a / 2:
        raise DomainError(f"beta={beta} outside [0, {lam + a / 2})")
    if beta == 0:
        return 1.0
    return float(_c_formula(beta, lam, a))


def sharp_constant_fka(beta, params, n=0):
    """Sharp constant for the n-th harmonic component of the d-dim transform."""
    if int(n) != n or n < 0:
        raise DomainError("n must be a nonnegative integer")
    return sharp_constant(beta, params.lam + n, params.a)


def scaling_identity_defect(beta, lam, a):
    """|c(beta,lam,a) - (a/2)^{-2beta/a} c(2beta/a, 2lam/a, 2)|."""
    lhs = sharp_constant(beta, lam, a)
    rhs = (a / 2) ** (-2 * beta / a) * sharp_constant(2 * beta / a, 2 * lam / a, 2.0)
    return abs(lhs - rhs)


def export_constants_csv(rows, path):
    """rows of (beta, lam, a) -> CSV with columns beta, lam, a, c."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["beta", "lambda", "a", "c"])
        for beta, lam, a in rows:
            w.writerow([repr(float(beta)), repr(float(lam)), repr(float(a)),
                        repr(sharp_constant(beta, lam, a))])
    return path


def pitt_quotient(f, params, rtol=1e-11):
    """||rho^-gamma H f||_q / ||r^beta f||_p in the nu_{lam,a} measure."""
    m = params.measure
    den = weighted_norm(f, params.p, params.beta, m)
    if den == 0:
        raise DegenerateInputError("||r^beta f||_p vanishes")
    num = transform_norm(f, m, params.q, params.gamma, rtol)
    return num / den


# ------------------------------------------------------------ sharpness probe

def _smoothstep(u):
    u = np.clip(u, 0.0, 1.0)
    with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
        x = np.where(u > 0, np.exp(-1 / np.where(u > 0, u, 1)), 0.0)
        y = np.where(u < 1, np.exp(-1 / np.where(u < 1, 1 - u, 1)), 0.0)
    return x / (x + y)


def cutoff(eps):
    """C-infinity window: 1 on [eps, 1/eps], 0 off [eps/2, 2/eps], log-scale ramps."""
    eps = float(eps)
    ln2 = np.log(2.0)

    def w(r):
        r = np.asarray(r, dtype=float)
        with np.errstate(divide="ignore"):
            lr = np.log(np.where(r > 0, r, 1e-300))
        up = _smoothstep((lr - np.log(eps / 2)) / ln2)
        down = _smoothstep((np.log(2 / eps) - lr) / ln2)
        return up * down
    return w


def probe_function(beta, lam, a, eps):
    """r^{-(lam+a/2)-beta} times the cutoff; nearly extremal as eps -> 0."""
    w = cutoff(eps)
    power = -(lam + a / 2) - beta
    return TestFunction(f"probe[{beta!r},{lam!r},{a!r},{eps!r}]",
                        lambda r: np.asarray(r, dtype=float) ** power * w(r),
                        decay="compact", support=(eps / 2, 2 / eps), scale=eps,
                        breakpoints=(eps / 2, eps, 1 / eps, 2 / eps), smoothness="schwartz0")


def sharpness_probe(beta, lam, a, eps, rtol=1e-9):
    """Pitt quotient (p=q=2, gamma=beta) of the near-extremal family."""
    if not 0 < beta < lam + a / 2:
        raise DomainError("need 0 < beta < lam + a/2")
    f = probe_function(beta, lam, a, eps)
    return pitt_quotient(f, PittParams(2.0, 2.0, beta, beta, lam, a), rtol)


# ------------------------------------------------------ uncertainty principles

def log_up_constant(params):
    """(2/a){psi(lam_k/a + 1/2) + ln a}."""
    a = params.a
    return (2 / a) * (digamma(params.lam / a + 0.5) + np.log(a))


def _check_d1(params):
    if params.d != 1:
        raise DomainError("uncertainty functionals are implemented for d = 1")


def _parity_pieces(pf, params):
    """(function, measure, weight) triples whose nu-integrals add up to mu-integrals."""
    lam, a = params.lam, params.a
    out = []
    if pf.even is not None:
        out.append((pf.even, MeasureSpec(lam, a), abs(pf.ce) ** 2))
    if pf.odd is not None:
        out.append((pf.odd, MeasureSpec(lam, a), abs(pf.co) ** 2))
    return out


def _odd_transform_pieces(pf, params):
    # |rho H_{lam+1}(f_o/r)|^2 d nu_lam = (b_lam/b_{lam+1}) |H_{lam+1}(f_o/r)|^2 d nu_{lam+1}
    lam, a = params.lam, params.a
    ratio = normalization_b(lam, a) / normalization_b(lam + 1, a)
    return pf.odd_over_r, MeasureSpec(lam + 1, a), ratio * abs(pf.co) ** 2


def log_up_gap(pf, params):
    """int ln|x| |f|^2 dmu + int ln|y| |F f|^2 dmu - constant * ||f||^2."""
    _check_d1(params)
    from .fka1d import as_parity, fka_norm
    pf = as_parity(pf)
    lhs = 0.0
    for g, m, w in _parity_pieces(pf, params):
        lhs += w * weighted_integral(g, 2.0, 0.0, m, log=True).value
    lam, a = params.lam, params.a
    if pf.even is not None:
        lhs += abs(pf.ce) ** 2 * transform_log_moment(pf.even, MeasureSpec(lam, a))
    if pf.odd is not None:
        g, m, w = _odd_transform_pieces(pf, params)
        # ln rho |rho H|^2 d nu_lam = ratio * ln rho |H|^2 d nu_{lam+1}
        lhs += w * transform_log_moment(g, m)
    return float(lhs - log_up_constant(params) * fka_norm(pf, params) ** 2)


def heisenberg_constant(params):
    """Best constant in ||x|^{a/2} f|| ||y|^{a/2} F f|| >= C ||f||^2."""
    return (2 * params.lam + params.a) / 2


def heisenberg_defect(pf, params):
    """||x|^{a/2} f|| ||y|^{a/2} F f|| - heisenberg_constant ||f||^2."""
    _check_d1(params)
    from .fka1d import as_parity, fka_norm, fka_transform_norm
    pf = as_parity(pf)
    a = params.a
    x_side = fka_norm(pf, params, beta=a / 2)
    y_side = fka_transform_norm(pf, params, gamma=-a / 2)
    return float(x_side * y_side - heisenberg_constant(params) * fka_norm(pf, params) ** 2)


def derivative_identity_defect(params, h=1e-5):
    """Central difference of c^2(beta/2, lam_k, a) at 0 against minus the log-UP constant."""
    lam, a = params.lam, params.a
    c2 = lambda b: _c_formula(b / 2, lam, a) ** 2
    deriv = (c2(h) - c2(-h)) / (2 * h)
    return float(abs(deriv + log_up_constant(params)))


def proof_chain_check(pf, params, beta):
    """Parity-wise Pitt chain for the d=1 transform with gamma = beta.

    Returns a dict with the direct transform-side norm, the parity-wise
    bound sum_n c(beta, lam+n, a)^2 ||r^beta f_n||^2 and the overall bound
    C(beta,k,a)^2 ||x^beta f||^2 (all squared).
    """
    _check_d1(params)
    from .fka1d import as_parity, fka_norm, fka_transform_norm
    pf = as_parity(pf)
    lam, a = params.lam, params.a
    direct = fka_transform_norm(pf, params, gamma=beta) ** 2
    parts = 0.0
    if pf.even is not None:
        parts += sharp_constant(beta, lam, a) ** 2 * abs(pf.ce) ** 2 * weighted_norm(pf.even, 2, beta, MeasureSpec(lam, a)) ** 2
    if pf.odd is not None:
        parts += sharp_constant(beta, lam + 1, a) ** 2 * abs(pf.co) ** 2 * weighted_norm(pf.odd, 2, beta, MeasureSpec(lam, a)) ** 2
    overall = sharp_constant(beta, lam, a) ** 2 * fka_norm(pf, params, beta=beta) ** 2
    return {"direct": direct, "parity_bound": parts, "overall_bound": overall,
            "ok": bool(direct <= parts * (1 + 1e-6) and parts <= overall * (1 + 1e-12))}
