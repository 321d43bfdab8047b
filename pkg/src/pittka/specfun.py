"""Gamma, digamma, Bessel and Laguerre functions of real order.

Production values come from scipy.special (Cephes/Amos); the ascending
series, the Hankel asymptotic expansion and the explicit Laguerre sum are
kept here as independent oracles for the tests.
"""
from dataclasses import dataclass

import numpy as np
from scipy import special as sc

from .errors import DomainError


@dataclass(frozen=True)
class BesselOrder:
    value: float

    def __post_init__(self):
        if not self.value > -1:
            raise DomainError(f"Bessel order must exceed -1, got {self.value}")

    @property
    def admissible(self):
        return self.value > -1


@dataclass(frozen=True)
class LaguerreIndex:
    degree: int
    parameter: float

    def __post_init__(self):
        if int(self.degree) != self.degree or self.degree < 0:
            raise DomainError(f"Laguerre degree must be a nonnegative integer, got {self.degree}")
        if not self.parameter > -1:
            raise DomainError(f"Laguerre parameter must exceed -1, got {self.parameter}")


def _order(nu):
    nu = nu.value if isinstance(nu, BesselOrder) else float(nu)
    if not nu > -1:
        raise DomainError(f"Bessel order must exceed -1, got {nu}")
    return nu


def _positive(x, name="x"):
    x = np.asarray(x, dtype=float)
    if np.any(~(x > 0)):
        raise DomainError(f"{name} must be positive")
    return x


def _scalar_or_array(x, like):
    return float(x) if np.ndim(like) == 0 else x


def log_gamma(x):
    """ln Gamma(x) for x > 0."""
    xa = _positive(x)
    return _scalar_or_array(sc.gammaln(xa), x)


def digamma(x):
    """psi(x) = Gamma'(x)/Gamma(x) for x > 0."""
    xa = _positive(x)
    return _scalar_or_array(sc.psi(xa), x)


def gamma_ratio(x, y):
    """Gamma(x)/Gamma(y) through log-gamma differences."""
    return float(np.exp(log_gamma(x) - log_gamma(y)))


def bessel_j(nu, t):
    """J_nu(t) for nu > -1, t >= 0."""
    nu = _order(nu)
    ta = np.asarray(t, dtype=float)
    if np.any(ta < 0):
        raise DomainError("Bessel argument must be nonnegative")
    return _scalar_or_array(sc.jv(nu, ta), t)


def bessel_j_series(nu, t, terms=200):
    """Ascending series for J_nu(t); accurate for moderate t only."""
    nu = _order(nu)
    t = float(t)
    if t == 0.0:
        return 1.0 if nu == 0 else 0.0
    term = np.exp(nu * np.log(t / 2) - sc.gammaln(nu + 1))
    total = term
    q = -(t * t) / 4
    for m in range(terms):
        term *= q / ((m + 1) * (m + nu + 1))
        total += term
        if abs(term) < 1e-18 * max(abs(total), 1e-300) and m > t:
            break
    return float(total)


def bessel_j_asymptotic(nu, t, terms=30):
    """Hankel large-argument expansion J ~ sqrt(2/(pi t)) (P cos chi - Q sin chi)."""
    nu = float(nu)
    t = float(t)
    mu = 4 * nu * nu
    chi = t - (nu / 2 + 0.25) * np.pi
    P, Q = 0.0, 0.0
    a = 1.0
    last = np.inf
    for k in range(2 * terms):
        if k > 0:
            a *= (mu - (2 * k - 1) ** 2) / (k * 8 * t)
        if abs(a) > last and k > 2:
            break  # series started to diverge
        last = abs(a)
        sign = (-1) ** (k // 2)
        if k % 2 == 0:
            P += sign * a
        else:
            Q += sign * a
    return float(np.sqrt(2 / (np.pi * t)) * (P * np.cos(chi) - Q * np.sin(chi)))


def _bessel_norm_const(lam):
    return np.exp(lam * np.log(2.0) + sc.gammaln(lam + 1))


def normalized_bessel(lam, t):
    """j_lam(t) = 2^lam Gamma(lam+1) t^-lam J_lam(t), with j_lam(0) = 1."""
    lam = _order(lam)
    ta = np.abs(np.asarray(t, dtype=float))
    out = np.empty_like(ta)
    small = ta * ta < 0.1 * (lam + 1)
    if np.any(small):
        # 0F1(; lam+1; -t^2/4), ten terms is far below roundoff here
        q = -(ta[small] ** 2) / 4
        term = np.ones_like(q)
        acc = np.ones_like(q)
        for m in range(10):
            term = term * q / ((m + 1) * (m + lam + 1))
            acc = acc + term
        out[small] = acc
    big = ~small
    if np.any(big):
        tb = ta[big]
        out[big] = np.exp(lam * np.log(2.0 / tb) + sc.gammaln(lam + 1)) * sc.jv(lam, tb)
    return _scalar_or_array(out, t)


def modulated_bessel(lam, t):
    """Complex m with j_lam(t) = Re[m(t) e^{it}] for t > 0; m is slowly varying."""
    lam = _order(lam)
    ta = np.asarray(t, dtype=float)
    return np.exp(lam * np.log(2.0 / ta) + sc.gammaln(lam + 1)) * sc.hankel1e(lam, ta)


def bessel_j_derivative(nu, t):
    """J_nu'(t) = (J_{nu-1}(t) - J_{nu+1}(t))/2 for nu > 0."""
    nu = float(nu)
    if not nu > 0:
        raise DomainError("derivative order must be positive")
    ta = np.asarray(t, dtype=float)
    if np.any(ta < 0):
        raise DomainError("Bessel argument must be nonnegative")
    if np.any(ta == 0) and nu < 1:
        raise DomainError("J_nu' is singular at 0 for nu < 1")
    out = 0.5 * (sc.jv(nu - 1, ta) - sc.jv(nu + 1, ta))
    return _scalar_or_array(out, t)


def laguerre(s, lam, t=None):
    """Generalized Laguerre L_s^(lam)(t) by the three-term recurrence.

    Accepts either (LaguerreIndex, t) or (s, lam, t).
    """
    if isinstance(s, LaguerreIndex):
        idx, t = s, lam
    else:
        idx = LaguerreIndex(int(s), float(lam))
    n, a = idx.degree, idx.parameter
    ta = np.asarray(t, dtype=float)
    prev = np.ones_like(ta)
    if n == 0:
        return _scalar_or_array(prev, t)
    cur = a + 1 - ta
    for m in range(1, n):
        prev, cur = cur, ((2 * m + a + 1 - ta) * cur - (m + a) * prev) / (m + 1)
    return _scalar_or_array(cur, t)


def laguerre_sum(s, lam, t):
    """Explicit alternating sum for L_s^(lam)(t); oracle for small s."""
    t = np.asarray(t, dtype=float)
    out = np.zeros_like(t)
    for j in range(s + 1):
        c = np.exp(sc.gammaln(lam + s + 1) - sc.gammaln(s - j + 1) - sc.gammaln(lam + j + 1) - sc.gammaln(j + 1))
        out = out + (-1) ** j * c * t ** j
    return out
