"""The kernel B_{k,a}(x, y) of the one-dimensional transform.

B is a sum of two normalized Bessel functions of z = (2/a)|xy|^{a/2}.  At
a = 1 it collapses to j_{2k}(t) for xy <= 0 and to
g_k(t) = 2^{2k} Gamma(2k) t^{1-2k} J'_{2k}(t) for xy >= 0, t = 2|xy|^{1/2};
most of this module studies sup |g_k|.
"""
import csv
from dataclasses import dataclass

import numpy as np
from scipy import optimize
from scipy import special as sc

from .errors import ConvergenceError, DomainError
from .quadrature import integrate_finite
from .specfun import normalized_bessel

SUP_TOL = 1e-9
GROWTH_T = (50.0, 100.0, 200.0, 400.0)


@dataclass(frozen=True)
class KernelParams:
    k: float
    a: float = 1.0

    def __post_init__(self):
        if self.k < 0 or not self.a > 0:
            raise DomainError("need k >= 0 and a > 0")
        if not 2 * self.k + 1 + self.a > 2:
            raise DomainError("need 2k + 1 + a > 2")

    @property
    def orders(self):
        return (2 * self.k - 1) / self.a, (2 * self.k + 1) / self.a

    @property
    def experimental(self):
        return self.a not in (1.0, 2.0)


@dataclass(frozen=True)
class SweepResult:
    sup: float
    argmax: float
    t_range: tuple
    samples: int
    refined: bool


def _z(params, x, y):
    return (2 / params.a) * np.abs(np.asarray(x, dtype=float) * np.asarray(y, dtype=float)) ** (params.a / 2)


def kernel_even(params, x, y):
    """j_{(2k-1)/a}((2/a)|xy|^{a/2})."""
    return normalized_bessel(params.orders[0], _z(params, x, y))


def _odd_factor(params):
    # Gamma(nu0+1)/Gamma(nu1+1) / (a i)^{2/a}, principal branch
    nu0, nu1 = params.orders
    a = params.a
    ratio = np.exp(sc.gammaln(nu0 + 1) - sc.gammaln(nu1 + 1))
    return ratio * a ** (-2 / a) * np.exp(-1j * np.pi / a)


def kernel_odd_over_y(params, x, y):
    """(B(x, y) - B(x, -y)) / (2y) for y != 0, an even function of y."""
    x = np.asarray(x, dtype=float)
    return _odd_factor(params) * x * normalized_bessel(params.orders[1], _z(params, x, y))


def kernel_general(params, x, y):
    """Complex B_{k,a}(x, y) from the two-Bessel formula."""
    xy = np.asarray(x, dtype=float) * np.asarray(y, dtype=float)
    z = _z(params, x, y)
    nu0, nu1 = params.orders
    out = normalized_bessel(nu0, z) + _odd_factor(params) * xy * normalized_bessel(nu1, z)
    return complex(out) if np.ndim(out) == 0 else out


def two_bessel_form(k, t, sign):
    """j_{2k-1}(t) - sign (t/2)^2 / (2k(2k+1)) j_{2k+1}(t)."""
    t = np.asarray(t, dtype=float)
    return normalized_bessel(2 * k - 1, t) - sign * (t / 2) ** 2 / (2 * k * (2 * k + 1)) * normalized_bessel(2 * k + 1, t)


def g_positive(k, t):
    """2^{2k} Gamma(2k) t^{1-2k} J'_{2k}(t), equal to 1 at t = 0."""
    k = float(k)
    if not k > 0:
        raise DomainError("k must be positive")
    ta = np.abs(np.asarray(t, dtype=float))
    nu = 2 * k
    out = np.empty_like(ta)
    small = ta < 1e-3
    out[small] = two_bessel_form(k, ta[small], 1.0)
    tb = ta[~small]
    dJ = 0.5 * (sc.jv(nu - 1, tb) - sc.jv(nu + 1, tb))
    out[~small] = np.exp(nu * np.log(2.0) + sc.gammaln(nu)) * tb ** (1 - nu) * dJ
    return float(out) if np.ndim(t) == 0 else out


def g_derivative(k, t):
    """d g_k / dt = C t^{-2k} [-2k J' - t J + (2k)^2 J / t]."""
    nu = 2 * float(k)
    t = np.asarray(t, dtype=float)
    J = sc.jv(nu, t)
    dJ = 0.5 * (sc.jv(nu - 1, t) - sc.jv(nu + 1, t))
    C = np.exp(nu * np.log(2.0) + sc.gammaln(nu))
    return C * t ** (-nu) * (-nu * dJ - t * J + nu * nu * J / t)


def kernel_a1(k, x, y):
    """Piecewise a=1 kernel: j_{2k}(t) if xy <= 0, g_k(t) if xy > 0."""
    if not k > 0:
        raise DomainError("k must be positive")
    xy = np.asarray(x, dtype=float) * np.asarray(y, dtype=float)
    t = 2 * np.sqrt(np.abs(xy))
    out = np.where(xy > 0, g_positive(k, t), normalized_bessel(2 * k, t))
    return float(out) if np.ndim(out) == 0 else out


# ------------------------------------------------------------------ sweeps

def _refine_extrema(k, t, v):
    """Polish each interior extremum of g_k on the grid with a root of g'."""
    best_v, best_t = np.abs(v).max(), t[np.abs(v).argmax()]
    for i in range(1, len(t) - 1):
        if abs(v[i]) >= abs(v[i - 1]) and abs(v[i]) >= abs(v[i + 1]):
            lo, hi = t[i - 1], t[i + 1]
            dlo, dhi = g_derivative(k, lo), g_derivative(k, hi)
            if dlo * dhi < 0:
                ts = optimize.brentq(lambda s: g_derivative(k, s), lo, hi, xtol=1e-13, rtol=1e-15)
                vs = abs(g_positive(k, ts))
                if vs > best_v:
                    best_v, best_t = vs, ts
    return best_v, best_t


def kernel_sup(k, t_max=50.0, samples=4000):
    """sup of |g_k| over (0, t_max]: grid, then refinement of bracketed extrema."""
    t = np.linspace(0.0, float(t_max), int(samples) + 1)[1:]
    v = g_positive(k, t)
    sup, arg = _refine_extrema(k, t, v)
    # g_k(0+) = 1
    if 1.0 > sup:
        sup, arg = 1.0, 0.0
    return SweepResult(float(sup), float(arg), (0.0, float(t_max)), int(samples), True)


def first_minimum(k, t_lo=0.1, t_hi=40.0):
    """(t, value) of the first local minimum of g_k on (t_lo, t_hi)."""
    step = np.pi / 16  # zeros of J' are ~pi apart
    t = np.arange(t_lo, t_hi + step, step)
    d = g_derivative(k, t)
    idx = np.nonzero((d[:-1] < 0) & (d[1:] >= 0))[0]
    if len(idx) == 0:
        raise ConvergenceError(f"no minimum of g_k found on [{t_lo}, {t_hi}] for k={k}")
    i = idx[0]
    ts = optimize.brentq(lambda s: g_derivative(k, s), t[i], t[i + 1], xtol=1e-13, rtol=1e-15)
    return float(ts), float(g_positive(k, ts))


def find_k0(tol=1e-6, lo=0.30, hi=0.49, details=False):
    """k in (1/4, 1/2) where the first minimum of g_k equals -1."""
    if not tol < 1e-2:
        raise DomainError("tol must be below 1e-2")
    F = lambda k: first_minimum(k)[1] + 1
    flo, fhi = F(lo), F(hi)
    if flo * fhi > 0:
        raise ConvergenceError("first-minimum condition is not bracketed")
    # bisect to tol in k, then keep going until the defining residual is tiny too
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        fm = F(mid)
        if (fm < 0) == (flo < 0):
            lo, flo = mid, fm
        else:
            hi = mid
        if hi - lo < tol and abs(fm) < 1e-10:
            break
    k0 = mid
    if details:
        tmin, vmin = first_minimum(k0)
        return k0, vmin + 1, tmin
    return k0


_K0 = None


def _k0():
    global _K0
    if _K0 is None:
        _K0 = find_k0(1e-9)
    return _K0


def growth_exponent(k, T=GROWTH_T, samples_per_unit=40):
    """Slope of log sup_{(0,T]} |g_k| against log T."""
    sups = [kernel_sup(k, t, int(t * samples_per_unit)).sup for t in T]
    slope, _ = np.polyfit(np.log(T), np.log(sups), 1)
    return float(slope)


def classify_boundedness(k, check_growth=False):
    """'unbounded' for k < 1/4, 'bounded_above_1' up to k0, else 'bounded_by_1'."""
    k = float(k)
    if not k > 0:
        raise DomainError("k must be positive")
    if k < 0.25:
        if check_growth and not growth_exponent(k) > 0:
            raise ConvergenceError("no growth detected for k < 1/4")
        return "unbounded"
    if k < 0.5 and k < _k0():
        return "bounded_above_1"
    return "bounded_by_1"


def integral_representation(k, x, y, tol=1e-12):
    """Nonnegative-weight integral formula for B_{k,1}, k >= 1/2."""
    k = float(k)
    if k < 0.5:
        raise DomainError("representation needs k >= 1/2")
    xy = float(x) * float(y)
    s = np.sign(xy)
    c = np.exp(sc.gammaln(k + 0.5) - sc.gammaln(k) - sc.gammaln(0.5))

    def h(u):
        u = np.asarray(u, dtype=float)
        arg = np.sqrt(np.maximum(2 * abs(xy) * (1 + s * u), 0.0))
        return normalized_bessel(k - 1, arg) * (1 + u) * (1 - u * u) ** (k - 1)
    res = integrate_finite(h, -1.0, 1.0, tol=tol, rtol=tol, sigma_lo=k, sigma_hi=k - 1)
    return float(c * res.value)


def integral_representation_check(k, x, y):
    """|kernel_a1 - integral representation|."""
    return abs(kernel_a1(k, x, y) - integral_representation(k, x, y))


def _sup_general(params, z_max=60.0, samples=6000):
    """sup of |B_{k,a}(1, y)| over |y| <= z_max (B depends on xy only)."""
    y = np.linspace(-z_max, z_max, 2 * samples + 1)
    v = np.abs(kernel_general(params, 1.0, y))
    i = int(v.argmax())
    sup = float(v[i])
    if 0 < i < len(y) - 1:
        r = optimize.minimize_scalar(lambda s: -abs(kernel_general(params, 1.0, s)),
                                     bounds=(y[i - 1], y[i + 1]), method="bounded",
                                     options={"xatol": 1e-12})
        sup = max(sup, -float(r.fun))
    return sup


def kernel_sup_params(params, t_max=100.0):
    """Sup of |B_{k,a}| along a sweep; exact a=1 and a=2 paths, general formula otherwise."""
    if params.a == 1.0:
        if params.k == 0:
            raise DomainError("k=0, a=1 is excluded")
        return kernel_sup(params.k, t_max, int(t_max * 80)).sup
    # at a=2 the two-Bessel formula is the closed Dunkl kernel
    return _sup_general(params, z_max=t_max)


def conjecture_scan(grid, t_max=100.0, tol=1e-6):
    """Per (k, a): sup estimate, conjecture regime and verdict, in grid order."""
    out = []
    for kp in grid:
        if not isinstance(kp, KernelParams):
            kp = KernelParams(*kp)
        sup = kernel_sup_params(kp, t_max)
        regime = 2 * kp.k + 1 + kp.a
        bounded = sup <= 1 + tol
        rec = {"k": kp.k, "a": kp.a, "2k+1+a": regime, "sup": sup, "bounded_by_1": bool(bounded),
               "covered": bool(regime >= 3), "experimental": kp.experimental, "flag": ""}
        if regime >= 3 and not bounded:
            rec["flag"] = "counterexample_candidate"
        elif regime < 3 and bounded:
            rec["flag"] = "only_sufficient"
        elif regime < 3:
            rec["flag"] = "exceeds_1"
        out.append(rec)
    return out


def hausdorff_young_constant(M, p):
    """M^{2/p - 1}."""
    if not 1 <= p <= 2:
        raise DomainError("p must lie in [1, 2]")
    if M < 1:
        raise DomainError("a kernel bound is at least 1")
    return float(M ** (2 / p - 1))


def export_sweep_csv(k, a, t, values, path):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["k", "a", "t", "value"])
        for ti, vi in zip(t, values):
            w.writerow([repr(float(k)), repr(float(a)), repr(float(ti)), repr(float(vi))])
    return path
