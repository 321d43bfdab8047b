"""Closed-form test functions used by the checks and the acceptance suite."""
import numpy as np

from .transform import TestFunction


def gaussian():
    return TestFunction(
        "gauss", lambda r: np.exp(-r * r / 2), derivative=lambda r: -r * np.exp(-r * r / 2),
        known_transform=lambda rho, lam, a: np.exp(-np.asarray(rho) ** 2 / 2) if a == 2 else None)


def exponential():
    def kt(rho, lam, a):
        rho = np.asarray(rho, dtype=float)
        if a == 2 and lam == 0:
            return (1 + rho * rho) ** -1.5
        if a == 1:
            return np.exp(-rho)
        return None
    return TestFunction("exp", lambda r: np.exp(-r), decay="exponential",
                        derivative=lambda r: -np.exp(-r), known_transform=kt)


def quadratic_gaussian():
    def kt(rho, lam, a):
        rho = np.asarray(rho, dtype=float)
        return (2 * lam + 2 - rho * rho) * np.exp(-rho * rho / 2) if a == 2 else None
    return TestFunction("r2gauss", lambda r: r * r * np.exp(-r * r / 2), small_power=2.0,
                        derivative=lambda r: (2 * r - r ** 3) * np.exp(-r * r / 2), known_transform=kt)


def deformed_gaussian(a, c=None):
    """e^{-c r^a}, c = 1/a by default (the s = n = 0 eigenfunction)."""
    a = float(a)
    c = 1 / a if c is None else float(c)

    def kt(rho, lam, a2):
        if a2 != a:
            return None
        # dilate the eigenfunction e^{-r^a/a}: c r^a = (mu r)^a / a with mu = (a c)^{1/a}
        mu = (a * c) ** (1 / a)
        rho = np.asarray(rho, dtype=float)
        return mu ** (-(2 * lam + a)) * np.exp(-(rho / mu) ** a / a)
    decay = "schwartz" if a >= 2 else "exponential"
    return TestFunction(f"dgauss[a={a!r},c={c!r}]", lambda r: np.exp(-c * np.asarray(r) ** a), decay=decay,
                        derivative=lambda r: -c * a * np.asarray(r) ** (a - 1) * np.exp(-c * np.asarray(r) ** a),
                        known_transform=kt)


def sech():
    def f(r):
        e = np.exp(-np.asarray(r, dtype=float))
        return 2 * e / (1 + e * e)
    return TestFunction("sech", f, decay="exponential", derivative=lambda r: -np.tanh(r) * f(r))


def linear_exponential():
    return TestFunction("r_exp", lambda r: r * np.exp(-r), decay="exponential", small_power=1.0,
                        derivative=lambda r: (1 - r) * np.exp(-r))


def flat_at_zero():
    """e^{-r - 1/r}: vanishes with every derivative at 0."""
    def f(r):
        r = np.asarray(r, dtype=float)
        with np.errstate(divide="ignore", over="ignore"):
            return np.where(r > 0, np.exp(-r - 1 / np.where(r > 0, r, 1.0)), 0.0)

    def df(r):
        r = np.asarray(r, dtype=float)
        with np.errstate(divide="ignore", over="ignore"):
            rr = np.where(r > 0, r, 1.0)
            return np.where(r > 0, (1 / rr ** 2 - 1) * np.exp(-rr - 1 / rr), 0.0)
    return TestFunction("exp_flat", f, decay="exponential", smoothness="schwartz0", small_power=8.0,
                        derivative=df, breakpoints=(0.25,))


def modulated_gaussian():
    return TestFunction("gauss_cos", lambda r: np.exp(-r * r) * np.cos(r),
                        derivative=lambda r: -np.exp(-r * r) * (2 * r * np.cos(r) + np.sin(r)))


def rational():
    return TestFunction("rational6", lambda r: (1 + r * r) ** -3.0, decay="power", exponent=-6.0,
                        smoothness="power-decay", derivative=lambda r: -6 * r * (1 + r * r) ** -4.0)


def regular_corpus():
    """Nine regular members (fast decay or r^-6 decay), all smooth on (0, inf)."""
    return [gaussian(), exponential(), quadratic_gaussian(), sech(), linear_exponential(),
            flat_at_zero(), modulated_gaussian(), rational(), deformed_gaussian(1.0, 2.0)]


def monotone_corpus():
    """Decreasing functions vanishing at infinity."""
    return [
        exponential(),
        gaussian(),
        sech(),
        TestFunction("inv_sq", lambda r: (1 + r) ** -2.0, decay="power", exponent=-2.0, smoothness="GM-family",
                     derivative=lambda r: -2 * (1 + r) ** -3.0),
        TestFunction("inv_cube", lambda r: (1 + r) ** -3.0, decay="power", exponent=-3.0, smoothness="GM-family",
                     derivative=lambda r: -3 * (1 + r) ** -4.0),
    ]


def _times_r(f):
    """r f(r) as an odd radial part, with f kept as the exact f_o/r."""
    d = f.derivative
    return TestFunction(f"r*{f.name}", lambda r: np.asarray(r, dtype=float) * f.func(r), decay=f.decay,
                        smoothness=f.smoothness, small_power=f.small_power + 1,
                        exponent=None if f.exponent is None else f.exponent + 1,
                        derivative=None if d is None else
                        (lambda r: f.func(r) + np.asarray(r, dtype=float) * d(r)),
                        scale=f.scale, breakpoints=f.breakpoints)


def parity_corpus():
    """Functions on the line: pure even, pure odd and mixed members."""
    from .fka1d import ParityFunction

    def mk(even, odd_base):
        odd = None if odd_base is None else _times_r(odd_base)
        return ParityFunction(even=even, odd=odd, odd_over_r=odd_base)
    return [
        mk(gaussian(), None),
        mk(None, gaussian()),
        mk(gaussian(), exponential()),
        mk(exponential(), sech()),
        mk(sech(), modulated_gaussian()),
        mk(rational(), rational()),
        mk(linear_exponential(), flat_at_zero()),
        mk(flat_at_zero(), gaussian()),
    ]
