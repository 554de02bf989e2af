"""Jacobi theta functions with characteristics, Dedekind eta, and the
j-invariant formula, with controlled truncation.

theta[a,b](w, tau) = sum_m exp(pi i tau (m+a)^2) exp(2 pi i (m+a)(w+b)),
summed over integers m with |m + a| <= M; the reported error bound is three
times the magnitude of the first omitted term.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

from .scalars import QSeries


@dataclass
class ThetaValue:
    value: complex
    truncation: int
    error_bound: float

    def __complex__(self):
        return self.value


def _term(a, b, w, tau, m):
    ma = m + a
    return cmath.exp(1j * math.pi * tau * ma * ma + 2j * math.pi * ma * (w + b))


def _auto_half_width(a, w, tau, target=1e-14):
    """Smallest half-width M making the first omitted term < target."""
    im_tau = tau.imag
    if im_tau <= 0:
        raise ValueError("theta needs Im tau > 0")
    m = 4
    while m < 4000:
        lead = abs(_term(a, 0.0, w, tau, m)) + abs(_term(a, 0.0, w, tau, -m))
        if lead < target:
            return m
        m += 2
    return m


def theta(a, b, w, tau, half_width=None):
    """Truncated theta with characteristics (a, b); returns a ThetaValue."""
    a = float(a)
    b = float(b)
    w = complex(w)
    tau = complex(tau)
    if tau.imag <= 0:
        raise ValueError("theta needs Im tau > 0, got %r" % (tau,))
    M = half_width if half_width is not None else _auto_half_width(a, w, tau)
    total = 0j
    lo = math.ceil(-M - a)
    hi = math.floor(M - a)
    for m in range(lo, hi + 1):
        total += _term(a, b, w, tau, m)
    first_omitted = abs(_term(a, b, w, tau, hi + 1)) + abs(_term(a, b, w, tau, lo - 1))
    return ThetaValue(value=total, truncation=M, error_bound=3.0 * first_omitted)


def theta_prime(a, b, w, tau, half_width=None):
    """d theta / dw via term-by-term differentiation."""
    a = float(a)
    b = float(b)
    w = complex(w)
    tau = complex(tau)
    if tau.imag <= 0:
        raise ValueError("theta needs Im tau > 0")
    M = half_width if half_width is not None else _auto_half_width(a, w, tau)
    total = 0j
    lo = math.ceil(-M - a)
    hi = math.floor(M - a)
    for m in range(lo, hi + 1):
        ma = m + a
        total += 2j * math.pi * ma * _term(a, b, w, tau, m)
    first = abs(2j * math.pi * (hi + 1 + a) * _term(a, b, w, tau, hi + 1))
    return ThetaValue(value=total, truncation=M, error_bound=3.0 * first)


def theta_big(j, s, u, tau, half_width=None, derivative=False):
    """Theta_j(u, tau)_s = theta[j/s, 0](s*u, s*tau); optionally d/du."""
    if derivative:
        inner = theta_prime(Fraction(j, s), 0, s * u, s * tau, half_width)
        return ThetaValue(inner.value * s, inner.truncation, inner.error_bound * abs(s))
    return theta(Fraction(j, s), 0, s * u, s * tau, half_width)


# ---------------------------------------------------------------------------
# Dedekind eta and the mirror maps
# ---------------------------------------------------------------------------


def dedekind_eta(q, terms=60):
    """eta(q) = q^{1/24} prod_{n<=terms} (1 - q^n), numeric or exact series.

    Numeric: q complex with |q| < 1 (returns complex, principal 24th root).
    Exact: q a QSeries (returns a QSeries with fractional leading exponent);
    the truncation order follows the input series.
    """
    if isinstance(q, QSeries):
        e0, c0 = q.leading()
        if c0 != 1 or len(q.coeffs) != 1:
            raise ValueError("exact eta expects a pure power of the formal variable")
        order = q.order
        prod = QSeries.const(1, order)
        n = 1
        while n * e0 < order:
            prod = prod * (QSeries.const(1, order) - QSeries.q_power(n * e0, order))
            n += 1
        prefactor = QSeries.q_power(e0 * Fraction(1, 24), order)
        return prefactor * prod
    q = complex(q)
    if abs(q) >= 1:
        raise ValueError("eta needs |q| < 1, got |q| = %g" % abs(q))
    prod = 1 + 0j
    for n in range(1, terms + 1):
        prod *= 1 - q ** n
    return q ** (1.0 / 24.0) * prod


def eta_series_part(order):
    """The Euler product prod (1 - q^n) as an exact series (no q^{1/24})."""
    N = int(order)
    prod = QSeries.const(1, N)
    q = QSeries.q_power(1, N)
    for n in range(1, N + 1):
        prod = prod * (QSeries.const(1, N) - q ** n)
    return prod


def pentagonal_series(order):
    """Euler's pentagonal-number expansion of prod (1 - q^n), as an oracle."""
    N = int(order)
    coeffs = {Fraction(0): Fraction(1)}
    k = 1
    while True:
        e1 = k * (3 * k - 1) // 2
        e2 = k * (3 * k + 1) // 2
        if e1 >= N and e2 >= N:
            break
        sign = Fraction(-1) if k % 2 == 1 else Fraction(1)
        if e1 < N:
            coeffs[Fraction(e1)] = sign
        if e2 < N:
            coeffs[Fraction(e2)] = sign
        k += 1
    return QSeries(coeffs, N)


def sigma_333(q_orb, terms=80):
    """Inverse mirror map sigma(q_orb) = -3 - (eta(q_orb)/eta(q_orb^9))^3."""
    if isinstance(q_orb, QSeries):
        e0, c0 = q_orb.leading()
        if c0 != 1 or len(q_orb.coeffs) != 1:
            raise ValueError("exact sigma expects a pure power of the formal variable")
        e1 = dedekind_eta(q_orb, terms)
        e9 = dedekind_eta(QSeries.q_power(9 * e0, q_orb.order), terms)
        ratio = e1 * e9.inverse()
        return QSeries.const(-3, ratio.order) - ratio * ratio * ratio
    e1 = dedekind_eta(q_orb, terms)
    e9 = dedekind_eta(q_orb ** 9, terms)
    r = e1 / e9
    return -3 - r ** 3


def sigma_eta_2222(q, terms=80):
    """sigma(q) = eta^12(q) / (eta^8(q^2) eta^4(q^{1/2}))."""
    if isinstance(q, QSeries):
        e0, c0 = q.leading()
        if c0 != 1 or len(q.coeffs) != 1:
            raise ValueError("exact sigma expects a pure power of the formal variable")
        top = dedekind_eta(q, terms) ** 12
        b1 = dedekind_eta(QSeries.q_power(2 * e0, q.order), terms) ** 8
        b2 = dedekind_eta(QSeries.q_power(e0 / 2, q.order), terms) ** 4
        return top * (b1 * b2).inverse()
    top = dedekind_eta(q, terms) ** 12
    bottom = dedekind_eta(q * q, terms) ** 8 * dedekind_eta(cmath.sqrt(q), terms) ** 4
    return top / bottom


def j_of_sigma(sigma):
    """j(sigma) = (sigma^4 - 16 sigma^2 + 256)^3 / (sigma^4 (sigma^2 - 16)^2).

    Works on complex numbers and on exact Laurent q-series.
    """
    if isinstance(sigma, QSeries):
        s2 = sigma * sigma
        s4 = s2 * s2
        order = sigma.order
        num = s4 - s2.scale(16) + QSeries.const(256, order)
        den = s4 * (s2 - QSeries.const(16, order)) ** 2
        return num ** 3 * den.inverse()
    sigma = complex(sigma)
    s2 = sigma * sigma
    s4 = s2 * s2
    den = s4 * (s2 - 16) ** 2
    if abs(den) < 1e-30:
        raise ValueError("j has a pole at sigma = %r" % (sigma,))
    return (s4 - 16 * s2 + 256) ** 3 / den
