"""Closed-form lattice tail sums for the quasi-periodic kernels.

Everything here reduces to

    lerch_sum(mu, a) = sum_{n>=1} e^{mu n} / (n + a),   Re mu <= 0,

evaluated stably both on and off the boundary (|e^mu| -> 1).  Near the
singular point mu = 0 the Erdelyi expansion of the Lerch transcendent in
powers of mu is used (radius 2 pi); far from it the plain power series in
z = e^mu converges geometrically.  Coefficient tables (Hurwitz zeta at
integer arguments, digamma) are cached per offset ``a``.
"""

from __future__ import annotations

from functools import lru_cache

import mpmath as mp
import numpy as np

_EXPANSION_TERMS = 96
# |mu| / 2pi below which the expansion is used; the power-series branch then
# sees |z| <= e^{-2 pi 0.45} ~ 0.06 and needs ~12 terms.
_BRANCH_RADIUS = 0.45
_SERIES_TERMS = 48


@lru_cache(maxsize=64)
def _lerch_table(a: float):
    """Taylor data for sum_{n>=1} e^{mu n}/(n+a) about mu = 0.

    Returns (coef, c_log) with coef[k] = zeta(1-k, 1+a)/k! for k >= 1,
    coef[0] = psi(1) - psi(1+a) = -euler_gamma - digamma(1+a); the log term
    -log(-mu) is added separately.
    """
    v = 1.0 + a
    if v <= 0:
        raise ValueError(f"lerch offset out of range: a = {a}")
    coef = np.zeros(_EXPANSION_TERMS)
    fact = 1.0
    for k in range(1, _EXPANSION_TERMS):
        fact *= k
        coef[k] = float(mp.zeta(1 - k, v)) / fact
    coef[0] = -np.euler_gamma - float(mp.digamma(v))
    return coef


def lerch_sum(mu, a: float):
    """sum_{n>=1} e^{mu n}/(n + a) for complex mu with Re mu <= 0, mu != 0.

    Vectorized over ``mu``.  ``a`` must satisfy a > -1.
    """
    mu = np.asarray(mu, dtype=complex)
    out = np.empty_like(mu)
    near = np.abs(mu) < _BRANCH_RADIUS * 2.0 * np.pi
    if near.any():
        m = mu[near]
        coef = _lerch_table(round(float(a), 14))
        s = np.full_like(m, coef[0])
        p = np.ones_like(m)
        for k in range(1, _EXPANSION_TERMS):
            p = p * m
            s += coef[k] * p
        out[near] = np.exp(-a * m) * (s - np.log(-m))
    far = ~near
    if far.any():
        z = np.exp(mu[far])
        s = np.zeros_like(z)
        p = np.ones_like(z)
        for n in range(1, _SERIES_TERMS):
            p = p * z
            s += p / (n + a)
        out[far] = s
    return out


class TailSums:
    """Closed-form sums over the nonzero lattice modes l = 2 pi n, n != 0.

    For b = |alpha + l|, phases e^{i l t} (t reduced to [-1/2, 1/2]) and
    vertical decay e^{-b d}, d = |z| >= 0, provides

        s0   = sum e^{-b d} e^{ilt}
        s0m  = sum sgn(alpha + l) e^{-b d} e^{ilt}
        s1   = sum e^{-b d} e^{ilt} / b
        sb   = sum b e^{-b d} e^{ilt}
        sbm  = sum sgn(alpha + l) b e^{-b d} e^{ilt}

    Requires |alpha| < 2 pi so that sgn(alpha + l) = sgn(l) for l != 0.
    All attributes are arrays broadcast over (t, d).
    """

    def __init__(self, t, d, alpha: float, need_b: bool = False):
        if not abs(alpha) < 2.0 * np.pi:
            raise ValueError(f"|alpha| must be < 2 pi, got {alpha}")
        t = np.asarray(t, dtype=float)
        d = np.asarray(d, dtype=float)
        two_pi = 2.0 * np.pi
        a = alpha / two_pi
        mq = two_pi * (1j * t - d)          # z-modes with l > 0
        mw = -two_pi * (1j * t + d)         # l < 0
        q = np.exp(mq)
        w = np.exp(mw)
        ep = np.exp(-alpha * d)
        em = np.exp(alpha * d)
        gq = q / (1.0 - q)
        gw = w / (1.0 - w)
        self.s0 = ep * gq + em * gw
        self.s0m = ep * gq - em * gw
        self.s1 = (ep * lerch_sum(mq, a) + em * lerch_sum(mw, -a)) / two_pi
        if need_b:
            # sum_{n>=1} (2 pi n +- alpha) z^n = 2 pi z/(1-z)^2 +- alpha z/(1-z)
            hq = q / (1.0 - q) ** 2
            hw = w / (1.0 - w) ** 2
            bq = two_pi * hq + alpha * gq
            bw = two_pi * hw - alpha * gw
            self.sb = ep * bq + em * bw
            self.sbm = ep * bq - em * bw
