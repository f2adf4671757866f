"""Cylindrical Bessel functions J_m, Y_m and modified I_m.

Self-contained double precision implementations tuned for the ranges this
package actually visits (|m| <= 512, 0 <= x <= 1e4):

* J_m: Miller's downward recurrence with normalization
  J_0 + 2 sum_k J_{2k} = 1.
* Y_m: ascending series for Y_0, Y_1 below x = 13, Hankel asymptotic
  expansion above, then the (stable) upward recurrence in m.
* I_m: ascending power series for x <= 700; for scaled = True and large x
  the asymptotic expansion of e^{-x} I_m(x).

Worst-case accuracy is ~1e-10 relative to the oscillation envelope near
the series/asymptotic crossover, ~1e-13 elsewhere.
"""

from __future__ import annotations

import math

import numpy as np

EULER_GAMMA = 0.5772156649015328606

_M_MAX = 512
_X_MAX = 1.0e4
_Y_SERIES_CUTOFF = 13.0
_RESCALE = 1.0e250


def _check_order(m: int) -> int:
    m = int(m)
    if abs(m) > _M_MAX:
        raise ValueError(f"order |m| <= {_M_MAX} supported, got {m}")
    return m


def _miller_block(x: np.ndarray, m_max: int) -> np.ndarray:
    """J_0..J_{m_max} for every x >= 0, shape x.shape + (m_max + 1,)."""
    x = np.asarray(x, dtype=float)
    flat = x.ravel()
    out = np.zeros((flat.size, m_max + 1))
    pos = flat > 0.0
    out[~pos, 0] = 1.0  # J_m(0) = delta_{m0}
    xp = flat[pos]
    if xp.size:
        n0 = max(m_max, int(math.ceil(xp.max())))
        mtop = n0 + int(math.ceil(14.0 * n0 ** (1.0 / 3.0))) + 42
        fup = np.zeros_like(xp)            # J at index k+1, unnormalized
        fcur = np.full_like(xp, 1.0e-30)   # J at index k
        vals = np.zeros((xp.size, m_max + 1))
        norm = np.zeros_like(xp)
        inv_x = 1.0 / xp
        for k in range(mtop, -1, -1):
            if k <= m_max:
                vals[:, k] = fcur
            if k % 2 == 0:
                norm += fcur if k == 0 else 2.0 * fcur
            if k > 0:
                fdown = (2.0 * k) * inv_x * fcur - fup
                fup = fcur
                fcur = fdown
                big = np.abs(fcur) > _RESCALE
                if big.any():
                    fcur[big] /= _RESCALE
                    fup[big] /= _RESCALE
                    vals[big, :] /= _RESCALE
                    norm[big] /= _RESCALE
        out[pos, :] = vals / norm[:, None]
    return out.reshape(x.shape + (m_max + 1,))


def bessel_j_all(x: float, m_max: int) -> np.ndarray:
    """Array [J_0(x), ..., J_{m_max}(x)] from a single downward sweep."""
    if m_max < 0:
        raise ValueError(f"m_max must be >= 0, got {m_max}")
    _check_order(m_max)
    if x < 0.0 or x > _X_MAX:
        raise ValueError(f"argument must lie in [0, {_X_MAX}], got {x}")
    return _miller_block(np.asarray(float(x)), m_max)


def bessel_j(m: int, x) -> np.ndarray | float:
    """Bessel function of the first kind, J_m(x) for x >= 0."""
    m = _check_order(m)
    xa = np.asarray(x, dtype=float)
    if np.any(xa < 0.0) or np.any(xa > _X_MAX):
        raise ValueError(f"arguments must lie in [0, {_X_MAX}]")
    vals = _miller_block(xa, abs(m))[..., abs(m)]
    if m < 0 and m % 2 != 0:
        vals = -vals
    return vals if isinstance(x, np.ndarray) else float(vals)


def _hankel_pq(n: int, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Asymptotic amplitude series P_n, Q_n of the Hankel expansion."""
    p = np.ones_like(x)
    q = np.zeros_like(x)
    term = np.ones_like(x)
    four_n2 = 4.0 * n * n
    for j in range(1, 40):
        term = term * (four_n2 - (2 * j - 1) ** 2) / (8.0 * j * x)
        contrib = term if ((j // 2) % 2 == 0) else -term
        if j % 2 == 0:
            p = p + contrib
        else:
            q = q + contrib
        if np.all(np.abs(term) < 1.0e-17):
            break
    return p, q


def _y01_series(x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    # A&S 9.1.11 with psi(1) = -gamma, psi(k+1) = psi(k) + 1/k
    j01 = _miller_block(x, 1)
    lg = np.log(0.5 * x)
    x2 = 0.25 * x * x
    t = np.ones_like(x)          # (x/2)^{2k} / (k!)^2
    u = 0.5 * x                  # (x/2)^{2k+1} / (k! (k+1)!)
    psi1 = -EULER_GAMMA
    psi2 = -EULER_GAMMA + 1.0
    s0 = 2.0 * psi1 * t
    s1 = (psi1 + psi2) * u
    sign = 1.0
    for k in range(1, 46):
        sign = -sign
        t = t * x2 / (k * k)
        u = u * x2 / (k * (k + 1))
        psi1 += 1.0 / k
        psi2 += 1.0 / (k + 1)
        s0 = s0 + sign * 2.0 * psi1 * t
        s1 = s1 + sign * (psi1 + psi2) * u
    y0 = (2.0 / np.pi) * lg * j01[..., 0] - s0 / np.pi
    y1 = (2.0 / np.pi) * lg * j01[..., 1] - 2.0 / (np.pi * x) - s1 / np.pi
    return y0, y1


def _y01_asymptotic(x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    amp = np.sqrt(2.0 / (np.pi * x))
    p0, q0 = _hankel_pq(0, x)
    chi0 = x - 0.25 * np.pi
    y0 = amp * (p0 * np.sin(chi0) + q0 * np.cos(chi0))
    p1, q1 = _hankel_pq(1, x)
    chi1 = x - 0.75 * np.pi
    y1 = amp * (p1 * np.sin(chi1) + q1 * np.cos(chi1))
    return y0, y1


def _y01(x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    y0 = np.empty_like(x)
    y1 = np.empty_like(x)
    small = x < _Y_SERIES_CUTOFF
    if small.any():
        y0[small], y1[small] = _y01_series(x[small])
    if (~small).any():
        y0[~small], y1[~small] = _y01_asymptotic(x[~small])
    return y0, y1


def bessel_y_all(x: float, m_max: int) -> np.ndarray:
    """Array [Y_0(x), ..., Y_{m_max}(x)] by upward recurrence."""
    if m_max < 0:
        raise ValueError(f"m_max must be >= 0, got {m_max}")
    _check_order(m_max)
    if not 0.0 < x <= _X_MAX:
        raise ValueError(f"argument must lie in (0, {_X_MAX}], got {x}")
    xa = np.asarray(float(x))
    y0, y1 = _y01(xa.reshape(1))
    out = np.empty(m_max + 1)
    out[0] = y0[0]
    if m_max >= 1:
        out[1] = y1[0]
    # upward recurrence amplifies, not damps, so it is stable for Y;
    # extreme (m, x) corners overflow to inf which callers treat as Y >> J
    with np.errstate(over="ignore", invalid="ignore"):
        for mm in range(1, m_max):
            out[mm + 1] = (2.0 * mm / x) * out[mm] - out[mm - 1]
    return out


def bessel_y(m: int, x) -> np.ndarray | float:
    """Bessel function of the second kind, Y_m(x) for x > 0."""
    m = _check_order(m)
    xa = np.asarray(x, dtype=float)
    if np.any(xa <= 0.0) or np.any(xa > _X_MAX):
        raise ValueError(f"arguments must lie in (0, {_X_MAX}]")
    shape = xa.shape
    flat = xa.ravel()
    y0, y1 = _y01(flat)
    ma = abs(m)
    if ma == 0:
        vals = y0
    elif ma == 1:
        vals = y1
    else:
        with np.errstate(over="ignore", invalid="ignore"):
            prev, cur = y0, y1
            for mm in range(1, ma):
                prev, cur = cur, (2.0 * mm / flat) * cur - prev
            vals = cur
    if m < 0 and m % 2 != 0:
        vals = -vals
    vals = vals.reshape(shape)
    return vals if isinstance(x, np.ndarray) else float(vals)


def bessel_i(m: int, x: float, scaled: bool = False) -> float:
    """Modified Bessel function I_m(x), optionally scaled by e^{-x}.

    The unscaled value overflows double precision beyond x ~ 700 and is
    refused there; pass scaled=True to get e^{-x} I_m(x) instead. The
    scaled large-x branch is an asymptotic series that only converges
    for m^2 comfortably below x; far outside that regime use
    bessel_i_ratio, which has no such restriction.
    """
    m = abs(_check_order(m))
    x = float(x)
    if x < 0.0:
        raise ValueError(f"argument must be >= 0, got {x}")
    if x == 0.0:
        return 1.0 if m == 0 else 0.0
    if not scaled and x > 700.0:
        raise ValueError(
            f"I_{m}({x}) overflows double precision; request scaled=True"
        )
    if scaled and x >= 30.0:
        # e^{-x} I_m(x) ~ (2 pi x)^{-1/2} sum_k (-1)^k a_k(m) / x^k
        s = 1.0
        term = 1.0
        four_m2 = 4.0 * m * m
        smallest = 1.0
        for k in range(1, 200):
            term = -term * (four_m2 - (2 * k - 1) ** 2) / (8.0 * k * x)
            s += term
            smallest = min(smallest, abs(term))
            if abs(term) < 1.0e-17:
                break
            if abs(term) > 10.0 * smallest:
                raise ValueError(
                    f"scaled I_{m}({x}) asymptotic series diverges; "
                    "order too large for this argument"
                )
        return s / math.sqrt(2.0 * math.pi * x)
    # ascending series, first term via logs to dodge intermediate overflow
    log_t0 = m * math.log(0.5 * x) - math.lgamma(m + 1)
    if log_t0 < -745.0:
        return 0.0  # true value underflows double precision
    t = math.exp(log_t0)
    s = t
    x2 = 0.25 * x * x
    for k in range(1, 1000):
        t *= x2 / (k * (m + k))
        s += t
        if t < s * 1.0e-17:
            break
    return s * math.exp(-x) if scaled else s


def bessel_i_ratio(m: int, x: float) -> float:
    """Ratio I_m(x) / I_{m-1}(x) by downward continued fraction.

    Stable for any m >= 1 and x > 0 without overflow, which makes it the
    right primitive for logarithmic derivatives deep under a barrier.
    """
    m = _check_order(m)
    if m < 1:
        raise ValueError(f"ratio needs m >= 1, got {m}")
    x = float(x)
    if x <= 0.0:
        raise ValueError(f"argument must be > 0, got {x}")
    top = int(math.ceil(math.sqrt(m * m + 44.0 * x))) + 20
    r = 0.0
    for k in range(top, m - 1, -1):
        r = 1.0 / (2.0 * k / x + r)
    return r
