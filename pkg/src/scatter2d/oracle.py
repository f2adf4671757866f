"""Independent partial-wave cross-checks for circularly symmetric problems.

For an isotropic potential the channels decouple and each phase shift
delta_m follows from matching interior and exterior radial solutions at the
potential edge (closed form for the circular barrier) or from direct Numerov
integration (arbitrary radial profiles with a hard wall).  The amplitude is

    f(phi) = sqrt(2/(pi q)) sum_m e^{i delta_m} sin(delta_m) e^{im phi},

equivalently channel amplitudes f_m = (2/sqrt(q)) e^{i delta} sin(delta),
and sigma = (4/q) [sin^2 delta_0 + 2 sum_{m>=1} sin^2 delta_m].  These
formulas satisfy the optical theorem sigma = sqrt(8 pi / q) Im f(0)
identically, which pins the sign and normalization.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import ceil, pi, sqrt

import numpy as np

from .amplitudes import AmplitudeSet
from .bessel import bessel_i_ratio, bessel_j_all, bessel_y_all
from .grids import make_angular_grid

_ADAPTIVE_STOP = 1e-12
_ADAPTIVE_LIMIT = 256


@dataclass(frozen=True)
class PhaseShiftTable:
    """Phase shifts delta_m for m = 0..m_max at one wavenumber."""

    q: float
    delta: np.ndarray

    @property
    def m_max(self) -> int:
        return self.delta.size - 1


def _barrier_delta(q: float, u0: float, a0: float, m_vals: np.ndarray) -> np.ndarray:
    """Phase shifts for the circular barrier from interior/exterior
    log-derivative matching at rho = a0."""
    m_top = int(m_vals[-1])
    e = 0.5 * q**2
    x = q * a0
    j = bessel_j_all(x, m_top + 1)
    y = bessel_y_all(x, m_top + 1)
    jp = np.empty(m_top + 1)
    yp = np.empty(m_top + 1)
    jp[0], yp[0] = -j[1], -y[1]
    if m_top >= 1:
        jp[1:] = 0.5 * (j[:-2] - j[2:])
        yp[1:] = 0.5 * (y[:-2] - y[2:])

    ell = np.empty(m_top + 1)
    if e > u0:
        k_in = sqrt(q**2 - 2.0 * u0)
        xi = k_in * a0
        ji = bessel_j_all(xi, m_top + 1)
        jip = np.empty(m_top + 1)
        jip[0] = -ji[1]
        if m_top >= 1:
            jip[1:] = 0.5 * (ji[:-2] - ji[2:])
        ell = k_in * jip / ji[: m_top + 1]
    elif e < u0:
        kappa = sqrt(2.0 * u0 - q**2)
        xi = kappa * a0
        # L = kappa I'_m/I_m = (kappa/2)(1/r_m + r_{m+1}), r_m = I_m/I_{m-1};
        # the ratio continued fraction never overflows, any xi
        r = np.empty(m_top + 2)
        r[0] = np.nan  # I_0/I_{-1} never enters
        r[1:] = [bessel_i_ratio(m, xi) for m in range(1, m_top + 2)]
        ell[0] = kappa * r[1]  # I'_0 = I_1
        if m_top >= 1:
            mm = np.arange(1, m_top + 1)
            ell[1:] = 0.5 * kappa * (1.0 / r[mm] + r[mm + 1])
    else:
        ell = m_vals / a0

    # e^{i d} sin(d) is pi-periodic in d, so the arctan branch is immaterial
    num = ell[: m_top + 1] * j[: m_top + 1] - q * jp
    den = ell[: m_top + 1] * y[: m_top + 1] - q * yp
    return np.arctan(num / den)


def barrier_phase_shifts(q: float, u0: float, a0: float, m_max: int | None = None) -> PhaseShiftTable:
    """Closed-form phase shifts for the circular barrier of height u0,
    radius a0.

    With m_max=None the table grows until |delta_m| < 1e-12 on two
    consecutive channels (phase shifts decay super-exponentially once
    m >> q a0).
    """
    if q <= 0.0 or a0 <= 0.0 or u0 < 0.0:
        raise ValueError(f"need q > 0, a0 > 0, u0 >= 0; got {q}, {a0}, {u0}")
    if m_max is not None:
        m_vals = np.arange(m_max + 1)
        return PhaseShiftTable(q, _barrier_delta(q, u0, a0, m_vals))

    top = max(8, int(ceil(q * a0)) + 4)
    while True:
        delta = _barrier_delta(q, u0, a0, np.arange(top + 1))
        small = np.abs(delta) < _ADAPTIVE_STOP
        stop = None
        for m in range(1, top):
            if small[m] and small[m + 1]:
                stop = m + 1
                break
        if stop is not None:
            return PhaseShiftTable(q, delta[: stop + 1])
        if top >= _ADAPTIVE_LIMIT:
            return PhaseShiftTable(q, delta)
        top *= 2


def radial_phase_shifts(
    q: float,
    potential,
    rho_hw: float,
    m_max: int,
    rho_match: float,
    n_steps: int | None = None,
) -> PhaseShiftTable:
    """Phase shifts by Numerov integration of the decoupled radial equations

        u_m'' + [q^2 - 2 U(rho) - (m^2 - 1/4)/rho^2] u_m = 0,

    from u(rho_hw) = 0 outward, fitted to sqrt(rho)[cos(d) J_m - sin(d) Y_m]
    at two radii near rho_match.  potential is a radial callable U(rho)
    (vectorized).  Preconditions: rho_match is in the asymptotic region and
    U decays faster than 1/rho^2 there.
    """
    if rho_hw < 0.0 or rho_match <= rho_hw:
        raise ValueError(f"need 0 <= rho_hw < rho_match, got {rho_hw}, {rho_match}")
    tail_far = abs(float(potential(np.array([rho_match]))[0])) * rho_match**2
    tail_near = abs(float(potential(np.array([0.5 * rho_match]))[0])) * (0.5 * rho_match) ** 2
    if tail_near > 0.0 and tail_far > 0.55 * tail_near:
        raise ValueError(
            "potential does not decay faster than 1/rho^2 at the match radius; "
            f"rho^2 U at R and R/2: {tail_far:.3e}, {tail_near:.3e}"
        )

    if n_steps is None:
        n_steps = max(4000, int(ceil((rho_match - rho_hw) * q / 0.02)))
    h = (rho_match - rho_hw) / n_steps
    rho = rho_hw + h * np.arange(n_steps + 1)
    m = np.arange(m_max + 1)

    u_pot = np.zeros(n_steps + 1)
    u_pot[1:] = potential(rho[1:])
    if rho_hw > 0.0:
        u_pot[0] = potential(np.array([rho[0]]))[0]
    # w[i, m] = q^2 - 2U - (m^2 - 1/4)/rho^2; rho = 0 start is regular because
    # u(0) = 0 and the first step value only seeds the overall scale
    with np.errstate(divide="ignore"):
        cent = np.where(rho[:, None] > 0.0, (m[None, :] ** 2 - 0.25) / rho[:, None] ** 2, 0.0)
    w = q**2 - 2.0 * u_pot[:, None] - cent
    t = h**2 / 12.0

    u_prev = np.zeros(m_max + 1)
    u_cur = np.full(m_max + 1, h)
    idx_a = n_steps - max(1, int(round(pi / (2.0 * q) / h)))
    if idx_a < 2:
        raise ValueError("match radius too close to the wall for a two-point fit")
    u_at_a = None
    for i in range(1, n_steps):
        u_next = (
            2.0 * u_cur * (1.0 - 5.0 * t * w[i]) - u_prev * (1.0 + t * w[i - 1])
        ) / (1.0 + t * w[i + 1])
        u_prev, u_cur = u_cur, u_next
        if i + 1 == idx_a:
            u_at_a = u_cur.copy()
        big = np.max(np.abs(u_cur))
        if big > 1e250:
            u_prev /= big
            u_cur /= big
            if u_at_a is not None:
                u_at_a /= big

    rho_a, rho_b = rho[idx_a], rho[n_steps]
    ja = bessel_j_all(q * rho_a, m_max) * sqrt(rho_a)
    ya = bessel_y_all(q * rho_a, m_max) * sqrt(rho_a)
    jb = bessel_j_all(q * rho_b, m_max) * sqrt(rho_b)
    yb = bessel_y_all(q * rho_b, m_max) * sqrt(rho_b)
    # u = A J~ + B Y~; tan(delta) = -B/A
    det = ja * yb - jb * ya
    a_coef = (u_at_a * yb - u_cur * ya) / det
    b_coef = (u_cur * ja - u_at_a * jb) / det
    return PhaseShiftTable(q, np.arctan(-b_coef / a_coef))


def oracle_amplitude(table: PhaseShiftTable, phi):
    """f(phi) from a phase-shift table; scalar in, scalar out."""
    phi_arr = np.atleast_1d(np.asarray(phi, dtype=float))
    term = np.exp(1j * table.delta) * np.sin(table.delta)
    mm = np.arange(1, table.m_max + 1)
    vals = sqrt(2.0 / (pi * table.q)) * (
        term[0] + 2.0 * np.cos(np.outer(phi_arr, mm)) @ term[1:]
    )
    if np.ndim(phi) == 0:
        return complex(vals[0])
    return vals.reshape(np.shape(phi))


def oracle_amplitude_set(table: PhaseShiftTable, m_order: int) -> AmplitudeSet:
    """Channel amplitudes f_m = (2/sqrt(q)) e^{i delta} sin(delta) truncated
    to |m| <= m_order, as an AmplitudeSet for channel-wise comparison."""
    grid = make_angular_grid(m_order)
    delta = np.zeros(m_order + 1)
    take = min(m_order, table.m_max) + 1
    delta[:take] = table.delta[:take]
    d_signed = delta[np.abs(grid.m_values)]
    f_m = 2.0 / sqrt(table.q) * np.exp(1j * d_signed) * np.sin(d_signed)
    return AmplitudeSet(
        q=table.q, phi_q=0.0, f_m=f_m, angular=grid, stability_metric=0.0, warnings=()
    )


def oracle_sigma(table: PhaseShiftTable, m_max: int | None = None) -> float:
    """sigma = (4/q)[sin^2 d_0 + 2 sum sin^2 d_m], optionally truncated."""
    top = table.m_max if m_max is None else min(m_max, table.m_max)
    s2 = np.sin(table.delta[: top + 1]) ** 2
    return 4.0 / table.q * float(s2[0] + 2.0 * np.sum(s2[1:]))
