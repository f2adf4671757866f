"""Angular and radial meshes and the Fourier-grid machinery on top of them.

The angular degree of freedom lives on the uniform grid phi_j = 2*pi*j/(2M+1),
j = 0..2M.  Functions sampled there are identified with trigonometric
polynomials of degree <= M through the discrete transform pair

    C_m = (1/(2M+1)) sum_j exp(-i m phi_j) s_j,      m = -M..M,
    s_j = sum_m C_m exp(i m phi_j),

which is exactly invertible (the node count equals the number of modes).
All transforms are dense matrix applications; with 2M+1 <= ~200 the radial
solve dominates the cost and an FFT would buy nothing.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class AngularGrid:
    """Uniform angular mesh with an odd number of nodes, 2M+1."""

    m_order: int

    def __post_init__(self) -> None:
        if self.m_order < 0:
            raise ValueError(f"angular order must be >= 0, got {self.m_order}")

    @property
    def n_nodes(self) -> int:
        return 2 * self.m_order + 1

    @property
    def nodes(self) -> np.ndarray:
        """Angles phi_j = 2*pi*j/(2M+1), j = 0..2M."""
        n = self.n_nodes
        return 2.0 * np.pi * np.arange(n) / n

    @property
    def m_values(self) -> np.ndarray:
        """Fourier mode indices -M..M, in increasing order."""
        return np.arange(-self.m_order, self.m_order + 1)


def make_angular_grid(m_order: int) -> AngularGrid:
    return AngularGrid(m_order)


@dataclass(frozen=True)
class RadialGrid:
    """Uniform radial mesh rho_n = rho_min + n*h, n = 0..N.

    rho_min = 0 for potentials regular at the origin; a hard wall is imposed
    by setting rho_min to the wall radius (the n = 0 node carries a Dirichlet
    condition either way).
    """

    n_steps: int
    rho_max: float
    rho_min: float = 0.0

    def __post_init__(self) -> None:
        if self.n_steps < 7:
            raise ValueError(f"need at least 7 radial steps, got {self.n_steps}")
        if self.rho_min < 0.0:
            raise ValueError(f"rho_min must be >= 0, got {self.rho_min}")
        if not self.rho_max > self.rho_min:
            raise ValueError(
                f"rho_max must exceed rho_min, got {self.rho_max} <= {self.rho_min}"
            )

    @property
    def h(self) -> float:
        return (self.rho_max - self.rho_min) / self.n_steps

    @property
    def nodes(self) -> np.ndarray:
        return self.rho_min + self.h * np.arange(self.n_steps + 1)


@dataclass(frozen=True)
class FourierCoefficients:
    """Channel amplitudes C_m, m = -M..M, at one radius.

    rho is carried along so that radial channel functions extracted at
    different nodes stay self-describing.
    """

    values: np.ndarray
    rho: float
    m_values: np.ndarray = field(repr=False, default=None)  # type: ignore[assignment]

    def __post_init__(self) -> None:
        vals = np.asarray(self.values, dtype=complex)
        if vals.ndim != 1 or vals.size % 2 != 1:
            raise ValueError("coefficient array must be 1d with odd length 2M+1")
        object.__setattr__(self, "values", vals)
        m = vals.size // 2
        object.__setattr__(self, "m_values", np.arange(-m, m + 1))

    @property
    def m_order(self) -> int:
        return self.values.size // 2

    def __getitem__(self, m: int) -> complex:
        if abs(m) > self.m_order:
            raise IndexError(f"|m| = {abs(m)} exceeds truncation {self.m_order}")
        return complex(self.values[m + self.m_order])


def _forward_matrix(grid: AngularGrid) -> np.ndarray:
    # rows m = -M..M, columns j = 0..2M
    return np.exp(-1j * np.outer(grid.m_values, grid.nodes)) / grid.n_nodes


def _inverse_matrix(grid: AngularGrid) -> np.ndarray:
    # rows j, columns m
    return np.exp(1j * np.outer(grid.nodes, grid.m_values))


def grid_to_fourier(samples: np.ndarray, grid: AngularGrid, rho: float = 0.0) -> FourierCoefficients:
    samples = np.asarray(samples, dtype=complex)
    if samples.shape != (grid.n_nodes,):
        raise ValueError(
            f"expected {grid.n_nodes} samples for M = {grid.m_order}, got shape {samples.shape}"
        )
    return FourierCoefficients(_forward_matrix(grid) @ samples, rho)


def fourier_to_grid(coeffs: FourierCoefficients, grid: AngularGrid) -> np.ndarray:
    if coeffs.m_order != grid.m_order:
        raise ValueError(
            f"coefficient truncation {coeffs.m_order} does not match grid order {grid.m_order}"
        )
    return _inverse_matrix(grid) @ coeffs.values


def interpolate(samples: np.ndarray, grid: AngularGrid, phi) -> np.ndarray:
    """Trigonometric interpolation of node samples to arbitrary angles.

    Exact at the nodes and for any trigonometric polynomial of degree <= M;
    2*pi-periodic in phi.  phi may be a scalar or an array; the result has
    phi's shape (scalar in, scalar out).
    """
    coeffs = grid_to_fourier(samples, grid)
    phi_arr = np.atleast_1d(np.asarray(phi, dtype=float))
    out = np.exp(1j * np.outer(phi_arr, grid.m_values)) @ coeffs.values
    if np.isscalar(phi) or np.ndim(phi) == 0:
        return complex(out[0])
    return out.reshape(np.shape(phi))


def kinetic_matrix(grid: AngularGrid) -> np.ndarray:
    """Angular kinetic-energy matrix h0: the second derivative restricted to
    the band-limited space, h0_{jj'} = -(1/(2M+1)) sum_m m^2 exp(im(phi_j-phi_j')).

    Real, symmetric, circulant; rows sum to zero; applying it to samples of
    exp(im phi) returns -m^2 times the samples for |m| <= M.
    """
    diffs = grid.nodes[:, None] - grid.nodes[None, :]
    m = grid.m_values
    h0 = -np.sum(m**2 * np.exp(1j * diffs[..., None] * m), axis=-1).real / grid.n_nodes
    return 0.5 * (h0 + h0.T)  # symmetrize away roundoff
