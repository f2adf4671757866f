"""Interaction models: elliptic-base barrier and planar dipole-dipole forms.

Every potential evaluates pointwise as U(rho, phi) and on a mesh as
values(rho_nodes, phi_nodes) -> (n_rho, n_phi).  Incident-direction rotation
enters through rotated_eval(phi_q, rho, phi) = eval(rho, phi + phi_q).

Hard cores are geometric, not energetic: a dipole's hard wall is reported as
wall_radius and imposed by the radial grid (Dirichlet node at rho_min), never
as a large finite potential value.  Pointwise evaluation inside the wall
returns +inf as a sentinel.

Units: hbar = mu = 1 throughout.  For dipolar variants the strength is
D = d1*d2 (dipolar length), so distances in units of D make U = bracket/rho^3.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import cos, sin

import numpy as np


class Potential:
    """Common mesh plumbing; concrete variants implement _bare(rho, phi)."""

    units = "hbar_mu"

    @property
    def wall_radius(self) -> float:
        return 0.0

    def eval(self, rho: float, phi: float) -> float:
        raise NotImplementedError

    def rotated_eval(self, phi_q: float, rho: float, phi: float) -> float:
        return self.eval(rho, phi + phi_q)

    def values(self, rho: np.ndarray, phi: np.ndarray) -> np.ndarray:
        """Vectorized evaluation on a tensor mesh, shape (n_rho, n_phi)."""
        rho = np.atleast_1d(np.asarray(rho, dtype=float))
        phi = np.atleast_1d(np.asarray(phi, dtype=float))
        out = np.empty((rho.size, phi.size))
        for i, r in enumerate(rho):
            for j, p in enumerate(phi):
                out[i, j] = self.eval(float(r), float(p))
        return out


@dataclass(frozen=True)
class EllipticBarrier(Potential):
    """Cylindrical barrier of height u0 over an elliptical base.

    The base boundary is the polar radius of a true ellipse with semi-axes
    a_x = a(0), a_y = a(pi/2):

        a(phi) = a_x a_y / sqrt(a_y^2 cos^2 phi + a_x^2 sin^2 phi).

    The potential takes exactly the two values {0, u0}.
    """

    u0: float
    a_x: float
    a_y: float

    def __post_init__(self) -> None:
        if self.u0 < 0.0:
            raise ValueError(f"barrier height must be >= 0, got {self.u0}")
        if self.a_x <= 0.0 or self.a_y <= 0.0:
            raise ValueError(f"semi-axes must be > 0, got {self.a_x}, {self.a_y}")

    @classmethod
    def circular(cls, u0: float, a0: float) -> "EllipticBarrier":
        return cls(u0, a0, a0)

    def edge_radius(self, phi) -> np.ndarray:
        return self.a_x * self.a_y / np.hypot(self.a_y * np.cos(phi), self.a_x * np.sin(phi))

    def eval(self, rho: float, phi: float) -> float:
        if rho < 0.0:
            raise ValueError(f"rho must be >= 0, got {rho}")
        return self.u0 if rho <= float(self.edge_radius(phi)) else 0.0

    def values(self, rho: np.ndarray, phi: np.ndarray) -> np.ndarray:
        rho = np.atleast_1d(np.asarray(rho, dtype=float))
        edge = self.edge_radius(np.atleast_1d(np.asarray(phi, dtype=float)))
        return np.where(rho[:, None] <= edge[None, :], self.u0, 0.0)


def elliptic_radius(potential: EllipticBarrier, phi) -> np.ndarray:
    """Base-boundary radius a(phi) of a barrier potential."""
    if not isinstance(potential, EllipticBarrier):
        raise TypeError(f"elliptic_radius needs an EllipticBarrier, got {type(potential).__name__}")
    return potential.edge_radius(phi)


@dataclass(frozen=True)
class GaussianBarrier(Potential):
    """Isotropic smooth barrier u0 * exp(-(rho/a0)^2).

    The step barriers limit radial convergence through their discontinuity;
    this profile is analytic everywhere, so solver errors sit at the stencil
    order.  Used for convergence-order studies.
    """

    u0: float
    a0: float

    def __post_init__(self) -> None:
        if self.u0 < 0.0:
            raise ValueError(f"barrier height must be >= 0, got {self.u0}")
        if self.a0 <= 0.0:
            raise ValueError(f"width must be > 0, got {self.a0}")

    def eval(self, rho: float, phi: float) -> float:
        if rho < 0.0:
            raise ValueError(f"rho must be >= 0, got {rho}")
        return self.u0 * float(np.exp(-((rho / self.a0) ** 2)))

    def values(self, rho: np.ndarray, phi: np.ndarray) -> np.ndarray:
        rho = np.atleast_1d(np.asarray(rho, dtype=float))
        phi = np.atleast_1d(np.asarray(phi, dtype=float))
        radial = self.u0 * np.exp(-((rho / self.a0) ** 2))
        return np.broadcast_to(radial[:, None], (rho.size, phi.size)).copy()


class _DipoleCore(Potential):
    """Shared 1/rho^3 radial factor with hard-wall / origin handling."""

    units = "dipolar"

    strength: float
    rho_hw: float

    def _angular(self, phi) -> np.ndarray:
        raise NotImplementedError

    @property
    def wall_radius(self) -> float:
        return self.rho_hw

    def eval(self, rho: float, phi: float) -> float:
        if rho <= self.rho_hw:
            if self.rho_hw == 0.0 and rho <= 0.0:
                raise ValueError("dipole potential without a hard wall is singular at rho = 0")
            return np.inf
        return self.strength * float(self._angular(phi)) / rho**3

    def values(self, rho: np.ndarray, phi: np.ndarray) -> np.ndarray:
        rho = np.atleast_1d(np.asarray(rho, dtype=float))
        ang = self._angular(np.atleast_1d(np.asarray(phi, dtype=float)))
        if self.rho_hw == 0.0 and np.any(rho <= 0.0):
            raise ValueError("dipole potential without a hard wall is singular at rho = 0")
        inside = rho <= self.rho_hw
        radial = np.zeros_like(rho)
        radial[~inside] = self.strength / rho[~inside] ** 3
        out = radial[:, None] * ang[None, :]
        out[inside, :] = np.inf  # sentinel regardless of the bracket's sign
        return out


@dataclass(frozen=True)
class DipoleGeneral(_DipoleCore):
    """Two arbitrarily oriented dipoles colliding in the plane.

    alpha and gamma tilt dipoles 1 and 2 out of the collision plane, beta
    rotates their polarization planes against each other:

        U = (strength/rho^3) [sin a sin g cos b + cos a cos g
                              - 3 sin a sin g cos(phi) cos(phi - b)].

    The default hard wall rho_hw = 0.1*strength regularizes the attractive
    head-to-tail configurations; pass rho_hw explicitly to override.
    """

    alpha: float
    beta: float
    gamma: float
    strength: float = 1.0
    rho_hw: float = field(default=-1.0)

    def __post_init__(self) -> None:
        if self.strength < 0.0:
            raise ValueError(f"strength must be >= 0, got {self.strength}")
        if self.rho_hw < 0.0:
            object.__setattr__(self, "rho_hw", 0.1 * self.strength)

    def _angular(self, phi) -> np.ndarray:
        sa, ca = sin(self.alpha), cos(self.alpha)
        sg, cg = sin(self.gamma), cos(self.gamma)
        return (
            sa * sg * cos(self.beta)
            + ca * cg
            - 3.0 * sa * sg * np.cos(phi) * np.cos(phi - self.beta)
        )


class DipoleTiltedPolarized(DipoleGeneral):
    """Parallel dipoles tilted by alpha into the plane (beta = 0, gamma = alpha):
    U = (strength/rho^3) [1 - 3 sin^2(alpha) cos^2(phi)].
    """

    def __init__(self, alpha: float, strength: float = 1.0, rho_hw: float = -1.0):
        super().__init__(alpha=alpha, beta=0.0, gamma=alpha, strength=strength, rho_hw=rho_hw)


@dataclass(frozen=True)
class DipoleIsotropic(_DipoleCore):
    """Dipoles polarized normal to the plane: purely repulsive strength/rho^3."""

    strength: float = 1.0

    def __post_init__(self) -> None:
        if self.strength < 0.0:
            raise ValueError(f"strength must be >= 0, got {self.strength}")

    @property
    def rho_hw(self) -> float:  # type: ignore[override]
        return 0.0

    def _angular(self, phi) -> np.ndarray:
        return np.ones_like(np.asarray(phi, dtype=float))
