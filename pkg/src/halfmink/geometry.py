"""Points, separations, the reflection map and regularized intervals.

Coordinates are (t, x_1 .. x_{d-2}, z) with metric signature
(+, -, ..., -).  The world function is

    sigma(x, x') = 1/2 [ (dt)^2 - |dx_perp|^2 - (z - z')^2 ],

positive for timelike separation.  Its reflected counterpart sigma_minus
replaces (z - z') by (z + z'); its zero set is the light cone of the mirror
image of x' across the boundary plane.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class Point:
    """Spacetime point.  ``image=True`` marks an intentional mirror point
    (the only case in which z < 0 is meaningful on the half-space)."""

    t: float
    x_perp: tuple = ()
    z: float = 0.0
    image: bool = False

    def __post_init__(self):
        object.__setattr__(self, "x_perp", tuple(float(v) for v in self.x_perp))
        if self.z < 0 and not self.image:
            raise ValueError("z < 0 requires the point to be flagged as an image")

    @property
    def coords(self) -> tuple:
        return (self.t, *self.x_perp, self.z)


def point_from_coords(coords, image=False) -> Point:
    """Build a Point from a flat (t, x_perp..., z) coordinate sequence."""
    coords = [float(c) for c in coords]
    if len(coords) < 2:
        raise ValueError("need at least (t, z)")
    return Point(t=coords[0], x_perp=tuple(coords[1:-1]), z=coords[-1], image=image)


def reflect(x: Point) -> Point:
    """Mirror map across the boundary plane: (t, x_perp, z) -> (t, x_perp, -z)."""
    return Point(t=x.t, x_perp=x.x_perp, z=-x.z, image=not x.image if x.z != 0 else x.image)


def synge(x: Point, xp: Point) -> float:
    """World function sigma(x, x') = 1/2 eta(x - x', x - x')."""
    dt = x.t - xp.t
    dperp = sum((a - b) ** 2 for a, b in zip(x.x_perp, xp.x_perp))
    if len(x.x_perp) != len(xp.x_perp):
        raise ValueError("points live in different dimensions")
    return 0.5 * (dt * dt - dperp - (x.z - xp.z) ** 2)


def synge_reflected(x: Point, xp: Point) -> float:
    """Reflected world function: sigma evaluated against the mirror of x'."""
    dt = x.t - xp.t
    if len(x.x_perp) != len(xp.x_perp):
        raise ValueError("points live in different dimensions")
    dperp = sum((a - b) ** 2 for a, b in zip(x.x_perp, xp.x_perp))
    return 0.5 * (dt * dt - dperp - (x.z + xp.z) ** 2)


@dataclass(frozen=True)
class PairSeparation:
    """Cached kinematic data of a point pair.

    tau_sq is the boundary-parallel interval (dt)^2 - |dx_perp|^2; it ties
    the two world functions together through

        tau_sq = 2 sigma + (z - z')^2 = 2 sigma_minus + (z + z')^2.
    """

    dt: float
    dx_perp: tuple
    z: float
    z_prime: float
    sigma: float
    sigma_minus: float
    tau_sq: float

    @property
    def rho(self) -> float:
        """Transverse spatial distance |dx_perp|."""
        return math.sqrt(sum(v * v for v in self.dx_perp))

    @property
    def r_direct(self) -> float:
        """Full spatial distance to x'."""
        return math.sqrt(self.rho**2 + (self.z - self.z_prime) ** 2)

    @property
    def r_reflected(self) -> float:
        """Full spatial distance to the mirror image of x'."""
        return math.sqrt(self.rho**2 + (self.z + self.z_prime) ** 2)

    @property
    def w(self) -> float:
        """Depth sum z + z'."""
        return self.z + self.z_prime

    @property
    def abs_tau(self) -> float:
        if self.tau_sq < 0:
            raise ValueError("|tau| undefined for tau_sq < 0")
        return math.sqrt(self.tau_sq)

    def swapped(self) -> "PairSeparation":
        """Separation of the argument-swapped pair (x', x)."""
        return PairSeparation(
            dt=-self.dt,
            dx_perp=tuple(-v for v in self.dx_perp),
            z=self.z_prime,
            z_prime=self.z,
            sigma=self.sigma,
            sigma_minus=self.sigma_minus,
            tau_sq=self.tau_sq,
        )

    def reflected(self) -> "PairSeparation":
        """Separation of (x, reflect(x')): swaps the roles of the two cones."""
        return PairSeparation(
            dt=self.dt,
            dx_perp=self.dx_perp,
            z=self.z,
            z_prime=-self.z_prime,
            sigma=self.sigma_minus,
            sigma_minus=self.sigma,
            tau_sq=self.tau_sq,
        )

    def with_depths(self, z: float, z_prime: float) -> "PairSeparation":
        """Same boundary-parallel data, new depths (used by depth smoothing)."""
        return separation_from_data(self.dt, self.dx_perp, z, z_prime)


def separation_from_data(dt, dx_perp, z, z_prime) -> PairSeparation:
    dx_perp = tuple(float(v) for v in dx_perp)
    perp_sq = sum(v * v for v in dx_perp)
    tau_sq = dt * dt - perp_sq
    return PairSeparation(
        dt=float(dt),
        dx_perp=dx_perp,
        z=float(z),
        z_prime=float(z_prime),
        sigma=0.5 * (tau_sq - (z - z_prime) ** 2),
        sigma_minus=0.5 * (tau_sq - (z + z_prime) ** 2),
        tau_sq=tau_sq,
    )


def pair_separation(x: Point, xp: Point) -> PairSeparation:
    """Compute and cache all separation data for a pair of points."""
    if len(x.x_perp) != len(xp.x_perp):
        raise ValueError("points live in different dimensions")
    dx = tuple(a - b for a, b in zip(x.x_perp, xp.x_perp))
    return separation_from_data(x.t - xp.t, dx, x.z, xp.z)


def regularized_interval(pair: PairSeparation, eps: float, which: str = "direct",
                         time_factor: float = 1.0) -> complex:
    """Epsilon-regularized interval.

    'direct'    -> sigma   + i eps dt + eps^2
    'reflected' -> sigma_-  + i eps dt + eps^2
    'feynman'   -> sigma   + i eps      (Feynman prescription)
    'feynman_reflected' -> sigma_- + i eps

    ``time_factor`` rescales the i*eps*dt term (the paper uses 1 in the
    Hadamard form and 2 in one proof; both limits agree as eps -> 0).
    """
    if eps <= 0:
        raise ValueError("eps must be > 0")
    if which == "direct":
        return complex(pair.sigma + eps * eps, time_factor * eps * pair.dt)
    if which == "reflected":
        return complex(pair.sigma_minus + eps * eps, time_factor * eps * pair.dt)
    if which == "feynman":
        return complex(pair.sigma, eps)
    if which == "feynman_reflected":
        return complex(pair.sigma_minus, eps)
    raise ValueError(f"unknown interval kind {which!r}")


def _hessian_fd(f, x0, h):
    """Central finite-difference Hessian of a scalar function on R^n."""
    n = len(x0)
    x0 = np.asarray(x0, dtype=float)
    hess = np.empty((n, n))
    f0 = f(x0)
    for i in range(n):
        for j in range(i, n):
            if i == j:
                xp = x0.copy(); xp[i] += h
                xm = x0.copy(); xm[i] -= h
                hess[i, i] = (f(xp) - 2 * f0 + f(xm)) / h**2
            else:
                xpp = x0.copy(); xpp[[i, j]] += h
                xpm = x0.copy(); xpm[i] += h; xpm[j] -= h
                xmp = x0.copy(); xmp[i] -= h; xmp[j] += h
                xmm = x0.copy(); xmm[[i, j]] -= h
                hess[i, j] = hess[j, i] = (f(xpp) - f(xpm) - f(xmp) + f(xmm)) / (4 * h**2)
    return hess


def coincidence_limit_check(stencil_h: float, d: int = 4, base=None) -> dict:
    """Finite-difference check of the coincidence limits of sigma.

    The Hessian of sigma(x, x') in x at x = x' must be the metric eta and
    its eta-trace must equal d.  Returns the maximal componentwise deviation
    and the trace deviation.
    """
    if stencil_h <= 0:
        raise ValueError("stencil_h must be > 0")
    if base is None:
        base = point_from_coords([0.3] + [0.1] * (d - 2) + [1.0])
    x0 = np.array(base.coords, dtype=float)

    def sig(c):
        return synge(point_from_coords(c, image=True), base)

    hess = _hessian_fd(sig, x0, stencil_h)
    eta = np.diag([1.0] + [-1.0] * (d - 1))
    trace = float(np.sum(np.diag(eta) * np.diag(hess)))  # eta^{mu nu} sigma_{mu nu}
    return {
        "max_component_deviation": float(np.max(np.abs(hess - eta))),
        "trace": trace,
        "trace_deviation": abs(trace - d),
    }


def gradient_fd(f, x0, h=1e-5):
    """Central finite-difference gradient, used by the Euler-identity tests."""
    x0 = np.asarray(x0, dtype=float)
    g = np.empty_like(x0)
    for i in range(len(x0)):
        xp = x0.copy(); xp[i] += h
        xm = x0.copy(); xm[i] -= h
        g[i] = (f(xp) - f(xm)) / (2 * h)
    return g


def lorentz_square(vec) -> float:
    """eta(v, v) for a (t, x_perp..., z) component vector."""
    v = np.asarray(vec, dtype=float)
    return float(v[0] ** 2 - np.sum(v[1:] ** 2))
