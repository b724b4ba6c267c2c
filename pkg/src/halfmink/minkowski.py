"""Whole-space Klein-Gordon kernels: the causal propagator and the vacuum
two-point function, each in two independent representations.

Mode sums (the normalization anchors)
-------------------------------------
With measure d^{d-1}k / (2 pi)^{d-1} the causal propagator

    G(x, x') = int  sin(omega dt) / omega  e^{i k . dx}  dmu(k)

satisfies G|_{dt=0} = 0 and  d/dt G|_{dt=0} = delta^{(d-1)}(dx), which is
the defining normalization used everywhere in this package.  The vacuum
two-point function uses phase e^{+i omega dt} and measure 1/(2 omega); this
is the phase for which the antisymmetric part equals +i G (checked by the
verify suite, not assumed).  The damping e^{-eps omega} realizes
dt -> dt + i eps.

Closed forms (true units)
-------------------------
    d=2:  G = 1/2           sgn(dt) J_0(m sqrt(2 sigma)) Theta(sigma)
    d=3:  G = 1/(2 pi)      sgn(dt) cos(m sqrt(2 sigma)) / sqrt(2 sigma) Theta
    d=4:  G = sgn(dt) [ delta(sigma)/(4 pi)  -  m J_1(m sqrt(2 sigma)) /
                        (4 pi sqrt(2 sigma)) Theta(sigma) ]
plus the descent rule G_{d+2} = (1/ 2 pi) d/dsigma G_d for d = 5, 6.  The
delta pieces are never evaluated pointwise; off-cone evaluation returns the
Theta parts only.  The printed prefactors of the source material differ
from these; the ratio is computed by the calibration oracle and reported.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import j0 as _j0, j1 as _j1

from .config import (
    InfraredError,
    ModelConfig,
    NonConvergenceError,
    OnConeError,
    QuadratureSpec,
)
from .geometry import PairSeparation, Point, pair_separation
from .specfun import bessel_k01_complex

#: |sigma| below which pointwise closed-form evaluation refuses to run
EVAL_GUARD = 1e-8

#: calibrated (true) prefactor over the printed prefactor of the general
#: closed-form display, per dimension.  d=3 has no constant ratio: the
#: printed half-integer order produces sin where the mode sum demands cos
#: (and vanishes as m -> 0); recorded as NaN with a note in the report.
PAPER_PREFACTOR_RATIO = {2: math.pi, 3: float("nan"), 4: -math.pi}

#: true delta(sigma) coefficient over the one in the 4D massless example
#: display (1/(4 pi) vs 1/(2 pi))
PAPER_4D_EXAMPLE_RATIO = 0.5


def sgn(x: float) -> float:
    return 0.0 if x == 0 else math.copysign(1.0, x)


# ---------------------------------------------------------------------------
# Gauss-Legendre panel quadrature for damped oscillatory radial integrals
# ---------------------------------------------------------------------------


def radial_grid(k_max: float, osc_scale: float, order: int):
    """Panelized Gauss-Legendre nodes/weights on [0, k_max].

    Panel width tracks the shortest oscillation wavelength 2 pi / osc_scale
    so a fixed-order rule stays accurate on every panel.
    """
    width = 2.0 * math.pi / max(osc_scale, 1e-3)
    n_panels = max(8, int(math.ceil(k_max / width)) * 2)
    n_panels = min(n_panels, 4000)
    edges = np.linspace(0.0, k_max, n_panels + 1)
    x, w = np.polynomial.legendre.leggauss(order)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[:-1] + edges[1:])
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return nodes, weights


def _causal_radial_integrand(d, m, dt, r, eps, k):
    omega = np.sqrt(k * k + m * m)
    damp = np.exp(-eps * omega)
    with np.errstate(invalid="ignore", divide="ignore"):
        tpart = np.where(omega > 0, np.sin(omega * dt) / np.where(omega > 0, omega, 1.0), dt)
    if d == 2:
        ang = np.cos(k * r) / math.pi
    elif d == 3:
        ang = k * _j0(k * r) / (2.0 * math.pi)
    elif d == 4:
        if r > 1e-12:
            ang = k * np.sin(k * r) / (2.0 * math.pi**2 * r)
        else:
            ang = k * k / (2.0 * math.pi**2)
    else:
        raise ValueError("mode sums support d in {2, 3, 4}")
    return ang * tpart * damp


def _vacuum_radial_integrand(d, m, dt, r, eps, k):
    omega = np.sqrt(k * k + m * m)
    damp = np.exp(-eps * omega)
    with np.errstate(invalid="ignore", divide="ignore"):
        tpart = np.exp(1j * omega * dt) / (2.0 * np.where(omega > 0, omega, np.inf))
    if d == 2:
        ang = np.cos(k * r) / math.pi
    elif d == 3:
        ang = k * _j0(k * r) / (2.0 * math.pi)
    elif d == 4:
        if r > 1e-12:
            ang = k * np.sin(k * r) / (2.0 * math.pi**2 * r)
        else:
            ang = k * k / (2.0 * math.pi**2)
    else:
        raise ValueError("mode sums support d in {2, 3, 4}")
    return ang * tpart * damp


def _converged_radial(integrand, quad: QuadratureSpec, osc_scale: float):
    """Integrate on [0, k_max], reporting non-convergence against rel_tol."""
    nodes, weights = radial_grid(quad.k_max, osc_scale, quad.n_radial)
    full = np.sum(weights * integrand(nodes))
    cut = nodes <= 0.75 * quad.k_max
    partial = np.sum(weights[cut] * integrand(nodes[cut]))
    scale = max(abs(full), 1e-12)
    if abs(full - partial) > 50.0 * quad.rel_tol * scale:
        raise NonConvergenceError(
            f"radial quadrature tail {abs(full - partial):.3e} exceeds "
            f"tolerance at k_max={quad.k_max}"
        )
    return full


def causal_modesum(cfg: ModelConfig, pair: PairSeparation, eps: float,
                   quad: QuadratureSpec = QuadratureSpec(), reflected=False) -> float:
    """Causal propagator via the damped radial mode integral (d in 2..4).

    ``reflected=True`` evaluates against the mirror image of x' (spatial
    distance r_reflected), which is the whole-space kernel entering the
    method of images.
    """
    if cfg.d not in (2, 3, 4):
        raise ValueError("causal_modesum supports d in {2, 3, 4}")
    if eps <= 0:
        raise ValueError("eps must be > 0")
    r = pair.r_reflected if reflected else pair.r_direct
    dt = pair.dt
    if dt == 0.0:
        return 0.0
    osc = max(abs(dt), r, 1.0)
    val = _converged_radial(
        lambda k: _causal_radial_integrand(cfg.d, cfg.mass, dt, r, eps, k), quad, osc
    )
    return float(np.real(val))


def vacuum_two_point(cfg: ModelConfig, pair: PairSeparation, eps: float,
                     quad: QuadratureSpec = QuadratureSpec(), reflected=False) -> complex:
    """Poincare-vacuum two-point function via the damped radial mode integral."""
    cfg.require_state_ok()
    if cfg.d not in (2, 3, 4):
        raise ValueError("vacuum_two_point supports d in {2, 3, 4}")
    if eps <= 0:
        raise ValueError("eps must be > 0")
    r = pair.r_reflected if reflected else pair.r_direct
    osc = max(abs(pair.dt), r, 1.0)
    return complex(
        _converged_radial(
            lambda k: _vacuum_radial_integrand(cfg.d, cfg.mass, pair.dt, r, eps, k),
            quad, osc,
        )
    )


# ---------------------------------------------------------------------------
# closed forms
# ---------------------------------------------------------------------------


def _causal_closed_shape(d: int, m: float, sigma: float) -> float:
    """Theta-supported part of the causal propagator divided by sgn(dt)."""
    if sigma <= 0.0:
        return 0.0
    u = m * math.sqrt(2.0 * sigma)
    if d == 2:
        return 0.5 * (_j0(u) if m > 0 else 1.0)
    if d == 3:
        return math.cos(u) / (2.0 * math.pi * math.sqrt(2.0 * sigma))
    if d == 4:
        if m == 0.0:
            return 0.0
        return -m * _j1(u) / (4.0 * math.pi * math.sqrt(2.0 * sigma))
    if d == 5:
        s = math.sqrt(2.0 * sigma)
        if m == 0.0:
            return -1.0 / (4.0 * math.pi**2 * s**3)
        return -(m**3) * (u * math.sin(u) + math.cos(u)) / (4.0 * math.pi**2 * u**3)
    if d == 6:
        if m == 0.0:
            return 0.0
        if u < 1e-3:
            # series of (J0(u) u - 2 J1(u)) / u^3 = -1/8 + u^2/96 - ...
            poly = -0.125 + u * u / 96.0
        else:
            poly = (_j0(u) * u - 2.0 * _j1(u)) / u**3
        return -(m**4) * poly / (8.0 * math.pi**2)
    raise ValueError("closed causal form implemented for d in {2, ..., 6}")


def causal_closed(cfg: ModelConfig, pair: PairSeparation, eps: float = 0.0,
                  eval_guard: float = EVAL_GUARD, calibration: float = 1.0,
                  reflected=False) -> float:
    """Closed-form causal propagator off the light cone.

    Distributional delta pieces (even d) are structural and never evaluated
    here; requests within ``eval_guard`` of the cone raise OnConeError.
    ``calibration`` is the stored equal-time calibration factor (1.0 for
    the true-unit forms implemented here; the verify report re-derives it).
    """
    sigma = pair.sigma_minus if reflected else pair.sigma
    if abs(sigma) < eval_guard:
        raise OnConeError(f"|sigma| = {abs(sigma):.2e} below eval guard")
    return calibration * sgn(pair.dt) * _causal_closed_shape(cfg.d, cfg.mass, sigma)


def vacuum_closed(cfg: ModelConfig, pair: PairSeparation, eps: float,
                  reflected=False, time_factor: float = 1.0) -> complex:
    """Closed-form vacuum two-point function at the regularized interval.

    Evaluates on sigma_tilde = sigma + i eps dt + eps^2 (principal branches
    of sqrt/log/K), which reproduces the mode sum with phase e^{+i omega dt}
    and damping e^{-eps omega}:

        d=2:  (1/2 pi) K_0(m sqrt(-2 sigma_tilde))
        d=3:  e^{-m sqrt(-2 sigma_tilde)} / (4 pi sqrt(-2 sigma_tilde))
        d=4:  m K_1(m sqrt(-2 sigma_tilde)) / (4 pi^2 sqrt(-2 sigma_tilde)),
              massless limit  -1 / (8 pi^2 sigma_tilde).
    """
    cfg.require_state_ok()
    if eps <= 0:
        raise ValueError("eps must be > 0")
    sigma = pair.sigma_minus if reflected else pair.sigma
    st = complex(sigma + eps * eps, time_factor * eps * pair.dt)
    return vacuum_closed_interval(cfg, st)


def vacuum_closed_interval(cfg: ModelConfig, sigma_tilde: complex) -> complex:
    """Vacuum two-point function as a function of the regularized interval."""
    cfg.require_state_ok()
    m = cfg.mass
    rt = np.sqrt(-2.0 * np.asarray(sigma_tilde, dtype=complex))
    if cfg.d == 2:
        k0, _ = bessel_k01_complex(m * rt)
        out = k0 / (2.0 * math.pi)
    elif cfg.d == 3:
        out = np.exp(-m * rt) / (4.0 * math.pi * rt)
    elif cfg.d == 4:
        if m == 0.0:
            out = 1.0 / (4.0 * math.pi**2 * rt * rt)
        else:
            _, k1 = bessel_k01_complex(m * rt)
            out = m * k1 / (4.0 * math.pi**2 * rt)
    else:
        raise ValueError("closed vacuum form implemented for d in {2, 3, 4}")
    out = np.asarray(out)
    return complex(out.reshape(-1)[0]) if out.size == 1 else out


def vacuum_closed_interval_array(cfg: ModelConfig, sigma_tilde: np.ndarray) -> np.ndarray:
    """Vectorized version of vacuum_closed_interval."""
    m = cfg.mass
    rt = np.sqrt(-2.0 * np.asarray(sigma_tilde, dtype=complex))
    if cfg.d == 2:
        k0, _ = bessel_k01_complex(m * rt)
        return k0 / (2.0 * math.pi)
    if cfg.d == 3:
        return np.exp(-m * rt) / (4.0 * math.pi * rt)
    if cfg.d == 4:
        if m == 0.0:
            return 1.0 / (4.0 * math.pi**2 * rt * rt)
        _, k1 = bessel_k01_complex(m * rt)
        return m * k1 / (4.0 * math.pi**2 * rt)
    raise ValueError("closed vacuum form implemented for d in {2, 3, 4}")


# ---------------------------------------------------------------------------
# smeared (distributional) evaluation against Gaussian test functions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GaussianTest:
    """Separable Gaussian test function

        f(x) = amplitude * prod_i exp(-(x_i - c_i)^2 / (2 w_i^2))

    over the d coordinates (t, x_perp..., z)."""

    center: Point
    widths: tuple
    amplitude: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "widths", tuple(float(w) for w in self.widths))
        if len(self.widths) != len(self.center.coords):
            raise ValueError("need one width per coordinate")
        if any(w <= 0 for w in self.widths):
            raise ValueError("widths must be > 0")

    def value(self, coords) -> float:
        out = self.amplitude
        for c, mu, w in zip(coords, self.center.coords, self.widths):
            out *= math.exp(-((c - mu) ** 2) / (2.0 * w * w))
        return out

    def fourier_1d(self, axis: int, k):
        """1D Fourier factor  int f_axis(x) e^{-i k x} dx  of the unit
        Gaussian profile on the given coordinate axis (amplitude excluded)."""
        mu = self.center.coords[axis]
        w = self.widths[axis]
        k = np.asarray(k, dtype=float)
        return math.sqrt(2.0 * math.pi) * w * np.exp(-0.5 * (w * k) ** 2) * np.exp(-1j * k * mu)


def _k_grid_for(tests, d, quad: QuadratureSpec):
    """Cartesian momentum grid adapted to the Gaussian widths and centers."""
    w_min = min(min(t.widths) for t in tests)
    c_max = max(max(abs(c) for c in t.center.coords) for t in tests) + 1.0
    k_cut = min(9.0 / w_min, quad.k_max)
    n = max(quad.n_radial * 4, int(k_cut * c_max) + 32)
    n = min(n, 160)
    x, w = np.polynomial.legendre.leggauss(n)
    nodes = k_cut * x  # symmetric grid on [-k_cut, k_cut]
    weights = k_cut * w
    return nodes, weights


def smeared_eval(kernel: str, f: GaussianTest, fp: GaussianTest, cfg: ModelConfig,
                 quad: QuadratureSpec = QuadratureSpec(), eps: float = 0.0) -> complex:
    """Smeared pairing K(f, f') for the whole-space kernels.

    kernel: 'causal' or 'vacuum'.  Momentum integrals use tensor
    Gauss-Legendre grids; the t and space Fourier transforms of the
    Gaussians are analytic, so no eps damping is needed.
    """
    d = cfg.d
    if kernel == "vacuum":
        cfg.require_state_ok()
    elif kernel != "causal":
        raise ValueError(f"unsupported kernel id {kernel!r}")
    nodes, weights = _k_grid_for([f, fp], d, quad)
    grids = np.meshgrid(*([nodes] * (d - 1)), indexing="ij")
    wgts = np.meshgrid(*([weights] * (d - 1)), indexing="ij")
    wprod = np.ones_like(grids[0])
    for g in wgts:
        wprod = wprod * g
    ksq = np.zeros_like(grids[0])
    for g in grids:
        ksq = ksq + g * g
    omega = np.sqrt(ksq + cfg.m_sq)

    # spatial factors: F(k) = int f(x) e^{-i k . x} d^{d-1}x (amplitude incl.)
    Ff = np.full(grids[0].shape, f.amplitude, dtype=complex)
    Fp = np.full(grids[0].shape, fp.amplitude, dtype=complex)
    for ax in range(1, d):
        Ff = Ff * f.fourier_1d(ax, grids[ax - 1])
        Fp = Fp * fp.fourier_1d(ax, grids[ax - 1])
    # time factors at +omega: int f(t) e^{+i omega t} dt
    Tf = f.fourier_1d(0, -omega)
    Tp = fp.fourier_1d(0, -omega)

    meas = wprod / (2.0 * np.pi) ** (d - 1)
    if eps > 0:
        meas = meas * np.exp(-eps * omega)
    if kernel == "vacuum":
        # pairing of kernel e^{+i omega dt} e^{-i k.(x - x')} / (2 omega)
        vals = Tf * np.conj(Tp) * Ff * np.conj(Fp) / (2.0 * omega)
        return complex(np.sum(meas * vals))
    # causal kernel sin(omega dt)/omega = (e^{i omega dt} - c.c.)/(2 i omega)
    plus = Tf * np.conj(Tp) * Ff * np.conj(Fp)
    minus = np.conj(Tf) * Tp * np.conj(Ff) * Fp
    vals = (plus - minus) / (2.0j * omega)
    return complex(np.sum(meas * vals))


# ---------------------------------------------------------------------------
# calibration of closed forms against the equal-time-normalized mode sum
# ---------------------------------------------------------------------------

_CALIBRATION_CACHE: dict = {}


def closed_form_calibration(cfg: ModelConfig, quad: QuadratureSpec = QuadratureSpec(),
                            eps: float = 1e-4) -> dict:
    """Ratio mode-sum / closed-form for the causal propagator.

    Evaluated once per (d, m^2) on interior timelike reference pairs and
    cached.  The mode sum carries the equal-time delta normalization, so
    this ratio is the single free constant of the closed-form family; its
    value against the printed prefactors of the source display is also
    reported.
    """
    key = (cfg.d, cfg.m_sq)
    if key in _CALIBRATION_CACHE:
        return _CALIBRATION_CACHE[key]
    ratios = []
    for dt, r in [(1.6, 0.4), (2.0, 0.9), (2.5, 1.3)]:
        pair = pair_separation(
            Point(dt, (0.0,) * (cfg.d - 2), 1.0 + r), Point(0.0, (0.0,) * (cfg.d - 2), 1.0)
        )
        try:
            closed = causal_closed(cfg, pair)
        except OnConeError:
            continue
        if abs(closed) < 1e-12:
            continue
        ms = causal_modesum(cfg, pair, eps, quad)
        ratios.append(ms / closed)
    gamma = float(np.median(ratios)) if ratios else 1.0
    out = {
        "gamma": gamma,
        "paper_prefactor_ratio": PAPER_PREFACTOR_RATIO.get(cfg.d, float("nan")),
        "n_reference_pairs": len(ratios),
    }
    _CALIBRATION_CACHE[key] = out
    return out
