"""Window/wavelet descriptors and the numerics built on them.

A Window bundles a pointwise evaluation closure, an optional closed-form
Fourier transform (unitary convention, f_hat(w) = (2*pi)^{-1/2} * integral
f(x) exp(-i*w*x) dx), and an effective decay scale used to truncate
quadratures.  The built-in library covers the unit-mass Gaussian, the
Mexican hat, the Hermite wavelet d/dt exp(-t^2/2), and modulated/dilated
variants of any of them.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from scipy.integrate import quad

from .errors import (
    DerivativeOrderTooHigh,
    DivergentAdmissibility,
    GridTooCoarse,
    MomentOrderTooHigh,
    NonPositiveScale,
    NotAWavelet,
    ZeroAdmissibility,
)

SQRT_2PI = np.sqrt(2.0 * np.pi)

MAX_MOMENT_ORDER = 12
MAX_RHO_DERIVATIVE = 4
MAX_SIGMA_DERIVATIVE = 2
WAVELET_MOMENT_TOL = 1e-8

# Truncation radius for window quadratures, in units of decay_scale.
SUPPORT_RADII = 10.0


@dataclass(frozen=True)
class Window:
    """Analytic window descriptor.

    ``eval`` must accept ndarray input and decay faster than any polynomial
    within ``SUPPORT_RADII * decay_scale``.
    """

    name: str
    eval: Callable[[np.ndarray], np.ndarray]
    ft: Optional[Callable[[np.ndarray], np.ndarray]]
    decay_scale: float

    @property
    def support_radius(self) -> float:
        return SUPPORT_RADII * self.decay_scale

    def __call__(self, x):
        return self.eval(np.asarray(x, dtype=float))

    def ft_or_numeric(self, w):
        """Closed-form FT when available, else windowed quadrature."""
        if self.ft is not None:
            return self.ft(np.asarray(w, dtype=float))
        return numeric_ft(self, w)


def numeric_ft(g: Window, w) -> np.ndarray:
    """Trapezoid FT of g.eval over its truncation window."""
    w = np.atleast_1d(np.asarray(w, dtype=float))
    r = g.support_radius
    wmax = float(np.max(np.abs(w))) if w.size else 1.0
    # resolve both the window itself and the requested oscillation
    dx = min(g.decay_scale / 16.0, np.pi / (8.0 * max(wmax, 1.0)))
    n = int(np.ceil(2 * r / dx)) | 1
    x = np.linspace(-r, r, n + 1)
    wx = np.full(x.size, x[1] - x[0])
    wx[0] = wx[-1] = 0.5 * (x[1] - x[0])
    vals = g.eval(x) * wx
    out = np.exp(-1j * np.outer(w, x)) @ vals / SQRT_2PI
    return out if np.ndim(w) else out[0]


# ---------------------------------------------------------------------------
# built-in library


def gaussian_window(width: float = 1.0, unit_mass: bool = False) -> Window:
    if width <= 0:
        raise NonPositiveScale("gaussian width must be positive")
    norm = 1.0 / (width * SQRT_2PI) if unit_mass else 1.0
    name = "gauss-unit" if unit_mass else (f"gauss:{width:g}" if width != 1.0 else "gauss")

    def ev(x, _n=norm, _w=width):
        return _n * np.exp(-(x * x) / (2.0 * _w * _w))

    def ft(w, _n=norm, _w=width):
        return _n * _w * np.exp(-(_w * _w) * (w * w) / 2.0)

    return Window(name=name, eval=ev, ft=ft, decay_scale=width)


def mexican_hat_window() -> Window:
    def ev(x):
        return (1.0 - x * x) * np.exp(-(x * x) / 2.0)

    def ft(w):
        return (w * w) * np.exp(-(w * w) / 2.0)

    return Window(name="mexican-hat", eval=ev, ft=ft, decay_scale=1.0)


def hermite_wavelet_window() -> Window:
    """g(t) = d/dt exp(-t^2/2) = -t exp(-t^2/2); g_hat(w) = i*w*exp(-w^2/2)."""

    def ev(x):
        return -x * np.exp(-(x * x) / 2.0)

    def ft(w):
        return 1j * w * np.exp(-(w * w) / 2.0)

    return Window(name="hermite1", eval=ev, ft=ft, decay_scale=1.0)


def dog_window(m: int) -> Window:
    """Derivative-of-Gaussian wavelet d^m/dt^m exp(-t^2/2).

    Its spectrum (i*w)^m exp(-w^2/2) has an order-m zero at w = 0, so
    modulated copies provide reconstruction windows whose admissibility
    integrand vanishes to order m - 1 at the singular frequency.
    """
    if not 1 <= m <= 8:
        raise ValueError("derivative-of-Gaussian order must be in 1..8")
    herm = np.polynomial.hermite_e.HermiteE.basis(m)  # He_m(t)

    def ev(x, _h=herm, _m=m):
        x = np.asarray(x, dtype=float)
        return (-1.0) ** _m * _h(x) * np.exp(-(x * x) / 2.0)

    def ft(w, _m=m):
        w = np.asarray(w, dtype=float)
        return (1j * w) ** _m * np.exp(-(w * w) / 2.0)

    return Window(name=f"dog:{m}", eval=ev, ft=ft, decay_scale=1.0)


def modulate(g: Window, a: float) -> Window:
    """M_a g(x) = exp(i*a*x) g(x); shifts the spectrum by a."""
    a = float(a)
    ft = None
    if g.ft is not None:
        def ft(w, _g=g, _a=a):
            return _g.ft(np.asarray(w, dtype=float) - _a)

    def ev(x, _g=g, _a=a):
        x = np.asarray(x, dtype=float)
        return np.exp(1j * _a * x) * _g.eval(x)

    return Window(name=f"modulated:{g.name}:{a:g}", eval=ev, ft=ft,
                  decay_scale=g.decay_scale)


def dilate(g: Window, eps: float) -> Window:
    """g_eps(x) = g(eps*x); the decay scale stretches by 1/eps."""
    eps = float(eps)
    if eps <= 0:
        raise NonPositiveScale("dilation factor must be positive")
    ft = None
    if g.ft is not None:
        def ft(w, _g=g, _e=eps):
            return _g.ft(np.asarray(w, dtype=float) / _e) / _e

    def ev(x, _g=g, _e=eps):
        return _g.eval(np.asarray(x, dtype=float) * _e)

    return Window(name=f"dilated:{g.name}:{eps:g}", eval=ev, ft=ft,
                  decay_scale=g.decay_scale / eps)


def window_by_name(name: str) -> Window:
    """Resolve a window name, including modulated:/dilated: prefixes.

    Grammar: "gauss-unit" | "gauss" | "gauss:<w>" | "mexican-hat" |
    "hermite1" | "modulated:<name>:<a>" | "dilated:<name>:<eps>".
    """
    if name.startswith("modulated:"):
        base, a = name[len("modulated:"):].rsplit(":", 1)
        return modulate(window_by_name(base), float(a))
    if name.startswith("dilated:"):
        base, eps = name[len("dilated:"):].rsplit(":", 1)
        return dilate(window_by_name(base), float(eps))
    if name == "gauss-unit":
        return gaussian_window(unit_mass=True)
    if name == "gauss":
        return gaussian_window()
    if name.startswith("gauss:"):
        return gaussian_window(width=float(name.split(":", 1)[1]))
    if name == "mexican-hat":
        return mexican_hat_window()
    if name == "hermite1":
        return hermite_wavelet_window()
    if name.startswith("dog:"):
        return dog_window(int(name.split(":", 1)[1]))
    raise KeyError(f"unknown window {name!r}")


# ---------------------------------------------------------------------------
# moments


def moment_with_error(g: Window, k: int) -> tuple[complex, float]:
    if not 0 <= k <= MAX_MOMENT_ORDER:
        raise MomentOrderTooHigh(f"moment order {k} exceeds {MAX_MOMENT_ORDER}")
    r = g.support_radius
    n = 16384
    x = np.linspace(-r, r, n + 1)
    w = np.full(x.size, x[1] - x[0])
    w[0] = w[-1] = 0.5 * (x[1] - x[0])
    integrand = (x ** k) * g.eval(x)
    fine = complex(np.sum(integrand * w))
    coarse_w = np.full(x[::2].size, x[2] - x[0])
    coarse_w[0] = coarse_w[-1] = 0.5 * (x[2] - x[0])
    coarse = complex(np.sum(integrand[::2] * coarse_w))
    # trapezoid is O(h^2): Richardson difference estimates the error
    return fine, abs(fine - coarse) / 3.0


def moment(g: Window, k: int) -> complex:
    """k-th moment integral x^k g(x) dx over the truncation window."""
    return moment_with_error(g, k)[0]


def require_wavelet(g: Window) -> None:
    m0 = moment(g, 0)
    if abs(m0) >= WAVELET_MOMENT_TOL:
        raise NotAWavelet(f"window {g.name!r} has zeroth moment {m0:.3e}")


# ---------------------------------------------------------------------------
# admissibility constants


@dataclass(frozen=True)
class AdmissibilityConstant:
    """Admissibility value with its quadrature error estimate.

    For the single-window wavelet constant, ``value`` is the full-line
    integral of |g_hat|^2/|w| and ``half_line`` its w>0 part, which is what
    normalizes a synthesis over positive scales only.
    """

    value: complex
    quadrature_error_estimate: float
    half_line: float | None = None


def _check_small_freq_convergence(numerator, what: str) -> None:
    """The 1/|w| weight is integrable at 0 only if the numerator vanishes there.

    Probes numerator(+-exp(-u)); a non-decaying tail means the admissibility
    integral diverges logarithmically.
    """
    u = np.linspace(8.0, 36.0, 15)
    probes = np.concatenate([np.exp(-u), -np.exp(-u)])
    vals = np.abs(numerator(probes))
    scale = max(1.0, float(np.max(np.abs(numerator(np.linspace(-4, 4, 161))))))
    tail = max(vals[10:15].max(), vals[25:30].max())
    if tail > 1e-10 * scale:
        raise DivergentAdmissibility(
            f"{what}: integrand numerator does not vanish at omega=0 "
            f"(tail {tail:.3e} vs scale {scale:.3e}); the 1/|omega| integral diverges"
        )


def _decay_radius(numerator, start: float) -> float:
    r = max(start, 4.0)
    for _ in range(40):
        edge = np.max(np.abs(numerator(np.array([-r, r]))))
        if edge < 1e-18:
            return r
        r *= 1.5
    return r


def _quad_complex(fn, a, b, points=None):
    kw = {"limit": 400}
    if points:
        pts = [p for p in points if a < p < b]
        if pts:
            kw["points"] = pts
    re = quad(lambda x: fn(x).real, a, b, **kw)
    im = quad(lambda x: fn(x).imag, a, b, **kw)
    return complex(re[0], im[0]), re[1] + im[1]


def admissibility_cg(g: Window) -> AdmissibilityConstant:
    """Wavelet constant C_g = integral |g_hat(w)|^2 / |w| dw.

    Requires the vanishing-zeroth-moment gate (so |g_hat|^2 ~ w^2 near 0 and
    the weight is integrable).  ``half_line`` is the w>0 share.
    """
    require_wavelet(g)

    def numerator(w):
        v = g.ft_or_numeric(w)
        return (v * np.conj(v)).real

    _check_small_freq_convergence(numerator, f"C_g[{g.name}]")
    r = _decay_radius(numerator, 6.0 / max(g.decay_scale, 1e-3))

    def integrand(w):
        return numerator(np.asarray([w]))[0] / abs(w)

    pos = quad(integrand, 0.0, r, limit=400)
    neg = quad(integrand, -r, 0.0, limit=400)
    value = pos[0] + neg[0]
    err = pos[1] + neg[1]
    if value <= 0 or not np.isfinite(value):
        raise DivergentAdmissibility(f"C_g[{g.name}] evaluated to {value}")
    return AdmissibilityConstant(value=value, quadrature_error_estimate=err,
                                 half_line=pos[0])


def admissibility_cgpsi(g: Window, psi: Window, c2: float) -> AdmissibilityConstant:
    """Reconstruction-pair constant
    C_{g,psi,c2} = integral psi_hat(c2*(w-1)) * conj(g_hat(c2*(w-1))) dw/|w|.

    Finite only when the numerator vanishes at w=0, i.e. when
    psi_hat(-c2)*conj(g_hat(-c2)) = 0; otherwise DivergentAdmissibility.
    """
    c2 = float(c2)

    def numerator(w):
        arg = c2 * (np.asarray(w, dtype=float) - 1.0)
        return psi.ft_or_numeric(arg) * np.conj(g.ft_or_numeric(arg))

    _check_small_freq_convergence(numerator, f"C_gpsi[{g.name},{psi.name}]")
    # numerator support: |c2*(w-1)| up to the windows' spectral decay
    r = 1.0 + _decay_radius(lambda w: numerator(w), 1.0 + 12.0 / abs(c2))

    def integrand(w):
        return numerator(np.asarray([w]))[0] / abs(w)

    value, err = _quad_complex(integrand, -r, r, points=[0.0, 1.0])
    if not np.isfinite(value):
        raise DivergentAdmissibility(f"C_gpsi[{g.name},{psi.name}] is not finite")
    if abs(value) < 1e-10:
        raise ZeroAdmissibility(
            f"C_gpsi[{g.name},{psi.name}] = {value:.3e}; reconstruction impossible"
        )
    return AdmissibilityConstant(value=value, quadrature_error_estimate=err)


# ---------------------------------------------------------------------------
# seminorms


@dataclass(frozen=True)
class SeminormEstimate:
    indices: tuple
    value: float
    grid_spec: str


_CENTRAL_STENCILS = {
    0: np.array([1.0]),
    1: np.array([-0.5, 0.0, 0.5]),
    2: np.array([1.0, -2.0, 1.0]),
    3: np.array([-0.5, 1.0, 0.0, -1.0, 0.5]),
    4: np.array([1.0, -4.0, 6.0, -4.0, 1.0]),
}


def _central_derivative(vals: np.ndarray, h: float, p: int) -> tuple[np.ndarray, int]:
    """p-th derivative by central differences; returns values and edge trim."""
    sten = _CENTRAL_STENCILS[p]
    if p == 0:
        return vals, 0
    half = (sten.size - 1) // 2
    out = np.zeros(vals.size - 2 * half, dtype=vals.dtype)
    for k, c in enumerate(sten):
        if c != 0.0:
            out += c * vals[k:k + out.size]
    return out / h ** p, half


def seminorm_rho(g: Window, k: int, p: int, n_probe: int = 16385) -> SeminormEstimate:
    """Schwartz seminorm rho_{k,p}(g) = sup |x^k g^(p)(x)| on a probe grid."""
    if not 0 <= p <= MAX_RHO_DERIVATIVE:
        raise DerivativeOrderTooHigh(f"derivative order {p} exceeds {MAX_RHO_DERIVATIVE}")
    r = g.support_radius
    x = np.linspace(-r, r, n_probe)
    h = x[1] - x[0]
    vals = np.asarray(g.eval(x), dtype=complex)
    dvals, trim = _central_derivative(vals, h, p)
    xs = x[trim:x.size - trim] if trim else x
    value = float(np.max(np.abs(xs ** k * dvals)))
    return SeminormEstimate(indices=(k, p), value=value,
                            grid_spec=f"[-{r:g},{r:g}] n={n_probe} central-diff h={h:.3g}")


def seminorm_sigma(grid, l: int, m: int, s: int, r: int) -> SeminormEstimate:
    """Seminorm sup xi^s |x^r d_xi^l d_x^m F| over a time-scale grid.

    ``grid`` is any object with x_axis, xi_axis (positive) and values
    attributes; derivatives use np.gradient on the (possibly non-uniform)
    axes, so l + m <= 2.
    """
    if l + m > MAX_SIGMA_DERIVATIVE:
        raise DerivativeOrderTooHigh(f"l+m = {l + m} exceeds {MAX_SIGMA_DERIVATIVE}")
    x = np.asarray(grid.x_axis, dtype=float)
    xi = np.asarray(grid.xi_axis, dtype=float)
    if np.any(xi <= 0):
        raise ValueError("sigma seminorm is defined over a positive scale axis")
    vals = np.asarray(grid.values, dtype=complex)
    need_x = 1 + 2 * m
    need_xi = 1 + 2 * l
    if (m and x.size < max(4, need_x)) or (l and xi.size < max(4, need_xi)):
        raise GridTooCoarse("axis too short for the finite-difference stencil")
    for _ in range(m):
        vals = np.gradient(vals, x, axis=0)
    for _ in range(l):
        vals = np.gradient(vals, xi, axis=1)
    # np.gradient is one-sided on the boundary; keep the interior
    sl_x = slice(m, x.size - m if m else None)
    sl_xi = slice(l, xi.size - l if l else None)
    core = vals[sl_x, sl_xi]
    weight = (np.abs(x[sl_x]) ** r)[:, None] * (xi[sl_xi] ** s)[None, :]
    value = float(np.max(np.abs(core) * weight)) if core.size else 0.0
    return SeminormEstimate(indices=(l, m, s, r), value=value,
                            grid_spec=f"{x.size}x{xi.size} grid interior")
