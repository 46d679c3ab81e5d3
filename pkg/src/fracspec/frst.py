"""Fractional Stockwell transform: forward, synthesis, reconstruction.

Forward transform of a signal f at time shift x and frequency xi != 0::

    S_g^alpha f(x, xi) = |xi| * integral f(t) conj(g(xi*(t-x))) K_alpha(t, xi) dt

The alpha = 0 branch is the zero operator; alpha = pi is rejected (the
delta-branch kernel does not define a Stockwell transform).  Two window
classes coexist: unit-mass windows (gauss-unit) give the transform its
spectrogram reading, while the asymptotic machinery works with
vanishing-moment wavelet-class windows; the operators accept either.
Synthesis is the adjoint-type quadrature

    (S_g^alpha)* F(t) = |sin alpha| * 2D-integral F(x, xi) g(xi*(t-x)) K_{-alpha}(t, xi) dx dxi

over both signs of xi, and composing synthesis (window psi) with analysis
(window g) reproduces C_{g,psi,c2} * f when that admissibility constant is
finite.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from .distributions import DistributionDescriptor, TestFunction, pair
from .errors import GridTooCoarse, MalformedCSV, SingularAngle
from .fraccore import (
    AngleKind,
    FracParam,
    CLASSICAL_FT_PARAM,
    SampledSignal,
    _chunked_rows,
    check_sampling,
)
from .windows import Window, admissibility_cgpsi

XI_FLOOR = 2.0 ** -6

SignalOrDistribution = Union[SampledSignal, DistributionDescriptor]


@dataclass(frozen=True)
class TFGrid:
    """Complex matrix over a time axis and a frequency/scale axis.

    values[i, j] is the transform at (x_axis[i], xi_axis[j]).  The xi axis
    is strictly monotone and bounded away from 0 by XI_FLOOR.
    """

    x_axis: np.ndarray = field(repr=False)
    xi_axis: np.ndarray = field(repr=False)
    values: np.ndarray = field(repr=False)
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        x = np.asarray(self.x_axis, dtype=float)
        xi = np.asarray(self.xi_axis, dtype=float)
        vals = np.asarray(self.values, dtype=complex)
        object.__setattr__(self, "x_axis", x)
        object.__setattr__(self, "xi_axis", xi)
        object.__setattr__(self, "values", vals)
        if np.any(np.diff(x) <= 0) or np.any(np.diff(xi) <= 0):
            raise ValueError("grid axes must be strictly increasing")
        if np.any(np.abs(xi) < XI_FLOOR):
            raise ValueError(f"|xi| entries below the floor {XI_FLOOR}")
        if vals.shape != (x.size, xi.size):
            raise ValueError("values shape does not match the axes")
        if not np.all(np.isfinite(vals)):
            raise ValueError("grid contains non-finite values")


def symmetric_log_xi_axis(xi_min: float = 2.0 ** -3, xi_max: float = 2.0 ** 3,
                          n_per_sign: int = 96) -> np.ndarray:
    """Geometric |xi| grid on both signs, increasing overall (FRST)."""
    pos = np.exp(np.linspace(np.log(xi_min), np.log(xi_max), n_per_sign))
    return np.concatenate([-pos[::-1], pos])


def positive_log_xi_axis(xi_min: float = 2.0 ** -4, xi_max: float = 2.0 ** 4,
                         n: int = 96) -> np.ndarray:
    """Geometric scale grid on the positive axis (FRWT)."""
    return np.exp(np.linspace(np.log(xi_min), np.log(xi_max), n))


def _trapezoid_weights(axis: np.ndarray) -> np.ndarray:
    w = np.zeros_like(axis)
    d = np.diff(axis)
    w[:-1] += 0.5 * d
    w[1:] += 0.5 * d
    return w


def log_branch_weights(xi_axis: np.ndarray) -> np.ndarray:
    """d xi weights realized as trapezoid in log|xi| times the |xi| Jacobian,
    evaluated independently on each sign branch."""
    xi = np.asarray(xi_axis, dtype=float)
    w = np.zeros_like(xi)
    for mask in (xi < 0, xi > 0):
        if not np.any(mask):
            continue
        branch = xi[mask]
        if branch.size < 2:
            raise GridTooCoarse("xi sign branch needs at least 2 points")
        v = np.log(np.abs(branch))
        # v runs downhill on the negative branch; weights stay positive
        d = np.abs(np.diff(v))
        wb = np.zeros_like(v)
        wb[:-1] += 0.5 * d
        wb[1:] += 0.5 * d
        w[mask] = wb * np.abs(branch)
    return w


# ---------------------------------------------------------------------------
# forward


def frst_integrand_probe(p: FracParam, g: Window, x: float, xi: float,
                         drop_xi_chirp: bool = False) -> TestFunction:
    """The FRST integrand t -> |xi| conj(g(xi(t-x))) K_alpha(t, xi) as a probe.

    With drop_xi_chirp the constant factor exp(i*c1*xi^2/2) is omitted,
    which evaluates exp(-i*c1*xi^2/2) * S_g^alpha f directly (the gauge the
    asymptotic theorems use) without forming huge cancelling phases.
    """
    absxi = abs(xi)
    xi2term = 0.0 if drop_xi_chirp else 0.5 * p.c1 * xi * xi

    def fn(t, _p=p, _g=g, _x=x, _xi=xi):
        t = np.asarray(t, dtype=float)
        phase = 0.5 * _p.c1 * t * t - _p.c2 * t * _xi + xi2term
        return absxi * np.conj(_g.eval(_xi * (t - _x))) * _p.c_alpha * np.exp(1j * phase)

    radius = g.support_radius / absxi
    osc = 1.0 + abs(p.c2 * xi) + abs(p.c1) * (abs(x) + radius)
    return TestFunction(fn=fn, center=x, radius=radius,
                        scale=min(g.decay_scale / absxi, 1.0 / osc),
                        name=f"frst-integrand[{g.name}]")


def frst_point(p: FracParam, g: Window, f: SignalOrDistribution,
               x: float, xi: float, *, drop_xi_chirp: bool = False) -> complex:
    """Single-point FRST via descriptor pairing or signal quadrature."""
    p.require_regular("frst_point")
    if xi == 0:
        raise ValueError("xi must be nonzero")
    probe = frst_integrand_probe(p, g, x, xi, drop_xi_chirp=drop_xi_chirp)
    if isinstance(f, SampledSignal):
        t = f.t_grid
        return complex(np.sum(f.samples * probe(t) * f.trapezoid_weights()))
    return pair(f, probe)


def st_point(g: Window, f: SignalOrDistribution, x: float, xi: float) -> complex:
    """Classical Stockwell transform point (alpha = pi/2, exact constants)."""
    return frst_point(CLASSICAL_FT_PARAM, g, f, x, xi)


def frst_forward(p: FracParam, g: Window, f: SignalOrDistribution,
                 x_axis, xi_axis, *, enforce_sampling: bool = True) -> TFGrid:
    """FRST on a full time-frequency grid.

    Signals go through vectorized trapezoid quadrature on their own grid;
    distribution descriptors through per-cell pairings.  alpha = 0 yields
    the zero grid; alpha = pi is rejected.
    """
    x_axis = np.asarray(x_axis, dtype=float)
    xi_axis = np.asarray(xi_axis, dtype=float)
    meta = {"transform": "FRST", "alpha": p.alpha, "window": g.name}
    if p.kind is AngleKind.IDENTITY:
        vals = np.zeros((x_axis.size, xi_axis.size), dtype=complex)
        return TFGrid(x_axis, xi_axis, vals, meta)
    if p.kind is AngleKind.PARITY:
        raise SingularAngle("alpha = pi does not define a fractional Stockwell transform")

    vals = np.empty((x_axis.size, xi_axis.size), dtype=complex)
    if isinstance(f, SampledSignal):
        if enforce_sampling:
            check_sampling(p, f, float(np.max(np.abs(xi_axis))))
        t = f.t_grid
        fw = f.samples * f.trapezoid_weights()
        vals_T = np.empty((xi_axis.size, x_axis.size), dtype=complex)

        def block(lo, hi):
            out = np.empty((hi - lo, x_axis.size), dtype=complex)
            for j in range(lo, hi):
                xi = xi_axis[j]
                kern = p.c_alpha * np.exp(
                    1j * (0.5 * p.c1 * (t * t + xi * xi) - p.c2 * t * xi))
                gm = np.conj(g.eval(xi * (t[None, :] - x_axis[:, None])))
                out[j - lo] = abs(xi) * (gm @ (fw * kern))
            return out

        _chunked_rows(xi_axis.size, block, vals_T)
        vals = vals_T.T.copy()
    else:
        for i, x in enumerate(x_axis):
            for j, xi in enumerate(xi_axis):
                vals[i, j] = frst_point(p, g, f, float(x), float(xi))
    return TFGrid(x_axis, xi_axis, vals, meta)


# ---------------------------------------------------------------------------
# synthesis / reconstruction


def frst_synthesis(p: FracParam, g: Window, F: TFGrid, t_grid) -> np.ndarray:
    """(S_g^alpha)* F(t) = |sin a| * 2D-quadrature of F g(xi(t-x)) K_{-a}(t, xi).

    Trapezoid in x; trapezoid in log|xi| (per sign branch) with the |xi|
    Jacobian on the frequency axis.
    """
    p.require_regular("frst_synthesis")
    t = np.asarray(t_grid, dtype=float)
    x = F.x_axis
    xi = F.xi_axis
    if x.size < 2 or xi.size < 2:
        raise GridTooCoarse("synthesis needs at least 2 points per axis")
    wx = _trapezoid_weights(x)
    wxi = log_branch_weights(xi)
    Fw = F.values * wx[:, None]

    sin_a = np.sin(p.alpha)
    out = np.zeros(t.shape, dtype=complex)
    cneg = np.conj(p.c_alpha)
    for j in range(xi.size):
        xj = xi[j]
        kern = cneg * np.exp(1j * (-0.5 * p.c1 * (t * t + xj * xj) + p.c2 * t * xj))
        gm = g.eval(xj * (t[:, None] - x[None, :]))
        out += kern * (gm @ Fw[:, j]) * wxi[j]
    return abs(sin_a) * out


@dataclass(frozen=True)
class ReconstructionReport:
    transform: str
    alpha: float
    constant: complex
    rel_l2: float
    max_abs_err: float
    t_grid: np.ndarray = field(repr=False)
    reconstructed: np.ndarray = field(repr=False)
    reference: np.ndarray = field(repr=False)

    def to_json_dict(self) -> dict:
        return {
            "transform": self.transform,
            "alpha": self.alpha,
            "constant": [self.constant.real, self.constant.imag],
            "rel_l2": self.rel_l2,
            "max_abs_err": self.max_abs_err,
        }


def _compare(transform: str, alpha: float, constant: complex, t: np.ndarray,
             rec: np.ndarray, ref: np.ndarray) -> ReconstructionReport:
    scale = np.linalg.norm(ref)
    rel = float(np.linalg.norm(rec - ref) / scale) if scale > 0 else float(np.linalg.norm(rec))
    return ReconstructionReport(
        transform=transform, alpha=alpha, constant=constant,
        rel_l2=rel, max_abs_err=float(np.max(np.abs(rec - ref))),
        t_grid=t, reconstructed=rec, reference=ref)


def frst_reconstruct(p: FracParam, g: Window, psi: Window, f: SampledSignal,
                     x_axis, xi_axis, t_grid=None, *,
                     enforce_sampling: bool = True,
                     constant_override: complex | None = None) -> ReconstructionReport:
    """f_tilde = (S_psi^alpha)* (S_g^alpha f) / C_{g,psi,c2} against f.

    Raises DivergentAdmissibility/ZeroAdmissibility when the pair (g, psi)
    does not admit a finite nonzero constant at this angle's c2.
    ``constant_override`` exists for diagnostics only (e.g. measuring what a
    truncated constant would produce); normal use derives the constant from
    admissibility_cgpsi.
    """
    p.require_regular("frst_reconstruct")
    if constant_override is None:
        const = admissibility_cgpsi(g, psi, p.c2).value
    else:
        const = complex(constant_override)
    F = frst_forward(p, g, f, x_axis, xi_axis, enforce_sampling=enforce_sampling)
    t = f.t_grid if t_grid is None else np.asarray(t_grid, dtype=float)
    rec = frst_synthesis(p, psi, F, t) / const
    ref = (f.samples if t_grid is None
           else np.interp(t, f.t_grid, f.samples.real) + 1j * np.interp(t, f.t_grid, f.samples.imag))
    return _compare("FRST", p.alpha, const, t, rec, ref)


# ---------------------------------------------------------------------------
# serialization (CSV + sidecar JSON meta)


def _fmt(v: float) -> str:
    return format(float(v), ".17g")


def grid_to_csv(grid: TFGrid, csv_path, meta_path=None) -> None:
    """Write `x,xi,re,im` rows (row-major over x then xi) and a meta record."""
    lines = ["x,xi,re,im"]
    for i, x in enumerate(grid.x_axis):
        for j, xi in enumerate(grid.xi_axis):
            v = grid.values[i, j]
            lines.append(f"{_fmt(x)},{_fmt(xi)},{_fmt(v.real)},{_fmt(v.imag)}")
    with open(csv_path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
    if meta_path is not None:
        meta = dict(grid.meta)
        meta["axes"] = {"x": [float(v) for v in grid.x_axis],
                        "xi": [float(v) for v in grid.xi_axis]}
        with open(meta_path, "w", newline="\n") as fh:
            json.dump(meta, fh, sort_keys=True, indent=1)
            fh.write("\n")


def grid_from_csv(csv_path, meta_path=None) -> TFGrid:
    with open(csv_path) as fh:
        header = fh.readline().strip()
        if header != "x,xi,re,im":
            raise MalformedCSV(f"expected header 'x,xi,re,im', got {header!r}")
        try:
            data = np.loadtxt(fh, delimiter=",", ndmin=2)
        except ValueError as exc:
            raise MalformedCSV(str(exc)) from None
    if data.size == 0:
        raise MalformedCSV("empty grid file")
    x = np.unique(data[:, 0])
    xi = np.unique(data[:, 1])
    if x.size * xi.size != data.shape[0]:
        raise MalformedCSV("rows do not form a complete x/xi product grid")
    vals = (data[:, 2] + 1j * data[:, 3]).reshape(x.size, xi.size)
    meta = {}
    if meta_path is not None:
        with open(meta_path) as fh:
            meta = json.load(fh)
        meta.pop("axes", None)
    return TFGrid(x, xi, vals, meta)
