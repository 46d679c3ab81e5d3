"""Distribution descriptors realized as pairing oracles.

A descriptor represents a tempered/Lizorkin distribution through the action
<f, phi> on smooth rapidly decaying test functions:

* delta combs  sum w_j * delta^(k_j)(. - a_j)   (exact pairing),
* homogeneous functions |x|^m, x_+^m, x_-^m with m > -1 (locally
  integrable, adaptive quadrature),
* sampled densities on a uniform grid (trapezoid),
* closed-form functions of polynomial growth (adaptive quadrature).

Scaled pairings <f(eps x), phi(x)> reduce to (1/eps) <f(t), phi(t/eps)>,
and a modulation wrapper realizes M_a f exactly by multiplying the test
function with exp(i*a*t).
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.integrate import quad

from .errors import (
    DegenerateSequence,
    DerivativeOrderTooHigh,
    PairingDiverged,
)
from .fraccore import SampledSignal
from .windows import Window

PAIRING_ERROR_BUDGET = 1e-8   # relative; quad estimates beyond this raise

_FD_MAX_ORDER = 4
# 4th-order-accurate central difference coefficients, derivative orders 1..4
_FD4 = {
    1: (np.array([-2, -1, 1, 2]), np.array([1.0, -8.0, 8.0, -1.0]) / 12.0),
    2: (np.array([-2, -1, 0, 1, 2]), np.array([-1.0, 16.0, -30.0, 16.0, -1.0]) / 12.0),
    3: (np.array([-3, -2, -1, 1, 2, 3]), np.array([1.0, -8.0, 13.0, -13.0, 8.0, -1.0]) / 8.0),
    4: (np.array([-3, -2, -1, 0, 1, 2, 3]), np.array([-1.0, 12.0, -39.0, 56.0, -39.0, 12.0, -1.0]) / 6.0),
}


@dataclass(frozen=True)
class TestFunction:
    """Smooth rapidly decaying probe with an effective support interval."""

    fn: Callable[[np.ndarray], np.ndarray]
    center: float = 0.0
    radius: float = 10.0
    scale: float = 1.0      # characteristic length, sets FD steps
    name: str = ""
    singular_inside: tuple = ()   # integrand kinks of the *distribution* side

    def __call__(self, t):
        return self.fn(np.asarray(t, dtype=float))

    def derivative(self, t0: float, order: int) -> complex:
        """Derivative by 4th-order central differences (order <= 4)."""
        if order == 0:
            return complex(np.asarray(self.fn(np.array([t0])))[0])
        if order > _FD_MAX_ORDER:
            raise DerivativeOrderTooHigh(f"pairing derivative order {order} > {_FD_MAX_ORDER}")
        offs, coeff = _FD4[order]
        h = 5e-3 * self.scale
        vals = np.asarray(self.fn(t0 + h * offs.astype(float)), dtype=complex)
        return complex(np.sum(coeff * vals) / h ** order)


def window_probe(g: Window) -> TestFunction:
    return TestFunction(fn=lambda t: np.asarray(g.eval(t), dtype=complex),
                        center=0.0, radius=g.support_radius,
                        scale=g.decay_scale, name=g.name)


def probe_battery(c2: float = 2.0 / np.sqrt(3.0)) -> list[TestFunction]:
    """Fixed probe battery: Gaussians at four widths, the Hermite and
    Mexican-hat wavelets, and modulated Gaussians at a in {1, c2}."""
    from .windows import gaussian_window, hermite_wavelet_window, mexican_hat_window, modulate

    wins = [gaussian_window(0.5), gaussian_window(1.0), gaussian_window(2.0),
            gaussian_window(4.0), hermite_wavelet_window(), mexican_hat_window(),
            modulate(gaussian_window(1.0), 1.0), modulate(gaussian_window(1.0), c2)]
    return [window_probe(w) for w in wins]


@dataclass(frozen=True)
class DeltaTerm:
    location: float
    order: int
    weight: complex


@dataclass(frozen=True)
class DistributionDescriptor:
    """Pairing oracle for one distribution; see module docstring.

    ``modulation`` wraps the base distribution with M_a (a phase factor
    exp(i*a*t) folded into every pairing), which is how modulated limit
    distributions are realized exactly.
    """

    kind: str                     # "delta" | "homogeneous" | "sampled" | "closed_form"
    terms: tuple[DeltaTerm, ...] = ()
    pattern: str = "abs"          # "abs" | "plus" | "minus"
    degree: float = 0.0
    signal: Optional[SampledSignal] = None
    func: Optional[Callable[[np.ndarray], np.ndarray]] = field(default=None, repr=False)
    growth_order: int = 0
    singular_points: tuple = ()
    modulation: float = 0.0

    # ---- constructors -----------------------------------------------------

    @staticmethod
    def delta(location: float = 0.0, order: int = 0, weight: complex = 1.0):
        return DistributionDescriptor(
            kind="delta", terms=(DeltaTerm(location, order, complex(weight)),))

    @staticmethod
    def delta_comb(terms: Sequence[tuple]):
        return DistributionDescriptor(
            kind="delta",
            terms=tuple(DeltaTerm(float(a), int(k), complex(w)) for a, k, w in terms))

    @staticmethod
    def homogeneous(pattern: str, degree: float):
        if pattern not in ("abs", "plus", "minus"):
            raise ValueError(f"unknown homogeneous pattern {pattern!r}")
        if degree <= -1:
            raise ValueError("homogeneous degree must exceed -1 (locally integrable)")
        return DistributionDescriptor(kind="homogeneous", pattern=pattern,
                                      degree=float(degree), singular_points=(0.0,))

    @staticmethod
    def sampled(signal: SampledSignal):
        return DistributionDescriptor(kind="sampled", signal=signal)

    @staticmethod
    def closed_form(func, growth_order: int = 0, singular_points: tuple = ()):
        return DistributionDescriptor(kind="closed_form", func=func,
                                      growth_order=growth_order,
                                      singular_points=tuple(singular_points))

    def modulated(self, a: float) -> "DistributionDescriptor":
        """M_a f; exact wrapper applied at pairing time."""
        return replace(self, modulation=self.modulation + float(a))

    @staticmethod
    def from_json(obj: dict) -> "DistributionDescriptor":
        kind = obj.get("kind")
        if kind == "delta":
            terms = []
            for item in obj["terms"]:
                a, k, w = item
                terms.append((a, k, complex(w[0], w[1]) if isinstance(w, (list, tuple)) else w))
            return DistributionDescriptor.delta_comb(terms)
        if kind == "homogeneous":
            return DistributionDescriptor.homogeneous(obj["pattern"], obj["degree"])
        if kind == "sampled":
            raise ValueError("sampled descriptors are constructed from a loaded signal")
        raise ValueError(f"unknown descriptor kind {kind!r}")

    # ---- pointwise density (function-type kinds only) ----------------------

    def density(self, t: np.ndarray) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        if self.kind == "homogeneous":
            with np.errstate(invalid="ignore"):
                if self.pattern == "abs":
                    base = np.abs(t) ** self.degree
                elif self.pattern == "plus":
                    base = np.where(t > 0, np.abs(t) ** self.degree, 0.0)
                else:
                    base = np.where(t < 0, np.abs(t) ** self.degree, 0.0)
            base = np.nan_to_num(base, nan=0.0)
        elif self.kind == "closed_form":
            base = np.asarray(self.func(t), dtype=complex)
        elif self.kind == "sampled":
            sig = self.signal
            re = np.interp(t, sig.t_grid, sig.samples.real, left=0.0, right=0.0)
            im = np.interp(t, sig.t_grid, sig.samples.imag, left=0.0, right=0.0)
            base = re + 1j * im
        else:
            raise ValueError("delta combs have no pointwise density")
        if self.modulation:
            base = base * np.exp(1j * self.modulation * t)
        return base


def _modulated_probe(phi: TestFunction, a: float) -> TestFunction:
    if a == 0.0:
        return phi
    return replace(phi, fn=lambda t, _f=phi.fn, _a=a: np.exp(1j * _a * np.asarray(t, dtype=float)) * np.asarray(_f(t), dtype=complex))


def pair_with_error(f: DistributionDescriptor, phi: TestFunction) -> tuple[complex, float]:
    """Dual pairing <f, phi> with a quadrature error estimate."""
    if f.kind == "delta":
        # modulation goes onto the test function; density() handles it for
        # the function-type kinds below
        probe = _modulated_probe(phi, f.modulation)
        val = 0.0 + 0.0j
        for term in f.terms:
            val += term.weight * (-1.0) ** term.order * probe.derivative(term.location, term.order)
        return val, 0.0

    probe = phi
    lo, hi = probe.center - probe.radius, probe.center + probe.radius
    if f.kind == "sampled":
        sig = f.signal
        lo, hi = max(lo, sig.t0), min(hi, sig.t_end)
        if hi <= lo:
            return 0.0 + 0.0j, 0.0
        t = sig.t_grid
        mask = (t >= lo) & (t <= hi)
        tm = t[mask]
        vals = f.density(tm) * np.asarray(probe(tm), dtype=complex)
        return complex(np.trapezoid(vals, tm)), 0.0
    if f.kind == "homogeneous" and f.pattern == "plus":
        lo = max(lo, 0.0)
    if f.kind == "homogeneous" and f.pattern == "minus":
        hi = min(hi, 0.0)
    if hi <= lo:
        return 0.0 + 0.0j, 0.0

    def integrand(t):
        return f.density(np.asarray([t]))[0] * np.asarray(probe(np.asarray([t])), dtype=complex)[0]

    # anchor the absolute tolerance to the integrand's own magnitude so that
    # pairings of size 1e-15 are still resolved relatively
    sample = f.density(np.linspace(lo, hi, 65)) * np.asarray(probe(np.linspace(lo, hi, 65)), dtype=complex)
    scale = float(np.max(np.abs(sample))) * (hi - lo)
    pts = [p for p in set(f.singular_points) | set(probe.singular_inside) if lo < p < hi]
    kw = {"limit": 300, "epsabs": max(1e-13 * scale, 1e-280), "epsrel": 1e-10}
    if pts:
        kw["points"] = sorted(pts)
    re = quad(lambda t: integrand(t).real, lo, hi, **kw)
    im = quad(lambda t: integrand(t).imag, lo, hi, **kw)
    val = complex(re[0], im[0])
    err = re[1] + im[1]
    if err > PAIRING_ERROR_BUDGET * max(abs(val), scale, 1e-250):
        raise PairingDiverged(
            f"pairing error estimate {err:.3e} exceeds budget for value {val:.3e}")
    return val, err


def pair(f: DistributionDescriptor, phi: TestFunction) -> complex:
    return pair_with_error(f, phi)[0]


@dataclass(frozen=True)
class SlowlyVarying:
    """Slowly varying function at the origin: L(a*eps)/L(eps) -> 1.

    Models: "one" (L=1), "logpow" (|ln eps|^a), "iterlog" (ln|ln eps|),
    defined on (0, eps_max].
    """

    model: str = "one"
    a: float = 1.0
    eps_max: float = 0.25

    def __call__(self, eps):
        eps = np.asarray(eps, dtype=float)
        if np.any(eps <= 0) or np.any(eps > self.eps_max):
            raise ValueError(f"eps outside domain (0, {self.eps_max}]")
        if self.model == "one":
            return np.ones_like(eps)
        if self.model == "logpow":
            return np.abs(np.log(eps)) ** self.a
        if self.model == "iterlog":
            return np.log(np.abs(np.log(eps)))
        raise ValueError(f"unknown slowly varying model {self.model!r}")

    def ratio_deviation(self, eps: float, factor: float) -> float:
        """|L(a*eps)/L(eps) - 1| for the limit test."""
        return float(abs(self(np.asarray(factor * eps)) / self(np.asarray(eps)) - 1.0))


SV_ONE = SlowlyVarying("one")


@dataclass(frozen=True)
class ScaleSequence:
    eps: tuple

    def __init__(self, eps=None):
        if eps is None:
            eps = tuple(2.0 ** -k for k in range(2, 13))
        eps = tuple(float(e) for e in eps)
        if any(e2 >= e1 for e1, e2 in zip(eps, eps[1:])):
            raise ValueError("scale sequence must be strictly decreasing")
        if eps[-1] < 2.0 ** -20:
            raise ValueError("scale sequence below the quadrature sanity floor 2^-20")
        object.__setattr__(self, "eps", eps)

    def __iter__(self):
        return iter(self.eps)

    def __len__(self):
        return len(self.eps)


def scaled_probe(phi: TestFunction, eps: float) -> TestFunction:
    """phi(./eps): support and FD scale stretch by eps."""
    return replace(
        phi,
        fn=lambda t, _f=phi.fn, _e=eps: np.asarray(_f(np.asarray(t, dtype=float) / _e)),
        center=phi.center * eps,
        radius=phi.radius * eps,
        scale=phi.scale * eps,
    )


def scaled_pair(f: DistributionDescriptor, phi: TestFunction, eps: float,
                m: float = 0.0, L: SlowlyVarying = SV_ONE) -> complex:
    """<f(eps x), phi(x)> / (eps^m L(eps)) via <f(eps x), phi> = (1/eps) <f, phi(./eps)>."""
    raw = pair(f, scaled_probe(phi, eps))
    return raw / (eps * eps ** m * float(L(np.asarray(eps))))


def quasi_degree_estimate(f: DistributionDescriptor, phi: TestFunction,
                          seq: ScaleSequence | None = None,
                          fit_points: int = 6) -> tuple[float, float]:
    """Least-squares slope of log|<f(eps x), phi>| against log eps.

    Fits the last ``fit_points`` usable entries; returns (slope, max abs
    residual).
    """
    seq = seq or ScaleSequence()
    eps = np.array(list(seq))
    vals = np.array([scaled_pair(f, phi, e) for e in eps])
    usable = np.abs(vals) > 1e-300
    if usable.sum() < 3:
        raise DegenerateSequence("fewer than 3 nonzero pairings along the sequence")
    le = np.log(eps[usable])[-fit_points:]
    lv = np.log(np.abs(vals[usable]))[-fit_points:]
    slope, intercept = np.polyfit(le, lv, 1)
    residual = float(np.max(np.abs(lv - (slope * le + intercept))))
    return float(slope), residual


# Cauchy criterion for "the sequence converges" at finite precision.
CAUCHY_REL_TOL = 1e-4


def is_cauchy(values: np.ndarray, rel_tol: float = CAUCHY_REL_TOL) -> bool:
    v = np.asarray(values)
    if v.size < 4:
        return False
    gaps = np.abs(np.diff(v))[-3:]
    ref = rel_tol * (1.0 + np.abs(v[-1]))
    return bool(np.all(gaps < ref))


@dataclass(frozen=True)
class ChirpEquivalenceReport:
    plain: tuple
    chirped: tuple
    plain_converges: bool
    chirped_converges: bool
    limit_gap: float


def chirp_factor_check(f: DistributionDescriptor, phi: TestFunction, c: float,
                       m: float, L: SlowlyVarying = SV_ONE,
                       seq: ScaleSequence | None = None) -> ChirpEquivalenceReport:
    """Compare scaled pairings with and without the chirp exp(i*c*(eps*x)^2/2).

    In the substituted variable t = eps*x the chirp is exp(i*c*t^2/2), so the
    chirped pairing is (1/(eps^{m+1} L)) <f(t), exp(i*c*t^2/2) phi(t/eps)>.
    """
    seq = seq or ScaleSequence()
    plain, chirped = [], []
    for e in seq:
        denom = e * e ** m * float(L(np.asarray(e)))
        base = scaled_probe(phi, e)
        chirp_fn = (lambda t, _f=base.fn, _c=c:
                    np.exp(1j * _c * np.asarray(t, dtype=float) ** 2 / 2.0) * np.asarray(_f(t)))
        plain.append(pair(f, base) / denom)
        chirped.append(pair(f, replace(base, fn=chirp_fn)) / denom)
    plain = np.array(plain)
    chirped = np.array(chirped)
    return ChirpEquivalenceReport(
        plain=tuple(plain), chirped=tuple(chirped),
        plain_converges=is_cauchy(plain), chirped_converges=is_cauchy(chirped),
        limit_gap=float(abs(plain[-1] - chirped[-1])),
    )
