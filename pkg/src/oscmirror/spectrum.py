"""Spectrum of the radiation emitted during the adiabatic drive.

At finite observation time t the spectral density (per unit detuning
delta = omega - omega0, in units of A21) is a static part

    p_static = (1/2pi) * s(delta, t)**2 * b0(u0)

plus a dynamic correction assembled from three modulation kernels,

    p_dynamic = (1/2pi) * [ (a/2z0) * h1 * b1(u0)
                          + (a*k0/2)**2 * h2 * b2(u0)
                          + (a*k0)**2/2 * h3 * b3(u0) ],

where s(x, t) = sin(x*t/2)/(x/2) is the finite-time line kernel.  h1 beats
at the drive frequency, h2 carries the sidebands displaced by +/-omega_p,
and h3 interferes the carrier with +/-2*omega_p components.  Everything is
even in delta, and the expansion is second order in the drive amplitude, so
p_total can go slightly negative where the truncation is strained; values
are reported as computed, never clamped.

All formulas here are the isotropic-orientation results; fixed-orientation
spectra are not implemented.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np
from scipy import ndimage, signal

from .params import PhysicalParams, derive_scales
from .rate import b0, b1, b2, b3

#: default half-width of the detuning window, in units of omega_p
DEFAULT_WINDOW_OMEGA_P = 4.0

PEAK_LABELS = ("central", "plus_wp", "minus_wp", "plus_2wp", "minus_2wp", "other")


def sinc_kernel(x, t: float):
    """Finite-time line kernel s(x, t) = sin(x*t/2)/(x/2), with s(0, t) = t."""
    return t * np.sinc(np.asarray(x, dtype=float) * t / (2.0 * np.pi))


def h_kernels(delta, omega_p: float, t: float):
    """The three modulation kernels (h1, h2, h3) on a detuning grid.

    h1(delta) = sin(omega_p*t/2) * s(delta) * [s(delta+omega_p) + s(delta-omega_p)]
    h2(delta) = s(delta+omega_p)**2 + s(delta-omega_p)**2
                - 2*cos(omega_p*t)*s(delta+omega_p)*s(delta-omega_p)
    h3(delta) = s(delta)**2
                - 1/2*cos(omega_p*t)*s(delta)*[s(delta+2omega_p) + s(delta-2omega_p)]

    h2 is a squared modulus and therefore nonnegative.
    """
    d = np.asarray(delta, dtype=float)
    s0 = sinc_kernel(d, t)
    sp = sinc_kernel(d + omega_p, t)
    sm = sinc_kernel(d - omega_p, t)
    s2p = sinc_kernel(d + 2.0 * omega_p, t)
    s2m = sinc_kernel(d - 2.0 * omega_p, t)
    cwt = np.cos(omega_p * t)
    h1 = np.sin(omega_p * t / 2.0) * s0 * (sp + sm)
    h2 = sp**2 + sm**2 - 2.0 * cwt * sp * sm
    # 1/2, not 1/4: the coefficient the second-order amplitude produces once
    # every resonant factor is written through s(.); the exact-trajectory
    # quadrature oracle discriminates the two at O(a**2)
    h3 = s0**2 - 0.5 * cwt * s0 * (s2p + s2m)
    return h1, h2, h3


def h_kernel(which: str, delta, omega_p: float, t: float):
    """Single modulation kernel selected by name ("h1", "h2" or "h3")."""
    try:
        i = ("h1", "h2", "h3").index(which)
    except ValueError:
        raise ValueError(f"unknown kernel {which!r}, expected 'h1', 'h2' or 'h3'") from None
    return h_kernels(delta, omega_p, t)[i]


def _require_random(p: PhysicalParams, what: str) -> None:
    if p.orientation != "random":
        raise ValueError(
            f"{what} is implemented for orientation='random' only, got {p.orientation!r}"
        )


def _check_time(t: float) -> None:
    if not np.isfinite(t) or t <= 0:
        raise ValueError(f"observation time t must be finite and positive, got {t!r}")


def spectrum_static(p: PhysicalParams, delta, t: float):
    """Static-boundary spectral density, in units of a21."""
    _require_random(p, "spectrum_static")
    _check_time(t)
    scales = derive_scales(p)
    out = p.a21 / (2.0 * np.pi) * sinc_kernel(delta, t) ** 2 * b0(scales.u0)
    return out if out.ndim else float(out)


def spectrum_dynamic(p: PhysicalParams, delta, t: float):
    """Drive-induced correction to the spectral density, in units of a21."""
    _require_random(p, "spectrum_dynamic")
    _check_time(t)
    scales = derive_scales(p)
    h1, h2, h3 = h_kernels(delta, p.omega_p, t)
    u0 = scales.u0
    out = p.a21 / (2.0 * np.pi) * (
        0.5 * scales.eps_geom * h1 * b1(u0)
        + 0.25 * scales.eps_wave**2 * h2 * b2(u0)
        + 0.5 * scales.eps_wave**2 * h3 * b3(u0)
    )
    return out if out.ndim else float(out)


@dataclass(frozen=True)
class SpectrumSeries:
    """Spectral densities on an ascending detuning grid at one observation time.

    For a plain series p_total is exactly p_static + p_dynamic; an envelope
    series replaces p_total by a running maximum and sets ``is_envelope``.
    ``params`` snapshots the configuration the series was computed from.
    """

    delta: np.ndarray
    p_static: np.ndarray
    p_dynamic: np.ndarray
    p_total: np.ndarray
    t: float
    params: PhysicalParams
    is_envelope: bool = field(default=False)

    def __post_init__(self) -> None:
        if self.delta.ndim != 1 or np.any(np.diff(self.delta) <= 0):
            raise ValueError("delta must be a strictly ascending 1-d grid")
        for name in ("delta", "p_static", "p_dynamic", "p_total"):
            arr = getattr(self, name)
            if name != "delta" and arr.shape != self.delta.shape:
                raise ValueError(f"{name} shape does not match the delta grid")
            if not np.all(np.isfinite(arr)):
                raise ValueError(f"{name} contains non-finite values")
        if np.any(self.p_static < 0):
            raise ValueError("p_static must be nonnegative")
        if not self.is_envelope and not np.array_equal(
            self.p_total, self.p_static + self.p_dynamic
        ):
            raise ValueError("p_total must equal p_static + p_dynamic elementwise")

    @property
    def negative_samples(self) -> int:
        """How many grid points have p_total < 0 (perturbative truncation)."""
        return int(np.count_nonzero(self.p_total < 0))


def _delta_grid(p: PhysicalParams, delta_min, delta_max, n: int) -> np.ndarray:
    if delta_min is None and delta_max is None:
        if p.omega_p <= 0:
            raise ValueError("an explicit delta window is required when omega_p = 0")
        half = DEFAULT_WINDOW_OMEGA_P * p.omega_p
        delta_min, delta_max = -half, half
    if delta_min is None or delta_max is None:
        raise ValueError("delta_min and delta_max must be given together")
    if not (np.isfinite(delta_min) and np.isfinite(delta_max)):
        raise ValueError(f"delta window must be finite, got [{delta_min!r}, {delta_max!r}]")
    if delta_max <= delta_min:
        raise ValueError(f"delta window needs max > min, got [{delta_min!r}, {delta_max!r}]")
    if not isinstance(n, (int, np.integer)) or n < 2:
        raise ValueError(f"delta grid needs at least 2 points, got n={n!r}")
    return np.linspace(delta_min, delta_max, n)


def spectrum_series(
    p: PhysicalParams,
    t: float,
    delta_min: float | None = None,
    delta_max: float | None = None,
    n: int = 2001,
) -> SpectrumSeries:
    """Evaluate the spectrum on a uniform detuning grid.

    The window defaults to +/-4*omega_p around resonance, wide enough to
    contain the carrier and both sideband families.
    """
    _require_random(p, "spectrum_series")
    _check_time(t)
    delta = _delta_grid(p, delta_min, delta_max, n)
    ps = spectrum_static(p, delta, t)
    pd = spectrum_dynamic(p, delta, t)
    return SpectrumSeries(
        delta=delta, p_static=ps, p_dynamic=pd, p_total=ps + pd, t=t, params=p
    )


@dataclass(frozen=True)
class SpectrumSurface:
    """p(delta) stacked over a grid of observation times (rows index t)."""

    t: np.ndarray
    delta: np.ndarray
    p_static: np.ndarray
    p_dynamic: np.ndarray
    p_total: np.ndarray
    params: PhysicalParams

    def __post_init__(self) -> None:
        shape = (self.t.size, self.delta.size)
        for name in ("p_static", "p_dynamic", "p_total"):
            if getattr(self, name).shape != shape:
                raise ValueError(f"{name} must have shape (len(t), len(delta))")

    def row(self, i: int) -> SpectrumSeries:
        return SpectrumSeries(
            delta=self.delta,
            p_static=self.p_static[i],
            p_dynamic=self.p_dynamic[i],
            p_total=self.p_total[i],
            t=float(self.t[i]),
            params=self.params,
        )


def spectrum_surface(
    p: PhysicalParams,
    t_grid,
    delta_min: float | None = None,
    delta_max: float | None = None,
    n: int = 1001,
) -> SpectrumSurface:
    """Spectrum rows for every observation time in t_grid."""
    _require_random(p, "spectrum_surface")
    t_arr = np.asarray(t_grid, dtype=float)
    if t_arr.ndim != 1 or t_arr.size < 1:
        raise ValueError("t_grid must be a one-dimensional, nonempty sequence")
    if not np.all(np.isfinite(t_arr)) or np.any(t_arr <= 0):
        raise ValueError("t_grid values must be finite and positive")
    delta = _delta_grid(p, delta_min, delta_max, n)
    ps = np.empty((t_arr.size, delta.size))
    pd = np.empty_like(ps)
    for i, t in enumerate(t_arr):
        ps[i] = spectrum_static(p, delta, float(t))
        pd[i] = spectrum_dynamic(p, delta, float(t))
    return SpectrumSurface(
        t=t_arr, delta=delta, p_static=ps, p_dynamic=pd, p_total=ps + pd, params=p
    )


def envelope(series: SpectrumSeries, window: float | None = None) -> SpectrumSeries:
    """Running maximum of p_total over a centered sliding window.

    The default window 4*pi/t spans two lobes of the line kernel, which is
    what makes the sideband structure visible through the sinc ripple.
    Endpoint windows are truncated.  A window wider than the grid raises.
    """
    if window is None:
        window = 4.0 * np.pi / series.t
    if not np.isfinite(window) or window <= 0:
        raise ValueError(f"envelope window must be finite and positive, got {window!r}")
    d = np.diff(series.delta)
    step = d[0]
    if np.max(np.abs(d - step)) > 1e-9 * abs(step):
        raise ValueError("envelope requires a uniform delta grid")
    half = int(round(0.5 * window / step))
    size = 2 * half + 1
    if size > series.delta.size:
        raise ValueError(
            f"envelope window ({size} samples) exceeds the delta span "
            f"({series.delta.size} samples)"
        )
    # mode="nearest" replicates the edge sample, which is already inside every
    # truncated end window, so this is exactly the truncated running max
    env = ndimage.maximum_filter1d(series.p_total, size=size, mode="nearest")
    return replace(series, p_total=env, is_envelope=True)


@dataclass(frozen=True)
class Peak:
    """One detected spectral feature."""

    offset: float      # detuning of the maximum, rad/s
    height: float      # p_total there
    fwhm: float        # full width at half prominence, rad/s
    label: str         # one of PEAK_LABELS
    prominence: float  # absolute topographic prominence


@dataclass(frozen=True)
class PeakReport:
    """Detected peaks, ascending in offset."""

    peaks: tuple[Peak, ...]

    def __post_init__(self) -> None:
        offsets = [pk.offset for pk in self.peaks]
        if offsets != sorted(offsets):
            raise ValueError("peaks must be sorted by offset")

    @property
    def labels(self) -> set[str]:
        return {pk.label for pk in self.peaks}

    def by_label(self, label: str) -> tuple[Peak, ...]:
        if label not in PEAK_LABELS:
            raise ValueError(f"unknown peak label {label!r}")
        return tuple(pk for pk in self.peaks if pk.label == label)

    def height_ratio(self, plus: str, minus: str) -> float:
        """Height of the ``plus`` peak over the ``minus`` peak.

        The lateral pairs are symmetric by parity, so the ratio is a
        sensitive check on grid placement.  Raises when either side is
        missing or ambiguous.
        """
        pair = []
        for label in (plus, minus):
            found = self.by_label(label)
            if len(found) != 1:
                raise ValueError(f"expected exactly one {label!r} peak, got {len(found)}")
            pair.append(found[0].height)
        return pair[0] / pair[1]


def find_peaks(series: SpectrumSeries, prominence_rel: float = 0.02) -> PeakReport:
    """Locate and classify local maxima of p_total.

    Peaks must rise by at least ``prominence_rel`` times the global maximum.
    Each is labelled by the nearest of {0, +/-omega_p, +/-2omega_p} when the
    offset falls within the finite-time resolution 2*pi/t, else "other".
    """
    if not np.isfinite(prominence_rel) or prominence_rel <= 0:
        raise ValueError(f"prominence_rel must be positive, got {prominence_rel!r}")
    if series.delta.size == 0:
        raise ValueError("cannot search an empty series for peaks")
    y = series.p_total
    omega_p = series.params.omega_p
    top = float(np.max(y))
    if top <= 0:
        return PeakReport(peaks=())
    idx, props = signal.find_peaks(y, prominence=prominence_rel * top)
    if idx.size == 0:
        return PeakReport(peaks=())
    widths = signal.peak_widths(y, idx, rel_height=0.5)[0]
    step = series.delta[1] - series.delta[0]
    resolution = 2.0 * np.pi / series.t
    targets = [(0.0, "central")]
    if omega_p > 0:
        targets += [
            (omega_p, "plus_wp"),
            (-omega_p, "minus_wp"),
            (2.0 * omega_p, "plus_2wp"),
            (-2.0 * omega_p, "minus_2wp"),
        ]
    peaks = []
    for i, where in enumerate(idx):
        offset = float(series.delta[where])
        dist, label = min(
            ((abs(offset - pos), name) for pos, name in targets), key=lambda x: x[0]
        )
        peaks.append(
            Peak(
                offset=offset,
                height=float(y[where]),
                fwhm=float(widths[i] * abs(step)),
                label=label if dist <= resolution else "other",
                prominence=float(props["prominences"][i]),
            )
        )
    return PeakReport(peaks=tuple(peaks))
