"""Scalar mode functions of the half-space bounded by the mirror.

With the boundary ideally reflecting, the field modes factorize into
transverse plane waves and a standing wave along the mirror normal.  Only
the standing-wave scalar matters here: dipole components parallel to the
mirror couple to sin(kz*z) and the normal component couples to cos(kz*z).
The transverse factors enter all observables only through their mean square,
which the normalization fixes to 2; that weight is applied where modes are
assembled into rates and spectra, not here.

Because the drive is adiabatic, the mode functions follow the instantaneous
separation z(t).  ``mode_at_time`` evaluates either the exact displaced
scalar or its second-order expansion around z0, whose coefficients
(f0, f1, f2) are what the analytic rate and spectrum formulas consume.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .params import PhysicalParams

PARALLEL = "parallel"
PERPENDICULAR = "perpendicular"
KINDS = (PARALLEL, PERPENDICULAR)

_ORDERS = ("exact", "second")


@dataclass(frozen=True)
class MirrorTrajectory:
    """Instantaneous atom-boundary separation z(t) = z0 - a*sin(omega_p*t)."""

    z0: float
    amplitude: float
    omega_p: float

    @classmethod
    def from_params(cls, p: PhysicalParams) -> "MirrorTrajectory":
        return cls(z0=p.z0, amplitude=p.amplitude, omega_p=p.omega_p)

    def position(self, t):
        return self.z0 - self.amplitude * np.sin(self.omega_p * np.asarray(t, dtype=float))

    def displacement(self, t):
        """z(t) - z0, the small quantity the expansion is carried out in."""
        return -self.amplitude * np.sin(self.omega_p * np.asarray(t, dtype=float))


@dataclass(frozen=True)
class ExpansionCoeffs:
    """Mode scalar and its first two z0-derivatives: f0, f1 = df/dz0, f2 = -kz**2 f0."""

    f0: float
    f1: float
    f2: float


def _check_kind(kind: str) -> None:
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}, got {kind!r}")


def mode_scalar(kind: str, kz, z):
    """Standing-wave scalar at separation z: sin(kz*z) or cos(kz*z)."""
    _check_kind(kind)
    phase = np.multiply(kz, z)
    return np.sin(phase) if kind == PARALLEL else np.cos(phase)


def expansion_coeffs(kind: str, kz: float, z0: float) -> ExpansionCoeffs:
    """Taylor data of the mode scalar at the mean separation.

    f2 = -kz**2 * f0 holds exactly because the scalars solve the homogeneous
    Helmholtz equation along the normal; it is returned rather than recomputed
    so callers can rely on the identity to machine precision.
    """
    _check_kind(kind)
    phase = kz * z0
    if kind == PARALLEL:
        f0 = np.sin(phase)
        f1 = kz * np.cos(phase)
    else:
        f0 = np.cos(phase)
        f1 = -kz * np.sin(phase)
    return ExpansionCoeffs(f0=float(f0), f1=float(f1), f2=float(-(kz**2) * f0))


def mode_at_time(kind: str, kz: float, traj: MirrorTrajectory, t, order: str = "exact"):
    """Mode scalar sampled on the moving boundary.

    order="exact" evaluates the scalar at the displaced separation; "second"
    uses the quadratic expansion f0 + d*f1 + d**2/2*f2 with d = z(t) - z0,
    matching the truncation every analytic formula in this package is built
    on.  The two differ at O(d**3).
    """
    _check_kind(kind)
    if order not in _ORDERS:
        raise ValueError(f"order must be one of {_ORDERS}, got {order!r}")
    if order == "exact":
        return mode_scalar(kind, kz, traj.position(t))
    coeffs = expansion_coeffs(kind, kz, traj.z0)
    d = traj.displacement(t)
    return coeffs.f0 + d * coeffs.f1 + 0.5 * d * d * coeffs.f2
