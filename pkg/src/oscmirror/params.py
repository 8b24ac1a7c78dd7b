"""Parameters for a two-level atom in front of an oscillating mirror.

The emitter sits on the axis of a perfectly reflecting plane boundary whose
position oscillates slowly, so the instantaneous atom-mirror separation is

    z(t) = z0 - a * sin(omega_p * t).

Everything downstream is derived from five numbers: the transition frequency
omega0, the drive frequency omega_p, the drive amplitude a, the mean distance
z0, and the free-space decay rate a21 used as the unit of emission rates.
The adiabatic treatment is trustworthy only when the drive is slow on every
relevant scale (omega_p << omega0, omega_p << c/z0, a*omega_p << c) and the
excursion is small (a < z0, a*k0 not large); ``validate_adiabatic`` grades a
configuration against those conditions without refusing to compute.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from scipy.constants import c as _C_LIGHT

ORIENTATIONS = ("random", "x", "y", "z")

#: config keys accepted by :func:`load_config`; values are (required, field)
_CONFIG_KEYS = {
    "omega0_rad_per_s": (True, "omega0"),
    "omega_p_rad_per_s": (True, "omega_p"),
    "amplitude_m": (True, "amplitude"),
    "z0_m": (True, "z0"),
    "a21_per_s": (False, "a21"),
    "c_m_per_s": (False, "c"),
    "orientation": (False, "orientation"),
}


class ConfigError(ValueError):
    """Raised when a configuration file is missing, malformed or invalid."""


@dataclass(frozen=True)
class PhysicalParams:
    """Validated inputs of the model.

    Attributes
    ----------
    omega0 : float
        Atomic transition angular frequency, rad/s.
    omega_p : float
        Mirror oscillation angular frequency, rad/s.  Zero means a static
        mirror.
    amplitude : float
        Mirror oscillation amplitude, m.  Must stay below ``z0`` so the
        boundary never reaches the atom.
    z0 : float
        Mean atom-mirror distance, m.
    a21 : float
        Free-space spontaneous emission rate, 1/s.  Pure scale factor.
    c : float
        Speed of light, m/s.
    orientation : str
        Dipole orientation: "random" (isotropic average), or "x"/"y"
        (parallel to the mirror plane), or "z" (normal to it).
    """

    omega0: float
    omega_p: float
    amplitude: float
    z0: float
    a21: float = 1.0
    c: float = _C_LIGHT
    orientation: str = "random"

    def __post_init__(self) -> None:
        _require_finite("omega0", self.omega0)
        _require_finite("omega_p", self.omega_p)
        _require_finite("amplitude", self.amplitude)
        _require_finite("z0", self.z0)
        _require_finite("a21", self.a21)
        _require_finite("c", self.c)
        if self.omega0 <= 0:
            raise ValueError(f"omega0 must be positive, got {self.omega0!r}")
        if self.omega_p < 0:
            raise ValueError(f"omega_p must be nonnegative, got {self.omega_p!r}")
        if self.z0 <= 0:
            raise ValueError(f"z0 must be positive, got {self.z0!r}")
        if self.amplitude < 0:
            raise ValueError(f"amplitude must be nonnegative, got {self.amplitude!r}")
        if self.amplitude >= self.z0:
            raise ValueError(
                f"amplitude must be smaller than z0, got amplitude={self.amplitude!r}"
                f" with z0={self.z0!r} (mirror would reach the atom)"
            )
        if self.a21 <= 0:
            raise ValueError(f"a21 must be positive, got {self.a21!r}")
        if self.c <= 0:
            raise ValueError(f"c must be positive, got {self.c!r}")
        if self.orientation not in ORIENTATIONS:
            raise ValueError(
                f"orientation must be one of {ORIENTATIONS}, got {self.orientation!r}"
            )


@dataclass(frozen=True)
class DerivedScales:
    """Dimensionless combinations controlling the physics.

    ``u0 = 2*k0*z0`` is the argument of all geometric brackets, ``eps_geom``
    and ``eps_wave`` are the two small parameters of the drive expansion, and
    the remaining ratios quantify adiabaticity.
    """

    k0: float          # resonant wavenumber omega0/c, rad/m
    u0: float          # 2*k0*z0
    eps_geom: float    # a/z0
    eps_wave: float    # a*k0
    adiab_freq: float  # omega_p/omega0
    adiab_travel: float  # omega_p*z0/c
    v_ratio: float     # a*omega_p/c, peak mirror speed over c


def derive_scales(p: PhysicalParams) -> DerivedScales:
    k0 = p.omega0 / p.c
    return DerivedScales(
        k0=k0,
        u0=2.0 * k0 * p.z0,
        eps_geom=p.amplitude / p.z0,
        eps_wave=p.amplitude * k0,
        adiab_freq=p.omega_p / p.omega0,
        adiab_travel=p.omega_p * p.z0 / p.c,
        v_ratio=p.amplitude * p.omega_p / p.c,
    )


# validation severities, ordered
PASS, WARN, FAIL = "pass", "warn", "fail"
_SEVERITY_RANK = {PASS: 0, WARN: 1, FAIL: 2}

#: warn thresholds for the adiabatic / small-excursion checks; any check
#: whose value reaches 1 fails outright.
DEFAULT_THRESHOLDS = {
    "adiab_freq": 1e-3,
    "adiab_travel": 1e-2,
    "v_ratio": 1e-3,
    "eps_geom": 0.3,
    "eps_wave_sq": 0.3,
}


@dataclass(frozen=True)
class CheckResult:
    name: str
    value: float
    threshold: float
    severity: str


@dataclass(frozen=True)
class ValidationReport:
    checks: tuple[CheckResult, ...]
    overall: str

    @property
    def ok(self) -> bool:
        return self.overall != FAIL


def validate_adiabatic(
    p: PhysicalParams, thresholds: dict[str, float] | None = None
) -> ValidationReport:
    """Grade a configuration against the slow-drive assumptions.

    Each check compares a dimensionless ratio with a warn threshold; a ratio
    at or above 1 fails because the expansion it protects has then broken
    down entirely.  The overall severity is the worst individual one.

    Parameters
    ----------
    p : PhysicalParams
    thresholds : dict, optional
        Per-check overrides of ``DEFAULT_THRESHOLDS``.  Unknown names raise
        ``ValueError``.
    """
    thr = dict(DEFAULT_THRESHOLDS)
    if thresholds:
        unknown = sorted(set(thresholds) - set(thr))
        if unknown:
            raise ValueError(f"unknown threshold name(s): {', '.join(unknown)}")
        thr.update(thresholds)

    s = derive_scales(p)
    values = {
        "adiab_freq": s.adiab_freq,
        "adiab_travel": s.adiab_travel,
        "v_ratio": s.v_ratio,
        "eps_geom": s.eps_geom,
        "eps_wave_sq": s.eps_wave**2,
    }
    checks = []
    for name, value in values.items():
        if value >= 1.0:
            severity = FAIL
        elif value > thr[name]:
            severity = WARN
        else:
            severity = PASS
        checks.append(CheckResult(name, value, thr[name], severity))
    overall = max((c.severity for c in checks), key=_SEVERITY_RANK.__getitem__)
    return ValidationReport(tuple(checks), overall)


def load_config(path: str) -> PhysicalParams:
    """Read a JSON configuration file into ``PhysicalParams``.

    The file must contain exactly the documented keys (required:
    omega0_rad_per_s, omega_p_rad_per_s, amplitude_m, z0_m; optional:
    a21_per_s, c_m_per_s, orientation).  Unknown keys are rejected rather
    than ignored, so typos fail loudly.
    """
    try:
        with open(path, encoding="utf-8") as f:
            raw = json.load(f)
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}") from None
    except json.JSONDecodeError as e:
        raise ConfigError(f"config file is not valid JSON: {path}: {e}") from None
    if not isinstance(raw, dict):
        raise ConfigError(f"config root must be a JSON object, got {type(raw).__name__}")

    unknown = sorted(set(raw) - set(_CONFIG_KEYS))
    if unknown:
        raise ConfigError(f"config has unknown key(s): {', '.join(unknown)}")
    missing = sorted(
        key for key, (required, _) in _CONFIG_KEYS.items() if required and key not in raw
    )
    if missing:
        raise ConfigError(f"config missing required key(s): {', '.join(missing)}")

    kwargs = {}
    for key, value in raw.items():
        _, field = _CONFIG_KEYS[key]
        if field == "orientation":
            if not isinstance(value, str):
                raise ConfigError(f"config key {key} must be a string, got {value!r}")
        elif not isinstance(value, (int, float)) or isinstance(value, bool):
            raise ConfigError(f"config key {key} must be a number, got {value!r}")
        kwargs[field] = value
    try:
        return PhysicalParams(**kwargs)
    except ValueError as e:
        raise ConfigError(f"config invalid: {e}") from None


def config_digest(p: PhysicalParams) -> str:
    """Stable hash of a parameter set, for reproducibility metadata."""
    import hashlib

    blob = json.dumps(
        {
            "omega0_rad_per_s": p.omega0,
            "omega_p_rad_per_s": p.omega_p,
            "amplitude_m": p.amplitude,
            "z0_m": p.z0,
            "a21_per_s": p.a21,
            "c_m_per_s": p.c,
            "orientation": p.orientation,
        },
        sort_keys=True,
        separators=(",", ":"),
    )
    return hashlib.sha256(blob.encode("ascii")).hexdigest()


def _require_finite(name: str, value: float) -> None:
    if not isinstance(value, (int, float)) or isinstance(value, bool):
        raise ValueError(f"{name} must be a real number, got {value!r}")
    if not math.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value!r}")
