"""
Brute-force validation layer: polarization sums, solid-angle quadrature,
exact-trajectory time quadrature.

Proves:
 Group 1 - polarization and directions
   1.  polarization_tensor: pole value, trace 2, transversality, idempotence
   2.  Direction range validation

 Group 2 - angular quadrature vs closed-form brackets
   3.  Every bracket matches its solid-angle quadrature to 1e-8 relative
       over U in {0.1, 0.5, 1, pi, 2 pi, 10, 50}
   4.  Free-space approach at U = 20 sits inside the 3/U envelope
   5.  Too few nodes is reported as nonconvergence, not a wrong number

 Group 3 - exact time quadrature of the per-mode amplitude
   6.  a = 0 collapses to |s(delta,t)|^2 f0^2 with the direction weights
   7.  Invariance under shifting the window by full drive periods
   8.  Residual against the second-order expansion scales as a^3
   9.  Full-period zero-detuning agreement at O((kz a)^3) absolute

 Group 4 - assembled spectrum oracle and the suite
  10.  spectrum_by_quadrature: static anchor, parity, agreement with the
       analytic spectrum at the sideband detuning
  11.  run_validation_suite passes wholesale on the reference geometry
  12.  A corrupted B2 closed form is caught by the bracket reports
  13.  amplitude = 0 passes trivially; reports serialize to JSON
"""

from __future__ import annotations

import dataclasses
import json
import math

import numpy as np
import pytest

from oscmirror.modes import KINDS, MirrorTrajectory, expansion_coeffs
from oscmirror.oracle import (
    BRACKET_ARGUMENTS,
    Direction,
    NonconvergenceError,
    OracleReport,
    angular_bracket_quadrature,
    exact_mode_probability,
    expanded_mode_probability,
    polarization_tensor,
    run_validation_suite,
    spectrum_by_quadrature,
)
from oscmirror.params import PhysicalParams, derive_scales
from oscmirror.rate import BRACKETS, b0
from oscmirror.spectrum import sinc_kernel, spectrum_dynamic, spectrum_static

_FIG2 = PhysicalParams(omega0=1e15, omega_p=1.5e8, amplitude=2e-7, z0=1e-6)
_T = 1e-6


def _rel(x, y):
    return abs(x - y) / max(abs(x), abs(y))


# ── Group 1: polarization and directions ──────────────────────────────────────


def test_polarization_tensor_pole():
    """Propagation along z leaves the two transverse Cartesian axes."""
    P = polarization_tensor(Direction(0.0, 0.0))
    assert np.allclose(P, np.diag([1.0, 1.0, 0.0]), atol=1e-15)


def test_polarization_tensor_properties():
    rng = np.random.default_rng(13)
    for _ in range(50):
        d = Direction(rng.uniform(0.0, math.pi), rng.uniform(0.0, 2 * math.pi))
        P = polarization_tensor(d)
        k_hat = d.unit_vector
        assert abs(np.trace(P) - 2.0) <= 1e-14
        assert np.max(np.abs(P @ k_hat)) <= 1e-14  # transversality
        assert np.max(np.abs(P @ P - P)) <= 1e-14  # projector
        assert np.max(np.abs(P - P.T)) == 0.0


def test_direction_validation():
    with pytest.raises(ValueError, match="theta"):
        Direction(-0.1, 0.0)
    with pytest.raises(ValueError, match="theta"):
        Direction(math.pi + 0.1, 0.0)
    with pytest.raises(ValueError, match="phi"):
        Direction(1.0, -0.5)
    with pytest.raises(ValueError, match="phi"):
        Direction(1.0, 2 * math.pi)


# ── Group 2: angular quadrature ───────────────────────────────────────────────


def test_brackets_match_quadrature():
    """The one check that catches transcription errors in any closed form."""
    worst = 0.0
    for name, closed in BRACKETS.items():
        for u in BRACKET_ARGUMENTS:
            quad = angular_bracket_quadrature(name, u)
            rel = abs(quad - closed(u)) / max(abs(closed(u)), 1e-30)
            worst = max(worst, rel)
            assert rel <= 1e-8, f"{name} at U={u:g}: rel={rel:.3e}"
    print(f"\n  worst bracket quadrature deviation: {worst:.3e}")


def test_quadrature_free_space_envelope():
    """U = 20: quadrature approaches the free-space value inside 3/U."""
    quad = angular_bracket_quadrature("r_parallel", 20.0)
    assert abs(quad - 1.0) <= 3.0 / 20.0
    assert _rel(quad, BRACKETS["r_parallel"](20.0)) <= 1e-8


def test_quadrature_nonconvergence_is_reported():
    """Starving the rule at a stiff argument raises; it never returns junk."""
    with pytest.raises(NonconvergenceError):
        angular_bracket_quadrature("b0", 50.0, n_nodes=8)


def test_quadrature_rejects_unknown_bracket():
    with pytest.raises(ValueError, match="b0"):
        angular_bracket_quadrature("b7", 1.0)


# ── Group 3: exact per-mode time quadrature ───────────────────────────────────


def _static_mode_reference(p, direction, k, t):
    """a = 0 closed form: sum over kinds of weight * 2 f0^2 s(delta,t)^2."""
    scales = derive_scales(p)
    P = polarization_tensor(direction)
    w_par = (P[0, 0] + P[1, 1]) / 3.0
    w_perp = P[2, 2] / 3.0
    kz = k * math.cos(direction.theta)
    delta = p.c * k - p.omega0
    s2 = sinc_kernel(delta, t) ** 2
    total = 0.0
    for kind, w in zip(KINDS, (w_par, w_perp)):
        f0 = expansion_coeffs(kind, kz, p.z0).f0
        total += w * 2.0 * f0**2 * s2
    return total


def test_exact_mode_probability_static_limit():
    p = PhysicalParams(omega0=1e15, omega_p=1.5e8, amplitude=0.0, z0=1e-6)
    k0 = derive_scales(p).k0
    rng = np.random.default_rng(17)
    for _ in range(5):
        d = Direction(rng.uniform(0.2, math.pi - 0.2), rng.uniform(0.0, 2 * math.pi))
        k = k0 * (1.0 + rng.uniform(-1e-7, 1e-7))  # detuning within the band
        got = exact_mode_probability(p, d, k, _T)
        ref = _static_mode_reference(p, d, k, _T)
        assert _rel(got, ref) <= 1e-10, f"theta={d.theta:.3f}"


def test_exact_mode_probability_period_shift_invariance():
    """Delaying the trajectory by whole periods leaves |amplitude|^2 alone."""
    k0 = derive_scales(_FIG2).k0
    d = Direction(1.2, 0.7)
    k = k0 * (1.0 + 0.5 * _FIG2.omega_p / _FIG2.omega0)
    T_drive = 2 * math.pi / _FIG2.omega_p
    base = exact_mode_probability(_FIG2, d, k, _T)
    for m in (1, 3):
        shifted = exact_mode_probability(_FIG2, d, k, _T, t_start=m * T_drive)
        assert _rel(shifted, base) <= 1e-10, f"m={m}"


def test_mode_residual_scales_cubically():
    """exact - expansion drops ~8x per a-halving at an off-ladder detuning."""
    scales = derive_scales(_FIG2)
    # direction away from mode-function nodes: the a^3 cross terms carry
    # sin(u0 cos(theta)) and would be geometrically suppressed at a node
    x = 0.35
    d = Direction(math.acos(x), 0.8)
    assert abs(math.sin(scales.u0 * x)) >= 0.4
    # detuning halfway between sideband rungs, where no parity cancellation
    # hides the cubic term
    k = scales.k0 * (1.0 + 0.5 * _FIG2.omega_p / _FIG2.omega0)
    a_base = 0.15 / scales.k0  # keep the wave expansion parameter small

    def residual(amplitude):
        p = dataclasses.replace(_FIG2, amplitude=amplitude)
        return abs(
            exact_mode_probability(p, d, k, _T) - expanded_mode_probability(p, d, k, _T)
        )

    ratio = residual(a_base) / residual(a_base / 2)
    assert 8.0 / 2.0 <= ratio <= 8.0 * 1.5, f"ratio={ratio:.3f}"


def test_mode_expansion_agrees_at_full_period():
    """omega_p t = 2 pi, delta = 0: difference bounded at O((kz a)^3)."""
    scales = derive_scales(_FIG2)
    t = 2 * math.pi / _FIG2.omega_p
    d = Direction(math.acos(0.35), 0.0)
    kz_a = scales.k0 * 0.35 * _FIG2.amplitude
    exact = exact_mode_probability(_FIG2, d, scales.k0, t)
    expanded = expanded_mode_probability(_FIG2, d, scales.k0, t)
    # probability scale t^2 times the cubic remainder of the mode function
    assert abs(exact - expanded) <= 3.0 * kz_a**3 * t**2, (
        f"diff={abs(exact - expanded):.3e} bound={3.0 * kz_a**3 * t**2:.3e}"
    )


# ── Group 4: assembled spectrum oracle and the suite ─────────────────────────


def test_spectrum_by_quadrature_static_anchor():
    """a = 0, delta = 0: the angular sum reproduces (t^2/2 pi) B0(U0)."""
    p = PhysicalParams(omega0=1e15, omega_p=1.5e8, amplitude=0.0, z0=1e-6)
    scales = derive_scales(p)
    got = spectrum_by_quadrature(p, 0.0, _T)
    expected = p.a21 * _T**2 / (2 * math.pi) * b0(scales.u0)
    assert _rel(got, expected) <= 1e-6, f"got={got!r} expected={expected!r}"


def test_spectrum_by_quadrature_parity():
    delta = 0.5 * _FIG2.omega_p
    plus = spectrum_by_quadrature(_FIG2, +delta, _T)
    minus = spectrum_by_quadrature(_FIG2, -delta, _T)
    assert _rel(plus, minus) <= 1e-9


def test_spectrum_by_quadrature_matches_analytic_at_sideband():
    """Oracle vs closed-form spectrum at delta = +wp, within the a^3 budget."""
    scales = derive_scales(_FIG2)
    delta = _FIG2.omega_p
    oracle = spectrum_by_quadrature(_FIG2, delta, _T)
    analytic = spectrum_static(_FIG2, delta, _T) + spectrum_dynamic(_FIG2, delta, _T)
    central = _FIG2.a21 * _T**2 / (2 * math.pi) * b0(scales.u0)
    eps = max(scales.eps_geom, scales.eps_wave)
    bound = 3.0 * eps**3 * central
    assert abs(oracle - analytic) <= bound, (
        f"diff={abs(oracle - analytic):.3e} bound={bound:.3e}"
    )


def test_validation_suite_reference_geometry_passes():
    reports = run_validation_suite(_FIG2)
    failed = [r.name for r in reports if not r.passed]
    assert failed == [], f"failed: {failed}"
    assert len(reports) > 40  # brackets, convergence, norms, spectrum, residuals
    for r in reports:
        assert r.passed == (r.rel_err <= r.tol or (r.abs_err == 0.0))


def test_validation_suite_catches_corrupted_bracket():
    """Fault injection: a 0.1% error in B2 must trip its oracle reports."""
    corrupted = dict(BRACKETS)
    corrupted["b2"] = lambda u: BRACKETS["b2"](u) * 1.001
    reports = run_validation_suite(_FIG2, closed_forms=corrupted)
    failed = {r.name for r in reports if not r.passed}
    assert any(name.startswith("bracket:b2") for name in failed), failed
    assert not any(name.startswith("bracket:b0") for name in failed), failed


def test_validation_suite_rejects_unknown_closed_form():
    with pytest.raises(ValueError, match="b9"):
        run_validation_suite(_FIG2, closed_forms={"b9": lambda u: 1.0})


def test_validation_suite_static_mirror_trivial_residuals():
    """amplitude = 0: expansion residuals vanish and the suite still passes."""
    p = PhysicalParams(omega0=1e15, omega_p=1.5e8, amplitude=0.0, z0=1e-6)
    reports = run_validation_suite(p)
    assert all(r.passed for r in reports)
    residuals = [r for r in reports if r.name.startswith("residual:")]
    assert residuals, "residual reports missing"


def test_oracle_report_serializes():
    r = OracleReport.from_values("demo", 1.0, 1.0 + 1e-12, tol=1e-8, nodes=16)
    payload = json.loads(json.dumps(dataclasses.asdict(r)))
    assert payload["name"] == "demo"
    assert payload["passed"] is True
    assert isinstance(payload["rel_err"], float)
