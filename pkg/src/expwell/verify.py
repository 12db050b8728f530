"""Cross-module invariant battery for a single coupling.

Each check returns its measured value and the bound it must satisfy;
checks that need more bound states than the coupling supports are
reported as skipped rather than failed.  The battery backs the
``expwell verify`` command and the acceptance suite.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import bound, crum, oracle, scatter
from .bound import PotentialParams
from .quadrature import QuadratureSpec

__all__ = ["CheckResult", "run_battery"]


@dataclass(frozen=True)
class CheckResult:
    name: str
    value: float | None
    threshold: float | None
    comparator: str      # "<=", ">", "==", "bool"
    passed: bool
    note: str = ""

    @property
    def skipped(self) -> bool:
        return self.comparator == "skip"


def _skip(name: str, why: str) -> CheckResult:
    return CheckResult(name, None, None, "skip", True, why)


def _le(name: str, value: float, threshold: float, note: str = "") -> CheckResult:
    return CheckResult(name, value, threshold, "<=", value <= threshold, note)


def _gt(name: str, value: float, threshold: float, note: str = "") -> CheckResult:
    return CheckResult(name, value, threshold, ">", value > threshold, note)


def _ok(name: str, passed: bool, note: str = "") -> CheckResult:
    return CheckResult(name, None, None, "bool", passed, note)


def run_battery(g: float, max_pair_states: int = 8) -> list[CheckResult]:
    """All module invariants at coupling g; order is deterministic."""
    params = PotentialParams(g)
    out: list[CheckResult] = []

    spectrum = bound.find_spectrum(params)
    states = spectrum.states
    count = spectrum.count

    out.append(_ok("ground_state_even",
                   count >= 1 and states[0].parity == "even",
                   f"count={count}"))
    margin = min(states[0].energy - (-g * g), -states[-1].energy)
    out.append(_gt("energy_bounds_margin", margin, 0.0,
                   "-g^2 < E_0 and E_max < 0"))
    out.append(_ok("parity_alternation",
                   all(s.parity == ("even" if s.m % 2 == 0 else "odd")
                       for s in states)))
    try:
        zeros = bound.order_zeros(params)
        out.append(_ok("interlacing_chain", True,
                       f"{len(zeros.lam)} even / {len(zeros.mu)} odd"))
    except Exception as exc:  # InterlacingViolation
        out.append(_ok("interlacing_chain", False, str(exc)))

    q_resid = max(
        abs(bound.even_condition(s.kappa, g)) if s.parity == "even"
        else abs(bound.odd_condition(s.kappa, g))
        for s in states
    )
    out.append(_le("quantization_residual", q_resid, 1e-10))

    out.append(_ok("node_counts",
                   all(bound.count_nodes(s, params) == s.m for s in states)))

    if g <= 0.1:
        nu = states[0].order
        two_term = 4.0 * nu * (nu + 1.0) / (nu + 2.0)
        out.append(_le("small_g_two_term",
                       abs((2.0 * g) ** 2 / two_term - 1.0), 5e-3))

    # orthonormality of the normalized states (pair count capped for speed)
    head = states[:max_pair_states]
    quad = QuadratureSpec()
    normalized = bound.normalize(
        bound.Spectrum(params=params, states=tuple(head)), quad)
    worst = 0.0
    for i, a in enumerate(normalized.states):
        for b in normalized.states[i:]:
            ip = bound.inner_product(a, b, params, quad)
            ip *= a.norm_const * b.norm_const
            target = 1.0 if a.m == b.m else 0.0
            worst = max(worst, abs(ip - target))
    out.append(_le("orthonormality", worst, 1e-8,
                   f"first {len(head)} states"))

    # oracle: eigenvalues; skip states so weakly bound that the shooting
    # grid (x_max ~ 60/kappa at h = 1e-3) becomes astronomically long
    checkable = [s for s in states if s.kappa >= 5e-3]
    if checkable:
        worst = 0.0
        for s in checkable:
            cfg = oracle.ShootingConfig(
                parity=s.parity,
                kappa_bracket=(max(s.kappa - 1e-4, s.kappa / 2),
                               s.kappa + 1e-4))
            worst = max(worst,
                        abs(oracle.numerov_eigenvalue(params, cfg) - s.kappa))
        out.append(_le("oracle_eigenvalue_gap", worst, 1e-7,
                       f"{len(checkable)} of {count} states"))
    else:
        out.append(_skip("oracle_eigenvalue_gap",
                         "all states too weakly bound for the shooting grid"))

    # scattering block
    ks = np.geomspace(0.05, 5.0, 12)
    unit = ortho = wres = realw = 0.0
    for k in ks:
        pt = scatter.amplitudes(float(k), params)
        unit = max(unit, pt.unitarity_residual)
        ortho = max(ortho, pt.ortho_residual)
        realw = max(realw, abs(pt.W.real) / abs(pt.W))
        wres = max(wres, scatter.wronskian_identity_residual(float(k), params))
    out.append(_le("unitarity_residual", unit, 1e-10))
    out.append(_le("amplitude_orthogonality_residual", ortho, 1e-10))
    out.append(_le("wronskian_closed_form_residual", wres, 1e-9))
    out.append(_le("wronskian_imaginary_part", realw, 1e-11))

    pt = scatter.amplitudes(1.0, params)
    _, t_ode = oracle.transmission_numeric(1.0, params)
    out.append(_le("oracle_transmission_gap",
                   abs(abs(pt.t) ** 2 - abs(t_ode) ** 2), 1e-4))

    try:
        scatter.find_poles(params, spectrum)
        out.append(_ok("pole_spectrum_bijection", True))
    except Exception as exc:
        out.append(_ok("pole_spectrum_bijection", False, str(exc)))

    # associated-system block
    gap = max(abs(crum.associated_potential(1, params, spectrum, x)
                  - crum.v1_closed_form(params, spectrum, x))
              for x in (0.3, 0.7, 1.3, 2.1, 4.0))
    out.append(_le("crum_potential_closed_form_gap", gap, 1e-9))
    out.append(_le("crum_potential_tail",
                   abs(crum.associated_potential(1, params, spectrum, 40.0)),
                   1e-8))

    if count >= 2:
        worst = 0.0
        for n in range(1, min(count, 4)):
            vp = crum.associated_eigenfunction(1, n, params, spectrum, 0.9)
            vm = crum.associated_eigenfunction(1, n, params, spectrum, -0.9)
            scale = max(abs(vp), abs(vm), 1e-300)
            worst = max(worst, abs(vm - (-1.0) ** (1 + n) * vp) / scale)
        out.append(_le("crum_parity", worst, 1e-10))
        out.append(_le("crum_eigen_equation_residual",
                       crum.eigen_equation_residual(1, 1, params, spectrum),
                       1e-6))
        out.append(_le("crum_origin_continuity",
                       max(crum.origin_continuity_residual(1, n, params, spectrum)
                           for n in range(1, min(count, 3))),
                       1e-8))
    else:
        out.append(_skip("crum_parity", "needs >= 2 states"))
        out.append(_skip("crum_eigen_equation_residual", "needs >= 2 states"))
        out.append(_skip("crum_origin_continuity", "needs >= 2 states"))

    if count >= 4:
        res = crum.associated_orthogonality_residuals(1, params, spectrum)
        capped = sorted(res.items())[:4]
        out.append(_le("crum_orthogonality_residual",
                       max(v for _, v in capped), 1e-7,
                       f"{len(capped)} pairs"))
    else:
        out.append(_skip("crum_orthogonality_residual", "needs >= 4 states"))

    xs = np.linspace(0.0, 10.0, 201)
    v0 = np.array([bound.potential(float(x), params) for x in xs])
    *_, rel0 = crum.fit_exponential_family(xs, v0)
    out.append(_le("base_potential_family_fit", rel0, 1e-12))
    out.append(_gt("shape_invariance_misfit",
                   crum.shape_invariance_residual(params, spectrum), 1e-3))

    return out
