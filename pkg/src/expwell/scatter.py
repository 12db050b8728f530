"""Reflection and transmission amplitudes at energy E = k^2.

The scattering solution is assembled from Bessel functions of purely
imaginary order +-2ik evaluated at the fixed argument 2g.  Matching the
value and slope at the origin gives a 2x2 linear system whose
determinant is the cross-product Wronskian

    W = J(2ik) J'(-2ik) - J'(2ik) J(-2ik) = -i sinh(2 pi k) / (pi g),

purely imaginary and nonzero for every k > 0, so the system is never
degenerate.  Amplitudes follow as t = 1/A, r = B/A.  Continuing k to
the positive imaginary axis turns A's numerator into
J'(2 kappa, 2g) J(2 kappa, 2g), whose zeros reproduce the bound-state
quantization conditions factor by factor: that bijection is checked by
find_poles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath as mp

from . import specfun
from .bound import PotentialParams, Spectrum, even_condition, odd_condition, _refine
from .errors import DegenerateWronskian, PoleMismatch

__all__ = [
    "ScatterPoint",
    "PoleReport",
    "amplitudes",
    "wronskian_identity_residual",
    "find_poles",
]


@dataclass(frozen=True)
class ScatterPoint:
    """Amplitudes and diagnostics at one momentum."""

    k: float
    A: complex
    B: complex
    r: complex
    t: complex
    W: complex
    unitarity_residual: float   # | |r|^2 + |t|^2 - 1 |
    ortho_residual: float       # | Re(r conj(t)) |


@dataclass(frozen=True)
class PoleReport:
    """Amplitude poles on the positive imaginary momentum axis."""

    kappa_poles: tuple[float, ...]
    parities: tuple[str, ...]               # factor that vanished per pole
    matched_state_indices: tuple[int, ...]  # aligned bound-state index m


def _wronskian_parts(k: float, g: float):
    """u = J(2ik, 2g), du = J'(2ik, 2g), their conjugates, and W (mpmath)."""
    x = 2.0 * g
    with specfun.MP_LOCK, mp.workdps(specfun.working_dps(2j * k, x) + 5):
        u = specfun.bessel_j_mp(2j * k, x)
        du = specfun.bessel_j_dn_mp(2j * k, x, 1)
        v = mp.conj(u)       # J(-2ik, 2g), exact by conjugation symmetry
        dv = mp.conj(du)
        w = u * dv - du * v
        return u, du, v, dv, w


def amplitudes(k: float, params: PotentialParams) -> ScatterPoint:
    """Solve the origin-matching system at momentum k.

    The only phase convention is the principal real logarithm in
    g^(4ik) = exp(4ik ln g).
    """
    if k <= 0.0:
        raise ValueError("momentum k must be positive")
    g = params.g
    u, du, v, dv, w = _wronskian_parts(k, g)
    if abs(w) < 1e-14:
        raise DegenerateWronskian(f"|W| = {float(abs(w)):.3e} at k = {k}")
    phase = mp.exp(mp.mpc(0.0, 4.0 * k) * mp.log(mp.mpf(g)))
    a_amp = 2 * phase * dv * v / w
    b_amp = -(du * v + dv * u) / w
    r_amp = b_amp / a_amp
    t_amp = 1 / a_amp

    a_c, b_c = complex(a_amp), complex(b_amp)
    r_c, t_c = complex(r_amp), complex(t_amp)
    unit = abs(abs(r_c) ** 2 + abs(t_c) ** 2 - 1.0)
    ortho = abs((r_c * t_c.conjugate()).real)
    return ScatterPoint(k=k, A=a_c, B=b_c, r=r_c, t=t_c, W=complex(w),
                        unitarity_residual=unit, ortho_residual=ortho)


def wronskian_identity_residual(k: float, params: PotentialParams) -> float:
    """Relative deviation of the computed W from -i sinh(2 pi k)/(pi g).

    Evaluated in extended precision, so large 2 pi k cannot overflow.
    """
    if k <= 0.0:
        raise ValueError("momentum k must be positive")
    g = params.g
    *_, w = _wronskian_parts(k, g)
    with specfun.MP_LOCK, mp.workdps(30 + int(2.8 * k)):
        closed = mp.mpc(0, -1) * mp.sinh(2 * mp.pi * mp.mpf(k)) / (mp.pi * mp.mpf(g))
        return float(abs(w - closed) / abs(closed))


def find_poles(params: PotentialParams, spectrum: Spectrum) -> PoleReport:
    """Zeros of J'(2 kappa, 2g) * J(2 kappa, 2g) on kappa in (0, g).

    The product is the continued numerator of A with the pure scale
    factor removed.  Each zero is classified by which factor vanished
    (J' <-> even, J <-> odd) and must match a bound state within 1e-6,
    parity included; otherwise PoleMismatch is raised.
    """
    g = params.g

    def product(kappa: float) -> float:
        return even_condition(kappa, g) * odd_condition(kappa, g)

    h = min(0.025, g / 200.0)
    grid = [1e-9] + [i * h for i in range(1, int(math.floor(g / h)))]
    if grid[-1] < g * (1.0 - 1e-12):
        grid.append(g * (1.0 - 1e-12))

    roots: list[float] = []
    fprev = product(grid[0])
    for i in range(1, len(grid)):
        fcur = product(grid[i])
        if fcur == 0.0:
            roots.append(grid[i])
        elif (fcur < 0.0) != (fprev < 0.0):
            roots.append(_refine(product, grid[i - 1], grid[i], fprev, fcur, 1e-12))
        fprev = fcur

    # smallest bound state can sit below the scan floor at weak coupling
    known = sorted((s.kappa for s in spectrum.states), reverse=True)
    for kap in known:
        if not any(abs(kap - r) <= 1e-6 for r in roots):
            lo, hi = 0.5 * kap, min(1.5 * kap, g)
            flo, fhi = product(lo), product(hi)
            if (flo < 0.0) != (fhi < 0.0):
                roots.append(_refine(product, lo, hi, flo, fhi,
                                     min(1e-12, kap * 1e-7)))
    roots.sort(reverse=True)

    parities = tuple(
        "even" if abs(even_condition(r, g)) <= abs(odd_condition(r, g)) else "odd"
        for r in roots
    )
    states = spectrum.states
    if len(roots) != len(states):
        raise PoleMismatch(
            f"{len(roots)} poles vs {len(states)} bound states at g = {g}"
        )
    matched = []
    for i, (r, p) in enumerate(zip(roots, parities)):
        s = states[i]
        if abs(r - s.kappa) > 1e-6 or p != s.parity:
            raise PoleMismatch(
                f"pole {r} ({p}) does not match state m={s.m} "
                f"(kappa={s.kappa}, {s.parity})"
            )
        matched.append(s.m)
    return PoleReport(kappa_poles=tuple(roots), parities=parities,
                      matched_state_indices=tuple(matched))
