"""Self-contained special-function kernels.

Everything here reduces to two primitives: a Lanczos rational
approximation for the complex gamma function, and the ascending power
series

    J(nu, x) = sum_m (-1)^m (x/2)^(nu+2m) / (m! Gamma(nu+m+1))

evaluated for real or complex order nu and real argument x > 0.  The
series is summed in extended working precision (mpmath) because its
alternating terms cancel down from a peak of order e^x; in plain double
arithmetic the result would lose roughly 0.43*x digits, which is not
acceptable at the argument sizes this library needs (x up to ~50).
Results are returned as ordinary floats/complex.
"""

from __future__ import annotations

import cmath
import math
import threading
from dataclasses import dataclass
from functools import lru_cache

import mpmath as mp

# mpmath's precision is a global context; every extended-precision block
# in the package takes this (reentrant) lock so concurrent callers cannot
# interleave precision switches.
MP_LOCK = threading.RLock()

from .errors import (
    ConvergenceError,
    NearIntegerOrderError,
    NonFiniteValueError,
    PoleError,
)

__all__ = [
    "SeriesPolicy",
    "DEFAULT_POLICY",
    "gamma_complex",
    "bessel_j",
    "bessel_y",
    "bessel_j_dn",
    "lommel_residual",
    "bessel_j_mp",
    "bessel_j_dn_mp",
    "working_dps",
]


@dataclass(frozen=True)
class SeriesPolicy:
    """Truncation control for the ascending Bessel series.

    ``rel_tail_tol`` is the magnitude of the last added term relative to
    the accumulated sum; ``None`` resolves to five digits below the
    working precision.  The stop rule requires three consecutive terms
    under tolerance, which guards against the alternating series pausing
    near a zero crossing of the partial sums.
    """

    max_terms: int = 400
    rel_tail_tol: float | None = None

    def __post_init__(self):
        if self.max_terms < 50:
            raise ValueError("max_terms must be at least 50")
        if self.rel_tail_tol is not None and self.rel_tail_tol > 1e-16:
            raise ValueError("rel_tail_tol must be <= 1e-16")


DEFAULT_POLICY = SeriesPolicy()

# ---------------------------------------------------------------------------
# gamma


# Lanczos coefficients, g = 607/128, 15 terms; ~1e-14 relative accuracy
# across the moderate complex domain used here.
_LANCZOS_G = 607.0 / 128.0
_LANCZOS_C = (
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
)
_SQRT_2PI = math.sqrt(2.0 * math.pi)


def _nearest_nonpositive_integer_distance(z: complex) -> float:
    n = round(z.real)
    if n > 0:
        return math.inf
    return abs(z - n)


def gamma_complex(z: complex) -> complex:
    """Complex gamma via Lanczos approximation, reflection for Re z < 1/2.

    Raises PoleError when z lies within 1e-12 of a non-positive integer.
    """
    z = complex(z)
    if _nearest_nonpositive_integer_distance(z) <= 1e-12:
        raise PoleError(f"gamma pole at or near z = {z}")
    if z.real < 0.5:
        # Gamma(z) Gamma(1-z) = pi / sin(pi z)
        val = math.pi / (cmath.sin(math.pi * z) * gamma_complex(1.0 - z))
    else:
        w = z - 1.0
        acc = _LANCZOS_C[0]
        for i, c in enumerate(_LANCZOS_C[1:], start=1):
            acc += c / (w + i)
        t = w + _LANCZOS_G + 0.5
        val = _SQRT_2PI * t ** (w + 0.5) * cmath.exp(-t) * acc
    if not (math.isfinite(val.real) and math.isfinite(val.imag)):
        raise NonFiniteValueError(f"gamma_complex({z}) is not finite")
    return val


# ---------------------------------------------------------------------------
# Bessel J, ascending series in extended precision


def working_dps(nu: complex, x: float) -> int:
    """Decimal digits needed so the alternating series keeps ~17 digits.

    The sum of absolute term values peaks near e^x (0.434*x digits of
    cancellation); purely imaginary order tau adds growth up to
    ~1/|Gamma(1+i tau)| ~ e^(pi tau / 2) (0.69*tau digits).
    """
    return 25 + int(math.ceil(0.45 * x + 0.70 * abs(nu.imag)))


def _is_negative_integer(nu: complex) -> int | None:
    if nu.imag != 0.0:
        return None
    n = round(nu.real)
    if n < 0 and nu.real == n:
        return int(n)
    return None


@lru_cache(maxsize=200_000)
def _series_cached(nu_re: float, nu_im: float, x: float,
                   max_terms: int, tail_tol: float):
    """Ascending series at the working precision for (nu, x).

    Returns an mpf/mpc.  Terms follow the recurrence
    t_{m} = -t_{m-1} * (x/2)^2 / (m (nu+m)), t_0 = (x/2)^nu / Gamma(nu+1).
    """
    dps = working_dps(complex(nu_re, nu_im), x)
    if tail_tol <= 0.0:
        tail_tol = 10.0 ** (-(dps + 5))
    with MP_LOCK, mp.workdps(dps):
        if nu_im == 0.0:
            nu = mp.mpf(nu_re)
        else:
            nu = mp.mpc(nu_re, nu_im)
        half = mp.mpf(x) / 2
        q = half * half
        term = mp.power(half, nu) / mp.gamma(nu + 1)
        total = term
        small_run = 0
        for m in range(1, max_terms + 1):
            term = -term * q / (m * (nu + m))
            total += term
            if abs(term) <= tail_tol * abs(total):
                small_run += 1
                if small_run >= 3:
                    return +total
            else:
                small_run = 0
    raise ConvergenceError(
        f"Bessel series for nu={complex(nu_re, nu_im)}, x={x} "
        f"did not converge within {max_terms} terms"
    )


def bessel_j_mp(nu: complex, x: float, policy: SeriesPolicy | None = None):
    """Bessel J of the first kind as an mpmath value.

    Orders with negative imaginary part are evaluated at the conjugate
    order and conjugated back, so J(conj nu, x) == conj(J(nu, x)) holds
    bit-for-bit.  Negative integer orders reduce to J(-n) = (-1)^n J(n).
    """
    if x <= 0.0 or not math.isfinite(x):
        raise ValueError(f"argument must be positive and finite, got {x}")
    policy = policy or DEFAULT_POLICY
    nu = complex(nu)
    n = _is_negative_integer(nu)
    if n is not None:
        val = _series_cached(float(-n), 0.0, float(x),
                             policy.max_terms, policy.rel_tail_tol or 0.0)
        return -val if n % 2 else +val
    if nu.imag < 0.0:
        val = _series_cached(nu.real, -nu.imag, float(x),
                             policy.max_terms, policy.rel_tail_tol or 0.0)
        return mp.conj(val)
    return _series_cached(nu.real, nu.imag, float(x),
                          policy.max_terms, policy.rel_tail_tol or 0.0)


def _to_py(val, want_complex: bool):
    if isinstance(val, mp.mpc) and not want_complex:
        val = val.real
    if want_complex:
        out = complex(val)
        if not (math.isfinite(out.real) and math.isfinite(out.imag)):
            raise NonFiniteValueError("non-finite Bessel value")
        return out
    out = float(val)
    if not math.isfinite(out):
        raise NonFiniteValueError("non-finite Bessel value")
    return out


def _order_is_complex(nu) -> bool:
    return isinstance(nu, complex) and nu.imag != 0.0


def bessel_j(nu, x: float, policy: SeriesPolicy | None = None):
    """J(nu, x) for real or complex order, real x > 0.

    Returns float for real order, complex otherwise.
    """
    val = bessel_j_mp(nu, x, policy)
    return _to_py(val, _order_is_complex(nu))


def bessel_j_dn_mp(nu: complex, x: float, n: int,
                   policy: SeriesPolicy | None = None):
    """n-th argument-derivative of J as an mpmath value.

    Uses the closed reduction obtained by iterating
    Z' = (Z_{nu-1} - Z_{nu+1})/2:

        d^n/dx^n J_nu = 2^{-n} sum_k (-1)^k C(n,k) J_{nu-n+2k}(x)
    """
    if not 0 <= n <= 12:
        raise ValueError(f"derivative order must be in [0, 12], got {n}")
    if n == 0:
        return bessel_j_mp(nu, x, policy)
    nu = complex(nu)
    total = mp.mpf(0)
    for k in range(n + 1):
        contrib = math.comb(n, k) * bessel_j_mp(nu - n + 2 * k, x, policy)
        total = total - contrib if k % 2 else total + contrib
    return total / mp.mpf(2 ** n)


def bessel_j_dn(nu, x: float, n: int, policy: SeriesPolicy | None = None):
    """n-th derivative of J with respect to its argument; see bessel_j_dn_mp."""
    val = bessel_j_dn_mp(nu, x, n, policy)
    return _to_py(val, _order_is_complex(nu))


def bessel_y(nu: float, x: float, policy: SeriesPolicy | None = None) -> float:
    """Bessel Y of real non-integer order via the connection formula

        Y(nu, x) = (J(nu, x) cos(nu pi) - J(-nu, x)) / sin(nu pi).

    Orders within 1e-6 of an integer raise NearIntegerOrderError; such
    callers perturb the order and extrapolate instead.
    """
    nu = float(nu)
    if abs(nu - round(nu)) <= 1e-6:
        raise NearIntegerOrderError(
            f"order {nu} too close to an integer for the connection formula"
        )
    with MP_LOCK, mp.workdps(working_dps(complex(nu), x) + 5):
        jp = bessel_j_mp(nu, x, policy)
        jm = bessel_j_mp(-nu, x, policy)
        nupi = mp.pi * mp.mpf(nu)
        val = (jp * mp.cos(nupi) - jm) / mp.sin(nupi)
        return _to_py(val, False)


def lommel_residual(nu, x: float, policy: SeriesPolicy | None = None) -> float:
    """Deviation from the cross-product identity

        J(nu,x) J'(-nu,x) - J'(nu,x) J(-nu,x) = -2 sin(nu pi) / (pi x).

    Returns the absolute residual; zero for nu = 0 by symmetry.
    """
    nu = complex(nu)
    with MP_LOCK, mp.workdps(working_dps(nu, x) + 5):
        jp = bessel_j_mp(nu, x, policy)
        jm = bessel_j_mp(-nu, x, policy)
        djp = bessel_j_dn_mp(nu, x, 1, policy)
        djm = bessel_j_dn_mp(-nu, x, 1, policy)
        nupi = mp.pi * mp.mpc(nu) if nu.imag else mp.pi * mp.mpf(nu.real)
        resid = jp * djm - djp * jm + 2 * mp.sin(nupi) / (mp.pi * mp.mpf(x))
        return float(abs(resid))
