r"""Complex-plane evaluators: log Gamma, zeta, the completed zeta function xi,
the theta kernel, and the Riemann-Siegel Z function.

Everything downstream (the distribution, the signed Levy-type representations,
the zero finder) is built on the routines in this module, so each evaluator is
held to a stated accuracy and cross-checkable against an independent path:

* ``xi`` multiplies s(s-1) pi^{-s/2} Gamma(s/2) zeta(s) out of log-gamma and
  zeta evaluators, while ``xi_theta`` reaches the same entire function through
  the absolutely convergent theta-kernel integral
      xi(s) = 2 \int_1^inf  sum_n f(nx) (x^{s-1/2} + x^{1/2-s}) x^{-1/2} dx,
  f(x) = 2 pi (2 pi x^4 - 3 x^2) e^{-pi x^2}.
* ``riemann_siegel_Z`` is exact-phase (e^{i theta(t)} zeta(1/2+it)) below
  t = 1000 and the Riemann-Siegel main sum plus its first correction term
  above, which is ample for locating sign changes.

Method selection for zeta:
  Re s > 0 : accelerated alternating series (Cohen-Rodriguez Villegas-Zagier
             coefficients) while |Im s| <= 150; Euler-Maclaurin beyond, since
             the alternating-series error constant grows like e^{pi|t|/2} and
             its coefficients overflow float64 once |t| is large.
  Re s <= 0: reflection through the functional equation, assembled in log
             space so that the Gamma/sin factors cannot overflow.
"""

from __future__ import annotations

import cmath
import math

import numpy as np
from scipy.special import bernoulli

from .accuracy import (
    DEFAULT_ACCURACY,
    AccuracyError,
    DomainError,
    EvalAccuracy,
    PoleError,
    ensure_finite,
)

__all__ = [
    "log_gamma",
    "zeta",
    "xi",
    "theta_kernel",
    "theta_sum",
    "xi_theta",
    "riemann_siegel_theta",
    "riemann_siegel_Z",
    "z_values",
]

_LN_PI = math.log(math.pi)
_LN_2 = math.log(2.0)
_LN_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)
_TWO_PI = 2.0 * math.pi

# Switch point between the exact-phase Z evaluation and the Riemann-Siegel
# formula.  Below this the Euler-Maclaurin zeta is cheap and machine-accurate;
# above it the RS main sum + first correction is within ~3e-3, enough for
# bracketing (the tightest known dip of |Z| between neighbouring zeros under
# t = 1e4, near t ~ 7005, is ~4e-3).
_Z_SWITCH = 1000.0

# ----------------------------------------------------------------- log Gamma

# Stirling tail coefficients B_{2k} / (2k (2k-1)).
_B = bernoulli(60)
_STIRLING = [_B[2 * k] / (2 * k * (2 * k - 1)) for k in range(1, 15)]
_STIRLING_SHIFT = 9.0  # recurrence target: Re z >= 9 puts us in the Stirling region


def log_gamma(s: complex) -> complex:
    """Principal-branch log Gamma via argument-shift recurrence + Stirling.

    Relative accuracy ~1e-13 for -50 <= Re s <= 50, |Im s| <= 200 (and
    degrades gracefully outside).  Raises PoleError at non-positive integers.
    """
    z = ensure_finite(s, "log_gamma argument")
    if z.imag == 0.0 and z.real <= 0.0 and z.real == math.floor(z.real):
        raise PoleError(f"log_gamma pole at non-positive integer {z.real:g}")
    shift = 0
    if z.real < _STIRLING_SHIFT:
        shift = int(math.ceil(_STIRLING_SHIFT - z.real))
    w = z + shift
    rec = 0.0 + 0.0j
    for j in range(shift):
        rec += cmath.log(z + j)
    winv2 = 1.0 / (w * w)
    tail = 0.0 + 0.0j
    p = 1.0 / w
    for c in _STIRLING:
        tail += c * p
        p *= winv2
    out = (w - 0.5) * cmath.log(w) - w + _LN_SQRT_2PI + tail - rec
    if not cmath.isfinite(out):
        raise AccuracyError("log_gamma overflowed", achieved=math.inf)
    return out


# ---------------------------------------------------------------------- zeta

# (s-1) * zeta(s) as a power series around s = 1 (Stieltjes constants),
# used whenever s is within 0.1 of the pole.
_STIELTJES = [
    0.5772156649015328606,
    -0.0728158454836767249,
    -0.0096903631928723184,
    0.0020538344203033459,
    0.0023253700654673000,
    0.0007933238173010627,
    -0.0002387693454301996,
    -0.0005272895670577510,
    -0.0003521233538030395,
    -0.0000343947744180880,
]
_W_COEFF = [(-1) ** n * g / math.factorial(n) for n, g in enumerate(_STIELTJES)]


def _pole_free_zeta(s: complex) -> complex:
    """(s-1) zeta(s), analytic at s = 1; valid for |s-1| <= 0.1."""
    d = s - 1.0
    acc = 0.0 + 0.0j
    for c in reversed(_W_COEFF):
        acc = (acc + c) * d
    return 1.0 + acc


def _cvz_coefficients(n: int) -> np.ndarray:
    # d_k = n * sum_{i<=k} (n+i-1)! 4^i / ((n-i)! (2i)!), built by term ratios
    d = np.empty(n + 1)
    term = 1.0
    d[0] = 1.0
    for i in range(1, n + 1):
        term *= 4.0 * (n + i - 1) * (n - i + 1) / ((2 * i - 1) * (2 * i))
        d[i] = d[i - 1] + term
    return d


def _zeta_alternating(s: complex, denom: complex, n: int) -> complex:
    d = _cvz_coefficients(n)
    k = np.arange(n)
    signs = 1.0 - 2.0 * (k % 2)
    powers = np.exp(-s * np.log(k + 1.0))
    total = np.sum(signs * (d[n] - d[:n]) * powers)
    return complex(total / (d[n] * denom))


# Euler-Maclaurin tail: coefficients B_{2k}/(2k)! and their successive ratios.
_EM_KMAX = 28
_BF = [_B[2 * k] / math.factorial(2 * k) for k in range(1, _EM_KMAX + 2)]
_BF_RATIO = [_BF[k] / _BF[k - 1] for k in range(1, _EM_KMAX + 1)]


def _zeta_euler_maclaurin(s: complex, abs_tol: float, max_terms: int = 200_000) -> complex:
    t = abs(s.imag)
    n_cut = max(18, int(0.55 * t) + 8)
    if n_cut > max_terms:
        raise AccuracyError(
            f"Euler-Maclaurin needs {n_cut} head terms, max_terms is {max_terms}"
        )
    n = np.arange(1, n_cut)
    head = complex(np.sum(np.exp(-s * np.log(n))))
    ncs = cmath.exp(-s * math.log(n_cut))
    val = head + 0.5 * ncs + ncs * n_cut / (s - 1.0)
    term = _BF[0] * s * ncs / n_cut
    total = term
    inv_n2 = 1.0 / (n_cut * n_cut)
    k = 1
    while abs(term) > 0.02 * abs_tol:
        if k >= _EM_KMAX:
            raise AccuracyError("Euler-Maclaurin tail did not converge", achieved=abs(term))
        term *= _BF_RATIO[k - 1] * (s + 2 * k - 1) * (s + 2 * k) * inv_n2
        total += term
        k += 1
    return val + total


def _log_sin(w: complex) -> complex:
    # branch is irrelevant: the caller exponentiates the total
    if abs(w.imag) <= 30.0:
        return cmath.log(cmath.sin(w))
    # |e^{-+2iw}| < e^{-60}: the subdominant exponential is below double precision
    if w.imag < 0:
        return 1j * w - cmath.log(2j)
    return -1j * w + cmath.log(0.5j)


def _zeta_rhs(s: complex, acc: EvalAccuracy) -> complex:
    # Re s > 0 dispatcher
    if abs(s - 1.0) <= 0.1:
        return _pole_free_zeta(s) / (s - 1.0)
    if abs(s.imag) <= 150.0:
        denom = 1.0 - cmath.exp((1.0 - s) * _LN_2)
        # the alternating-series form divides by 1 - 2^{1-s}; avoid its zeros.
        # error ~ (3+sqrt 8)^{-n} (1+2|t|) e^{pi|t|/2}, so n grows with |t|
        if abs(denom) >= 0.01:
            n = int(0.892 * abs(s.imag)) + 28
            if n > acc.max_terms:
                raise AccuracyError(f"alternating series needs {n} terms, max_terms is {acc.max_terms}")
            return _zeta_alternating(s, denom, n)
    return _zeta_euler_maclaurin(s, acc.abs_tol, acc.max_terms)


def zeta(s: complex, acc: EvalAccuracy = DEFAULT_ACCURACY) -> complex:
    """Riemann zeta on the full plane (simple pole at s = 1 raises)."""
    z = ensure_finite(s, "zeta argument")
    if z == 1.0:
        raise PoleError("zeta pole at s = 1")
    if z.real > 0.0:
        return _zeta_rhs(z, acc)
    # reflection:  zeta(s) = 2^s pi^{s-1} sin(pi s/2) Gamma(1-s) zeta(1-s)
    u = 1.0 - z
    if abs(z) < 0.1:
        # zeta(1-s) has its pole at s = 0; pair it with the sin zero explicitly
        w = _pole_free_zeta(u)  # (u-1) zeta(u) -> 1
        half = 0.5 * math.pi * z
        sin_over_s = 0.5 * math.pi if z == 0 else cmath.sin(half) / z
        pref = cmath.exp(z * _LN_2 + (z - 1.0) * _LN_PI + log_gamma(u))
        return -pref * sin_over_s * w
    logv = (
        z * _LN_2
        + (z - 1.0) * _LN_PI
        + _log_sin(0.5 * math.pi * z)
        + log_gamma(u)
        + cmath.log(_zeta_rhs(u, acc))
    )
    return cmath.exp(logv)


# ----------------------------------------------------------------------- xi

def xi(s: complex) -> complex:
    """Completed zeta function s(s-1) pi^{-s/2} Gamma(s/2) zeta(s).

    Entire: the zeta pole at s=1 is removed by the (s-1) zeta(s) series, and
    s Gamma(s/2) is evaluated as 2 Gamma(s/2+1) so s=0 needs no special case.
    Exactly at the trivial zeros s = -2, -4, ... the Gamma pole meets the
    zeta zero; there the functional equation value xi(1-s) is returned.
    """
    z = ensure_finite(s, "xi argument")
    if abs(z.imag) < 1e-6:
        m = round(z.real)
        if m <= -2 and m % 2 == 0 and abs(z - m) < 1e-6:
            return xi(1.0 - z)
    w = _pole_free_zeta(z) if abs(z - 1.0) <= 0.05 else (z - 1.0) * zeta(z)
    return 2.0 * w * cmath.exp(log_gamma(0.5 * z + 1.0) - 0.5 * z * _LN_PI)


# ------------------------------------------------------------- theta kernel

def theta_kernel(x):
    """f(x) = 2 pi (2 pi x^4 - 3 x^2) e^{-pi x^2}; positive for all x >= 1."""
    xa = np.asarray(x, dtype=float)
    x2 = xa * xa
    out = _TWO_PI * (_TWO_PI * x2 * x2 - 3.0 * x2) * np.exp(-math.pi * x2)
    if np.ndim(x) == 0:
        return float(out)
    return out


def _kernel_cutoff(abs_tol: float) -> float:
    # smallest u with 4 pi^2 u^4 e^{-pi u^2} < abs_tol/10 (Gaussian tail rule)
    big = math.log(40.0 * math.pi**2 / abs_tol)
    u = math.sqrt(big / math.pi)
    for _ in range(3):
        u = math.sqrt((big + 4.0 * math.log(max(u, 1.0))) / math.pi)
    return u


def theta_sum(x: float, abs_tol: float = 1e-16) -> float:
    """sum_{n>=1} f(n x) with the Gaussian-decay truncation rule."""
    if x <= 0.0:
        raise DomainError("theta_sum needs x > 0")
    u_stop = _kernel_cutoff(abs_tol)
    n_max = max(1, int(math.ceil(u_stop / x)) + 1)
    n = np.arange(1, n_max + 1, dtype=float)
    return float(np.sum(theta_kernel(n * x)))


def xi_theta(s: complex, acc: EvalAccuracy = DEFAULT_ACCURACY) -> complex:
    """xi(s) by the theta-kernel integral; an independent route to ``xi``.

    The integrand is summed to the Gaussian tail bound and integrated
    adaptively over [1, X]; beyond X = 8 the integrand is below 1e-180 for
    |Re s| <= 10 so the truncation is far inside any requested tolerance.
    """
    from .quadrature import quad_complex  # deferred: quadrature pulls in scipy

    z = ensure_finite(s, "xi_theta argument")
    tol = max(acc.abs_tol, 1e-13)

    def integrand(x: float) -> complex:
        sf = theta_sum(x, abs_tol=tol)
        return sf * (cmath.exp((z - 1.0) * math.log(x)) + cmath.exp(-z * math.log(x)))

    x_hi = 8.0 + 0.1 * max(0.0, abs(z.real) - 10.0)
    limit = 200 + 8 * int(abs(z.imag))
    return 2.0 * quad_complex(integrand, 1.0, x_hi, abs_tol=tol, limit=limit)


# ------------------------------------------------------- Riemann-Siegel Z(t)

def _theta_asymptotic(t):
    t = np.asarray(t, dtype=float)
    return (
        0.5 * t * np.log(t / _TWO_PI)
        - 0.5 * t
        - math.pi / 8.0
        + 1.0 / (48.0 * t)
        + 7.0 / (5760.0 * t**3)
        + 31.0 / (80640.0 * t**5)
    )


def riemann_siegel_theta(t: float) -> float:
    """theta(t) = Im log Gamma(1/4 + it/2) - (t/2) log pi (continuous branch)."""
    if t < 0.0:
        return -riemann_siegel_theta(-t)
    if t >= 20.0:
        return float(_theta_asymptotic(t))
    return log_gamma(0.25 + 0.5j * t).imag - 0.5 * t * _LN_PI


def _theta_values(ts: np.ndarray) -> np.ndarray:
    out = np.empty_like(ts)
    big = ts >= 20.0
    if np.any(big):
        out[big] = _theta_asymptotic(ts[big])
    for i in np.flatnonzero(~big):
        out[i] = riemann_siegel_theta(float(ts[i]))
    return out


def _rs_psi(p: np.ndarray) -> np.ndarray:
    # Psi(p) = cos(2 pi (p^2 - p - 1/16)) / cos(2 pi p), entire; the removable
    # points p = 1/4, 3/4 get the local expansion Psi ~ 1/2 -+ (p - p0)
    den = np.cos(_TWO_PI * p)
    num = np.cos(_TWO_PI * (p * p - p - 0.0625))
    out = np.empty_like(p)
    safe = np.abs(den) > 1e-4
    out[safe] = num[safe] / den[safe]
    if not np.all(safe):
        q = p[~safe]
        near_quarter = np.abs(q - 0.25) < np.abs(q - 0.75)
        out[~safe] = np.where(near_quarter, 0.5 - (q - 0.25), 0.5 + (q - 0.75))
    return out


def _z_riemann_siegel(ts: np.ndarray) -> np.ndarray:
    tau = ts / _TWO_PI
    a = np.sqrt(tau)
    cut = a.astype(np.int64)
    p = a - cut
    theta = _theta_asymptotic(ts)
    z = np.zeros_like(ts)
    for n_terms in np.unique(cut):
        m = cut == n_terms
        n = np.arange(1, n_terms + 1, dtype=float)
        phases = theta[m, None] - ts[m, None] * np.log(n)[None, :]
        z[m] = 2.0 * (np.cos(phases) / np.sqrt(n)[None, :]).sum(axis=1)
    sign = np.where(cut % 2 == 1, 1.0, -1.0)
    return z + sign * tau**-0.25 * _rs_psi(p)


_EM_CHUNK_EDGES = np.array(
    [0.0, 50, 100, 150, 200, 300, 400, 500, 600, 700, 800, 900, _Z_SWITCH]
)


def _zeta_half_batch(ts: np.ndarray) -> np.ndarray:
    """zeta(1/2 + i t) for an array of t in [0, _Z_SWITCH], Euler-Maclaurin."""
    out = np.empty(ts.shape, dtype=complex)
    bins = np.digitize(ts, _EM_CHUNK_EDGES[1:-1])
    for b in np.unique(bins):
        sel = bins == b
        t_hi = _EM_CHUNK_EDGES[b + 1]
        n_cut = max(18, int(0.55 * t_hi) + 8)
        s = 0.5 + 1j * ts[sel]
        n = np.arange(1, n_cut, dtype=float)
        vals = np.zeros(s.shape, dtype=complex)
        for lo in range(0, len(n), 4096):  # bound the outer-product memory
            ln = np.log(n[lo : lo + 4096])
            vals += np.exp(-s[:, None] * ln[None, :]).sum(axis=1)
        ncs = np.exp(-s * math.log(n_cut))
        vals += 0.5 * ncs + ncs * n_cut / (s - 1.0)
        term = _BF[0] * s * ncs / n_cut
        total = term.copy()
        inv_n2 = 1.0 / (n_cut * n_cut)
        k = 1
        while np.max(np.abs(term)) > 1e-15:
            if k >= _EM_KMAX:
                raise AccuracyError("batched Euler-Maclaurin did not converge")
            term = term * (_BF_RATIO[k - 1] * inv_n2) * (s + 2 * k - 1) * (s + 2 * k)
            total += term
            k += 1
        out[sel] = vals + total
    return out


def z_values(ts) -> np.ndarray:
    """Vectorized Z(t) over an array of ordinates t >= 0."""
    ts = np.asarray(ts, dtype=float)
    flat = np.atleast_1d(ts).astype(float)
    if np.any(flat < 0.0):
        raise DomainError("z_values needs t >= 0")
    out = np.empty_like(flat)
    low = flat <= _Z_SWITCH
    if np.any(low):
        tl = flat[low]
        out[low] = (np.exp(1j * _theta_values(tl)) * _zeta_half_batch(tl)).real
    if np.any(~low):
        out[~low] = _z_riemann_siegel(flat[~low])
    return out.reshape(ts.shape)


def riemann_siegel_Z(t: float, acc: EvalAccuracy = DEFAULT_ACCURACY) -> float:
    """Z(t) with |Z(t)| = |zeta(1/2 + it)|; sign changes bracket zeros.

    Exact-phase evaluation below t = 1000 (error ~1e-12); Riemann-Siegel main
    sum + first correction term above (absolute error <= ~3e-3, decreasing
    like t^{-3/4}, which keeps every bracketing decision safe at desk scale).
    """
    if t < 0.0:
        raise DomainError("riemann_siegel_Z is defined for t >= 0")
    if t <= _Z_SWITCH:
        phase = cmath.exp(1j * riemann_siegel_theta(t))
        value = phase * zeta(0.5 + 1j * t, acc)
        # the rotated value is real analytically; a large residue flags a bug
        if abs(value.imag) > 1e-6 * (1.0 + abs(value)):
            raise AccuracyError("phase-rotated zeta not real", achieved=abs(value.imag))
        return value.real
    return float(_z_riemann_siegel(np.array([t]))[0])
