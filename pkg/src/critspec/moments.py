"""Power sums, the moment-correction determinant, and necessary conditions.

The k-th moment of the critical points of a list can be produced two
ways: directly from computed critical points, or through Monov's
determinant formula

    s_k(crit) = s_k(lam) + (-1/n)**k * d_k(lam),

where d_k is a k x k determinant built from the moments of lam.  Having
both routes is the point: they are independent, so their agreement
cross-checks the root finder and the moment algebra against each other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .spectra import SpectrumLike, as_spectrum, pairing_residual

__all__ = [
    "MomentCheck",
    "JllCheck",
    "ConditionReport",
    "power_sums",
    "monov_det",
    "critical_moment",
    "check_necessary_conditions",
    "jll_pair_equivalence",
]


def power_sums(lam: SpectrumLike, kmax: int) -> np.ndarray:
    """s_1 .. s_kmax as a complex array; s_k = sum of k-th powers."""
    if kmax < 1:
        raise ValueError("kmax must be at least 1")
    arr = as_spectrum(lam).as_array()
    if arr.size == 0:
        raise ValueError("power sums of an empty list are undefined")
    out = np.empty(kmax, dtype=complex)
    running = np.ones_like(arr)
    # Overflow to inf/nan is tolerated; condition checks compare such
    # moments in log-magnitude space instead of crashing.
    with np.errstate(over="ignore", invalid="ignore"):
        for k in range(kmax):
            running = running * arr
            out[k] = running.sum()
    return out


def _monov_matrix(s: np.ndarray, n: int, k: int) -> np.ndarray:
    # Row i: first column (i+1)*s_{i+1}, superdiagonal n, then the
    # Toeplitz tail s_{i+1-j} in columns 1..i.
    M = np.zeros((k, k), dtype=complex)
    for i in range(k):
        M[i, 0] = (i + 1) * s[i]
        if i + 1 < k:
            M[i, i + 1] = n
        for j in range(1, i + 1):
            M[i, j] = s[i - j]
    return M


def monov_det(lam: SpectrumLike, k: int) -> complex:
    """The k x k moment-correction determinant d_k of the list."""
    if k < 1:
        raise ValueError("determinant order must be at least 1")
    spec = as_spectrum(lam)
    if len(spec) == 0:
        raise ValueError("the determinant needs a nonempty list")
    s = power_sums(spec, k)
    return complex(np.linalg.det(_monov_matrix(s, len(spec), k)))


def critical_moment(lam: SpectrumLike, k: int) -> complex:
    """s_k of the critical points of lam, via the determinant formula."""
    spec = as_spectrum(lam)
    n = len(spec)
    if n < 2:
        raise ValueError("critical moments need a list of at least two entries")
    if k < 1:
        raise ValueError("moment index must be at least 1")
    s = power_sums(spec, k)
    dk = np.linalg.det(_monov_matrix(s, n, k))
    return complex(s[k - 1] + (-1.0 / n) ** k * dk)


@dataclass(frozen=True)
class MomentCheck:
    k: int
    value: complex
    passed: bool


@dataclass(frozen=True)
class JllCheck:
    k: int
    m: int
    lhs: float
    rhs: float
    passed: bool


@dataclass(frozen=True)
class ConditionReport:
    """Outcome of the four standard necessary conditions for realizability.

    self_conjugate           the list equals its conjugate as a multiset
    spectral_radius_in_list  some entry attains the spectral radius
    moment_checks            s_k >= 0 for k = 1..moment_depth
    jll_checks               s_k**m <= n**(m-1) * s_{km} over the depth grid
    """

    self_conjugate: bool
    pairing_residual: float
    spectral_radius_in_list: bool
    spectral_radius_margin: float
    moment_checks: tuple[MomentCheck, ...]
    jll_checks: tuple[JllCheck, ...]
    moment_depth: int
    jll_depth: int
    overall: bool


def _jll_compare(
    a: float, b: float, n: int, m: int, slack: float
) -> tuple[float, float, bool]:
    """Decide a**m <= n**(m-1)*b + slack without overflowing.

    Returns the two sides as floats (inf when unrepresentable) together
    with the verdict.  Once either side leaves double range the slack is
    negligible relative to the values, so the verdict falls back to a
    signed comparison of log-magnitudes.
    """
    log_a = m * math.log10(abs(a)) if a != 0 else -math.inf
    log_b = (m - 1) * math.log10(n) + (math.log10(abs(b)) if b != 0 else -math.inf)
    if log_a < 150.0 and log_b < 150.0:
        lhs = a**m
        rhs = float(n) ** (m - 1) * b
        return lhs, rhs, bool(lhs <= rhs + slack)
    with np.errstate(over="ignore"):
        lhs = float(np.power(np.float64(a), m))
        rhs = float(np.float64(n) ** (m - 1) * np.float64(b))
    sign_l = -1 if (a < 0 and m % 2 == 1) else (0 if a == 0 else 1)
    sign_r = -1 if b < 0 else (0 if b == 0 else 1)
    if sign_l != sign_r:
        holds = sign_l < sign_r
    elif sign_l >= 0:
        holds = log_a <= log_b + 1e-12
    else:
        holds = log_a >= log_b - 1e-12
    return lhs, rhs, bool(holds)


def check_necessary_conditions(
    lam: SpectrumLike,
    kmax: int | None = None,
    jll_depth: int = 8,
    tol: float = 1e-9,
) -> ConditionReport:
    """Run the four necessary conditions on a list at the given depths.

    Moment checks run for k = 1..kmax (default 4n); the power-sum
    inequality runs over the full (k, m) grid up to jll_depth.  All
    tolerances scale with (1 + spectral radius)**k to track how fast
    the moments themselves grow.
    """
    spec = as_spectrum(lam)
    if len(spec) == 0:
        raise ValueError("conditions need a nonempty list")
    n = len(spec)
    depth = 4 * n if kmax is None else kmax
    if depth < 1 or jll_depth < 1:
        raise ValueError("depths must be at least 1")
    arr = spec.as_array()
    rho = spec.spectral_radius
    base = tol * (1.0 + rho)

    residual = pairing_residual(spec, spec.conjugate(), base)
    self_conjugate = residual <= base

    margin = float(np.min(np.abs(arr - rho)))
    radius_in_list = margin <= base

    s = power_sums(spec, max(depth, jll_depth * jll_depth))
    moment_checks = []
    for k in range(1, depth + 1):
        try:
            tk = tol * (1.0 + rho) ** k
        except OverflowError:
            tk = math.inf
        v = complex(s[k - 1])
        ok = v.real >= -tk and abs(v.imag) <= tk
        moment_checks.append(MomentCheck(k=k, value=v, passed=bool(ok)))

    jll_checks = []
    for k in range(1, jll_depth + 1):
        for m in range(1, jll_depth + 1):
            a = float(s[k - 1].real)
            b = float(s[k * m - 1].real)
            try:
                slack = tol * float(n) ** (m - 1) * (1.0 + rho) ** (k * m)
            except OverflowError:
                slack = math.inf
            lhs, rhs, ok = _jll_compare(a, b, n, m, slack)
            jll_checks.append(JllCheck(k=k, m=m, lhs=lhs, rhs=rhs, passed=ok))

    overall = (
        self_conjugate
        and radius_in_list
        and all(c.passed for c in moment_checks)
        and all(c.passed for c in jll_checks)
    )
    return ConditionReport(
        self_conjugate=bool(self_conjugate),
        pairing_residual=float(residual),
        spectral_radius_in_list=bool(radius_in_list),
        spectral_radius_margin=margin,
        moment_checks=tuple(moment_checks),
        jll_checks=tuple(jll_checks),
        moment_depth=depth,
        jll_depth=jll_depth,
        overall=bool(overall),
    )


def jll_pair_equivalence(lam: SpectrumLike) -> tuple[bool, bool]:
    """The k=1, m=2 power-sum inequality for a list and for its critical points.

    The second verdict is computed from the closed-form critical moments
    s_1' = (n-1)/n * s_1 and s_2' = (n-2)/n * s_2 + s_1**2 / n**2, not by
    root finding.  The two margins are proportional with the factor
    (n-1)(n-2)/n**2, so the thresholds are scaled the same way and the
    verdicts agree whenever n >= 3.  At n = 2 the critical-side margin
    degenerates to exactly zero, so that verdict is vacuously true.
    """
    spec = as_spectrum(lam)
    n = len(spec)
    if n < 2:
        raise ValueError("the pairing needs a list of at least two entries")
    s = power_sums(spec, 2)
    s1, s2 = complex(s[0]), complex(s[1])
    lhs_margin = (n * s2 - s1 * s1).real
    s1c = (n - 1) / n * s1
    s2c = (n - 2) / n * s2 + (s1 * s1) / (n * n)
    rhs_margin = ((n - 1) * s2c - s1c * s1c).real
    factor = (n - 1) * (n - 2) / (n * n)
    thresh = 1e-12 * n * (1.0 + spec.spectral_radius) ** 2
    original = lhs_margin >= -thresh
    critical = rhs_margin >= -thresh * factor if factor > 0 else rhs_margin >= 0.0
    return bool(original), bool(critical)
