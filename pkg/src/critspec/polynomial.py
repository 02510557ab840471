"""Monic polynomial arithmetic and a simultaneous-iteration root finder.

Coefficients are stored ascending, ``(a0, ..., a_{n-1})``, with the
leading 1 implicit, so a ``MonicPolynomial`` of degree n represents

    t**n + a_{n-1} t**(n-1) + ... + a_1 t + a_0.

The root finder runs Ehrlich-Aberth sweeps on all roots at once,
polishes with Newton steps, and then collapses clusters that are
certified to be a single multiple root.  The collapse step is what
keeps multiple roots accurate: an m-fold root perturbs by eps**(1/m)
under coefficient noise, but its cluster centroid, refined through the
(m-1)-st derivative where the root is simple, is good to machine
precision.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NonConvergenceError
from .spectra import SpectrumLike, SpectrumList, as_spectrum, multiset_equal

__all__ = [
    "MonicPolynomial",
    "from_roots",
    "evaluate",
    "derivative_monic",
    "antiderivative_monic",
    "roots",
    "critical_points",
]

_EPS = float(np.finfo(float).eps)


@dataclass(frozen=True)
class MonicPolynomial:
    """Monic polynomial of degree >= 1 with ascending stored coefficients."""

    coeffs: tuple[complex, ...]

    def __post_init__(self) -> None:
        if len(self.coeffs) < 1:
            raise ValueError("a monic polynomial needs degree at least 1")
        object.__setattr__(self, "coeffs", tuple(complex(c) for c in self.coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs)

    def descending(self) -> np.ndarray:
        """Coefficient vector [1, a_{n-1}, ..., a_0] for np.polyval."""
        return np.concatenate(
            ([1.0 + 0.0j], np.array(self.coeffs[::-1], dtype=complex))
        )


def from_roots(root_list: SpectrumLike) -> MonicPolynomial:
    """Expand prod (t - r) over the given roots."""
    spec = as_spectrum(root_list)
    if len(spec) == 0:
        raise ValueError("cannot build a polynomial from an empty root list")
    c = np.ones(1, dtype=complex)
    for r in spec:
        c = np.convolve(c, np.array([1.0, -r], dtype=complex))
    asc = c[1:][::-1].copy()
    # Self-conjugate roots give real coefficients in exact arithmetic;
    # scrub the rounding-level imaginary dust so downstream sign tests
    # see genuinely real data.
    if multiset_equal(spec, spec.conjugate(), 1e-12 * (1.0 + spec.spectral_radius)):
        dust = np.abs(asc.imag) <= 1e-12 * (1.0 + np.abs(asc))
        asc[dust] = asc[dust].real
    return MonicPolynomial(tuple(asc))


def evaluate(p: MonicPolynomial, z: complex) -> complex:
    return complex(np.polyval(p.descending(), complex(z)))


def derivative_monic(p: MonicPolynomial) -> MonicPolynomial:
    """p'/n, the monic normalization of the derivative."""
    n = p.degree
    if n < 2:
        raise ValueError("a linear polynomial has no critical points")
    a = np.array(p.coeffs, dtype=complex)
    k = np.arange(1, n)
    return MonicPolynomial(tuple(a[1:] * k / n))


def antiderivative_monic(p: MonicPolynomial, c: complex = 0.0) -> MonicPolynomial:
    """The monic antiderivative (n+1) * integral of p, with P(0) = (n+1)*c."""
    n = p.degree
    a = np.array(p.coeffs, dtype=complex)
    b = np.empty(n + 1, dtype=complex)
    b[0] = (n + 1) * complex(c)
    b[1:] = (n + 1) * a / np.arange(1, n + 1)
    return MonicPolynomial(tuple(b))


def _deriv_desc(cdesc: np.ndarray) -> np.ndarray:
    deg = len(cdesc) - 1
    return cdesc[:-1] * np.arange(deg, 0, -1)


def _aberth_sweeps(cdesc: np.ndarray, max_sweeps: int) -> np.ndarray:
    deg = len(cdesc) - 1
    radius = 1.0 + float(np.max(np.abs(cdesc[1:])))  # Cauchy root bound
    j = np.arange(deg)
    x = radius * np.exp(1j * (2.0 * np.pi * j / deg + np.pi / (2.0 * deg)))
    dc = _deriv_desc(cdesc)
    absc = np.abs(cdesc)
    for _ in range(max_sweeps):
        pv = np.polyval(cdesc, x)
        # Stop a root once |p(x)| is below the evaluation noise floor.
        noise = 4.0 * _EPS * np.polyval(absc, np.abs(x))
        done = np.abs(pv) <= noise
        if done.all():
            break
        dpv = np.polyval(dc, x)
        dpv = np.where(dpv == 0, _EPS, dpv)
        w = pv / dpv
        diff = x[:, None] - x[None, :]
        np.fill_diagonal(diff, np.inf)
        repulsion = (1.0 / diff).sum(axis=1)
        denom = 1.0 - w * repulsion
        denom = np.where(np.abs(denom) < 1e-12, 1.0, denom)
        delta = np.where(done, 0.0, w / denom)
        # Clamp runaway corrections from near-singular denominators.
        cap = 0.5 * (1.0 + np.abs(x))
        mag = np.abs(delta)
        delta = np.where(mag > cap, delta * (cap / np.where(mag == 0, 1.0, mag)), delta)
        x = x - delta
        if np.max(np.abs(delta) / (1.0 + np.abs(x))) <= 4.0 * _EPS:
            break
    return x


def _newton_polish(cdesc: np.ndarray, x: np.ndarray, iters: int = 24) -> np.ndarray:
    dc = _deriv_desc(cdesc)
    best = x.copy()
    best_res = np.abs(np.polyval(cdesc, best))
    cur = x.copy()
    for _ in range(iters):
        fv = np.polyval(cdesc, cur)
        dfv = np.polyval(dc, cur)
        safe = np.where(dfv == 0, 1.0, dfv)
        cur = cur - np.where(dfv == 0, 0.0, fv / safe)
        res = np.abs(np.polyval(cdesc, cur))
        better = res < best_res
        best[better] = cur[better]
        best_res[better] = res[better]
    return best


def _newton_simple(q: np.ndarray, z0: complex, iters: int = 60) -> complex:
    """Newton iteration on q from z0; q is expected to have a simple root nearby."""
    if len(q) == 2:
        return complex(-q[1] / q[0])
    dq = _deriv_desc(q)
    z = complex(z0)
    for _ in range(iters):
        f = complex(np.polyval(q, z))
        df = complex(np.polyval(dq, z))
        if df == 0:
            break
        step = f / df
        z = z - step
        if abs(step) <= _EPS * (1.0 + abs(z)):
            break
    return z


def _collapse_root_clusters(cdesc: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Replace certified multiple-root clusters by copies of the exact root.

    A cluster of m approximants is collapsed only when Newton refinement
    through p^(m-1) lands inside the cluster and every lower derivative
    vanishes there to within its own evaluation noise.  Clusters of
    genuinely distinct roots fail the derivative test and are kept.
    """
    deg = len(x)
    if deg < 2:
        return x
    x = x.copy()
    scale = 1.0 + float(np.max(np.abs(x)))
    radius = 1e-3 * scale
    dist = np.abs(x[:, None] - x[None, :])
    seen = np.zeros(deg, dtype=bool)
    for start in range(deg):
        if seen[start]:
            continue
        # Grow the connected component under the cluster radius.
        members = [start]
        seen[start] = True
        frontier = [start]
        while frontier:
            i = frontier.pop()
            close = np.where((dist[i] <= radius) & ~seen)[0]
            for j in close:
                seen[j] = True
                members.append(int(j))
                frontier.append(int(j))
        m = len(members)
        if m < 2:
            continue
        vals = x[members]
        centre = complex(vals.mean())
        diam = float(np.abs(vals[:, None] - vals[None, :]).max())
        q = cdesc
        for _ in range(m - 1):
            q = _deriv_desc(q)
        z = _newton_simple(q, centre)
        if not np.isfinite(z) or abs(z - centre) > 2.0 * diam + 1e-9 * scale:
            continue
        deriv = cdesc
        certified = True
        for _ in range(m):
            bound = float(np.polyval(np.abs(deriv), abs(z)))
            if abs(complex(np.polyval(deriv, z))) > 256.0 * _EPS * bound + 1e-300:
                certified = False
                break
            deriv = _deriv_desc(deriv)
        if certified:
            x[members] = z
    return x


def _realify_near_real(cdesc: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Drop machine-level imaginary dust from roots of a real polynomial.

    Only applies when every coefficient is exactly real, only to roots
    within a few ulps of the axis, and only when projecting onto the
    axis does not worsen the residual, so genuinely complex roots and
    near-real conjugate pairs are left alone.
    """
    if np.any(cdesc.imag != 0.0):
        return x
    for i, z in enumerate(x):
        if z.imag == 0.0 or abs(z.imag) > 16.0 * _EPS * (1.0 + abs(z.real)):
            continue
        if abs(np.polyval(cdesc, z.real)) <= abs(np.polyval(cdesc, z)):
            x[i] = z.real
    return x


def roots(p: MonicPolynomial, tol: float = 1e-10, max_sweeps: int = 500) -> SpectrumList:
    """All roots of p with multiplicity, as a canonical SpectrumList.

    Raises NonConvergenceError when the final residual check
    |p(x)| <= tol * (1 + max|a_k|) fails for some root.
    """
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    n = p.degree
    if n == 1:
        return SpectrumList((-p.coeffs[0],))
    cdesc = p.descending()
    x = _aberth_sweeps(cdesc, max_sweeps)
    x = _newton_polish(cdesc, x)
    x = _collapse_root_clusters(cdesc, x)
    x = _realify_near_real(cdesc, x)
    scale = 1.0 + max(abs(c) for c in p.coeffs)
    worst = float(np.max(np.abs(np.polyval(cdesc, x))))
    if worst > tol * scale:
        raise NonConvergenceError(
            f"root refinement stalled: residual {worst:.3e} exceeds "
            f"{tol * scale:.3e}",
            best_residual=worst,
        )
    return SpectrumList(tuple(x))


def critical_points(lam: SpectrumLike, tol: float = 1e-10) -> SpectrumList:
    """Roots of p'/n for p with root list lam; needs at least two entries."""
    spec = as_spectrum(lam)
    if len(spec) < 2:
        raise ValueError("critical points need a list of at least two entries")
    return roots(derivative_monic(from_roots(spec)), tol=tol)
