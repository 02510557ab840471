"""Matrix constructions whose spectra are prescribed lists.

Each construction here turns a list (or a polynomial) into an explicit
square matrix with known spectrum.  Entrywise sign structure is what
makes them useful: a nonnegative matrix with spectrum equal to the
critical points of a list certifies that those critical points are
realizable.
"""

from __future__ import annotations

import math
from enum import Enum

import numpy as np

from .polynomial import MonicPolynomial, roots
from .spectra import SpectrumLike, SpectrumList, as_spectrum

__all__ = [
    "MatrixSignClass",
    "companion",
    "d_companion",
    "real_d_companion",
    "dft_matrix",
    "hadamard_similarity",
    "circulant",
    "principal_submatrix",
    "charpoly",
    "spectrum",
    "matrix_sign_class",
]

CHARPOLY_MAX_ORDER = 32


class MatrixSignClass(Enum):
    NONNEGATIVE = "nonnegative"
    METZLER = "metzler"
    NEITHER = "neither"


def companion(p: MonicPolynomial) -> np.ndarray:
    """Companion matrix of p: subdiagonal ones, last column -a_k."""
    n = p.degree
    a = np.array(p.coeffs, dtype=complex)
    real = bool(np.all(a.imag == 0))
    C = np.eye(n, k=-1, dtype=float if real else complex)
    C[:, -1] = -(a.real if real else a)
    return C


def d_companion(lam: SpectrumLike, pivot: int | None = None) -> np.ndarray:
    """The (n-1) x (n-1) matrix whose spectrum is the critical points of lam.

    With the pivot entry called l1 and the rest r_1..r_{n-1} in canonical
    order, the matrix is

        A[i][j] = (l1 - r_i) / n          for j != i,
        A[i][i] = ((n-1) r_i + l1) / n.

    ``pivot`` is a 1-based index into the canonical order; by default the
    entry with the largest real part (then largest modulus) is used.
    """
    spec = as_spectrum(lam)
    n = len(spec)
    if n < 2:
        raise ValueError("the construction needs a list of at least two entries")
    entries = list(spec)
    if pivot is None:
        idx = max(range(n), key=lambda i: (entries[i].real, abs(entries[i]), -i))
    else:
        if not 1 <= pivot <= n:
            raise ValueError(f"pivot must be in 1..{n}, got {pivot}")
        idx = pivot - 1
    lam1 = entries[idx]
    rest = np.array(entries[:idx] + entries[idx + 1 :], dtype=complex)
    A = np.full((n - 1, n - 1), lam1 / n, dtype=complex)
    A -= rest[:, None] / n
    A += np.diag(rest)
    if np.all(A.imag == 0):
        return A.real.copy()
    return A


def _split_conjugate(spec: SpectrumList, tol_abs: float):
    """Split a self-conjugate list into real entries and upper-half pairs."""
    reals = []
    ups = []
    downs = []
    for z in spec:
        if abs(z.imag) <= tol_abs:
            reals.append(z.real)
        elif z.imag > 0:
            ups.append(z)
        else:
            downs.append(z)
    if len(ups) != len(downs):
        raise ValueError("list is not self-conjugate: unpaired complex entries")
    used = [False] * len(downs)
    for u in ups:
        best, best_d = -1, math.inf
        for j, d in enumerate(downs):
            if not used[j] and abs(u.conjugate() - d) < best_d:
                best, best_d = j, abs(u.conjugate() - d)
        if best < 0 or best_d > 2.0 * tol_abs:
            raise ValueError(
                f"list is not self-conjugate: no partner for {u} within tolerance"
            )
        used[best] = True
    reals.sort(reverse=True)
    ups.sort(key=lambda z: (-z.imag, -z.real))
    return reals, ups


def real_d_companion(lam: SpectrumLike, tol: float = 1e-9) -> np.ndarray:
    """All-real analogue of d_companion for self-conjugate lists.

    Conjugate pairs enter through 2 x 2 rotation blocks

        [[Re u, Im u], [-Im u, Re u]],

    real entries through a diagonal block, and the coupling pattern K
    carries weights 1 (real-real), sqrt(2) (real-pair) and 2 (pair-pair)
    so that the construction is unitarily similar to the complex one.
    The pivot is the largest real entry; there must be one.
    """
    spec = as_spectrum(lam)
    n = len(spec)
    if n < 2:
        raise ValueError("the construction needs a list of at least two entries")
    tol_abs = tol * (1.0 + spec.spectral_radius)
    reals, pairs = _split_conjugate(spec, tol_abs)
    if not reals:
        raise ValueError("the pivot must be real: the list has no real entry")
    lam1 = reals[0]
    rest = reals[1:]
    m = len(reals)
    npairs = len(pairs)
    size = n - 1
    B = np.zeros((size, size))
    for i, r in enumerate(rest):
        B[i, i] = r
    for t, mu in enumerate(pairs):
        r0 = (m - 1) + 2 * t
        B[r0, r0] = B[r0 + 1, r0 + 1] = mu.real
        B[r0, r0 + 1] = mu.imag
        B[r0 + 1, r0] = -mu.imag
    K = np.zeros((size, size))
    K[: m - 1, : m - 1] = 1.0
    if m - 1 > 0 and npairs > 0:
        G = np.kron(np.ones((m - 1, npairs)), [[math.sqrt(2.0), 0.0]])
        K[: m - 1, m - 1 :] = G
        K[m - 1 :, : m - 1] = G.T
    if npairs > 0:
        K[m - 1 :, m - 1 :] = np.kron(np.ones((npairs, npairs)), [[2.0, 0.0], [0.0, 0.0]])
    return B @ (np.eye(size) - K / n) + (lam1 / n) * K


def dft_matrix(n: int) -> np.ndarray:
    """The n x n discrete Fourier matrix with (j,k) entry exp(-2*pi*i*jk/n)."""
    if n < 1:
        raise ValueError("order must be at least 1")
    j = np.arange(n)
    powers = np.outer(j, j) % n
    return np.exp(-2j * np.pi * powers / n)


def hadamard_similarity(lam: SpectrumLike, H: np.ndarray) -> np.ndarray:
    """(1/n) H diag(lam) H* for a complex Hadamard matrix H.

    H must be square of the same order as the list, with unimodular
    entries and H H* = n I.  The result is similar to diag(lam) via the
    unitary H/sqrt(n).
    """
    spec = as_spectrum(lam)
    n = len(spec)
    H = np.asarray(H, dtype=complex)
    if H.shape != (n, n):
        raise ValueError(f"matrix order {H.shape} does not match list size {n}")
    off = float(np.max(np.abs(np.abs(H) - 1.0)))
    if off > 1e-9:
        raise ValueError(f"entries are not unimodular: worst deviation {off:.3e}")
    gram = H @ H.conj().T - n * np.eye(n)
    if float(np.linalg.norm(gram)) > 1e-8 * n:
        raise ValueError("rows are not orthogonal: H H* differs from n I")
    U = H / math.sqrt(n)
    return U @ np.diag(spec.as_array()) @ U.conj().T


def circulant(first_row: np.ndarray) -> np.ndarray:
    """Circulant matrix with the given first row; row i is the row shifted i right."""
    c = np.asarray(first_row)
    if c.ndim != 1 or c.size < 1:
        raise ValueError("first row must be a nonempty vector")
    n = c.size
    idx = (np.arange(n)[None, :] - np.arange(n)[:, None]) % n
    return c[idx]


def principal_submatrix(M: np.ndarray, i: int) -> np.ndarray:
    """Delete row and column i (1-based) from a square matrix."""
    M = np.asarray(M)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError("a square matrix is required")
    n = M.shape[0]
    if n < 2:
        raise ValueError("the matrix must have order at least 2")
    if not 1 <= i <= n:
        raise ValueError(f"index must be in 1..{n}, got {i}")
    return np.delete(np.delete(M, i - 1, axis=0), i - 1, axis=1)


def charpoly(M: np.ndarray) -> MonicPolynomial:
    """Characteristic polynomial via the Faddeev-LeVerrier recursion.

    Exact up to rounding in O(n**4) arithmetic; orders above
    CHARPOLY_MAX_ORDER are rejected because the recursion's conditioning
    degrades with order.
    """
    M = np.asarray(M, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError("a square matrix is required")
    n = M.shape[0]
    if n < 1:
        raise ValueError("the matrix must have order at least 1")
    if n > CHARPOLY_MAX_ORDER:
        raise ValueError(
            f"order {n} exceeds the supported maximum {CHARPOLY_MAX_ORDER}"
        )
    eye = np.eye(n, dtype=complex)
    work = M.copy()
    desc = [1.0 + 0.0j]
    c = -np.trace(work)
    desc.append(c)
    for k in range(2, n + 1):
        work = M @ (work + c * eye)
        c = -np.trace(work) / k
        desc.append(c)
    asc = desc[1:][::-1]
    return MonicPolynomial(tuple(asc))


def spectrum(M: np.ndarray, tol: float = 1e-10) -> SpectrumList:
    """Eigenvalues of M as roots of its characteristic polynomial."""
    return roots(charpoly(M), tol=tol)


def matrix_sign_class(M: np.ndarray, tol: float = 1e-9) -> MatrixSignClass:
    """Entrywise sign classification at a scaled tolerance.

    A complex-typed matrix is accepted only when its imaginary part is
    rounding dust; genuinely complex matrices have no sign class.
    """
    M = np.asarray(M)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError("a square matrix is required")
    scale = 1.0 + float(np.max(np.abs(M))) if M.size else 1.0
    if np.iscomplexobj(M):
        if float(np.max(np.abs(M.imag))) > tol * scale:
            raise ValueError("matrix has non-real entries beyond tolerance")
        R = M.real
    else:
        R = M
    thresh = -tol * scale
    if np.all(R >= thresh):
        return MatrixSignClass.NONNEGATIVE
    off = R[~np.eye(R.shape[0], dtype=bool)]
    if np.all(off >= thresh):
        return MatrixSignClass.METZLER
    return MatrixSignClass.NEITHER
