"""Laplacian spectra via a self-contained cyclic Jacobi eigensolver.

The solver sweeps the upper triangle in row-major order and stops once the
off-diagonal Frobenius norm drops below the tolerance, so repeated runs on
the same matrix give bit-identical results on one platform. No LAPACK-style
backend is used anywhere in this module.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

import numpy as np

from .graph import SimpleGraph, is_connected

DEFAULT_EIGEN_TOL = 1e-12
DEFAULT_MULT_TOL = 1e-8
MAX_SWEEPS = 100


class ConvergenceError(RuntimeError):
    """Raised when Jacobi sweeps fail to reach the requested tolerance."""


def laplacian(g: SimpleGraph) -> np.ndarray:
    """Combinatorial Laplacian: degrees on the diagonal, -1 per edge."""
    n = g.n
    lap = np.zeros((n, n))
    for i in range(n):
        row = g.adj[i]
        lap[i, i] = row.bit_count()
        while row:
            j = (row & -row).bit_length() - 1
            row &= row - 1
            lap[i, j] = -1.0
    return lap


def _off_norm(a: np.ndarray) -> float:
    # Summing only off-diagonal squares; subtracting the diagonal from the
    # total would cancel catastrophically once the matrix is near-diagonal.
    off = a.copy()
    np.fill_diagonal(off, 0.0)
    return float(np.sqrt(np.sum(off * off)))


def _cyclic_sweep(a, vec, n):  # pragma: no cover - exercised via symmetric_eigen
    """One full row-major sweep of Jacobi rotations, in place."""
    for p in range(n - 1):
        for q in range(p + 1, n):
            apq = a[p, q]
            if apq == 0.0:
                continue
            theta = (a[q, q] - a[p, p]) / (2.0 * apq)
            if theta >= 0.0:
                t = 1.0 / (theta + math.sqrt(theta * theta + 1.0))
            else:
                t = -1.0 / (-theta + math.sqrt(theta * theta + 1.0))
            c = 1.0 / math.sqrt(t * t + 1.0)
            s = t * c
            for k in range(n):
                akp = a[p, k]
                akq = a[q, k]
                a[p, k] = c * akp - s * akq
                a[q, k] = s * akp + c * akq
            for k in range(n):
                akp = a[k, p]
                akq = a[k, q]
                a[k, p] = c * akp - s * akq
                a[k, q] = s * akp + c * akq
            a[p, q] = 0.0
            a[q, p] = 0.0
            for k in range(n):
                vkp = vec[k, p]
                vkq = vec[k, q]
                vec[k, p] = c * vkp - s * vkq
                vec[k, q] = s * vkp + c * vkq


try:  # the sweep is pure scalar loops; JIT it when numba is around
    from numba import njit

    _cyclic_sweep = njit(cache=True)(_cyclic_sweep)
except ImportError:  # pragma: no cover
    pass


def symmetric_eigen(
    matrix: np.ndarray, tol: float = DEFAULT_EIGEN_TOL
) -> tuple[np.ndarray, np.ndarray]:
    """Full eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.

    Returns eigenvalues in ascending order and the matching orthonormal
    eigenvectors as columns. Raises ``ValueError`` for non-symmetric input
    and :class:`ConvergenceError` after ``MAX_SWEEPS`` sweeps.
    """
    a = np.asarray(matrix, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    n = a.shape[0]
    if n > 64:
        raise ValueError(f"matrix order {n} exceeds the supported 64")
    if n and float(np.max(np.abs(a - a.T))) > 1e-12:
        raise ValueError("matrix is not symmetric within 1e-12")

    a = a.copy()
    vec = np.eye(n)
    converged = False
    for _ in range(MAX_SWEEPS):
        if _off_norm(a) <= tol:
            converged = True
            break
        _cyclic_sweep(a, vec, n)
    else:
        converged = _off_norm(a) <= tol
    if not converged:
        raise ConvergenceError(
            f"off-diagonal norm {_off_norm(a):.3e} above {tol:.3e} after {MAX_SWEEPS} sweeps"
        )
    values = np.diag(a).copy()
    order = np.argsort(values, kind="stable")
    return values[order], vec[:, order]


@dataclass(frozen=True)
class SpectralData:
    """Laplacian eigensystem of one graph plus its second-eigenvalue eigenspace."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray  # column k pairs with eigenvalues[k]
    alpha: float
    fiedler_basis: np.ndarray  # (n, multiplicity), orthonormal columns

    def fiedler_distance(self, i: int, j: int) -> float:
        """Absolute coordinate gap between i and j across the second eigenspace.

        With a one-dimensional eigenspace this is ``|v_i - v_j|`` for the
        unit eigenvector. Under degeneracy it is the Euclidean norm of the
        per-basis-vector gaps, i.e. the norm of the eigenspace projection
        of ``e_i - e_j``; unlike a max over basis vectors this does not
        depend on which orthonormal basis the solver happened to return,
        so symmetric graphs keep their symmetric ties.
        """
        if i == j:
            return 0.0
        gaps = self.fiedler_basis[i, :] - self.fiedler_basis[j, :]
        return float(np.sqrt(np.sum(gaps * gaps)))


def spectral_data(
    g: SimpleGraph,
    tol: float = DEFAULT_EIGEN_TOL,
    mult_tol: float = DEFAULT_MULT_TOL,
) -> SpectralData:
    if g.n < 2:
        raise ValueError("spectral quantities need at least 2 vertices")
    values, vectors = symmetric_eigen(laplacian(g), tol=tol)
    alpha = float(values[1])
    keep = np.abs(values - alpha) <= mult_tol
    keep[0] = keep[0] and alpha <= mult_tol  # never absorb the 0-eigenvector of a connected graph
    basis = vectors[:, keep]
    return SpectralData(values, vectors, alpha, basis)


def algebraic_connectivity(g: SimpleGraph, tol: float = DEFAULT_EIGEN_TOL) -> float:
    """Second-smallest Laplacian eigenvalue; positive iff the graph is connected."""
    if g.n < 2:
        raise ValueError("algebraic connectivity needs at least 2 vertices")
    values, _ = symmetric_eigen(laplacian(g), tol=tol)
    return float(values[1])


def fiedler_basis(g: SimpleGraph, mult_tol: float = DEFAULT_MULT_TOL) -> np.ndarray:
    """Orthonormal basis (columns) of the second-eigenvalue eigenspace."""
    if not is_connected(g):
        raise ValueError("Fiedler basis requires a connected graph")
    return spectral_data(g, mult_tol=mult_tol).fiedler_basis


def fiedler_distance(
    g: SimpleGraph, i: int, j: int, mult_tol: float = DEFAULT_MULT_TOL
) -> float:
    if not (0 <= i < g.n and 0 <= j < g.n):
        raise ValueError(f"vertex index out of range: ({i}, {j}) with n={g.n}")
    if not is_connected(g):
        raise ValueError("Fiedler distance requires a connected graph")
    return spectral_data(g, mult_tol=mult_tol).fiedler_distance(i, j)


def dump_spectrum(eigenvalues: np.ndarray, path: str | os.PathLike) -> None:
    """Debug helper: one eigenvalue per line, ascending."""
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        for value in eigenvalues:
            fh.write(f"{float(value):.17g}\n")
