"""Dense linear-algebra kernels shared by the rest of the package.

All routines work on plain numpy arrays (float64).  They target the small
dense systems that appear downstream: snapshot correlation matrices of a
few hundred rows, reduced Newton systems of a few dozen unknowns, and
regression design matrices with a few hundred rows.  Sparse or iterative
machinery is deliberately out of scope here.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "LinAlgError",
    "SingularMatrixError",
    "RankDeficiencyError",
    "sym_eig",
    "lu_solve",
    "lstsq",
]


class LinAlgError(Exception):
    """Numerical failure in a dense kernel."""


class SingularMatrixError(LinAlgError):
    """Square system singular to working precision."""


class RankDeficiencyError(LinAlgError):
    """Least-squares matrix is numerically rank deficient."""

    def __init__(self, n_deficient: int, message: str):
        super().__init__(message)
        self.n_deficient = n_deficient


def _as_matrix(a) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] < 1 or a.shape[1] < 1:
        raise ValueError(f"expected a 2-D matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix entries must be finite")
    return a


def _as_vector(b) -> np.ndarray:
    b = np.asarray(b, dtype=float)
    if b.ndim != 1 or b.shape[0] < 1:
        raise ValueError(f"expected a 1-D vector, got shape {b.shape}")
    if not np.all(np.isfinite(b)):
        raise ValueError("vector entries must be finite")
    return b


def sym_eig(a) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.

    Returns ``(w, v)`` with eigenvalues ``w`` sorted descending and the
    corresponding orthonormal eigenvectors in the columns of ``v``.
    Jacobi is slower than tridiagonalization but is very accurate for the
    clustered, nearly rank-deficient spectra of snapshot correlation
    matrices, which is the main workload here.
    """
    a = _as_matrix(a)
    n, m = a.shape
    if n != m:
        raise ValueError(f"matrix must be square, got {n}x{m}")
    norm = np.linalg.norm(a)
    if norm > 0.0:
        asym = np.linalg.norm(a - a.T) / norm
        if asym > 1e-12:
            raise ValueError(f"matrix is not symmetric (relative asymmetry {asym:.2e})")

    w = 0.5 * (a + a.T)  # exact symmetrization; work in place below
    v = np.eye(n)
    if n == 1:
        return w[0, :].copy(), v

    tol = 1e-12 * max(norm, np.finfo(float).tiny)
    off_mask = ~np.eye(n, dtype=bool)
    for _ in range(60):
        off = np.linalg.norm(w[off_mask])
        if off <= tol:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = w[p, q]
                if abs(apq) <= 0.1 * tol / n:
                    continue
                # classic 2x2 rotation that annihilates w[p, q]
                theta = 0.5 * (w[q, q] - w[p, p]) / apq
                t = np.sign(theta) / (abs(theta) + np.hypot(1.0, theta)) if theta != 0.0 else 1.0
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                rot_p = c * w[:, p] - s * w[:, q]
                rot_q = s * w[:, p] + c * w[:, q]
                w[:, p], w[:, q] = rot_p, rot_q
                rot_p = c * w[p, :] - s * w[q, :]
                rot_q = s * w[p, :] + c * w[q, :]
                w[p, :], w[q, :] = rot_p, rot_q
                w[p, q] = 0.0
                w[q, p] = 0.0
                rot_p = c * v[:, p] - s * v[:, q]
                rot_q = s * v[:, p] + c * v[:, q]
                v[:, p], v[:, q] = rot_p, rot_q
    else:
        raise LinAlgError("Jacobi eigendecomposition did not converge in 60 sweeps")

    eigvals = np.diag(w).copy()
    order = np.argsort(-eigvals, kind="stable")
    eigvals = eigvals[order]
    v = v[:, order]
    # deterministic sign: largest-magnitude component of each vector is positive
    for k in range(n):
        col = v[:, k]
        lead = np.argmax(np.abs(col))
        if col[lead] < 0.0:
            v[:, k] = -col
    return eigvals, v


def lu_solve(a, b) -> np.ndarray:
    """Solve a square system by LU factorization with partial pivoting."""
    a = _as_matrix(a)
    b = _as_vector(b)
    n, m = a.shape
    if n != m:
        raise ValueError(f"matrix must be square, got {n}x{m}")
    if b.shape[0] != n:
        raise ValueError(f"right-hand side length {b.shape[0]} != {n}")

    lu = a.copy()
    x = b.copy()
    scale = np.linalg.norm(a)
    pivot_floor = 1e-14 * max(scale, np.finfo(float).tiny)
    for k in range(n):
        piv = k + np.argmax(np.abs(lu[k:, k]))
        if abs(lu[piv, k]) < pivot_floor:
            raise SingularMatrixError(
                f"pivot {abs(lu[piv, k]):.2e} below {pivot_floor:.2e} at column {k}"
            )
        if piv != k:
            lu[[k, piv], :] = lu[[piv, k], :]
            x[[k, piv]] = x[[piv, k]]
        if k + 1 < n:
            factors = lu[k + 1 :, k] / lu[k, k]
            lu[k + 1 :, k + 1 :] -= np.outer(factors, lu[k, k + 1 :])
            x[k + 1 :] -= factors * x[k]
    for k in range(n - 1, -1, -1):
        x[k] = (x[k] - lu[k, k + 1 :] @ x[k + 1 :]) / lu[k, k]
    return x


def lstsq(design, y) -> np.ndarray:
    """Minimize ``||design @ c - y||_2`` via Householder QR.

    QR rather than normal equations: the design matrices that show up in
    regression over clustered samples can be poorly conditioned, and QR
    only pays the condition number once.
    """
    design = _as_matrix(design)
    y = _as_vector(y)
    m, n = design.shape
    if m < n:
        raise ValueError(f"need at least as many rows as columns, got {m}x{n}")
    if y.shape[0] != m:
        raise ValueError(f"right-hand side length {y.shape[0]} != {m}")

    r = design.copy()
    qty = y.copy()
    for k in range(n):
        col = r[k:, k]
        alpha = np.linalg.norm(col)
        if alpha == 0.0:
            continue
        if col[0] > 0.0:
            alpha = -alpha
        vk = col.copy()
        vk[0] -= alpha
        vnorm2 = vk @ vk
        if vnorm2 == 0.0:
            continue
        # apply I - 2 v v^T / (v^T v) to the trailing block and to y
        proj = (vk @ r[k:, k:]) * (2.0 / vnorm2)
        r[k:, k:] -= np.outer(vk, proj)
        qty[k:] -= vk * (2.0 * (vk @ qty[k:]) / vnorm2)
        r[k, k] = alpha
        r[k + 1 :, k] = 0.0

    diag = np.abs(np.diag(r))
    largest = diag.max()
    deficient = int(np.sum(diag < 1e-12 * largest)) if largest > 0.0 else n
    if deficient > 0:
        raise RankDeficiencyError(
            deficient,
            f"design matrix is rank deficient: {deficient} of {n} columns "
            "are numerically dependent",
        )

    c = np.empty(n)
    for k in range(n - 1, -1, -1):
        c[k] = (qty[k] - r[k, k + 1 :] @ c[k + 1 :]) / r[k, k]
    return c
