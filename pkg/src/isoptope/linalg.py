"""Small dense linear algebra for ambient dimensions d <= 16.

Thin guards around LAPACK via numpy: the value added here is input
validation and the error contract, not the factorizations themselves.
"""

import numpy as np

from .errors import NotPositiveDefinite, NotSymmetric, SingularMatrix


def det(m):
    """Determinant of a square matrix (pivoted elimination, exact sign)."""
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("det expects a square matrix")
    return float(np.linalg.det(m))


def solve(m, b):
    """Solve Mx = b.

    Raises SingularMatrix when the smallest pivot falls below
    1e-12 times the largest entry magnitude.
    """
    m = np.asarray(m, dtype=float)
    b = np.asarray(b, dtype=float)
    scale = np.abs(m).max()
    if scale == 0.0:
        raise SingularMatrix("zero matrix")
    # smallest singular value is a stricter proxy for the worst pivot
    smin = np.linalg.svd(m, compute_uv=False)[-1]
    if smin <= 1e-12 * scale:
        raise SingularMatrix(f"pivot {smin:.3e} below 1e-12 * {scale:.3e}")
    return np.linalg.solve(m, b)


def _check_symmetric(m, tol=1e-10):
    asym = np.abs(m - m.T).max()
    lim = tol * max(1.0, np.abs(m).max())
    if asym > lim:
        raise NotSymmetric(f"asymmetry {asym:.3e} exceeds {lim:.3e}")


def sym_eig(m):
    """Eigendecomposition M = Q diag(w) Q^T of a symmetric matrix.

    Returns (w, Q) with eigenvalues ascending and orthonormal columns.
    """
    m = np.asarray(m, dtype=float)
    _check_symmetric(m)
    w, q = np.linalg.eigh(0.5 * (m + m.T))
    return w, q


def inv_sqrt(m):
    """Symmetric S with S M S = I, for symmetric positive definite M."""
    m = np.asarray(m, dtype=float)
    w, q = sym_eig(m)
    if w[0] <= 1e-12 * max(w[-1], 0.0):
        raise NotPositiveDefinite(f"min eigenvalue {w[0]:.3e} too small")
    return (q / np.sqrt(w)) @ q.T


def rotation_to_last_axis(u):
    """Symmetric orthogonal involution mapping u/|u| to the last basis vector.

    Householder reflection; applying it twice is the identity, so the same
    matrix maps both ways between the frames.
    """
    u = np.asarray(u, dtype=float)
    nu = np.linalg.norm(u)
    if nu <= 0.0:
        raise ValueError("zero direction")
    d = u.shape[0]
    w = u / nu - np.eye(d)[-1]
    ww = w @ w
    if ww <= 1e-30:
        return np.eye(d)
    return np.eye(d) - 2.0 * np.outer(w, w) / ww
