"""Isotropic position, the isotropic constant, and the random-simplex identity.

A body is isotropic when its uniform distribution has mean zero and identity
covariance; every full-dimensional body reaches that position under the
affine map x -> S (x - mu) with S the symmetric inverse square root of the
covariance.  The isotropic constant L satisfies L^(2d) = det A / vol^2 and is
invariant under invertible affine maps.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import InvalidPolytope
from .polytope import PolytopeV, moments, orient_facets


@dataclass(eq=False)
class IsotropicReport:
    transform_linear: np.ndarray
    transform_shift: np.ndarray
    body: PolytopeV
    centroid_residual: float
    covariance_residual: float
    L: float


def isotropic_constant_pow2d(p, md=None):
    """L^(2d) = det(covariance) / volume^2."""
    if md is None:
        md = moments(p)
    det_a = linalg.det(md.covariance)
    if det_a <= 0.0:
        raise InvalidPolytope("degenerate covariance")
    return det_a / md.volume**2


def isotropic_constant(p, md=None):
    """The isotropic constant L, the 2d-th root of det A / vol^2."""
    return isotropic_constant_pow2d(p, md) ** (1.0 / (2 * p.dim))


def isotropic_position(p):
    """Map the body to centroid 0 and covariance I; record the transform.

    The linear part is the symmetric inverse square root of the covariance,
    so the image is unique up to orthogonal maps and re-application is the
    identity up to rounding.
    """
    md = moments(p)
    s = linalg.inv_sqrt(md.covariance)
    verts = (p.vertices - md.centroid) @ s  # s is symmetric
    body = PolytopeV(dim=p.dim, vertices=verts, facets=list(p.facets))
    md2 = moments(body)
    return IsotropicReport(
        transform_linear=s,
        transform_shift=-s @ md.centroid,
        body=body,
        centroid_residual=float(np.abs(md2.centroid).max()),
        covariance_residual=float(np.abs(md2.covariance - np.eye(p.dim)).max()),
        L=isotropic_constant(body, md2),
    )


def is_isotropic(md, centroid_tol=1e-8, cov_tol=1e-7):
    d = md.centroid.shape[0]
    return (
        np.abs(md.centroid).max() <= centroid_tol
        and np.abs(md.covariance - np.eye(d)).max() <= cov_tol
    )


def regular_simplex_isotropic(d):
    """Regular d-simplex in isotropic position.

    Vertices satisfy |v_i|^2 = d(d+2) and v_i . v_j = -(d+2); with the
    vertex sum zero this forces covariance exactly I.  Rows are built from
    the Helmert orthonormal basis of the hyperplane orthogonal to the
    all-ones vector, so the construction is deterministic.
    """
    if not 1 <= d <= 12:
        raise InvalidPolytope("regular simplex supported for 1 <= d <= 12")
    u = np.zeros((d + 1, d))
    for k in range(1, d + 1):
        c = 1.0 / math.sqrt(k * (k + 1))
        u[:k, k - 1] = c
        u[k, k - 1] = -k * c
    verts = math.sqrt((d + 1) * (d + 2)) * u
    facets = [tuple(j for j in range(d + 1) if j != i) for i in range(d + 1)]
    return PolytopeV(dim=d, vertices=verts, facets=orient_facets(verts, facets))


def m2_identity_lhs(p, md=None):
    """Exact prediction for the normalized random-simplex second moment:
    L^(2d) * (d+1) / d!."""
    return isotropic_constant_pow2d(p, md) * (p.dim + 1) / math.factorial(p.dim)
