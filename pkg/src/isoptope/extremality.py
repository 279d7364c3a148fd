"""First-order conditions on facets and the derivative of L^(2d) under hinging.

Hinging rotates one facet's supporting halfspace about the affine hull of a
(d-2)-face of that facet (the hinge axis); the apex is the facet vertex off
the axis.  For an isotropic body the derivative of L^(2d) with respect to
the hinge angle at 0 has the closed form

    (E |X|^2 - d - 2) * (d vol / dt) / vol^3

where X is drawn on the facet with density proportional to the distance to
the axis, equivalently proportional to the apex barycentric coordinate.  The
per-apex Gram-sum residuals vanish exactly at critical bodies.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import hull
from .errors import (
    DegenerateResult,
    InvalidInput,
    NotIsotropic,
    UnboundedOrEmpty,
    UnboundedResult,
)
from .isotropy import is_isotropic, isotropic_constant_pow2d
from .polytope import PolytopeH, facet_normal, moments, to_halfspaces


@dataclass(frozen=True)
class HingeSpec:
    """Facet facet_index hinges about the axis spanned by all of its vertices
    except the one at position apex_index; angle is the rotation in radians."""

    facet_index: int
    apex_index: int
    angle: float = 0.0

    def check(self, p):
        if not 0 <= self.facet_index < len(p.facets):
            raise InvalidInput(f"facet index {self.facet_index} out of range")
        if not 0 <= self.apex_index < p.dim:
            raise InvalidInput(f"apex index {self.apex_index} out of range")
        if not abs(self.angle) < math.pi / 4:
            raise InvalidInput("|angle| must stay below pi/4")


@dataclass
class FocResidual:
    facet_index: int
    per_vertex: np.ndarray  # r_k for each apex position k

    @property
    def max_abs(self):
        return float(np.abs(self.per_vertex).max())


@dataclass
class HingeReport:
    dvol_dt: float
    facet_second_moment: float
    dL2d_dt: float


def _gram_sums(facet_vertices):
    """S_k = sum_{i<=j} (1 + delta_ik + delta_jk) <v_i, v_j> for every k."""
    w = np.asarray(facet_vertices, dtype=float)
    g = w @ w.T
    total = 0.5 * (g.sum() + np.trace(g))
    return total + g.sum(axis=1) + np.diag(g)


def foc_threshold(d):
    return (d + 1) * (d + 2) ** 2 / 2.0


def foc_residuals(p_iso, md=None, centroid_tol=1e-8, cov_tol=1e-7):
    """Per-facet, per-apex residuals r_k = S_k - (d+1)(d+2)^2/2.

    Zero for every facet and apex exactly when the body is first-order
    critical for the isotropic constant among isotropic bodies.  The
    isotropy gate can be loosened to probe nearly-isotropic bodies (an
    isotropized simplex is always exactly regular, so perturbations are
    only visible before re-isotropization).
    """
    if md is None:
        md = moments(p_iso)
    if not is_isotropic(md, centroid_tol, cov_tol):
        raise NotIsotropic("foc residuals are defined on isotropic bodies")
    thr = foc_threshold(p_iso.dim)
    out = []
    for fi, f in enumerate(p_iso.facets):
        s = _gram_sums(p_iso.vertices[list(f)])
        out.append(FocResidual(facet_index=fi, per_vertex=s - thr))
    return out


def facet_second_moment(facet_vertices, k):
    """E |X|^2 under density proportional to barycentric coordinate k on the
    facet simplex; closed form 2 S_k / ((d+1)(d+2))."""
    w = np.asarray(facet_vertices, dtype=float)
    d = w.shape[0]
    if not 0 <= k < d:
        raise InvalidInput(f"apex position {k} out of range")
    return float(2.0 * _gram_sums(w)[k] / ((d + 1) * (d + 2)))


def _hinge_frame(p, spec):
    """Geometry of the hinge: axis centroid z0, unit apex direction e_rho
    (orthogonal to the axis, in the facet plane), outward unit normal, and
    the apex distance to the axis."""
    spec.check(p)
    d = p.dim
    if d < 2:
        raise InvalidInput("hinging needs d >= 2")
    f = p.facets[spec.facet_index]
    apex = f[spec.apex_index]
    axis_ids = [i for j, i in enumerate(f) if j != spec.apex_index]
    av = p.vertices[axis_ids]
    z0 = av.mean(axis=0)
    w = p.vertices[apex] - z0
    if len(axis_ids) >= 2:
        diff = av - z0
        q, r = np.linalg.qr(diff.T)  # columns span the axis directions
        keep = np.abs(np.diag(r)) > 1e-12 * max(1.0, np.abs(diff).max())
        q = q[:, keep]
        w = w - q @ (q.T @ w)
    rho_apex = float(np.linalg.norm(w))
    if rho_apex <= 1e-12 * p.scale():
        raise DegenerateResult("apex lies on the hinge axis")
    e_rho = w / rho_apex

    n = facet_normal(p.vertices, f)
    n = n / np.linalg.norm(n)
    center = p.vertices.mean(axis=0)
    if n @ (center - p.vertices[f[0]]) > 0.0:
        n = -n
    return z0, e_rho, n, rho_apex


def hinge_margin(p, spec):
    """Angular clearance of the hinge: the smallest angle, measured about
    the hinge axis, between the facet plane and any other vertex.

    The hinged body's face lattice is unchanged for |t| below this margin,
    so finite differences with steps well inside it see a smooth function.
    A grazing vertex (tiny margin) makes L^(2d)(K_t) merely one-sided
    differentiable at 0.
    """
    z0, e_rho, n, _ = _hinge_frame(p, spec)
    f = p.facets[spec.facet_index]
    scale = p.scale()
    margin = math.pi
    for i, v in enumerate(p.vertices):
        if i in f:
            continue
        a = (v - z0) @ e_rho
        b = (v - z0) @ n
        if math.hypot(a, b) <= 1e-9 * scale:
            continue
        theta = abs(math.atan2(b, a))
        margin = min(margin, theta, math.pi - theta)
    return margin


def dvol_dt(p, spec):
    """Exact d vol(K_t)/dt at t = 0: the facet integral of the distance to
    the hinge axis, vol_{d-1}(F) * rho_apex / d.

    The distance is linear on the facet and vanishes at every non-apex
    vertex, so its mean over the facet simplex is rho_apex / d.
    """
    _, _, _, rho_apex = _hinge_frame(p, spec)
    f = p.facets[spec.facet_index]
    fv = p.vertices[list(f)]
    d = p.dim
    e = fv[1:] - fv[0]
    area = math.sqrt(max(np.linalg.det(e @ e.T), 0.0)) / math.factorial(d - 1)
    return area * rho_apex / d


def hinged_halfspaces(p, spec):
    """H-representation of K_t: the facet's halfspace rotated by angle t
    about the hinge axis, all others unchanged."""
    z0, e_rho, n, _ = _hinge_frame(p, spec)
    h = to_halfspaces(p)
    b_f = float(n @ p.vertices[p.facets[spec.facet_index][0]])
    match = np.where(
        (np.abs(h.normals - n).max(axis=1) <= 1e-8)
        & (np.abs(h.offsets - b_f) <= 1e-8 * max(1.0, p.scale()))
    )[0]
    if match.size != 1:
        raise DegenerateResult("hinging facet plane not found in H-representation")
    t = spec.angle
    new_n = math.cos(t) * n - math.sin(t) * e_rho
    normals = h.normals.copy()
    offsets = h.offsets.copy()
    normals[match[0]] = new_n
    offsets[match[0]] = float(new_n @ z0)
    return PolytopeH(dim=p.dim, normals=normals, offsets=offsets)


def hinge_polytope(p, spec):
    """Rebuild the body after hinging; t > 0 adds volume on the apex side."""
    h = hinged_halfspaces(p, spec)
    try:
        verts = hull.vertex_enumeration(h)
    except UnboundedOrEmpty as exc:
        raise UnboundedResult(str(exc)) from exc
    if verts.shape[0] < p.dim + 1:
        raise DegenerateResult("hinged body has too few vertices")
    return hull.facet_enumeration(verts)


def hinge_derivative(p_iso, spec, md=None, centroid_tol=1e-8, cov_tol=1e-7):
    """Closed-form derivative of L^(2d) with respect to the hinge angle."""
    if md is None:
        md = moments(p_iso)
    if not is_isotropic(md, centroid_tol, cov_tol):
        raise NotIsotropic("hinge derivative is stated for isotropic bodies")
    d = p_iso.dim
    f = p_iso.facets[spec.facet_index]
    fsm = facet_second_moment(p_iso.vertices[list(f)], spec.apex_index)
    dv = dvol_dt(p_iso, spec)
    dl = (fsm - d - 2.0) * dv / md.volume**3
    return HingeReport(dvol_dt=dv, facet_second_moment=fsm, dL2d_dt=dl)


def hinge_l2d(p, spec, t):
    """L^(2d) of the reconstructed hinged body at angle t."""
    kt = hinge_polytope(p, HingeSpec(spec.facet_index, spec.apex_index, t))
    return isotropic_constant_pow2d(kt)


def hinge_derivative_fd(p, spec, t=1e-4, richardson=False):
    """Central finite difference of t -> L^(2d)(K_t).

    With richardson=True, extrapolates the step pair (t, t/2)."""

    def central(step):
        return (hinge_l2d(p, spec, step) - hinge_l2d(p, spec, -step)) / (2.0 * step)

    if not richardson:
        return central(t)
    return (4.0 * central(t / 2.0) - central(t)) / 3.0
