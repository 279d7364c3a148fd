"""Reflection symmetry, facet congruence, and Blaschke shaking.

For an isotropic body, criticality forces reflection symmetry across every
hyperplane spanned by a (d-2)-face and the origin; the checks here measure
the defect of that symmetry directly on vertex sets.  Shaking presses the
body's mass onto a hyperplane along parallel chords, preserving chord
lengths (hence volume) while never decreasing the isotropic constant, with
equality exactly when the chord envelope is affine.
"""

import itertools
from dataclasses import dataclass

import numpy as np

from . import hull
from .errors import (
    DegenerateHyperplane,
    DegenerateResult,
    InvalidInput,
    NotARidge,
    NotSymmetricAboutHyperplane,
    ProjectionNotSimplex,
    UnboundedOrEmpty,
)
from .isotropy import isotropic_constant
from .linalg import rotation_to_last_axis
from .polytope import (
    PolytopeH,
    PolytopeV,
    envelopes,
    orient_facets,
    ridge_map,
    to_halfspaces,
)


@dataclass
class ReflectionCheck:
    ridge: tuple  # pair of facet indices sharing the (d-2)-face
    ridge_vertices: tuple
    hyperplane_normal: np.ndarray
    defect: float

    @property
    def symmetric(self):
        return self.defect <= 1e-6


@dataclass
class ShakeResult:
    direction_axis: int
    body: PolytopeV
    L_before: float
    L_after: float


@dataclass
class CongruenceReport:
    verdict: str  # CONGRUENT_ALL or NOT_CONGRUENT
    witness: tuple | None

    @property
    def congruent(self):
        return self.verdict == "CONGRUENT_ALL"


def reflection_check(p_iso, ridge_vertices):
    """Reflection defect across the hyperplane spanned by a ridge and the origin.

    defect = max over vertices of the distance from the reflected vertex to
    the nearest vertex; zero when the body is symmetric across the plane.
    """
    r = tuple(sorted(int(i) for i in ridge_vertices))
    rmap = ridge_map(p_iso)
    if r not in rmap or len(rmap[r]) != 2:
        raise NotARidge(f"{r} is not a (d-2)-face shared by two facets")
    v = p_iso.vertices
    d = p_iso.dim
    rv = v[list(r)]
    _, s, vh = np.linalg.svd(rv)
    scale = max(1.0, p_iso.scale())
    if s.shape[0] < d - 1 or s[d - 2] <= 1e-10 * scale:
        raise DegenerateHyperplane("ridge and origin span fewer than d-1 dimensions")
    normal = vh[-1]
    if np.abs(rv @ normal).max() > 1e-8 * scale:
        raise DegenerateHyperplane("hyperplane fails to contain the ridge")
    reflected = v - 2.0 * np.outer(v @ normal, normal)
    dists = np.linalg.norm(reflected[:, None, :] - v[None, :, :], axis=2)
    defect = float(dists.min(axis=1).max())
    return ReflectionCheck(
        ridge=tuple(rmap[r]),
        ridge_vertices=r,
        hyperplane_normal=normal,
        defect=defect,
    )


def all_reflection_checks(p_iso):
    """Reflection check for every ridge of the body."""
    return [reflection_check(p_iso, r) for r in sorted(ridge_map(p_iso))]


def isohedrality_check(p):
    """Necessary condition for facet transitivity: pairwise facet congruence.

    Simplicial facets are compared by their sorted edge-length multisets
    (a congruence invariant); this does not test the full symmetry group.
    """
    v = p.vertices
    scale = max(1.0, p.scale())
    sigs = []
    for f in p.facets:
        fv = v[list(f)]
        dists = sorted(
            float(np.linalg.norm(fv[i] - fv[j]))
            for i, j in itertools.combinations(range(len(f)), 2)
        )
        sigs.append(np.array(dists) if dists else np.zeros(1))
    for i in range(1, len(sigs)):
        if np.abs(sigs[i] - sigs[0]).max() > 1e-7 * scale:
            return CongruenceReport(verdict="NOT_CONGRUENT", witness=(0, i))
    return CongruenceReport(verdict="CONGRUENT_ALL", witness=None)


def shake(p, axis_direction):
    """Blaschke shaking along a direction.

    In the frame where the direction is the last axis, every chord
    [f(x), -g(x)] maps to [0, -g(x) - f(x)]: the body's mass is pressed
    onto the hyperplane while chord lengths are preserved.  The shaken
    body's floor sits on the hyperplane through the origin.
    """
    u = np.asarray(axis_direction, dtype=float)
    if np.linalg.norm(u) <= 0.0:
        raise InvalidInput("zero shake direction")
    d = p.dim
    rot = rotation_to_last_axis(u)
    h = to_halfspaces(p)
    a = h.normals @ rot.T
    b = h.offsets

    ay = a[:, -1]
    upper = ay > 1e-12
    lower = ay < -1e-12
    vertical = ~(upper | lower)
    if not upper.any() or not lower.any():
        raise DegenerateResult("body has no extent along the shaking axis")

    au, bu = a[upper, :-1] / ay[upper, None], b[upper] / ay[upper]
    al, bl = a[lower, :-1] / ay[lower, None], b[lower] / ay[lower]

    rows = [np.concatenate([np.zeros(d - 1), [-1.0]])[None, :]]
    offs = [np.zeros(1)]
    for i in range(au.shape[0]):
        for j in range(al.shape[0]):
            rows.append(np.concatenate([au[i] - al[j], [1.0]])[None, :])
            offs.append(np.array([bu[i] - bl[j]]))
    if vertical.any():
        rows.append(a[vertical])
        offs.append(b[vertical])
    hs = PolytopeH(dim=d, normals=np.vstack(rows), offsets=np.concatenate(offs))

    try:
        verts = hull.vertex_enumeration(hs)
    except UnboundedOrEmpty as exc:
        raise DegenerateResult(str(exc)) from exc
    body = hull.facet_enumeration(verts @ rot)
    return ShakeResult(
        direction_axis=d - 1,
        body=body,
        L_before=isotropic_constant(p),
        L_after=isotropic_constant(body),
    )


def double_cone_check(p, hyperplane_normal, height_tol=1e-8):
    """Structural test for symmetric bodies over a simplex shadow.

    Requires d >= 3, reflection symmetry about the hyperplane through the
    origin with the given normal, and a simplex projection.  The verdict is
    IS_SIMPLEX exactly when the chord envelope is nonzero at exactly one
    projection vertex.
    """
    d = p.dim
    if d < 3:
        raise InvalidInput("double cone check needs d >= 3")
    n = np.asarray(hyperplane_normal, dtype=float)
    nn = np.linalg.norm(n)
    if nn <= 0.0:
        raise InvalidInput("zero hyperplane normal")
    n = n / nn
    v = p.vertices
    scale = max(1.0, p.scale())
    reflected = v - 2.0 * np.outer(v @ n, n)
    dists = np.linalg.norm(reflected[:, None, :] - v[None, :, :], axis=2)
    if dists.min(axis=1).max() > 1e-7 * scale:
        raise NotSymmetricAboutHyperplane(
            f"reflection defect {dists.min(axis=1).max():.3e}"
        )

    rot = rotation_to_last_axis(n)
    vr = v @ rot.T
    shadow = vr[:, :-1]
    # collapse mirror pairs before hulling the shadow
    kept = []
    for x in shadow[np.lexsort(shadow.T[::-1])]:
        if kept and np.min(np.linalg.norm(np.array(kept) - x, axis=1)) <= 1e-8 * scale:
            continue
        kept.append(x)
    kept = np.array(kept)
    try:
        proj = hull.facet_enumeration(kept)
    except Exception as exc:
        raise ProjectionNotSimplex(str(exc)) from exc
    if proj.n_vertices != d:
        raise ProjectionNotSimplex(
            f"shadow has {proj.n_vertices} vertices, a simplex needs {d}"
        )

    hr = to_halfspaces(p)
    hr = PolytopeH(dim=d, normals=hr.normals @ rot.T, offsets=hr.offsets)
    heights = []
    for x in proj.vertices:
        _, g_neg = envelopes(hr, x, tol=1e-7)
        heights.append(float(g_neg))
    nonzero = sum(1 for hgt in heights if hgt > height_tol * scale)
    verdict = "IS_SIMPLEX" if nonzero == 1 else "NOT_SIMPLEX"
    return verdict, heights


def bipyramid(base_vertices, height=1.0):
    """Double cone over a base polytope: apexes at +-height on the last axis."""
    base = np.asarray(base_vertices, dtype=float)
    k, dm1 = base.shape
    pts = np.zeros((k + 2, dm1 + 1))
    pts[:k, :dm1] = base
    pts[k, -1] = height
    pts[k + 1, -1] = -height
    return hull.facet_enumeration(pts)


def symmetric_double_cone_simplex(d, height=1.0):
    """A d-simplex presented symmetrically about the last coordinate plane:
    one shadow vertex carries the chord, the others sit on the plane."""
    if d < 3:
        raise InvalidInput("needs d >= 3")
    base = np.vstack([np.zeros(d - 1), np.eye(d - 1)])  # shadow simplex
    pts = np.zeros((d + 1, d))
    pts[: d - 1, : d - 1] = base[1:]
    pts[d - 1, : d - 1] = base[0]
    pts[d - 1, -1] = height
    pts[d, : d - 1] = base[0]
    pts[d, -1] = -height
    verts = pts
    facets = [tuple(j for j in range(d + 1) if j != i) for i in range(d + 1)]
    return PolytopeV(dim=d, vertices=verts, facets=orient_facets(verts, facets))
