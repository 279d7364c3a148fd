"""Polytope representations, validation, and exact moment integration.

A body is carried as a vertex list plus simplicial facets (PolytopeV) or as
an intersection of closed halfspaces (PolytopeH).  Moments of the uniform
distribution are integrated exactly by fanning the body into simplices from
the vertex average and applying the closed-form simplex moments.
"""

import itertools
import json
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DegenerateSimplex,
    InvalidInput,
    InvalidPolytope,
    OutsideProjection,
    UnboundedOrEmpty,
)


@dataclass(eq=False)
class PolytopeV:
    """Vertex representation: vertices (n, d) and simplicial facets.

    Each facet is a tuple of d vertex indices ordered so that the
    generalized cross product of its edge vectors points outward.
    """

    dim: int
    vertices: np.ndarray
    facets: list

    def __post_init__(self):
        self.vertices = np.asarray(self.vertices, dtype=float)
        self.facets = [tuple(int(i) for i in f) for f in self.facets]

    @property
    def n_vertices(self):
        return self.vertices.shape[0]

    def scale(self):
        """Diameter: max pairwise vertex distance (desk-scale O(n^2))."""
        v = self.vertices
        d2 = ((v[:, None, :] - v[None, :, :]) ** 2).sum(-1)
        return float(np.sqrt(d2.max()))


@dataclass(eq=False)
class PolytopeH:
    """Halfspace representation: normals (m, d), offsets (m,), meaning a.x <= b."""

    dim: int
    normals: np.ndarray
    offsets: np.ndarray

    def __post_init__(self):
        self.normals = np.atleast_2d(np.asarray(self.normals, dtype=float))
        self.offsets = np.asarray(self.offsets, dtype=float).ravel()

    @property
    def n_halfspaces(self):
        return self.normals.shape[0]


@dataclass(eq=False)
class Simplex:
    """d+1 affinely independent points in R^d."""

    vertices: np.ndarray

    def __post_init__(self):
        self.vertices = np.asarray(self.vertices, dtype=float)

    @property
    def dim(self):
        return self.vertices.shape[1]


@dataclass(eq=False)
class MomentData:
    """Exact uniform-distribution moments of a body."""

    volume: float
    centroid: np.ndarray
    raw_second: np.ndarray  # E[X X^T]
    covariance: np.ndarray  # E[X X^T] - centroid centroid^T


@dataclass
class ValidationReport:
    ok: bool
    violations: list = field(default_factory=list)

    def add(self, kind, **detail):
        self.ok = False
        self.violations.append({"kind": kind, **detail})


def facet_normal(vertices, facet):
    """Unnormalized normal implied by the facet's vertex order.

    Computed as the generalized cross product n with
    n . x = det([x; v1-v0; ...; v_{d-1}-v0]) for every x.
    For d = 1 the orientation is carried by geometry, not the tuple;
    returns +1.
    """
    d = vertices.shape[1]
    if d == 1:
        return np.array([1.0])
    e = vertices[list(facet[1:])] - vertices[facet[0]]
    n = np.empty(d)
    for i in range(d):
        minor = np.delete(e, i, axis=1)
        n[i] = (-1.0) ** i * np.linalg.det(minor)
    return n


def orient_facets(vertices, facets):
    """Return facet tuples reordered so every implied normal points outward.

    Outward is judged against the vertex average, which is interior for
    any full-dimensional convex position of the vertices.
    """
    vertices = np.asarray(vertices, dtype=float)
    d = vertices.shape[1]
    center = vertices.mean(axis=0)
    out = []
    for f in facets:
        f = tuple(int(i) for i in f)
        if d == 1:
            out.append(f)
            continue
        n = facet_normal(vertices, f)
        if n @ (center - vertices[f[0]]) > 0.0:
            f = f[:-2] + (f[-1], f[-2])
        out.append(f)
    return out


def ridge_map(p):
    """Map each (d-2)-face, as a sorted vertex index tuple, to the facets containing it."""
    ridges = {}
    for fi, f in enumerate(p.facets):
        for r in itertools.combinations(sorted(f), len(f) - 1):
            ridges.setdefault(r, []).append(fi)
    return ridges


def validate(p):
    """Check every PolytopeV invariant, reporting all violations found."""
    rep = ValidationReport(ok=True)
    v = p.vertices
    d = p.dim
    n = v.shape[0]
    if d < 1:
        rep.add("bad_dim", dim=d)
        return rep
    if v.ndim != 2 or v.shape[1] != d:
        rep.add("bad_vertex_shape", shape=list(v.shape))
        return rep
    if not np.isfinite(v).all():
        rep.add("nonfinite_vertices")
        return rep
    if n < d + 1:
        rep.add("too_few_vertices", count=n)
        return rep

    diam = p.scale()
    if diam == 0.0:
        rep.add("zero_diameter")
        return rep
    svals = np.linalg.svd(v - v.mean(axis=0), compute_uv=False)
    if svals[d - 1] <= 1e-12 * max(svals[0], diam):
        rep.add("not_full_dimensional", rank_gap=float(svals[d - 1]))

    tol = 1e-9 * diam
    for fi, f in enumerate(p.facets):
        if len(f) != d or len(set(f)) != d or any(i < 0 or i >= n for i in f):
            rep.add("bad_facet_indices", facet=fi)
            continue
        fv = v[list(f)]
        if d >= 2:
            es = np.linalg.svd(fv[1:] - fv[0], compute_uv=False)
            if es[-1] <= 1e-12 * max(es[0], diam):
                rep.add("facet_affinely_dependent", facet=fi)
                continue
        nvec = facet_normal(v, f)
        if d == 1:
            others = np.delete(np.arange(n), list(f))
            nvec = np.array([1.0 if (v[f[0], 0] >= v[others].max()) else -1.0])
        nn = np.linalg.norm(nvec)
        if nn == 0.0:
            rep.add("facet_affinely_dependent", facet=fi)
            continue
        nvec = nvec / nn
        b = float(nvec @ fv.mean(axis=0))
        side = v @ nvec - b
        outside = np.where(side > tol)[0]
        inside = np.where(side < -tol)[0]
        if outside.size and inside.size:
            rep.add("facet_not_supporting", facet=fi)
        elif outside.size:
            # supporting plane exists but the tuple's normal points inward
            rep.add("facet_inward_oriented", facet=fi)

    if d >= 2:
        for r, fs in ridge_map(p).items():
            if len(fs) != 2:
                rep.add("ridge_not_shared_by_two", ridge=list(r), facets=fs)
    return rep


def simplex_moments(s):
    """Exact volume, centroid, E[XX^T], and covariance of a uniform simplex.

    vol = |det(v1-v0, ..., vd-v0)| / d!
    E[XX^T] = (sum_i v_i v_i^T + (sum_i v_i)(sum_i v_i)^T) / ((d+1)(d+2))
    """
    v = s.vertices
    d = v.shape[1]
    if v.shape[0] != d + 1:
        raise DegenerateSimplex(f"expected {d + 1} vertices, got {v.shape[0]}")
    e = v[1:] - v[0]
    detv = np.linalg.det(e)
    scale = max(1.0, float(np.abs(e).max()))
    if abs(detv) <= 1e-12 * scale**d:
        raise DegenerateSimplex(f"edge determinant {detv:.3e} below tolerance")
    vol = abs(detv) / _factorial(d)
    centroid = v.mean(axis=0)
    ssum = v.sum(axis=0)
    raw = (v.T @ v + np.outer(ssum, ssum)) / ((d + 1) * (d + 2))
    cov = raw - np.outer(centroid, centroid)
    return MomentData(volume=vol, centroid=centroid, raw_second=raw, covariance=cov)


def _factorial(k):
    out = 1
    for i in range(2, k + 1):
        out *= i
    return out


def triangulate(p):
    """Fan the body into simplices conv(vertex-average, facet).

    The apex must be interior, which holds for any valid polytope; this is
    asserted against every facet plane.
    """
    v = p.vertices
    d = p.dim
    if not p.facets:
        raise InvalidPolytope("no facets")
    apex = v.mean(axis=0)
    diam = p.scale()
    sims = []
    for f in p.facets:
        fv = v[list(f)]
        nvec = facet_normal(v, f)
        if d >= 2:
            nn = np.linalg.norm(nvec)
            if nn == 0.0:
                raise InvalidPolytope(f"degenerate facet {f}")
            margin = (nvec / nn) @ (apex - fv[0])
            if margin >= -1e-12 * diam:
                raise InvalidPolytope(f"fan apex not interior to facet {f}")
        sims.append(Simplex(np.vstack([apex[None, :], fv])))
    return sims


def moments(p):
    """Volume-weighted aggregation of simplex moments over the fan triangulation.

    Per-simplex contributions are stacked and reduced with numpy's pairwise
    summation to hold the 1e-10 relative targets at d <= 8.
    """
    sims = triangulate(p)
    vols = np.zeros(len(sims))
    cents = np.zeros((len(sims), p.dim))
    raws = np.zeros((len(sims), p.dim, p.dim))
    for i, s in enumerate(sims):
        try:
            md = simplex_moments(s)
        except DegenerateSimplex:
            # noise-level sliver (e.g. a hinge cut grazing a vertex); its
            # volume is below the degeneracy gate, so dropping it costs
            # less than the gate itself
            continue
        vols[i] = md.volume
        cents[i] = md.centroid
        raws[i] = md.raw_second
    volume = float(np.sum(vols))
    if volume <= 0.0:
        raise InvalidPolytope("non-positive volume")
    centroid = np.sum(vols[:, None] * cents, axis=0) / volume
    raw = np.sum(vols[:, None, None] * raws, axis=0) / volume
    raw = 0.5 * (raw + raw.T)
    cov = raw - np.outer(centroid, centroid)
    return MomentData(volume=volume, centroid=centroid, raw_second=raw, covariance=cov)


def to_halfspaces(p, merge_tol=1e-8):
    """Irredundant H-representation: one unit-outward halfspace per facet plane.

    Coplanar facet simplices (normals within merge_tol, offsets within
    merge_tol * diameter) collapse into a single halfspace.
    """
    v = p.vertices
    d = p.dim
    diam = p.scale()
    normals = []
    offsets = []
    for f in p.facets:
        fv = v[list(f)]
        if d == 1:
            others = [i for i in range(v.shape[0]) if i not in f]
            n = np.array([1.0 if v[f[0], 0] >= v[others].max() else -1.0])
        else:
            n = facet_normal(v, f)
            nn = np.linalg.norm(n)
            if nn == 0.0:
                raise InvalidPolytope(f"degenerate facet {f}")
            n = n / nn
        b = float(n @ fv.mean(axis=0))
        for k in range(len(normals)):
            if (
                np.abs(normals[k] - n).max() <= merge_tol
                and abs(offsets[k] - b) <= merge_tol * max(1.0, diam)
            ):
                break
        else:
            normals.append(n)
            offsets.append(b)
    return PolytopeH(dim=d, normals=np.array(normals), offsets=np.array(offsets))


def contains(h, x, tol=1e-9):
    """Membership test with tol * (1 + |offset|) slack per halfspace."""
    x = np.asarray(x, dtype=float)
    slack = tol * (1.0 + np.abs(h.offsets))
    return bool(np.all(h.normals @ x <= h.offsets + slack))


def envelopes(h, x, tol=1e-9):
    """Lower/upper bounds of the body's chord over x along the last axis.

    Returns (f, g_neg) with f = min feasible last coordinate and
    g_neg = max; raises OutsideProjection when x is outside the body's
    shadow (violated horizontal constraint, or f > g_neg beyond tolerance).
    """
    x = np.asarray(x, dtype=float)
    d = h.dim
    if x.shape != (d - 1,):
        raise InvalidInput(f"expected point of dimension {d - 1}")
    ay = h.normals[:, -1]
    ah = h.normals[:, :-1]
    rest = h.offsets - ah @ x
    scale = max(1.0, float(np.abs(h.offsets).max()))
    horizontal = np.abs(ay) <= 1e-12
    if np.any(rest[horizontal] < -tol * scale):
        raise OutsideProjection("horizontal constraint violated")
    upper = ay > 1e-12
    lower = ay < -1e-12
    if not upper.any() or not lower.any():
        raise UnboundedOrEmpty("chord along the last axis is unbounded")
    g_neg = float((rest[upper] / ay[upper]).min())
    f = float((rest[lower] / ay[lower]).max())
    if f > g_neg + tol * scale:
        raise OutsideProjection(f"empty chord: {f:.3e} > {g_neg:.3e}")
    return f, g_neg


def load_polytope_json(text_or_obj):
    """Parse the JSON polytope format; facets are optional (hull fills them in)."""
    if isinstance(text_or_obj, (str, bytes)):
        obj = json.loads(text_or_obj)
    else:
        obj = text_or_obj
    try:
        dim = int(obj["dim"])
        vertices = np.asarray(obj["vertices"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInput(f"bad polytope JSON: {exc}") from exc
    if vertices.ndim != 2 or vertices.shape[1] != dim:
        raise InvalidInput("vertex array shape does not match dim")
    facets = obj.get("facets")
    if facets is None:
        from . import hull

        return hull.facet_enumeration(vertices)
    return PolytopeV(dim=dim, vertices=vertices, facets=[tuple(f) for f in facets])


def polytope_to_obj(p):
    """JSON-ready dict in the on-disk polytope format."""
    return {
        "dim": p.dim,
        "vertices": [[float(x) for x in row] for row in p.vertices],
        "facets": [list(f) for f in p.facets],
    }
