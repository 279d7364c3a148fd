"""Desk-scale conversions between vertex and halfspace descriptions.

Both directions are brute force over subsets: every d-subset of points is
tested as a facet plane, every d-subset of halfspaces as a basic point.
Instance sizes are tiny by design, so correctness and determinism win over
output-sensitive algorithms.
"""

import itertools
import math

import numpy as np

from .errors import DegenerateInput, InvalidInput, UnboundedOrEmpty
from .polytope import PolytopeV, orient_facets

_MAX_POINTS = 64
_MAX_SUBSETS = 5_000_000


def facet_enumeration(points):
    """Convex hull of a point set as a PolytopeV with simplicial facets.

    Non-simplicial faces are fan-triangulated deterministically from their
    lowest-index vertex; points interior to the hull (or to a face) are
    dropped from the output vertex list.
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2:
        raise InvalidInput("points must be a 2-D array")
    n, d = pts.shape
    if n > _MAX_POINTS:
        raise InvalidInput(f"{n} points exceeds the desk-scale cap {_MAX_POINTS}")
    facets = _hull_facets(pts)
    used = sorted({i for f in facets for i in f})
    remap = {old: new for new, old in enumerate(used)}
    out_facets = sorted(tuple(sorted(remap[i] for i in f)) for f in facets)
    verts = pts[used]
    return PolytopeV(dim=d, vertices=verts, facets=orient_facets(verts, out_facets))


def _hull_facets(pts):
    """Hull facets as tuples of indices into pts (unoriented)."""
    n, d = pts.shape
    center = pts.mean(axis=0)
    spread = np.linalg.norm(pts - center, axis=1)
    scale = max(1.0, 2.0 * float(spread.max()))
    svals = np.linalg.svd(pts - center, compute_uv=False)
    if n < d + 1 or svals[d - 1] <= 1e-12 * scale:
        raise DegenerateInput("points do not affinely span the ambient space")

    if d == 1:
        lo = int(np.argmin(pts[:, 0]))
        hi = int(np.argmax(pts[:, 0]))
        return [(lo,), (hi,)]

    tol = 1e-9 * scale
    planes = _candidate_planes(pts, scale, tol)

    facets = []
    for normal, offset in planes:
        side = pts @ normal - offset
        on_ids = np.where(np.abs(side) <= 3.0 * tol)[0]
        if len(on_ids) == d:
            facets.append(tuple(int(i) for i in on_ids))
            continue
        # non-simplicial geometric facet: triangulate it in-plane
        face_pts = pts[on_ids] - pts[on_ids].mean(axis=0)
        _, _, vh = np.linalg.svd(face_pts, full_matrices=False)
        basis = vh[: d - 1]
        proj = face_pts @ basis.T
        sub_facets = _hull_facets(proj)
        hull_local = sorted({i for f in sub_facets for i in f})
        lowest_local = min(hull_local, key=lambda i: on_ids[i])
        lowest = int(on_ids[lowest_local])
        for ridge in sub_facets:
            if lowest_local in ridge:
                continue
            facets.append((lowest,) + tuple(int(on_ids[i]) for i in ridge))
    return facets


def _candidate_planes(pts, scale, tol):
    """Supporting hyperplanes through d-subsets, outward-oriented, merged."""
    n, d = pts.shape
    normals = []
    offsets = []
    combos = itertools.combinations(range(n), d)
    for chunk in _chunks(combos, 65536):
        sub = np.array(chunk)  # (k, d)
        edges = pts[sub[:, 1:]] - pts[sub[:, :1]]  # (k, d-1, d)
        _, s, vh = np.linalg.svd(edges)
        cand_n = vh[:, -1, :]  # unit null vectors
        independent = s[:, -1] > 1e-9 * scale
        cand_b = np.einsum("kd,kjd->kj", cand_n, pts[sub]).mean(axis=1)
        side = pts @ cand_n.T - cand_b  # (n, k)
        has_pos = (side > tol).any(axis=0)
        has_neg = (side < -tol).any(axis=0)
        keep = independent & ~(has_pos & has_neg)
        flip = np.where(has_pos[keep], -1.0, 1.0)
        for nv, bv in zip(cand_n[keep] * flip[:, None], cand_b[keep] * flip):
            for gi in range(len(normals)):
                if (
                    np.abs(normals[gi] - nv).max() <= 1e-8
                    and abs(offsets[gi] - bv) <= 1e-8 * scale
                ):
                    break
            else:
                normals.append(nv)
                offsets.append(float(bv))
    return list(zip(normals, offsets))


def _chunks(iterable, size):
    it = iter(iterable)
    while True:
        block = list(itertools.islice(it, size))
        if not block:
            return
        yield block


def vertex_enumeration(h):
    """All vertices of a bounded halfspace intersection, lexicographically sorted.

    Every d-subset of constraints with a nonsingular normal matrix yields a
    basic point; feasible ones are kept and deduplicated on a 1e-8-scale
    grid with exact distance confirmation.
    """
    a = np.asarray(h.normals, dtype=float)
    b = np.asarray(h.offsets, dtype=float)
    m, d = a.shape
    norms = np.linalg.norm(a, axis=1)
    if np.any(norms <= 0.0):
        raise InvalidInput("zero halfspace normal")
    a = a / norms[:, None]
    b = b / norms
    scale = max(1.0, float(np.abs(b).max()))

    _check_bounded(a)

    n_subsets = math.comb(m, d)
    if n_subsets > _MAX_SUBSETS:
        raise InvalidInput(f"C({m},{d}) = {n_subsets} subsets exceeds desk-scale cap")

    feasible = []
    tol_feas = 1e-9 * scale
    combos = itertools.combinations(range(m), d)
    for chunk in _chunks(combos, 65536):
        sub = np.array(chunk)
        mats = a[sub]  # (k, d, d)
        dets = np.linalg.det(mats)
        ok = np.abs(dets) > 1e-12
        if not ok.any():
            continue
        sols = np.linalg.solve(mats[ok], b[sub[ok]][..., None])[..., 0]
        slack = sols @ a.T - b
        good = (slack <= tol_feas).all(axis=1)
        if good.any():
            feasible.append(sols[good])
    if not feasible:
        raise UnboundedOrEmpty("no feasible basic point")
    cand = np.vstack(feasible)

    # grid round, unique, then exact-distance confirmation
    tol_dedup = 1e-8 * scale
    grid = np.round(cand / tol_dedup)
    _, first = np.unique(grid, axis=0, return_index=True)
    cand = cand[np.sort(first)]
    order = np.lexsort(cand.T[::-1])
    cand = cand[order]
    kept = []
    for x in cand:
        if kept and np.min(np.linalg.norm(np.array(kept) - x, axis=1)) <= tol_dedup:
            continue
        kept.append(x)
    return np.array(kept)


def _check_bounded(a):
    """LP-free unboundedness heuristic: spanning rank plus sampled directions.

    A direction u with a_i . u <= 0 for all i is a recession direction.
    Candidates tried: the negated normals, the coordinate axes, and the
    negated mean normal.  Sufficient at desk scale, not a certificate.
    """
    m, d = a.shape
    if np.linalg.matrix_rank(a, tol=1e-10) < d:
        raise UnboundedOrEmpty("halfspace normals do not span the space")
    cands = [-a]
    eye = np.eye(d)
    cands.extend([eye, -eye])
    mean = a.mean(axis=0)
    if np.linalg.norm(mean) > 1e-12:
        cands.append(-mean[None, :] / np.linalg.norm(mean))
    dirs = np.vstack(cands)
    worst = (a @ dirs.T).max(axis=0)
    if np.any(worst <= 1e-10):
        raise UnboundedOrEmpty("recession direction detected")
