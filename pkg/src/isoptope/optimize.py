"""Local ascent over simplicial polytopes, instrumented for extremality.

The search itself is artifact engineering: hinge ascent follows the sign of
the closed-form derivative of L^(2d) per (facet, apex) pair, vertex
perturbation proposes random displacements.  Both re-isotropize after every
accepted step (L is affine-invariant, so this only conditions the numbers)
and record the first-order residuals and reflection defects that the
structural results predict must vanish at critical bodies.
"""

from dataclasses import dataclass, field

import numpy as np

from . import hull
from .errors import InvalidInput, IsoptopeError
from .extremality import HingeSpec, foc_residuals, hinge_derivative, hinge_polytope
from .isotropy import isotropic_constant, isotropic_position
from .polytope import moments, validate
from .sample import RngSeed
from .symmetry import all_reflection_checks, isohedrality_check

MODES = ("VERTEX_PERTURB", "HINGE_ASCENT")

CANDIDATE_NOTE = (
    "numeric pass marks a candidate extremum among simplicial perturbations, "
    "not a certified local extremum over all convex bodies"
)


@dataclass
class AscentConfig:
    step_init: float = 0.05
    step_shrink: float = 0.5
    max_iters: int = 200
    foc_tol: float = 1e-7
    seed: RngSeed = RngSeed(0)
    mode: str = "HINGE_ASCENT"

    def check(self):
        if self.step_init <= 0.0 or not 0.0 < self.step_shrink < 1.0:
            raise InvalidInput("bad step configuration")
        if self.max_iters < 1:
            raise InvalidInput("max_iters must be >= 1")
        if self.mode not in MODES:
            raise InvalidInput(f"mode must be one of {MODES}")


@dataclass
class TraceRow:
    iteration: int
    L: float
    max_foc: float
    max_refl_defect: float
    volume: float
    accepted: int


@dataclass
class AscentTrace:
    rows: list = field(default_factory=list)
    body: object = None

    @property
    def accepted_steps(self):
        return sum(r.accepted for r in self.rows[1:])


def _metrics(body_iso):
    md = moments(body_iso)
    max_foc = max(f.max_abs for f in foc_residuals(body_iso, md))
    max_refl = max(c.defect for c in all_reflection_checks(body_iso))
    return md.volume, max_foc, max_refl


def ascend(p0, cfg):
    """Greedy ascent of the isotropic constant from a starting body.

    Trace row 0 is the isotropized starting state (accepted=1 by
    convention); every later row reports one proposal and whether it was
    accepted.  L strictly increases on accepted steps.  Stops at max_iters,
    when the largest first-order residual falls below foc_tol, or when the
    step has shrunk away.
    """
    cfg.check()
    rep = validate(p0)
    if not rep.ok:
        raise InvalidInput(f"invalid starting body: {rep.violations[:3]}")
    rng = cfg.seed.rng()

    cur = isotropic_position(p0).body
    l_cur = isotropic_constant(cur)
    vol, max_foc, max_refl = _metrics(cur)
    trace = AscentTrace()
    trace.rows.append(TraceRow(0, l_cur, max_foc, max_refl, vol, 1))

    step = cfg.step_init
    rejections = 0
    for it in range(1, cfg.max_iters + 1):
        if max_foc < cfg.foc_tol or step < 1e-12:
            break
        accepted = 0
        cand = None
        try:
            if cfg.mode == "HINGE_ASCENT":
                cand = _propose_hinge(cur, step)
            else:
                cand = _propose_vertex(cur, step, rng)
            if cand is not None:
                l_new = isotropic_constant(cand)
                if l_new > l_cur:
                    accepted = 1
        except IsoptopeError:
            cand = None
        if accepted:
            cand = _merge_flat_vertices(cand)
            cur = isotropic_position(cand).body
            l_cur = isotropic_constant(cur)
            vol, max_foc, max_refl = _metrics(cur)
            rejections = 0
        else:
            rejections += 1
            if rejections >= 5:
                step *= cfg.step_shrink
                rejections = 0
        trace.rows.append(TraceRow(it, l_cur, max_foc, max_refl, vol, accepted))
    trace.body = cur
    return trace


def _propose_hinge(cur, step):
    md = moments(cur)
    best = None
    for fi in range(len(cur.facets)):
        for k in range(cur.dim):
            der = hinge_derivative(cur, HingeSpec(fi, k), md).dL2d_dt
            if best is None or abs(der) > abs(best[0]):
                best = (der, fi, k)
    der, fi, k = best
    if der == 0.0:
        return None
    t = step if der > 0.0 else -step
    t = float(np.clip(t, -0.78, 0.78))
    return hinge_polytope(cur, HingeSpec(fi, k, t))


def _propose_vertex(cur, step, rng):
    vi = int(rng.integers(cur.n_vertices))
    delta = step * rng.standard_normal(cur.dim)
    verts = cur.vertices.copy()
    verts[vi] += delta
    return hull.facet_enumeration(verts)


def _merge_flat_vertices(body):
    """Drop a vertex when some facet has collapsed to (d-1)-measure ~ 0.

    The vertex with the smallest height over its facet-mates is removed and
    the hull rebuilt; this is how convergence toward a simplex shows up
    combinatorially.
    """
    while body.n_vertices > body.dim + 1:
        scale = body.scale()
        worst = None
        for f in body.facets:
            fv = body.vertices[list(f)]
            e = fv[1:] - fv[0]
            gram = np.linalg.det(e @ e.T)
            vol = np.sqrt(max(gram, 0.0))
            if vol < 1e-10 * scale ** (body.dim - 1):
                idx, h = _flattest_vertex(body.vertices, f)
                if worst is None or h < worst[1]:
                    worst = (idx, h)
        if worst is None:
            return body
        keep = [i for i in range(body.n_vertices) if i != worst[0]]
        body = hull.facet_enumeration(body.vertices[keep])
    return body


def _flattest_vertex(vertices, facet):
    best = None
    for j, vi in enumerate(facet):
        others = [vertices[w] for w in facet if w != vi]
        base = np.array(others)
        q, r = np.linalg.qr((base[1:] - base[0]).T) if len(base) > 1 else (None, None)
        w = vertices[vi] - base[0]
        if q is not None:
            keep = np.abs(np.diag(r)) > 1e-14
            qk = q[:, keep]
            w = w - qk @ (qk.T @ w)
        h = float(np.linalg.norm(w))
        if best is None or h < best[1]:
            best = (vi, h)
    return best


def report_extremality(p):
    """JSON-ready summary of first-order residuals, reflection defects, and
    facet congruence on the isotropized body."""
    iso = isotropic_position(p)
    body = iso.body
    md = moments(body)
    focs = foc_residuals(body, md)
    thr = (p.dim + 1) * (p.dim + 2) ** 2 / 2.0
    refl = all_reflection_checks(body)
    cong = isohedrality_check(body)
    max_foc = max(f.max_abs for f in focs)
    max_defect = max(c.defect for c in refl)
    return {
        "dim": p.dim,
        "L": iso.L,
        "foc": {
            "max_abs_residual": max_foc,
            "max_relative_residual": max_foc / thr,
            "per_facet": [[float(r) for r in f.per_vertex] for f in focs],
        },
        "reflection": {
            "max_defect": max_defect,
            "n_ridges": len(refl),
            "per_ridge": [
                {"ridge_vertices": list(c.ridge_vertices), "defect": c.defect}
                for c in refl
            ],
        },
        "congruence": {
            "verdict": cong.verdict,
            "witness": list(cong.witness) if cong.witness else None,
            "note": "necessary condition only: facet congruence, not transitivity",
        },
        "note": CANDIDATE_NOTE,
    }
