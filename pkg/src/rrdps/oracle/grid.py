"""Exhaustive maximisation of the leakage objectives over the feasible polygon."""

from typing import NamedTuple

import numpy as np

from ..attack import feasible_region
from ..bounds import OBJECTIVES
from ..errors import RRDPSError

ZOOM_ROUNDS = 40
ZOOM_POINTS = 41


class GridResult(NamedTuple):
    lam_plus: float
    lam_minus: float
    value: float
    evaluations: int


def _evaluate(f, d, beta, region, lp, lm):
    lp, lm = np.broadcast_arrays(lp, lm)
    lp, lm = lp.ravel(), lm.ravel()
    ok = region.contains(lp, lm, tol=0.0)
    lp, lm = lp[ok], lm[ok]
    if lp.size == 0:
        return None
    vals = np.asarray(f(d, beta, lp, lm))
    i = int(np.argmax(vals))
    return lp[i], lm[i], float(vals[i]), lp.size


def grid_lambda_search(d: int, beta: float, objective: str = "T",
                       step: float = 1e-3, refine: bool = True) -> GridResult:
    """Maximise ``objective`` (``"T"``, ``"vn"`` or ``"trace_dist"``) over
    the polygon of feasible ``(lam_plus, lam_minus)``.

    ``step`` is the grid spacing as a fraction of the polygon's bounding box
    in each direction. The polygon vertices are always evaluated. With
    ``refine`` the best point is then zoomed in on, which sharpens the value
    well below the grid's own resolution.
    """
    if objective not in OBJECTIVES:
        raise ValueError(f"unknown objective {objective!r}")
    if not 0 < step <= 0.5:
        raise ValueError("step must lie in (0, 1/2]")
    f = OBJECTIVES[objective]
    region = feasible_region(d, beta)
    lp_max, lm_max = region.bounding_box()
    n = int(round(1 / step)) + 1
    u = np.linspace(0.0, 1.0, n)
    lp, lm = np.meshgrid(u * lp_max, u * lm_max, indexing="ij")
    verts = region.vertices()

    best = _evaluate(f, d, beta, region, lp, lm)
    if best is None:
        raise RRDPSError("feasible set is empty")
    count = best[3]
    vb = _evaluate(f, d, beta, region, verts[:, 0], verts[:, 1])
    if vb is not None:
        count += vb[3]
        if vb[2] >= best[2]:
            best = vb

    if refine and (lp_max > 0 or lm_max > 0):
        hp, hm = step * lp_max, step * lm_max
        for _ in range(ZOOM_ROUNDS):
            cp, cm = best[0], best[1]
            zp = np.linspace(max(cp - hp, 0.0), cp + hp, ZOOM_POINTS)
            zm = np.linspace(max(cm - hm, 0.0), cm + hm, ZOOM_POINTS)
            gp, gm = np.meshgrid(zp, zm, indexing="ij")
            cand = _evaluate(f, d, beta, region, gp, gm)
            if cand is not None:
                count += cand[3]
                if cand[2] >= best[2]:
                    best = cand
            hp, hm = hp / 4, hm / 4
    return GridResult(float(best[0]), float(best[1]), float(best[2]), int(count))
