"""Sets in the plane (and two in the product space), and distance estimators.

A :class:`Region` is a membership predicate plus, where available, a
parametrization of its frontier and a bounding box.  Distances are
estimated by a coarse grid over the frontier parameter followed by
golden-section refinement from the best few grid cells.  Every estimate
is a value actually attained by a pair of points, so it can only
overestimate the infimum.

Unbounded sets are clipped to their bounding box, ``[-1e4, 1e4]^2`` unless
the catalog says otherwise.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from . import geometry as geo
from ._search import golden_section, local_minima_order
from .errors import CatalogError, PreconditionError, UnestimableRegion
from .geometry import Blocks, Planar

__all__ = [
    "Region", "ProductRegion", "DistanceEstimate", "CorpusPair",
    "point_to_set_distance", "boundary_distance", "set_distance",
    "midpoint_ball_inclusion", "InclusionResult",
    "corpus_region", "corpus_pair", "REGION_NAMES", "PAIR_NAMES", "catalog_dict",
    "DEFAULT_BOX",
]

BOX_HALF = 1e4
DEFAULT_BOX = (-BOX_HALF, BOX_HALF, -BOX_HALF, BOX_HALF)
LOG_BOX = math.log(BOX_HALF)
# slack for membership in norm balls whose defining sequences hit the sphere exactly
BALL_SLACK = 1e-12
# polygon sets are closed; convex combinations of their points may round past an edge by an ulp
POLY_SLACK = 1e-12
_S = POLY_SLACK


@dataclass(frozen=True, eq=False)
class Region:
    """A set given by a membership predicate.

    ``boundary`` maps a parameter in ``t_range`` to the coordinates of a
    frontier point; with ``periodic`` the parameter wraps around.
    ``bbox`` is ``(xmin, xmax, ymin, ymax)``.
    """

    name: str
    contains: Callable[[object], bool]
    boundary: Optional[Callable[[float], tuple]] = None
    t_range: Optional[tuple] = None
    periodic: bool = False
    bbox: Optional[tuple] = DEFAULT_BOX
    description: str = ""
    figure_reconstruction: bool = False
    space: str = "planar"

    def __contains__(self, p):
        return bool(self.contains(p))

    def boundary_point(self, t):
        x, y = self.boundary(t)
        return Planar(x, y)

    @property
    def estimable(self):
        return self.space == "planar" and (self.boundary is not None or self.bbox is not None)

    def _t_window(self, box):
        # parameter range whose frontier points fall in the box, padded by one scan cell
        lo, hi = self.t_range
        if self.periodic:
            return lo, hi
        xmin, xmax, ymin, ymax = box
        scan = np.linspace(lo, hi, 4097)
        hits = [i for i, t in enumerate(scan)
                if (lambda q: xmin <= q[0] <= xmax and ymin <= q[1] <= ymax)(self.boundary(float(t)))]
        if not hits:
            return lo, hi
        return float(scan[max(hits[0] - 1, 0)]), float(scan[min(hits[-1] + 1, len(scan) - 1)])

    def frontier_sample(self, n, box=None):
        """Members among ``n`` evenly spaced frontier points inside ``box``."""
        box = box or self.bbox
        xmin, xmax, ymin, ymax = box
        out = []
        for t in np.linspace(*self._t_window(box), n, endpoint=not self.periodic):
            p = self.boundary_point(float(t))
            if xmin <= p.x <= xmax and ymin <= p.y <= ymax and self.contains(p):
                out.append(p)
        return out

    def sample(self, budget, rng=None, box=None, near=None, radius=None):
        """Return up to ``budget`` member points inside ``box``.

        About a quarter come from an even grid on the frontier, the rest
        are uniform draws by rejection.  With ``near``/``radius`` the box is
        the square of that half-width around ``near``.
        """
        if self.space != "planar":
            raise UnestimableRegion(f"region {self.name!r} has no planar sampler")
        rng = np.random.default_rng(rng)
        if near is not None:
            box = (near.x - radius, near.x + radius, near.y - radius, near.y + radius)
        box = box or self.bbox
        if box is None:
            raise UnestimableRegion(f"region {self.name!r} has no bounding box")
        xmin, xmax, ymin, ymax = box
        inside = lambda p: xmin <= p.x <= xmax and ymin <= p.y <= ymax and self.contains(p)
        out = []
        if self.boundary is not None and near is None:
            out = self.frontier_sample(max(budget // 4, 1), box)
        tries = 0
        while len(out) < budget and tries < 50:
            need = budget - len(out)
            xs = rng.uniform(xmin, xmax, 4 * need)
            ys = rng.uniform(ymin, ymax, 4 * need)
            for x, y in zip(xs, ys):
                p = Planar(float(x), float(y))
                if self.contains(p):
                    out.append(p)
                    if len(out) == budget:
                        break
            tries += 1
        return out


@dataclass(frozen=True, eq=False)
class ProductRegion:
    """``first x second`` with membership componentwise; points are 2-tuples."""

    first: Region
    second: Region

    @property
    def name(self):
        return f"{self.first.name}x{self.second.name}"

    def contains(self, pair):
        p, q = pair
        return self.first.contains(p) and self.second.contains(q)

    def __contains__(self, pair):
        return self.contains(pair)

    def sample(self, budget, rng=None, **kw):
        rng = np.random.default_rng(rng)
        a = self.first.sample(budget, rng, **kw)
        b = self.second.sample(budget, rng, **kw)
        rng.shuffle(b)
        return list(zip(a, b))


@dataclass
class DistanceEstimate:
    value: float
    argmin_pair: tuple
    budget_used: int
    refinement_history: list = field(default_factory=list)


def _levels(budget):
    if budget < 8:
        raise PreconditionError(f"budget must be >= 8, got {budget}")
    out, m = [], 8
    while m <= budget:
        out.append(m)
        m *= 2
    return out


def _curve_search(f, t_range, periodic, levels, starts, tol=1e-13):
    """Grid + golden minimization of ``f`` over a frontier parameter.

    Returns ``(best_t, best_value, evaluations, history)``; the history
    holds the running minimum after each grid level and is nonincreasing.
    """
    lo, hi = t_range
    best_t, best_v = lo, math.inf
    used = 0
    history = []
    for m in levels:
        h = (hi - lo) / m
        ts = [lo + i * h for i in range(m if periodic else m + 1)]
        vals = [f(t) for t in ts]
        used += len(ts)
        for t, v in zip(ts, vals):
            if v < best_v:
                best_t, best_v = t, v
        for i in local_minima_order(vals, starts, periodic):
            a, b = ts[i] - h, ts[i] + h
            if not periodic:
                a, b = max(a, lo), min(b, hi)
            t, v, n = golden_section(f, a, b, tol=tol)
            used += n
            if v < best_v:
                best_t, best_v = t, v
        history.append((m, best_v))
    return best_t, best_v, used, history


def _box_search(f, box, levels):
    xmin, xmax, ymin, ymax = box
    best = (math.inf, None)
    used = 0
    history = []
    for m in levels:
        for x in np.linspace(xmin, xmax, m + 1):
            for y in np.linspace(ymin, ymax, m + 1):
                used += 1
                v = f(float(x), float(y))
                if v < best[0]:
                    best = (v, (float(x), float(y)))
        history.append((m, best[0]))
    return best, used, history


def _planar_point(p):
    if not isinstance(p, Planar):
        raise UnestimableRegion("distance estimation is only available for planar points")
    return p


def boundary_distance(norm, p, r, budget=64, starts=8, levels=None):
    """Distance from ``p`` to the frontier of ``r``, wherever ``p`` lies."""
    p = _planar_point(p)
    if r.boundary is None:
        raise UnestimableRegion(f"region {r.name!r} has no boundary parametrization")
    fn = geo.planar_fn(norm)
    px, py = p.x, p.y
    bd = r.boundary

    def f(t):
        x, y = bd(t)
        return fn(px - x, py - y)

    t, v, used, hist = _curve_search(f, r.t_range, r.periodic, levels or _levels(budget), starts)
    return DistanceEstimate(v, (p, r.boundary_point(t)), used, hist)


def point_to_set_distance(norm, p, r, budget=64, starts=8, levels=None):
    """Estimate ``dist(p, r)``; exactly zero when ``p`` is a member."""
    if r.space != "planar":
        raise UnestimableRegion(f"region {r.name!r} is not planar")
    p = _planar_point(p)
    if r.contains(p):
        return DistanceEstimate(0.0, (p, p), 0, [(0, 0.0)])
    if r.boundary is not None:
        return boundary_distance(norm, p, r, budget, starts, levels)
    if r.bbox is not None:
        fn = geo.planar_fn(norm)

        def f(x, y):
            return fn(p.x - x, p.y - y) if r.contains(Planar(x, y)) else math.inf

        (v, xy), used, hist = _box_search(f, r.bbox, levels or _levels(budget))
        if xy is None:
            raise UnestimableRegion(f"no member of {r.name!r} found in its bounding box")
        return DistanceEstimate(v, (p, Planar(*xy)), used, hist)
    raise UnestimableRegion(f"region {r.name!r} has neither boundary nor bounding box")


def set_distance(norm, a, b, budget=64, starts=8):
    """Estimate ``dist(a, b) = inf rho(x, y)`` over ``x in a``, ``y in b``.

    For two :class:`ProductRegion` arguments the metric is the sum metric
    on pairs.
    """
    if isinstance(a, ProductRegion) or isinstance(b, ProductRegion):
        return _product_set_distance(norm, a, b, budget, starts)
    for r in (a, b):
        if not r.estimable:
            raise UnestimableRegion(f"region {r.name!r} is not estimable")
    if a.boundary is None and b.boundary is not None:
        est = set_distance(norm, b, a, budget, starts)
        q, p = est.argmin_pair
        return DistanceEstimate(est.value, (p, q), est.budget_used, est.refinement_history)
    if a.boundary is None:
        return _sampled_set_distance(norm, a, b, budget)

    # overlap: some frontier point of one set lies in the other
    for r, s in ((a, b), (b, a)):
        if r.boundary is None:
            continue
        lo, hi = r.t_range
        for t in np.linspace(lo, hi, budget + 1):
            q = r.boundary_point(float(t))
            if s.contains(q):
                pair = (q, q)
                return DistanceEstimate(0.0, pair, budget + 1, [(budget, 0.0)])

    inner_levels = [budget]
    cache = {}

    def g(t):
        est = point_to_set_distance(norm, a.boundary_point(t), b, levels=inner_levels, starts=3)
        cache[t] = est
        return est.value

    t, v, used, hist = _curve_search(g, a.t_range, a.periodic, _levels(budget), starts, tol=1e-11)
    est = cache[t]
    return DistanceEstimate(v, est.argmin_pair, used, hist)


def _sampled_set_distance(norm, a, b, budget):
    pa = a.sample(budget, rng=0)
    pb = b.sample(budget, rng=1)
    best = (math.inf, None)
    for p in pa:
        for q in pb:
            d = geo.metric(norm, p, q)
            if d < best[0]:
                best = (d, (p, q))
    if best[1] is None:
        raise UnestimableRegion("no sample points found")
    return DistanceEstimate(best[0], best[1], len(pa) * len(pb), [(budget, best[0])])


def _product_set_distance(norm, a, b, budget, starts):
    """Coordinate descent over the four frontier parameters of ``a`` and ``b``.

    The objective is ``rho(a1(s1), b1(t1)) + rho(a2(s2), b2(t2))``, minimized
    one parameter at a time by golden section from the best coarse-grid
    combinations.
    """
    if not (isinstance(a, ProductRegion) and isinstance(b, ProductRegion)):
        raise PreconditionError("product distance needs two product regions")
    regs = [a.first, b.first, a.second, b.second]
    for r in regs:
        if r.boundary is None:
            raise UnestimableRegion(f"region {r.name!r} has no boundary parametrization")
    fn = geo.planar_fn(norm)
    bds = [r.boundary for r in regs]

    def obj(ts):
        x1, y1 = bds[0](ts[0])
        u1, v1 = bds[1](ts[1])
        x2, y2 = bds[2](ts[2])
        u2, v2 = bds[3](ts[3])
        return fn(x1 - u1, y1 - v1) + fn(x2 - u2, y2 - v2)

    m = min(budget, 32)
    grids = [np.linspace(r.t_range[0], r.t_range[1], m, endpoint=not r.periodic) for r in regs]

    def factor_starts(i, j):
        cand = []
        for s in grids[i]:
            xs, ys = bds[i](float(s))
            for t in grids[j]:
                xt, yt = bds[j](float(t))
                cand.append((fn(xs - xt, ys - yt), float(s), float(t)))
        cand.sort()
        return cand[:2]

    used = 2 * m * m
    best_v, best_ts = math.inf, None
    history = []
    for c1 in factor_starts(0, 1):
        for c2 in factor_starts(2, 3):
            ts = [c1[1], c1[2], c2[1], c2[2]]
            v = obj(ts)
            for _sweep in range(60):
                prev = v
                for k in range(4):
                    r = regs[k]
                    lo, hi = r.t_range
                    span = (hi - lo) / m
                    a_, b_ = ts[k] - 2 * span, ts[k] + 2 * span
                    if not r.periodic:
                        a_, b_ = max(a_, lo), min(b_, hi)

                    def f1(t, k=k):
                        tt = list(ts)
                        tt[k] = t
                        return obj(tt)

                    t, fv, n = golden_section(f1, a_, b_, tol=1e-13)
                    used += n
                    if fv <= v:
                        ts[k], v = t, fv
                if prev - v <= 1e-15:
                    break
            if v < best_v:
                best_v, best_ts = v, ts
            history.append((used, best_v))
    pts = [r.boundary_point(t) for r, t in zip(regs, best_ts)]
    return DistanceEstimate(best_v, ((pts[0], pts[2]), (pts[1], pts[3])), used, history)


class InclusionResult:
    """Truthy when every probe of the ball was a member; else holds the violator."""

    __slots__ = ("ok", "violator", "probes")

    def __init__(self, ok, violator=None, probes=0):
        self.ok = ok
        self.violator = violator
        self.probes = probes

    def __bool__(self):
        return self.ok

    def __repr__(self):
        return f"InclusionResult(ok={self.ok}, violator={self.violator})"


def midpoint_ball_inclusion(norm, r, x, y, radius, probes=32):
    """Probe whether the open ball ``B((x+y)/2, radius)`` lies inside ``r``.

    Probes are ``probes`` points on the sphere of radius just under
    ``radius`` plus an interior grid of about ``probes`` points.
    """
    if probes < 16:
        raise PreconditionError("probes must be >= 16")
    if not (r.contains(x) and r.contains(y)):
        raise PreconditionError("x and y must both lie in the region")
    if radius <= 0:
        raise PreconditionError("radius must be positive")
    m = x.midpoint(y)
    rr = radius * (1.0 - 1e-9)
    count = 0
    # sphere first: the farthest probes fail first
    for k in range(probes):
        u = geo.sphere_point(norm, 2 * math.pi * k / probes)
        q = Planar(m.x + rr * u.x, m.y + rr * u.y)
        count += 1
        if not r.contains(q):
            return InclusionResult(False, q, count)
    side = max(2, int(math.ceil(math.sqrt(probes))))
    fn = geo.planar_fn(norm)
    for i in range(side + 1):
        for j in range(side + 1):
            dx = -rr + 2 * rr * i / side
            dy = -rr + 2 * rr * j / side
            if fn(dx, dy) >= rr:
                continue
            q = Planar(m.x + dx, m.y + dy)
            count += 1
            if not r.contains(q):
                return InclusionResult(False, q, count)
    return InclusionResult(True, None, count)


# ---------------------------------------------------------------------------
# catalog

def _polygon(vertices):
    """Periodic perimeter parametrization over ``[0, 1)`` by arclength fraction."""
    vs = [tuple(map(float, v)) for v in vertices]
    segs = list(zip(vs, vs[1:] + vs[:1]))
    lens = [math.hypot(b[0] - a[0], b[1] - a[1]) for a, b in segs]
    total = sum(lens)
    cum = [0.0]
    for ln in lens:
        cum.append(cum[-1] + ln / total)

    def boundary(t):
        t = t % 1.0
        for (a, b), c0, c1 in zip(segs, cum, cum[1:]):
            if t <= c1:
                s = (t - c0) / (c1 - c0)
                return a[0] + s * (b[0] - a[0]), a[1] + s * (b[1] - a[1])
        a = vs[0]
        return a

    return boundary


def _bbox_of(vertices, pad=0.0):
    xs = [v[0] for v in vertices]
    ys = [v[1] for v in vertices]
    return (min(xs) - pad, max(xs) + pad, min(ys) - pad, max(ys) + pad)


def _hyperbola_A(t):
    x = math.exp(t)
    return x, 1.0 / x


def _hyperbola_B(t):
    x = math.exp(t) - 1.0
    return x, 1.0 / (x + 1.0) - 1.0


def _hyperbola_B28(t):
    x = -math.exp(t)
    return x, 1.0 / (-x)


def _circle(radius):
    def boundary(t):
        a = 2 * math.pi * t
        return radius * math.cos(a), radius * math.sin(a)
    return boundary


_CURVE_T = (-LOG_BOX, LOG_BOX)


def _in_A(p):
    return p.x > 0 and p.y >= 1.0 / p.x


def _in_B1(p):
    return p.x > -1 and p.y <= 1.0 / (p.x + 1.0) - 1.0


def _make_catalog():
    tri_A = [(0, 1), (1, 0), (0, -1)]
    tri_B15 = [(2, 0), (4, -2), (4, 2)]
    rect_C15 = [(5, -0.5), (6, -0.5), (6, 0.5), (5, 0.5)]
    diamond_B16 = [(2, 0), (3, -1), (4, 0), (3, 1)]
    tri_C16 = [(5, 0), (6, -1), (6, 1)]
    tri_coupled = [(2, 0), (3, -1), (3, 1)]

    def poly(name, verts, pred, desc, figure=False):
        return Region(name, pred, _polygon(verts), (0.0, 1.0), True, _bbox_of(verts), desc, figure)

    cat = {}

    def add(r):
        cat[r.name] = r

    add(poly("ex15_A", tri_A, lambda p: -_S <= p.x <= 1 + _S and abs(p.y) <= 1 - p.x + _S,
             "0 <= x <= 1, |y| <= 1 - x", True))
    add(poly("ex15_B", tri_B15, lambda p: 2 - _S <= p.x <= 4 + _S and abs(p.y) <= p.x - 2 + _S,
             "2 <= x <= 4, |y| <= x - 2", True))
    add(poly("ex15_C", rect_C15, lambda p: 5 - _S <= p.x <= 6 + _S and abs(p.y) <= 0.5 + _S,
             "5 <= x <= 6, |y| <= 1/2", True))
    add(poly("ex16_A", tri_A, lambda p: -_S <= p.x <= 1 + _S and abs(p.y) <= 1 - p.x + _S,
             "0 <= x <= 1, |y| <= 1 - x", True))
    add(poly("ex16_B", diamond_B16, lambda p: abs(p.x - 3) + abs(p.y) <= 1 + _S,
             "|x - 3| + |y| <= 1", True))
    add(poly("ex16_C", tri_C16, lambda p: 5 - _S <= p.x <= 6 + _S and abs(p.y) <= p.x - 5 + _S,
             "5 <= x <= 6, |y| <= x - 5", True))
    add(poly("coupled_B", tri_coupled, lambda p: 2 - _S <= p.x <= 3 + _S and abs(p.y) <= p.x - 2 + _S,
             "2 <= x <= 3, |y| <= x - 2 (mirror image of ex15_A in x = 3/2)"))

    for name in ("ex43_A", "ex28_A", "ex49_A"):
        add(Region(name, _in_A, _hyperbola_A, _CURVE_T, description="y >= 1/x, x > 0"))
    add(Region("ex43_B", _in_B1, _hyperbola_B, _CURVE_T, description="y <= 1/(x+1) - 1, x > -1"))
    add(Region("ex49_B1", _in_B1, _hyperbola_B, _CURVE_T, description="y <= 1/(x+1) - 1, x > -1"))
    add(Region("ex49_B2", lambda p: p.x <= -1, lambda t: (-1.0, t), (-BOX_HALF, BOX_HALF),
               description="x <= -1"))
    add(Region("ex49_B", lambda p: p.x <= -1 or _in_B1(p), _hyperbola_B, _CURVE_T,
               description="B1 union B2: x <= -1, or x > -1 and y <= 1/(x+1) - 1"))
    add(Region("ex49_Abar", lambda p: p.x > 0 and p.y == 1.0 / p.x, _hyperbola_A, _CURVE_T,
               description="y = 1/x, x > 0 (curve)"))
    add(Region("ex49_Bbar", lambda p: p.x > -1 and p.y == 1.0 / (p.x + 1.0) - 1.0, _hyperbola_B,
               _CURVE_T, description="y = 1/(x+1) - 1, x > -1 (curve)"))
    add(Region("ex28_B", lambda p: p.x < 0 and p.y >= 1.0 / (-p.x), _hyperbola_B28, _CURVE_T,
               description="y >= 1/|x|, x < 0"))
    add(Region("unit_ball_l2", lambda p: math.hypot(p.x, p.y) <= 1.0, _circle(1.0), (0.0, 1.0), True,
               (-1.0, 1.0, -1.0, 1.0), "x^2 + y^2 <= 1"))
    add(Region("shell2_l2", lambda p: math.hypot(p.x, p.y) >= 2.0, _circle(2.0), (0.0, 1.0), True,
               (-6.0, 6.0, -6.0, 6.0), "x^2 + y^2 >= 4 (clipped to |x|,|y| <= 6)"))
    add(Region("halfplane_upper", lambda p: p.y >= 0, lambda t: (t, 0.0), (-BOX_HALF, BOX_HALF),
               description="y >= 0"))

    def _blocks_norm(p):
        return geo.norm_eval(geo.PRODUCT, p) if isinstance(p, Blocks) else math.nan

    add(Region("ball_X", lambda p: _blocks_norm(p) <= 1.0 + BALL_SLACK, bbox=None, space="blocks",
               description="||x|| <= 1 in the l2-product of (R^2, l_n), n >= 2"))
    add(Region("shell_X", lambda p: _blocks_norm(p) >= 2.0 - BALL_SLACK, bbox=None, space="blocks",
               description="||x|| >= 2 in the l2-product of (R^2, l_n), n >= 2"))
    return cat


_CATALOG = _make_catalog()
REGION_NAMES = tuple(_CATALOG)


def corpus_region(name) -> Region:
    try:
        return _CATALOG[name]
    except KeyError:
        raise CatalogError("region", name, REGION_NAMES) from None


@dataclass(frozen=True)
class CorpusPair:
    """An ordered pair of corpus sets with the norm it is studied under.

    ``dist`` is the reference value of ``dist(a, b)``; ``dist_tol`` the
    tolerance an estimate must meet.  ``analytic`` marks pairs whose
    distance cannot be estimated by sampling and is supplied instead.
    """

    name: str
    norm: geo.Norm
    a: str
    b: str
    dist: float
    dist_tol: float = 1e-6
    analytic: bool = False
    note: str = ""

    @property
    def region_a(self):
        return corpus_region(self.a)

    @property
    def region_b(self):
        return corpus_region(self.b)


_PAIRS = {
    p.name: p
    for p in [
        CorpusPair("ex15_AB", geo.L1, "ex15_A", "ex15_B", 1.0),
        CorpusPair("ex15_BC", geo.LINF, "ex15_B", "ex15_C", 1.0),
        CorpusPair("ex16_AB", geo.LINF, "ex16_A", "ex16_B", 1.0),
        CorpusPair("ex16_BC", geo.LINF, "ex16_B", "ex16_C", 1.0),
        CorpusPair("ex28_l2", geo.L2, "ex28_A", "ex28_B", 0.0, 5e-3,
                   note="infimum 0 approached along the y-axis; box clipping leaves ~2e-4"),
        CorpusPair("ex28_linf", geo.LINF, "ex28_A", "ex28_B", 0.0, 5e-3,
                   note="infimum 0 approached along the y-axis; box clipping leaves ~2e-4"),
        CorpusPair("ex43", geo.LINF, "ex43_A", "ex43_B", 1.0),
        CorpusPair("ex49", geo.LINF, "ex49_A", "ex49_B", 1.0),
        CorpusPair("ex50", geo.PRODUCT, "ball_X", "shell_X", 1.0, analytic=True,
                   note="||y - x|| >= ||y|| - ||x|| >= 1, attained in block 2"),
        CorpusPair("coupled", geo.L1, "ex15_A", "coupled_B", 1.0),
        CorpusPair("sphere_shell_l2", geo.L2, "unit_ball_l2", "shell2_l2", 1.0),
    ]
}
PAIR_NAMES = tuple(_PAIRS)


def corpus_pair(name) -> CorpusPair:
    try:
        return _PAIRS[name]
    except KeyError:
        raise CatalogError("pair", name, PAIR_NAMES) from None


def catalog_dict():
    """JSON-ready description of every corpus region and pair."""
    regions = []
    for r in _CATALOG.values():
        regions.append({
            "name": r.name,
            "inequality": r.description,
            "space": r.space,
            "bounding_box": list(r.bbox) if r.bbox is not None else None,
            "has_boundary": r.boundary is not None,
            "figure_reconstruction": r.figure_reconstruction,
        })
    pairs = [
        {"name": p.name, "norm": str(p.norm), "a": p.a, "b": p.b, "dist": p.dist,
         "dist_tol": p.dist_tol, "analytic": p.analytic, "note": p.note}
        for p in _PAIRS.values()
    ]
    return {"schema": 1, "regions": regions, "pairs": pairs}


def catalog_json():
    return json.dumps(catalog_dict(), indent=2, sort_keys=True) + "\n"


def shipped_catalog():
    """The catalog JSON installed with the package."""
    from importlib.resources import files

    return files("bestprox").joinpath("data/catalog.json").read_text()
