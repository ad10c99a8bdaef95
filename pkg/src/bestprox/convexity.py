"""Moduli of convexity and uniform-convexity checks for sets.

The modulus of a planar norm is searched on the unit sphere.  For each
angle of ``x`` the partner ``y`` is pushed counterclockwise until
``||x - y|| = eps``; moving further only shortens the midpoint, so the
search is one-dimensional in the angle of ``x``.  The directional modulus
reduces to the chords of the unit ball parallel to ``z``.

Every reported modulus is attained by a concrete pair, so it is an upper
bound on the true infimum.

Checks on sets work inside a bounding box: uniformity over an unbounded
set cannot be sampled, and the box used is part of every result.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from . import geometry as geo
from ._search import bisect_last_true, golden_section, local_minima_order
from .errors import DomainError, PreconditionError, UnestimableRegion
from .geometry import Planar
from .regions import Region, boundary_distance, midpoint_ball_inclusion

__all__ = [
    "ModulusCurve", "ModulusEstimate", "modulus_of_convexity", "directional_modulus",
    "modulus_curve", "analytic_l2_modulus",
    "PhiFunction", "example39_phi", "check_positive_property", "PositiveResult",
    "EtaResult", "check_uniformly_convex_set", "PhiCheckResult", "check_uc_about_phi",
    "example41_covers",
]

# pairs with ||x - y|| >= eps - FEAS_SLACK count as eps-separated
FEAS_SLACK = 1e-12


def analytic_l2_modulus(eps):
    return 1.0 - math.sqrt(max(0.0, 1.0 - eps * eps / 4.0))


def _check_eps(epsilon):
    if not (0.0 < epsilon <= 2.0):
        raise DomainError(f"epsilon must lie in (0, 2], got {epsilon}")


def _check_planar(norm):
    if not norm.planar:
        raise DomainError(f"{norm} is not a planar norm")


@dataclass
class ModulusEstimate:
    """Value of a modulus search with the pair attaining it.

    ``bound`` is the half-width of the final grid cell in the search
    parameter; the norm being 1-Lipschitz, it is a heuristic bound on how
    far the grid could have missed the infimum before refinement.
    """

    value: float
    x: Planar
    y: Planar
    bound: float
    evaluations: int


def modulus_of_convexity(norm, epsilon, budget=256, full_output=False):
    """Estimate ``delta(eps) = inf {1 - ||(x+y)/2|| : x, y in B, ||x-y|| >= eps}``.

    Parameters
    ----------
    norm : Norm
        A planar norm.
    epsilon : float
        Separation in ``(0, 2]``.
    budget : int
        Number of grid angles for ``x``; at least 64.
    full_output : bool
        Return a :class:`ModulusEstimate` instead of the bare value.
    """
    _check_planar(norm)
    _check_eps(epsilon)
    if budget < 64:
        raise PreconditionError("budget must be >= 64")
    fn = geo.planar_fn(norm)
    evals = 0

    def sphere(theta):
        c, s = math.cos(theta), math.sin(theta)
        r = fn(c, s)
        return c / r, s / r

    def partner(theta):
        # largest counterclockwise offset with ||x - y|| still short of eps
        nonlocal evals
        x = sphere(theta)

        def short(phi):
            nonlocal evals
            evals += 1
            y = sphere(theta + phi)
            return fn(x[0] - y[0], x[1] - y[1]) < epsilon

        phi = bisect_last_true(short, 0.0, math.pi, iters=80)
        y = sphere(theta + phi)
        if fn(x[0] - y[0], x[1] - y[1]) < epsilon - FEAS_SLACK:
            # step just past the crossing
            for _ in range(64):
                phi = math.nextafter(phi, math.inf)
                y = sphere(theta + phi)
                if fn(x[0] - y[0], x[1] - y[1]) >= epsilon - FEAS_SLACK:
                    break
        return x, y

    cache = {}

    def h(theta):
        x, y = partner(theta)
        v = 1.0 - fn((x[0] + y[0]) / 2, (x[1] + y[1]) / 2)
        cache[theta] = (x, y)
        return v

    step = 2 * math.pi / budget
    thetas = [i * step for i in range(budget)]
    vals = [h(t) for t in thetas]
    best_i = min(range(budget), key=lambda i: (vals[i], i))
    best_t, best_v = thetas[best_i], vals[best_i]
    for i in local_minima_order(vals, 8, periodic=True):
        t, v, _ = golden_section(h, thetas[i] - step, thetas[i] + step, tol=1e-13)
        if v < best_v:
            best_t, best_v = t, v
    x, y = cache[best_t]
    value = max(best_v, 0.0)
    if not full_output:
        return value
    return ModulusEstimate(value, Planar(*x), Planar(*y), step / 2, evals)


def directional_modulus(norm, z, epsilon, budget=256, full_output=False):
    """Estimate the modulus restricted to pairs with ``x - y`` parallel to ``z``.

    With ``zh = z/||z||`` the infimum equals
    ``inf {1 - ||m|| : m +- (eps/2) zh in B}``.  Writing ``m = s w + tau zh``
    for a fixed complement ``w``, each ``s`` gives a chord of the ball,
    the feasible ``tau`` form an interval, and ``||m||`` peaks at one of its
    ends.  The feasible ``s`` form an interval too since chord length is
    concave in ``s``.
    """
    _check_planar(norm)
    _check_eps(epsilon)
    if not isinstance(z, Planar):
        raise DomainError("direction must be a planar point")
    if z.x == 0.0 and z.y == 0.0:
        raise DomainError("direction z must be nonzero")
    if budget < 64:
        raise PreconditionError("budget must be >= 64")
    fn = geo.planar_fn(norm)
    nz = fn(z.x, z.y)
    zh = (z.x / nz, z.y / nz)
    wx, wy = -zh[1], zh[0]
    nw = fn(wx, wy)
    w = (wx / nw, wy / nw)
    half = epsilon / 2.0
    big = 4.0 * max(1.0, 1.0 / min(fn(1.0, 0.0), fn(0.0, 1.0)))

    def pt(s, tau):
        return s * w[0] + tau * zh[0], s * w[1] + tau * zh[1]

    def chord(s):
        # (tau_lo, tau_hi) of the line s*w + R*zh inside the unit ball, or None
        tc, vc, _ = golden_section(lambda t: fn(*pt(s, t)), -big, big, tol=1e-14)
        if vc > 1.0:
            return None
        inside = lambda t: fn(*pt(s, t)) <= 1.0
        hi = bisect_last_true(inside, tc, big)
        lo = -bisect_last_true(lambda t: inside(-t), -tc, big)
        return lo, hi

    def length(s):
        c = chord(s)
        return -math.inf if c is None else c[1] - c[0]

    s0, _, _ = golden_section(lambda s: -length(s), -big, big, tol=1e-14)
    if length(s0) < epsilon - FEAS_SLACK:
        raise PreconditionError("no chord of the unit ball is long enough")
    if length(s0) < epsilon:
        # only the longest chord qualifies, up to round-off
        s_lo = s_hi = s0
    else:
        feasible = lambda s: length(s) >= epsilon
        s_hi = bisect_last_true(feasible, s0, big)
        s_lo = -bisect_last_true(lambda s: feasible(-s), -s0, big)

    def best_m(s):
        lo, hi = chord(s)
        cands = [pt(s, lo + half), pt(s, hi - half)]
        return max(cands, key=lambda m: fn(*m))

    def obj(s):
        return 1.0 - fn(*best_m(s))

    m = budget
    step = (s_hi - s_lo) / m
    ss = [s_lo + i * step for i in range(m)] + [s_hi] if step > 0 else [s0]
    vals = [obj(s) for s in ss]
    best_i = min(range(len(ss)), key=lambda i: (vals[i], i))
    best_s, best_v = ss[best_i], vals[best_i]
    for i in local_minima_order(vals, 8):
        a, b = max(ss[i] - step, s_lo), min(ss[i] + step, s_hi)
        s, v, _ = golden_section(obj, a, b, tol=1e-13)
        if v < best_v:
            best_s, best_v = s, v
    value = max(best_v, 0.0)
    if not full_output:
        return value
    mx, my = best_m(best_s)
    x = Planar(mx + half * zh[0], my + half * zh[1])
    y = Planar(mx - half * zh[0], my - half * zh[1])
    return ModulusEstimate(value, x, y, step / 2, 0)


@dataclass
class ModulusCurve:
    norm: geo.Norm
    direction: Optional[Planar]
    samples: list
    budget: int
    bounds: list = field(default_factory=list)

    def to_csv(self, path=None):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["epsilon", "delta", "bound"])
        for (eps, d), b in zip(self.samples, self.bounds):
            w.writerow([repr(float(eps)), repr(float(d)), repr(float(b))])
        text = buf.getvalue()
        if path is not None:
            with open(path, "w", newline="") as fh:
                fh.write(text)
        return text


def modulus_curve(norm, epsilons, budget=256, direction=None):
    """Modulus (or directional modulus) on a strictly increasing grid of epsilons."""
    eps = [float(e) for e in epsilons]
    if any(b <= a for a, b in zip(eps, eps[1:])):
        raise DomainError("epsilons must be strictly increasing")
    samples, bounds = [], []
    for e in eps:
        if direction is None:
            est = modulus_of_convexity(norm, e, budget, full_output=True)
        else:
            est = directional_modulus(norm, direction, e, budget, full_output=True)
        samples.append((e, est.value))
        bounds.append(est.bound)
    return ModulusCurve(norm, direction, samples, budget, bounds)


# ---------------------------------------------------------------------------
# functions with the positive property

@dataclass(frozen=True)
class PhiFunction:
    """A positive function of a point and a separation.

    ``monotone_from``: ``phi(x, .)`` is nondecreasing for ``eps`` at or past
    this value.  ``tail_bound``: a lower bound on ``phi`` valid for every
    ``eps`` past the search cap.  Without either, searches report an
    inconclusive verdict beyond the cap.
    """

    name: str
    evaluator: Callable[[Planar, float], float]
    monotone_from: Optional[float] = None
    tail_bound: Optional[float] = None
    tail_limit: Optional[float] = None

    def __call__(self, x, eps):
        return self.evaluator(x, eps)


def example39_phi(norm=geo.LINF):
    """``phi(x, eps) = eps^2 / (320 + 5 eps^2 + 5 ||x||^3)``; increasing in ``eps``, limit 1/5."""

    def ev(x, eps):
        r = geo.norm_eval(norm, x)
        return eps * eps / (320.0 + 5.0 * eps * eps + 5.0 * r ** 3)

    return PhiFunction("example39", ev, monotone_from=0.0, tail_limit=0.2)


@dataclass
class PositiveResult:
    inf_estimate: float
    attained_at: tuple
    verdict: str
    eps_cap: float
    box: tuple
    evaluations: int

    @property
    def positive(self):
        return self.verdict == "positive" and self.inf_estimate > 0


def check_positive_property(phi, r, bounded_box, epsilon0, budget=64, rng=0):
    """Search ``inf {phi(x, eps) : x in r and box, eps >= epsilon0}``.

    The separations searched run from ``epsilon0`` to twice the box
    diameter; beyond that the verdict leans on ``phi``'s declared
    monotonicity or tail bound.
    """
    if epsilon0 <= 0:
        raise PreconditionError("epsilon0 must be positive")
    xmin, xmax, ymin, ymax = bounded_box
    side = max(2, int(math.isqrt(budget)))
    pts = []
    for x in np.linspace(xmin, xmax, side + 1):
        for y in np.linspace(ymin, ymax, side + 1):
            p = Planar(float(x), float(y))
            if r.contains(p):
                pts.append(p)
    pts += r.sample(budget, rng=rng, box=bounded_box)
    if not pts:
        raise PreconditionError(f"box {bounded_box} does not meet region {r.name!r}")
    cap = max(2.0 * math.hypot(xmax - xmin, ymax - ymin), 2.0 * epsilon0)
    eps_grid = np.linspace(epsilon0, cap, budget + 1)
    best = (math.inf, None, None)
    n = 0
    for p in pts:
        vals = [phi(p, float(e)) for e in eps_grid]
        n += len(vals)
        i = min(range(len(vals)), key=lambda k: (vals[k], k))
        lo = float(eps_grid[max(i - 1, 0)])
        hi = float(eps_grid[min(i + 1, len(eps_grid) - 1)])
        e, v, k = golden_section(lambda e: phi(p, e), lo, hi, tol=1e-13)
        n += k
        if vals[i] <= v:
            e, v = float(eps_grid[i]), vals[i]
        if v < best[0]:
            best = (v, p, e)
    inf_est = best[0]
    if phi.monotone_from is not None and phi.monotone_from <= cap:
        verdict = "positive" if inf_est > 0 else "not positive"
    elif phi.tail_bound is not None:
        inf_est = min(inf_est, phi.tail_bound)
        verdict = "positive" if inf_est > 0 else "not positive"
    else:
        verdict = "inconclusive beyond eps_cap"
    return PositiveResult(inf_est, (best[1], best[2]), verdict, cap, tuple(bounded_box), n)


# ---------------------------------------------------------------------------
# uniformly convex sets

def _pairs(r, pair_budget, rng, box):
    # an eighth of the pairs join two frontier points, where midpoints sit closest to the edge
    rng = np.random.default_rng(rng)
    pairs = []
    if r.boundary is not None:
        fr = r.frontier_sample(max(pair_budget // 8, 2), box)
        partner = [fr[i] for i in rng.permutation(len(fr))]
        pairs = list(zip(fr, partner))
    pts = r.sample(2 * (pair_budget - len(pairs)), rng=rng, box=box)
    order = rng.permutation(len(pts))
    pts = [pts[i] for i in order]
    return pairs + list(zip(pts[0::2], pts[1::2]))


@dataclass
class EtaResult:
    """Per-epsilon outcome: an ``eta`` estimate or a counterexample pair."""

    epsilon: float
    eta_estimate: Optional[float]
    counterexample: Optional[tuple]
    pairs_used: int
    box: Optional[tuple]


def check_uniformly_convex_set(norm, r: Region, epsilons, pair_budget=256, rng=0, box=None,
                               pairs=None, budget=64):
    """Largest ``eta`` consistent with the sampled pairs, per epsilon.

    For each ``eps`` the estimate is the smallest distance from a midpoint
    of an ``eps``-separated pair to the frontier of ``r``.  A midpoint on
    the frontier admits no ball at all and its pair is returned as a
    counterexample, first in sample order.
    """
    if r.boundary is None:
        raise UnestimableRegion(f"region {r.name!r} has no boundary parametrization")
    if any(e <= 0 for e in epsilons):
        raise PreconditionError("epsilons must be positive")
    box = box or r.bbox
    if pairs is None:
        pairs = _pairs(r, pair_budget, rng, box)
    else:
        pairs = [(Planar(*a) if not isinstance(a, Planar) else a,
                  Planar(*b) if not isinstance(b, Planar) else b) for a, b in pairs]
    out = []
    for eps in epsilons:
        eta, bad, used = math.inf, None, 0
        for x, y in pairs:
            if geo.metric(norm, x, y) < eps:
                continue
            used += 1
            m = x.midpoint(y)
            d = boundary_distance(norm, m, r, budget, starts=3).value if r.contains(m) else 0.0
            if d <= 1e-12 and not midpoint_ball_inclusion(norm, r, x, y, 1e-9):
                bad = (x, y)
                break
            eta = min(eta, d)
        if bad is not None:
            out.append(EtaResult(eps, None, bad, used, box))
        else:
            out.append(EtaResult(eps, eta if used else None, None, used, box))
    return out


@dataclass
class PhiCheckResult:
    passed: bool
    counterexample: Optional[tuple]
    pairs_checked: int
    pairs_skipped: int
    box: Optional[tuple]

    def __bool__(self):
        return self.passed


def check_uc_about_phi(norm, r: Region, phi: PhiFunction, pair_budget=1000, probes=16, rng=0,
                       box=None, pairs=None):
    """Check ``B((x+y)/2, phi((x+y)/2, ||x-y||)) in r`` on sampled pairs.

    Pairs with ``x == y`` are skipped.  The first failing pair is returned.
    """
    box = box or r.bbox
    if pairs is None:
        pairs = _pairs(r, pair_budget, rng, box)
    checked = skipped = 0
    for x, y in pairs:
        eps = geo.metric(norm, x, y)
        if eps == 0.0:
            skipped += 1
            continue
        checked += 1
        m = x.midpoint(y)
        radius = phi(m, eps)
        if not midpoint_ball_inclusion(norm, r, x, y, radius, probes):
            return PhiCheckResult(False, (x, y), checked, skipped, box)
    return PhiCheckResult(True, None, checked, skipped, box)


def example41_covers(p, eps, rel=1e-12):
    """Whether ``p`` lies in ``C(eps) | D(eps)``, the midpoint region for the hyperbola set."""
    x, y = p.x, p.y
    q = eps * eps / 4.0
    in_c = 0 < eps < 2 * y and x >= y / (y * y - q) * (1 - rel)
    in_d = 0 < eps < 2 * x and y >= x / (x * x - q) * (1 - rel)
    return in_c or in_d
