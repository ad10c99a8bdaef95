"""Cyclic maps, Picard iteration to best proximity points, and coupled maps.

A cyclic map sends ``A`` into ``B`` and ``B`` into ``A``.  Under the
contraction condition

    rho(Tx, Ty) <= k rho(x, y) + (1 - k) dist(A, B),   x in A, y in B,

the even iterates ``T^{2n} x0`` converge to the unique best proximity point
on the side of ``x0``.  Convergence is judged on the even subsequence
only; the odd one is reported alongside.

A coupled pair ``F: A x A -> B``, ``G: B x B -> A`` becomes the cyclic map
``T(x, y) = (F(x, y), F(y, x))`` on ``A x A`` and ``B x B`` under the sum
metric, and is solved through that reduction.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from . import geometry as geo
from .errors import BudgetError, CatalogError, MapIntegrityError, PreconditionError
from .geometry import Planar
from .regions import ProductRegion, Region, corpus_region, point_to_set_distance, set_distance

__all__ = [
    "CyclicMapDef", "CoupledMapDef", "IterationTrace", "Certificate",
    "verify_cyclic", "verify_contraction", "iterate", "best_proximity_point",
    "check_iterate_bounds", "coupled_to_cyclic", "coupled_solve",
    "corpus_map", "corpus_coupled", "MAP_NAMES", "COUPLED_NAMES", "point_json",
]


def point_json(p):
    if isinstance(p, tuple):
        return [point_json(q) for q in p]
    return p.as_list()


class CyclicMapDef:
    """A side-tagged map on ``A | B`` with its claimed contraction class.

    Parameters
    ----------
    name : str
    apply : callable
        The map itself.
    domain : (Region, Region)
        The sets ``A`` and ``B``.
    norm : Norm
        Norm inducing the metric on single points.
    claimed_class : {"banach", "suzuki", None}
    k : float, optional
        Claimed contraction constant.
    metric : callable, optional
        Overrides ``rho``; product maps pass the sum metric.
    dist_ab : float, optional
        Known ``dist(A, B)``; estimated on first use otherwise.
    sample_box : tuple, optional
        Box used when sampling the domain for verification.
    proximal_pair : tuple, optional
        A pair attaining ``dist(A, B)``; verification samples around it.
    """

    def __init__(self, name, apply, domain, norm, claimed_class=None, k=None, metric=None,
                 dist_ab=None, sample_box=None, proximal_pair=None):
        self.name = name
        self._apply = apply
        self.domain = domain
        self.norm = norm
        self.claimed_class = claimed_class
        self.k = k
        self.metric = metric or (lambda p, q: geo.metric(norm, p, q))
        self._dist = dist_ab
        self.sample_box = sample_box
        self.proximal_pair = proximal_pair

    def side_of(self, p):
        a, b = self.domain
        if a.contains(p):
            return "A"
        if b.contains(p):
            return "B"
        return None

    def apply(self, p):
        return self._apply(p)

    __call__ = apply

    @property
    def dist_ab(self):
        if self._dist is None:
            a, b = self.domain
            self._dist = set_distance(self.norm, a, b, budget=64).value
        return self._dist

    def _sample(self, side, n, rng):
        r = self.domain[0 if side == "A" else 1]
        if isinstance(r, ProductRegion):
            return r.sample(n, rng, box=self.sample_box)
        return r.sample(n, rng, box=self.sample_box)


@dataclass
class CyclicReport:
    ok: bool
    violator: Optional[object]
    checked: int

    def __bool__(self):
        return self.ok


def verify_cyclic(m: CyclicMapDef, samples=1000, rng=0):
    """Check ``T(A) in B`` and ``T(B) in A`` on sampled points."""
    rng = np.random.default_rng(rng)
    a, b = m.domain
    checked = 0
    for side, target in (("A", b), ("B", a)):
        for p in m._sample(side, samples // 2, rng):
            checked += 1
            if not target.contains(m.apply(p)):
                return CyclicReport(False, p, checked)
    return CyclicReport(True, None, checked)


@dataclass
class ContractionReport:
    max_violation: float
    worst_pair: Optional[tuple]
    pairs_checked: int
    kind: str
    k: float

    @property
    def ok(self):
        return self.max_violation <= 1e-9

    def __bool__(self):
        return self.ok


def verify_contraction(m: CyclicMapDef, k, pair_samples=10_000, rng=0, kind=None):
    """Largest violation of the contraction inequality over sampled cross pairs.

    Half the pairs are uniform over the (clipped) sets.  A quarter join two
    frontier points, where the bound is tight, and the rest are drawn near
    the estimated proximal pair.  ``kind`` is ``"banach"`` for
    ``k rho(x, y)`` or ``"suzuki"`` for ``k max{rho(x, y), rho(x, Tx), rho(y, Ty)}``;
    it defaults to the map's claimed class.
    """
    if not (0 < k < 1):
        raise PreconditionError(f"k must lie in (0, 1), got {k}")
    kind = kind or m.claimed_class or "banach"
    rng = np.random.default_rng(rng)
    a, b = m.domain
    d = m.dist_ab
    n_uni = pair_samples // 2
    n_front = pair_samples // 4
    n_near = pair_samples - n_uni - n_front
    xs = m._sample("A", n_uni, rng)
    ys = m._sample("B", n_uni, rng)
    pairs = list(zip(xs, ys))
    if isinstance(a, Region) and a.boundary is not None and b.boundary is not None:
        fa = a.frontier_sample(n_front, m.sample_box)
        fb = b.frontier_sample(n_front, m.sample_box)
        if fa and fb:
            ia = rng.integers(0, len(fa), n_front)
            ib = rng.integers(0, len(fb), n_front)
            pairs += [(fa[i], fb[j]) for i, j in zip(ia, ib)]
        n_near = pair_samples - len(pairs)
    if isinstance(a, Region):
        p, q = m.proximal_pair or set_distance(m.norm, a, b, budget=64).argmin_pair
        xs = a.sample(n_near, rng, near=p, radius=1.0)
        ys = b.sample(n_near, rng, near=q, radius=1.0)
        pairs += list(zip(xs, ys))
    else:
        xs = m._sample("A", n_near, rng)
        ys = m._sample("B", n_near, rng)
        pairs += list(zip(xs, ys))
    worst, worst_pair = -math.inf, None
    rho = m.metric
    for x, y in pairs:
        tx, ty = m.apply(x), m.apply(y)
        lhs = rho(tx, ty)
        base = rho(x, y)
        if kind == "suzuki":
            base = max(base, rho(x, tx), rho(y, ty))
        v = lhs - (k * base + (1 - k) * d)
        if v > worst:
            worst, worst_pair = v, (x, y)
    return ContractionReport(worst, worst_pair, len(pairs), kind, k)


@dataclass
class Certificate:
    proximity: float
    dist_ab: float
    residual: float

    def to_json(self):
        return {"proximity": self.proximity, "dist_ab": self.dist_ab, "residual": self.residual}


@dataclass
class IterationTrace:
    """Iterates ``x_0, x_1, ...`` with ``gaps[n] = rho(x_n, x_{n-1})`` and ``proximities[n] = rho(x_n, T x_n)``.

    ``gaps[0]`` is None.  ``converged_at`` is the index of ``limit_even``;
    the trace also holds its image.  ``proximities`` is one shorter than ``iterates``
    only when the map was never applied to the last iterate.
    """

    iterates: list
    gaps: list
    proximities: list
    dist_ab: float
    converged: bool
    limit_even: Optional[object] = None
    limit_odd: Optional[object] = None
    tol: float = 0.0
    map_name: str = ""
    certificate: Optional[Certificate] = None
    converged_at: Optional[int] = None

    @property
    def steps(self):
        return len(self.iterates) - 1

    def to_jsonl(self, path=None):
        lines = []
        for n, p in enumerate(self.iterates):
            prox = self.proximities[n] if n < len(self.proximities) else None
            lines.append(json.dumps({"n": n, "point": point_json(p), "gap": self.gaps[n],
                                     "proximity": prox}))
        tail = {
            "schema": 1,
            "map": self.map_name,
            "converged": self.converged,
            "converged_at": self.converged_at,
            "dist_ab": self.dist_ab,
            "limit_even": point_json(self.limit_even) if self.limit_even is not None else None,
            "limit_odd": point_json(self.limit_odd) if self.limit_odd is not None else None,
            "certificate": self.certificate.to_json() if self.certificate else None,
        }
        lines.append(json.dumps({"certificate": tail}))
        text = "\n".join(lines) + "\n"
        if path is not None:
            with open(path, "w") as fh:
                fh.write(text)
        return text


def iterate(m: CyclicMapDef, x0, n_max=1000, tol=1e-10):
    """Picard iteration from ``x0``, stopping when the even subsequence settles.

    At each even ``n >= 2`` the run stops if ``rho(x_n, x_{n-2}) < tol`` and
    ``|rho(x_n, T x_n) - dist(A, B)| < tol``.  With ``tol = 0`` the full
    ``n_max`` steps are taken.
    """
    if n_max < 4:
        raise PreconditionError("n_max must be >= 4")
    side = m.side_of(x0)
    if side is None:
        raise PreconditionError("x0 must lie in A or B")
    d = m.dist_ab
    rho = m.metric
    xs, gaps, prox = [x0], [None], []
    converged = False
    for n in range(n_max):
        x = xs[-1]
        nxt = m.apply(x)
        expect = "B" if side == "A" else "A"
        if m.domain[1 if expect == "B" else 0].contains(nxt):
            side = expect
        else:
            got = m.side_of(nxt)
            if got is None:
                raise MapIntegrityError(f"iterate {n + 1} of {m.name} left both sets: {nxt}")
            side = got
        g = rho(x, nxt)
        prox.append(g)
        xs.append(nxt)
        gaps.append(g)
        if tol > 0 and n >= 2 and n % 2 == 0:
            if rho(x, xs[n - 2]) < tol and abs(g - d) < tol:
                converged = True
                break
    trace = IterationTrace(xs, gaps, prox, d, converged, tol=tol, map_name=m.name)
    if converged:
        n = len(xs) - 2
        trace.converged_at = n
        trace.limit_even = xs[n]
        trace.limit_odd = xs[n + 1]
    return trace


def best_proximity_point(m: CyclicMapDef, x0, tol=1e-8, n_max=1000):
    """Limit of ``T^{2n} x0`` with a residual certificate ``|rho(x, Tx) - dist(A, B)|``.

    Raises
    ------
    BudgetError
        When the iteration does not settle within ``n_max`` steps or the
        residual misses ``tol``; the trace is attached.
    """
    trace = iterate(m, x0, n_max, tol)
    if not trace.converged:
        raise BudgetError(f"{m.name}: no convergence within {n_max} steps", trace)
    x = trace.limit_even
    prox = m.metric(x, m.apply(x))
    cert = Certificate(prox, trace.dist_ab, abs(prox - trace.dist_ab))
    trace.certificate = cert
    if cert.residual >= tol:
        raise BudgetError(f"{m.name}: residual {cert.residual:.3g} misses tol {tol}", trace)
    return x, cert


@dataclass
class IterateBoundsReport:
    ok: bool
    gap_ok: bool
    even_ok: bool
    odd_ok: bool
    max_norm: float
    norm_bound: float
    contraction: ContractionReport
    trace: IterationTrace

    def __bool__(self):
        return self.ok


def check_iterate_bounds(m: CyclicMapDef, x0, lam, n_max=1000, pair_samples=2000, rng=0, norm_of=None):
    """Check the gap bound and the closed-form iterate bounds along the orbit of ``x0``.

    With ``C = (2 lam + 1)/(1 - lam)`` the checks are ``rho(x_n, x_{n-1}) <= rho(x_1, x_0)``,
    ``rho(x_{2n}, x_1) <= C rho(x_1, x_0) + dist`` and the same for the
    orbit shifted by one step.  The map must first pass the Suzuki-type
    contraction check with constant ``lam``.
    """
    rep = verify_contraction(m, lam, pair_samples, rng, kind="suzuki")
    if not rep.ok:
        raise PreconditionError(
            f"{m.name} violates the contraction condition with lambda={lam} by {rep.max_violation:.3g}")
    trace = iterate(m, x0, n_max, tol=0.0)
    xs, d, rho = trace.iterates, trace.dist_ab, m.metric
    c = (2 * lam + 1) / (1 - lam)
    slack = 1e-12
    g1 = trace.gaps[1]
    gap_ok = all(g <= g1 + slack for g in trace.gaps[1:])
    b_even = c * rho(xs[1], xs[0]) + d
    even_ok = all(rho(xs[2 * n], xs[1]) <= b_even + slack for n in range(1, len(xs) // 2))
    b_odd = c * rho(xs[2], xs[1]) + d
    odd_ok = all(rho(xs[2 * n + 1], xs[2]) <= b_odd + slack for n in range(1, (len(xs) - 1) // 2))
    norm_of = norm_of or (lambda p: geo.norm_eval(m.norm, p))
    max_norm = max(norm_of(p) for p in xs)
    # every iterate sits within the even or odd radius of x_1 or x_2
    norm_bound = max(norm_of(xs[0]), norm_of(xs[1]) + b_even, norm_of(xs[2]) + b_odd)
    ok = gap_ok and even_ok and odd_ok and max_norm <= norm_bound + slack
    return IterateBoundsReport(ok, gap_ok, even_ok, odd_ok, max_norm, norm_bound, rep, trace)


# ---------------------------------------------------------------------------
# coupled maps

class CoupledMapDef:
    """``F: A x A -> B`` and ``G: B x B -> A`` with claimed constants ``alpha, beta``."""

    def __init__(self, name, f, g, domain, norm, alpha, beta, dist_ab=None, sample_box=None):
        if alpha < 0 or beta < 0 or alpha + beta >= 1:
            raise PreconditionError(f"need alpha, beta >= 0 and alpha + beta < 1, got {alpha}, {beta}")
        self.name = name
        self.f = f
        self.g = g
        self.domain = domain
        self.norm = norm
        self.alpha = alpha
        self.beta = beta
        self._dist = dist_ab
        self.sample_box = sample_box

    @property
    def dist_ab(self):
        if self._dist is None:
            a, b = self.domain
            self._dist = set_distance(self.norm, a, b, budget=64).value
        return self._dist


def coupled_to_cyclic(c: CoupledMapDef) -> CyclicMapDef:
    """``T(x, y) = (F(x, y), F(y, x))`` on ``A x A``, ``(G(x, y), G(y, x))`` on ``B x B``."""
    a, b = c.domain
    aa, bb = ProductRegion(a, a), ProductRegion(b, b)

    def apply(p):
        x, y = p
        if aa.contains(p):
            return (c.f(x, y), c.f(y, x))
        if bb.contains(p):
            return (c.g(x, y), c.g(y, x))
        raise MapIntegrityError(f"{c.name}: point {p} is in neither A x A nor B x B")

    return CyclicMapDef(
        f"{c.name}_product", apply, (aa, bb), c.norm, "banach", c.alpha + c.beta,
        metric=lambda p, q: geo.sum_metric(c.norm, p, q),
        dist_ab=2.0 * c.dist_ab, sample_box=c.sample_box,
    )


@dataclass
class CoupledSolution:
    xy: tuple
    uv: tuple
    residual: float
    trace: IterationTrace


def coupled_solve(c: CoupledMapDef, x0, y0, tol=1e-10, n_max=1000, verify_samples=200):
    """Coupled best proximity points through the product-space reduction.

    Returns the even and odd limits ``(x, y)`` and ``(u, v)`` with the
    residual ``|rho(x, u) + rho(y, v) - 2 dist(A, B)|``.
    """
    m = coupled_to_cyclic(c)
    rep = verify_cyclic(m, verify_samples)
    if not rep:
        raise PreconditionError(f"{m.name} is not cyclic at {rep.violator}")
    trace = iterate(m, (x0, y0), n_max, tol)
    if not trace.converged:
        raise BudgetError(f"{c.name}: no convergence within {n_max} steps", trace)
    (x, y), (u, v) = trace.limit_even, trace.limit_odd
    rho = lambda p, q: geo.metric(c.norm, p, q)
    residual = abs(rho(x, u) + rho(y, v) - 2.0 * c.dist_ab)
    trace.certificate = Certificate(rho(x, u) + rho(y, v), 2.0 * c.dist_ab, residual)
    if residual >= max(tol, 1e-8):
        raise BudgetError(f"{c.name}: residual {residual:.3g} misses tolerance", trace)
    return CoupledSolution((x, y), (u, v), residual, trace)


# ---------------------------------------------------------------------------
# corpus

# ~1e-13 accuracy at the corpus points; the map is called once per iterate
_MAP_LEVELS = [64]
_MAP_STARTS = 3


def _example49():
    A, B = corpus_region("ex49_A"), corpus_region("ex49_B")
    Abar, Bbar = corpus_region("ex49_Abar"), corpus_region("ex49_Bbar")
    cache = {}

    def dist(p, r):
        key = (p, r.name)
        if key not in cache:
            cache[key] = point_to_set_distance(geo.LINF, p, r, levels=_MAP_LEVELS, starts=_MAP_STARTS).value
        return cache[key]

    def apply(p):
        if A.contains(p):
            h = dist(p, Abar) / 2
            return Planar(0.0 - h, 0.0 - h)
        if B.contains(p):
            h = dist(p, Bbar) / 2
            return Planar(1.0 + h, 1.0 + h)
        raise MapIntegrityError(f"example49: {p} is in neither A nor B")

    return CyclicMapDef("example49", apply, (A, B), geo.LINF, "banach", 0.5,
                        sample_box=(-10.0, 10.0, -10.0, 10.0),
                        proximal_pair=(Planar(1.0, 1.0), Planar(0.0, 0.0)))


_MAPS = {"example49": _example49}
MAP_NAMES = tuple(_MAPS)


def corpus_map(name) -> CyclicMapDef:
    try:
        return _MAPS[name]()
    except KeyError:
        raise CatalogError("map", name, MAP_NAMES) from None


def _reflection():
    # R mirrors ex15_A onto coupled_B across x = 3/2; F pulls toward the proximal point first
    A, B = corpus_region("ex15_A"), corpus_region("coupled_B")
    alpha = beta = 0.25
    a_star, b_star = Planar(1.0, 0.0), Planar(2.0, 0.0)

    def mirror(p):
        return Planar(3.0 - p.x, p.y)

    def blend(anchor, x, y):
        s = 1.0 - alpha - beta
        return Planar(s * anchor.x + alpha * x.x + beta * y.x, s * anchor.y + alpha * x.y + beta * y.y)

    f = lambda x, y: mirror(blend(a_star, x, y))
    g = lambda x, y: mirror(blend(b_star, x, y))
    return CoupledMapDef("reflection", f, g, (A, B), geo.L1, alpha, beta)


_COUPLED = {"reflection": _reflection}
COUPLED_NAMES = tuple(_COUPLED)


def corpus_coupled(name) -> CoupledMapDef:
    try:
        return _COUPLED[name]()
    except KeyError:
        raise CatalogError("coupled map", name, COUPLED_NAMES) from None
