"""Falsification searches for the UC, UC* and BUC properties of set pairs.

A property of the pair ``(A, B)`` quantifies over all sequences, so no
finite search can establish it.  Each falsifier runs a list of candidate
sequence families and either returns a witness family with its measured
limits, or reports that no counterexample was found within the budget.

Limits are read off the tail: a sequence converges to ``L`` when its last
``ceil(n_max/4)`` values all lie within ``tol`` of ``L`` and oscillate by
less than ``tol/2``.  Separation means staying at least ``10*tol`` apart.
Two-index conditions are evaluated on the tail window, thinned to at most
256 indices.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

from . import geometry as geo
from .errors import CatalogError, PreconditionError
from .geometry import Blocks, Planar
from .regions import corpus_pair, set_distance

__all__ = [
    "SequenceFamily", "FalsificationVerdict", "uc_falsify", "buc_falsify", "ucstar_falsify",
    "CauchyResult", "cauchy_criterion_check", "boundedness_harness", "limit_norm_harness",
    "corpus_family", "FAMILY_NAMES", "normalized_sum_family", "nearest_point_family", "tail_converges",
    "EXPECTED_VERDICTS", "NO_COUNTEREXAMPLE_TEXT",
]

NO_COUNTEREXAMPLE_TEXT = "no counterexample found within budget"
TRIANGLE_CAP = 256


@dataclass(frozen=True)
class SequenceFamily:
    """Three sequences indexed from 1: ``x_n, z_n`` in ``A`` and ``y_n`` in ``B``."""

    name: str
    gen_x: Callable[[int], object]
    gen_z: Callable[[int], object]
    gen_y: Callable[[int], object]
    bounded: bool = False
    radius: Optional[float] = None
    pair: Optional[str] = None


@dataclass
class FalsificationVerdict:
    property: str
    pair: str
    outcome: str
    witness_name: Optional[str] = None
    measured_limits: Optional[dict] = None
    budget: int = 0
    rejected: list = field(default_factory=list)

    @property
    def falsified(self):
        return self.outcome == "falsified"

    @property
    def text(self):
        if self.falsified:
            return f"{self.property} falsified on {self.pair} by family {self.witness_name}"
        return f"{self.property} on {self.pair}: {NO_COUNTEREXAMPLE_TEXT}"

    def to_json(self):
        return {
            "property": self.property,
            "pair": self.pair,
            "outcome": self.outcome,
            "witness_name": self.witness_name,
            "measured_limits": self.measured_limits,
            "budget": self.budget,
            "rejected": list(self.rejected),
        }


def _window(n_max):
    return max(1, math.ceil(n_max / 4))


def tail_converges(values, limit, tol):
    """Tail test on the last quarter of ``values``."""
    tail = values[-_window(len(values)):]
    if any(abs(v - limit) > tol for v in tail):
        return False
    return max(tail) - min(tail) < tol / 2


def _tail_indices(n_max):
    # 1-based indices of the tail window, thinned to at most TRIANGLE_CAP
    w = _window(n_max)
    start = n_max - w + 1
    stride = max(1, math.ceil(w / TRIANGLE_CAP))
    idx = list(range(start, n_max + 1, stride))
    if idx[-1] != n_max:
        idx.append(n_max)
    return idx


class _Rejected(Exception):
    pass


def _generate(fam, a, b, n_max, norm):
    xs, zs, ys = [], [], []
    for n in range(1, n_max + 1):
        x, z, y = fam.gen_x(n), fam.gen_z(n), fam.gen_y(n)
        if not a.contains(x):
            raise _Rejected(f"{fam.name}: x_{n} is not in {a.name}")
        if not a.contains(z):
            raise _Rejected(f"{fam.name}: z_{n} is not in {a.name}")
        if not b.contains(y):
            raise _Rejected(f"{fam.name}: y_{n} is not in {b.name}")
        if fam.bounded:
            r = fam.radius + 1e-12
            if geo.norm_eval(norm, x) > r or geo.norm_eval(norm, z) > r:
                raise _Rejected(f"{fam.name}: declared bound {fam.radius} exceeded at n={n}")
        xs.append(x)
        zs.append(z)
        ys.append(y)
    return xs, zs, ys


def _resolve_dist(norm, a, b, dist_ab):
    if dist_ab is not None:
        return float(dist_ab)
    if not (a.estimable and b.estimable):
        raise PreconditionError("dist(A, B) must be supplied for regions that cannot be estimated")
    return set_distance(norm, a, b, budget=64).value


def _check_args(n_max, tol):
    if n_max < 16:
        raise PreconditionError("n_max must be >= 16")
    if tol <= 0:
        raise PreconditionError("tol must be positive")


def _uc_core(prop, norm, a, b, families, n_max, tol, dist_ab, pair, bounded_only):
    _check_args(n_max, tol)
    pair = pair or f"{a.name},{b.name}"
    if not families:
        return FalsificationVerdict(prop, pair, "no_counterexample", budget=0)
    d = _resolve_dist(norm, a, b, dist_ab)
    floor = 10 * tol
    used = 0
    rejected = []
    for fam in families:
        if bounded_only and not fam.bounded:
            rejected.append(f"{fam.name}: unbounded family not admitted for {prop}")
            continue
        try:
            xs, zs, ys = _generate(fam, a, b, n_max, norm)
        except _Rejected as exc:
            rejected.append(str(exc))
            continue
        used += n_max
        dxy = [geo.metric(norm, x, y) for x, y in zip(xs, ys)]
        dzy = [geo.metric(norm, z, y) for z, y in zip(zs, ys)]
        dxz = [geo.metric(norm, x, z) for x, z in zip(xs, zs)]
        sep = min(dxz[-_window(n_max):])
        if tail_converges(dxy, d, tol) and tail_converges(dzy, d, tol) and sep >= floor:
            limits = {"rho_xy": dxy[-1], "rho_zy": dzy[-1], "liminf_rho_xz": sep, "dist": d}
            return FalsificationVerdict(prop, pair, "falsified", fam.name, limits, used, rejected)
    return FalsificationVerdict(prop, pair, "no_counterexample", None, None, used, rejected)


def uc_falsify(norm, a, b, families, n_max=1000, tol=1e-3, dist_ab=None, pair=None):
    """Search for a UC counterexample among ``families``.

    A family falsifies UC when ``rho(x_n, y_n)`` and ``rho(z_n, y_n)`` both
    converge to ``dist(A, B)`` while ``rho(x_n, z_n)`` stays above the
    separation floor on the tail.  Families whose points leave their sets
    are rejected with a diagnostic.
    """
    return _uc_core("UC", norm, a, b, families, n_max, tol, dist_ab, pair, False)


def buc_falsify(norm, a, b, families, n_max=1000, tol=1e-3, dist_ab=None, pair=None):
    """As :func:`uc_falsify`, admitting only families declared bounded."""
    return _uc_core("BUC", norm, a, b, families, n_max, tol, dist_ab, pair, True)


def ucstar_falsify(norm, a, b, families, n_max=1000, tol=1e-3, dist_ab=None, pair=None):
    """Search for a UC* counterexample.

    UC* includes UC, so a UC witness refutes it first.  Otherwise a family
    refutes the two-index clause when ``rho(z_n, y_n) -> dist``, every
    ``rho(x_m, y_n)`` with ``m > n`` on the tail is at most ``dist + tol``,
    yet some ``rho(x_m, z_n)`` there reaches the separation floor.
    """
    _check_args(n_max, tol)
    pair = pair or f"{a.name},{b.name}"
    uc = _uc_core("UCStar", norm, a, b, families, n_max, tol, dist_ab, pair, False)
    if uc.falsified or not families:
        if uc.falsified:
            uc.measured_limits["clause"] = "uc"
        return uc
    d = _resolve_dist(norm, a, b, dist_ab)
    floor = 10 * tol
    idx = _tail_indices(n_max)
    used = uc.budget
    rejected = list(uc.rejected)
    bad = {r.split(":")[0] for r in rejected}
    for fam in families:
        if fam.name in bad:
            continue
        xs = {n: fam.gen_x(n) for n in idx}
        zs = {n: fam.gen_z(n) for n in idx}
        ys = {n: fam.gen_y(n) for n in idx}
        dzy = [geo.metric(norm, fam.gen_z(n), fam.gen_y(n)) for n in range(1, n_max + 1)]
        used += len(idx) ** 2
        if not tail_converges(dzy, d, tol):
            continue
        sup_xy = max((geo.metric(norm, xs[m], ys[n]) for n in idx for m in idx if m > n), default=-math.inf)
        if sup_xy > d + tol:
            continue
        sup_xz = max((geo.metric(norm, xs[m], zs[n]) for n in idx for m in idx if m > n), default=0.0)
        if sup_xz >= floor:
            limits = {"rho_zy": dzy[-1], "sup_rho_xm_yn": sup_xy, "sup_rho_xm_zn": sup_xz,
                      "dist": d, "clause": "two-index"}
            return FalsificationVerdict("UCStar", pair, "falsified", fam.name, limits, used, rejected)
    return FalsificationVerdict("UCStar", pair, "no_counterexample", None, None, used, rejected)


# ---------------------------------------------------------------------------
# harnesses

@dataclass
class CauchyResult:
    premise_holds: bool
    is_cauchy: bool
    premise_value: float
    oscillation: float

    def __iter__(self):
        return iter((self.premise_holds, self.is_cauchy))


def cauchy_criterion_check(norm, a, b, gen_x, gen_y, n_max=1000, tol=1e-6, dist_ab=None):
    """Evaluate both sides of the Cauchy criterion for ``x_n`` on the tail.

    The premise holds when either ``sup_{n >= m} rho(x_m, y_n)`` or
    ``sup_{m >= n} rho(x_m, y_n)`` is within ``tol`` of ``dist(A, B)`` over
    the tail window.  ``is_cauchy`` asks the tail of ``x_n`` to oscillate by
    less than ``tol``.
    """
    if n_max < 16:
        raise PreconditionError("n_max must be >= 16")
    d = _resolve_dist(norm, a, b, dist_ab)
    idx = _tail_indices(n_max)
    xs = {n: gen_x(n) for n in idx}
    ys = {n: gen_y(n) for n in idx}
    for n in idx:
        if not a.contains(xs[n]):
            raise PreconditionError(f"x_{n} is not in {a.name}")
        if not b.contains(ys[n]):
            raise PreconditionError(f"y_{n} is not in {b.name}")
    upper = max(geo.metric(norm, xs[m], ys[n]) for m in idx for n in idx if n >= m)
    lower = max(geo.metric(norm, xs[m], ys[n]) for m in idx for n in idx if m >= n)
    premise_val = min(upper, lower)
    premise = abs(premise_val - d) <= tol
    osc = max(geo.metric(norm, xs[m], xs[n]) for m in idx for n in idx if m > n) if len(idx) > 1 else 0.0
    return CauchyResult(premise, osc < tol, premise_val, osc)


def boundedness_harness(norm, gen_x, gen_z, gen_y, n_max=1000, tol=1e-6):
    """Check the two finiteness premises for boundedness and, if both hold, boundedness itself.

    The second premise reads ``lim_n sup_{k, m > n} rho(z_m, y_k)`` with both
    indices free.  It is judged finite when the supremum over the tail
    window agrees with the one over its second half.  Returns
    ``(a_finite, b_finite, all_bounded)`` with ``all_bounded`` set to None
    when a premise fails.
    """
    if n_max < 16:
        raise PreconditionError("n_max must be >= 16")
    dxy = [geo.metric(norm, gen_x(n), gen_y(n)) for n in range(1, n_max + 1)]
    a_finite = all(math.isfinite(v) for v in dxy) and tail_converges(dxy, dxy[-1], tol)
    idx = _tail_indices(n_max)
    zs = {n: gen_z(n) for n in idx}
    ys = {n: gen_y(n) for n in idx}

    def sup_from(start):
        sub = [n for n in idx if n >= start]
        return max(geo.metric(norm, zs[m], ys[k]) for m in sub for k in sub)

    s_full = sup_from(idx[0])
    s_half = sup_from(idx[len(idx) // 2])
    b_finite = math.isfinite(s_full) and abs(s_full - s_half) <= tol * max(1.0, abs(s_full))
    if not (a_finite and b_finite):
        return a_finite, b_finite, None
    w = _window(n_max)
    ok = True
    for gen in (gen_x, gen_z, gen_y):
        norms = [geo.norm_eval(norm, gen(n)) for n in range(1, n_max + 1)]
        head = max(norms[:-w]) if len(norms) > w else norms[0]
        tail = max(norms[-w:])
        ok = ok and all(math.isfinite(v) for v in norms) and tail <= head + tol * max(1.0, head) + tol
    return a_finite, b_finite, ok


def limit_norm_harness(norm, gen_x, gen_y, a, b, n_max=1000, tol=1e-6):
    """Under ``||x_n|| <= a``, ``||y_n|| <= b`` and ``||x_n + y_n|| -> a + b``, check ``||x_n|| -> a`` and ``||y_n|| -> b``.

    Returns None when a premise fails on the probed range.
    """
    nx, ny, ns = [], [], []
    for n in range(1, n_max + 1):
        x, y = gen_x(n), gen_y(n)
        nx.append(geo.norm_eval(norm, x))
        ny.append(geo.norm_eval(norm, y))
        ns.append(geo.norm_eval(norm, x + y))
    if max(nx) > a + tol or max(ny) > b + tol or not tail_converges(ns, a + b, tol):
        return None
    return tail_converges(nx, a, tol) and tail_converges(ny, b, tol)


# ---------------------------------------------------------------------------
# witness builders and corpus families

def normalized_sum_family(norm, gen_x, gen_z, name="normalized_sum", bounded=True, radius=1.0, pair=None):
    """Complete ``x_n, z_n`` in the unit ball with ``y_n = 2 (x_n + z_n)/||x_n + z_n||``."""

    def gen_y(n):
        s = gen_x(n) + gen_z(n)
        return s * (2.0 / geo.norm_eval(norm, s))

    return SequenceFamily(name, gen_x, gen_z, gen_y, bounded, radius, pair)


def nearest_point_family(gen_x, gen_z, p, name="nearest_point", radius=1.0, pair=None):
    """Constant ``y_n = p`` for a point ``p`` nearest to the unit ball."""
    return SequenceFamily(name, gen_x, gen_z, lambda n: p, True, radius, pair)


def _ex43():
    return SequenceFamily(
        "example43",
        lambda n: Planar(float(n), 1.0 / n),
        lambda n: Planar(float(n + 1), 1.0 / (n + 1)),
        lambda n: Planar(float(n), 1.0 / (n + 1) - 1.0),
        bounded=False, pair="ex43",
    )


def _c50(n):
    return 2.0 ** (-1.0 / (n + 1))


def _ex50():
    return SequenceFamily(
        "example50",
        lambda n: Blocks.single(n + 1, _c50(n), _c50(n)),
        lambda n: Blocks.single(n + 1, _c50(n), -_c50(n)),
        lambda n: Blocks.single(n + 1, 2.0, 0.0),
        bounded=True, radius=1.0, pair="ex50",
    )


def _normsum_ex50():
    f = _ex50()
    return normalized_sum_family(geo.PRODUCT, f.gen_x, f.gen_z, "normsum_example50", pair="ex50")


def _normsum_sphere():
    def x(n):
        return geo.sphere_point(geo.L2, float(n))
    return normalized_sum_family(geo.L2, x, x, "normsum_sphere_l2", pair="sphere_shell_l2")


def _ex15_linf():
    return SequenceFamily(
        "ex15_linf",
        lambda n: Planar(4.0, 0.5),
        lambda n: Planar(4.0, -0.5),
        lambda n: Planar(5.0, 0.0),
        bounded=True, radius=4.0, pair="ex15_BC",
    )


def _ex15_l1():
    return SequenceFamily(
        "ex15_l1_proximal",
        lambda n: Planar(1.0 - 1.0 / (n + 1), 0.5 / (n + 1)),
        lambda n: Planar(1.0 - 1.0 / (n + 1), -0.5 / (n + 1)),
        lambda n: Planar(2.0, 0.0),
        bounded=True, radius=1.0, pair="ex15_AB",
    )


def _constant_ex43():
    return SequenceFamily(
        "constant_ex43",
        lambda n: Planar(1.0, 1.0),
        lambda n: Planar(1.0, 1.0),
        lambda n: Planar(0.0, 0.0),
        bounded=True, radius=1.0, pair="ex43",
    )


def _ex28_linf():
    # both proximities vanish, which forces x_n and z_n together
    def s(n):
        return 1.0 / n

    return SequenceFamily(
        "ex28_linf",
        lambda n: Planar(s(n), 1.0 / s(n)),
        lambda n: Planar(s(n), 1.0 / s(n) + s(n)),
        lambda n: Planar(-s(n), 1.0 / s(n)),
        bounded=False, pair="ex28_linf",
    )


class _Orbit:
    """Lazily extended orbit of the corpus cyclic map from ``(2, 2)``."""

    def __init__(self):
        from .solver import corpus_map

        self.map = corpus_map("example49")
        self.points = [Planar(2.0, 2.0)]

    def __getitem__(self, k):
        while len(self.points) <= k:
            self.points.append(self.map.apply(self.points[-1]))
        return self.points[k]


def _ex49_orbit():
    orbit = []

    def get(k):
        if not orbit:
            orbit.append(_Orbit())
        return orbit[0][k]

    return SequenceFamily(
        "ex49_orbit",
        lambda n: get(2 * n),
        lambda n: get(2 * n),
        lambda n: get(2 * n + 1),
        bounded=True, radius=2.0, pair="ex49",
    )


_FAMILIES = {
    "example43": _ex43,
    "example50": _ex50,
    "ex15_linf": _ex15_linf,
    "ex15_l1_proximal": _ex15_l1,
    "constant_ex43": _constant_ex43,
    "ex28_linf": _ex28_linf,
    "normsum_example50": _normsum_ex50,
    "normsum_sphere_l2": _normsum_sphere,
    "ex49_orbit": _ex49_orbit,
}
FAMILY_NAMES = tuple(_FAMILIES)


def corpus_family(name) -> SequenceFamily:
    try:
        return _FAMILIES[name]()
    except KeyError:
        raise CatalogError("family", name, FAMILY_NAMES) from None


@dataclass(frozen=True)
class ExpectedVerdict:
    property: str
    pair: str
    families: tuple
    n_max: int
    tol: float
    expected: str
    note: str = ""


# catalog order decides which entry runs first
EXPECTED_VERDICTS = (
    ExpectedVerdict("UC", "ex43", ("example43",), 10_000, 1e-3, "falsified"),
    ExpectedVerdict("BUC", "ex43", ("example43", "constant_ex43"), 10_000, 1e-3, "no_counterexample"),
    ExpectedVerdict("UC", "ex50", ("example50",), 200, 1e-2, "falsified"),
    ExpectedVerdict("BUC", "ex50", ("example50",), 200, 1e-2, "falsified"),
    ExpectedVerdict("UCStar", "ex50", ("example50",), 200, 1e-2, "falsified"),
    ExpectedVerdict("UC", "ex15_AB", ("ex15_l1_proximal",), 1000, 1e-2, "no_counterexample"),
    ExpectedVerdict("UC", "ex15_BC", ("ex15_linf",), 1000, 1e-3, "falsified"),
    ExpectedVerdict("UC", "ex28_linf", ("ex28_linf",), 1000, 1e-2, "no_counterexample",
                    "claimed not UC, but dist = 0 makes UC hold trivially"),
    ExpectedVerdict("UC", "ex49", ("ex49_orbit", "constant_ex43"), 200, 1e-6, "no_counterexample"),
    ExpectedVerdict("UC", "sphere_shell_l2", ("normsum_sphere_l2",), 200, 1e-6, "no_counterexample"),
)

FALSIFIERS = {"UC": uc_falsify, "BUC": buc_falsify, "UCStar": ucstar_falsify}


def run_expected(entry, n_max=None, tol=None):
    """Run one catalog entry and return its verdict."""
    p = corpus_pair(entry.pair)
    fams = [corpus_family(f) for f in entry.families]
    fn = FALSIFIERS[entry.property]
    dist = p.dist if p.analytic else None
    return fn(p.norm, p.region_a, p.region_b, fams, n_max or entry.n_max, tol or entry.tol,
              dist_ab=dist, pair=p.name)
