"""Points, norms and the metrics they induce.

Two kinds of point live here: :class:`Planar` for the plane and
:class:`Blocks` for the sparse product space ``prod_{k>=2} (R^2, ||.||_k)``
with the l2-sum of the block norms.  Blocks are stored sparsely, so an
element with a single nonzero block at an arbitrarily large index is exact.

Point equality is plain IEEE equality of the coordinates; any approximate
comparison should go through :func:`metric` with an explicit tolerance.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Union

from .errors import DomainError, NormPointMismatch

__all__ = [
    "Planar", "Blocks", "Point", "Norm", "L1", "L2", "LINF", "PRODUCT",
    "lp", "parse_norm", "norm_eval", "metric", "sum_metric", "planar_fn",
    "sphere_point", "in_open_ball",
]


@dataclass(frozen=True, slots=True)
class Planar:
    x: float
    y: float

    def __add__(self, other):
        if not isinstance(other, Planar):
            return NotImplemented
        return Planar(self.x + other.x, self.y + other.y)

    def __sub__(self, other):
        if not isinstance(other, Planar):
            return NotImplemented
        return Planar(self.x - other.x, self.y - other.y)

    def __mul__(self, lam):
        return Planar(lam * self.x, lam * self.y)

    __rmul__ = __mul__

    def __truediv__(self, lam):
        return Planar(self.x / lam, self.y / lam)

    def __neg__(self):
        return Planar(-self.x, -self.y)

    def midpoint(self, other):
        return Planar((self.x + other.x) / 2, (self.y + other.y) / 2)

    def as_list(self):
        return [self.x, self.y]


def _merge(a, b, sign):
    out = dict(a)
    for k, (u, v) in b:
        p, q = out.get(k, (0.0, 0.0))
        out[k] = (p + sign * u, q + sign * v)
    return out


@dataclass(frozen=True, slots=True)
class Blocks:
    """Sparse element of the product space.

    ``entries`` is a tuple of ``(block_index, (u, v))`` with strictly
    increasing indices ``>= 2``.  All-zero blocks are dropped, so the empty
    tuple is the zero element.
    """

    entries: tuple = ()

    def __post_init__(self):
        clean = []
        last = 1
        for k, pair in self.entries:
            k = int(k)
            if k < 2 or k <= last:
                raise DomainError(f"block indices must be >= 2 and strictly increasing, got {k} after {last}")
            last = k
            u, v = float(pair[0]), float(pair[1])
            if u != 0.0 or v != 0.0:
                clean.append((k, (u, v)))
        object.__setattr__(self, "entries", tuple(clean))

    @classmethod
    def single(cls, k, u, v):
        return cls(((k, (u, v)),))

    @classmethod
    def from_dict(cls, d):
        return cls(tuple(sorted(d.items())))

    def __add__(self, other):
        if not isinstance(other, Blocks):
            return NotImplemented
        return Blocks.from_dict(_merge(self.entries, other.entries, 1.0))

    def __sub__(self, other):
        if not isinstance(other, Blocks):
            return NotImplemented
        return Blocks.from_dict(_merge(self.entries, other.entries, -1.0))

    def __mul__(self, lam):
        return Blocks(tuple((k, (lam * u, lam * v)) for k, (u, v) in self.entries))

    __rmul__ = __mul__

    def __truediv__(self, lam):
        return Blocks(tuple((k, (u / lam, v / lam)) for k, (u, v) in self.entries))

    def __neg__(self):
        return self * -1.0

    def midpoint(self, other):
        return (self + other) * 0.5

    def as_list(self):
        return [[k, [u, v]] for k, (u, v) in self.entries]


Point = Union[Planar, Blocks]


@dataclass(frozen=True)
class Norm:
    """Norm tag.  ``kind`` is one of ``l1``, ``l2``, ``linf``, ``lp``, ``product``."""

    kind: str
    p: int | None = None

    def __post_init__(self):
        if self.kind not in ("l1", "l2", "linf", "lp", "product"):
            raise DomainError(f"unknown norm kind {self.kind!r}")
        if self.kind == "lp" and (self.p is None or int(self.p) != self.p or self.p < 2):
            raise DomainError(f"Lp norm needs an integer p >= 2, got {self.p!r}")

    @property
    def planar(self):
        return self.kind != "product"

    def __str__(self):
        return f"l{self.p}" if self.kind == "lp" else self.kind


L1 = Norm("l1")
L2 = Norm("l2")
LINF = Norm("linf")
PRODUCT = Norm("product")


def lp(p):
    p = int(p)
    if p == 2:
        return L2
    return Norm("lp", p)


def parse_norm(text):
    t = text.strip().lower()
    if t in ("l1", "l2", "linf", "product"):
        return Norm(t)
    if t in ("inf", "l_inf", "max"):
        return LINF
    if t.startswith("l") and t[1:].isdigit():
        return lp(int(t[1:]))
    raise DomainError(f"cannot parse norm {text!r}")


def _lp2(u, v, p):
    # max-scaled so large p never overflows and a zero coordinate is exact
    a, b = abs(u), abs(v)
    m = max(a, b)
    if m == 0.0:
        return 0.0
    s = min(a, b) / m
    if s == 0.0:
        return m
    return m * (1.0 + s ** p) ** (1.0 / p)


def planar_fn(norm) -> Callable[[float, float], float]:
    """Return a fast ``(dx, dy) -> ||(dx, dy)||`` for a planar norm."""
    if norm.kind == "l1":
        return lambda dx, dy: abs(dx) + abs(dy)
    if norm.kind == "l2":
        return math.hypot
    if norm.kind == "linf":
        return lambda dx, dy: max(abs(dx), abs(dy))
    if norm.kind == "lp":
        p = norm.p
        return lambda dx, dy: _lp2(dx, dy, p)
    raise NormPointMismatch(norm, Planar(0.0, 0.0))


def norm_eval(norm: Norm, p: Point) -> float:
    if isinstance(p, Planar):
        if not norm.planar:
            raise NormPointMismatch(norm, p)
        return planar_fn(norm)(p.x, p.y)
    if isinstance(p, Blocks):
        if norm.kind != "product":
            raise NormPointMismatch(norm, p)
        return math.hypot(*(_lp2(u, v, k) for k, (u, v) in p.entries))
    raise NormPointMismatch(norm, p)


def metric(norm: Norm, p: Point, q: Point) -> float:
    if type(p) is not type(q):
        raise NormPointMismatch(norm, q)
    if isinstance(p, Planar):
        if not norm.planar:
            raise NormPointMismatch(norm, p)
        return planar_fn(norm)(p.x - q.x, p.y - q.y)
    return norm_eval(norm, p - q)


def sum_metric(norm: Norm, pair1, pair2) -> float:
    """Metric ``d((x, y), (u, v)) = rho(x, u) + rho(y, v)`` on the square of the space."""
    (x, y), (u, v) = pair1, pair2
    return metric(norm, x, u) + metric(norm, y, v)


def sphere_point(norm: Norm, theta: float) -> Planar:
    """Point of the unit sphere of a planar norm in the direction of angle ``theta``."""
    c, s = math.cos(theta), math.sin(theta)
    r = planar_fn(norm)(c, s)
    return Planar(c / r, s / r)


def in_open_ball(norm: Norm, center: Point, radius: float, p: Point) -> bool:
    # open balls only: the closed-ball notation in the source reads "<" as well
    return metric(norm, center, p) < radius
