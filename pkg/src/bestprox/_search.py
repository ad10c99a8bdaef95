"""Small one-dimensional search primitives shared by the estimators."""
from __future__ import annotations

import math

INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


def golden_section(f, lo, hi, tol=1e-13, maxiter=200):
    """Minimize a unimodal ``f`` on ``[lo, hi]``.

    Returns ``(x, f(x), evaluations)`` for the best point seen, endpoints
    included, so a monotone ``f`` still yields its minimum.
    """
    a, b = lo, hi
    best_x, best_f = a, f(a)
    fb = f(b)
    n = 2
    if fb < best_f:
        best_x, best_f = b, fb
    c = b - INVPHI * (b - a)
    d = a + INVPHI * (b - a)
    fc, fd = f(c), f(d)
    n += 2
    while abs(b - a) > tol * max(1.0, abs(a) + abs(b)) and n < maxiter:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - INVPHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INVPHI * (b - a)
            fd = f(d)
        n += 1
    for x, fx in ((c, fc), (d, fd)):
        if fx < best_f:
            best_x, best_f = x, fx
    return best_x, best_f, n


def bisect_last_true(pred, lo, hi, iters=200):
    """Largest ``x`` in ``[lo, hi]`` with ``pred(x)`` true, given ``pred(lo)``.

    ``pred`` must be true on an initial segment of the interval.
    """
    if pred(hi):
        return hi
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        if pred(mid):
            lo = mid
        else:
            hi = mid
    return lo


def local_minima_order(values, k, periodic=False):
    """Indices of up to ``k`` starting cells, strict-ish local minima first.

    Ties keep grid order so the result is deterministic.
    """
    n = len(values)
    mins = []
    for i in range(n):
        if periodic:
            left, right = values[(i - 1) % n], values[(i + 1) % n]
        else:
            left = values[i - 1] if i > 0 else math.inf
            right = values[i + 1] if i < n - 1 else math.inf
        if values[i] <= left and values[i] <= right:
            mins.append(i)
    mins.sort(key=lambda i: (values[i], i))
    if len(mins) < k:
        rest = sorted((i for i in range(n) if i not in set(mins)), key=lambda i: (values[i], i))
        mins.extend(rest[: k - len(mins)])
    return mins[:k]
