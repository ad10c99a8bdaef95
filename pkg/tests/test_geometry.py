import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bestprox import geometry as geo
from bestprox.errors import DomainError, NormPointMismatch
from bestprox.geometry import L1, L2, LINF, PRODUCT, Blocks, Planar

PLANAR_NORMS = [L1, L2, LINF, geo.lp(3), geo.lp(40)]
coord = st.floats(-1e3, 1e3, allow_nan=False)
planar = st.builds(Planar, coord, coord)


def test_norm_examples():
    assert geo.norm_eval(L2, Planar(3, 4)) == 5.0
    assert geo.norm_eval(LINF, Planar(1, 1)) == 1.0
    for n in (1, 5, 50, 500):
        c = 2.0 ** (-1.0 / (n + 1))
        assert geo.norm_eval(PRODUCT, Blocks.single(n + 1, c, c)) == pytest.approx(1.0, abs=1e-15)


def test_metric_examples():
    assert geo.metric(L1, Planar(1, 0), Planar(2, 0)) == 1.0
    for n in (1, 2, 10, 100):
        c1, c2 = 2.0 ** (-1.0 / (n + 1)), 2.0 ** (-1.0 / (n + 2))
        x = Blocks.single(n + 1, c1, c1)
        z = Blocks.single(n + 1, c1, -c1)
        assert geo.metric(PRODUCT, x, z) == pytest.approx(2 * c1, rel=1e-15)
        del c2
    # Example 43 points b_n = (n, 1/n), c_n = (n, 1/(n+1) - 1)
    for n in (1, 3, 10):
        b = Planar(n, 1 / n)
        c = Planar(n, 1 / (n + 1) - 1)
        assert geo.metric(LINF, b, c) == pytest.approx(1 + 1 / n - 1 / (n + 1))
    assert geo.metric(LINF, Planar(1, 1), Planar(1, 0)) == 1.0


def test_sum_metric_examples():
    a = Planar(0.3, -2.0)
    assert geo.sum_metric(L2, (a, a), (a, a)) == 0.0
    p, q = Planar(1, 1), Planar(0, 0)
    assert geo.sum_metric(LINF, (p, q), (q, p)) == 2.0


def test_mismatch_errors():
    with pytest.raises(NormPointMismatch):
        geo.norm_eval(PRODUCT, Planar(1, 0))
    with pytest.raises(NormPointMismatch):
        geo.norm_eval(L2, Blocks.single(2, 1, 0))
    with pytest.raises(NormPointMismatch):
        geo.metric(L2, Planar(0, 0), Blocks())
    with pytest.raises(NormPointMismatch):
        geo.sum_metric(PRODUCT, (Planar(0, 0), Planar(0, 0)), (Planar(0, 0), Planar(0, 0)))
    assert isinstance(NormPointMismatch(L2, Planar(0, 0)), TypeError)


def test_parse_norm():
    assert geo.parse_norm("l2") is not None and geo.parse_norm("L2") == L2
    assert geo.parse_norm("linf") == LINF
    assert geo.parse_norm("l7") == geo.lp(7)
    with pytest.raises(DomainError):
        geo.parse_norm("frobenius")


def test_blocks_validation_and_sparsity():
    assert Blocks(((2, (0.0, 0.0)),)) == Blocks()
    with pytest.raises(DomainError):
        Blocks(((1, (1.0, 0.0)),))
    with pytest.raises(DomainError):
        Blocks(((3, (1.0, 0.0)), (3, (0.0, 1.0))))
    x = Blocks.single(10**6, 1.0, 1.0)
    assert geo.norm_eval(PRODUCT, x) == pytest.approx(2 ** (1e-6), rel=1e-12)


def test_large_p_no_overflow():
    v = geo.norm_eval(geo.lp(5000), Planar(1e300, 1e300))
    assert math.isfinite(v) and v == pytest.approx(1e300 * 2 ** (1 / 5000), rel=1e-12)


@given(st.integers(2, 60), coord, coord)
def test_single_block_matches_planar_lp(k, u, v):
    # one nonzero block: the product norm is that block's l_k norm
    got = geo.norm_eval(PRODUCT, Blocks.single(k, u, v))
    want = geo.norm_eval(geo.lp(k), Planar(u, v))
    assert got == pytest.approx(want, rel=1e-12, abs=1e-300)


@pytest.mark.parametrize("norm", PLANAR_NORMS, ids=str)
@settings(max_examples=1000, deadline=None)
@given(x=planar, y=planar, z=planar)
def test_metric_axioms(norm, x, y, z):
    dxy = geo.metric(norm, x, y)
    assert dxy >= 0
    assert geo.metric(norm, x, x) == 0
    assert dxy == geo.metric(norm, y, x)
    assert dxy <= geo.metric(norm, x, z) + geo.metric(norm, z, y) + 1e-9 * (1 + dxy)


@settings(max_examples=300, deadline=None)
@given(x=planar, lam=st.floats(-50, 50, allow_nan=False))
def test_homogeneity(x, lam):
    for norm in PLANAR_NORMS:
        got = geo.norm_eval(norm, lam * x)
        want = abs(lam) * geo.norm_eval(norm, x)
        assert got == pytest.approx(want, rel=1e-12, abs=1e-300)


@settings(max_examples=200, deadline=None)
@given(a=planar, b=planar, c=planar, d=planar, e=planar, f=planar)
def test_sum_metric_triangle(a, b, c, d, e, f):
    for norm in (L1, L2, LINF):
        lhs = geo.sum_metric(norm, (a, b), (c, d))
        rhs = geo.sum_metric(norm, (a, b), (e, f)) + geo.sum_metric(norm, (e, f), (c, d))
        assert lhs <= rhs + 1e-9 * (1 + lhs)


blocks = st.dictionaries(st.integers(2, 40), st.tuples(coord, coord), max_size=4).map(Blocks.from_dict)


@settings(max_examples=1000, deadline=None)
@given(x=blocks, y=blocks, z=blocks)
def test_product_metric_axioms(x, y, z):
    dxy = geo.metric(PRODUCT, x, y)
    assert dxy >= 0 and geo.metric(PRODUCT, x, x) == 0
    assert dxy == pytest.approx(geo.metric(PRODUCT, y, x), rel=1e-12, abs=1e-300)
    assert dxy <= geo.metric(PRODUCT, x, z) + geo.metric(PRODUCT, z, y) + 1e-9 * (1 + dxy)


def test_sphere_points_have_unit_norm():
    for norm in PLANAR_NORMS:
        for k in range(64):
            p = geo.sphere_point(norm, 2 * math.pi * k / 64)
            assert geo.norm_eval(norm, p) == pytest.approx(1.0, abs=1e-14)


def test_open_ball():
    assert geo.in_open_ball(L2, Planar(0, 0), 1.0, Planar(0.5, 0))
    assert not geo.in_open_ball(L2, Planar(0, 0), 1.0, Planar(1, 0))
