import json

import numpy as np
import pytest

from bestprox import geometry as geo
from bestprox import solver as sv
from bestprox.errors import BudgetError, CatalogError, MapIntegrityError, PreconditionError
from bestprox.geometry import L1, L2, LINF, Planar
from bestprox.regions import ProductRegion, corpus_region, set_distance


@pytest.fixture(scope="module")
def ex49():
    return sv.corpus_map("example49")


def test_map_values(ex49):
    assert ex49(Planar(1, 1)) == Planar(0, 0)
    assert ex49(Planar(0, 0)) == Planar(1, 1)
    assert ex49(Planar(2, 0.5)) == Planar(0, 0)
    t = ex49(Planar(3, 3))
    assert t.x == t.y < 0
    with pytest.raises(MapIntegrityError):
        ex49(Planar(0.5, 0.5))
    with pytest.raises(CatalogError):
        sv.corpus_map("nope")


def test_verify_cyclic(ex49):
    assert sv.verify_cyclic(ex49, samples=1000)
    a = corpus_region("ex15_A")
    ident = sv.CyclicMapDef("id", lambda p: p, (a, corpus_region("ex15_B")), L1)
    rep = sv.verify_cyclic(ident, samples=50)
    assert not rep and rep.violator in a


def test_contraction_half(ex49):
    rep = sv.verify_contraction(ex49, 0.5, pair_samples=10_000)
    assert rep.pairs_checked == 10_000
    assert rep.max_violation <= 1e-9


def test_contraction_too_strong(ex49):
    x, y = Planar(3, 1 / 3), Planar(0, -3)
    lhs = geo.metric(LINF, ex49(x), ex49(y))
    assert lhs > 0.1 * geo.metric(LINF, x, y) + 0.9
    assert sv.verify_contraction(ex49, 0.1, pair_samples=2000).max_violation > 0


def test_contraction_tight_at_proximal_pair(ex49):
    x, y = Planar(1, 1), Planar(0, 0)
    for k in (0.1, 0.5, 0.9):
        assert geo.metric(LINF, ex49(x), ex49(y)) <= 1 + k * (geo.metric(LINF, x, y) - 1) + 1e-15


def test_iterate_from_2_2(ex49):
    tr = sv.iterate(ex49, Planar(2, 2), tol=1e-8)
    assert tr.converged and tr.steps < 200
    assert geo.metric(LINF, tr.limit_even, Planar(1, 1)) < 1e-8
    assert geo.metric(LINF, tr.limit_odd, Planar(0, 0)) < 1e-8
    assert abs(tr.proximities[-1] - 1) < 1e-8


def test_best_proximity_point(ex49):
    x, cert = sv.best_proximity_point(ex49, Planar(2, 2))
    assert cert.residual < 1e-8
    assert abs(geo.metric(LINF, x, ex49(x)) - 1) < 1e-8
    y, cert = sv.best_proximity_point(ex49, Planar(-3, -5))
    assert geo.metric(LINF, y, Planar(0, 0)) < 1e-7 and cert.residual < 1e-8


def test_fixed_cycle_converges_at_two(ex49):
    tr = sv.iterate(ex49, Planar(1, 1), tol=1e-10)
    assert tr.converged and tr.converged_at == 2 and tr.steps == 3
    assert tr.limit_even == Planar(1, 1)


def test_budget_exhaustion(ex49):
    tr = sv.iterate(ex49, Planar(50, 50), n_max=4, tol=1e-8)
    assert not tr.converged and tr.limit_even is None and tr.limit_odd is None
    with pytest.raises(BudgetError) as info:
        sv.best_proximity_point(ex49, Planar(50, 50), n_max=4)
    assert info.value.trace.steps == 4
    with pytest.raises(PreconditionError):
        sv.iterate(ex49, Planar(2, 2), n_max=3)
    with pytest.raises(PreconditionError):
        sv.iterate(ex49, Planar(0.5, 0.5))


def test_escape_raises_integrity_error():
    a, b = corpus_region("ex15_A"), corpus_region("ex15_B")
    m = sv.CyclicMapDef("escape", lambda p: Planar(10, 10), (a, b), L1, dist_ab=1.0)
    with pytest.raises(MapIntegrityError):
        sv.iterate(m, Planar(0.5, 0))


def test_random_starts_agree(ex49):
    starts = corpus_region("ex49_A").sample(16, rng=11, box=(0, 10, 0, 10))
    assert len(starts) == 16
    limits = [sv.best_proximity_point(ex49, p)[0] for p in starts]
    for q in limits:
        assert geo.metric(LINF, q, limits[0]) < 1e-7


def test_geometric_decay(ex49):
    tr = sv.iterate(ex49, Planar(9, 7), n_max=60, tol=0.0)
    excess = [p - 1 for p in tr.proximities]
    c = excess[0]
    for n, e in enumerate(excess):
        assert e <= 0.5 ** n * c + 1e-12


def test_banach_fixed_point_when_sets_overlap():
    ball = corpus_region("unit_ball_l2")
    m = sv.CyclicMapDef("halve", lambda p: p * 0.5, (ball, ball), L2, "banach", 0.5)
    assert m.dist_ab == 0.0
    assert sv.verify_contraction(m, 0.5, pair_samples=500)
    x, cert = sv.best_proximity_point(m, Planar(0.6, -0.3), tol=1e-9)
    assert geo.norm_eval(L2, x) < 1e-9 and cert.proximity < 1e-9


def test_check_iterate_bounds(ex49):
    starts = [Planar(2, 2), Planar(0.2, 9), Planar(9, 0.2), Planar(5, 5),
              Planar(-3, -5), Planar(-5, 4), Planar(3, -0.9), Planar(-9, -9)]
    for x0 in starts:
        rep = sv.check_iterate_bounds(ex49, x0, 0.5, n_max=1000, pair_samples=500)
        assert rep.gap_ok and rep.even_ok and rep.odd_ok and rep.ok, x0
        assert rep.trace.steps == 1000


def test_iterate_bounds_constant_cycle(ex49):
    rep = sv.check_iterate_bounds(ex49, Planar(1, 1), 0.5, n_max=50, pair_samples=200)
    assert rep.ok and all(g == 1.0 for g in rep.trace.gaps[1:])


def test_iterate_bounds_reject_non_contraction():
    # an isometric swap keeps rho(Tx, Ty) = rho(x, y), so it cannot contract
    a, b = corpus_region("ex15_A"), corpus_region("coupled_B")
    swap = lambda p: Planar(3.0 - p.x, -p.y)
    m = sv.CyclicMapDef("swap", swap, (a, b), L1, "suzuki", 0.5, dist_ab=1.0)
    assert sv.verify_cyclic(m, 200)
    with pytest.raises(PreconditionError):
        sv.check_iterate_bounds(m, Planar(0.5, 0.2), 0.5, n_max=50, pair_samples=500)


def test_trace_jsonl(ex49, tmp_path):
    tr = sv.iterate(ex49, Planar(2, 2), tol=1e-8)
    path = tmp_path / "t.jsonl"
    text = tr.to_jsonl(path)
    assert path.read_text() == text
    lines = [json.loads(s) for s in text.splitlines()]
    assert [r["n"] for r in lines[:-1]] == list(range(tr.steps + 1))
    assert lines[0]["gap"] is None and lines[1]["gap"] == tr.gaps[1]
    tail = lines[-1]["certificate"]
    assert tail["schema"] == 1 and tail["converged"] and tail["converged_at"] == tr.converged_at
    assert geo.metric(LINF, Planar(*tail["limit_even"]), Planar(1, 1)) < 1e-8


# --- coupled maps --------------------------------------------------------

@pytest.fixture(scope="module")
def refl():
    return sv.corpus_coupled("reflection")


def test_coupled_constants_validated():
    a = corpus_region("ex15_A")
    for alpha, beta in ((-0.1, 0.2), (0.5, 0.5), (0.7, 0.6)):
        with pytest.raises(PreconditionError):
            sv.CoupledMapDef("bad", None, None, (a, a), L1, alpha, beta)


def test_coupled_product_distance(refl):
    a, b = refl.domain
    d = set_distance(L1, ProductRegion(a, a), ProductRegion(b, b)).value
    assert abs(d - 2 * refl.dist_ab) <= 2e-6 and abs(refl.dist_ab - 1) < 1e-9


def test_coupled_product_map(refl):
    m = sv.coupled_to_cyclic(refl)
    assert sv.verify_cyclic(m, 400)
    rep = sv.verify_contraction(m, refl.alpha + refl.beta, pair_samples=2000)
    assert rep.ok


def test_coupled_solve(refl):
    sol = sv.coupled_solve(refl, Planar(0.2, 0.5), Planar(0.9, -0.05))
    (x, y), (u, v) = sol.xy, sol.uv
    rho = lambda p, q: geo.metric(L1, p, q)
    assert abs(rho(x, u) + rho(y, v) - 2 * refl.dist_ab) < 1e-8
    # coupled best proximity point: both one-sided proximities attain dist
    assert abs(rho(x, refl.f(x, y)) - refl.dist_ab) < 1e-8
    assert abs(rho(y, refl.f(y, x)) - refl.dist_ab) < 1e-8


def test_coupled_diagonal_invariance(refl):
    p = Planar(0.3, 0.4)
    sol = sv.coupled_solve(refl, p, p)
    assert sol.xy[0] == sol.xy[1] and sol.uv[0] == sol.uv[1]
    for q, r in sol.trace.iterates:
        assert q == r


def test_coupled_budget(refl):
    with pytest.raises(BudgetError):
        sv.coupled_solve(refl, Planar(0.2, 0.5), Planar(0.9, -0.05), n_max=4)


def test_product_iteration_matches_pointwise(refl):
    # the product map is exactly (F(x, y), F(y, x)) on A x A
    m = sv.coupled_to_cyclic(refl)
    x, y = Planar(0.1, 0.2), Planar(0.5, -0.4)
    assert m((x, y)) == (refl.f(x, y), refl.f(y, x))
    assert m.metric((x, y), (y, x)) == 2 * geo.metric(L1, x, y)


def test_sample_points_are_members():
    a = corpus_region("ex49_A")
    pts = a.sample(64, rng=np.random.default_rng(0), box=(-10, 10, -10, 10))
    assert all(p in a for p in pts)
