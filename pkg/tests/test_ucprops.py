import json
import math

import pytest

from bestprox import geometry as geo
from bestprox import ucprops as uc
from bestprox.errors import CatalogError, PreconditionError
from bestprox.geometry import L2, LINF, PRODUCT, Blocks, Planar
from bestprox.regions import corpus_pair


def pair_args(name):
    p = corpus_pair(name)
    return p.norm, p.region_a, p.region_b


def test_family_examples_at_one():
    f = uc.corpus_family("example43")
    assert (f.gen_x(1), f.gen_z(1), f.gen_y(1)) == (Planar(1, 1), Planar(2, 0.5), Planar(1, -0.5))
    g = uc.corpus_family("example50")
    c = 1 / math.sqrt(2)
    (k, (u, v)), = g.gen_x(1).entries
    assert k == 2 and u == pytest.approx(c, rel=1e-15) and v == pytest.approx(c, rel=1e-15)
    s = lambda n: geo.sphere_point(L2, 0.3 * n)
    fam = uc.normalized_sum_family(L2, s, s)
    for n in (1, 2, 7):
        assert geo.metric(L2, fam.gen_y(n), s(n) * 2.0) < 1e-15


def test_unknown_family():
    with pytest.raises(CatalogError):
        uc.corpus_family("nope")


def test_example43_closed_forms():
    f = uc.corpus_family("example43")
    for n in range(1, 2001):
        x, z, y = f.gen_x(n), f.gen_z(n), f.gen_y(n)
        assert geo.metric(LINF, x, y) == pytest.approx(1 / n - 1 / (n + 1) + 1, abs=1e-15)
        assert geo.metric(LINF, z, x) >= 1.0


def test_example43_split_verdicts():
    norm, a, b = pair_args("ex43")
    fam = [uc.corpus_family("example43")]
    v_uc = uc.uc_falsify(norm, a, b, fam, n_max=10_000, tol=1e-3, pair="ex43")
    assert v_uc.falsified and v_uc.witness_name == "example43"
    assert v_uc.measured_limits["liminf_rho_xz"] >= 1.0
    v_buc = uc.buc_falsify(norm, a, b, fam, n_max=10_000, tol=1e-3, pair="ex43")
    assert not v_buc.falsified and v_buc.outcome == "no_counterexample"
    assert len(v_buc.rejected) == 1 and "unbounded" in v_buc.rejected[0]
    assert v_buc.text.endswith("no counterexample found within budget")
    assert "holds" not in v_buc.text


def test_example50_closed_forms():
    f = uc.corpus_family("example50")
    for n in range(1, 201):
        c = 2.0 ** (-1.0 / (n + 1))
        x, z, y = f.gen_x(n), f.gen_z(n), f.gen_y(n)
        assert geo.metric(PRODUCT, x, z) == 2 * c
        dxy = geo.metric(PRODUCT, x, y)
        assert 2 - c <= dxy < 2 * 2 ** (1 / (n + 1)) - 1
        assert geo.norm_eval(PRODUCT, x) == pytest.approx(1.0, abs=1e-15)
        assert geo.norm_eval(PRODUCT, y) == 2.0


@pytest.mark.parametrize("fn", [uc.uc_falsify, uc.buc_falsify, uc.ucstar_falsify])
def test_example50_falsified(fn):
    p = corpus_pair("ex50")
    v = fn(p.norm, p.region_a, p.region_b, [uc.corpus_family("example50")], n_max=200, tol=1e-2,
           dist_ab=p.dist, pair="ex50")
    assert v.falsified
    if fn is not uc.ucstar_falsify:
        assert v.measured_limits["liminf_rho_xz"] >= 1.9


def test_membership_violation_rejects_family():
    norm, a, b = pair_args("ex43")
    bad = uc.SequenceFamily("bad", lambda n: Planar(1, 0), lambda n: Planar(1, 1), lambda n: Planar(0, 0))
    v = uc.uc_falsify(norm, a, b, [bad], n_max=100, dist_ab=1.0)
    assert not v.falsified and v.rejected and "x_1" in v.rejected[0]


def test_declared_radius_enforced():
    p = corpus_pair("ex50")
    f = uc.corpus_family("example50")
    liar = uc.SequenceFamily("liar", f.gen_x, f.gen_z, f.gen_y, bounded=True, radius=0.5)
    v = uc.buc_falsify(p.norm, p.region_a, p.region_b, [liar], n_max=50, tol=1e-2, dist_ab=1.0)
    assert not v.falsified and "bound" in v.rejected[0]


def test_empty_family_list():
    norm, a, b = pair_args("ex43")
    for fn in (uc.uc_falsify, uc.buc_falsify, uc.ucstar_falsify):
        v = fn(norm, a, b, [])
        assert v.outcome == "no_counterexample" and v.budget == 0


def test_bad_arguments():
    norm, a, b = pair_args("ex43")
    with pytest.raises(PreconditionError):
        uc.uc_falsify(norm, a, b, [], n_max=4)
    with pytest.raises(PreconditionError):
        uc.uc_falsify(norm, a, b, [], tol=0)


def test_ucstar_cases():
    norm, a, b = pair_args("ex28_linf")
    v = uc.ucstar_falsify(norm, a, b, [uc.corpus_family("ex28_linf")], n_max=400, tol=1e-2, dist_ab=0.0)
    assert not v.falsified
    norm, a, b = pair_args("ex43")
    v = uc.ucstar_falsify(norm, a, b, [uc.corpus_family("constant_ex43")], n_max=200, dist_ab=1.0)
    assert not v.falsified


def test_ucstar_reports_uc_clause_first():
    p = corpus_pair("ex50")
    v = uc.ucstar_falsify(p.norm, p.region_a, p.region_b, [uc.corpus_family("example50")], n_max=200,
                          tol=1e-2, dist_ab=1.0)
    assert v.falsified and v.measured_limits["clause"] == "uc"


def test_verdict_json_roundtrip():
    v = uc.run_expected(uc.EXPECTED_VERDICTS[0])
    data = json.loads(json.dumps(v.to_json()))
    assert data["outcome"] == "falsified" and data["property"] == "UC"


@pytest.mark.parametrize("entry", uc.EXPECTED_VERDICTS, ids=lambda e: f"{e.property}-{e.pair}")
def test_expected_verdicts(entry):
    assert uc.run_expected(entry).outcome == entry.expected


def test_ex15_l1_has_no_counterexample_under_any_corpus_family():
    norm, a, b = pair_args("ex15_AB")
    fams = [uc.corpus_family(n) for n in uc.FAMILY_NAMES if n not in ("example50", "normsum_example50")]
    for n_max in (64, 500):
        v = uc.uc_falsify(norm, a, b, fams, n_max=n_max, tol=1e-3, dist_ab=1.0)
        assert not v.falsified


# --- harnesses -----------------------------------------------------------

def _orbit_gens():
    f = uc.corpus_family("ex49_orbit")
    return f.gen_x, f.gen_z, f.gen_y


def test_cauchy_examples():
    gx, _gz, gy = _orbit_gens()
    norm, a, b = pair_args("ex49")
    assert tuple(uc.cauchy_criterion_check(norm, a, b, gx, gy, n_max=100, dist_ab=1.0)) == (True, True)
    norm, a, b = pair_args("ex43")
    res = uc.cauchy_criterion_check(norm, a, b, lambda n: Planar(1, 1), lambda n: Planar(0, 0),
                                    n_max=50, dist_ab=1.0)
    assert tuple(res) == (True, True)


def test_cauchy_example50_recorded():
    p = corpus_pair("ex50")
    f = uc.corpus_family("example50")
    res = uc.cauchy_criterion_check(p.norm, p.region_a, p.region_b, f.gen_x, f.gen_y, n_max=64,
                                    tol=1e-2, dist_ab=1.0)
    # the pair is not UC, so nothing is asserted about the outcome
    assert isinstance(res.premise_holds, bool) and isinstance(res.is_cauchy, bool)


def test_cauchy_holds_wherever_uc_survives():
    # ex49 carries no UC counterexample, so the premise must imply Cauchy along its orbit
    gx, _gz, gy = _orbit_gens()
    norm, a, b = pair_args("ex49")
    premise, cauchy = uc.cauchy_criterion_check(norm, a, b, gx, gy, n_max=200, dist_ab=1.0)
    assert (not premise) or cauchy


def test_boundedness_examples():
    gx, gz, gy = _orbit_gens()
    assert uc.boundedness_harness(LINF, gx, gz, gy, n_max=100) == (True, True, True)
    f = uc.corpus_family("example43")
    a_fin, b_fin, ok = uc.boundedness_harness(LINF, f.gen_x, f.gen_z, f.gen_y, n_max=200)
    assert not b_fin and ok is None
    c = lambda n: Planar(1, 1)
    assert uc.boundedness_harness(LINF, c, c, lambda n: Planar(0, 0), n_max=32) == (True, True, True)


def test_limit_norm_examples():
    assert uc.limit_norm_harness(L2, lambda n: Planar(1 - 1 / n, 0), lambda n: Planar(1, 0), 1, 1,
                                 tol=1e-2) is True
    f = uc.corpus_family("example50")
    assert uc.limit_norm_harness(PRODUCT, f.gen_x, f.gen_z, 1, 1, tol=1e-2) is True
    assert uc.limit_norm_harness(L2, lambda n: Planar((-1) ** n, 0), lambda n: Planar(1, 0), 1, 1) is None


def test_nearest_point_family_constant():
    f = uc.nearest_point_family(lambda n: Planar(1, 0), lambda n: Planar(1, 0), Planar(2, 0))
    assert f.gen_y(5) == Planar(2, 0) and f.bounded


# --- meta-tests ----------------------------------------------------------

def _compatible(fam, p):
    try:
        pt = fam.gen_x(1)
    except Exception:
        return False
    return isinstance(pt, Blocks) == (p.norm == PRODUCT)


def _meta_cases():
    from bestprox.regions import PAIR_NAMES
    for name in PAIR_NAMES:
        p = corpus_pair(name)
        fams = [uc.corpus_family(f) for f in uc.FAMILY_NAMES]
        fams = [f for f in fams if _compatible(f, p)]
        yield p, fams


@pytest.mark.parametrize("p,fams", list(_meta_cases()), ids=lambda v: getattr(v, "name", ""))
def test_bounded_ucstar_never_beats_buc(p, fams):
    # a bounded UC* counterexample cannot coexist with a BUC pass
    args = (p.norm, p.region_a, p.region_b)
    bounded = [f for f in fams if f.bounded]
    buc = uc.buc_falsify(*args, fams, n_max=200, tol=1e-2, dist_ab=p.dist, pair=p.name)
    star = uc.ucstar_falsify(*args, bounded, n_max=200, tol=1e-2, dist_ab=p.dist, pair=p.name)
    assert not (not buc.falsified and star.falsified)
    ucv = uc.uc_falsify(*args, fams, n_max=200, tol=1e-2, dist_ab=p.dist, pair=p.name)
    if buc.falsified:
        assert ucv.falsified
