"""Charted log-etale checks, root adjunction, base change."""

from math import gcd

import pytest

from loggeom.etale import (
    adjoin_root, base_change, check_charted_log_etale, log_unramified_check,
)
from loggeom.logrings import PreLogMap, PreLogRing, builtin_units, _logify_pushout
from loggeom.monoids import MonoidMap, MonoidPresentation, identity_monoid_map
from loggeom.rings import (
    INT, RAT, RingMap, RingPresentation, fp, identity_ring_map, int_inv, is_unit,
)


def free_point(coeff, value=None):
    ring = RingPresentation.make(coeff, [], [])
    return PreLogRing.make(ring, MonoidPresentation(("x",), ()),
                           [ring.zero() if value is None else ring.const(value)])


CHARS = [0, 2, 3, 5]
DEGREES = [2, 3, 4, 6]


@pytest.mark.parametrize("char", CHARS)
@pytest.mark.parametrize("n", DEGREES)
def test_adjoin_root_matches_tameness(char, n):
    base = free_point(RAT if char == 0 else fp(char))
    target, chart = adjoin_root(base, n)
    report = check_charted_log_etale(chart)
    expected = char == 0 or gcd(n, char) == 1
    assert report.overall == expected
    assert report.etale_status == "etale"
    assert report.injective
    assert report.invariant_factors == ((n,) if n > 1 else ())
    assert expected == is_unit(base.ring.const(n), base.ring)[0] or char == 0


def test_adjoin_root_pass_iff_unit_over_more_bases():
    bases = [
        free_point(INT, 3),
        free_point(int_inv(2), 3),
        free_point(int_inv(6), 3),
    ]
    for base in bases:
        for n in DEGREES:
            _, chart = adjoin_root(base, n)
            report = check_charted_log_etale(chart)
            assert report.overall == is_unit(base.ring.const(n), base.ring)[0]


def test_adjoin_root_identity_degree():
    base = free_point(INT, 3)
    target, chart = adjoin_root(base, 1)
    report = check_charted_log_etale(chart)
    assert report.overall and report.invariant_factors == ()


def test_adjoin_root_requires_free_rank_one():
    z = RingPresentation.make(INT, [], [])
    torsion = MonoidPresentation(("x",), (((2,), (0,)),))
    x = PreLogRing.make(z, torsion, [z.const(-1)])
    with pytest.raises(ValueError):
        adjoin_root(x, 2)


def sqrt3_charts():
    out = {}
    for label, coeff in (("inverted", int_inv(2)), ("plain", INT)):
        r = RingPresentation.make(coeff, [], [])
        a = RingPresentation.make(coeff, ["t"], [{(2,): 1, (0,): -3}])
        x = PreLogRing.make(r, MonoidPresentation(("x",), ()), [r.const(3)])
        y = PreLogRing.make(a, MonoidPresentation(("t",), ()), [a.var("t")])
        out[label] = PreLogMap(x, y, RingMap.make(r, a, []),
                               MonoidMap(x.monoid, y.monoid, ((2,),)))
    return out


def test_sqrt3_transport():
    charts = sqrt3_charts()
    good = check_charted_log_etale(charts["inverted"])
    assert good.overall and good.invariant_factors == (2,)
    bad = check_charted_log_etale(charts["plain"])
    assert not bad.overall
    assert bad.group_status == "fail"
    assert any("2" in d for d in bad.diagnostics)


def corpus_charts():
    charts = []
    for char in CHARS:
        base = free_point(RAT if char == 0 else fp(char))
        for n in DEGREES:
            charts.append(adjoin_root(base, n)[1])
    charts.extend(sqrt3_charts().values())
    return charts


def test_chart_pass_implies_formally_unramified():
    for chart in corpus_charts():
        report = check_charted_log_etale(chart)
        if report.overall:
            assert log_unramified_check(chart)


def test_unramified_examples():
    base = free_point(fp(3))
    _, chart = adjoin_root(base, 2)
    assert log_unramified_check(chart)
    _, wild = adjoin_root(base, 3)
    assert not log_unramified_check(wild)
    pt = free_point(fp(3))
    ident = PreLogMap(pt, pt, identity_ring_map(pt.ring),
                      identity_monoid_map(pt.monoid))
    assert log_unramified_check(ident)


def test_square_system_jacobian_branch():
    # a genuine 1x1 system: adjoining a unit square root is etale away
    # from 2, ramified at 2; the nilpotent version always fails
    for char, expected in ((0, True), (3, True), (2, False)):
        coeff = RAT if char == 0 else fp(char)
        k = RingPresentation.make(coeff, [], [])
        a = RingPresentation.make(coeff, ["u"], [{(2,): 1, (0,): coeff.carrier().normalize(-1)}])
        x = PreLogRing.make(k, MonoidPresentation((), ()), [])
        y = PreLogRing.make(a, MonoidPresentation((), ()), [])
        chart = PreLogMap(x, y, RingMap.make(k, a, []),
                          MonoidMap(x.monoid, y.monoid, ()))
        report = check_charted_log_etale(chart)
        assert report.overall == expected, (char, report)
        assert "square system of size 1" in report.etale_evidence
    kq = RingPresentation.make(RAT, [], [])
    nil = RingPresentation.make(RAT, ["u"], [{(2,): 1}])
    chart = PreLogMap(PreLogRing.make(kq, MonoidPresentation((), ()), []),
                      PreLogRing.make(nil, MonoidPresentation((), ()), []),
                      RingMap.make(kq, nil, []),
                      MonoidMap(MonoidPresentation((), ()), MonoidPresentation((), ()), ()))
    report = check_charted_log_etale(chart)
    assert not report.overall and report.etale_status == "fail"


def test_base_change_examples():
    # along the identity: same presentation data up to renaming
    x = free_point(INT, 3)
    ident = PreLogMap(x, x, identity_ring_map(x.ring), identity_monoid_map(x.monoid))
    res, _, _ = base_change(ident, ident)
    from loggeom.monoids import group_completion
    assert group_completion(res.monoid).group.rank == 1
    # (Z, <x>, x->3) over (Z, <x>) to (F3, <x>, x->0): collapses
    f3 = RingPresentation.make(fp(3), [], [])
    y = free_point(fp(3))
    to_f3 = PreLogMap(x, y, RingMap.make(x.ring, f3, []),
                      identity_monoid_map(x.monoid))
    res2, _, _ = base_change(ident, to_f3)
    assert res2.ring.coeff == f3.coeff
    assert res2.ring.is_zero_elem(res2.ring.const(3))


def test_base_change_root_chart_to_residue_field():
    # push a root adjunction of (Z, <x>, x -> 3) down to F_5
    from loggeom.logrings import inverse_image
    from loggeom.monoids import group_completion
    base = free_point(INT, 3)
    target, chart = adjoin_root(base, 2)
    f5 = RingPresentation.make(fp(5), [], [])
    down = RingMap.make(base.ring, f5, [])
    based = inverse_image(down, base)
    along = PreLogMap(base, based, down, identity_monoid_map(base.monoid))
    res, from_target, from_based = base_change(chart, along)
    # the result is F_5[u]/(u^2 - 3) with the pushout monoid <u> + <x> / (x = 2u)
    u = from_target.ring_map.apply(target.ring.var(target.ring.vars[0]))
    sq = res.ring.mul(u, u)
    assert res.ring.elements_equal(sq, res.ring.const(3))
    gp = group_completion(res.monoid).group
    assert gp.rank == 1 and gp.torsion == ()


def test_group_condition_stable_under_strict_base_change():
    # base-change a root chart along the logification (a strict map) and
    # compare the cokernel invariant factors of the two charts
    from loggeom.intlin import cokernel
    base = free_point(fp(5))
    base = base.with_units(builtin_units(base.ring))
    _, chart = adjoin_root(base, 3)
    factors_before = cokernel(chart.monoid_map.gp_map())[0]
    logi = _logify_pushout(base)
    structure = chart
    res, from_x, from_rp = base_change(structure, logi.map)
    new_chart_monoid = from_x.monoid_map.compose(chart.monoid_map)
    # the induced chart map out of the logified base
    glued = res.monoid
    images = []
    for j in range(logi.prelog.monoid.ngens):
        images.append(from_rp.monoid_map.images[j])
    induced = MonoidMap(logi.prelog.monoid, glued, tuple(images))
    factors_after = cokernel(induced.gp_map())[0]
    assert factors_before.torsion == factors_after.torsion
    assert factors_before.rank == factors_after.rank
