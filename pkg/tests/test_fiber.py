"""Fiber solving and family scans: moduli equations, stratum matchers, e3.

Oracle provenance: the seven worked family parameters with their published
subcover counts and the two published fiber descriptions ((20,16) for the
sextic family root -4/11; the w = 0 quintic match for the quintic family
root 12/49); the remaining anchors are self-authenticating round trips --
a matched stratum parameter must reproduce the queried moduli point
exactly, and a chart solution must be a nondegenerate parameter with the
queried invariants.
"""

from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from g2split.autgroup import d12_family_invariants, d8_family_invariants
from g2split.errors import DomainError
from g2split.fiber import (FiberReport, boundary_cover_sextic,
                           boundary_family_match, cyclic_cover_point,
                           cyclic_cover_sextic, e3_fiber,
                           family_invariant_polys, family_root_scan,
                           moduli_equations, quintic_family_match,
                           rational_parameter_grid)
from g2split.igusa import absolute_invariants, classical_invariants
from g2split.subcovers import (DegenerateParam, UVParam, beta,
                               degenerate_sextic, nondegenerate_sextic,
                               theta)

ROWS = [("d8", F(81, 196), 2), ("d8", F(12, 49), 1), ("d8", F(1, 5), 2),
        ("d8", F(-81, 700), 2), ("d12", F(4, 25), 1),
        ("d12", F(-4, 11), 1), ("d12", F(1, 20), 2)]


def family_point(family: str, t: F):
    fn = d8_family_invariants if family == "d8" else d12_family_invariants
    return fn(t)


uv_values = st.fractions(min_value=-12, max_value=12, max_denominator=5)


# ---------------------------------------------------------------------------
# invariant polynomials of the chart family

def test_family_polys_match_direct_invariants():
    J = family_invariant_polys()
    q = UVParam(F(5, 3), F(-7, 2))
    inv = classical_invariants(nondegenerate_sextic(q))
    for key, want in zip(("J2", "J4", "J6", "J10"), inv.as_tuple()):
        assert J[key](u=q.u, v=q.v) == want


def test_universal_ghost_kills_every_invariant():
    # (9, 27) solves the cleared system for every target point
    J = family_invariant_polys()
    assert all(J[k](u=9, v=27) == 0 for k in ("J2", "J4", "J6", "J10"))


def test_moduli_equations_vanish_on_fiber_point():
    A, B, C = moduli_equations(family_point("d12", F(-4, 11)))
    for P in (A, B, C):
        assert P(u=20, v=16) == 0
        assert P(u=19, v=16) != 0


# ---------------------------------------------------------------------------
# the published subcover counts

@pytest.mark.parametrize("family,t,count", ROWS)
def test_published_family_counts(family, t, count):
    assert e3_fiber(family_point(family, t)).e3 == count


def test_sextic_root_fiber_is_the_selfpaired_point():
    rep = e3_fiber(family_point("d12", F(-4, 11)))
    assert [(q.u, q.v) for q in rep.rational_solutions] == [(F(20), F(16))]
    assert rep.on_branch_curve == (True,)
    assert rep.closure_count == 1
    assert rep.degenerate is None and rep.boundary_match is None


def test_quintic_root_fiber_is_the_degenerate_match():
    rep = e3_fiber(family_point("d8", F(12, 49)))
    assert rep.rational_solutions == ()
    assert rep.closure_count == 0
    assert rep.degenerate == DegenerateParam(w=F(0), c=F(0))
    assert rep.degenerate_count == 1


def test_conjugate_only_fibers_count_two():
    for family, t in [("d8", F(81, 196)), ("d8", F(1, 5)),
                      ("d12", F(1, 20))]:
        rep = e3_fiber(family_point(family, t))
        assert rep.rational_solutions == ()
        assert rep.closure_count == 2
        assert rep.degenerate_count == 0 and rep.boundary_count == 0
        assert not rep.cyclic_match


def test_rational_pair_fiber_is_a_deck_orbit():
    rep = e3_fiber(family_point("d8", F(-81, 700)))
    pts = {(q.u, q.v) for q in rep.rational_solutions}
    assert pts == {(F(25, 2), F(250, 9)), (F(-775, 8), F(125, 36))}
    assert rep.on_branch_curve == (False, False)
    first, second = rep.rational_solutions
    assert beta(first) == second and beta(second) == first


def test_rotation_symmetric_fiber():
    rep = e3_fiber(family_point("d12", F(4, 25)))
    assert rep.cyclic_match
    assert rep.closure_count == 0
    assert rep.degenerate is None and rep.degenerate_count == 0
    assert rep.boundary_match is None and rep.boundary_count == 0
    assert rep.e3 == 1


# ---------------------------------------------------------------------------
# off-chart strata

def test_cyclic_representative_hits_the_sextic_family_root():
    inv = absolute_invariants(classical_invariants(cyclic_cover_sextic()))
    assert inv == cyclic_cover_point()
    assert inv == family_point("d12", F(4, 25))


def test_quintic_family_round_trip():
    for w in (F(1), F(4), F(16, 9)):
        p = absolute_invariants(classical_invariants(
            degenerate_sextic(DegenerateParam.from_w(w))))
        match = quintic_family_match(p)
        assert match is not None and match.w == w


def test_quintic_members_also_carry_one_chart_cover():
    # the deck partner of the one-place-ramified cover is a generic
    # two-place cover, so these fibers split 1 + 1
    p = absolute_invariants(classical_invariants(
        degenerate_sextic(DegenerateParam.from_w(F(1)))))
    rep = e3_fiber(p)
    assert rep.closure_count == 1 and rep.degenerate_count == 1
    assert rep.degenerate == DegenerateParam.from_w(F(1))
    assert rep.e3 == 2


def test_boundary_family_round_trip():
    for s in (F(27, 32), F(-5), F(7, 3)):
        p = absolute_invariants(classical_invariants(
            boundary_cover_sextic(s)))
        assert boundary_family_match(p) == s


def test_collapsed_involution_line_pairs_with_boundary_family():
    # beta crushes v = 3u to (0, 0); the missing partners are boundary
    # covers, recovered by the matcher with the moduli round-tripping
    for u0, s in [(F(1), F(27, 32)), (F(2), F(27, 14)),
                  (F(-1), F(-27, 40))]:
        q = UVParam(u0, 3 * u0)
        assert beta(q) == UVParam(0, 0)
        rep = e3_fiber(theta(q))
        assert rep.closure_count == 1 and rep.boundary_match == s
        assert rep.e3 == 2
        back = absolute_invariants(classical_invariants(
            boundary_cover_sextic(s)))
        assert back == rep.point


def test_strata_do_not_overlap_on_published_points():
    for family, t, _ in ROWS:
        p = family_point(family, t)
        w = quintic_family_match(p)
        s = boundary_family_match(p)
        if (family, t) == ("d8", F(12, 49)):
            assert w is not None and s is None
        else:
            assert w is None and s is None


def test_non_members_match_nothing():
    p = theta(UVParam(1, 1))
    assert quintic_family_match(p) is None
    assert boundary_family_match(p) is None


# ---------------------------------------------------------------------------
# fiber structure on random parameters

@settings(max_examples=12, deadline=None)
@given(u=uv_values, v=uv_values)
def test_fiber_contains_the_deck_orbit(u, v):
    q = UVParam(u, v)
    if not q.is_nondegenerate:
        return
    rep = e3_fiber(theta(q))
    assert rep.point == theta(q)
    assert q in rep.rational_solutions
    bq = beta(q)
    if bq.is_nondegenerate:
        assert bq in rep.rational_solutions
    elif (bq.u, bq.v) == (0, 0):
        assert rep.boundary_count >= 1
    else:
        # the only other collapse target is the universal ghost, whose
        # blowup is the one-place-ramified family
        assert (bq.u, bq.v) == (9, 27)
        assert rep.degenerate_count >= 1
    assert rep.e3 in (1, 2, 4)
    assert len(rep.on_branch_curve) == len(rep.rational_solutions)


# ---------------------------------------------------------------------------
# report validation

def _report(**kw):
    base = dict(point=family_point("d8", F(1, 5)), rational_solutions=(),
                closure_count=0, degenerate=None, degenerate_count=0,
                boundary_match=None, boundary_count=0, cyclic_match=False,
                on_branch_curve=())
    base.update(kw)
    return FiberReport(**base)


def test_impossible_chart_count_is_refused():
    with pytest.raises(DomainError) as exc:
        _report(closure_count=3)
    assert exc.value.code == "fiber-overflow"
    with pytest.raises(DomainError):
        _report(closure_count=5)


def test_impossible_stratum_sum_is_refused():
    with pytest.raises(DomainError) as exc:
        _report(closure_count=2, boundary_count=1)
    assert exc.value.code == "fiber-overflow"
    # while 2 + 2 = 4 is a legal total
    assert _report(closure_count=2, degenerate_count=2).e3 == 4


# ---------------------------------------------------------------------------
# family scans

def test_quintic_family_scan_flags_only_published_roots():
    ts = rational_parameter_grid(10, 5) + [F(12, 49), F(-3, 20)]
    rep = family_root_scan("d8", ts)
    assert rep.family == "d8"
    assert {t: e for t, e in rep.e3_by_t.items() if e >= 1} == {
        F(1, 5): 2, F(12, 49): 1}
    assert rep.rejected == {F(0): "degenerate-sextic",
                            F(1, 4): "degenerate-sextic",
                            F(-3, 20): "j2-zero"}
    assert rep.flagged() == [F(1, 5), F(12, 49)]


def test_sextic_family_scan_flags_only_published_roots():
    ts = rational_parameter_grid(10, 5) + [F(4, 25), F(-4, 11), F(1, 20),
                                           F(1, 40)]
    rep = family_root_scan("sextic", ts)
    assert rep.family == "d12"
    assert {t: e for t, e in rep.e3_by_t.items() if e >= 1} == {
        F(4, 25): 1, F(-4, 11): 1, F(1, 20): 2}
    assert rep.rejected == {F(0): "degenerate-sextic",
                            F(1, 4): "degenerate-sextic",
                            F(1, 40): "j2-zero"}


def test_scan_exact_confirms_every_flag():
    rep = family_root_scan("d8", [F(1, 5), F(2), F(13, 7)])
    assert F(1, 5) in rep.exact_checked
    assert rep.e3_by_t[F(2)] == 0 and rep.e3_by_t[F(13, 7)] == 0


def test_scan_rejects_unknown_family():
    with pytest.raises(ValueError):
        family_root_scan("d16", [F(1)])


def test_parameter_grid_shape():
    grid = rational_parameter_grid(10, 4)
    assert F(-10) in grid and F(10) in grid
    assert F(1, 4) in grid and F(10, 3) in grid
    assert len(grid) == len(set(grid))
    assert grid == sorted(grid)
    assert F(1, 5) not in grid
