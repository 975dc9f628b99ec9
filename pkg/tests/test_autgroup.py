"""Symmetry classification: loci, normal-form round trips, involutions.

Oracle provenance: locus values and reconstruction targets are checked
against the family identities (already frozen in test_igusa), the subcover
j-quadratics against quotient-curve invariants re-derived independently in
scripts/derive_deg2_quadratics.py, and the classification table against the
seven known curves plus the three exceptional ones.
"""

from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from g2split import autgroup
from g2split.autgroup import (MobiusInvolution, classify, d8_family_curve,
                              d8_family_invariants, d8_t_from_invariants,
                              d12_family_curve, d12_family_invariants,
                              d12_t_from_invariants, deg2_j_quadratic,
                              find_involutions, in_d8_locus, in_d12_locus)
from g2split.errors import DomainError
from g2split.igusa import (AbsoluteInvariants, BinarySextic,
                           absolute_invariants, classical_invariants,
                           curve_from_equation)

D8_T = [F(1), F(-2), F(7, 3), F(81, 196), F(12, 49), F(1, 5), F(-81, 700),
        F(5, 7), F(-3, 11)]
D12_T = [F(1), F(-2), F(7, 3), F(4, 25), F(-4, 11), F(1, 20), F(5, 7),
         F(-3, 11)]

nonzero_fractions = st.fractions(
    min_value=-30, max_value=30, max_denominator=12).filter(bool)


def valid_d8_t(t: F) -> bool:
    return t not in (F(0), F(1, 4), F(-3, 20))


def valid_d12_t(t: F) -> bool:
    return t not in (F(0), F(1, 4), F(1, 40))


# ---------------------------------------------------------------------------
# closed-form family invariants

@pytest.mark.parametrize("t", D8_T)
def test_d8_invariants_match_invariant_pipeline(t):
    assert d8_family_invariants(t) == absolute_invariants(
        classical_invariants(d8_family_curve(t)))


@pytest.mark.parametrize("t", D12_T)
def test_d12_invariants_match_invariant_pipeline(t):
    assert d12_family_invariants(t) == absolute_invariants(
        classical_invariants(d12_family_curve(t)))


def test_d8_invariants_example_value():
    p = d8_family_invariants(F(1))
    assert (p.i1, p.i2, p.i3) == (
        F(-1584, 529), F(390528, 12167), F(2187, 6436343))


@pytest.mark.parametrize("maker,bad,code", [
    (d8_family_invariants, F(0), "degenerate-sextic"),
    (d8_family_invariants, F(1, 4), "degenerate-sextic"),
    (d8_family_invariants, F(-3, 20), "j2-zero"),
    (d12_family_invariants, F(0), "degenerate-sextic"),
    (d12_family_invariants, F(1, 4), "degenerate-sextic"),
    (d12_family_invariants, F(1, 40), "j2-zero"),
])
def test_family_invariants_rejects(maker, bad, code):
    with pytest.raises(DomainError) as exc:
        maker(bad)
    assert exc.value.code == code


def test_d12_minus_one_fortieth_is_fine():
    # only +1/40 kills the weight-2 invariant
    p = d12_family_invariants(F(-1, 40))
    assert p.i1 != 0


# ---------------------------------------------------------------------------
# locus equations

@pytest.mark.parametrize("t", D8_T + [F(-3, 20)])
def test_d8_locus_equation_vanishes_on_family(t):
    J = classical_invariants(d8_family_curve(t))
    assert autgroup._d8_locus_value(J) == 0


@pytest.mark.parametrize("t", D12_T + [F(1, 40), F(-1, 40)])
def test_d12_locus_equations_vanish_on_family(t):
    J = classical_invariants(d12_family_curve(t))
    assert autgroup._d12_locus_values(J) == (0, 0)


def test_dense_generic_curve_fails_both_locus_equations():
    J = classical_invariants(BinarySextic.from_coeffs([1, 2, 3, 4, 5, 6, 7]))
    assert autgroup._d8_locus_value(J) != 0
    assert autgroup._d12_locus_values(J)[0] != 0


@pytest.mark.parametrize("t", [t for t in D8_T if valid_d8_t(t)])
def test_in_d8_locus_on_family(t):
    assert in_d8_locus(classical_invariants(d8_family_curve(t)))


@pytest.mark.parametrize("t", D12_T)
def test_in_d12_locus_on_family(t):
    assert in_d12_locus(classical_invariants(d12_family_curve(t)))


def test_in_d8_locus_j2_zero_stratum():
    assert in_d8_locus(classical_invariants(d8_family_curve(F(-3, 20))))


def test_in_d12_locus_j2_zero_text_form():
    J = classical_invariants(curve_from_equation("x^6+x^3-1/40"))
    assert in_d12_locus(J)


def test_loci_reject_generic_and_cross_family():
    gen = classical_invariants(BinarySextic.from_coeffs([1, 2, 3, 4, 5, 6, 7]))
    assert not in_d8_locus(gen) and not in_d12_locus(gen)
    # a member of one family is generically not in the other's locus
    d8_member = classical_invariants(d8_family_curve(F(1)))
    assert not in_d12_locus(d8_member)
    d12_member = classical_invariants(d12_family_curve(F(1)))
    assert not in_d8_locus(d12_member)


def test_sparse_trinomial_needs_the_round_trip_certificate():
    """X^6 + X + 1 satisfies the order-8 locus *equation* (it shares its
    weight-2,4,6 invariants up to sign with an exceptional curve) but fails
    the round trip, so the membership predicate must still reject it."""
    J = classical_invariants(BinarySextic.from_coeffs([1, 1, 0, 0, 0, 0, 1]))
    assert autgroup._d8_locus_value(J) == 0
    assert not in_d8_locus(J)


# ---------------------------------------------------------------------------
# parameter reconstruction

@pytest.mark.parametrize("t", [t for t in D8_T if valid_d8_t(t)])
def test_d8_reconstruction_round_trip(t):
    assert d8_t_from_invariants(d8_family_invariants(t)) == t


@pytest.mark.parametrize("t", [t for t in D12_T if valid_d12_t(t)])
def test_d12_reconstruction_round_trip(t):
    assert d12_t_from_invariants(d12_family_invariants(t)) == t


@given(t=nonzero_fractions)
@settings(max_examples=60, deadline=None)
def test_d8_reconstruction_round_trip_random(t):
    if not valid_d8_t(t):
        return
    assert d8_t_from_invariants(d8_family_invariants(t)) == t


@given(t=nonzero_fractions)
@settings(max_examples=60, deadline=None)
def test_d12_reconstruction_round_trip_random(t):
    if not valid_d12_t(t):
        return
    assert d12_t_from_invariants(d12_family_invariants(t)) == t


def test_d8_reconstruction_rejects_off_locus():
    p = absolute_invariants(
        classical_invariants(BinarySextic.from_coeffs([1, 2, 3, 4, 5, 6, 7])))
    with pytest.raises(DomainError) as exc:
        d8_t_from_invariants(p)
    assert exc.value.code == "not-in-d8-locus"


def test_d12_reconstruction_rejects_off_locus():
    p = absolute_invariants(
        classical_invariants(BinarySextic.from_coeffs([1, 2, 3, 4, 5, 6, 7])))
    with pytest.raises(DomainError) as exc:
        d12_t_from_invariants(p)
    assert exc.value.code == "not-in-d12-locus"


def test_d8_reconstruction_zero_denominator():
    # i1 = 0 forces the denominator to 139968 - 9450 i2; choose i2 to kill it
    p = AbsoluteInvariants(i1=F(0), i2=F(139968, 9450), i3=F(1))
    with pytest.raises(DomainError) as exc:
        d8_t_from_invariants(p)
    assert exc.value.code == "degenerate-reconstruction"


def test_d12_closed_form_reconstruction_variant():
    """A closed-form t-expression analogous to the quintic-family one
    circulates for the sextic family; it fails its own round trip (at the
    known curve with t = 1/20 it returns 3979/79380), which is why
    d12_t_from_invariants solves the defining quadratic instead."""
    p = d12_family_invariants(F(1, 20))
    i1, i2 = p.i1, p.i2
    num = 540 * i1 ** 2 + 100 * i1 * i2 - 1728 * i1 + 45 * i2
    den = (2700 * i1 ** 2 + 1000 * i1 * i2 + 204525 * i1 + 40950 * i2
           - 708588)
    t = F(1, 4) * num / den
    assert t == F(3979, 79380)          # not 1/20
    assert d12_t_from_invariants(p) == F(1, 20)


# ---------------------------------------------------------------------------
# involutions

def as_map_set(invs):
    return {(s.a, s.b, s.c): s for s in invs}


def test_involutions_of_symmetric_quintic():
    f = curve_from_equation("x^5+x^3+x")
    maps = as_map_set(find_involutions(f))
    assert set(maps) == {(F(1), F(0), F(0)), (F(0), F(1), F(1)),
                         (F(0), F(-1), F(1))}
    # x -> -x fixes the branch points 0 and infinity
    assert maps[(F(1), F(0), F(0))].fixed_branch_points == 2
    assert not maps[(F(1), F(0), F(0))].is_elliptic
    # x -> 1/x and x -> -1/x fix no branch point
    assert maps[(F(0), F(1), F(1))].fixed_branch_points == 0
    assert maps[(F(0), F(-1), F(1))].is_elliptic


def test_involutions_of_sixth_roots_curve():
    maps = as_map_set(find_involutions(curve_from_equation("x^6-1")))
    assert maps[(F(1), F(0), F(0))].fixed_branch_points == 0
    assert maps[(F(1), F(0), F(0))].multiplier == 1
    # x -> 1/x fixes the branch points +-1 here
    assert maps[(F(0), F(1), F(1))].fixed_branch_points == 2


def test_involutions_generic_curve_empty():
    assert find_involutions(BinarySextic.from_coeffs([1, 2, 3, 4, 5, 6, 7])) == []


def test_involutions_require_squarefree():
    with pytest.raises(DomainError) as exc:
        find_involutions(BinarySextic.from_coeffs([0, 0, 1, 0, 0, 0, 1]))
    assert exc.value.code == "degenerate-sextic"


def test_involution_form_identity_and_order_two():
    f = curve_from_equation("x^5+x^3+x")
    for s in find_involutions(f):
        g = f.transformed(s.a, s.b, s.c, -s.a)
        assert list(g.coeffs()) == [s.multiplier * c for c in f.coeffs()]
        # the map squares to the identity away from its pole
        for x in (F(2), F(-5, 3), F(7, 2)):
            if s.c * x - s.a != 0 and s.c * s(x) - s.a != 0:
                assert s(s(x)) == x


def test_involutions_conjugation_covariance():
    """Conjugating the curve by a Mobius change of coordinates transports
    the involution set; in particular the count is preserved."""
    f = curve_from_equation("x^5+x^3+x")
    g = f.transformed(F(2), F(1), F(-1), F(3))
    assert len(find_involutions(g)) == len(find_involutions(f))


def test_involution_with_translation_part():
    # (x-1)^6 - 1 is symmetric about x = 1, so the reflection x -> -x + 2
    # must be found; its normalized chart form is (a, b, c) = (1, -2, 0)
    f = BinarySextic.from_coeffs([0, -6, 15, -20, 15, -6, 1])
    maps = as_map_set(find_involutions(f))
    assert (F(1), F(-2), F(0)) in maps


# ---------------------------------------------------------------------------
# classification

KNOWN_CLASSES = [
    ("196x^5+196x^3+81x", "D8"),
    ("49x^5+49x^3+12x", "D8"),
    ("5x^5+5x^3+x", "D8"),
    ("700x^5+700x^3-81x", "D8"),
    ("25x^6+25x^3+4", "D12"),
    ("11x^6+11x^3-4", "D12"),
    ("20x^6+20x^3+1", "D12"),
    ("(3x^2+4)(x^3+x)", "D8"),
    ("x^6-1", "Z3⋊D8"),
    ("x^5-x", "GL2(3)"),
    ("x^6-x", "Z10"),
]


@pytest.mark.parametrize("text,label", KNOWN_CLASSES)
def test_classify_known_curves(text, label):
    assert classify(curve_from_equation(text)) == label


def test_classify_boundary_parameters_promote():
    # the parameters excluded from the normal-form charts are exactly the
    # ones whose curves have even larger symmetry groups
    assert classify(d8_family_curve(F(9, 100))) == "Z3⋊D8"
    assert classify(d12_family_curve(F(-1, 50))) == "GL2(3)"


def test_classify_bielliptic_and_generic():
    assert classify(curve_from_equation("x^6+3x^4+3x^2+2")) == "V4"
    assert classify(BinarySextic.from_coeffs([1, 2, 3, 4, 5, 6, 7])) == "Z2"


def test_classify_rejects_repeated_roots():
    with pytest.raises(DomainError) as exc:
        classify(BinarySextic.from_coeffs([0, 0, 1, 0, 0, 0, 1]))
    assert exc.value.code == "degenerate-sextic"


@given(a=st.integers(-4, 4), b=st.integers(-4, 4), c=st.integers(-4, 4),
       base=st.sampled_from(["49x^5+49x^3+12x", "20x^6+20x^3+1",
                             "x^6+3x^4+3x^2+2", "x^6-1"]))
@settings(max_examples=40, deadline=None)
def test_classify_is_coordinate_free(a, b, c, base):
    d = F(1 + b * c, a) if a else None
    if d is None:
        return
    f = curve_from_equation(base)
    label = classify(f)
    g = f.transformed(F(a), F(b), F(c), d)  # det = ad - bc = 1
    assert classify(g) == label


# ---------------------------------------------------------------------------
# degree-2 subcover j-quadratics

def sum_product(q):
    dense = q.dense_uni()
    assert len(dense) == 3 and dense[2] == 1
    return -dense[1], dense[0]


def test_deg2_d8_split_field_values():
    S, P = sum_product(deg2_j_quadratic("d8", F(12, 49)))
    assert S == 2 * 76771008
    assert P == 76771008 ** 2 - 3 * 44330496 ** 2


def test_deg2_d8_cm_point_double_root():
    S, P = sum_product(deg2_j_quadratic("d8", F(-81, 700)))
    assert (S, P) == (-6750, 3375 ** 2)  # double root j = -3375


def test_deg2_d12_rational_pair():
    S, P = sum_product(deg2_j_quadratic("d12", F(4, 25)))
    assert (S, P) == (-12288000, 0)  # j-invariants 0 and -12288000


def test_deg2_d12_double_root():
    S, P = sum_product(deg2_j_quadratic("d12", F(-4, 11)))
    assert (S, P) == (-65536, 2 ** 30)  # double root j = -32768


def test_deg2_family_aliases_and_errors():
    assert deg2_j_quadratic("D8-family", F(1)) == deg2_j_quadratic("d8", F(1))
    assert deg2_j_quadratic("D12", F(1)) == deg2_j_quadratic("d12", F(1))
    with pytest.raises(ValueError):
        deg2_j_quadratic("d9", F(1))
    for fam in ("d8", "d12"):
        for t in (F(0), F(1, 4)):
            with pytest.raises(DomainError) as exc:
                deg2_j_quadratic(fam, t)
            assert exc.value.code == "degenerate-sextic"
