"""Exact fibers of the parameter-to-moduli map.

Solving theta(u, v) = p for a moduli point p drives the subcover counting:
clear the three absolute-invariant equations into integer polynomial
conditions A = B = C = 0, eliminate u by pairwise resultants, intersect in
v, then walk the surviving v-classes -- rational ones by direct enumeration,
irrational ones through gcd computations over Q[v]/(h) -- discarding the
ghost classes where the parametrized sextic degenerates.

The chart misses three strata of marked covers, each handled by its own
matcher against a one-parameter (or single) rational model:

* the one-place-ramified quintic family, polynomial in w = c^2 -- its
  members' chart partners are exactly the chart points that the parameter
  involution sends to the universal ghost (9, 27), where all four
  classical invariants vanish;
* the boundary family Y^2 = (s X^3 + s X^2 + 1)(4 s X^3 + 1), the blowup
  of the chart closure along v = 0 -- its members pair with the chart
  points on the line v = 3u, which the involution crushes to (0, 0);
* the single rotation-symmetric class (the boundary family's own s -> 0
  corner), matched by moduli equality with its representative curve.

The subcover count e3 is the sum over all four strata, each counted over
the algebraic closure.  The same machinery powers a fast family scan: for
a one-parameter curve family the two eliminant resultants become bivariate
polynomials in (v, t), precomputed once modulo a word-sized prime and then
evaluated per grid point.  A nonconstant stripped gcd mod p is only ever a
candidate -- every flagged parameter is confirmed by the exact solver --
while a constant gcd mod p soundly certifies an empty chart fiber
(reduction can only inflate a gcd's degree, never shrink it).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import sympy

from .autgroup import d12_family_invariants, d8_family_invariants
from .errors import DomainError
from .exact import (Poly, RatLike, gf_divmod, gf_eval, gf_gcd, gf_interp,
                    gf_mat_det, gf_trim, interpolate_poly2,
                    interpolate_rational, poly_resultant, q_divmod, q_gcd,
                    q_mul, q_trim, rat, rational_roots, squarefree_part)
from .igusa import (AbsoluteInvariants, BinarySextic, absolute_invariants,
                    classical_invariants)
from .subcovers import (DegenerateParam, UVParam, degenerate_sextic,
                        jacobian_det_locus)

__all__ = [
    "FiberReport", "ScanReport", "boundary_cover_sextic",
    "boundary_family_match", "cyclic_cover_point", "cyclic_cover_sextic",
    "e3_fiber", "family_invariant_polys", "family_root_scan",
    "moduli_equations", "quintic_family_match", "rational_parameter_grid",
]

_JKEYS = ("J2", "J4", "J6", "J10")


# ---------------------------------------------------------------------------
# classical invariants of the two-cubic family, as exact polynomials

_jpolys: Optional[Dict[str, Poly]] = None
_system_bases: Optional[Dict[str, Poly]] = None


def family_invariant_polys() -> Dict[str, Poly]:
    """J2, J4, J6, J10 of the two-cubic sextic family, exact in (u, v).

    Interpolated from classical_invariants over an 11 x 42 integer grid
    (the true bidegrees are at most (9, 24)) and then calibrated: the
    weight-2 invariant must equal 2v^4(4u^2 + 12(21-v)u + 3(v^2-18v-135))
    and the weight-10 one must equal the family discriminant
    -16 v^17 (v-27) R^3.  The two identities pin the interpolation against
    independently derived closed forms.
    """
    global _jpolys
    if _jpolys is not None:
        return _jpolys
    us = list(range(11))
    vs = list(range(1, 43))
    tables: Dict[str, List[List[Fraction]]] = {
        k: [[Fraction(0)] * len(vs) for _ in us] for k in _JKEYS}
    for i, uu in enumerate(us):
        for j, vv in enumerate(vs):
            f1 = [Fraction(1), Fraction(vv), Fraction(uu * vv),
                  Fraction(vv * vv)]
            f2 = [Fraction(1), Fraction(2 * vv), Fraction(vv * vv),
                  Fraction(4 * vv * vv)]
            inv = classical_invariants(
                BinarySextic.from_coeffs(q_mul(f1, f2)))
            for key, val in zip(_JKEYS, inv.as_tuple()):
                tables[key][i][j] = val
    polys = {k: interpolate_poly2(us, vs, tables[k], "u", "v")
             for k in _JKEYS}
    u = Poly.variable("u", ("u", "v"))
    v = Poly.variable("v", ("u", "v"))
    rpoly = 4 * u ** 3 - u ** 2 * v - 18 * u * v + 4 * v ** 2 + 27 * v
    assert polys["J2"] == 2 * v ** 4 * (
        4 * u ** 2 + 12 * (21 - v) * u + 3 * (v ** 2 - 18 * v - 135)), \
        "weight-2 interpolation drifted from the closed form"
    assert polys["J10"] == -16 * v ** 17 * (v - 27) * rpoly ** 3, \
        "weight-10 interpolation is not the family discriminant"
    _jpolys = polys
    return polys


def _bases() -> Dict[str, Poly]:
    """Cached power/mix combinations of the family invariants."""
    global _system_bases
    if _system_bases is None:
        J = family_invariant_polys()
        J2 = J["J2"]
        _system_bases = {
            "J4": J["J4"],
            "J10": J["J10"],
            "J2sq": J2 ** 2,
            "J2cu": J2 ** 3,
            "J2p5": J2 ** 5,
            "mix": J["J2"] * J["J4"] - 3 * J["J6"],
            "R": (lambda u, v: 4 * u ** 3 - u ** 2 * v - 18 * u * v
                  + 4 * v ** 2 + 27 * v)(Poly.variable("u", ("u", "v")),
                                         Poly.variable("v", ("u", "v"))),
        }
    return _system_bases


def _v_stripped(P: Poly) -> Poly:
    """P divided by its v-power content."""
    iv = P.vars.index("v")
    k = min(e[iv] for e in P.coeffs)
    if k == 0:
        return P
    return Poly(P.vars, {tuple(x - (i == iv) * k for i, x in enumerate(e)): c
                         for e, c in P.coeffs.items()})


def _integer_primitive(P: Poly) -> Poly:
    from math import gcd
    den = 1
    for c in P.coeffs.values():
        den = den * c.denominator // gcd(den, c.denominator)
    g = 0
    for c in P.coeffs.values():
        g = gcd(g, (c * den).numerator)
    if g == 0:
        return P
    return Poly(P.vars, {e: c * Fraction(den, g)
                         for e, c in P.coeffs.items()})


def _coerce_point(p) -> AbsoluteInvariants:
    if isinstance(p, AbsoluteInvariants):
        return p
    i1, i2, i3 = p
    return AbsoluteInvariants(i1=rat(i1), i2=rat(i2), i3=rat(i3))


def moduli_equations(p: AbsoluteInvariants) -> Tuple[Poly, Poly, Poly]:
    """The cleared polynomial system cutting out the chart fiber of p.

    Each absolute-invariant equation i_k(u,v) = i_k(p) is multiplied by its
    denominator and the matching power of the weight-2 invariant; the
    results are stripped of their universal v-power content and made
    integer-primitive.  Common solutions with nonvanishing family
    discriminant are exactly the fiber; v = 0, v = 27 and R = 0 solutions
    are ghosts (at (9, 27) all four invariants vanish, so that point solves
    the system for every p).
    """
    p = _coerce_point(p)
    base = _bases()
    n1, d1 = p.i1.numerator, p.i1.denominator
    n2, d2 = p.i2.numerator, p.i2.denominator
    n3, d3 = p.i3.numerator, p.i3.denominator
    A = 144 * d1 * base["J4"] - n1 * base["J2sq"]
    B = -1728 * d2 * base["mix"] - n2 * base["J2cu"]
    C = 486 * d3 * base["J10"] - n3 * base["J2p5"]
    return tuple(_integer_primitive(_v_stripped(X)) for X in (A, B, C))


# ---------------------------------------------------------------------------
# arithmetic in Q[v]/(h) for counting conjugate solutions

class _ResidueField:
    """Q[v]/(h) for a monic irreducible h; elements are dense lowest-first
    Fraction lists of length < deg h."""

    def __init__(self, h: Sequence[Fraction]):
        lead = h[-1]
        self.mod = [c / lead for c in h]
        self.deg = len(h) - 1

    def reduce(self, a: Sequence[Fraction]) -> List[Fraction]:
        a = q_trim(list(a))
        if len(a) <= self.deg:
            return a
        return q_trim(q_divmod(a, self.mod)[1])

    def add(self, a, b):
        m = max(len(a), len(b))
        return q_trim([(a[i] if i < len(a) else Fraction(0))
                       + (b[i] if i < len(b) else Fraction(0))
                       for i in range(m)])

    def mul(self, a, b):
        if not a or not b:
            return []
        return self.reduce(q_mul(a, b))

    def inv(self, a):
        r0, r1 = list(self.mod), q_trim(list(a))
        s0: List[Fraction] = []
        s1: List[Fraction] = [Fraction(1)]
        while len(r1) > 1:
            quo, rem = q_divmod(r0, r1)
            r0, r1 = r1, q_trim(rem)
            step = q_mul(quo, s1) if (quo and s1) else []
            m = max(len(s0), len(step))
            s0, s1 = s1, q_trim(
                [(s0[i] if i < len(s0) else Fraction(0))
                 - (step[i] if i < len(step) else Fraction(0))
                 for i in range(m)])
        if not r1:
            raise ZeroDivisionError("non-invertible residue")
        return self.reduce([x / r1[0] for x in s1])


def _field_poly(P: Poly, K: _ResidueField) -> List[List[Fraction]]:
    """Bivariate P as a dense poly in u with coefficients in K."""
    out = []
    for row in P.dense_in("u"):
        out.append(K.reduce([] if row.is_zero else row.dense_uni()))
    while out and not out[-1]:
        out.pop()
    return out


def _field_trim(a):
    a = list(a)
    while a and not a[-1]:
        a.pop()
    return a


def _field_monic(a, K):
    a = _field_trim(a)
    if not a:
        return a
    ic = K.inv(a[-1])
    return [K.mul(c, ic) for c in a]


def _field_divmod(a, b, K):
    a, b = _field_trim(a), _field_trim(b)
    if not b:
        raise ZeroDivisionError
    binv = K.inv(b[-1])
    quo: List[List[Fraction]] = [[] for _ in
                                 range(max(0, len(a) - len(b) + 1))]
    rem = [list(c) for c in a]
    while True:
        rem = _field_trim(rem)
        if len(rem) < len(b):
            break
        c = K.mul(rem[-1], binv)
        k = len(rem) - len(b)
        quo[k] = c
        for i in range(len(b)):
            rem[k + i] = K.add(rem[k + i],
                               [-x for x in K.mul(c, b[i])])
        rem = rem[:-1]
    return quo, rem


def _field_gcd(a, b, K):
    a, b = _field_trim(a), _field_trim(b)
    while b:
        a, b = b, _field_divmod(a, b, K)[1]
    return _field_monic(a, K)


def _field_squarefree(a, K):
    a = _field_monic(a, K)
    if len(a) <= 2:
        return a
    deriv = [[(i + 1) * x for x in c] for i, c in enumerate(a[1:], 0)]
    g = _field_gcd(a, deriv, K)
    if len(g) <= 1:
        return a
    quo, rem = _field_divmod(a, g, K)
    assert not rem
    return _field_monic(quo, K)


def _conjugate_count(A: Poly, B: Poly, C: Poly,
                     h: Sequence[Fraction]) -> int:
    """Number of chart fiber points whose v-coordinate is a root of the
    irreducible h (degree >= 2), counted over the algebraic closure.

    Works with the generic root: the u-solutions over Q[v]/(h) are the
    roots of gcd(A, B, C) there; by Galois symmetry every conjugate root of
    h carries the same number, so the total is deg_u x deg h.  Classes
    where the discriminant factor R or the weight-2 invariant vanishes are
    divided out (the latter is subsumed by the former -- A = B = C = 0 with
    J2 = 0 forces J10 = 0 -- but stripping both keeps the argument local).
    """
    K = _ResidueField(list(h))
    G = _field_gcd(_field_gcd(_field_poly(A, K), _field_poly(B, K), K),
                   _field_poly(C, K), K)
    if len(G) <= 1:
        return 0
    G = _field_squarefree(G, K)
    base = _bases()
    for ghost in (base["R"], family_invariant_polys()["J2"]):
        gg = _field_gcd(G, _field_poly(ghost, K), K)
        if len(gg) > 1:
            G, rem = _field_divmod(G, gg, K)
            assert not rem
    du = len(_field_trim(G)) - 1
    return du * K.deg


def _solutions_at_rational_v(A: Poly, B: Poly, C: Poly, v0: Fraction
                             ) -> Tuple[List[UVParam], int]:
    """Rational chart fiber points over v = v0, plus the count of conjugate
    points with irrational u over the same v0."""
    Au = q_trim(A(v=v0).dense_uni())
    Bu = q_trim(B(v=v0).dense_uni())
    Cu = q_trim(C(v=v0).dense_uni())
    gu = q_gcd(q_gcd(Au, Bu), Cu)
    if len(gu) <= 1:
        return [], 0
    gu = squarefree_part(gu)
    base = _bases()
    ru = q_trim(base["R"](v=v0).dense_uni())
    ghost = q_gcd(gu, ru)
    if len(ghost) > 1:
        gu, rem = q_divmod(gu, ghost)
        gu = q_trim(gu)
        assert not q_trim(rem)
    points = []
    roots = rational_roots(gu)
    for u0, _mult in roots:
        q = UVParam(u0, v0)
        assert q.is_nondegenerate
        points.append(q)
    extra = (len(q_trim(gu)) - 1) - len(roots)
    return points, extra


# ---------------------------------------------------------------------------
# off-chart loci: shared one-parameter matcher machinery

@dataclass(frozen=True)
class _LocusData:
    """Invariants of a one-parameter stratum as dense polynomials in its
    parameter, plus the cleared-equation building blocks and the rational
    parameter values that never correspond to a curve."""

    J2: Tuple[Fraction, ...]
    J4: Tuple[Fraction, ...]
    J10: Tuple[Fraction, ...]
    mix: Tuple[Fraction, ...]
    j2sq: Tuple[Fraction, ...]
    j2cu: Tuple[Fraction, ...]
    j2p5: Tuple[Fraction, ...]
    invalid: Tuple[Fraction, ...]


def _locus_data(values, invalid: Sequence[Fraction]) -> _LocusData:
    """Interpolate a stratum's classical invariants from node values
    {param: ClassicalInvariants-tuple}; the last node re-checks each
    polynomial exactly."""
    nodes = sorted(values)
    fit: Dict[str, List[Fraction]] = {}
    for pos, key in enumerate(_JKEYS):
        pts = [(x, values[x][pos]) for x in nodes[:-1]]
        poly = q_trim(interpolate_rational(pts))
        assert _eval_dense(poly, nodes[-1]) == values[nodes[-1]][pos], \
            f"{key} interpolation needs more nodes"
        fit[key] = poly
    j2sq = q_mul(fit["J2"], fit["J2"])
    mix = q_trim([a - 3 * b for a, b in itertools.zip_longest(
        q_mul(fit["J2"], fit["J4"]), fit["J6"], fillvalue=Fraction(0))])
    j2cu = q_mul(j2sq, fit["J2"])
    return _LocusData(
        J2=tuple(fit["J2"]), J4=tuple(fit["J4"]), J10=tuple(fit["J10"]),
        mix=tuple(mix), j2sq=tuple(j2sq), j2cu=tuple(j2cu),
        j2p5=tuple(q_mul(j2cu, j2sq)), invalid=tuple(invalid))


def _eval_dense(poly: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(list(poly)):
        acc = acc * x + c
    return acc


def _locus_gcd(p: AbsoluteInvariants, data: _LocusData) -> List[Fraction]:
    """Squarefree gcd of the stratum's cleared moduli equations at p."""
    n1, d1 = p.i1.numerator, p.i1.denominator
    n2, d2 = p.i2.numerator, p.i2.denominator
    n3, d3 = p.i3.numerator, p.i3.denominator

    def lin(c1, p1, c2, p2):
        return q_trim([c1 * a + c2 * b for a, b in itertools.zip_longest(
            p1, p2, fillvalue=Fraction(0))])

    A = lin(Fraction(144 * d1), data.J4, Fraction(-n1), data.j2sq)
    B = lin(Fraction(-1728 * d2), data.mix, Fraction(-n2), data.j2cu)
    C = lin(Fraction(486 * d3), data.J10, Fraction(-n3), data.j2p5)
    g = q_gcd(q_gcd(A, B), C)
    return squarefree_part(g) if len(g) > 1 else g


def _valid_root(x: Fraction, data: _LocusData) -> bool:
    return (x not in data.invalid
            and _eval_dense(list(data.J2), x) != 0
            and _eval_dense(list(data.J10), x) != 0)


def _locus_solutions(p: AbsoluteInvariants, data: _LocusData
                     ) -> Tuple[List[Fraction], int]:
    """Rational stratum parameters matching p, and the total count of
    matches over the algebraic closure.

    Invalid classes -- degenerate parameters, vanishing weight-2 or
    weight-10 invariant -- are excluded factor by factor; an irreducible
    factor of degree >= 2 is valid when it shares no root with the
    degeneracy polynomials (its roots are irrational, so the listed
    rational exclusions cannot occur on it).
    """
    g = _locus_gcd(p, data)
    if len(g) <= 1:
        return [], 0
    rational: List[Fraction] = []
    total = 0
    for h, _mult in _irreducible_factors(g):
        if len(h) == 2:
            x = -h[0]
            if _valid_root(x, data):
                rational.append(x)
                total += 1
        else:
            if (len(q_gcd(list(h), list(data.J2))) <= 1
                    and len(q_gcd(list(h), list(data.J10))) <= 1):
                total += len(h) - 1
    return sorted(rational), total


# ---------------------------------------------------------------------------
# the one-place-ramified quintic stratum (parameter w = c^2)

_wdata: Optional[_LocusData] = None


def _quintic_data() -> _LocusData:
    """Invariants of the one-place-ramified quintic family in w = c^2.

    The family's coefficients are linear in c and the invariants are even
    in c, so six nodes w = 0..25 determine the polynomials and a seventh
    re-checks them.  w = -4/27 is the family's degenerate parameter.
    """
    global _wdata
    if _wdata is None:
        values = {}
        for k in range(7):
            inv = classical_invariants(
                degenerate_sextic(DegenerateParam.from_c(Fraction(k))))
            values[Fraction(k * k)] = inv.as_tuple()
        _wdata = _locus_data(values, invalid=(Fraction(-4, 27),))
    return _wdata


def quintic_family_match(p) -> Optional[DegenerateParam]:
    """The rational w-parameter of the one-place-ramified family member
    with moduli point p, if one exists.

    The w -> moduli map is injective, so at most one parameter can match;
    two simultaneous matches mean the interpolated locus is inconsistent
    and raise "fiber-overflow".
    """
    p = _coerce_point(p)
    hits, _total = _locus_solutions(p, _quintic_data())
    if len(hits) > 1:
        raise DomainError(
            "fiber-overflow",
            f"injective w-parametrization matched twice: {hits}")
    return DegenerateParam.from_w(hits[0]) if hits else None


# ---------------------------------------------------------------------------
# the boundary stratum (blowup of the chart closure along v = 0)

_sdata: Optional[_LocusData] = None


def boundary_cover_sextic(s: RatLike) -> BinarySextic:
    """The curve Y^2 = (s X^3 + s X^2 + 1)(4 s X^3 + 1) carrying the
    boundary stratum's marked cover.

    Rescaling the chart's cubic pair along u ~ eps, v ~ eps^3 with
    X ~ eps^-2 kills the linear coefficient of the first cubic and all
    middle coefficients of the second, leaving (a X^3 + b X^2 + 1,
    4a X^3 + 1); the surviving scaling freedom X -> tau X fixes the
    invariant b^3/a^2 = s, realized rationally by (a, b) = (s, s).  The
    deck involution pairs these covers with the chart points on v = 3u
    (whose formula image degenerates to (0, 0)), so they are invisible to
    the chart elimination and get matched directly.
    """
    s = rat(s)
    f1 = [Fraction(1), Fraction(0), s, s]
    f2 = [Fraction(1), Fraction(0), Fraction(0), 4 * s]
    return BinarySextic.from_coeffs(q_mul(f1, f2))


def _boundary_data() -> _LocusData:
    """Invariants of the boundary family in s; s = 0 is both degenerate
    and the family's universal ghost (every invariant vanishes there, so
    s = 0 solves the cleared system for every p)."""
    global _sdata
    if _sdata is None:
        values = {}
        for k in range(1, 23):
            inv = classical_invariants(boundary_cover_sextic(Fraction(k)))
            values[Fraction(k)] = inv.as_tuple()
        _sdata = _locus_data(values, invalid=(Fraction(0),))
    return _sdata


def boundary_family_match(p) -> Optional[Fraction]:
    """The rational boundary-family parameter matching p, if any (the
    parametrization is injective, as for the quintic family)."""
    p = _coerce_point(p)
    hits, _total = _locus_solutions(p, _boundary_data())
    if len(hits) > 1:
        raise DomainError(
            "fiber-overflow",
            f"injective boundary parametrization matched twice: {hits}")
    return hits[0] if hits else None


# ---------------------------------------------------------------------------
# the rotation-symmetric class

_cyclic_point: Optional[AbsoluteInvariants] = None


def cyclic_cover_sextic() -> BinarySextic:
    """(X^3+1)(4X^3+1): representative of the unique class whose degree-3
    covers commute with an order-3 rotation of the base.

    For Y^2 = (X^3 - a)(X^3 - b) a cover X -> X^2/(X^3 - a) onto some
    V^2 = alpha U^3 + beta exists precisely when s = a/b satisfies
    (s-1)^2 (s-4) = 0; s = 1 is the repeated-root ghost, s = 4 is this
    class.  Both cubics have vanishing middle coefficients, so the class
    sits below even the boundary family (its s -> 0 corner); its covers
    pair with each other, and the fiber solver matches the moduli point
    directly.
    """
    return BinarySextic.from_coeffs(
        q_mul([Fraction(1), Fraction(0), Fraction(0), Fraction(1)],
              [Fraction(1), Fraction(0), Fraction(0), Fraction(4)]))


def cyclic_cover_point() -> AbsoluteInvariants:
    """Moduli point of the rotation-symmetric class."""
    global _cyclic_point
    if _cyclic_point is None:
        _cyclic_point = absolute_invariants(
            classical_invariants(cyclic_cover_sextic()))
    return _cyclic_point


# ---------------------------------------------------------------------------
# fiber reports

@dataclass(frozen=True)
class FiberReport:
    """Everything the solver knows about one fiber, stratum by stratum.

    rational_solutions lists the chart solutions with both coordinates
    rational; closure_count additionally counts their conjugates over the
    algebraic closure.  degenerate carries the quintic-family parameter
    when one matches rationally and degenerate_count the number of
    quintic-family matches over the closure; boundary_match and
    boundary_count do the same for the boundary family, and cyclic_match
    marks the rotation-symmetric class.  on_branch_curve flags (per
    rational chart solution) membership in the vanishing locus of the
    chart map's Jacobian determinant -- the self-paired locus, where the
    two subcover j-invariants coincide.
    """

    point: AbsoluteInvariants
    rational_solutions: Tuple[UVParam, ...]
    closure_count: int
    degenerate: Optional[DegenerateParam]
    degenerate_count: int
    boundary_match: Optional[Fraction]
    boundary_count: int
    cyclic_match: bool
    on_branch_curve: Tuple[bool, ...]

    def __post_init__(self):
        if self.closure_count not in (0, 1, 2, 4):
            raise DomainError(
                "fiber-overflow",
                f"chart fiber of size {self.closure_count} signals an "
                "elimination bug")
        if self.e3 not in (0, 1, 2, 4):
            raise DomainError("fiber-overflow",
                              f"subcover count {self.e3} is impossible")

    @property
    def e3(self) -> int:
        """Number of marked subcover classes over this point: the strata
        are disjoint, so their closure counts add."""
        return (self.closure_count + self.degenerate_count
                + self.boundary_count + (1 if self.cyclic_match else 0))


def e3_fiber(p) -> FiberReport:
    """Solve the moduli equations for p exactly, stratum by stratum.

    Chart: pairwise u-resultants of the cleared system meet in a
    v-polynomial whose irreducible factors are enumerated (rational roots
    directly, higher-degree factors through residue-field gcds).  The
    quintic and boundary families reduce to univariate gcds in their own
    parameters, and the rotation-symmetric class to a point comparison.
    """
    p = _coerce_point(p)
    A, B, C = moduli_equations(p)
    r1 = poly_resultant(A, B, "u")
    r2 = poly_resultant(A, C, "u")
    if r1.is_zero or r2.is_zero:
        raise DomainError("fiber-overflow",
                          "vanishing eliminant: the system is not "
                          "zero-dimensional")
    g = squarefree_part(q_gcd(q_trim(r1.dense_uni()),
                              q_trim(r2.dense_uni())))
    rational: List[UVParam] = []
    conjugates = 0
    for h, _mult in _irreducible_factors(g):
        if len(h) == 2:
            v0 = -h[0]
            if v0 == 0 or v0 == 27:
                continue
            pts, extra = _solutions_at_rational_v(A, B, C, v0)
            rational.extend(pts)
            conjugates += extra
        else:
            conjugates += _conjugate_count(A, B, C, h)
    rational.sort(key=lambda q: (q.v, q.u))
    w_hits, w_total = _locus_solutions(p, _quintic_data())
    if len(w_hits) > 1:
        raise DomainError(
            "fiber-overflow",
            f"injective w-parametrization matched twice: {w_hits}")
    s_hits, s_total = _locus_solutions(p, _boundary_data())
    if len(s_hits) > 1:
        raise DomainError(
            "fiber-overflow",
            f"injective boundary parametrization matched twice: {s_hits}")
    return FiberReport(
        point=p,
        rational_solutions=tuple(rational),
        closure_count=len(rational) + conjugates,
        degenerate=(DegenerateParam.from_w(w_hits[0]) if w_hits else None),
        degenerate_count=w_total,
        boundary_match=(s_hits[0] if s_hits else None),
        boundary_count=s_total,
        cyclic_match=p == cyclic_cover_point(),
        on_branch_curve=tuple(jacobian_det_locus(q) == 0
                              for q in rational),
    )


_V_SYM = sympy.Symbol("v")


def _irreducible_factors(dense: Sequence[Fraction]
                         ) -> List[Tuple[List[Fraction], int]]:
    """Monic irreducible factors (lowest-first) with multiplicities."""
    dense = q_trim(list(dense))
    if len(dense) <= 1:
        return []
    spoly = sympy.Poly([sympy.Rational(c) for c in reversed(dense)],
                       _V_SYM, domain="QQ")
    out = []
    for fac, mult in spoly.factor_list()[1]:
        cs = [Fraction(c.p, c.q) for c in reversed(fac.all_coeffs())]
        lead = cs[-1]
        out.append(([c / lead for c in cs], mult))
    return out


# ---------------------------------------------------------------------------
# family scans: which parameters have a nonempty fiber

_SCAN_PRIME = 2147483647  # 2^31 - 1

_FAMILY_FRACTIONS: Dict[str, List[Tuple[List[int], List[int]]]] = {
    # lowest-first numerator/denominator coefficients of i1, i2, i3 in t
    "d8": [
        ([0, 1296, -2880], [9, 120, 400]),
        ([0, 0, -93312, 483840], [27, 540, 3600, 8000]),
        ([0, 0, 0, 243, -1944, 3888],
         [243, 8100, 108000, 720000, 2400000, 3200000]),
    ],
    "d12": [
        ([0, 1296, 6480], [1, -80, 1600]),
        ([0, 11664, -303264, -233280], [-1, 120, -4800, 64000]),
        ([0, 0, -729, 8748, -34992, 46656],
         [-16, 3200, -256000, 10240000, -204800000, 1638400000]),
    ],
}

_FAMILY_INVARIANTS = {"d8": d8_family_invariants,
                      "d12": d12_family_invariants}


def _family_fraction_check(key: str) -> None:
    """The embedded numerator/denominator tables must reproduce the
    closed-form family invariants."""
    fn = _FAMILY_INVARIANTS[key]
    for t in (Fraction(2), Fraction(3), Fraction(-5, 7)):
        inv = fn(t)
        for (num, den), want in zip(_FAMILY_FRACTIONS[key],
                                    inv.as_tuple()):
            got = _eval_dense([Fraction(c) for c in num], t) / \
                _eval_dense([Fraction(c) for c in den], t)
            assert got == want, (key, t)


@dataclass(frozen=True)
class _ScreenTables:
    prime: int
    r1: List[List[int]]  # [v-power][t-power], lowest-first both ways
    r2: List[List[int]]
    denominators: List[List[int]]  # d_k(t) mod p, lowest-first


_screen_cache: Dict[Tuple[str, int], _ScreenTables] = {}


def _sylvester_det(a: Sequence[int], b: Sequence[int], p: int) -> int:
    """Determinant of the nominal-size Sylvester matrix of dense
    lowest-first a, b over GF(p).  Taking the matrix at nominal size keeps
    the value a polynomial identity in the coefficients, which is what the
    bivariate interpolation needs."""
    m, n = len(a) - 1, len(b) - 1
    ra, rb = list(reversed(a)), list(reversed(b))
    rows = []
    for i in range(n):
        rows.append([0] * i + ra + [0] * (n - 1 - i))
    for i in range(m):
        rows.append([0] * i + rb + [0] * (m - 1 - i))
    return gf_mat_det(rows, p)


def _build_screen(key: str, prime: int) -> _ScreenTables:
    """Precompute the two eliminant resultants of the family system as
    bivariate (v, t) coefficient tables mod prime.

    The templates A/v^7, B/v^10, C/v^17 have u-degrees 4/6/10; their
    pairwise resultants are interpolated on a 2D grid whose degrees are
    measured first and then certified by comparing the assembled tables
    against direct Sylvester determinants at random points.
    """
    _family_fraction_check(key)
    base = _bases()

    def shifted(P: Poly, k: int) -> List[List[int]]:
        rows = _v_power_divided(P, k).dense_in("u")
        out = []
        for row in rows:
            dense = [] if row.is_zero else row.dense_uni()
            out.append([int(c) % prime for c in dense])
        return out

    M = [shifted(base["J4"], 7), shifted(base["mix"], 10),
         shifted(base["J10"], 17)]
    N = [shifted(base["J2sq"], 7), shifted(base["J2cu"], 10),
         shifted(base["J2p5"], 17)]
    scal = [144, -1728, 486]
    fracs = _FAMILY_FRACTIONS[key]
    dens = [[c % prime for c in den] for _num, den in fracs]

    def u_dense_at(tm: int, vm: int) -> List[List[int]]:
        """Dense u-coefficient lists of the three stripped equations at
        (t, v) = (tm, vm) mod prime."""
        out = []
        for idx in range(3):
            num, _den = fracs[idx]
            nt = gf_eval([c % prime for c in num], tm, prime)
            dt = gf_eval(dens[idx], tm, prime)
            sc = scal[idx] % prime
            rows = []
            nrows = max(len(M[idx]), len(N[idx]))
            for a in range(nrows):
                mrow = M[idx][a] if a < len(M[idx]) else []
                nrow = N[idx][a] if a < len(N[idx]) else []
                mv = gf_eval(mrow, vm, prime) if mrow else 0
                nv = gf_eval(nrow, vm, prime) if nrow else 0
                rows.append((sc * dt % prime * mv - nt * nv) % prime)
            out.append(rows)
        return out

    def r_values(tm: int, vm: int) -> Tuple[int, int]:
        eq = u_dense_at(tm, vm)
        return (_sylvester_det(eq[0], eq[1], prime),
                _sylvester_det(eq[0], eq[2], prime))

    rng = random.Random(0xf1be5)

    def usable_t(tm: int) -> bool:
        return all(gf_eval(d, tm, prime) for d in dens)

    def measure(axis: str, bound: int, which: int) -> int:
        """Actual degree along one axis at a random point on the other.

        Uses bound + 2 interpolation nodes, so the proven degree bound is
        itself checked: an overrun would show up as degree bound + 1."""
        need = bound + 2
        deg = -1
        for _ in range(2):
            other = rng.randrange(1, prime)
            while axis == "v" and not usable_t(other):
                other = rng.randrange(1, prime)
            if axis == "t":
                xs = list(itertools.islice(
                    (x for x in itertools.count() if usable_t(x)), need))
            else:
                xs = list(range(need))
            ys = [r_values(x if axis == "t" else other,
                           other if axis == "t" else x)[which]
                  for x in xs]
            deg = max(deg, len(gf_trim(gf_interp(xs, ys, prime))) - 1)
        assert deg <= bound, f"degree bound {bound} exceeded: {deg}"
        return deg

    bounds = {"r1": {"v": 110, "t": 24}, "r2": {"v": 182, "t": 40}}
    tables = {}
    for which, name in ((0, "r1"), (1, "r2")):
        dv = measure("v", bounds[name]["v"], which)
        dt = measure("t", bounds[name]["t"], which)
        tnodes: List[int] = []
        cand = 0
        while len(tnodes) < dt + 1:
            if usable_t(cand):
                tnodes.append(cand)
            cand += 1
        vnodes = list(range(dv + 1))
        per_t = []
        for tm in tnodes:
            ys = [r_values(tm, vm)[which] for vm in vnodes]
            per_t.append(gf_interp(vnodes, ys, prime))
        table = []
        for vi in range(dv + 1):
            col = [pt[vi] if vi < len(pt) else 0 for pt in per_t]
            table.append(gf_interp(tnodes, col, prime))
        tables[name] = table
    result = _ScreenTables(prime=prime, r1=tables["r1"], r2=tables["r2"],
                           denominators=dens)
    for _ in range(6):
        tm = rng.randrange(1, prime)
        while not usable_t(tm):
            tm = rng.randrange(1, prime)
        vm = rng.randrange(prime)
        direct = r_values(tm, vm)
        got = (_screen_eval(result.r1, tm, vm, prime),
               _screen_eval(result.r2, tm, vm, prime))
        assert got == direct, "screen table verification failed"
    return result


def _v_power_divided(P: Poly, k: int) -> Poly:
    iv = P.vars.index("v")
    assert all(e[iv] >= k for e in P.coeffs)
    return Poly(P.vars, {tuple(x - (i == iv) * k for i, x in enumerate(e)): c
                         for e, c in P.coeffs.items()})


def _screen_eval(table: List[List[int]], tm: int, vm: int, p: int) -> int:
    acc = 0
    for vrow in reversed(table):
        acc = (acc * vm + gf_eval(vrow, tm, p)) % p
    return acc


def _screen_tables(key: str, prime: int) -> _ScreenTables:
    tag = (key, prime)
    if tag not in _screen_cache:
        _screen_cache[tag] = _build_screen(key, prime)
    return _screen_cache[tag]


def _screen_candidate(tab: _ScreenTables, t: Fraction) -> bool:
    """True when the chart fiber at parameter t might be nonempty.

    Evaluates the precomputed eliminants at t mod p, strips the universal
    v and (v - 27) factors from their gcd and reports whether anything is
    left.  Degenerate reductions (a family denominator vanishing mod p)
    conservatively return True.
    """
    p = tab.prime
    if t.denominator % p == 0:
        return True
    tm = t.numerator * pow(t.denominator, -1, p) % p
    if any(gf_eval(d, tm, p) == 0 for d in tab.denominators):
        return True
    r1t = gf_trim([gf_eval(vrow, tm, p) for vrow in tab.r1])
    r2t = gf_trim([gf_eval(vrow, tm, p) for vrow in tab.r2])
    if not r1t or not r2t:
        return True
    g = gf_gcd(r1t, r2t, p)
    while g and g[0] == 0:
        g = g[1:]
    while len(g) > 1 and gf_eval(g, 27, p) == 0:
        g = gf_divmod(g, [p - 27, 1], p)[0]
    return len(g) > 1


@dataclass(frozen=True)
class ScanReport:
    """Outcome of a family parameter scan: exact subcover counts for every
    parameter that survived domain checks, error codes for the rest, and
    the list of parameters that went through the exact fiber solver."""

    family: str
    e3_by_t: Dict[Fraction, int]
    rejected: Dict[Fraction, str]
    exact_checked: Tuple[Fraction, ...]

    def flagged(self) -> List[Fraction]:
        """Parameters with at least one subcover pair, sorted."""
        return sorted(t for t, e in self.e3_by_t.items() if e >= 1)


def family_root_scan(family: str, ts: Iterable[RatLike],
                     prime: int = _SCAN_PRIME) -> ScanReport:
    """Exact subcover counts across a family parameter grid.

    Every parameter is first screened modulo a word-sized prime (sound:
    mod-p reduction can only enlarge a gcd, so a constant stripped gcd
    certifies an empty chart fiber) and against the three off-chart
    strata, whose tests are exact and cheap; candidates are then confirmed
    by the full fiber solver.
    """
    key = {"d8": "d8", "quintic": "d8", "d8-family": "d8",
           "d12": "d12", "sextic": "d12", "d12-family": "d12"
           }.get(family.lower())
    if key is None:
        raise ValueError(f"unknown family tag {family!r}")
    invf = _FAMILY_INVARIANTS[key]
    tab = _screen_tables(key, prime)
    wdata = _quintic_data()
    sdata = _boundary_data()
    e3_by_t: Dict[Fraction, int] = {}
    rejected: Dict[Fraction, str] = {}
    exact: List[Fraction] = []
    for t in sorted(set(rat(x) for x in ts)):
        try:
            p_t = invf(t)
        except DomainError as err:
            rejected[t] = err.code
            continue
        sg = _locus_gcd(p_t, sdata)
        while sg and sg[0] == 0:      # the s = 0 ghost matches every p
            sg = sg[1:]
        candidate = (_screen_candidate(tab, t)
                     or len(_locus_gcd(p_t, wdata)) > 1
                     or len(sg) > 1
                     or p_t == cyclic_cover_point())
        if candidate:
            e3_by_t[t] = e3_fiber(p_t).e3
            exact.append(t)
        else:
            e3_by_t[t] = 0
    return ScanReport(family=key, e3_by_t=e3_by_t, rejected=rejected,
                      exact_checked=tuple(exact))


def rational_parameter_grid(max_numerator: int = 200,
                            max_denominator: int = 20) -> List[Fraction]:
    """All fractions k/d with |k| <= max_numerator and 1 <= d <=
    max_denominator, deduplicated and sorted."""
    out = set()
    for d in range(1, max_denominator + 1):
        for k in range(-max_numerator, max_numerator + 1):
            out.add(Fraction(k, d))
    return sorted(out)
