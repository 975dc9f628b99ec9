"""Automorphism groups of genus-2 curves over Q, exactly.

The decision procedure works entirely in the invariant space: three special
curves are recognized up to isomorphism over the algebraic closure, the two
one-parameter families with dihedral automorphism groups are recognized by
locus equations plus an exact normal-form round trip, and the generic
bielliptic case is recognized by solving for Mobius involutions that
preserve the root set of the sextic.  Everything is rational arithmetic;
there are no floats and no numeric tolerances anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import DomainError
from .exact import (Poly, RatLike, poly_resultant, q_gcd, q_trim, rat,
                    rational_roots)
from .igusa import (AbsoluteInvariants, BinarySextic, ClassicalInvariants,
                    ModuliPoint, absolute_invariants, classical_invariants,
                    moduli_equal)

AUT_LABELS = ("Z2", "V4", "D8", "D12", "Z3⋊D8", "GL2(3)", "Z10")


# --------------------------------------------------------------------------
# family normal forms

def d8_family_curve(t: RatLike) -> BinarySextic:
    """Y^2 = X^5 + X^3 + tX."""
    return BinarySextic.from_coeffs([0, rat(t), 0, 1, 0, 1])


def d12_family_curve(t: RatLike) -> BinarySextic:
    """Y^2 = X^6 + X^3 + t."""
    return BinarySextic.from_coeffs([rat(t), 0, 0, 1, 0, 0, 1])


def d8_family_invariants(t: RatLike) -> AbsoluteInvariants:
    """Closed-form absolute invariants of Y^2 = X^5 + X^3 + tX.

    Rejected parameters: t in {0, 1/4} give a repeated root and t = -3/20
    kills the weight-2 invariant.
    """
    t = rat(t)
    if t in (Fraction(0), Fraction(1, 4)):
        raise DomainError("degenerate-sextic",
                          f"X^5+X^3+{t}X has a repeated root")
    if t == Fraction(-3, 20):
        raise DomainError("j2-zero",
                          "t = -3/20 makes J2 vanish; absolute invariants "
                          "are undefined there")
    return AbsoluteInvariants(
        i1=-144 * t * (20 * t - 9) / (20 * t + 3) ** 2,
        i2=3456 * t ** 2 * (140 * t - 27) / (20 * t + 3) ** 3,
        i3=243 * t ** 3 * (4 * t - 1) ** 2 / (20 * t + 3) ** 5,
    )


def d12_family_invariants(t: RatLike) -> AbsoluteInvariants:
    """Closed-form absolute invariants of Y^2 = X^6 + X^3 + t.

    Rejected: t in {0, 1/4} (repeated root), t = 1/40 (J2 = 0; note the
    sign -- J2 = -6(40t-1) vanishes at +1/40).
    """
    t = rat(t)
    if t in (Fraction(0), Fraction(1, 4)):
        raise DomainError("degenerate-sextic",
                          f"X^6+X^3+{t} has a repeated root")
    if t == Fraction(1, 40):
        raise DomainError("j2-zero",
                          "t = 1/40 makes J2 vanish; absolute invariants "
                          "are undefined there")
    return AbsoluteInvariants(
        i1=1296 * t * (5 * t + 1) / (40 * t - 1) ** 2,
        i2=-11664 * t * (20 * t ** 2 + 26 * t - 1) / (40 * t - 1) ** 3,
        i3=Fraction(729, 16) * t ** 2 * (4 * t - 1) ** 3 / (40 * t - 1) ** 5,
    )


# --------------------------------------------------------------------------
# locus equations

def _d8_locus_value(J: ClassicalInvariants) -> Fraction:
    J2, J4, J6 = J.J2, J.J4, J.J6
    return (1706 * J4 ** 2 * J2 ** 2 + 2560 * J4 ** 3 + 27 * J4 * J2 ** 4
            - 81 * J2 ** 3 * J6 - 14880 * J2 * J4 * J6 + 28800 * J6 ** 2)


def _d12_locus_values(J: ClassicalInvariants) -> Tuple[Fraction, Fraction]:
    J2, J4, J6, J10 = J.as_tuple()
    first = (-J4 * J2 ** 4 + 12 * J2 ** 3 * J6 - 52 * J4 ** 2 * J2 ** 2
             + 80 * J4 ** 3 + 960 * J2 * J4 * J6 - 3600 * J6 ** 2)
    second = (864 * J10 * J2 ** 5 + 3456000 * J10 * J4 ** 2 * J2
              - 43200 * J10 * J4 * J2 ** 3 - 2332800000 * J10 ** 2
              - J4 ** 2 * J2 ** 6 - 768 * J4 ** 4 * J2 ** 2
              + 48 * J4 ** 3 * J2 ** 4 + 4096 * J4 ** 5)
    return first, second


# the unique J2 = 0 representatives of each dihedral class
_D8_J2_ZERO_T = Fraction(-3, 20)
_D12_J2_ZERO_T = Fraction(1, 40)


def in_d8_locus(J: ClassicalInvariants) -> bool:
    """Membership in the dihedral-of-order-8 locus.

    The locus equation alone is necessary but not sufficient (it cuts out
    extra components), so membership additionally requires the normal-form
    round trip -- or, on the J2 = 0 stratum where no reconstruction formula
    exists, exact moduli equality with the unique J2 = 0 representative.
    """
    if _d8_locus_value(J) != 0:
        return False
    if J.J2 == 0:
        rep = classical_invariants(d8_family_curve(_D8_J2_ZERO_T))
        return moduli_equal(J, rep)
    try:
        d8_t_from_invariants(absolute_invariants(J))
    except DomainError:
        return False
    return True


def in_d12_locus(J: ClassicalInvariants) -> bool:
    """True iff both polynomials of the order-12 dihedral locus vanish."""
    first, second = _d12_locus_values(J)
    return first == 0 and second == 0


# --------------------------------------------------------------------------
# normal-form reconstruction

def d8_t_from_invariants(p: AbsoluteInvariants) -> Fraction:
    """Recover t with d8_family_invariants(t) = p, certified by round trip.

    The closed-form expression for t is a ratio of quadratics in (i1, i2);
    a vanishing denominator reports "degenerate-reconstruction" and any
    round-trip failure reports "not-in-d8-locus".
    """
    i1, i2 = p.i1, p.i2
    num = 345 * i1 ** 2 + 50 * i1 * i2 - 90 * i2 - 1296 * i1
    den = (2925 * i1 ** 2 + 250 * i1 * i2 - 9450 * i2 - 54000 * i1
           + 139968)
    if den == 0:
        raise DomainError("degenerate-reconstruction",
                          "t-reconstruction denominator vanished")
    t = Fraction(-3, 4) * num / den
    try:
        ok = d8_family_invariants(t) == p
    except DomainError:
        ok = False
    if not ok:
        raise DomainError("not-in-d8-locus",
                          "invariants do not round-trip through the "
                          "quintic normal form")
    return t


def d12_t_from_invariants(p: AbsoluteInvariants) -> Fraction:
    """Recover t with d12_family_invariants(t) = p, certified by round trip.

    No closed-form ratio is used here: t is found by solving the first
    invariant's defining relation i1 (40t-1)^2 = 1296 t (5t+1), a quadratic
    in t, and filtering its rational roots through the full round trip.
    (A direct reconstruction formula analogous to the quintic case exists
    in folklore but fails its own round trip; solving the quadratic is
    exact and certifies itself.)
    """
    i1 = p.i1
    # (1600 i1 - 6480) t^2 - (80 i1 + 1296) t + i1 = 0
    dense = [i1, -(80 * i1 + 1296), 1600 * i1 - 6480]
    dense = q_trim(dense)
    if len(dense) <= 1:
        raise DomainError("degenerate-reconstruction",
                          "t-reconstruction equation degenerated")
    for t, _mult in rational_roots(dense):
        try:
            if d12_family_invariants(t) == p:
                return t
        except DomainError:
            continue
    raise DomainError("not-in-d12-locus",
                      "invariants do not round-trip through the sextic "
                      "normal form")


# --------------------------------------------------------------------------
# involutions of the projective line preserving the branch set

@dataclass(frozen=True)
class MobiusInvolution:
    """x -> (a x + b)/(c x - a), an order-2 symmetry of the branch locus.

    ``multiplier`` is the exact scalar lambda with
    (cX - aZ)^6 f((aX+bZ)/(cX-aZ)) = lambda f(X, Z); ``fixed_branch_points``
    counts branch points of the curve fixed by the map (0 or 2).  The
    representation is normalized: c = 1, or c = 0 and a = 1.
    """

    a: Fraction
    b: Fraction
    c: Fraction
    multiplier: Fraction
    fixed_branch_points: int

    def __call__(self, x: RatLike) -> Fraction:
        x = rat(x)
        den = self.c * x - self.a
        if den == 0:
            raise ZeroDivisionError("point maps to infinity")
        return (self.a * x + self.b) / den

    @property
    def is_elliptic(self) -> bool:
        """No fixed branch points: the two quotients are elliptic curves."""
        return self.fixed_branch_points == 0


def _transform_coeffs(f: BinarySextic, lin1: Tuple, lin2: Tuple,
                      ring_zero: Poly) -> List:
    """Dense-in-X coefficients of F(aX+bZ, cX+dZ) where lin1 = (b, a) and
    lin2 = (d, c) are lowest-first pairs over an arbitrary coefficient ring
    (Fractions or Polys)."""

    def mul_dense(p: List, q: List) -> List:
        res = [ring_zero * 0 for _ in range(len(p) + len(q) - 1)]
        for i, pi in enumerate(p):
            for j, qj in enumerate(q):
                res[i + j] = res[i + j] + pi * qj
        return res

    total = [ring_zero * 0 for _ in range(7)]
    for i, coeff in enumerate(f.coeffs()):
        if coeff == 0:
            continue
        term = [ring_zero * 0 + coeff]
        for _ in range(i):
            term = mul_dense(term, list(lin1))
        for _ in range(6 - i):
            term = mul_dense(term, list(lin2))
        for k, val in enumerate(term):
            total[k] = total[k] + val
    return total


def _involution_fixed_branch_count(f: BinarySextic, a: Fraction,
                                   b: Fraction, c: Fraction) -> int:
    dense = q_trim(list(f.coeffs()))
    count = 0
    if c == 0:
        # map is x -> -x - b/a; fixes -b/(2a) and infinity
        x0 = -b / (2 * a)
        if f(x0) == 0:
            count += 1
        if f.degree == 5:  # infinity is a branch point, and it is fixed
            count += 1
        return count
    # fixed points are the roots of c x^2 - 2a x - b; count common roots
    # with f over the closure via the gcd degree
    fix = [-b, -2 * a, c]
    g = q_gcd(dense, fix)
    return len(g) - 1


def find_involutions(f: BinarySextic) -> List[MobiusInvolution]:
    """All rational Mobius involutions preserving the root set of f in P^1.

    Solves the proportionality system F o sigma = lambda F by elimination,
    split into the chart c = 0 (involutions fixing infinity, x -> -x - b)
    and the chart c = 1.  Candidates come from exact resultants and rational
    root extraction; every candidate is verified by direct substitution
    before being reported, so spurious elimination roots are harmless.
    """
    J10 = classical_invariants(f).J10
    if J10 == 0:
        raise DomainError("degenerate-sextic",
                          "involution search needs a squarefree sextic")
    fc = list(f.coeffs())
    r = 6 if fc[6] != 0 else 5  # reference coefficient index, f_r != 0
    found: List[MobiusInvolution] = []

    def verify(a: Fraction, b: Fraction, c: Fraction) -> Optional[Fraction]:
        if -a * a - b * c == 0:
            return None  # singular matrix, not a Mobius map
        cand = f.transformed(a, b, c, -a)
        lam = cand.coeffs()[r] / fc[r]
        if lam == 0:
            return None
        if all(cand.coeffs()[i] == lam * fc[i] for i in range(7)):
            return lam
        return None

    def push(a, b, c) -> None:
        lam = verify(a, b, c)
        if lam is None:
            return
        inv = MobiusInvolution(
            a=a, b=b, c=c, multiplier=lam,
            fixed_branch_points=_involution_fixed_branch_count(f, a, b, c))
        if inv not in found:
            found.append(inv)

    # ---- chart c = 0, a = 1: x -> -x - b ------------------------------
    bpoly = Poly.variable("b", ("b",))
    T0 = _transform_coeffs(f, (bpoly, bpoly * 0 + 1),
                           (bpoly * 0 - 1, bpoly * 0), bpoly * 0)
    eqs0: List[List[Fraction]] = []
    for i in range(7):
        e = T0[i] * fc[r] - T0[r] * fc[i]
        if not e.is_zero:
            eqs0.append(e.dense_uni())
    if eqs0:
        g = eqs0[0]
        for e in eqs0[1:]:
            g = q_gcd(g, e)
        if len(g) > 1:
            for b0, _m in rational_roots(g):
                push(Fraction(1), b0, Fraction(0))
    else:
        # every b satisfies the system -- cannot happen for a squarefree
        # sextic (finitely many symmetries); guarded for honesty
        raise RuntimeError("involution system degenerated in the c=0 chart")

    # ---- chart c = 1: x -> (a x + b)/(x - a) --------------------------
    apoly = Poly.variable("a", ("a", "b"))
    bpoly2 = Poly.variable("b", ("a", "b"))
    zero2 = apoly * 0
    T1 = _transform_coeffs(f, (bpoly2, apoly), (zero2 - apoly, zero2 + 1),
                           zero2)
    eqs1: List[Poly] = []
    for i in range(7):
        e = T1[i] * fc[r] - T1[r] * fc[i]
        if not e.is_zero:
            eqs1.append(e)
    res_polys: List[List[Fraction]] = []
    for i in range(len(eqs1)):
        for j in range(i + 1, len(eqs1)):
            if eqs1[i].degree("b") < 1 and eqs1[j].degree("b") < 1:
                continue
            rp = poly_resultant(eqs1[i], eqs1[j], "b")
            if not rp.is_zero:
                res_polys.append(rp.dense_uni())
        if len(res_polys) >= 3:
            break
    # b-free equations constrain a directly
    for e in eqs1:
        if e.degree("b") < 1 and e.degree("a") >= 1:
            res_polys.append(e.dense_uni())
    if not res_polys:
        raise RuntimeError("involution system degenerated in the c=1 chart")
    g = res_polys[0]
    for e in res_polys[1:]:
        g = q_gcd(g, e)
    if len(g) > 1:
        for a0, _m in rational_roots(g):
            slices = [q_trim(e(**{"a": a0}).dense_uni()) for e in eqs1]
            slices = [s for s in slices if s]
            if not slices:
                continue
            gb = slices[0]
            for s in slices[1:]:
                gb = q_gcd(gb, s)
            if len(gb) > 1:
                for b0, _m2 in rational_roots(gb):
                    push(a0, b0, Fraction(1))
    return found


# --------------------------------------------------------------------------
# classification

def _special_reps() -> List[Tuple[str, ClassicalInvariants]]:
    return [
        ("Z3⋊D8", classical_invariants(
            BinarySextic.from_coeffs([-1, 0, 0, 0, 0, 0, 1]))),   # X^6 - 1
        ("GL2(3)", classical_invariants(
            BinarySextic.from_coeffs([0, -1, 0, 0, 0, 1, 0]))),   # X^5 - X
        ("Z10", classical_invariants(
            BinarySextic.from_coeffs([0, -1, 0, 0, 0, 0, 1]))),   # X^6 - X
    ]


_SPECIAL_CACHE: Optional[List[Tuple[str, ClassicalInvariants]]] = None


def classify(f: BinarySextic) -> str:
    """The automorphism-group label of the smooth curve Y^2 = f.

    Decision order mirrors locus containment: the three exceptional curves
    first (caught by exact moduli equality over the closure), then the two
    dihedral families (locus equation + certified normal-form round trip),
    then a search for a rational elliptic involution (V4), else the generic
    hyperelliptic-only label Z2.
    """
    global _SPECIAL_CACHE
    J = classical_invariants(f)
    if J.J10 == 0:
        raise DomainError("degenerate-sextic",
                          "classification needs a squarefree sextic")
    if _SPECIAL_CACHE is None:
        _SPECIAL_CACHE = _special_reps()
    for label, rep in _SPECIAL_CACHE:
        if moduli_equal(J, rep):
            return label
    if in_d12_locus(J) and _d12_membership(J):
        return "D12"
    if in_d8_locus(J):
        return "D8"
    if any(s.is_elliptic for s in find_involutions(f)):
        return "V4"
    return "Z2"


def _d12_membership(J: ClassicalInvariants) -> bool:
    if J.J2 == 0:
        rep = classical_invariants(d12_family_curve(_D12_J2_ZERO_T))
        return moduli_equal(J, rep)
    try:
        d12_t_from_invariants(absolute_invariants(J))
    except DomainError:
        return False
    return True


# --------------------------------------------------------------------------
# degree-2 subcover j-invariants

_FAMILY_ALIASES: Dict[str, str] = {
    "d8": "d8", "d8-family": "d8", "quintic": "d8",
    "d12": "d12", "d12-family": "d12", "sextic": "d12",
}


def deg2_j_quadratic(family: str, t: RatLike) -> Poly:
    """Monic quadratic (in j) whose roots are the degree-2 subcover
    j-invariants of the family member at parameter t.

    For the sextic family the linear coefficient's quadratic numerator is
    500t^2 + 965t + 92; a variant with constant 27 circulates but fails
    every known data point (see scripts/derive_deg2_quadratics.py, which
    re-derives both quadratics from quotient-curve invariants and asserts
    the embedded forms).
    """
    t = rat(t)
    key = _FAMILY_ALIASES.get(family.lower())
    if key is None:
        raise ValueError(f"unknown family tag {family!r}")
    if t in (Fraction(0), Fraction(1, 4)):
        raise DomainError("degenerate-sextic",
                          f"family member at t = {t} has a repeated root")
    if key == "d8":
        s = 128 * (2000 * t ** 2 + 1440 * t + 27) / (4 * t - 1) ** 2
        p = 4096 * (100 * t - 9) ** 3 / (4 * t - 1) ** 3
    else:
        s = 13824 * t * (500 * t ** 2 + 965 * t + 92) / (4 * t - 1) ** 3
        p = 47775744 * t * (25 * t - 4) ** 3 / (4 * t - 1) ** 4
    j = Poly.variable("j", ("j",))
    return j ** 2 - s * j + p
