"""Degree-3 elliptic subcovers of genus-2 curves: the two-parameter picture.

A genus-2 curve admitting a degree-3 map onto an elliptic curve, ramified at
two places, is parameterized by a pair (u, v); this module carries that
parametrization, the two covering maps, the pair of elliptic models, the
parameter involution that swaps them, the invariant-space map theta, the
Jacobian-determinant curve of theta, and the degenerate one-parameter family
(covers ramified at a single place).

Model convention: the elliptic cubics are stored with the overall scale
that makes both covering identities hold over Q -- g(U(X)) * f(X) must be
a perfect square in Q(X), not merely a constant times one (see
verify_cover).  Any other scale in a different square class only certifies
the cover over a quadratic extension, and rank or torsion statements read
off such a model can be wrong for the curve actually covered.  Classical
displays differ from this normalization: by an overall sign on the first
model and by the non-square factor -(v - 27) on the second.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .errors import DomainError
from .exact import (RatLike, q_add, q_eval, q_gcd, q_mul, q_scale,
                    q_sqrt_poly, q_trim, rat, rational_sqrt)
from .igusa import (AbsoluteInvariants, BinarySextic, absolute_invariants,
                    classical_invariants)


# --------------------------------------------------------------------------
# parameters

@dataclass(frozen=True)
class UVParam:
    """The (u, v) parameter of a genus-2 curve with a marked degree-3
    elliptic subcover, ramified at two places.

    Validity (`is_nondegenerate`) means the parametrized sextic is
    squarefree: v not in {0, 27} and R(u, v) != 0.  Construction does not
    reject invalid pairs -- operations that need validity raise
    "degenerate-sextic" and name the vanishing factors.
    """

    u: Fraction
    v: Fraction

    def __post_init__(self):
        object.__setattr__(self, "u", rat(self.u))
        object.__setattr__(self, "v", rat(self.v))

    @property
    def r_value(self) -> Fraction:
        u, v = self.u, self.v
        return 27 * v + 4 * v ** 2 - u ** 2 * v + 4 * u ** 3 - 18 * u * v

    @property
    def delta(self) -> Fraction:
        """Discriminant of the parametrized sextic: -16 v^17 (v-27) R^3."""
        return -16 * self.v ** 17 * (self.v - 27) * self.r_value ** 3

    @property
    def is_nondegenerate(self) -> bool:
        return self.v not in (0, 27) and self.r_value != 0

    def vanishing_factors(self) -> List[str]:
        out = []
        if self.v == 0:
            out.append("v")
        if self.v == 27:
            out.append("v-27")
        if self.r_value == 0:
            out.append("R")
        return out

    def _require_nondegenerate(self) -> None:
        bad = self.vanishing_factors()
        if bad:
            raise DomainError(
                "degenerate-sextic",
                f"parametrized sextic at (u,v)=({self.u},{self.v}) is "
                f"singular: factor(s) {', '.join(bad)} of the discriminant "
                "vanish", payload=bad)


@dataclass(frozen=True)
class DegenerateParam:
    """Parameter of the one-place-ramified family Y^2=(3X^2+4)(X^3+X+c).

    Isomorphism classes correspond to w = c^2; a pair defined over an
    extension may have rational w but irrational c, in which case only w is
    stored (c is None) and no rational sextic model exists.
    """

    w: Fraction
    c: Optional[Fraction] = None

    def __post_init__(self):
        object.__setattr__(self, "w", rat(self.w))
        if self.c is not None:
            c = rat(self.c)
            object.__setattr__(self, "c", c)
            if c * c != self.w:
                raise ValueError("c^2 != w")
        if self.w == Fraction(-4, 27):
            raise ValueError("w = -4/27 gives a singular curve")

    @classmethod
    def from_c(cls, c: RatLike) -> "DegenerateParam":
        c = rat(c)
        return cls(w=c * c, c=c)

    @classmethod
    def from_w(cls, w: RatLike) -> "DegenerateParam":
        w = rat(w)
        return cls(w=w, c=rational_sqrt(w) if w >= 0 else None)


# --------------------------------------------------------------------------
# maps and models

@dataclass(frozen=True)
class CoveringMap:
    """A rational map X -> numerator(X)/denominator(X) of P^1, stored as
    coprime lowest-first coefficient tuples."""

    numerator: Tuple[Fraction, ...]
    denominator: Tuple[Fraction, ...]

    def __post_init__(self):
        num = tuple(rat(c) for c in q_trim(list(self.numerator)))
        den = tuple(rat(c) for c in q_trim(list(self.denominator)))
        if not num or not den:
            raise ValueError("zero numerator or denominator")
        g = q_gcd(list(num), list(den))
        if len(g) > 1:
            raise ValueError("numerator and denominator share a factor")
        object.__setattr__(self, "numerator", num)
        object.__setattr__(self, "denominator", den)

    @property
    def degree(self) -> int:
        return max(len(self.numerator), len(self.denominator)) - 1

    def __call__(self, x: RatLike) -> Optional[Fraction]:
        """Value at a rational x; None encodes the point at infinity."""
        x = rat(x)
        den = q_eval(list(self.denominator), x)
        if den == 0:
            return None
        return q_eval(list(self.numerator), x) / den

    def at_infinity(self) -> Optional[Fraction]:
        dn, dd = len(self.numerator) - 1, len(self.denominator) - 1
        if dn > dd:
            return None
        if dn < dd:
            return Fraction(0)
        return self.numerator[-1] / self.denominator[-1]


@dataclass(frozen=True)
class EllipticModel:
    """V^2 = c3 U^3 + c2 U^2 + c1 U + c0 with squarefree right-hand side."""

    c3: Fraction
    c2: Fraction
    c1: Fraction
    c0: Fraction

    def __post_init__(self):
        for name in ("c3", "c2", "c1", "c0"):
            object.__setattr__(self, name, rat(getattr(self, name)))
        if self.c3 == 0:
            raise ValueError("cubic coefficient vanishes")

    def cubic(self) -> List[Fraction]:
        return [self.c0, self.c1, self.c2, self.c3]

    def discriminant(self) -> Fraction:
        """Discriminant of the cubic polynomial (zero iff singular model)."""
        a, b, c, d = self.c3, self.c2, self.c1, self.c0
        return (18 * a * b * c * d - 4 * b ** 3 * d + b ** 2 * c ** 2
                - 4 * a * c ** 3 - 27 * a ** 2 * d ** 2)

    def scaled(self, lam: RatLike) -> "EllipticModel":
        """The model with V replaced by V/lam (coefficients times lam^2)."""
        m = rat(lam) ** 2
        return EllipticModel(self.c3 * m, self.c2 * m, self.c1 * m,
                             self.c0 * m)

    def twisted(self, lam: RatLike) -> "EllipticModel":
        """The quadratic twist by lam (all coefficients times lam): same
        j-invariant, isomorphic only over Q(sqrt(lam))."""
        m = rat(lam)
        if m == 0:
            raise ValueError("twist by zero")
        return EllipticModel(self.c3 * m, self.c2 * m, self.c1 * m,
                             self.c0 * m)


def j_invariant(E: EllipticModel) -> Fraction:
    """The exact j-invariant of V^2 = cubic (twist-insensitive)."""
    a, b, c, d = E.c3, E.c2, E.c1, E.c0
    c4 = 16 * b * b - 48 * a * c
    c6 = -64 * b ** 3 + 288 * a * b * c - 864 * a * a * d
    disc = c4 ** 3 - c6 ** 2  # vanishes iff the cubic has a repeated root
    if disc == 0:
        raise DomainError("singular-cubic",
                          "j-invariant of a singular cubic requested")
    return 1728 * c4 ** 3 / disc


# --------------------------------------------------------------------------
# the parametrized curve and its covers

def _factor_pair(p: UVParam) -> Tuple[List[Fraction], List[Fraction]]:
    u, v = p.u, p.v
    f1 = [Fraction(1), v, u * v, v * v]
    f2 = [Fraction(1), 2 * v, v * v, 4 * v * v]
    return f1, f2


def nondegenerate_sextic(p: UVParam) -> BinarySextic:
    """The genus-2 curve attached to (u, v):
    Y^2 = (v^2 X^3 + uv X^2 + v X + 1)(4v^2 X^3 + v^2 X^2 + 2v X + 1)."""
    p._require_nondegenerate()
    f1, f2 = _factor_pair(p)
    return BinarySextic.from_coeffs(q_mul(f1, f2))


def covering_maps(p: UVParam) -> Tuple[CoveringMap, CoveringMap]:
    """The two degree-3 covers onto the elliptic subcover pair.

    U1 = v X^2 / f1.  U2's numerator is (vX+3)^2 (v(4u-v-9)X + 3u-v); the
    widely-circulated form omits the inner v, which fails to reproduce the
    worked (20,16) cover and is rejected by verify_cover.
    """
    p._require_nondegenerate()
    u, v = p.u, p.v
    k = 4 * u - v - 9
    if k == 0:
        raise DomainError(
            "u2-undefined",
            "the stratum 4u - v - 9 = 0 has a different second cover and "
            "is not supported")
    f1, f2 = _factor_pair(p)
    u1 = CoveringMap((Fraction(0), Fraction(0), v), tuple(f1))
    sq = q_mul([Fraction(3), v], [Fraction(3), v])
    lin = [3 * u - v, v * k]
    u2 = CoveringMap(tuple(q_mul(sq, lin)), tuple(q_scale(f2, v * k)))
    return u1, u2


def subcover_models(p: UVParam) -> Tuple[EllipticModel, EllipticModel]:
    """The elliptic models E (target of U1) and E' (target of U2).

    Both models carry the unique quadratic-twist scale for which the
    covering identity g(U(X)) * f(X) = square holds over Q, as checked by
    verify_cover: the first is the negative of the classical display, the
    second is (v - 27) times that negative.  Classical displays of the
    second model (including worked one-point versions of it) are off by the
    non-square factor v - 27, i.e. they name a wrong twist: the map to them
    is only defined over Q(sqrt(v - 27)).
    """
    p._require_nondegenerate()
    u, v = p.u, p.v
    k = 4 * u - v - 9
    if k == 0:
        raise DomainError(
            "u2-undefined",
            "the stratum 4u - v - 9 = 0 has a different second cover and "
            "is not supported")
    R = p.r_value
    E = EllipticModel(
        c3=-R,
        c2=12 * u * u - 2 * u * v - 18 * v,
        c1=-(12 * u - v),
        c0=Fraction(4),
    )
    w = v - 27
    Ep = EllipticModel(
        c3=-w * (v * v * k ** 3),
        c2=w * v * k * k * (54 * u + u * v - 27 * v),
        c1=-w * k * (729 * u * u + 54 * u * u * v - 972 * u * v
                     - 18 * u * v * v + 189 * v * v + 729 * v + v ** 3),
        c0=w * (9 * u - 2 * v - 27) ** 3,
    )
    return E, Ep


def beta(p: UVParam) -> UVParam:
    """The degree-2 deck transformation of theta: swaps the two subcovers.

    Involutive wherever defined; undefined when v = 27 or R = 0 (note both
    conditions already make the sextic singular, so on valid parameters
    beta is total)."""
    u, v = p.u, p.v
    R = p.r_value
    if v == 27 or R == 0:
        raise DomainError("beta-undefined",
                          "parameter involution denominator vanished")
    bu = ((v - 3 * u)
          * (324 * u ** 2 + 15 * u ** 2 * v - 378 * u * v - 4 * u * v ** 2
             + 243 * v + 72 * v ** 2)) / ((v - 27) * R)
    bv = -4 * (v - 3 * u) ** 3 / R
    return UVParam(bu, bv)


def theta(p: UVParam) -> AbsoluteInvariants:
    """Absolute invariants of the parametrized curve (degree-2 onto its
    image; the fibers are beta-orbits)."""
    return absolute_invariants(classical_invariants(nondegenerate_sextic(p)))


def jacobian_det_locus(p: UVParam) -> Fraction:
    """Value of the determinant curve of theta at (u, v); zero iff theta is
    critical there (equal subcover j-invariants)."""
    u, v = p.u, p.v
    return (8 * v ** 3 + 27 * v ** 2 - 54 * u * v ** 2 - u * u * v * v
            + 108 * u * u * v + 4 * u ** 3 * v - 108 * u ** 3)


def exceptional_points() -> List[AbsoluteInvariants]:
    """The three invariant triples of the isolated critical parameters of
    theta (six (u,v) points in three beta-pairs)."""
    return [
        AbsoluteInvariants(Fraction(-8019, 20), Fraction(-1240029, 200),
                           Fraction(-531441, 100000)),
        AbsoluteInvariants(Fraction(729, 2116), Fraction(1240029, 97336),
                           Fraction(531441, 13181630464)),
        AbsoluteInvariants(Fraction(81), Fraction(-5103, 25),
                           Fraction(-729, 12500)),
    ]


def degenerate_sextic(d: DegenerateParam) -> BinarySextic:
    """The curve of the one-place-ramified family:
    Y^2 = (3X^2+4)(X^3+X+c) = 3X^5+7X^3+3cX^2+4X+4c."""
    if d.c is None:
        raise ValueError(
            "no rational model: w is not a rational square (c is "
            "irrational)")
    c = d.c
    return BinarySextic.from_coeffs([4 * c, 4, 3 * c, 7, 0, 3])


# --------------------------------------------------------------------------
# cover verification

def _compose_with_map(cubic: Sequence[Fraction],
                      cover: CoveringMap) -> List[Fraction]:
    """Numerator of g(num/den) * den^3 for a cubic g."""
    num = list(cover.numerator)
    den = list(cover.denominator)
    out = [Fraction(0)]
    num_pow = [Fraction(1)]
    den_pows = [[Fraction(1)]]
    for _ in range(3):
        den_pows.append(q_mul(den_pows[-1], den))
    for i, ci in enumerate(cubic):
        if ci:
            out = q_add(out, q_scale(q_mul(num_pow, den_pows[3 - i]), ci))
        if i < 3:
            num_pow = q_mul(num_pow, num)
    return q_trim(out)


def covering_certificate(f: Sequence[RatLike], cover: CoveringMap,
                         model: EllipticModel) -> bool:
    """Decide whether (cover, model) is a genuine morphism of Y^2 = f(X)
    onto the model, over Q.

    For a cover Y^2 = f(X) -> V^2 = g(U) with U = n(X)/d(X), the function
    V = Y * r(X) exists iff g(n/d) * f is the square of a rational function
    of X; clearing d^3 this is the condition that g_hom(n, d) * d * f is a
    perfect square in Q[X], which is decided exactly.  Scaling the cover by
    mu changes the product by mu^4 (harmless); scaling the model by lam
    changes it by lam -- so the certificate pins the model's square class,
    i.e. its quadratic twist.
    """
    dense = [rat(c) for c in f]
    ghom = _compose_with_map(model.cubic(), cover)
    prod = q_mul(q_mul(ghom, list(cover.denominator)), dense)
    return q_sqrt_poly(prod) is not None


def verify_cover(p: UVParam) -> bool:
    """Certify that both (U_i, E_i) pairs really define morphisms of the
    genus-2 curve onto the elliptic models, over Q (see
    covering_certificate)."""
    f = list(nondegenerate_sextic(p).coeffs())
    u1, u2 = covering_maps(p)
    E, Ep = subcover_models(p)
    return (covering_certificate(f, u1, E)
            and covering_certificate(f, u2, Ep))
