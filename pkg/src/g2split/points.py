"""Rational points of genus-2 curves through rank-0 elliptic subcovers.

The pipeline: given ``Y^2 = f(X)`` together with a covering map onto an
elliptic model known (by an externally supplied certificate) to have rank 0,
every rational point of the curve lies over a torsion point of the model, so
``C(Q)`` is the union of the covering fibers above the torsion subgroup --
plus the points at infinity, which this module always reports explicitly.

Pieces:

* :func:`to_short_weierstrass` -- integral short model with an invertible,
  recorded change of coordinates (plumbing for Lutz--Nagell);
* :func:`torsion_subgroup`     -- exact rational torsion via Lutz--Nagell
  candidates filtered under the Mazur order bound, with a reduction-mod-p
  prefilter that usually avoids any integer factorization;
* :func:`fiber_preimage`       -- rational points of the curve over a given
  base value of a covering map, infinity included;
* :func:`rank0_rational_points` -- the certified pipeline;
* :func:`naive_point_search`    -- an independent exhaustive oracle.

Everything is exact rational arithmetic; nothing here estimates.

Convention for points at infinity: the smooth model of ``Y^2 = f(X)`` has
two rational points at infinity when ``deg f = 6`` and the leading
coefficient is a nonzero rational square (tagged by the two limits of
``Y/X^3``), one when ``deg f = 5``, and none otherwise.  Classical
statements that mention "the point at infinity" of a degree-6 model are
reproduced under this convention with both branches listed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

import sympy

from .errors import DomainError
from .exact import RatLike, q_eval, rat, rational_sqrt
from .igusa import BinarySextic
from .subcovers import CoveringMap, EllipticModel, covering_certificate

#: Admissible orders of the rational torsion subgroup (Mazur): 1..10 and 12.
MAZUR_ORDERS = frozenset(range(1, 11)) | {12}


# --------------------------------------------------------------------------
# points

@dataclass(frozen=True, order=True)
class AffinePoint:
    """A rational affine point (x, y) of a hyperelliptic or elliptic model."""

    x: Fraction
    y: Fraction

    def __post_init__(self):
        object.__setattr__(self, "x", rat(self.x))
        object.__setattr__(self, "y", rat(self.y))

    def as_pair(self) -> Tuple[Fraction, Fraction]:
        return (self.x, self.y)


@dataclass(frozen=True, order=True)
class InfinitePoint:
    """A rational point at infinity of the smooth model of Y^2 = f(X).

    For a degree-6 ``f`` whose leading coefficient is the square ``s^2``
    there are two such points, tagged by ``branch`` = the limit of
    ``Y/X^3`` (``+s`` and ``-s``); a degree-5 model has a single point,
    tagged ``branch = None``.
    """

    branch: Optional[Fraction] = None

    def __post_init__(self):
        if self.branch is not None:
            object.__setattr__(self, "branch", rat(self.branch))


CurvePoint = Union[AffinePoint, InfinitePoint]


def _point_key(p: CurvePoint):
    if isinstance(p, AffinePoint):
        return (0, p.x, p.y)
    return (1, p.branch if p.branch is not None else Fraction(0), Fraction(0))


def infinite_points(f: BinarySextic) -> List[InfinitePoint]:
    """The rational points at infinity of the smooth model of Y^2 = f(X)."""
    if f.degree == 5:
        return [InfinitePoint(None)]
    s = rational_sqrt(f.coeffs()[6])
    if s is None:
        return []
    return [InfinitePoint(s), InfinitePoint(-s)]


# --------------------------------------------------------------------------
# short Weierstrass plumbing

@dataclass(frozen=True)
class ShortWeierstrass:
    """An integral model y^2 = x^3 + a4 x + a6 with the recorded (invertible)
    change of coordinates back to the source cubic model.

    The source ``V^2 = c3 U^3 + c2 U^2 + c1 U + c0`` maps in by
    ``x = scale^2 (c3 U + c2/3)``, ``y = scale^3 c3 V``; ``stretch`` stores
    ``c3`` and ``shift`` stores ``c2/3``.
    """

    a4: int
    a6: int
    scale: Fraction
    stretch: Fraction
    shift: Fraction

    def __post_init__(self):
        if 4 * self.a4 ** 3 + 27 * self.a6 ** 2 == 0:
            raise DomainError("singular-cubic",
                              "short model has a repeated root")
        object.__setattr__(self, "scale", rat(self.scale))
        object.__setattr__(self, "stretch", rat(self.stretch))
        object.__setattr__(self, "shift", rat(self.shift))

    def to_short(self, x: RatLike, y: RatLike) -> Tuple[Fraction, Fraction]:
        x, y = rat(x), rat(y)
        return (self.scale ** 2 * (self.stretch * x + self.shift),
                self.scale ** 3 * self.stretch * y)

    def from_short(self, x: RatLike, y: RatLike) -> Tuple[Fraction, Fraction]:
        x, y = rat(x), rat(y)
        return ((x / self.scale ** 2 - self.shift) / self.stretch,
                y / (self.scale ** 3 * self.stretch))

    def discriminant(self) -> int:
        return -16 * (4 * self.a4 ** 3 + 27 * self.a6 ** 2)

    def rhs(self, x: RatLike) -> Fraction:
        x = rat(x)
        return x ** 3 + self.a4 * x + self.a6


def to_short_weierstrass(E: EllipticModel) -> ShortWeierstrass:
    """Reduce a cubic model to an integral short Weierstrass form.

    Completing the cube on ``c3^2 V^2 = (c3 U)^3 + ...`` and clearing
    denominators with the least admissible scale (per prime p, the least
    power with ``4 vp >= vp(den A)`` and ``6 vp >= vp(den B)``).  The
    j-invariant is preserved exactly and the transform is recorded.
    """
    if E.discriminant() == 0:
        raise DomainError("singular-cubic",
                          "cannot reduce a singular cubic model")
    c3, c2, c1, c0 = E.c3, E.c2, E.c1, E.c0
    a = c1 * c3 - c2 ** 2 / 3
    b = c0 * c3 ** 2 - c1 * c2 * c3 / 3 + 2 * c2 ** 3 / 27
    need: Dict[int, int] = {}
    for val, k in ((a, 4), (b, 6)):
        for p, e in sympy.factorint(val.denominator).items():
            need[int(p)] = max(need.get(int(p), 0), -(-e // k))
    lam = 1
    for p, e in need.items():
        lam *= p ** e
    a4 = a * lam ** 4
    a6 = b * lam ** 6
    assert a4.denominator == 1 and a6.denominator == 1
    return ShortWeierstrass(int(a4), int(a6), Fraction(lam), c3, c2 / 3)


# --------------------------------------------------------------------------
# torsion

def _ec_add(P: Optional[Tuple[Fraction, Fraction]],
            Q: Optional[Tuple[Fraction, Fraction]],
            a4: Fraction) -> Optional[Tuple[Fraction, Fraction]]:
    """Chord-tangent addition on y^2 = x^3 + a4 x + a6 (None is the origin;
    a6 never enters the slope formulas)."""
    if P is None:
        return Q
    if Q is None:
        return P
    x1, y1 = P
    x2, y2 = Q
    if x1 == x2:
        if y1 == -y2:
            return None
        lam = (3 * x1 * x1 + a4) / (2 * y1)
    else:
        lam = (y2 - y1) / (x2 - x1)
    x3 = lam * lam - x1 - x2
    return (x3, lam * (x1 - x3) - y1)


def _ec_order(P: Tuple[Fraction, Fraction], a4: Fraction,
              cap: int = 12) -> Optional[int]:
    """Order of P under repeated addition, or None when it exceeds cap."""
    Q, n = P, 1
    while Q is not None:
        Q = _ec_add(Q, P, a4)
        n += 1
        if n > cap + 1:
            return None
    return n


def _count_mod_p(a4: int, a6: int, p: int) -> int:
    """#E(F_p) by direct summation of square counts (p is small)."""
    hits = [0] * p
    for y in range(p):
        hits[y * y % p] += 1
    n = 1
    for x in range(p):
        n += hits[(x * x * x + a4 * x + a6) % p]
    return n


def _reduction_bound(sw: ShortWeierstrass, samples: int = 12) -> int:
    """A multiple of the torsion order: gcd of #E(F_p) over good primes.

    Torsion injects into E(F_p) for every odd prime of good reduction, so
    the gcd is a (usually tight) multiple of the torsion order.
    """
    disc = 4 * sw.a4 ** 3 + 27 * sw.a6 ** 2
    bound, used, p = 0, 0, 3
    while used < samples:
        p = int(sympy.nextprime(p))
        if (2 * disc) % p == 0:
            continue
        bound = math.gcd(bound, _count_mod_p(sw.a4 % p, sw.a6 % p, p))
        used += 1
        if bound == 1:
            break
    return bound


def _integer_roots(a4: int, a6: int, shift_sq: int) -> List[int]:
    """Integer roots of x^3 + a4 x + (a6 - shift_sq)."""
    x = sympy.symbols("x")
    poly = sympy.Poly([1, 0, a4, a6 - shift_sq], x)
    out = []
    for r in poly.ground_roots():
        rq = Fraction(int(sympy.numer(r)), int(sympy.denom(r)))
        if rq.denominator == 1:  # monic integer cubic: always the case
            out.append(int(rq))
    return sorted(out)


@dataclass(frozen=True)
class TorsionSubgroup:
    """The rational torsion subgroup of an elliptic model, reported in the
    model's own (U, V) coordinates.  The identity is implicit: ``points``
    holds only the affine members, and ``order == len(points) + 1``.
    """

    points: Tuple[AffinePoint, ...]
    order: int
    structure: str
    generators: Tuple[AffinePoint, ...]

    def __iter__(self) -> Iterator[AffinePoint]:
        return iter(self.points)

    def __len__(self) -> int:
        return self.order

    def __contains__(self, item: object) -> bool:
        return item in self.points

    def x_coordinates(self) -> List[Fraction]:
        return sorted({p.x for p in self.points})


def torsion_subgroup(E: EllipticModel) -> TorsionSubgroup:
    """The full rational torsion subgroup of ``V^2 = cubic(U)``, exactly.

    Method: reduce to an integral short model; bound the order by the gcd
    of ``#E(F_p)`` over several odd good primes (an early exit when the
    bound collapses to 1 or 2 avoids factoring the discriminant entirely);
    then enumerate Lutz--Nagell candidates -- integral (x, y) with y = 0 or
    y^2 dividing the discriminant -- and keep the points of order at most
    12.  The result is closed under the group law (checked), its order is
    checked against both the reduction bound and the Mazur list, and the
    points are mapped back through the recorded coordinate change.
    """
    sw = to_short_weierstrass(E)
    a4F = Fraction(sw.a4)
    bound = _reduction_bound(sw)
    torsion: List[Tuple[Fraction, Fraction]] = []
    if bound > 1:
        candidates: List[Tuple[int, int]] = [
            (x, 0) for x in _integer_roots(sw.a4, sw.a6, 0)]
        if bound > 2:
            # Elements of order >= 3 have y != 0 and y^2 | disc: enumerate y
            # through the square part of the discriminant.
            fac = sympy.factorint(abs(sw.discriminant()))
            square_part = 1
            for p, e in fac.items():
                square_part *= int(p) ** (e // 2)
            for y in map(int, sympy.divisors(square_part)):
                for x in _integer_roots(sw.a4, sw.a6, y * y):
                    candidates.append((x, y))
        for x, y in candidates:
            P = (Fraction(x), Fraction(y))
            if _ec_order(P, a4F) is not None:
                torsion.append(P)
                if y:
                    torsion.append((P[0], -P[1]))
    torsion = sorted(set(torsion))
    order = len(torsion) + 1
    if order not in MAZUR_ORDERS:
        raise AssertionError(
            f"torsion order {order} is outside the Mazur list")
    if bound and bound % order:
        raise AssertionError(
            f"torsion order {order} does not divide reduction bound {bound}")
    # Closure under the group law (cheap: at most 12 elements).
    full = [None] + torsion
    for P in full:
        for Q in full:
            S = _ec_add(P, Q, a4F)
            if S is not None and S not in torsion:
                raise AssertionError("torsion set not closed under addition")

    orders = {P: _ec_order(P, a4F) for P in torsion}
    two_torsion = sum(1 for P in torsion if P[1] == 0) + 1
    gens_short: List[Tuple[Fraction, Fraction]] = []
    if torsion:
        P = max(torsion, key=lambda t: orders[t])
        gens_short.append(P)
        if two_torsion == 4:
            span = set()
            Q: Optional[Tuple[Fraction, Fraction]] = None
            for _ in range(orders[P]):
                Q = _ec_add(Q, P, a4F)
                if Q is not None:
                    span.add(Q)
            extra = next(t for t in torsion
                         if t[1] == 0 and t not in span)
            gens_short.append(extra)
            structure = f"Z/2 x Z/{order // 2}" if order > 4 else "Z/2 x Z/2"
        else:
            structure = f"Z/{order}"
    else:
        structure = "trivial"

    def back(pt: Tuple[Fraction, Fraction]) -> AffinePoint:
        u, v = sw.from_short(*pt)
        assert v * v == q_eval(E.cubic(), u)
        return AffinePoint(u, v)

    return TorsionSubgroup(
        points=tuple(sorted((back(P) for P in torsion))),
        order=order,
        structure=structure,
        generators=tuple(back(P) for P in gens_short),
    )


# --------------------------------------------------------------------------
# covering fibers

def _rational_roots(dense: Sequence[Fraction]) -> List[Fraction]:
    """All rational roots of a nonzero polynomial (lowest-first coeffs)."""
    lcm = 1
    for c in dense:
        lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
    ints = [int(c * lcm) for c in dense]
    while ints and ints[-1] == 0:
        ints.pop()
    if not ints:
        raise ValueError("zero polynomial has no well-defined root set")
    if len(ints) == 1:
        return []
    x = sympy.symbols("x")
    poly = sympy.Poly(list(reversed(ints)), x)
    out = []
    for r in poly.ground_roots():
        out.append(Fraction(int(sympy.numer(r)), int(sympy.denom(r))))
    return sorted(out)


def fiber_preimage(U: CoveringMap, q: Optional[RatLike],
                   f: BinarySextic) -> List[CurvePoint]:
    """All rational points of Y^2 = f(X) lying over the base value q of the
    covering map (q = None meaning the point at infinity of the base line).

    Affine candidates are the rational X with U(X) = q whose f-value is a
    rational square (both Y-signs are attached, y = 0 once); the curve's
    points at infinity belong to the fiber exactly when the limit of U at
    X = infinity equals q.
    """
    qv = None if q is None else rat(q)
    num = list(U.numerator)
    den = list(U.denominator)
    if qv is None:
        poly = den
    else:
        size = max(len(num), len(den))
        num += [Fraction(0)] * (size - len(num))
        den += [Fraction(0)] * (size - len(den))
        poly = [a - qv * b for a, b in zip(num, den)]
    if not any(poly):
        raise ValueError("covering map is constant; the fiber is the "
                         "whole curve")
    out: List[CurvePoint] = []
    for x0 in _rational_roots(poly):
        val = f(x0)
        if val == 0:
            out.append(AffinePoint(x0, Fraction(0)))
            continue
        y0 = rational_sqrt(val)
        if y0 is not None:
            out.append(AffinePoint(x0, y0))
            out.append(AffinePoint(x0, -y0))
    if U.at_infinity() == qv:
        out.extend(infinite_points(f))
    return sorted(out, key=_point_key)


# --------------------------------------------------------------------------
# the certified pipeline

@dataclass(frozen=True)
class RankCertificate:
    """An externally asserted rank fact for one cover's elliptic model.

    ``curve_id`` addresses a cover positionally: "0", "1", ... or
    "cover-0", "cover-1", ...  Certificates are consumed only when the
    asserted rank is 0; rank is never computed in this package.
    """

    curve_id: str
    rank: int
    provenance: str = ""


def _cover_index(curve_id: str, count: int) -> int:
    text = curve_id.strip()
    if text.startswith("cover-"):
        text = text[len("cover-"):]
    try:
        idx = int(text)
    except ValueError:
        raise ValueError(f"unrecognized cover id {curve_id!r}") from None
    if not 0 <= idx < count:
        raise ValueError(f"cover id {curve_id!r} out of range "
                         f"(have {count} covers)")
    return idx


@dataclass(frozen=True)
class RationalPointsReport:
    """Outcome of the rank-0 pipeline: the points, the cover that produced
    them, its torsion subgroup, and any honesty warnings.

    Iterating the report iterates its points.  ``warnings`` is nonempty
    when the curve's own rational points at infinity map to a rational
    point of the certified model *outside* its torsion subgroup -- a
    contradiction proving the asserted rank 0 false.  The affine list is
    then still sound (every member is a genuine rational point) but the
    completeness claim is void.
    """

    points: Tuple[CurvePoint, ...]
    cover_index: int
    torsion: TorsionSubgroup
    warnings: Tuple[str, ...] = ()

    def __iter__(self) -> Iterator[CurvePoint]:
        return iter(self.points)

    def __len__(self) -> int:
        return len(self.points)

    def __contains__(self, item: object) -> bool:
        return item in self.points

    def affine(self) -> List[AffinePoint]:
        return [p for p in self.points if isinstance(p, AffinePoint)]

    def at_infinity(self) -> List[InfinitePoint]:
        return [p for p in self.points if isinstance(p, InfinitePoint)]


def rank0_rational_points(
        f: BinarySextic,
        covers: Sequence[Tuple[CoveringMap, EllipticModel]],
        certs: Sequence[RankCertificate]) -> RationalPointsReport:
    """C(Q) of Y^2 = f(X) through a covering onto a rank-0 elliptic model.

    Uses the first cover holding a rank-0 certificate: every rational point
    of the curve maps to a rational -- hence torsion -- point of that model,
    so C(Q) is the union of fiber preimages over the torsion subgroup.  The
    curve's rational points at infinity are appended unconditionally, and a
    ``certificate-inconsistency`` warning is raised on the report when they
    land outside the torsion subgroup (which refutes the certificate).

    Raises "insufficient-certificates" when no certificate asserts rank 0,
    and "invalid-cover" when the certified pair fails the covering
    certificate (e.g. a wrong quadratic twist of the true model).
    """
    if not covers:
        raise ValueError("no covers supplied")
    rank0 = [c for c in certs if c.rank == 0]
    if not rank0:
        raise DomainError(
            "insufficient-certificates",
            "every supplied certificate asserts positive rank; the "
            "torsion-preimage method needs a rank-0 model")
    cert = rank0[0]
    idx = _cover_index(cert.curve_id, len(covers))
    U, E = covers[idx]
    if not covering_certificate(list(f.coeffs()), U, E):
        raise DomainError(
            "invalid-cover",
            "the certified map/model pair is not a covering of this curve "
            "over Q (wrong model or wrong quadratic twist)")
    tor = torsion_subgroup(E)
    values: List[Optional[Fraction]] = [None]
    values.extend(tor.x_coordinates())
    found: set = set()
    for q in values:
        found.update(fiber_preimage(U, q, f))
    inf = infinite_points(f)
    found.update(inf)
    warnings: List[str] = []
    if inf:
        qinf = U.at_infinity()
        if qinf is not None and qinf not in tor.x_coordinates():
            s = rational_sqrt(q_eval(E.cubic(), qinf))
            witness = (f"({qinf}, +-{s})" if s is not None
                       else f"U = {qinf} with a non-square model value")
            warnings.append(
                "certificate-inconsistency: the curve's rational points at "
                f"infinity map to {witness}, a rational point of the "
                "certified model outside its torsion subgroup, so the "
                "asserted rank 0 is false; the returned points are genuine "
                "but the completeness guarantee is void")
    return RationalPointsReport(
        points=tuple(sorted(found, key=_point_key)),
        cover_index=idx,
        torsion=tor,
        warnings=tuple(warnings),
    )


# --------------------------------------------------------------------------
# exhaustive oracle

def naive_point_search(f: BinarySextic,
                       height_bound: int) -> List[CurvePoint]:
    """All rational points (x, y) with x = p/q in lowest terms and
    max(|p|, q) <= height_bound, plus the points at infinity.

    Independent of the covering machinery: clears f to an integer form and
    tests f(p/q) for squareness with pure integer arithmetic.
    """
    if height_bound < 1:
        raise ValueError("height bound must be at least 1")
    coeffs = list(f.coeffs())
    while len(coeffs) < 7:
        coeffs.append(Fraction(0))
    lcm = 1
    for c in coeffs:
        lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
    ints = [int(c * lcm) for c in coeffs]
    out: List[CurvePoint] = []
    for qd in range(1, height_bound + 1):
        qpow = [qd ** k for k in range(7)]
        for pn in range(-height_bound, height_bound + 1):
            if math.gcd(abs(pn), qd) != 1:
                continue
            acc = ints[6]
            for i in range(5, -1, -1):
                acc = acc * pn + ints[i] * qpow[6 - i]
            val = acc * lcm
            if val < 0:
                continue
            x0 = Fraction(pn, qd)
            if val == 0:
                out.append(AffinePoint(x0, Fraction(0)))
                continue
            root = math.isqrt(val)
            if root * root == val:
                y0 = Fraction(root, lcm * qpow[3])
                out.append(AffinePoint(x0, y0))
                out.append(AffinePoint(x0, -y0))
    out.extend(infinite_points(f))
    return sorted(out, key=_point_key)
