"""Invariants of binary sextics and genus-2 moduli comparison.

A genus-2 curve Y^2 = f(X) with deg f in {5, 6} is encoded as the binary
sextic F(X, Z) = a6 X^6 + a5 X^5 Z + ... + a0 Z^6 (a6 = 0 in the quintic
case, which simply puts one branch point at infinity).  This module computes
the four classical integral invariants J2, J4, J6, J10 of F, the three
absolute invariants that classify curves with J2 != 0, and exact equality of
points in the weighted projective moduli space.

The coefficient tables below were solved from the root-difference definition
of the invariants (symmetrized products of differences of the six roots,
cleared of the leading coefficient); ``scripts/derive_invariant_formulas.py``
re-derives them from scratch and fails loudly if the embedded copies drift.
J10 is exactly the discriminant of F, evaluated as a formal (5, 5) resultant
of the two partial derivatives so quintics need no special casing.
"""

from __future__ import annotations

import ast
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import ClassVar, List, Sequence, Tuple, Union

from .errors import DomainError
from .exact import (RatLike, q_gcd, q_mul, q_trim, rat, rat_str, resultant_q)

# --------------------------------------------------------------------------
# invariant coefficient tables: ((e0..e6), numerator, denominator) per term,
# the exponent tuple indexing a0..a6.

_J2_TERMS = (((0, 0, 0, 2, 0, 0, 0), 6, 1), ((0, 0, 1, 0, 1, 0, 0), -16, 1), ((0, 1, 0, 0, 0, 1, 0), 40, 1), ((1, 0, 0, 0, 0, 0, 1), -240, 1))

_J4_TERMS = (((0, 0, 2, 0, 2, 0, 0), 4, 1), ((0, 0, 2, 1, 0, 1, 0), -12, 1), ((0, 0, 3, 0, 0, 0, 1), 48, 1), ((0, 1, 0, 1, 2, 0, 0), -12, 1), ((0, 1, 0, 2, 0, 1, 0), 36, 1), ((0, 1, 1, 0, 1, 1, 0), 4, 1), ((0, 1, 1, 1, 0, 0, 1), -180, 1), ((0, 2, 0, 0, 0, 2, 0), -80, 1), ((0, 2, 0, 0, 1, 0, 1), 300, 1), ((1, 0, 0, 0, 3, 0, 0), 48, 1), ((1, 0, 0, 1, 1, 1, 0), -180, 1), ((1, 0, 0, 2, 0, 0, 1), 324, 1), ((1, 0, 1, 0, 0, 2, 0), 300, 1), ((1, 0, 1, 0, 1, 0, 1), -504, 1), ((1, 1, 0, 0, 0, 1, 1), -540, 1), ((2, 0, 0, 0, 0, 0, 2), 1620, 1))

_J6_TERMS = (((0, 0, 2, 2, 2, 0, 0), 8, 1), ((0, 0, 2, 3, 0, 1, 0), -24, 1), ((0, 0, 3, 0, 3, 0, 0), -24, 1), ((0, 0, 3, 1, 1, 1, 0), 76, 1), ((0, 0, 3, 2, 0, 0, 1), 60, 1), ((0, 0, 4, 0, 0, 2, 0), -36, 1), ((0, 0, 4, 0, 1, 0, 1), -160, 1), ((0, 1, 0, 3, 2, 0, 0), -24, 1), ((0, 1, 0, 4, 0, 1, 0), 72, 1), ((0, 1, 1, 1, 3, 0, 0), 76, 1), ((0, 1, 1, 2, 1, 1, 0), -238, 1), ((0, 1, 1, 3, 0, 0, 1), -198, 1), ((0, 1, 2, 0, 2, 1, 0), 28, 1), ((0, 1, 2, 1, 0, 2, 0), 26, 1), ((0, 1, 2, 1, 1, 0, 1), 492, 1), ((0, 1, 3, 0, 0, 1, 1), 616, 1), ((0, 2, 0, 0, 4, 0, 0), -36, 1), ((0, 2, 0, 1, 2, 1, 0), 26, 1), ((0, 2, 0, 2, 0, 2, 0), 176, 1), ((0, 2, 0, 2, 1, 0, 1), 330, 1), ((0, 2, 1, 0, 1, 2, 0), 64, 1), ((0, 2, 1, 0, 2, 0, 1), -640, 1), ((0, 2, 1, 1, 0, 1, 1), -1860, 1), ((0, 2, 2, 0, 0, 0, 2), -900, 1), ((0, 3, 0, 0, 0, 3, 0), -320, 1), ((0, 3, 0, 0, 1, 1, 1), 1600, 1), ((0, 3, 0, 1, 0, 0, 2), 2250, 1), ((1, 0, 0, 2, 3, 0, 0), 60, 1), ((1, 0, 0, 3, 1, 1, 0), -198, 1), ((1, 0, 0, 4, 0, 0, 1), 162, 1), ((1, 0, 1, 0, 4, 0, 0), -160, 1), ((1, 0, 1, 1, 2, 1, 0), 492, 1), ((1, 0, 1, 2, 0, 2, 0), 330, 1), ((1, 0, 1, 2, 1, 0, 1), -468, 1), ((1, 0, 2, 0, 1, 2, 0), -640, 1), ((1, 0, 2, 0, 2, 0, 1), 424, 1), ((1, 0, 2, 1, 0, 1, 1), -876, 1), ((1, 0, 3, 0, 0, 0, 2), -96, 1), ((1, 1, 0, 0, 3, 1, 0), 616, 1), ((1, 1, 0, 1, 1, 2, 0), -1860, 1), ((1, 1, 0, 1, 2, 0, 1), -876, 1), ((1, 1, 0, 2, 0, 1, 1), 1818, 1), ((1, 1, 1, 0, 0, 3, 0), 1600, 1), ((1, 1, 1, 0, 1, 1, 1), 3472, 1), ((1, 1, 1, 1, 0, 0, 2), 3060, 1), ((1, 2, 0, 0, 0, 2, 1), -2240, 1), ((1, 2, 0, 0, 1, 0, 2), -18600, 1), ((2, 0, 0, 0, 2, 2, 0), -900, 1), ((2, 0, 0, 0, 3, 0, 1), -96, 1), ((2, 0, 0, 1, 0, 3, 0), 2250, 1), ((2, 0, 0, 1, 1, 1, 1), 3060, 1), ((2, 0, 0, 2, 0, 0, 2), -10044, 1), ((2, 0, 1, 0, 0, 2, 1), -18600, 1), ((2, 0, 1, 0, 1, 0, 2), 20664, 1), ((2, 1, 0, 0, 0, 1, 2), 59940, 1), ((3, 0, 0, 0, 0, 0, 3), -119880, 1))

_J10_SCALE = Fraction(1, 1296)


# --------------------------------------------------------------------------
# core types

@dataclass(frozen=True)
class BinarySextic:
    """The form a6 X^6 + a5 X^5 Z + ... + a0 Z^6 of a genus-2 curve Y^2 = f.

    Valid instances have degree 5 or 6 in X (a5 or a6 nonzero); a repeated
    root is allowed but flags the curve as singular via
    :attr:`has_repeated_root`.
    """

    a0: Fraction
    a1: Fraction
    a2: Fraction
    a3: Fraction
    a4: Fraction
    a5: Fraction
    a6: Fraction

    def __post_init__(self) -> None:
        for name in ("a0", "a1", "a2", "a3", "a4", "a5", "a6"):
            object.__setattr__(self, name, rat(getattr(self, name)))
        if all(c == 0 for c in self.coeffs()):
            raise DomainError("zero-polynomial",
                              "the zero polynomial defines no curve")
        if self.a5 == 0 and self.a6 == 0:
            raise DomainError(
                "degree-out-of-range",
                "curve polynomial must have degree 5 or 6, got degree "
                f"{len(q_trim(list(self.coeffs()))) - 1}")

    @classmethod
    def from_coeffs(cls, coeffs: Sequence[RatLike]) -> "BinarySextic":
        """Build from lowest-first coefficients, padding up to degree 6."""
        cs = [rat(c) for c in coeffs]
        if len(cs) > 7:
            if any(c != 0 for c in cs[7:]):
                raise DomainError(
                    "degree-out-of-range",
                    f"curve polynomial has degree {len(q_trim(cs)) - 1} > 6")
            cs = cs[:7]
        cs += [Fraction(0)] * (7 - len(cs))
        return cls(*cs)

    def coeffs(self) -> Tuple[Fraction, ...]:
        """Lowest-first coefficients (a0, ..., a6)."""
        return (self.a0, self.a1, self.a2, self.a3, self.a4, self.a5, self.a6)

    @property
    def degree(self) -> int:
        return 6 if self.a6 != 0 else 5

    def __call__(self, x: RatLike) -> Fraction:
        """Evaluate the dehomogenized f at a rational ``x``."""
        x = rat(x)
        total = Fraction(0)
        for c in reversed(self.coeffs()):
            total = total * x + c
        return total

    @property
    def has_repeated_root(self) -> bool:
        """True when the binary form is not squarefree (J10 = 0)."""
        return classical_invariants(self).J10 == 0

    def scaled(self, c: RatLike) -> "BinarySextic":
        """The sextic c * f (same curve up to quadratic twist)."""
        c = rat(c)
        return BinarySextic(*(c * a for a in self.coeffs()))

    def transformed(self, a: RatLike, b: RatLike, c: RatLike,
                    d: RatLike) -> "BinarySextic":
        """Substitute (X, Z) -> (aX + bZ, cX + dZ) into the binary form."""
        a, b, c, d = rat(a), rat(b), rat(c), rat(d)
        out = [Fraction(0)] * 7
        for i, coeff in enumerate(self.coeffs()):
            if coeff == 0:
                continue
            term = [coeff]
            for _ in range(i):
                term = q_mul(term, [b, a])
            for _ in range(6 - i):
                term = q_mul(term, [d, c])
            for k, val in enumerate(term):
                out[k] += val
        return BinarySextic.from_coeffs(out)

    def to_text(self, var: str = "x") -> str:
        parts = []
        for i in range(6, -1, -1):
            c = self.coeffs()[i]
            if c == 0:
                continue
            if i == 0:
                mon = ""
            elif i == 1:
                mon = var
            else:
                mon = f"{var}^{i}"
            if c == 1 and mon:
                body = mon
            elif c == -1 and mon:
                body = f"-{mon}"
            else:
                body = rat_str(c) + (f"*{mon}" if mon else "")
            if parts and not body.startswith("-"):
                parts.append("+" + body)
            else:
                parts.append(body)
        return "".join(parts)

    def __str__(self) -> str:
        return self.to_text()


@dataclass(frozen=True)
class ClassicalInvariants:
    """The integral invariants (J2, J4, J6, J10), weights (2, 4, 6, 10)."""

    J2: Fraction
    J4: Fraction
    J6: Fraction
    J10: Fraction

    weights: ClassVar[Tuple[int, ...]] = (2, 4, 6, 10)

    def as_tuple(self) -> Tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.J2, self.J4, self.J6, self.J10)


@dataclass(frozen=True)
class AbsoluteInvariants:
    """The three absolute invariants (i1, i2, i3), defined when J2 != 0."""

    i1: Fraction
    i2: Fraction
    i3: Fraction

    def as_tuple(self) -> Tuple[Fraction, Fraction, Fraction]:
        return (self.i1, self.i2, self.i3)


PointLike = Union["ModuliPoint", ClassicalInvariants,
                  Sequence[RatLike]]

_HALF_WEIGHTS = (1, 2, 3, 5)


@dataclass(frozen=True, eq=False)
class ModuliPoint:
    """A point of the weighted projective moduli space, weights (2, 4, 6, 10).

    Equality is projective: two points are equal when one is the weighted
    scaling of the other by some algebraic lambda, decided exactly over the
    rationals by :func:`moduli_equal`.
    """

    J2: Fraction
    J4: Fraction
    J6: Fraction
    J10: Fraction

    weights: ClassVar[Tuple[int, ...]] = (2, 4, 6, 10)

    def __post_init__(self) -> None:
        for name in ("J2", "J4", "J6", "J10"):
            object.__setattr__(self, name, rat(getattr(self, name)))

    @classmethod
    def from_invariants(cls, J: ClassicalInvariants) -> "ModuliPoint":
        return cls(*J.as_tuple())

    def as_tuple(self) -> Tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.J2, self.J4, self.J6, self.J10)

    def zero_pattern(self) -> Tuple[bool, ...]:
        return tuple(c == 0 for c in self.as_tuple())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, (ModuliPoint, ClassicalInvariants)):
            return NotImplemented
        return moduli_equal(self, other)

    def __hash__(self) -> int:
        # projective-equality-compatible: normalize when J2 is available
        if self.J2 != 0:
            return hash((self.J4 / self.J2 ** 2, self.J6 / self.J2 ** 3,
                         self.J10 / self.J2 ** 5))
        return hash(self.zero_pattern())


# --------------------------------------------------------------------------
# invariant computation

def _isobaric(terms, a: Sequence[Fraction]) -> Fraction:
    total = Fraction(0)
    for exps, num, den in terms:
        m = Fraction(num, den)
        for ai, e in zip(a, exps):
            if e:
                m *= ai ** e
        total += m
    return total


def classical_invariants(f: BinarySextic) -> ClassicalInvariants:
    """The four classical invariants of the binary sextic.

    J10 is the discriminant of the form, computed as 1/1296 times the formal
    (5, 5) resultant of dF/dX and dF/dZ -- formal so that quintic input
    (a6 = 0) flows through the same code path with the correct value.
    """
    a = f.coeffs()
    fx = [a[1], 2 * a[2], 3 * a[3], 4 * a[4], 5 * a[5], 6 * a[6]]
    fz = [6 * a[0], 5 * a[1], 4 * a[2], 3 * a[3], 2 * a[4], a[5]]
    return ClassicalInvariants(
        J2=_isobaric(_J2_TERMS, a),
        J4=_isobaric(_J4_TERMS, a),
        J6=_isobaric(_J6_TERMS, a),
        J10=_J10_SCALE * resultant_q(fx, fz),
    )


def absolute_invariants(J: ClassicalInvariants) -> AbsoluteInvariants:
    """(i1, i2, i3) = (144 J4/J2^2, -1728 (J2 J4 - 3 J6)/J2^3, 486 J10/J2^5).

    Undefined when J2 = 0; the raised error carries the weighted
    :class:`ModuliPoint` as payload so callers can still compare curves.
    """
    if J.J2 == 0:
        raise DomainError(
            "j2-zero",
            "absolute invariants are undefined when J2 = 0",
            payload=ModuliPoint.from_invariants(J))
    return AbsoluteInvariants(
        i1=144 * J.J4 / J.J2 ** 2,
        i2=-1728 * (J.J2 * J.J4 - 3 * J.J6) / J.J2 ** 3,
        i3=486 * J.J10 / J.J2 ** 5,
    )


def _coords(p: PointLike) -> Tuple[Fraction, ...]:
    if isinstance(p, (ModuliPoint, ClassicalInvariants)):
        return p.as_tuple()
    t = tuple(rat(c) for c in p)
    if len(t) != 4:
        raise ValueError("a moduli point has exactly 4 coordinates")
    return t


def moduli_equal(p: PointLike, q: PointLike) -> bool:
    """Exact equality in weighted projective space, over the algebraic closure.

    With the halved weights (1, 2, 3, 5) the scaling factor ranges over all
    nonzero algebraic numbers, so equality is: identical zero patterns plus
    the pairwise cross conditions (q_k/p_k)^(w_l) = (q_l/p_l)^(w_k) on the
    nonzero coordinates.  Pairwise suffices: the nonzero halved weights are
    coprime in pairs of distinct indices, so a single consistent scaling
    factor can be assembled from any witness family (Bezout on the weights).
    """
    a, b = _coords(p), _coords(q)
    if [c == 0 for c in a] != [c == 0 for c in b]:
        return False
    nz = [k for k in range(4) if a[k] != 0]
    for i in range(len(nz)):
        for j in range(i + 1, len(nz)):
            k, l = nz[i], nz[j]
            wk, wl = _HALF_WEIGHTS[k], _HALF_WEIGHTS[l]
            if a[k] ** wl * b[l] ** wk != b[k] ** wl * a[l] ** wk:
                return False
    return True


# --------------------------------------------------------------------------
# parsing curve equations

_ALLOWED_NODES = (ast.Expression, ast.BinOp, ast.UnaryOp, ast.Constant,
                  ast.Name, ast.Load, ast.Add, ast.Sub, ast.Mult, ast.Div,
                  ast.Pow, ast.USub, ast.UAdd)

_IMPLICIT_MUL = re.compile(r"(?<=[0-9xX)])\s*(?=[xX(])")


def _dense_from_node(node: ast.AST) -> List[Fraction]:
    if isinstance(node, ast.Expression):
        return _dense_from_node(node.body)
    if isinstance(node, ast.Constant):
        if isinstance(node.value, int):
            return [Fraction(node.value)]
        raise ValueError(f"non-integer literal {node.value!r}")
    if isinstance(node, ast.Name):
        if node.id in ("x", "X"):
            return [Fraction(0), Fraction(1)]
        raise ValueError(f"unknown symbol {node.id!r}")
    if isinstance(node, ast.UnaryOp):
        inner = _dense_from_node(node.operand)
        return [-c for c in inner] if isinstance(node.op, ast.USub) else inner
    if isinstance(node, ast.BinOp):
        left = _dense_from_node(node.left)
        if isinstance(node.op, ast.Pow):
            if not (isinstance(node.right, ast.Constant)
                    and isinstance(node.right.value, int)
                    and node.right.value >= 0):
                raise ValueError("exponent must be a nonnegative integer")
            out = [Fraction(1)]
            for _ in range(node.right.value):
                out = q_mul(out, left)
            return out
        right = _dense_from_node(node.right)
        if isinstance(node.op, ast.Add):
            n = max(len(left), len(right))
            left += [Fraction(0)] * (n - len(left))
            right += [Fraction(0)] * (n - len(right))
            return [l + r for l, r in zip(left, right)]
        if isinstance(node.op, ast.Sub):
            n = max(len(left), len(right))
            left += [Fraction(0)] * (n - len(left))
            right += [Fraction(0)] * (n - len(right))
            return [l - r for l, r in zip(left, right)]
        if isinstance(node.op, ast.Mult):
            return q_mul(left, right)
        if isinstance(node.op, ast.Div):
            right = q_trim(right)
            if len(right) > 1:
                raise ValueError("division by a non-constant is not polynomial")
            if not right:
                raise ValueError("division by zero")
            return [c / right[0] for c in left]
    raise ValueError(f"unsupported syntax {ast.dump(node)[:60]}")


def curve_from_equation(text: str) -> BinarySextic:
    """Parse the right-hand side of Y^2 = f(X) from plain text.

    Accepts ``^`` or ``**`` powers, implicit multiplication (``3x^2``,
    ``(x+1)(x-1)``), rational coefficients via ``/``, and either case for the
    variable.  Raises ValueError on malformed input (a usage error) and
    DomainError when the polynomial is valid but out of domain (degree not
    in {5, 6}, or identically zero).
    """
    src = _IMPLICIT_MUL.sub("*", text.replace("^", "**").strip())
    try:
        tree = ast.parse(src, mode="eval")
    except SyntaxError as e:
        raise ValueError(f"cannot parse curve equation: {e.msg}") from None
    for sub in ast.walk(tree):
        if not isinstance(sub, _ALLOWED_NODES):
            raise ValueError(
                f"unsupported syntax element {type(sub).__name__}")
    dense = q_trim(_dense_from_node(tree))
    if not dense:
        raise DomainError("zero-polynomial",
                          "the zero polynomial defines no curve")
    if len(dense) - 1 < 5 or len(dense) - 1 > 6:
        raise DomainError(
            "degree-out-of-range",
            f"curve polynomial must have degree 5 or 6, got {len(dense) - 1}")
    return BinarySextic.from_coeffs(dense)


def squarefree_over_q(f: BinarySextic) -> bool:
    """Squarefreeness of the dehomogenized polynomial (not the binary form):
    a degree-5 f is squarefree here even though Z divides the sextic form."""
    dense = q_trim(list(f.coeffs()))
    deriv = [i * c for i, c in enumerate(dense)][1:]
    return len(q_gcd(dense, deriv)) <= 1
