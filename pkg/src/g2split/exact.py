"""Exact arithmetic kernels: rationals, sparse polynomials, resultants,
certified gcds, and rational root extraction.

Every verdict produced elsewhere in this package (a locus membership, a fiber
count, a reconstruction round-trip) bottoms out in this module, so every code
path here is exact -- floats never appear.  The heavier algorithms follow the
usual computer-algebra playbook:

* resultants: fraction-free (Bareiss) determinants of formal-degree Sylvester
  matrices, with an evaluation/interpolation fast path for bivariate input;
* gcd in Q[x]: modular images combined by CRT and certified by exact trial
  division before anything is returned;
* rational roots: reduction mod a good prime, Cantor-Zassenhaus root finding,
  quadratic Hensel lifting past ``2*B**2``, rational reconstruction, and exact
  verification of every candidate (multiplicities by exact division).

Primality of every modulus drawn anywhere is guaranteed by deterministic
Miller-Rabin (the fixed-base variant that is a proven test far beyond 2**64,
while all our moduli are below 2**31).
"""
from __future__ import annotations

import itertools
import math
import random
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

Exp = Tuple[int, ...]
RatLike = Union[int, str, Fraction]

__all__ = [
    "rat", "rat_str", "rational_sqrt", "is_rational_square",
    "is_prime", "primes_desc", "PRIMES31", "factor_int", "divisors",
    "crt_pair", "symmetric_mod", "rational_reconstruct",
    "Poly", "poly_ring", "poly_exact_div",
    "q_trim", "q_add", "q_sub", "q_scale", "q_mul", "q_divmod", "q_deriv",
    "q_eval", "q_from_roots", "q_clear_denominators", "q_gcd", "q_divides",
    "z_trim", "z_content", "z_primitive", "z_deriv", "z_eval",
    "zpoly_gcd", "squarefree_part", "rational_roots",
    "gf_trim", "gf_from_z", "gf_add", "gf_sub", "gf_neg", "gf_scale",
    "gf_mul", "gf_divmod", "gf_monic", "gf_gcd", "gf_powmod", "gf_eval",
    "gf_deriv", "gf_roots", "gf_interp", "gf_mat_det",
    "det_int", "det_rational", "det_poly",
    "resultant_int", "resultant_q", "poly_resultant",
    "interpolate_rational", "interpolate_poly2", "solve_linear",
]


# ---------------------------------------------------------------------------
# rationals

def rat(x: RatLike) -> Fraction:
    """Coerce an int, Fraction, or string like ``"-3/4"`` to a Fraction.

    Floats are rejected on purpose: nothing in this package is allowed to
    launder a rounding error into an exact pipeline.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def rat_str(q: RatLike) -> str:
    """Format a rational as ``"p/q"``, or just ``"p"`` for integers."""
    q = rat(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def rational_sqrt(q: RatLike) -> Optional[Fraction]:
    """The exact nonnegative square root of ``q``, or None if irrational."""
    q = rat(q)
    if q < 0:
        return None
    rn = math.isqrt(q.numerator)
    rd = math.isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


def is_rational_square(q: RatLike) -> Optional[Fraction]:
    """The nonnegative root when ``q`` is a square of a rational, else None.

    Returns the witness rather than a bool so callers never recompute the
    root; beware that a witness of 0 is falsy -- test ``is not None``.
    """
    return rational_sqrt(q)


# ---------------------------------------------------------------------------
# primality and factorization

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin (proven for everything we ever test)."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = (d & -d).bit_length() - 1
    d >>= s
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_desc(start: int = (1 << 31) - 1) -> Iterator[int]:
    """Primes below ``start`` (inclusive), largest first.  Unbounded supply for
    the modular algorithms; nothing here ever exhausts it."""
    n = start
    if n >= 2:
        if n % 2 == 0:
            if n == 2:
                yield 2
                return
            n -= 1
        while n > 2:
            if is_prime(n):
                yield n
            n -= 2
        yield 2


#: a dozen fixed ~31-bit primes; the fiber grid screen indexes into this so the
#: screen is reproducible run to run.
PRIMES31: List[int] = list(itertools.islice(primes_desc(), 12))

_SMALL_PRIME_LIMIT = 10_000


def _small_primes() -> List[int]:
    sieve = bytearray([1]) * _SMALL_PRIME_LIMIT
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(_SMALL_PRIME_LIMIT) + 1):
        if sieve[i]:
            sieve[i * i::i] = bytearray(len(sieve[i * i::i]))
    return [i for i in range(_SMALL_PRIME_LIMIT) if sieve[i]]


SMALL_PRIMES: List[int] = _small_primes()


def _pollard_rho(n: int, rng: random.Random) -> int:
    """Brent-cycle rho; returns a nontrivial factor of composite odd n."""
    while True:
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m = 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def factor_int(n: int) -> Dict[int, int]:
    """Prime factorization of ``abs(n)`` as ``{p: exponent}``; 1 -> ``{}``."""
    if n == 0:
        raise ValueError("cannot factor 0")
    n = abs(n)
    out: Dict[int, int] = {}
    for p in SMALL_PRIMES:
        if p * p > n:
            break
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    if n == 1:
        return out
    rng = random.Random(0xFAC70 ^ n)
    stack = [n]
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        d = _pollard_rho(m, rng)
        stack.append(d)
        stack.append(m // d)
    return out


def divisors(n: int) -> List[int]:
    """All positive divisors of ``abs(n)``, ascending."""
    fac = factor_int(n)
    out = [1]
    for p, e in fac.items():
        out = [d * p ** k for d in out for k in range(e + 1)]
    return sorted(out)


# ---------------------------------------------------------------------------
# CRT and rational reconstruction

def crt_pair(r1: int, m1: int, r2: int, m2: int) -> int:
    """x with x = r1 (mod m1), x = r2 (mod m2); moduli must be coprime."""
    g = math.gcd(m1, m2)
    if g != 1:
        raise ValueError("crt_pair needs coprime moduli")
    u = pow(m1, -1, m2)
    t = (r2 - r1) * u % m2
    return (r1 + m1 * t) % (m1 * m2)


def symmetric_mod(a: int, m: int) -> int:
    """Representative of ``a`` mod ``m`` in ``(-m/2, m/2]``."""
    a %= m
    if 2 * a > m:
        a -= m
    return a


def rational_reconstruct(r: int, m: int, num_bound: int,
                         den_bound: int) -> Optional[Fraction]:
    """Recover ``p/q`` with ``p = q*r (mod m)``, ``|p| <= num_bound``,
    ``0 < q <= den_bound``.

    Requires ``2*num_bound*den_bound < m``; under that hypothesis the answer
    is unique when it exists, and None is returned when it does not.  Callers
    in this package always re-verify the candidate exactly, so a None here is
    a hard "no solution in range".
    """
    if m <= 0 or num_bound < 0 or den_bound <= 0:
        raise ValueError("bad reconstruction bounds")
    r0, t0 = m, 0
    r1, t1 = r % m, 1
    while r1 > num_bound:
        qq = r0 // r1
        r0, r1 = r1, r0 - qq * r1
        t0, t1 = t1, t0 - qq * t1
    if t1 == 0:
        return None
    p, q = r1, t1
    if q < 0:
        p, q = -p, -q
    if q > den_bound or math.gcd(p, q) != 1:
        return None
    return Fraction(p, q)


# ---------------------------------------------------------------------------
# sparse multivariate polynomials

def poly_ring(*names: str) -> Tuple["Poly", ...]:
    """One generator per name, all sharing the same variable tuple.

    >>> x, y = poly_ring("x", "y")
    >>> (x + y) * (x - y) == x**2 - y**2
    True
    """
    n = len(names)
    return tuple(
        Poly(names, {tuple(int(i == k) for i in range(n)): Fraction(1)})
        for k in range(n)
    )


class Poly:
    """A sparse polynomial over Q: a dict ``{exponent tuple: Fraction}`` plus
    an ordered tuple of variable names.

    Arithmetic between polynomials over different variable tuples silently
    works in the union ring (left operand's order wins, unseen variables are
    appended), which keeps call sites readable.  Evaluation binds any subset
    of the variables to rationals.
    """

    __slots__ = ("vars", "coeffs")

    def __init__(self, variables: Sequence[str],
                 coeffs: Mapping[Exp, RatLike]):
        vs = tuple(variables)
        nd: Dict[Exp, Fraction] = {}
        for e, c in coeffs.items():
            if len(e) != len(vs):
                raise ValueError("exponent arity does not match variables")
            c = rat(c)
            if c:
                nd[tuple(int(k) for k in e)] = c
        self.vars = vs
        self.coeffs = nd

    # -- constructors -----------------------------------------------------
    @classmethod
    def const(cls, c: RatLike, variables: Sequence[str] = ()) -> "Poly":
        v = tuple(variables)
        return cls(v, {(0,) * len(v): rat(c)})

    @classmethod
    def variable(cls, name: str, variables: Sequence[str]) -> "Poly":
        v = tuple(variables)
        i = v.index(name)
        return cls(v, {tuple(int(j == i) for j in range(len(v))): Fraction(1)})

    @classmethod
    def from_dense(cls, coeffs: Sequence[RatLike], name: str) -> "Poly":
        """Univariate from a lowest-degree-first coefficient list."""
        return cls((name,), {(i,): rat(c) for i, c in enumerate(coeffs)})

    # -- structure --------------------------------------------------------
    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self, var: Optional[str] = None) -> int:
        """Degree in ``var`` (total degree if None); -1 for the zero poly."""
        if not self.coeffs:
            return -1
        if var is None:
            return max(sum(e) for e in self.coeffs)
        i = self.vars.index(var)
        return max(e[i] for e in self.coeffs)

    def scalar(self) -> Fraction:
        """This polynomial as a Fraction; raises unless it is constant."""
        if not self.coeffs:
            return Fraction(0)
        if any(any(e) for e in self.coeffs):
            raise ValueError(f"{self!r} is not constant")
        return next(iter(self.coeffs.values()))

    def dense_in(self, var: str) -> List["Poly"]:
        """Coefficient list of ``var`` (lowest first) over the other vars."""
        i = self.vars.index(var)
        rest = self.vars[:i] + self.vars[i + 1:]
        d = self.degree(var)
        if d < 0:
            return []
        buckets: List[Dict[Exp, Fraction]] = [{} for _ in range(d + 1)]
        for e, c in self.coeffs.items():
            buckets[e[i]][e[:i] + e[i + 1:]] = c
        return [Poly(rest, b) for b in buckets]

    def dense_uni(self) -> List[Fraction]:
        """Lowest-first coefficients, for a poly using at most one variable."""
        used = [i for i in range(len(self.vars))
                if any(e[i] for e in self.coeffs)]
        if len(used) > 1:
            raise ValueError("dense_uni needs an (effectively) univariate poly")
        if not self.coeffs:
            return []
        if not used:
            return [self.scalar()]
        i = used[0]
        out = [Fraction(0)] * (self.degree(self.vars[i]) + 1)
        for e, c in self.coeffs.items():
            out[e[i]] = c
        return out

    def leading_coeff(self, var: str) -> "Poly":
        dense = self.dense_in(var)
        if not dense:
            return Poly(tuple(w for w in self.vars if w != var), {})
        return dense[-1]

    def with_vars(self, variables: Sequence[str]) -> "Poly":
        """Re-embed into a ring whose variable tuple contains ours."""
        vs = tuple(variables)
        pos = [vs.index(w) for w in self.vars]
        out: Dict[Exp, Fraction] = {}
        for e, c in self.coeffs.items():
            ne = [0] * len(vs)
            for i, j in enumerate(pos):
                ne[j] = e[i]
            out[tuple(ne)] = c
        return Poly(vs, out)

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other) -> Optional["Poly"]:
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(other, self.vars)
        return None

    def _unified(self, other: "Poly") -> Tuple["Poly", "Poly"]:
        if self.vars == other.vars:
            return self, other
        merged = list(self.vars) + [w for w in other.vars
                                    if w not in self.vars]
        return self.with_vars(merged), other.with_vars(merged)

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self._unified(o)
        out = dict(a.coeffs)
        for e, c in b.coeffs.items():
            out[e] = out.get(e, Fraction(0)) + c
        return Poly(a.vars, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.vars, {e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self._unified(o)
        out: Dict[Exp, Fraction] = {}
        for e1, c1 in a.coeffs.items():
            for e2, c2 in b.coeffs.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                v = out.get(e)
                out[e] = c1 * c2 if v is None else v + c1 * c2
        return Poly(a.vars, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            c = rat(other)
            return Poly(self.vars, {e: v / c for e, v in self.coeffs.items()})
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only nonnegative integer powers")
        result = Poly.const(1, self.vars)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self._unified(o)
        return a.coeffs == b.coeffs

    __hash__ = None  # type: ignore[assignment]

    # -- calculus / evaluation -------------------------------------------
    def derivative(self, var: str) -> "Poly":
        i = self.vars.index(var)
        out: Dict[Exp, Fraction] = {}
        for e, c in self.coeffs.items():
            if e[i]:
                ne = e[:i] + (e[i] - 1,) + e[i + 1:]
                out[ne] = c * e[i]
        return Poly(self.vars, out)

    def __call__(self, **bindings: RatLike):
        """Bind variables to rationals.  Full binding returns a Fraction,
        partial binding a Poly over the remaining variables."""
        vals: Dict[int, Fraction] = {}
        for name, v in bindings.items():
            if name not in self.vars:
                raise ValueError(f"unknown variable {name!r}")
            vals[self.vars.index(name)] = rat(v)
        keep = [i for i in range(len(self.vars)) if i not in vals]
        out: Dict[Exp, Fraction] = {}
        for e, c in self.coeffs.items():
            for i, v in vals.items():
                if e[i]:
                    c = c * v ** e[i]
            ne = tuple(e[i] for i in keep)
            acc = out.get(ne)
            out[ne] = c if acc is None else acc + c
        result = Poly(tuple(self.vars[i] for i in keep), out)
        if not keep:
            return result.scalar()
        return result

    def __repr__(self):
        if not self.coeffs:
            return "Poly(0)"
        parts = []
        for e in sorted(self.coeffs, reverse=True):
            c = self.coeffs[e]
            mono = "*".join(
                f"{v}^{k}" if k > 1 else v
                for v, k in zip(self.vars, e) if k
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{c}*{mono}")
        s = " + ".join(parts).replace("+ -", "- ")
        return f"Poly({s})"


def poly_exact_div(a: Poly, b: Poly) -> Poly:
    """Exact quotient ``a / b``; raises ValueError if ``b`` does not divide.

    Plain lex term division: when ``a`` is a genuine multiple the lead term of
    the running remainder is always divisible by the lead term of ``b``, so a
    single-divisor reduction terminates with zero remainder.
    """
    if b.is_zero:
        raise ZeroDivisionError("poly_exact_div by zero")
    a, b = a._unified(b)
    bl = max(b.coeffs) if b.coeffs else None
    blc = b.coeffs[bl]
    rem = dict(a.coeffs)
    q: Dict[Exp, Fraction] = {}
    while rem:
        al = max(rem)
        e = tuple(x - y for x, y in zip(al, bl))
        if any(k < 0 for k in e):
            raise ValueError("not an exact polynomial multiple")
        c = rem[al] / blc
        q[e] = c
        for be, bc in b.coeffs.items():
            te = tuple(x + y for x, y in zip(e, be))
            v = rem.get(te, Fraction(0)) - c * bc
            if v:
                rem[te] = v
            else:
                rem.pop(te, None)
    return Poly(a.vars, q)


# ---------------------------------------------------------------------------
# dense univariate kernels over Q  (lowest-degree-first Fraction lists)

def q_trim(a: Sequence[Fraction]) -> List[Fraction]:
    a = list(a)
    while a and not a[-1]:
        a.pop()
    return a


def q_add(a: Sequence[Fraction], b: Sequence[Fraction]) -> List[Fraction]:
    n = max(len(a), len(b))
    return q_trim([
        (a[i] if i < len(a) else Fraction(0)) +
        (b[i] if i < len(b) else Fraction(0))
        for i in range(n)
    ])


def q_sub(a: Sequence[Fraction], b: Sequence[Fraction]) -> List[Fraction]:
    return q_add(a, [-c for c in b])


def q_scale(a: Sequence[Fraction], c: RatLike) -> List[Fraction]:
    c = rat(c)
    return q_trim([x * c for x in a])


def q_mul(a: Sequence[Fraction], b: Sequence[Fraction]) -> List[Fraction]:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            if y:
                out[i + j] += x * y
    return q_trim(out)


def q_divmod(a: Sequence[Fraction],
             b: Sequence[Fraction]) -> Tuple[List[Fraction], List[Fraction]]:
    """Euclidean division in Q[x]."""
    a = q_trim([rat(c) for c in a])
    b = q_trim([rat(c) for c in b])
    if not b:
        raise ZeroDivisionError("q_divmod by zero polynomial")
    if len(a) < len(b):
        return [], a
    q = [Fraction(0)] * (len(a) - len(b) + 1)
    rem = list(a)
    inv = 1 / b[-1]
    for k in range(len(a) - len(b), -1, -1):
        c = rem[k + len(b) - 1] * inv
        if c:
            q[k] = c
            for j, y in enumerate(b):
                rem[k + j] -= c * y
    return q_trim(q), q_trim(rem)


def q_divides(b: Sequence[Fraction], a: Sequence[Fraction]) -> bool:
    """Does ``b`` divide ``a`` in Q[x]?"""
    return not q_divmod(a, b)[1]


def q_deriv(a: Sequence[Fraction]) -> List[Fraction]:
    return q_trim([a[i] * i for i in range(1, len(a))])


def q_eval(a: Sequence[Fraction], x: RatLike) -> Fraction:
    x = rat(x)
    acc = Fraction(0)
    for c in reversed(list(a)):
        acc = acc * x + c
    return acc


def q_from_roots(roots: Sequence[RatLike], lead: RatLike = 1) -> List[Fraction]:
    out = [rat(lead)]
    for r in roots:
        out = q_mul(out, [-rat(r), Fraction(1)])
    return out


def q_clear_denominators(a: Sequence[Fraction]) -> Tuple[List[int], int]:
    """``(integer_coeffs, scale)`` with ``integer_coeffs = scale * a``."""
    a = [rat(c) for c in a]
    scale = math.lcm(*(c.denominator for c in a)) if a else 1
    return [int(c * scale) for c in a], scale


def q_gcd(a: Sequence[Fraction], b: Sequence[Fraction]) -> List[Fraction]:
    """Monic gcd in Q[x] (certified; delegates to the modular integer gcd)."""
    za, _ = q_clear_denominators(q_trim(list(a)))
    zb, _ = q_clear_denominators(q_trim(list(b)))
    g = zpoly_gcd(za, zb)
    if not g:
        return []
    lead = Fraction(g[-1])
    return [Fraction(c) / lead for c in g]


def q_sqrt_poly(a: Sequence[Fraction]) -> Optional[List[Fraction]]:
    """The polynomial square root with positive-square leading coefficient,
    or None when ``a`` is not a perfect square in Q[x].

    Top-down coefficient recovery pins the unique candidate with the chosen
    branch of the leading square root; a final exact multiplication check
    makes the decision sound regardless of the recurrence."""
    a = q_trim(list(a))
    if not a:
        return []
    n = len(a) - 1
    if n % 2:
        return None
    lead = rational_sqrt(a[-1])
    if lead is None:
        return None
    m = n // 2
    h = [Fraction(0)] * (m + 1)
    h[m] = lead
    for k in range(1, m + 1):
        s = Fraction(0)
        for i in range(max(m - k + 1, 0), m):
            j = 2 * m - k - i
            if i < j <= m:
                s += 2 * h[i] * h[j]
            elif i == j:
                s += h[i] * h[i]
        h[m - k] = (a[n - k] - s) / (2 * h[m])
    return h if q_mul(h, h) == a else None


# ---------------------------------------------------------------------------
# dense univariate kernels over Z

def z_trim(a: Sequence[int]) -> List[int]:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def z_content(a: Sequence[int]) -> int:
    g = 0
    for c in a:
        g = math.gcd(g, c)
    return g


def z_primitive(a: Sequence[int]) -> List[int]:
    """Primitive part with positive leading coefficient."""
    a = z_trim(a)
    if not a:
        return []
    g = z_content(a)
    if a[-1] < 0:
        g = -g
    return [c // g for c in a]


def z_deriv(a: Sequence[int]) -> List[int]:
    return z_trim([a[i] * i for i in range(1, len(a))])


def z_eval(a: Sequence[int], x: int) -> int:
    acc = 0
    for c in reversed(list(a)):
        acc = acc * x + c
    return acc


def _z_eval_mod(a: Sequence[int], x: int, m: int) -> int:
    acc = 0
    for c in reversed(list(a)):
        acc = (acc * x + c) % m
    return acc


# ---------------------------------------------------------------------------
# GF(p) kernels  (dense int lists, lowest first, trimmed; [] is zero)

def gf_trim(a: Sequence[int]) -> List[int]:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def gf_from_z(a: Sequence[int], p: int) -> List[int]:
    return gf_trim([c % p for c in a])


def gf_add(a: Sequence[int], b: Sequence[int], p: int) -> List[int]:
    n = max(len(a), len(b))
    return gf_trim([
        ((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p
        for i in range(n)
    ])


def gf_neg(a: Sequence[int], p: int) -> List[int]:
    return [(-c) % p for c in a]


def gf_sub(a: Sequence[int], b: Sequence[int], p: int) -> List[int]:
    return gf_add(a, gf_neg(b, p), p)


def gf_scale(a: Sequence[int], c: int, p: int) -> List[int]:
    c %= p
    return gf_trim([x * c % p for x in a])


def gf_mul(a: Sequence[int], b: Sequence[int], p: int) -> List[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return gf_trim([c % p for c in out])


def gf_divmod(a: Sequence[int], b: Sequence[int],
              p: int) -> Tuple[List[int], List[int]]:
    a = gf_trim(a)
    b = gf_trim(b)
    if not b:
        raise ZeroDivisionError("gf_divmod by zero")
    if len(a) < len(b):
        return [], a
    inv = pow(b[-1], -1, p)
    rem = list(a)
    q = [0] * (len(a) - len(b) + 1)
    for k in range(len(a) - len(b), -1, -1):
        c = rem[k + len(b) - 1] * inv % p
        if c:
            q[k] = c
            for j, y in enumerate(b):
                rem[k + j] = (rem[k + j] - c * y) % p
    return gf_trim(q), gf_trim(rem)


def gf_monic(a: Sequence[int], p: int) -> List[int]:
    a = gf_trim(a)
    if not a:
        return []
    return gf_scale(a, pow(a[-1], -1, p), p)


def gf_gcd(a: Sequence[int], b: Sequence[int], p: int) -> List[int]:
    a, b = gf_trim(a), gf_trim(b)
    while b:
        a, b = b, gf_divmod(a, b, p)[1]
    return gf_monic(a, p)


def gf_powmod(base: Sequence[int], e: int, mod: Sequence[int],
              p: int) -> List[int]:
    result = [1]
    base = gf_divmod(base, mod, p)[1]
    while e:
        if e & 1:
            result = gf_divmod(gf_mul(result, base, p), mod, p)[1]
        base = gf_divmod(gf_mul(base, base, p), mod, p)[1]
        e >>= 1
    return result


def gf_eval(a: Sequence[int], x: int, p: int) -> int:
    acc = 0
    for c in reversed(list(a)):
        acc = (acc * x + c) % p
    return acc


def gf_deriv(a: Sequence[int], p: int) -> List[int]:
    return gf_trim([a[i] * i % p for i in range(1, len(a))])


def gf_roots(a: Sequence[int], p: int,
             rng: Optional[random.Random] = None) -> List[int]:
    """All roots of ``a`` in GF(p) (each listed once), ascending.

    gcd with ``x**p - x`` isolates the linear part, then Cantor-Zassenhaus
    equal-degree splitting peels the roots off.  ``p`` must be odd.
    """
    if p == 2:
        raise ValueError("gf_roots wants an odd prime")
    a = gf_trim(a)
    if not a:
        raise ValueError("gf_roots of the zero polynomial")
    if len(a) == 1:
        return []
    if rng is None:
        rng = random.Random(0x5EED ^ p)
    xp = gf_powmod([0, 1], p, a, p)
    lin = gf_gcd(gf_sub(xp, [0, 1], p), a, p)

    def split(g: List[int]) -> List[int]:
        d = len(g) - 1
        if d <= 0:
            return []
        if d == 1:
            return [(-g[0]) % p]
        while True:
            s = rng.randrange(p)
            h = gf_powmod([s, 1], (p - 1) // 2, g, p)
            h = gf_sub(h, [1], p)
            d1 = gf_gcd(h, g, p)
            if 0 < len(d1) - 1 < d:
                return split(d1) + split(gf_divmod(g, d1, p)[0])

    return sorted(split(lin))


def gf_interp(xs: Sequence[int], ys: Sequence[int], p: int) -> List[int]:
    """Newton interpolation over GF(p); nodes must be distinct mod p."""
    n = len(xs)
    if len(ys) != n:
        raise ValueError("node/value length mismatch")
    dd = [y % p for y in ys]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            denom = (xs[i] - xs[i - j]) % p
            dd[i] = (dd[i] - dd[i - 1]) * pow(denom, -1, p) % p
    poly: List[int] = [dd[n - 1]]
    for i in range(n - 2, -1, -1):
        poly = gf_add(gf_mul(poly, [(-xs[i]) % p, 1], p), [dd[i]], p)
    return gf_trim(poly)


def gf_mat_det(rows: Sequence[Sequence[int]], p: int) -> int:
    """Determinant mod p by Gaussian elimination."""
    n = len(rows)
    m = [[c % p for c in row] for row in rows]
    det = 1
    for k in range(n):
        piv = next((i for i in range(k, n) if m[i][k]), None)
        if piv is None:
            return 0
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            det = -det % p
        det = det * m[k][k] % p
        inv = pow(m[k][k], -1, p)
        for i in range(k + 1, n):
            if m[i][k]:
                f = m[i][k] * inv % p
                for j in range(k, n):
                    m[i][j] = (m[i][j] - f * m[k][j]) % p
    return det


# ---------------------------------------------------------------------------
# certified gcd over Z[x]

def _z_divides(g: Sequence[int], a: Sequence[int]) -> bool:
    return q_divides([Fraction(c) for c in g], [Fraction(c) for c in a])


def zpoly_gcd(a: Sequence[int], b: Sequence[int]) -> List[int]:
    """gcd of ``a`` and ``b`` in Q[x], returned as a primitive positive-lead
    integer polynomial.

    Modular images at ~31-bit primes are CRT-combined; a candidate is only
    returned after exact trial division against both inputs, so wrong primes
    (degree too high) and insufficient moduli both get caught, never silently
    shipped.  Zero inputs: gcd(a, 0) is the primitive part of ``a``.
    """
    a = z_primitive(a)
    b = z_primitive(b)
    if not a:
        return b
    if not b:
        return a
    if len(a) == 1 or len(b) == 1:
        return [1]
    la, lb = a[-1], b[-1]
    gamma = math.gcd(la, lb)
    best_deg: Optional[int] = None
    acc: List[int] = []
    mod = 1
    prev_candidate: Optional[List[int]] = None
    for p in primes_desc():
        if la % p == 0 or lb % p == 0:
            continue
        gp = gf_gcd(gf_from_z(a, p), gf_from_z(b, p), p)
        d = len(gp) - 1
        if d == 0:
            return [1]
        if best_deg is None or d < best_deg:
            best_deg = d
            acc = gf_scale(gp, gamma % p, p)
            acc = acc + [0] * (d + 1 - len(acc))
            mod = p
        elif d == best_deg:
            gs = gf_scale(gp, gamma % p, p)
            gs = gs + [0] * (d + 1 - len(gs))
            acc = [crt_pair(x, mod, y, p) for x, y in zip(acc, gs)]
            mod *= p
        else:
            continue  # unlucky prime: image degree too large
        candidate = z_primitive([symmetric_mod(c, mod) for c in acc])
        if candidate == prev_candidate or mod > 4 * gamma * max(
                max(abs(c) for c in a), max(abs(c) for c in b)):
            if len(candidate) - 1 == best_deg and \
                    _z_divides(candidate, a) and _z_divides(candidate, b):
                return candidate
        prev_candidate = candidate
    raise RuntimeError("unreachable: prime supply is unbounded")


def squarefree_part(f) -> "Poly | List[Fraction]":
    """The squarefree part ``f / gcd(f, f')`` of a univariate polynomial,
    normalized to a primitive integer polynomial with positive lead.

    Accepts a univariate :class:`Poly` (returned as Poly) or a lowest-first
    coefficient sequence (returned as a Fraction list).
    """
    as_poly = isinstance(f, Poly)
    if as_poly:
        dense = f.dense_uni()
        names = [v for v in f.vars if f.degree(v) > 0]
        name = names[0] if names else (f.vars[0] if f.vars else "x")
    else:
        dense = [rat(c) for c in f]
    dense = q_trim(dense)
    if not dense:
        raise ValueError("squarefree part of the zero polynomial")
    za, _ = q_clear_denominators(dense)
    za = z_primitive(za)
    if len(za) == 1:
        out = [Fraction(1)]
    else:
        g = zpoly_gcd(za, z_deriv(za))
        q, r = q_divmod([Fraction(c) for c in za], [Fraction(c) for c in g])
        assert not r
        zi, _ = q_clear_denominators(q)
        out = [Fraction(c) for c in z_primitive(zi)]
    if as_poly:
        return Poly.from_dense(out, name)
    return out


# ---------------------------------------------------------------------------
# rational roots

def rational_roots(f) -> List[Tuple[Fraction, int]]:
    """All rational roots of a univariate polynomial with multiplicity,
    sorted ascending, as ``[(root, multiplicity), ...]``.

    Complete by construction: candidate roots come from lifting every root of
    the squarefree part modulo a good prime to a modulus past ``2*B**2``
    (where B bounds numerator and denominator via ``|lead| + max|coeff|``),
    followed by rational reconstruction; a rational root always survives that
    pipeline, and every candidate is verified by exact evaluation before it is
    reported.
    """
    if isinstance(f, Poly):
        dense = f.dense_uni()
    else:
        dense = [rat(c) for c in f]
    dense = q_trim(dense)
    if not dense:
        raise ValueError("rational_roots of the zero polynomial")
    if len(dense) == 1:
        return []
    za, _ = q_clear_denominators(dense)
    za = z_trim(za)
    k = 0
    while za[k] == 0:
        k += 1
    out: List[Tuple[Fraction, int]] = []
    if k:
        out.append((Fraction(0), k))
        za = za[k:]
    za = z_primitive(za)
    if len(za) >= 2:
        s = za if len(za) <= 3 else z_primitive(
            [int(c) for c in
             q_divmod([Fraction(c) for c in za],
                      [Fraction(c) for c in zpoly_gcd(za, z_deriv(za))])[0]])
        candidates: List[Fraction] = []
        if len(s) == 2:
            candidates = [Fraction(-s[0], s[1])]
        elif len(s) == 3:
            disc = s[1] * s[1] - 4 * s[2] * s[0]
            r = rational_sqrt(disc)
            if r is not None:
                candidates = [
                    (Fraction(-s[1]) + r) / (2 * s[2]),
                    (Fraction(-s[1]) - r) / (2 * s[2]),
                ]
        elif len(s) > 3:
            candidates = _lifted_root_candidates(s)
        dense_q = [Fraction(c) for c in za]
        seen = set()
        for r in candidates:
            if r in seen:
                continue
            seen.add(r)
            if q_eval(dense_q, r):
                continue
            mult = 0
            rem = dense_q
            while True:
                qq, rr = q_divmod(rem, [-r, Fraction(1)])
                if rr:
                    break
                mult += 1
                rem = qq
            out.append((r, mult))
    return sorted(out)


def _lifted_root_candidates(s: List[int]) -> List[Fraction]:
    """Root candidates for a squarefree primitive integer polynomial."""
    bound = abs(s[-1]) + max(abs(c) for c in s)
    p = None
    for q in primes_desc():
        if s[-1] % q:
            sp = gf_from_z(s, q)
            if len(gf_gcd(sp, gf_deriv(sp, q), q)) == 1:
                p = q
                break
    assert p is not None
    roots_p = gf_roots(gf_from_z(s, p), p)
    if not roots_p:
        return []
    deriv = z_deriv(s)
    target = 2 * bound * bound
    out: List[Fraction] = []
    for r in roots_p:
        x, m = r, p
        while m <= target:
            m2 = m * m
            d = _z_eval_mod(deriv, x, m2)
            x = (x - _z_eval_mod(s, x, m2) * pow(d, -1, m2)) % m2
            m = m2
        cand = rational_reconstruct(x, m, bound, bound)
        if cand is not None:
            out.append(cand)
    return out


# ---------------------------------------------------------------------------
# determinants

def det_int(rows: Sequence[Sequence[int]]) -> int:
    """Fraction-free Bareiss determinant of an integer matrix."""
    n = len(rows)
    if n == 0:
        return 1
    m = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            piv = next((i for i in range(k + 1, n) if m[i][k]), None)
            if piv is None:
                return 0
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def det_rational(rows: Sequence[Sequence[RatLike]]) -> Fraction:
    scale = 1
    int_rows: List[List[int]] = []
    for row in rows:
        row = [rat(c) for c in row]
        l = math.lcm(*(c.denominator for c in row)) if row else 1
        scale *= l
        int_rows.append([int(c * l) for c in row])
    return Fraction(det_int(int_rows), scale)


def det_poly(rows: Sequence[Sequence[Poly]]) -> Poly:
    """Bareiss over a polynomial ring; exact divisions are guaranteed by the
    Bareiss minor identity, and verified (they raise if violated)."""
    n = len(rows)
    if n == 0:
        return Poly.const(1)
    m = [list(r) for r in rows]
    sign = 1
    prev = Poly.const(1, m[0][0].vars)
    for k in range(n - 1):
        if m[k][k].is_zero:
            piv = next((i for i in range(k + 1, n) if not m[i][k].is_zero),
                       None)
            if piv is None:
                return Poly(m[0][0].vars, {})
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = poly_exact_div(
                    m[i][j] * m[k][k] - m[i][k] * m[k][j], prev)
            m[i][k] = Poly(m[0][0].vars, {})
        prev = m[k][k]
    out = m[n - 1][n - 1]
    return out if sign > 0 else -out


# ---------------------------------------------------------------------------
# resultants

def _sylvester_rows(f_high: Sequence, g_high: Sequence, zero):
    """Sylvester matrix rows from highest-first coefficient sequences of
    *formal* degrees ``len-1`` (leading entries may be zero on purpose)."""
    m = len(f_high) - 1
    n = len(g_high) - 1
    rows = []
    for i in range(n):
        rows.append([zero] * i + list(f_high) + [zero] * (n - 1 - i))
    for i in range(m):
        rows.append([zero] * i + list(g_high) + [zero] * (m - 1 - i))
    return rows


def resultant_int(fc: Sequence[int], gc: Sequence[int]) -> int:
    """Resultant of integer polynomials of formal degrees ``len-1``
    (lowest-first input).  Formal degrees matter: callers who interpolate a
    resultant must pad specializations to the generic degree.

    Sign convention: res(f, g) = lc(g)^deg(f) * prod f(roots of g), i.e.
    res(x - u, x - v) = v - u.  This is the transposed-Sylvester determinant,
    (-1)^(deg f * deg g) times the f-rows-first layout."""
    m = len(fc) - 1
    n = len(gc) - 1
    if m < 0 or n < 0:
        raise ValueError("resultant of the zero polynomial")
    if m == 0 and n == 0:
        return 1
    if m == 0:
        return fc[0] ** n
    if n == 0:
        return gc[0] ** m
    return det_int(_sylvester_rows(list(gc)[::-1], list(fc)[::-1], 0))


def resultant_q(fc: Sequence[RatLike], gc: Sequence[RatLike]) -> Fraction:
    fc = [rat(c) for c in fc]
    gc = [rat(c) for c in gc]
    m = len(fc) - 1
    n = len(gc) - 1
    zf, sf = q_clear_denominators(fc)
    zg, sg = q_clear_denominators(gc)
    return Fraction(resultant_int(zf, zg), sf ** n * sg ** m)


def poly_resultant(f: Poly, g: Poly, var: str) -> Poly:
    """Resultant of ``f`` and ``g`` with respect to ``var`` (their actual
    degrees), as a Poly in the remaining variables.

    Sign convention matches :func:`resultant_int`: for f = x - u, g = x - v
    the result is v - u, and res(f, g) = (-1)^(deg f * deg g) res(g, f).

    Univariate input goes straight to an integer Bareiss determinant; one
    surviving variable triggers evaluation/interpolation (321 nodes beats a
    symbolic 14x14 Bareiss by orders of magnitude on the fiber eliminants);
    anything richer falls back to Bareiss over the polynomial ring.
    """
    f, g = f._unified(g)
    m = f.degree(var)
    n = g.degree(var)
    rest = tuple(w for w in f.vars if w != var)
    if m < 0 or n < 0:
        return Poly(rest, {})
    if m == 0 and n == 0:
        return Poly.const(1, rest)
    fd = f.dense_in(var)
    gd = g.dense_in(var)
    if m == 0:
        return fd[0] ** n
    if n == 0:
        return gd[0] ** m
    live = [w for w in rest
            if max(f.degree(w), g.degree(w)) > 0]
    if not live:
        return Poly.const(
            resultant_q([c.scalar() for c in fd], [c.scalar() for c in gd]),
            rest)
    if len(live) == 1:
        w = live[0]
        dw = f.degree(w) * n + g.degree(w) * m
        nodes: List[Fraction] = []
        k = 0
        while len(nodes) < dw + 1:
            nodes.append(Fraction(k))
            if k > 0 and len(nodes) < dw + 1:
                nodes.append(Fraction(-k))
            k += 1
        def _at(c: Poly, x: Fraction) -> Fraction:
            r = c(**{w: x}) if w in c.vars else c
            return r if isinstance(r, Fraction) else r.scalar()

        values = []
        for x in nodes:
            fx = [_at(c, x) for c in fd]
            gx = [_at(c, x) for c in gd]
            values.append(resultant_q(fx, gx))
        dense = interpolate_rational(list(zip(nodes, values)))
        return Poly((w,), {(i,): c for i, c in enumerate(dense)}).with_vars(rest)
    rows = _sylvester_rows(
        [c for c in reversed(gd)], [c for c in reversed(fd)],
        Poly(rest, {}))
    return det_poly([[c.with_vars(rest) for c in row] for row in rows])


# ---------------------------------------------------------------------------
# interpolation and linear algebra over Q

def interpolate_rational(
        points: Sequence[Tuple[RatLike, RatLike]]) -> List[Fraction]:
    """Newton interpolation: lowest-first coefficients of the unique
    polynomial of degree < len(points) through the given (x, y) pairs."""
    xs = [rat(x) for x, _ in points]
    ys = [rat(y) for _, y in points]
    if len(set(xs)) != len(xs):
        raise ValueError("interpolation nodes must be distinct")
    n = len(xs)
    if n == 0:
        return []
    dd = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - j])
    poly: List[Fraction] = [dd[n - 1]]
    for i in range(n - 2, -1, -1):
        poly = q_add(q_mul(poly, [-xs[i], Fraction(1)]), [dd[i]])
    return q_trim(poly)


def interpolate_poly2(us: Sequence[RatLike], vs: Sequence[RatLike],
                      table: Sequence[Sequence[RatLike]],
                      uname: str, vname: str) -> Poly:
    """Bivariate interpolation: ``table[i][j]`` is the value at
    ``(us[i], vs[j])``; the result is the unique Poly with degrees below
    ``len(us)`` and ``len(vs)`` matching the table."""
    per_u: List[List[Fraction]] = []
    for i in range(len(us)):
        per_u.append(interpolate_rational(list(zip(vs, table[i]))))
    width = max((len(r) for r in per_u), default=0)
    coeffs: Dict[Exp, Fraction] = {}
    for k in range(width):
        col = [(us[i], per_u[i][k] if k < len(per_u[i]) else Fraction(0))
               for i in range(len(us))]
        for l, c in enumerate(interpolate_rational(col)):
            if c:
                coeffs[(l, k)] = c
    return Poly((uname, vname), coeffs)


def solve_linear(rows: Sequence[Sequence[RatLike]],
                 rhs: Sequence[RatLike]) -> Tuple[List[Fraction], bool]:
    """Solve ``A x = b`` over Q by exact Gaussian elimination.

    Returns ``(solution, unique)`` where free variables (if any) are set to
    zero and ``unique`` reports whether there were none.  Raises ValueError
    on an inconsistent system.  Overdetermined systems are fine -- that is the
    main use here (calibration solves with verification rows built in).
    """
    m = len(rows)
    a = [[rat(c) for c in row] + [rat(rhs[i])] for i, row in enumerate(rows)]
    ncols = len(a[0]) - 1 if m else 0
    pivots: List[Tuple[int, int]] = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, m) if a[i][col]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][col]
        a[r] = [c * inv for c in a[r]]
        for i in range(m):
            if i != r and a[i][col]:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append((r, col))
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if a[i][ncols]:
            raise ValueError("inconsistent linear system")
    x = [Fraction(0)] * ncols
    for row_i, col in pivots:
        x[col] = a[row_i][ncols]
    return x, len(pivots) == ncols
