#!/usr/bin/env python3
"""Derive (and re-verify) the sextic invariant formulas embedded in
``g2split.igusa``.

The classical degree-2/4/6 invariants of a binary sextic are defined by
symmetrized products of squared root differences:

* ``A = lead^2  * sum over the 15 pairings {i,j}{k,l}{m,n} of
  (ri-rj)^2 (rk-rl)^2 (rm-rn)^2``
* ``B = lead^4  * sum over the 10 splits into two triples of the product of
  both triangles' squared differences``
* ``C = lead^6  * sum over the 60 (split, bijection) pairs of the two
  triangles times the matched-pair squared differences`` -- see ``eval_C``.

Those definitions only make sense with the roots in hand, so this script
evaluates them on a batch of sextics with planted rational roots, expresses
each as a polynomial in the coefficients a0..a6 by exact linear solving in the
isobaric monomial basis (degree d, weight 3d), and then calibrates the
package's J2/J4/J6/J10 normalization against the two pinned normal-form
families:

    X^5 + X^3 + t X :  J2 = 40t+6,   J4 = 4t(9-20t),
                       J6 = 8t(22t+9-40t^2),   J10 = 16 t^3 (4t-1)^2
    X^6 + X^3 + t   :  J2 = -6(40t-1),  J4 = 324t(5t+1),
                       J6 = -162t(740t^2+62t-1),  J10 = -729 t^2 (4t-1)^3

J10 is not stored as a coefficient formula: at runtime it is a constant times
the formal (5,5) resultant of the two partial derivatives of the homogenized
sextic, which specializes correctly even when a6 = 0 (quintic models).  The
calibration solves are overdetermined -- every t-power of both families is a
row -- so a successful solve *is* the verification that the conventions here
and the pinned identities agree.

Run with ``--emit`` to print the Python literals for embedding; the default
mode re-derives everything and checks it against the embedded copies.
"""
from __future__ import annotations

import argparse
import itertools
import random
import sys
from fractions import Fraction as F
from pathlib import Path
from typing import Dict, List, Sequence, Tuple

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from g2split import exact as ex
from g2split.exact import Poly

AVARS = tuple(f"a{i}" for i in range(7))


# ---------------------------------------------------------------------------
# root-difference definitions

def _pairings(items: Sequence[int]) -> List[List[Tuple[int, int]]]:
    """All ways to split ``items`` into unordered pairs (15 for six)."""
    if not items:
        return [[]]
    first, rest = items[0], items[1:]
    out = []
    for i, second in enumerate(rest):
        remaining = rest[:i] + rest[i + 1:]
        for tail in _pairings(remaining):
            out.append([(first, second)] + tail)
    return out


def _triple_splits(items: Sequence[int]) -> List[Tuple[Tuple[int, ...],
                                                       Tuple[int, ...]]]:
    """The 10 unordered splits of six items into two triples."""
    out = []
    for combo in itertools.combinations(items, 3):
        if items[0] in combo:
            rest = tuple(x for x in items if x not in combo)
            out.append((combo, rest))
    return out


def _d2(r: Sequence[F], i: int, j: int) -> F:
    d = r[i] - r[j]
    return d * d


def eval_A(roots: Sequence[F], lead: F) -> F:
    total = F(0)
    for pairing in _pairings(tuple(range(6))):
        term = F(1)
        for i, j in pairing:
            term *= _d2(roots, i, j)
        total += term
    return lead ** 2 * total


def _triangle(roots: Sequence[F], t: Sequence[int]) -> F:
    i, j, k = t
    return _d2(roots, i, j) * _d2(roots, j, k) * _d2(roots, k, i)


def eval_B(roots: Sequence[F], lead: F) -> F:
    total = F(0)
    for t1, t2 in _triple_splits(tuple(range(6))):
        total += _triangle(roots, t1) * _triangle(roots, t2)
    return lead ** 4 * total


def eval_C(roots: Sequence[F], lead: F) -> F:
    total = F(0)
    for t1, t2 in _triple_splits(tuple(range(6))):
        base = _triangle(roots, t1) * _triangle(roots, t2)
        for perm in itertools.permutations(t2):
            cross = F(1)
            for i, j in zip(t1, perm):
                cross *= _d2(roots, i, j)
            total += base * cross
    return lead ** 6 * total


def eval_D(roots: Sequence[F], lead: F) -> F:
    total = F(1)
    for i in range(6):
        for j in range(i + 1, 6):
            total *= _d2(roots, i, j)
    return lead ** 10 * total


# ---------------------------------------------------------------------------
# coefficient formulas by exact interpolation

def isobaric_basis(degree: int) -> List[Tuple[int, ...]]:
    """Monomials a0^e0 ... a6^e6 with sum(e) = degree, sum(i*e_i) = 3*degree."""
    target = 3 * degree
    out = []
    for e in itertools.product(*(range(degree + 1) for _ in range(7))):
        if sum(e) == degree and sum(i * k for i, k in enumerate(e)) == target:
            out.append(e)
    return out


def sample_sextics(n: int, seed: int) -> List[Tuple[List[F], F, List[F]]]:
    """``(roots, lead, coeffs a0..a6)`` for n pseudo-random split sextics."""
    rng = random.Random(seed)
    pool = [F(k, d) for k in range(-6, 7) for d in (1, 2, 3)]
    out = []
    for _ in range(n):
        roots = [rng.choice(pool) for _ in range(6)]
        lead = F(rng.choice([1, 2, 3, 5, -1, -2]))
        dense = ex.q_from_roots(roots, lead)  # a0..a6 lowest first
        out.append((roots, lead, list(dense)))
    return out


def fit_formula(degree: int, evaluator, samples) -> Poly:
    basis = isobaric_basis(degree)
    rows, rhs = [], []
    for roots, lead, a in samples[:len(basis) + 12]:
        rows.append([F(
            # monomial value
            _mono(a, e)) for e in basis])
        rhs.append(evaluator(roots, lead))
    sol, unique = ex.solve_linear(rows, rhs)
    assert unique, f"degree-{degree} basis underdetermined by samples"
    poly = Poly(AVARS, {e: c for e, c in zip(basis, sol) if c})
    for roots, lead, a in samples[len(basis) + 12:]:
        assert poly(**dict(zip(AVARS, a))) == evaluator(roots, lead), \
            f"degree-{degree} formula failed spot check"
    return poly


def _mono(a: Sequence[F], e: Sequence[int]) -> F:
    v = F(1)
    for x, k in zip(a, e):
        if k:
            v *= x ** k
    return v


# ---------------------------------------------------------------------------
# the formal-partials resultant used for J10 at runtime

def partials_resultant(a: Sequence[F]) -> F:
    """Formal (5,5) resultant of d/dX and d/dZ of sum a_i X^i Z^(6-i)."""
    fx = [a[1], 2 * a[2], 3 * a[3], 4 * a[4], 5 * a[5], 6 * a[6]]
    fz = [6 * a[0], 5 * a[1], 4 * a[2], 3 * a[3], 2 * a[4], a[5]]
    return ex.resultant_q(fx, fz)


# ---------------------------------------------------------------------------
# calibration against the pinned families

FAMILY_QUINTIC = {
    "a_of_t": lambda t: [F(0), t, F(0), F(1), F(0), F(1), F(0)],
    "J2": [F(6), F(40)],
    "J4": [F(0), F(36), F(-80)],
    "J6": [F(0), F(72), F(176), F(-320)],
    "J10": ex.q_mul([F(0), F(0), F(0), F(16)],
                    ex.q_mul([F(-1), F(4)], [F(-1), F(4)])),
}

FAMILY_SEXTIC = {
    "a_of_t": lambda t: [t, F(0), F(0), F(1), F(0), F(0), F(1)],
    "J2": [F(6), F(-240)],
    "J4": [F(0), F(324), F(1620)],
    "J6": [F(0), F(162), F(-10044), F(-119880)],
    "J10": ex.q_mul([F(0), F(0), F(-729)],
                    ex.q_mul([F(-1), F(4)],
                             ex.q_mul([F(-1), F(4)], [F(-1), F(4)]))),
}


def calibrate(A: Poly, B: Poly, C: Poly) -> Dict[str, object]:
    families = []
    for fam in (FAMILY_QUINTIC, FAMILY_SEXTIC):
        ts = [F(k) for k in range(0, 24)]
        rowsA, rowsB, rowsC, rowsD = [], [], [], []
        for t in ts:
            a = fam["a_of_t"](t)
            env = dict(zip(AVARS, a))
            rowsA.append(A(**env))
            rowsB.append(B(**env))
            rowsC.append(C(**env))
            rowsD.append(partials_resultant(a))
        At = ex.interpolate_rational(list(zip(ts, rowsA)))
        Bt = ex.interpolate_rational(list(zip(ts, rowsB)))
        Ct = ex.interpolate_rational(list(zip(ts, rowsC)))
        Dt = ex.interpolate_rational(list(zip(ts, rowsD)))
        A2t = ex.q_mul(At, At)
        A3t = ex.q_mul(A2t, At)
        ABt = ex.q_mul(At, Bt)
        families.append({
            "At": At, "A2t": A2t, "A3t": A3t, "ABt": ABt,
            "Bt": Bt, "Ct": Ct, "Dt": Dt,
            "J2": fam["J2"], "J4": fam["J4"], "J6": fam["J6"],
            "J10": fam["J10"],
        })

    def stack(cols: List[str], target: str):
        rows, rhs = [], []
        for famd in families:
            width = max([len(famd[c]) for c in cols] + [len(famd[target])])
            for k in range(width):
                rows.append([famd[c][k] if k < len(famd[c]) else F(0)
                             for c in cols])
                rhs.append(famd[target][k] if k < len(famd[target]) else F(0))
        sol, unique = ex.solve_linear(rows, rhs)
        assert unique, f"calibration for {target} not unique"
        return sol

    (alpha,) = stack(["At"], "J2")
    beta = stack(["A2t", "Bt"], "J4")
    gamma = stack(["A3t", "ABt", "Ct"], "J6")
    (delta,) = stack(["Dt"], "J10")
    return {"alpha": alpha, "beta": beta, "gamma": gamma, "delta": delta}


def assemble(A: Poly, B: Poly, C: Poly, cal) -> Dict[str, object]:
    J2 = cal["alpha"] * A
    J4 = cal["beta"][0] * A * A + cal["beta"][1] * B
    J6 = (cal["gamma"][0] * A * A * A + cal["gamma"][1] * A * B +
          cal["gamma"][2] * C)
    return {"J2": J2, "J4": J4, "J6": J6, "J10_scale": cal["delta"]}


def poly_to_terms(p: Poly) -> Tuple[Tuple[Tuple[int, ...], int, int], ...]:
    items = sorted(p.coeffs.items())
    return tuple((e, c.numerator, c.denominator) for e, c in items)


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--emit", action="store_true",
                    help="print literals for embedding instead of verifying")
    args = ap.parse_args()

    samples = sample_sextics(140, seed=20240117)
    A = fit_formula(2, eval_A, samples)
    B = fit_formula(4, eval_B, samples)
    C = fit_formula(6, eval_C, samples)
    print(f"A: {len(A.coeffs)} terms   B: {len(B.coeffs)} terms   "
          f"C: {len(C.coeffs)} terms", file=sys.stderr)

    # D from the formal partials resultant must equal the root-difference
    # discriminant up to one constant -- pin and verify it on the samples.
    r0, l0, a0 = samples[0]
    ratio = partials_resultant(a0) / eval_D(r0, l0)
    for roots, lead, a in samples[1:20]:
        d = eval_D(roots, lead)
        if d:
            assert partials_resultant(a) / d == ratio, "partials/disc ratio drifted"
    print(f"partials resultant = {ratio} * disc", file=sys.stderr)

    cal = calibrate(A, B, C)
    out = assemble(A, B, C, cal)
    print(f"alpha={cal['alpha']}  beta={cal['beta']}  "
          f"gamma={cal['gamma']}  delta={cal['delta']}", file=sys.stderr)

    if args.emit:
        for name in ("J2", "J4", "J6"):
            print(f"_{name}_TERMS = {poly_to_terms(out[name])!r}")
        d = out["J10_scale"]
        print(f"_J10_SCALE = Fraction({d.numerator}, {d.denominator})")
        return 0

    from g2split import igusa
    for name in ("J2", "J4", "J6"):
        embedded = getattr(igusa, f"_{name}_TERMS")
        if tuple(embedded) != poly_to_terms(out[name]):
            print(f"MISMATCH in {name}", file=sys.stderr)
            return 1
    if igusa._J10_SCALE != out["J10_scale"]:
        print("MISMATCH in J10 scale", file=sys.stderr)
        return 1
    print("embedded formulas verified", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
