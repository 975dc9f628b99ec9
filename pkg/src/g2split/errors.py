"""Shared domain-error type.

Every mathematically-undefined situation in this package raises
:class:`DomainError` with a stable machine-readable ``code``; the CLI turns
the code into its error JSON verbatim, so codes are part of the public
contract and must not be renamed casually.  Codes in use:

========================    ====================================================
``zero-polynomial``         the zero polynomial was supplied as a curve
``degree-out-of-range``     curve polynomial degree is not 5 or 6
``j2-zero``                 absolute invariants undefined (weight-2 invariant 0)
``degenerate-reconstruction``  parameter reconstruction hit a zero denominator
``not-in-d8-locus``         quintic-family reconstruction round trip failed
``not-in-d12-locus``        sextic-family reconstruction round trip failed
``degenerate-sextic``       the two-parameter sextic family degenerated
``u2-undefined``            second covering map undefined on this fiber point
``beta-undefined``          parameter involution undefined (denominator zero)
``singular-cubic``          j-invariant of a singular cubic requested
``fiber-overflow``          fiber solution count exceeded its proven bound
``invalid-cover``           covering map/model pair fails the square certificate
``insufficient-certificates``  rational-point search lacks a rank-0 certificate
========================    ====================================================
"""

from __future__ import annotations

from typing import Any, Optional


class DomainError(ValueError):
    """A request that is outside the mathematical domain of an operation.

    ``payload`` optionally carries structured partial output that exists
    despite the error (for example the weighted moduli point of a curve whose
    absolute invariants are undefined).
    """

    def __init__(self, code: str, message: str,
                 payload: Optional[Any] = None) -> None:
        super().__init__(message)
        self.code = code
        self.payload = payload

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"DomainError({self.code!r}, {self.args[0]!r})"
