"""Euler characteristics of line bundles on threefold profiles.

The characteristic of a line bundle D on a threefold is

    chi(D) = 1/12 * D.(D - K).(2D - K) + 1/12 * c2.D + chi_O,

and chi_O itself satisfies chi_O = -1/24 * K.c2.  Everything here is built
symbolically from these two facts and evaluated exactly.  Vanishing
theorems are never proved: extracting h^0 from chi requires a declared
flag stating that the divisor has the shape canonical-plus-ample
(Kodaira) or canonical-plus-nef-and-big (Kawamata-Viehweg).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import (
    CalcError,
    ClassExpr,
    DivisorExpr,
    NumberExpr,
    expand_product,
    identity_check,
)
from .profile import FlagKind, MissingFlagError, ThreefoldProfile

_TWELFTH = Fraction(1, 12)


class NonIntegerChiError(CalcError):
    """chi came out non-integral; the profile is not an actual threefold."""


@dataclass(frozen=True)
class ChiExpression:
    """A divisor together with the symbolic form of its characteristic."""

    divisor: DivisorExpr
    expr: NumberExpr


def chi_class(D: ClassExpr, K: ClassExpr) -> NumberExpr:
    """Symbolic characteristic of a degree-one class, canonical class K."""
    if D.degree != 1 or K.degree != 1:
        raise ValueError("chi_class expects degree-one classes")
    cubic = expand_product([D, D - K, 2 * D - K])
    pairing = expand_product([ClassExpr.c2_atom(), D])
    return _TWELFTH * cubic + _TWELFTH * pairing + NumberExpr.chi_o_atom()


def chi_expression(D: DivisorExpr, K: DivisorExpr) -> ChiExpression:
    """The characteristic of O(D) as a symbolic number over the basis of D, K."""
    expr = chi_class(ClassExpr.from_divisor(D), ClassExpr.from_divisor(K))
    return ChiExpression(divisor=D, expr=expr)


def chi_line_bundle(p: ThreefoldProfile, D: DivisorExpr) -> Fraction:
    """Exact chi(X, O(D)) on the profile."""
    return p.number_eval(chi_expression(D, p.canonical).expr)


def chi_O_consistency(p: ThreefoldProfile) -> tuple[Fraction, Fraction]:
    """The stored chi_O next to -1/24 * K.c2; callers compare the two."""
    return (p.chi_O, Fraction(-1, 24) * p.c2_pair(p.canonical))


def h0_lower_bound_from_chi(p: ThreefoldProfile, D: DivisorExpr) -> int:
    """h^0(D) as an exact integer under a declared vanishing flag.

    Requires a flag certifying that D - K is ample (Kodaira vanishing) or
    nef and big (Kawamata-Viehweg vanishing); the flag subject is matched
    syntactically against D - K.  Under such a flag the higher cohomology
    vanishes and chi equals h^0.
    """
    body = D - p.canonical
    if not p.satisfies(FlagKind.NEF_AND_BIG, body):
        raise MissingFlagError(FlagKind.NEF_AND_BIG, body)
    chi = chi_line_bundle(p, D)
    if chi.denominator != 1:
        raise NonIntegerChiError(
            f"chi({D}) = {chi} is not an integer; the profile is inconsistent"
        )
    return int(chi)


def chi_identity_suite() -> list[tuple[str, bool]]:
    """Verify the fixed list of characteristic identities symbolically.

    Each identity is checked as a canonical-form equality with the pairing
    c2.K folded into the chi_O atom, so a True result is a proof valid on
    every threefold profile, not a numerical spot check.
    """
    K = ClassExpr.symbol("K")
    A = ClassExpr.symbol("A")
    D = ClassExpr.symbol("D")

    def chi(x: ClassExpr) -> NumberExpr:
        return chi_class(x, K)

    # the quadratic correction from the twisted cotangent bundle on a
    # threefold: 2/3 * K.A + 1/3 * A^2
    q = Fraction(2, 3) * (K * A) + Fraction(1, 3) * (A * A)

    results: list[tuple[str, bool]] = []

    lhs = chi(K + A) - chi(2 * K + A)
    rhs = Fraction(-1, 2) * expand_product([K, K + A, K + A]) + 2 * NumberExpr.chi_o_atom()
    results.append(("chi(K+A)-chi(2K+A)", identity_check(lhs, rhs)))

    lhs = chi(K + 2 * A) - 2 * chi(K + A)
    rhs = Fraction(1, 2) * expand_product([K + 2 * A, A, A]) + NumberExpr.chi_o_atom()
    results.append(("chi(K+2A)-2chi(K+A)", identity_check(lhs, rhs)))

    lhs = chi(K + 2 * A) - chi(K + A)
    rhs = _TWELFTH * expand_product([K + 2 * A, A, K + 7 * A]) + _TWELFTH * expand_product(
        [ClassExpr.c2_atom(), A]
    )
    results.append(("chi(K+2A)-chi(K+A)", identity_check(lhs, rhs)))

    lhs = _TWELFTH * expand_product([K + A, A, K + 2 * A]) - Fraction(
        1, 24
    ) * expand_product([K + 2 * A, q])
    rhs = Fraction(1, 18) * expand_product([K + 2 * A, A, K + Fraction(5, 4) * A])
    results.append(("c2-elimination-adjoint", identity_check(lhs, rhs)))

    lhs = _TWELFTH * (
        expand_product([K + 2 * A, A, K + 7 * A]) - expand_product([A, q])
    )
    rhs = _TWELFTH * (
        expand_product([A, K + 2 * A, K + Fraction(19, 3) * A])
        + expand_product([A, A, A])
    )
    results.append(("c2-elimination-gap", identity_check(lhs, rhs)))

    lhs = chi(K - D)
    rhs = -chi(D)
    results.append(("serre-duality-sign", identity_check(lhs, rhs)))

    return results
