"""Effective section bounds for adjoint bundles and certification routes.

Four exact lower bounds are provided for h^0 of K+A and K+2A on a
threefold profile, together with two certifiers that walk the hypothesis
decision trees and emit machine-checkable certificates.  Flags are trusted
but their computable consequences are enforced: a route that needs
chi_O >= 1 or a nonnegative pairing fails hard when the numbers contradict
the declarations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import NamedTuple

from .core import ClassExpr, DivisorExpr, NumberExpr, expand_divisors, expand_product
from .profile import (
    FlagContradictionError,
    FlagKind,
    MissingFlagError,
    PositivityFlag,
    ThreefoldProfile,
)
from .twist import cotangent_twisted_c2

# citation constants for externally established results consumed by routes
KA00_THM31 = "KA00_THM31"  # non-vanishing when the adjoint is nef but not big
CH02_THM42 = "CH02_THM42"  # non-vanishing on uniruled X with positive irregularity
BASEPOINTFREE = "BASEPOINTFREE"  # semiample positivity of a nef adjoint bundle
FANO_TRIVIAL = "FANO_TRIVIAL"  # a numerically trivial adjoint on a Fano is trivial

CITATIONS = (KA00_THM31, CH02_THM42, BASEPOINTFREE, FANO_TRIVIAL)


class Conclusion(str, Enum):
    NON_VANISHING = "NonVanishing"
    NON_VANISHING_EXTERNAL = "NonVanishingExternal"
    INCONCLUSIVE = "Inconclusive"


# route identifiers, named for the hypothesis pattern they consume
ROUTE_NOT_UNIRULED = "not-uniruled-c2-bound"
ROUTE_NEF_NOT_BIG = "nef-not-big-external"
ROUTE_POSITIVE_IRREGULARITY = "positive-irregularity-external"
ROUTE_ANTICANONICAL = "anticanonical-generically-nef"
ROUTE_FANO_TRIVIAL = "fano-numerically-trivial"
ROUTE_BS_CHI = "uniruled-regular-chi"
ROUTE_NONE = "none"


@dataclass(frozen=True)
class Certificate:
    """Outcome of a non-vanishing certification.

    ``integer_bound`` is always the exact ceiling of ``rational_bound``
    (no flooring at zero), and a NonVanishing conclusion carries a strictly
    positive bound unless the trivializing Fano route fired.
    """

    conclusion: Conclusion
    route: str
    rational_bound: Fraction | None = None
    integer_bound: int | None = None
    hypotheses_used: tuple[PositivityFlag, ...] = ()
    citations: tuple[str, ...] = ()

    def __post_init__(self):
        if self.rational_bound is not None:
            if self.integer_bound != math.ceil(self.rational_bound):
                raise ValueError("integer_bound must be ceil(rational_bound)")
        elif self.integer_bound is not None:
            raise ValueError("integer_bound requires rational_bound")
        if self.conclusion is Conclusion.NON_VANISHING and self.route != ROUTE_FANO_TRIVIAL:
            if self.rational_bound is None or self.rational_bound <= 0:
                raise ValueError("NonVanishing requires a positive rational bound")


def _certificate(
    conclusion: Conclusion,
    route: str,
    bound: Fraction | None = None,
    hypotheses: tuple[PositivityFlag, ...] = (),
    citations: tuple[str, ...] = (),
) -> Certificate:
    integer = math.ceil(bound) if bound is not None else None
    return Certificate(conclusion, route, bound, integer, hypotheses, citations)


class PairingTest(NamedTuple):
    value: Fraction
    holds: bool


class MiyaokaTest(NamedTuple):
    lhs: Fraction
    rhs: Fraction
    holds: bool
    hypotheses_met: bool


def generic_nef_pairing_test(
    p: ThreefoldProfile, L: DivisorExpr, H1: DivisorExpr, H2: DivisorExpr
) -> PairingTest:
    """Evaluate L.H1.H2 against two declared ample classes.

    A negative value certifies that L is not generically nef; a
    nonnegative value is necessary evidence only.
    """
    for h in (H1, H2):
        if p.find_flag(FlagKind.AMPLE, h) is None:
            raise MissingFlagError(FlagKind.AMPLE, h)
    value = p.triple_eval(L, H1, H2)
    return PairingTest(value, value >= 0)


def miyaoka_c2_inequality(
    p: ThreefoldProfile, A: DivisorExpr, H: DivisorExpr
) -> MiyaokaTest:
    """The threefold c2 lower bound from the twisted cotangent bundle.

    Compares H.c2 against -H.(2/3 * K.A + 1/3 * A^2).  The inequality is a
    theorem when the profile is not uniruled and both A and K+A are nef;
    ``hypotheses_met`` reports whether the declared flags cover that.
    """
    lhs = p.c2_pair(H)
    twisted = cotangent_twisted_c2(
        3, ClassExpr.from_divisor(p.canonical), ClassExpr.from_divisor(A)
    )
    correction = ClassExpr(2, twisted.terms)  # the part of twisted c2 beside the atom
    rhs = -p.number_eval(expand_product([ClassExpr.from_divisor(H), correction]))
    met = (
        (p.has_flag(FlagKind.NOT_UNIRULED) or p.satisfies(FlagKind.PSEUDO_EFFECTIVE, p.canonical))
        and p.satisfies(FlagKind.NEF, A)
        and p.satisfies(FlagKind.NEF, p.canonical + A)
    )
    return MiyaokaTest(lhs, rhs, lhs >= rhs, met)


def bound_fukuma_ka(p: ThreefoldProfile, A: DivisorExpr) -> Fraction:
    """Lower bound for h^0(K+A) on a non-uniruled threefold.

    1/18 * (K+2A).A.(K + 5/4 A); no hypothesis check here, see the
    certifiers.
    """
    K = p.canonical
    expr = Fraction(1, 18) * expand_divisors(K + 2 * A, A, K + Fraction(5, 4) * A)
    return p.number_eval(expr)


def bound_fukuma_gap(p: ThreefoldProfile, A: DivisorExpr) -> Fraction:
    """Lower bound for h^0(K+2A) - h^0(K+A) on a non-uniruled threefold.

    1/12 * [A.(K+2A).(K + 19/3 A) + A^3].
    """
    K = p.canonical
    expr = Fraction(1, 12) * (
        expand_divisors(A, K + 2 * A, K + Fraction(19, 3) * A)
        + expand_divisors(A, A, A)
    )
    return p.number_eval(expr)


def bound_nefbig(p: ThreefoldProfile, A: DivisorExpr) -> Fraction:
    """Lower bound for h^0(K+A) when K+A is nef and big.

    -1/2 * K.(K+A)^2 + 2 * chi_O; sharp on projective space with A = 5H.
    """
    K = p.canonical
    expr = Fraction(-1, 2) * expand_divisors(K, K + A, K + A) + 2 * NumberExpr.chi_o_atom()
    return p.number_eval(expr)


def bound_bs(p: ThreefoldProfile, A: DivisorExpr) -> Fraction:
    """Lower bound for h^0(K+2A): 1/2 * (K+2A).A^2 + chi_O.

    Sharp on projective space with A = 3H.
    """
    K = p.canonical
    expr = Fraction(1, 2) * expand_divisors(K + 2 * A, A, A) + NumberExpr.chi_o_atom()
    return p.number_eval(expr)


def _require_ample(p: ThreefoldProfile, A: DivisorExpr) -> PositivityFlag:
    ample = p.find_flag(FlagKind.AMPLE, A)
    if ample is None:
        raise MissingFlagError(FlagKind.AMPLE, A)
    return ample


def _canonical_side_flag(p: ThreefoldProfile) -> PositivityFlag | None:
    # not uniruled, declared directly or through pseudo-effectivity of K
    return p.find_flag(FlagKind.NOT_UNIRULED) or p.find_flag(
        FlagKind.PSEUDO_EFFECTIVE, p.canonical
    )


def certify_h0_adjoint(p: ThreefoldProfile, A: DivisorExpr) -> Certificate:
    """Certify h^0(K+A) > 0 from declared flags; first matching route wins.

    Routes, in order: (a) K pseudo-effective -- the c2-elimination bound;
    (b) K+A nef but not big -- external citation; (c) uniruled with
    positive irregularity -- external citation; (d) -K generically nef,
    K+A nef and big, zero irregularity -- the Kawamata-Viehweg chi bound,
    with hard errors when chi_O < 1 or -K.(K+A)^2 < 0 contradict the
    declarations; otherwise inconclusive.
    """
    ample = _require_ample(p, A)
    K = p.canonical

    witness = _canonical_side_flag(p)
    if witness is not None:
        bound = bound_fukuma_ka(p, A)
        conclusion = Conclusion.NON_VANISHING if bound > 0 else Conclusion.INCONCLUSIVE
        return _certificate(conclusion, ROUTE_NOT_UNIRULED, bound, (ample, witness))

    ka = K + A
    nef_ka = p.find_flag(FlagKind.NEF, ka)
    if nef_ka is not None and not p.satisfies(FlagKind.BIG, ka):
        return _certificate(
            Conclusion.NON_VANISHING_EXTERNAL,
            ROUTE_NEF_NOT_BIG,
            hypotheses=(ample, nef_ka),
            citations=(KA00_THM31,),
        )

    uniruled = p.find_flag(FlagKind.UNIRULED)
    irregularity_zero = p.find_flag(FlagKind.IRREGULARITY_ZERO)
    if uniruled is not None and irregularity_zero is None:
        return _certificate(
            Conclusion.NON_VANISHING_EXTERNAL,
            ROUTE_POSITIVE_IRREGULARITY,
            hypotheses=(ample, uniruled),
            citations=(CH02_THM42,),
        )

    anti = p.find_flag(FlagKind.PSEUDO_EFFECTIVE, -K) or p.find_flag(
        FlagKind.GENERICALLY_NEF, -K
    )
    nef_big = p.find_flag(FlagKind.NEF_AND_BIG, ka)
    if anti is not None and nef_big is not None and irregularity_zero is not None:
        if p.chi_O < 1:
            raise FlagContradictionError(
                f"route {ROUTE_ANTICANONICAL} needs chi_O >= 1, profile has {p.chi_O}"
            )
        limit = p.triple_eval(-K, ka, ka)
        if limit < 0:
            raise FlagContradictionError(
                f"-K is declared generically nef but -K.(K+A)^2 = {limit} < 0"
            )
        bound = bound_nefbig(p, A)
        return _certificate(
            Conclusion.NON_VANISHING,
            ROUTE_ANTICANONICAL,
            bound,
            (ample, anti, nef_big, irregularity_zero),
        )

    return _certificate(Conclusion.INCONCLUSIVE, ROUTE_NONE)


def certify_h0_bs(p: ThreefoldProfile, A: DivisorExpr) -> Certificate:
    """Certify h^0(K+2A) > 0 from declared flags; first matching route wins.

    Requires Ample(A) and Nef(K+2A) (a numerically trivial declaration
    counts as nef).  Routes: (a) K+2A numerically trivial -- the class is
    trivial on a Fano, no bound; (b) K pseudo-effective -- sum of the two
    c2-elimination bounds; (c) uniruled with positive irregularity --
    external citation; (d) uniruled and regular -- the chi bound, with
    hard errors when (K+2A).A^2 <= 0 or chi_O < 1 contradict the
    declarations; otherwise inconclusive.
    """
    ample = _require_ample(p, A)
    K = p.canonical
    k2a = K + 2 * A

    nef = p.find_flag(FlagKind.NEF, k2a)
    if nef is None:
        raise MissingFlagError(FlagKind.NEF, k2a)

    trivial = p.find_flag(FlagKind.NUMERICALLY_TRIVIAL, k2a)
    if trivial is not None:
        return _certificate(
            Conclusion.NON_VANISHING,
            ROUTE_FANO_TRIVIAL,
            hypotheses=(ample, trivial),
            citations=(FANO_TRIVIAL,),
        )

    witness = _canonical_side_flag(p)
    if witness is not None:
        bound = bound_fukuma_ka(p, A) + bound_fukuma_gap(p, A)
        conclusion = Conclusion.NON_VANISHING if bound > 0 else Conclusion.INCONCLUSIVE
        return _certificate(
            conclusion, ROUTE_NOT_UNIRULED, bound, (ample, nef, witness)
        )

    uniruled = p.find_flag(FlagKind.UNIRULED)
    irregularity_zero = p.find_flag(FlagKind.IRREGULARITY_ZERO)
    if uniruled is not None and irregularity_zero is None:
        return _certificate(
            Conclusion.NON_VANISHING_EXTERNAL,
            ROUTE_POSITIVE_IRREGULARITY,
            hypotheses=(ample, nef, uniruled),
            citations=(CH02_THM42,),
        )

    if uniruled is not None and irregularity_zero is not None:
        positivity = p.triple_eval(k2a, A, A)
        if positivity <= 0:
            raise FlagContradictionError(
                f"(K+2A).A^2 = {positivity} <= 0 contradicts semiample "
                "positivity of a nef, numerically nontrivial adjoint class"
            )
        if p.chi_O < 1:
            raise FlagContradictionError(
                f"route {ROUTE_BS_CHI} needs chi_O >= 1, profile has {p.chi_O}"
            )
        bound = bound_bs(p, A)
        return _certificate(
            Conclusion.NON_VANISHING,
            ROUTE_BS_CHI,
            bound,
            (ample, nef, uniruled, irregularity_zero),
            citations=(BASEPOINTFREE,),
        )

    return _certificate(Conclusion.INCONCLUSIVE, ROUTE_NONE)
