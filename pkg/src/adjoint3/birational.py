"""Blow-up transforms of threefold profiles.

Blowing up a point or a smooth curve extends the basis by an exceptional
symbol and rewrites the intersection data by closed formulas.  The c2
rules are fixed by a single requirement: the characteristic of any pulled
back line bundle is unchanged, which together with the preserved chi_O
pins every sign.  Blowing down is only available as the inverse reading of
a stored `BlowupMap`; recognising exceptional divisors inside raw
numerical data is out of scope.

Basis symbols of the base profile persist in the blown-up profile, so the
pull-back of a divisor is the same coefficient vector read over the larger
basis (exceptional coefficient zero).  Variety-level flags (uniruledness,
irregularity, generic nefness of the cotangent bundle) are birational
invariants and are transported; divisor-level flags are dropped because
pull-backs of ample classes are merely nef.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .core import CalcError, DivisorExpr, RationalInput, UnknownSymbolError, rat
from .profile import VARIETY_LEVEL_KINDS, ThreefoldProfile

POINT = "point"
CURVE = "curve"


class SymbolCollisionError(CalcError):
    """The requested exceptional symbol already belongs to the basis."""


class MissingCurveDegreeError(CalcError):
    """Curve blow-up data must pair every basis symbol with a degree."""


@dataclass(frozen=True)
class CurveCenter:
    """Genus and intersection degrees D.C of a smooth curve center."""

    genus: int
    degrees: tuple[tuple[str, Fraction], ...]

    def degree_of(self, symbol: str) -> Fraction:
        for s, v in self.degrees:
            if s == symbol:
                return v
        raise MissingCurveDegreeError(f"no degree recorded for symbol '{symbol}'")


@dataclass(frozen=True)
class BlowupMap:
    """A blow-up between two profiles; source is the blown-up threefold."""

    source: ThreefoldProfile
    target: ThreefoldProfile
    exceptional: str
    center_kind: str
    center: CurveCenter | None = None

    def __post_init__(self):
        if self.center_kind not in (POINT, CURVE):
            raise ValueError(f"center_kind must be '{POINT}' or '{CURVE}'")
        if (self.center_kind == CURVE) != (self.center is not None):
            raise ValueError("curve blow-ups carry center data, point blow-ups none")


def _transported_flags(p: ThreefoldProfile):
    return frozenset(f for f in p.flags if f.kind in VARIETY_LEVEL_KINDS)


def _check_new_symbol(p: ThreefoldProfile, new_symbol: str) -> None:
    if not isinstance(new_symbol, str) or not new_symbol:
        raise ValueError("the exceptional symbol must be a non-empty string")
    if new_symbol in p.basis:
        raise SymbolCollisionError(
            f"symbol '{new_symbol}' already belongs to the basis"
        )


def blow_up_point(
    p: ThreefoldProfile, new_symbol: str
) -> tuple[ThreefoldProfile, BlowupMap]:
    """Blow up a point, extending the basis by ``new_symbol``.

    Intersection rules: E^3 = 1, every product of E with a pulled-back
    class vanishes, the canonical class gains 2E, E pairs to zero with c2,
    and chi_O is unchanged.
    """
    _check_new_symbol(p, new_symbol)
    e = new_symbol
    triple = dict(p.symmetric_triple())
    triple[(e, e, e)] = Fraction(1)
    c2 = {s: v for s, v in p.c2_vector.items() if v != 0}
    source = ThreefoldProfile(
        basis=p.basis + (e,),
        triple=triple,
        c2_vector=c2,
        chi_O=p.chi_O,
        canonical=p.canonical + DivisorExpr.symbol(e, 2),
        flags=_transported_flags(p),
        named_divisors=p.named_divisors,
    )
    return source, BlowupMap(source=source, target=p, exceptional=e, center_kind=POINT)


def blow_up_curve(
    p: ThreefoldProfile,
    new_symbol: str,
    genus: int,
    degrees: Mapping[str, RationalInput],
) -> tuple[ThreefoldProfile, BlowupMap]:
    """Blow up a smooth curve of the given genus and intersection degrees.

    ``degrees`` pairs every basis symbol D with the number D.C.  Rules:
    the canonical class gains E, mixed products of two pull-backs with E
    vanish, D.E^2 = -(D.C), E^3 = -(2g - 2 - K.C) (the normal bundle
    degree via adjunction), c2 pairings move by D.C on pull-backs and E
    pairs to K.C with the opposite sign, chi_O is unchanged.
    """
    _check_new_symbol(p, new_symbol)
    if not isinstance(genus, int) or genus < 0:
        raise ValueError(f"genus must be a nonnegative integer, got {genus}")
    deg: dict[str, Fraction] = {}
    for s in p.basis:
        if s not in degrees:
            raise MissingCurveDegreeError(
                f"degree D.C missing for basis symbol '{s}'"
            )
        deg[s] = rat(degrees[s])
    for s in degrees:
        if s not in p.basis:
            raise UnknownSymbolError(s, "curve degrees")

    e = new_symbol
    canonical_dot_curve = sum(
        (c * deg[s] for s, c in p.canonical.items()), Fraction(0)
    )
    triple = dict(p.symmetric_triple())
    for s in p.basis:
        if deg[s] != 0:
            triple[tuple(sorted((s, e, e)))] = -deg[s]
    triple[(e, e, e)] = -(2 * genus - 2 - canonical_dot_curve)

    c2 = {}
    for s in p.basis:
        value = p.c2_vector.get(s, Fraction(0)) + deg[s]
        if value != 0:
            c2[s] = value
    if canonical_dot_curve != 0:
        c2[e] = -canonical_dot_curve

    source = ThreefoldProfile(
        basis=p.basis + (e,),
        triple=triple,
        c2_vector=c2,
        chi_O=p.chi_O,
        canonical=p.canonical + DivisorExpr.symbol(e),
        flags=_transported_flags(p),
        named_divisors=p.named_divisors,
    )
    center = CurveCenter(genus=genus, degrees=tuple(sorted(deg.items())))
    return source, BlowupMap(
        source=source, target=p, exceptional=e, center_kind=CURVE, center=center
    )


def pull_back(m: BlowupMap, D: DivisorExpr) -> DivisorExpr:
    """Read a divisor on the target over the source basis.

    Coefficients are unchanged; the exceptional coefficient is zero.
    """
    for s in D.symbols():
        if s not in m.target.basis:
            raise UnknownSymbolError(s, "pull_back")
    return DivisorExpr(D.coefficients)


def blowdown_invariance_check(
    m: BlowupMap, A_target: DivisorExpr
) -> tuple[bool, bool]:
    """Check that the two bound cubics are blow-down invariant.

    For a point blow-up with A = f*A' - E, both (K+2A).A.(K + 5/4 A) and
    A.(K+2A).(K + 19/3 A) agree with their values downstairs; this holds
    identically because K+2A is a pull-back and pull-backs annihilate E.
    Returns the two comparisons (contract: both True).
    """
    if m.center_kind != POINT:
        raise ValueError("the invariance check is defined for point blow-ups")
    a_source = pull_back(m, A_target) - DivisorExpr.symbol(m.exceptional)

    def forms(profile: ThreefoldProfile, a: DivisorExpr) -> tuple[Fraction, Fraction]:
        k = profile.canonical
        first = profile.triple_eval(k + 2 * a, a, k + Fraction(5, 4) * a)
        second = profile.triple_eval(a, k + 2 * a, k + Fraction(19, 3) * a)
        return first, second

    s1, s2 = forms(m.source, a_source)
    t1, t2 = forms(m.target, A_target)
    return (s1 == t1, s2 == t2)
