"""Built-in validated example profiles and their pinned expected values.

Every entry passes `validate_profile` and carries a list of
machine-checkable expected values in a tiny description language, so the
catalog doubles as a regression corpus:

    chi(<divisor>)        characteristic of the divisor
    triple(<d>,<d>,<d>)   triple intersection number
    c2pair(<divisor>)     pairing with the second Chern class
    fukuma-ka(<A>)        1/18 * (K+2A).A.(K + 5/4 A)
    fukuma-gap(<A>)       1/12 * [A.(K+2A).(K + 19/3 A) + A^3]
    nefbig(<A>)           -1/2 * K.(K+A)^2 + 2 chi_O
    bs(<A>)               1/2 * (K+2A).A^2 + chi_O

Divisor arguments use the command-line grammar and may reference named
divisors and the canonical class K.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .birational import blow_up_curve, blow_up_point
from .bounds import bound_bs, bound_fukuma_gap, bound_fukuma_ka, bound_nefbig
from .core import CalcError, DivisorExpr, format_rational, rat
from .profile import FlagKind, ThreefoldProfile, flag
from .riemann_roch import chi_line_bundle


class UnknownEntryError(CalcError):
    """The catalog has no entry of the requested name."""


class WitnessNotFoundError(CalcError):
    """No scanned epsilon produced a strictly positive pairing."""


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    profile: ThreefoldProfile
    provenance: str
    expected_values: tuple[tuple[str, Fraction], ...]


_H = DivisorExpr.symbol("H")
_E = DivisorExpr.symbol("E")


def projective_space() -> CatalogEntry:
    """Projective three-space polarised by the hyperplane class."""
    profile = ThreefoldProfile(
        basis=("H",),
        triple={("H", "H", "H"): 1},
        c2_vector={"H": 6},
        chi_O=1,
        canonical=-4 * _H,
        flags=(
            flag(FlagKind.AMPLE, _H),
            flag(FlagKind.UNIRULED),
            flag(FlagKind.IRREGULARITY_ZERO),
            flag(FlagKind.PSEUDO_EFFECTIVE, 4 * _H),
        ),
        named_divisors={"H": _H},
    )
    return CatalogEntry(
        name="P3",
        profile=profile,
        provenance=(
            "Projective 3-space: H^3 = 1, K = -4H, c2(T).H = 6, chi_O = 1. "
            "The anticanonical class 4H is ample, hence pseudo-effective."
        ),
        expected_values=(
            ("chi(H)", Fraction(4)),
            ("chi(2*H)", Fraction(10)),
            ("chi(K + 5*H)", Fraction(4)),
            ("chi(K + 6*H)", Fraction(10)),
            ("triple(K, K, K)", Fraction(-64)),
            ("c2pair(H)", Fraction(6)),
            ("c2pair(K)", Fraction(-24)),
            ("nefbig(5*H)", Fraction(4)),
            ("bs(3*H)", Fraction(10)),
        ),
    )


def hypersurface(d: int) -> CatalogEntry:
    """Smooth degree-d hypersurface in projective four-space.

    Invariants from the total Chern class (1+H)^5 / (1+dH) truncated in
    degree two: H^3 = d, K = (d-5)H, c2(T).H = d(d^2-5d+10), and chi_O
    follows from the canonical-c2 pairing.  Degree 1 reproduces P3; degree
    5 is the quintic with trivial canonical class.
    """
    if not isinstance(d, int) or d < 1:
        raise ValueError(f"the degree must be a positive integer, got {d}")
    c2_h = d * (d * d - 5 * d + 10)
    chi_o = Fraction(-(d - 5) * c2_h, 24)
    canonical = (d - 5) * _H
    flags = [flag(FlagKind.AMPLE, _H), flag(FlagKind.IRREGULARITY_ZERO)]
    if d <= 4:
        flags += [
            flag(FlagKind.UNIRULED),
            flag(FlagKind.PSEUDO_EFFECTIVE, -canonical),
        ]
    elif d == 5:
        flags += [
            flag(FlagKind.NOT_UNIRULED),
            flag(FlagKind.NUMERICALLY_TRIVIAL, DivisorExpr.zero()),
        ]
    else:
        flags += [
            flag(FlagKind.NOT_UNIRULED),
            flag(FlagKind.PSEUDO_EFFECTIVE, canonical),
        ]
    profile = ThreefoldProfile(
        basis=("H",),
        triple={("H", "H", "H"): d},
        c2_vector={"H": c2_h},
        chi_O=chi_o,
        canonical=canonical,
        flags=flags,
        named_divisors={"H": _H},
    )
    expected: list[tuple[str, Fraction]] = [
        ("triple(H, H, H)", Fraction(d)),
        ("c2pair(H)", Fraction(c2_h)),
    ]
    if d == 5:
        expected += [
            ("chi(H)", Fraction(5)),
            ("chi(2*H)", Fraction(15)),
            ("fukuma-ka(H)", Fraction(25, 36)),
            ("fukuma-gap(H)", Fraction(205, 36)),
            ("nefbig(H)", Fraction(0)),
            ("bs(H)", Fraction(5)),
        ]
    if d == 6:
        expected += [("nefbig(H)", Fraction(-20)), ("chi(H)", Fraction(4))]
    return CatalogEntry(
        name=f"hypersurface({d})",
        profile=profile,
        provenance=(
            f"Degree-{d} hypersurface in P4: H^3 = {d}, K = ({d}-5)H, "
            f"c2(T).H = {c2_h}, chi_O = {chi_o}. Uniruled iff the degree is "
            "at most 4; the irregularity vanishes by the Lefschetz "
            "hyperplane theorem."
        ),
        expected_values=tuple(expected),
    )


def blown_up_point_p3() -> CatalogEntry:
    """P3 blown up at a point; anticanonical degree drops from 64 to 56."""
    base = projective_space().profile
    profile, _ = blow_up_point(base, "E")
    a_trivial = 2 * _H - _E  # K + 2A vanishes for this ample class
    a_ample = 3 * _H - _E
    profile = profile.with_flags(
        flag(FlagKind.AMPLE, a_trivial),
        flag(FlagKind.AMPLE, a_ample),
        flag(FlagKind.NUMERICALLY_TRIVIAL, DivisorExpr.zero()),
        flag(FlagKind.PSEUDO_EFFECTIVE, 4 * _H - 2 * _E),
    ).with_named_divisors(A2=a_trivial, A3=a_ample)
    return CatalogEntry(
        name="BlP3",
        profile=profile,
        provenance=(
            "Blow-up of a point in P3; a projective line bundle over the "
            "plane with (-K)^3 = 56. The classes 2H-E and 3H-E are ample "
            "(declared; Nakai-Moishezon), and K + 2(2H-E) = 0 is the "
            "numerically trivial adjoint case."
        ),
        expected_values=(
            ("triple(K, K, K)", Fraction(-56)),
            ("triple(E, E, E)", Fraction(1)),
            ("triple(A3, A3, A3)", Fraction(26)),
            ("c2pair(E)", Fraction(0)),
            ("c2pair(K)", Fraction(-24)),
            ("chi(2*H)", Fraction(10)),
        ),
    )


def blown_up_line_p3() -> CatalogEntry:
    """P3 blown up along a line; a plane bundle over the projective line."""
    base = projective_space().profile
    profile, _ = blow_up_curve(base, "E", genus=0, degrees={"H": 1})
    profile = profile.with_flags(flag(FlagKind.PSEUDO_EFFECTIVE, 4 * _H - _E))
    return CatalogEntry(
        name="BlLineP3",
        profile=profile,
        provenance=(
            "Blow-up of a line in P3: genus 0, H.C = 1, so E^3 = -2 and "
            "(-K)^3 = 54, matching the independent projective-bundle "
            "computation for P(O+O+O(1)) over the projective line."
        ),
        expected_values=(
            ("triple(K, K, K)", Fraction(-54)),
            ("triple(E, E, E)", Fraction(-2)),
            ("c2pair(H)", Fraction(7)),
            ("c2pair(E)", Fraction(4)),
            ("c2pair(K)", Fraction(-24)),
            ("chi(3*H)", Fraction(20)),
        ),
    )


def quintic_pencil() -> CatalogEntry:
    """P3 blown up along the base curve of a generic pencil of quintics.

    The base locus of a generic quintic pencil is the smooth (5,5)
    complete-intersection curve: degree 25 and genus 76 (its canonical
    degree is 6H.C = 150).  The fiber class of the induced fibration over
    the projective line is F = 5H - E, and F + eps*H is ample for small
    positive eps (declared for eps = 1/2).  This profile witnesses an
    anticanonical class that is not generically nef.
    """
    base = projective_space().profile
    profile, _ = blow_up_curve(base, "E", genus=76, degrees={"H": 25})
    fiber = 5 * _H - _E
    a_eps = fiber + Fraction(1, 2) * _H
    profile = profile.with_flags(
        flag(FlagKind.AMPLE, a_eps),
        flag(FlagKind.NEF, fiber),
    ).with_named_divisors(F=fiber, A_eps=a_eps)
    return CatalogEntry(
        name="Pencil5",
        profile=profile,
        provenance=(
            "Resolution of a generic pencil of quintic surfaces in P3 by "
            "one blow-up along the reduced base curve (degree 25, genus "
            "76, normal bundle degree 250). F = 5H - E is the fiber class "
            "of the fibration over the projective line; F + H/2 is ample "
            "(declared)."
        ),
        expected_values=(
            ("triple(E, E, E)", Fraction(-250)),
            ("triple(F, F, F)", Fraction(0)),
            ("triple(F, F, H)", Fraction(0)),
            ("triple(K, F, H)", Fraction(5)),
            ("triple(K, H, H)", Fraction(-4)),
            ("triple(K, F, F)", Fraction(0)),
            ("c2pair(H)", Fraction(31)),
            ("c2pair(E)", Fraction(100)),
            ("c2pair(K)", Fraction(-24)),
        ),
    )


_HYPERSURFACE_RE = re.compile(r"hypersurface\((\d+)\)\Z")

_FIXED_ENTRIES = {
    "P3": projective_space,
    "BlP3": blown_up_point_p3,
    "BlLineP3": blown_up_line_p3,
    "Pencil5": quintic_pencil,
}


def names() -> tuple[str, ...]:
    """Concrete entry names; hypersurface(d) is available for any d >= 1."""
    return ("P3", "Q5", "BlP3", "BlLineP3", "Pencil5")


def get(name: str) -> CatalogEntry:
    """Fetch a catalog entry by name.

    Accepts the fixed names, ``hypersurface(d)``, and the alias ``Q5`` for
    the quintic hypersurface.
    """
    builder = _FIXED_ENTRIES.get(name)
    if builder is not None:
        return builder()
    if name == "Q5":
        return hypersurface(5)
    m = _HYPERSURFACE_RE.match(name)
    if m:
        return hypersurface(int(m.group(1)))
    raise UnknownEntryError(
        f"unknown catalog entry '{name}'; known: {', '.join(names())} "
        "and hypersurface(d)"
    )


DEFAULT_EPS_SCAN = tuple(Fraction(1, 2**k) for k in range(1, 21))


def bad_anticanonical_witness(
    entry: CatalogEntry | ThreefoldProfile,
    eps_list: tuple[Fraction, ...] | list[Fraction] | None = None,
    fiber: str = "F",
    polarization: str = "H",
) -> tuple[Fraction, Fraction]:
    """Scan for eps with K.(F + eps*H)^2 > 0, witnessing a bad anticanonical.

    Defaults to the halving scan eps = 1/2, 1/4, ..., 2^-20 and returns the
    first eps with a strictly positive value together with that value.  A
    positive value against an ample F + eps*H certifies that -K is not
    generically nef.
    """
    p = entry.profile if isinstance(entry, CatalogEntry) else entry
    f = p.named_divisors.get(fiber)
    if f is None:
        raise UnknownEntryError(f"profile has no named divisor '{fiber}'")
    h = p.named_divisors.get(polarization, DivisorExpr.symbol(polarization))
    scan = DEFAULT_EPS_SCAN if eps_list is None else tuple(rat(e) for e in eps_list)
    for eps in scan:
        candidate = f + eps * h
        value = p.triple_eval(p.canonical, candidate, candidate)
        if value > 0:
            return eps, value
    raise WitnessNotFoundError(
        f"no epsilon in {[format_rational(e) for e in scan]} makes "
        "K.(F + eps*H)^2 positive"
    )


def check_expected(entry: CatalogEntry) -> list[str]:
    """Evaluate every pinned expected value; returns mismatch records."""
    from .profile_io import resolve_divisor

    p = entry.profile
    ops = {
        "chi": lambda args: chi_line_bundle(p, args[0]),
        "triple": lambda args: p.triple_eval(*args),
        "c2pair": lambda args: p.c2_pair(args[0]),
        "fukuma-ka": lambda args: bound_fukuma_ka(p, args[0]),
        "fukuma-gap": lambda args: bound_fukuma_gap(p, args[0]),
        "nefbig": lambda args: bound_nefbig(p, args[0]),
        "bs": lambda args: bound_bs(p, args[0]),
    }
    mismatches = []
    for description, expected in entry.expected_values:
        op, _, arg_text = description.partition("(")
        if op not in ops or not arg_text.endswith(")"):
            mismatches.append(f"{entry.name}: unreadable description '{description}'")
            continue
        args = [resolve_divisor(p, a) for a in arg_text[:-1].split(",")]
        actual = ops[op](args)
        if actual != expected:
            mismatches.append(
                f"{entry.name}: {description} = {actual}, expected {expected}"
            )
    return mismatches
