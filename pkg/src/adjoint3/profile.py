"""Numerical threefold profiles: intersection data, positivity flags, evaluation.

A profile is the finite numerical shadow of a smooth projective threefold:
an ordered basis of divisor symbols, the symmetric triple-intersection
tensor on that basis, the pairing of each basis symbol with the second
Chern class, the Euler characteristic of the structure sheaf, the canonical
class, and a set of trusted positivity assertions (flags).

Positivity is not decidable from this data, so flags are declarations
supplied with the profile.  Operations may check numeric consequences of a
flag (and fail hard on contradictions) but never infer one.  A declared
flag also certifies the weaker properties of the same divisor: ample
implies nef-and-big, nef or big imply pseudo-effective, pseudo-effective
implies generically nef, and a numerically trivial class is nef.  Subjects
are matched exactly as canonical divisor expressions; no rescaling is
applied.

The triple tensor is stored exactly as supplied so that symmetry damage is
observable by `validate_profile`; evaluation symmetrises through sorted
lookups, preferring the lexicographically smallest stored permutation of
each index triple.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from .core import (
    CalcError,
    DivisorExpr,
    NumberExpr,
    RationalInput,
    UnknownSymbolError,
    rat,
)

_ZERO = Fraction(0)


class FlagKind(str, Enum):
    AMPLE = "Ample"
    NEF = "Nef"
    BIG = "Big"
    NEF_AND_BIG = "NefAndBig"
    PSEUDO_EFFECTIVE = "PseudoEffective"
    GENERICALLY_NEF = "GenericallyNefDivisor"
    NUMERICALLY_TRIVIAL = "NumericallyTrivial"
    NOT_UNIRULED = "NotUniruled"
    UNIRULED = "Uniruled"
    IRREGULARITY_ZERO = "IrregularityZero"
    COTANGENT_GENERICALLY_NEF = "CotangentGenericallyNef"


VARIETY_LEVEL_KINDS = frozenset(
    {
        FlagKind.NOT_UNIRULED,
        FlagKind.UNIRULED,
        FlagKind.IRREGULARITY_ZERO,
        FlagKind.COTANGENT_GENERICALLY_NEF,
    }
)

# a declared flag of the key kind also certifies the value kinds, for the
# same subject divisor
_KIND_IMPLIES: dict[FlagKind, frozenset[FlagKind]] = {
    FlagKind.AMPLE: frozenset(
        {
            FlagKind.NEF_AND_BIG,
            FlagKind.NEF,
            FlagKind.BIG,
            FlagKind.PSEUDO_EFFECTIVE,
            FlagKind.GENERICALLY_NEF,
        }
    ),
    FlagKind.NEF_AND_BIG: frozenset(
        {
            FlagKind.NEF,
            FlagKind.BIG,
            FlagKind.PSEUDO_EFFECTIVE,
            FlagKind.GENERICALLY_NEF,
        }
    ),
    FlagKind.NEF: frozenset({FlagKind.PSEUDO_EFFECTIVE, FlagKind.GENERICALLY_NEF}),
    FlagKind.BIG: frozenset({FlagKind.PSEUDO_EFFECTIVE, FlagKind.GENERICALLY_NEF}),
    FlagKind.PSEUDO_EFFECTIVE: frozenset({FlagKind.GENERICALLY_NEF}),
    FlagKind.NUMERICALLY_TRIVIAL: frozenset(
        {FlagKind.NEF, FlagKind.PSEUDO_EFFECTIVE, FlagKind.GENERICALLY_NEF}
    ),
}


@dataclass(frozen=True)
class PositivityFlag:
    """A trusted positivity assertion: a kind plus an optional subject.

    Variety-level kinds (uniruledness, irregularity, generic nefness of the
    cotangent bundle) carry no subject; all others assert a property of one
    divisor expression.
    """

    kind: FlagKind
    subject: DivisorExpr | None = None

    def __post_init__(self):
        object.__setattr__(self, "kind", FlagKind(self.kind))
        if self.kind in VARIETY_LEVEL_KINDS:
            if self.subject is not None:
                raise ValueError(f"{self.kind.value} is a variety-level flag")
        else:
            if not isinstance(self.subject, DivisorExpr):
                raise ValueError(f"{self.kind.value} requires a divisor subject")

    def implies(self, kind: FlagKind) -> bool:
        return kind == self.kind or kind in _KIND_IMPLIES.get(self.kind, frozenset())

    def __str__(self) -> str:
        if self.subject is None:
            return self.kind.value
        return f"{self.kind.value}({self.subject})"


def flag(kind: FlagKind | str, subject: DivisorExpr | None = None) -> PositivityFlag:
    """Convenience constructor accepting the kind by name."""
    return PositivityFlag(FlagKind(kind), subject)


class MissingFlagError(CalcError):
    """An operation requires a declared flag that the profile lacks."""

    def __init__(self, kind: FlagKind, subject: DivisorExpr | None = None):
        self.kind = FlagKind(kind)
        self.subject = subject
        what = self.kind.value if subject is None else f"{self.kind.value}({subject})"
        super().__init__(f"missing required flag {what}")


class FlagContradictionError(CalcError):
    """A declared flag contradicts a computed intersection number."""


def _coerce_divisor(value) -> DivisorExpr:
    if isinstance(value, DivisorExpr):
        return value
    if isinstance(value, Mapping):
        return DivisorExpr(value)
    raise TypeError("expected a DivisorExpr or a symbol->rational mapping")


class ThreefoldProfile:
    """Finite intersection-theoretic model of a smooth projective threefold.

    Fields: ``basis`` (ordered symbol names), ``triple`` (the trilinear
    form, stored on index triples as given), ``c2_vector`` (pairing of each
    basis symbol with the second Chern class), ``chi_O``, ``canonical``
    (the canonical class over the basis), ``flags`` and ``named_divisors``.

    Instances are immutable; use `with_flags` / `with_named_divisors` to
    derive modified copies.
    """

    __slots__ = (
        "basis",
        "triple",
        "c2_vector",
        "chi_O",
        "canonical",
        "flags",
        "named_divisors",
        "_sym_triple",
    )

    def __init__(
        self,
        basis: Sequence[str],
        triple: Mapping[Sequence[str], RationalInput]
        | Iterable[tuple[Sequence[str], RationalInput]],
        c2_vector: Mapping[str, RationalInput] = (),
        chi_O: RationalInput = 0,
        canonical: DivisorExpr | Mapping[str, RationalInput] = DivisorExpr.zero(),
        flags: Iterable[PositivityFlag] = (),
        named_divisors: Mapping[str, DivisorExpr] = (),
    ):
        self.basis = tuple(basis)
        if len(set(self.basis)) != len(self.basis):
            raise ValueError("basis symbols must be distinct")
        if not all(isinstance(s, str) and s for s in self.basis):
            raise ValueError("basis symbols must be non-empty strings")

        items = triple.items() if isinstance(triple, Mapping) else triple
        stored: dict[tuple[str, str, str], Fraction] = {}
        for key, value in items:
            key = tuple(key)
            if len(key) != 3 or not all(isinstance(s, str) for s in key):
                raise ValueError(f"triple keys are symbol triples, got {key!r}")
            stored[key] = rat(value)
        self.triple = MappingProxyType(stored)

        c2_items = c2_vector.items() if isinstance(c2_vector, Mapping) else c2_vector
        self.c2_vector = MappingProxyType({s: rat(v) for s, v in c2_items})
        self.chi_O = rat(chi_O)
        self.canonical = _coerce_divisor(canonical)
        self.flags = frozenset(flags)
        for f in self.flags:
            if not isinstance(f, PositivityFlag):
                raise TypeError("flags must be PositivityFlag instances")
        named = named_divisors.items() if isinstance(named_divisors, Mapping) else named_divisors
        self.named_divisors = MappingProxyType(
            {n: _coerce_divisor(d) for n, d in named}
        )

        # symmetrised view: smallest stored permutation of each triple wins
        sym: dict[tuple[str, str, str], Fraction] = {}
        for key in sorted(stored):
            skey = tuple(sorted(key))
            if skey not in sym:
                sym[skey] = stored[key]
        self._sym_triple = sym

    # -- evaluation ---------------------------------------------------

    def _check_symbols(self, d: DivisorExpr, where: str) -> None:
        for s in d.symbols():
            if s not in self.basis:
                raise UnknownSymbolError(s, where)

    def symmetric_triple(self) -> dict[tuple[str, str, str], Fraction]:
        """Canonical symmetrised tensor on sorted triples, zeros dropped."""
        return {k: v for k, v in self._sym_triple.items() if v != 0}

    def triple_eval(
        self, d1: DivisorExpr, d2: DivisorExpr, d3: DivisorExpr
    ) -> Fraction:
        """Trilinear, symmetric extension of the stored tensor."""
        for i, d in enumerate((d1, d2, d3), start=1):
            self._check_symbols(d, f"triple_eval argument {i}")
        total = _ZERO
        for s1, c1 in d1.items():
            for s2, c2 in d2.items():
                c12 = c1 * c2
                for s3, c3 in d3.items():
                    v = self._sym_triple.get(tuple(sorted((s1, s2, s3))))
                    if v:
                        total += c12 * c3 * v
        return total

    def c2_pair(self, d: DivisorExpr) -> Fraction:
        """Linear extension of the c2 pairing vector."""
        self._check_symbols(d, "c2 pairing")
        return sum((c * self.c2_vector.get(s, _ZERO) for s, c in d.items()), _ZERO)

    def number_eval(self, n: NumberExpr) -> Fraction:
        """Evaluate a symbolic number against this profile."""
        for s in n.symbols():
            if s not in self.basis:
                raise UnknownSymbolError(s, "number_eval")
        total = n.constant + n.chi_o_coeff * self.chi_O
        for key, v in n.cubic_terms.items():
            t = self._sym_triple.get(key)
            if t:
                total += v * t
        for s, v in n.c2_pairings.items():
            total += v * self.c2_vector.get(s, _ZERO)
        return total

    # -- flags ----------------------------------------------------------

    def has_flag(self, kind: FlagKind | str, subject: DivisorExpr | None = None) -> bool:
        """Whether the exact flag is declared (no implication closure)."""
        kind = FlagKind(kind)
        return any(f.kind == kind and f.subject == subject for f in self.flags)

    def find_flag(
        self, kind: FlagKind | str, subject: DivisorExpr | None = None
    ) -> PositivityFlag | None:
        """A declared flag certifying ``kind`` for ``subject``, if any.

        Exact declarations win; otherwise any declared flag on the same
        subject whose kind implies the requested one.
        """
        kind = FlagKind(kind)
        fallback = None
        for f in self.flags:
            if f.subject != subject:
                continue
            if f.kind == kind:
                return f
            if fallback is None and f.implies(kind):
                fallback = f
        return fallback

    def satisfies(self, kind: FlagKind | str, subject: DivisorExpr | None = None) -> bool:
        return self.find_flag(kind, subject) is not None

    # -- derived copies ---------------------------------------------------

    def with_flags(self, *new_flags: PositivityFlag, replace: bool = False):
        flags = frozenset(new_flags) if replace else self.flags | frozenset(new_flags)
        return ThreefoldProfile(
            self.basis,
            self.triple,
            self.c2_vector,
            self.chi_O,
            self.canonical,
            flags,
            self.named_divisors,
        )

    def with_named_divisors(self, **named: DivisorExpr):
        merged = dict(self.named_divisors)
        merged.update(named)
        return ThreefoldProfile(
            self.basis,
            self.triple,
            self.c2_vector,
            self.chi_O,
            self.canonical,
            self.flags,
            merged,
        )

    # -- validation ------------------------------------------------------

    def validate(self) -> list[str]:
        """All invariant violations, as human-readable records.

        An empty list certifies: symbols known, triple symmetric as stored,
        the canonical class pairs with c2 to -24 * chi_O, and chi_O is an
        integer.  Violations are data, not failures.
        """
        out: list[str] = []
        basis = set(self.basis)

        for key in self.triple:
            for s in key:
                if s not in basis:
                    out.append(f"unknown symbol '{s}' in triple entry {key}")
        for s in self.c2_vector:
            if s not in basis:
                out.append(f"unknown symbol '{s}' in c2 vector")
        unknown_core = bool(out)
        for s in self.canonical.symbols():
            if s not in basis:
                out.append(f"unknown symbol '{s}' in canonical class")
                unknown_core = True
        for name, d in sorted(self.named_divisors.items()):
            for s in d.symbols():
                if s not in basis:
                    out.append(f"unknown symbol '{s}' in named divisor '{name}'")
        for f in sorted(self.flags, key=str):
            if f.subject is not None:
                for s in f.subject.symbols():
                    if s not in basis:
                        out.append(f"unknown symbol '{s}' in flag {f}")

        groups: dict[tuple[str, str, str], list[tuple[tuple[str, str, str], Fraction]]] = {}
        for key, value in self.triple.items():
            groups.setdefault(tuple(sorted(key)), []).append((key, value))
        for skey in sorted(groups):
            entries = sorted(groups[skey])
            baseline_key, baseline_value = entries[0]
            for key, value in entries[1:]:
                if value != baseline_value:
                    out.append(
                        "triple symmetry violation: "
                        f"T{baseline_key}={baseline_value} but T{key}={value}"
                    )

        if not unknown_core:
            lhs = self.c2_pair(self.canonical)
            rhs = -24 * self.chi_O
            if lhs != rhs:
                out.append(f"chiox inconsistency: {lhs} != {rhs}")

        if self.chi_O.denominator != 1:
            out.append(f"chi_O must be an integer, got {self.chi_O}")
        return out

    # -- structural equality ----------------------------------------------

    def _key(self):
        return (
            self.basis,
            tuple(sorted(self.symmetric_triple().items())),
            tuple(sorted((s, v) for s, v in self.c2_vector.items() if v != 0)),
            self.chi_O,
            self.canonical,
            self.flags,
            tuple(sorted(self.named_divisors.items())),
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ThreefoldProfile):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        return (
            f"ThreefoldProfile(basis={list(self.basis)}, K={self.canonical}, "
            f"chi_O={self.chi_O})"
        )


def validate_profile(p: ThreefoldProfile) -> list[str]:
    """Module-level alias for `ThreefoldProfile.validate`."""
    return p.validate()


def triple_eval(
    p: ThreefoldProfile, d1: DivisorExpr, d2: DivisorExpr, d3: DivisorExpr
) -> Fraction:
    return p.triple_eval(d1, d2, d3)


def c2_pair_eval(p: ThreefoldProfile, d: DivisorExpr) -> Fraction:
    return p.c2_pair(d)


def number_eval(p: ThreefoldProfile, n: NumberExpr) -> Fraction:
    return p.number_eval(n)
