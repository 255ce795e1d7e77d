"""Profile files and the divisor-expression grammar.

Profiles are stored as JSON with exact rationals rendered as ``p/q``
strings (never floating point), the triple tensor as records
``{i, j, k, value}`` with sorted basis indices, and flags as
``{kind, subject}`` records.  Serialization is canonical: re-serializing a
parsed file reproduces it byte for byte.

Divisor expressions use the grammar ``coef*SYM (+|-) ...`` with rational
coefficients ``p/q``; whitespace is insignificant, the star is optional,
and a bare symbol means coefficient one.  `resolve_divisor` additionally
accepts names of stored divisors and the canonical class ``K``.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Sequence

from .core import CalcError, DivisorExpr, UnknownSymbolError, format_rational, rat
from .profile import FlagKind, PositivityFlag, ThreefoldProfile

PROFILE_FIELDS = ("basis", "canonical", "chi_O", "c2", "triple", "flags", "named_divisors")


class ProfileFormatError(CalcError):
    """A profile file does not follow the documented JSON layout."""


class DivisorParseError(CalcError):
    """A divisor expression does not follow the grammar."""


_TERM_RE = re.compile(
    r"(?P<sign>[+-])?"
    r"(?:(?P<coef>\d+(?:/\d+)?)\*?)?"
    r"(?P<sym>[A-Za-z_][A-Za-z0-9_']*)?"
)


def parse_divisor(text: str) -> DivisorExpr:
    """Parse ``coef*SYM (+|-) ...``; ``0`` denotes the zero divisor."""
    compact = re.sub(r"\s+", "", text)
    if not compact:
        raise DivisorParseError("empty divisor expression")
    if compact in ("0", "+0", "-0"):
        return DivisorExpr.zero()
    terms: list[tuple[str, Fraction]] = []
    pos = 0
    first = True
    while pos < len(compact):
        m = _TERM_RE.match(compact, pos)
        if m is None or m.end() == pos:
            raise DivisorParseError(f"cannot read '{text}' at position {pos}")
        sign, coef, sym = m.group("sign"), m.group("coef"), m.group("sym")
        if sym is None:
            raise DivisorParseError(
                f"term without a symbol in '{text}' at position {pos}"
            )
        if not first and sign is None:
            raise DivisorParseError(
                f"missing '+' or '-' between terms in '{text}' at position {pos}"
            )
        value = rat(coef) if coef is not None else Fraction(1)
        if sign == "-":
            value = -value
        terms.append((sym, value))
        pos = m.end()
        first = False
    return DivisorExpr(terms)


def format_divisor(d: DivisorExpr, basis: Sequence[str] | None = None) -> str:
    """Canonical rendering: ``p/q*SYM`` terms in basis order, or ``0``."""
    coeffs = d.coefficients
    if not coeffs:
        return "0"
    if basis:
        order = {s: i for i, s in enumerate(basis)}
        symbols = sorted(coeffs, key=lambda s: (order.get(s, len(order)), s))
    else:
        symbols = sorted(coeffs)
    parts: list[str] = []
    for i, s in enumerate(symbols):
        c = coeffs[s]
        body = f"{format_rational(abs(c))}*{s}"
        if i == 0:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"{'+' if c > 0 else '-'} {body}")
    return " ".join(parts)


def resolve_divisor(p: ThreefoldProfile, text: str) -> DivisorExpr:
    """Resolve a name or expression against a profile.

    Stored divisor names are looked up first; inside expressions, symbols
    that are not basis symbols are substituted from the stored divisors,
    and ``K`` denotes the canonical class unless shadowed.
    """
    name = text.strip()
    if name in p.named_divisors:
        return p.named_divisors[name]
    if name == "K" and "K" not in p.basis:
        return p.canonical
    parsed = parse_divisor(text)
    out = DivisorExpr.zero()
    for sym, coeff in parsed.items():
        if sym in p.basis:
            out = out + DivisorExpr.symbol(sym, coeff)
        elif sym in p.named_divisors:
            out = out + coeff * p.named_divisors[sym]
        elif sym == "K":
            out = out + coeff * p.canonical
        else:
            raise UnknownSymbolError(sym, f"divisor expression '{text}'")
    return out


def _flag_record(f: PositivityFlag, basis: Sequence[str]) -> dict:
    record: dict = {"kind": f.kind.value}
    record["subject"] = None if f.subject is None else format_divisor(f.subject, basis)
    return record


def profile_to_dict(p: ThreefoldProfile) -> dict:
    """JSON-ready canonical representation of a profile."""
    index = {s: i for i, s in enumerate(p.basis)}
    triple_records = []
    for key, value in p.symmetric_triple().items():
        for s in key:
            if s not in index:
                raise UnknownSymbolError(s, "profile serialization")
        i, j, k = sorted(index[s] for s in key)
        triple_records.append({"i": i, "j": j, "k": k, "value": format_rational(value)})
    triple_records.sort(key=lambda r: (r["i"], r["j"], r["k"]))
    flags = sorted(
        (_flag_record(f, p.basis) for f in p.flags),
        key=lambda r: (r["kind"], r["subject"] or ""),
    )
    return {
        "basis": list(p.basis),
        "canonical": format_divisor(p.canonical, p.basis),
        "chi_O": format_rational(p.chi_O),
        "c2": [format_rational(p.c2_vector.get(s, Fraction(0))) for s in p.basis],
        "triple": triple_records,
        "flags": flags,
        "named_divisors": {
            name: format_divisor(d, p.basis)
            for name, d in sorted(p.named_divisors.items())
        },
    }


def profile_from_dict(obj: object) -> ThreefoldProfile:
    """Rebuild a profile from its JSON representation."""
    if not isinstance(obj, dict):
        raise ProfileFormatError("a profile file holds a JSON object")
    unknown = set(obj) - set(PROFILE_FIELDS)
    if unknown:
        raise ProfileFormatError(f"unknown profile fields: {sorted(unknown)}")

    basis = obj.get("basis")
    if (
        not isinstance(basis, list)
        or not basis
        or not all(isinstance(s, str) and s for s in basis)
    ):
        raise ProfileFormatError("'basis' must be a non-empty list of symbol names")

    try:
        canonical = parse_divisor(obj.get("canonical", "0"))
        chi_o = rat(obj.get("chi_O", 0))
    except (DivisorParseError, ValueError, ZeroDivisionError, TypeError) as exc:
        raise ProfileFormatError(f"bad canonical/chi_O field: {exc}") from exc

    c2_list = obj.get("c2", ["0/1"] * len(basis))
    if not isinstance(c2_list, list) or len(c2_list) != len(basis):
        raise ProfileFormatError("'c2' must list one rational per basis symbol")
    try:
        c2_vector = {s: rat(v) for s, v in zip(basis, c2_list)}
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise ProfileFormatError(f"bad c2 entry: {exc}") from exc

    triple = {}
    records = obj.get("triple", [])
    if not isinstance(records, list):
        raise ProfileFormatError("'triple' must be a list of {i, j, k, value} records")
    for record in records:
        if not isinstance(record, dict) or not {"i", "j", "k", "value"} <= set(record):
            raise ProfileFormatError(f"bad triple record: {record!r}")
        try:
            ijk = tuple(int(record[x]) for x in ("i", "j", "k"))
            value = rat(record["value"])
        except (ValueError, ZeroDivisionError, TypeError) as exc:
            raise ProfileFormatError(f"bad triple record {record!r}: {exc}") from exc
        if not all(0 <= x < len(basis) for x in ijk):
            raise ProfileFormatError(f"triple indices out of range: {record!r}")
        triple[tuple(basis[x] for x in ijk)] = value

    flags = []
    for record in obj.get("flags", []):
        if not isinstance(record, dict) or "kind" not in record:
            raise ProfileFormatError(f"bad flag record: {record!r}")
        try:
            kind = FlagKind(record["kind"])
        except ValueError as exc:
            raise ProfileFormatError(f"unknown flag kind {record['kind']!r}") from exc
        subject_text = record.get("subject")
        try:
            subject = None if subject_text is None else parse_divisor(subject_text)
            flags.append(PositivityFlag(kind, subject))
        except (DivisorParseError, ValueError) as exc:
            raise ProfileFormatError(f"bad flag record {record!r}: {exc}") from exc

    named = obj.get("named_divisors", {})
    if not isinstance(named, dict):
        raise ProfileFormatError("'named_divisors' must map names to expressions")
    try:
        named_divisors = {name: parse_divisor(text) for name, text in named.items()}
    except DivisorParseError as exc:
        raise ProfileFormatError(f"bad named divisor: {exc}") from exc

    try:
        return ThreefoldProfile(
            basis=basis,
            triple=triple,
            c2_vector=c2_vector,
            chi_O=chi_o,
            canonical=canonical,
            flags=flags,
            named_divisors=named_divisors,
        )
    except (ValueError, TypeError) as exc:
        raise ProfileFormatError(str(exc)) from exc


def serialize_profile(p: ThreefoldProfile) -> str:
    """Canonical JSON text for a profile (deterministic byte for byte)."""
    return json.dumps(profile_to_dict(p), indent=2) + "\n"


def parse_profile(text: str) -> ThreefoldProfile:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProfileFormatError(f"not valid JSON: {exc}") from exc
    return profile_from_dict(obj)


def load_profile(path) -> ThreefoldProfile:
    with open(path, "r", encoding="utf-8") as handle:
        return parse_profile(handle.read())


def save_profile(p: ThreefoldProfile, path) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(serialize_profile(p))
