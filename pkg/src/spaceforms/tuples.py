"""Invariant tuples ``(type, g, a, Gbar[, Gbar0], b, t | theta)``.

Every finite group acting freely on a sphere corresponds to exactly one
valid tuple.  This module holds the tuple type, its canonical text form,
the validator and the enumerator.
"""

from __future__ import annotations

import functools
import math
import re
from dataclasses import dataclass

from .errors import TupleParseError
from .numtheory import factorize, is_power_of, p_part
from .units import TYPES, UnitSubgroup, admissible, all_subgroups, b_bar, profile

TYPE_INDEX = {t: i for i, t in enumerate(TYPES)}


@dataclass(frozen=True)
class SpaceFormTuple:
    type: str
    g: int
    a: int
    gbar: UnitSubgroup
    b: int = 1
    t: int | None = None
    theta: int | None = None
    gbar0: UnitSubgroup | None = None

    @property
    def b_bar(self) -> int:
        return b_bar(self.gbar, self.type)

    @property
    def t_bar(self) -> int:
        return p_part(self.gbar.order, 2)

    @property
    def theta_bar(self) -> int:
        return p_part(self.gbar.order, 3)

    def sort_key(self) -> tuple:
        return (
            self.g,
            TYPE_INDEX.get(self.type, len(TYPES)),
            self.a,
            self.gbar.residues,
            self.gbar0.residues if self.gbar0 is not None else (),
            self.b,
            self.t or 0,
            self.theta or 0,
        )

    def __str__(self) -> str:
        return format_tuple(self)


def _residues(S: UnitSubgroup) -> str:
    # a=1 has the single residue 0; the text form writes that subgroup as []
    body = "" if S.a == 1 else ",".join(map(str, S.residues))
    return f"[{body}]"


def format_tuple(T: SpaceFormTuple) -> str:
    parts = [f"TYPE={T.type}", f"g={T.g}", f"a={T.a}", f"Gbar={_residues(T.gbar)}", f"b={T.b}"]
    if T.t is not None:
        parts.append(f"t={T.t}")
    if T.theta is not None:
        parts.append(f"theta={T.theta}")
    if T.gbar0 is not None:
        parts.append(f"Gbar0={_residues(T.gbar0)}")
    return ";".join(parts)


_FIELDS = ("TYPE", "g", "a", "Gbar", "Gbar0", "b", "t", "theta")


def parse_tuple(text: str) -> SpaceFormTuple:
    """Parse the canonical form; fields may come in any order."""
    raw: dict[str, str] = {}
    for item in text.strip().split(";"):
        if "=" not in item:
            raise TupleParseError(item or "<empty>", "expected key=value")
        key, _, value = item.partition("=")
        key = key.strip()
        if key not in _FIELDS:
            raise TupleParseError(key, "unknown field")
        if key in raw:
            raise TupleParseError(key, "duplicate field")
        raw[key] = value.strip()
    for key in ("TYPE", "g", "a", "Gbar"):
        if key not in raw:
            raise TupleParseError(key, "missing")
    if raw["TYPE"] not in TYPES:
        raise TupleParseError("TYPE", f"must be one of {', '.join(TYPES)}")

    def integer(key: str) -> int | None:
        if key not in raw:
            return None
        if not re.fullmatch(r"\d+", raw[key]) or int(raw[key]) < 1:
            raise TupleParseError(key, f"expected a positive integer, got {raw[key]!r}")
        return int(raw[key])

    a = integer("a")

    def residues(key: str) -> UnitSubgroup | None:
        if key not in raw:
            return None
        m = re.fullmatch(r"\[\s*([\d,\s]*)\]", raw[key])
        if not m:
            raise TupleParseError(key, f"expected a residue list like [1,4], got {raw[key]!r}")
        body = m.group(1).strip()
        try:
            vals = tuple(int(v) for v in body.split(",")) if body else ()
        except ValueError:
            raise TupleParseError(key, f"malformed residue list {raw[key]!r}") from None
        if not vals:
            if a != 1:
                raise TupleParseError(key, "empty residue list is only allowed for a=1")
            vals = (0,)
        try:
            return UnitSubgroup(a, vals)
        except ValueError as err:
            raise TupleParseError(key, str(err)) from None

    return SpaceFormTuple(
        type=raw["TYPE"],
        g=integer("g"),
        a=a,
        gbar=residues("Gbar"),
        b=integer("b") or 1,
        t=integer("t"),
        theta=integer("theta"),
        gbar0=residues("Gbar0"),
    )


def _b_violation(b: int, bbar: int) -> str | None:
    fb, fbar = factorize(b), factorize(bbar)
    if set(fb) != set(fbar) or any(fb[p] <= fbar[p] for p in fbar):
        return f"b={b} must be b̄={bbar} times a nontrivial power of each prime dividing b̄"
    return None


def index_two_candidates(gbar: UnitSubgroup, t_bar: int) -> list[UnitSubgroup]:
    """Admissible Gbar0 values: subgroups of index 2 (or also index 1 when t̄ != 4)."""
    out = []
    for S in all_subgroups(gbar.a):
        if not S.issubgroup(gbar):
            continue
        idx = gbar.order // S.order
        if idx == 2 or (idx == 1 and t_bar != 4):
            out.append(S)
    return out


def validate_tuple(T: SpaceFormTuple) -> list[str]:
    """Every violated constraint as a message; empty when the tuple is valid."""
    v: list[str] = []
    if T.type not in TYPES:
        return [f"unknown type {T.type!r}"]
    a = T.a
    if T.gbar.a != a:
        return [f"Gbar is taken mod {T.gbar.a} but a={a}"]
    need = {"I": 2, "II": 2, "III": 6, "IV": 6, "V": 30, "VI": 30}[T.type]
    if math.gcd(a, need) != 1:
        v.append({2: "a must be odd", 6: "a must be prime to 6", 30: "a must be prime to 30"}[need])
    ok, reason = admissible(T.gbar, T.type, a)
    if not ok:
        v.append(reason)
        return v
    pr = profile(T.gbar)
    bbar = T.b_bar
    msg = _b_violation(T.b, bbar)
    if msg:
        v.append(msg)

    if T.type in ("I", "II"):
        if T.theta is not None:
            v.append(f"theta is not a type {T.type} parameter")
        if T.t is None or not is_power_of(T.t, 2):
            v.append("t must be a power of 2")
            return v
    else:
        if T.t is not None:
            v.append(f"t is not a type {T.type} parameter")
    if T.type in ("III", "IV") and (T.theta is None or not is_power_of(T.theta, 3)):
        v.append("theta must be a power of 3")
        return v
    if T.type in ("V", "VI") and T.theta is not None:
        v.append(f"theta is not a type {T.type} parameter")

    if T.type == "I":
        if pr.two_order != 1 and T.t <= pr.two_order:
            v.append(f"t must exceed t̄={pr.two_order}")
    elif T.type == "II":
        if T.gbar0 is None and T.t != 8:
            v.append("t must be 8 when Gbar0 is not given")
        if T.gbar0 is not None:
            if T.t < 16:
                v.append("t must be at least 16 when Gbar0 is given")
            g0 = T.gbar0
            if g0.a != a or not g0.issubgroup(T.gbar):
                v.append("Gbar0 must be a subgroup of Gbar")
            else:
                idx = T.gbar.order // g0.order
                if pr.two_order == 4 and idx != 2:
                    v.append("Gbar0 must have index 2 in Gbar when t̄=4")
                elif idx > 2:
                    v.append("Gbar0 must have index at most 2 in Gbar")
                if not T.gbar.odd_part().issubgroup(g0):
                    v.append("Gbar0 must contain the odd part of Gbar")
    elif T.type == "III":
        if T.theta <= pr.three_order:
            v.append(f"theta must exceed θ̄={pr.three_order}")
    elif T.type == "IV":
        if T.theta < 3:
            v.append("theta must be a nontrivial power of 3")
    if T.gbar0 is not None and T.type != "II":
        v.append("Gbar0 is only defined for type II")

    factor = {"I": T.t, "II": T.t, "III": 8 * (T.theta or 1), "IV": 16 * (T.theta or 1), "V": 120, "VI": 240}
    expected = a * T.b * factor[T.type]
    if T.g != expected:
        v.append(f"g={T.g} must equal {expected}")
    return v


def _b_values(bbar: int, limit: int) -> list[int]:
    """All b = b̄ * prod p^e (e >= 1, p | b̄) with b <= limit."""
    out = [bbar]
    for p in factorize(bbar):
        grown = []
        for b in out:
            b *= p
            while b <= limit:
                grown.append(b)
                b *= p
        out = grown
    return sorted(b for b in out if b <= limit)


def _powers(base: int, start: int, limit: int) -> list[int]:
    out = []
    x = start
    while x <= limit:
        out.append(x)
        x *= base
    return out


@functools.lru_cache(maxsize=None)
def _subgroups(a: int) -> tuple[UnitSubgroup, ...]:
    return tuple(all_subgroups(a))


def enumerate_tuples(max_order: int) -> list[SpaceFormTuple]:
    """Every valid tuple with ``g <= max_order``, sorted canonically."""
    if max_order < 1:
        raise ValueError("max_order must be positive")
    found: list[SpaceFormTuple] = []
    base_factor = {"I": 1, "II": 8, "III": 24, "IV": 48, "V": 120, "VI": 240}
    for type_ in TYPES:
        base = base_factor[type_]
        for a in range(1, max_order // base + 1):
            if math.gcd(a, {"I": 2, "II": 2, "III": 6, "IV": 6, "V": 30, "VI": 30}[type_]) != 1:
                continue
            for gbar in _subgroups(a):
                if not admissible(gbar, type_, a)[0]:
                    continue
                found.extend(_tuples_for(type_, a, gbar, max_order))
    found.sort(key=SpaceFormTuple.sort_key)
    return found


def _tuples_for(type_: str, a: int, gbar: UnitSubgroup, max_order: int) -> list[SpaceFormTuple]:
    pr = profile(gbar)
    bbar = b_bar(gbar, type_)
    out = []
    if type_ == "I":
        start = 1 if pr.two_order == 1 else 2 * pr.two_order
        for b in _b_values(bbar, max_order // a):
            for t in _powers(2, start, max_order // (a * b)):
                out.append(SpaceFormTuple("I", a * b * t, a, gbar, b, t=t))
    elif type_ == "II":
        for b in _b_values(bbar, max_order // (8 * a)):
            out.append(SpaceFormTuple("II", 8 * a * b, a, gbar, b, t=8))
            for t in _powers(2, 16, max_order // (a * b)):
                for g0 in index_two_candidates(gbar, pr.two_order):
                    if gbar.odd_part().issubgroup(g0):
                        out.append(SpaceFormTuple("II", a * b * t, a, gbar, b, t=t, gbar0=g0))
    elif type_ in ("III", "IV"):
        factor = 8 if type_ == "III" else 16
        start = 3 * pr.three_order if type_ == "III" else 3
        for b in _b_values(bbar, max_order // (factor * 3 * a)):
            for theta in _powers(3, start, max_order // (factor * a * b)):
                out.append(SpaceFormTuple(type_, factor * a * b * theta, a, gbar, b, theta=theta))
    else:
        factor = 120 if type_ == "V" else 240
        for b in _b_values(bbar, max_order // (factor * a)):
            out.append(SpaceFormTuple(type_, factor * a * b, a, gbar, b))
    return [T for T in out if T.g <= max_order]
