"""The unit group of ``Z/a`` and the shape conditions on its subgroups.

The automorphism group of a cyclic group of order ``a`` is ``(Z/a)*``, with
``u`` acting as the ``u``-th power map.  The image of a space-form group in
that automorphism group is recorded as a :class:`UnitSubgroup`, and each of
the six structure types restricts which images may occur.
"""

from __future__ import annotations

import functools
import math
import re
from dataclasses import dataclass, field
from functools import cached_property

from .errors import TooLarge, TupleParseError
from .numtheory import factorize, multiplicative_order, odd_part, p_part

SUBGROUP_CAP = 10_000

TYPES = ("I", "II", "III", "IV", "V", "VI")


def _identity(a: int) -> int:
    return 1 % a


@dataclass(frozen=True)
class UnitGroup:
    """``(Z/a)*`` as a sorted residue list; ``a = 1`` has the single residue 0."""

    a: int
    residues: tuple[int, ...] = field(init=False)

    def __post_init__(self) -> None:
        if self.a < 1:
            raise ValueError(f"modulus must be positive, got {self.a}")
        res = (0,) if self.a == 1 else tuple(u for u in range(1, self.a) if math.gcd(u, self.a) == 1)
        object.__setattr__(self, "residues", res)

    @property
    def order(self) -> int:
        return len(self.residues)

    @property
    def identity(self) -> int:
        return _identity(self.a)

    def mul(self, u: int, v: int) -> int:
        return u * v % self.a

    def element_order(self, u: int) -> int:
        return multiplicative_order(u, self.a)


def unit_group(a: int) -> UnitGroup:
    return UnitGroup(a)


@dataclass(frozen=True)
class UnitSubgroup:
    """A subgroup of ``(Z/a)*`` stored as its sorted residues."""

    a: int
    residues: tuple[int, ...]

    def __post_init__(self) -> None:
        res = tuple(sorted({r % self.a for r in self.residues}))
        object.__setattr__(self, "residues", res)
        one = _identity(self.a)
        if one not in res:
            raise ValueError(f"{self} does not contain the identity")
        if any(math.gcd(r, self.a) != 1 for r in res if self.a > 1):
            raise ValueError(f"{self} contains a non-unit")
        rs = set(res)
        if any(u * v % self.a not in rs for u in res for v in res):
            raise ValueError(f"{self} is not closed under multiplication")

    @classmethod
    def _trusted(cls, a: int, residues) -> UnitSubgroup:
        # skips validation; callers pass a set already known to be a subgroup
        obj = object.__new__(cls)
        object.__setattr__(obj, "a", a)
        object.__setattr__(obj, "residues", tuple(sorted(residues)))
        return obj

    @classmethod
    def trivial(cls, a: int) -> UnitSubgroup:
        return cls(a, (_identity(a),))

    @classmethod
    def generated(cls, a: int, gens) -> UnitSubgroup:
        one = _identity(a)
        elems = {one}
        frontier = [one]
        for x in frontier:
            for g in gens:
                y = x * g % a
                if y not in elems:
                    elems.add(y)
                    frontier.append(y)
        if any(math.gcd(g, a) != 1 for g in gens if a > 1):
            raise ValueError(f"generators {list(gens)} are not all units mod {a}")
        return cls._trusted(a, elems)

    @property
    def order(self) -> int:
        return len(self.residues)

    def __len__(self) -> int:
        return len(self.residues)

    def __contains__(self, u: object) -> bool:
        return u in self.residues

    def __str__(self) -> str:
        return f"a={self.a};[{','.join(map(str, self.residues))}]"

    def issubgroup(self, other: UnitSubgroup) -> bool:
        return self.a == other.a and set(self.residues) <= set(other.residues)

    def element_order(self, u: int) -> int:
        return multiplicative_order(u, self.a)

    @cached_property
    def is_cyclic(self) -> bool:
        return any(self.element_order(u) == self.order for u in self.residues)

    def part(self, primes) -> UnitSubgroup:
        """Elements whose order only involves ``primes`` (a Sylow product)."""
        keep = [u for u in self.residues if all(p in primes for p in factorize(self.element_order(u)))]
        return UnitSubgroup(self.a, tuple(keep))

    def odd_part(self) -> UnitSubgroup:
        return UnitSubgroup(self.a, tuple(u for u in self.residues if self.element_order(u) % 2))

    def two_part(self) -> UnitSubgroup:
        return self.part({2})

    def subgroup_of_order(self, m: int) -> UnitSubgroup:
        """The unique subgroup of order ``m`` of a cyclic subgroup."""
        if not self.is_cyclic or self.order % m:
            raise ValueError(f"{self} has no unique subgroup of order {m}")
        return UnitSubgroup(self.a, tuple(u for u in self.residues if m % self.element_order(u) == 0))

    def least_generator(self) -> int:
        """Least residue generating this (cyclic) subgroup."""
        for u in self.residues:
            if self.element_order(u) == self.order:
                return u
        raise ValueError(f"{self} is not cyclic")


def parse_unit_subgroup(text: str) -> UnitSubgroup:
    """Inverse of ``str(UnitSubgroup)``: ``"a=15;[1,4,11,14]"``."""
    m = re.fullmatch(r"a=(\d+);\[([\d,\s]*)\]", text.strip())
    if not m:
        raise TupleParseError("unit_subgroup", f"cannot parse {text!r}")
    a = int(m.group(1))
    body = m.group(2).strip()
    residues = tuple(int(r) for r in body.split(",")) if body else ()
    try:
        return UnitSubgroup(a, residues or (_identity(a),))
    except ValueError as err:
        raise TupleParseError("unit_subgroup", str(err)) from None


def all_subgroups(U: UnitGroup | int, cap: int = SUBGROUP_CAP) -> list[UnitSubgroup]:
    """Every subgroup of ``(Z/a)*`` once, sorted by (order, residues).

    Subgroups are joins of cyclic subgroups, so starting from the cyclic ones
    and closing under joins with cyclic subgroups reaches all of them.
    """
    if isinstance(U, int):
        U = unit_group(U)
    if U.order > cap:
        raise TooLarge(f"|(Z/{U.a})*| = {U.order} exceeds the subgroup cap {cap}")
    a = U.a
    cyclics: dict[tuple[int, ...], frozenset[int]] = {}
    for u in U.residues:
        c = UnitSubgroup.generated(a, [u]).residues
        cyclics[c] = frozenset(c)
    found: set[frozenset[int]] = set(cyclics.values())
    frontier = list(found)
    cyc = list(cyclics.values())
    while frontier:
        nxt = []
        for S in frontier:
            for C in cyc:
                if C <= S:
                    continue
                J = frozenset(s * c % a for s in S for c in C)
                if J not in found:
                    found.add(J)
                    nxt.append(J)
        frontier = nxt
    subs = [UnitSubgroup._trusted(a, S) for S in found]
    subs.sort(key=lambda s: (s.order, s.residues))
    return subs


@dataclass(frozen=True)
class GbarProfile:
    """Prime-part decomposition of a subgroup of ``(Z/a)*``."""

    order: int
    odd_order: int
    two_part: str  # trivial | Z/2 | Z/2xZ/2 | Z/4 | other
    two_order: int
    three_order: int
    is_cyclic: bool
    two_part_elementary: bool
    odd_part_cyclic: bool
    prime_to_a: bool
    prime_to_2a: bool
    prime_to_6a: bool
    prime_to_30a: bool


@functools.lru_cache(maxsize=4096)
def profile(Hbar: UnitSubgroup) -> GbarProfile:
    a = Hbar.a
    order = Hbar.order
    two = Hbar.two_part()
    exps = {Hbar.element_order(u) for u in two.residues}
    if two.order == 1:
        shape = "trivial"
    elif two.order == 2:
        shape = "Z/2"
    elif two.order == 4:
        shape = "Z/4" if 4 in exps else "Z/2xZ/2"
    else:
        shape = "other"
    odd = Hbar.odd_part()

    def prime_to(m: int) -> bool:
        return math.gcd(order, m) == 1

    return GbarProfile(
        order=order,
        odd_order=odd_part(order),
        two_part=shape,
        two_order=p_part(order, 2),
        three_order=p_part(order, 3),
        is_cyclic=Hbar.is_cyclic,
        two_part_elementary=max(exps) <= 2,
        odd_part_cyclic=odd.is_cyclic,
        prime_to_a=prime_to(a),
        prime_to_2a=prime_to(2 * a),
        prime_to_6a=prime_to(6 * a),
        prime_to_30a=prime_to(30 * a),
    )


def admissible(Hbar: UnitSubgroup, type_: str, a: int) -> tuple[bool, str]:
    """Whether ``Hbar`` may be the image of a group of the given type.

    Returns ``(ok, reason)``; ``reason`` names the violated clause.
    """
    if Hbar.a != a:
        return False, f"modulus {Hbar.a} differs from a={a}"
    if type_ not in TYPES:
        return False, f"unknown type {type_!r}"
    pr = profile(Hbar)
    odd = pr.odd_order
    if type_ == "I":
        if not pr.is_cyclic:
            return False, "Gbar must be cyclic"
        if not pr.prime_to_a:
            return False, "|Gbar| must be prime to a"
    elif type_ == "II":
        if not pr.odd_part_cyclic or math.gcd(odd, 2 * a) != 1:
            return False, "odd part of Gbar must be cyclic of order prime to 2a"
        if not pr.two_part_elementary or pr.two_order > 4:
            return False, "2-part of Gbar must be elementary abelian of rank <= 2"
    elif type_ == "III":
        rest = odd // pr.three_order
        if not pr.is_cyclic or pr.two_order != 1 or math.gcd(rest, 6 * a) != 1:
            return False, "Gbar must be a cyclic 3-group times a cyclic group of order prime to 6a"
    elif type_ == "IV":
        if not pr.is_cyclic or pr.two_order > 2 or math.gcd(odd, 6 * a) != 1:
            return False, "Gbar must be cyclic of order prime to 6a times a group of order 1 or 2"
    elif type_ == "V":
        if not pr.is_cyclic or not pr.prime_to_30a:
            return False, "Gbar must be cyclic of order prime to 30a"
    elif type_ == "VI":
        if not pr.is_cyclic or pr.two_order > 2 or math.gcd(odd, 30 * a) != 1:
            return False, "Gbar must be cyclic of order prime to 30a times a group of order 1 or 2"
    return True, ""


def b_bar(Hbar: UnitSubgroup, type_: str) -> int:
    """Order of the factor of ``Hbar`` that ``B`` surjects onto."""
    pr = profile(Hbar)
    if type_ == "III":
        return pr.odd_order // pr.three_order
    return pr.odd_order
