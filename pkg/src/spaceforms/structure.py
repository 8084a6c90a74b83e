"""Shape tests for 2-groups and binary dihedral groups, and the class equation
that singles out the binary icosahedral group among perfect groups."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import BadParameter
from .group import Group, subgroup_generated
from .numtheory import is_power_of, primes_dividing


def quaternionic_witness(G: Group) -> tuple[int, int] | None:
    """``(x, y)`` with ``<x>`` of index 2, ``y^2`` the involution of ``<x>``
    and ``y x y^-1 = x^-1``; None when ``G`` is not a generalized quaternion group."""
    if G.n < 8 or not is_power_of(G.n, 2):
        return None
    return _dicyclic_witness(G, G.n // 4)


def _dicyclic_witness(G: Group, n: int) -> tuple[int, int] | None:
    orders = G.element_orders
    rows = G.rows
    for x in range(G.n):
        if orders[x] != 2 * n:
            continue
        X = subgroup_generated(G, [x])
        x_inv = G.inv(x)
        xn = G.power(x, n)
        for y in range(G.n):
            if y in X:
                continue
            if rows[y][y] == xn and G.conj(y, x) == x_inv:
                return x, y
    return None


def shape_of_2group(G: Group) -> str:
    """``"cyclic"``, ``"quaternionic"`` or ``"other"`` for a group of 2-power order."""
    if not is_power_of(G.n, 2):
        raise BadParameter(f"order {G.n} is not a power of 2")
    if G.is_cyclic:
        return "cyclic"
    if quaternionic_witness(G) is not None:
        return "quaternionic"
    return "other"


def binary_dihedral_witness(G: Group) -> tuple[int, int] | None:
    """Generators ``x, y`` with ``x^{2n} = 1``, ``y x y^-1 = x^-1``, ``y^2 = x^n``
    where ``|G| = 4n``; None if no such pair exists."""
    if G.n % 4:
        return None
    return _dicyclic_witness(G, G.n // 4)


def is_binary_dihedral(G: Group) -> bool:
    return binary_dihedral_witness(G) is not None


@dataclass(frozen=True, order=True)
class ClassEquationSolution:
    """``1/c1 + 1/c2 + 1/c3 = 1 + 2/g`` with ``c1 <= c2 <= c3``."""

    c1: int
    c2: int
    c3: int
    g: int

    def __post_init__(self) -> None:
        if not self.c1 <= self.c2 <= self.c3:
            raise ValueError("c1 <= c2 <= c3 required")
        lhs = Fraction(1, self.c1) + Fraction(1, self.c2) + Fraction(1, self.c3)
        if lhs != 1 + Fraction(2, self.g):
            raise ValueError(f"{self} does not satisfy the class equation")


def _least_new_prime(g: int, used: tuple[int, ...]) -> int | None:
    for p in primes_dividing(g):
        if all(c % p for c in used):
            return p
    return None


def _prime_numbering_ok(c: tuple[int, int, int], g: int) -> bool:
    # c1 even; each later c_i is divisible by the least prime of g dividing
    # none of the earlier c's; every c_i divides g.
    if c[0] % 2 or any(g % ci for ci in c):
        return False
    for i in (1, 2):
        p = _least_new_prime(g, c[:i])
        if p is None or c[i] % p:
            return False
    return True


def solve_class_equation(max_g: int) -> list[ClassEquationSolution]:
    """Exact rational search for the class equation of a perfect group in
    which every noncentral cyclic subgroup has binary dihedral normalizer.

    Here ``g`` is half the group order and ``c1, c2, c3`` are half the orders
    of representatives of the three classes of maximal cyclic subgroups.
    Besides ``c1 <= c2 <= c3`` the triple must follow the prime numbering:
    ``c1`` is even and ``c2``, ``c3`` are divisible by successively new primes
    of ``g``.  Since ``1/c1 + 1/c2 + 1/c3 > 1`` forces ``c1 < 3`` and then
    ``c2 < 4``, only ``c3`` needs an open-ended scan, which stops once
    ``1/c1 + 1/c2 + 1/c3 - 1 < 2/max_g``.
    """
    if max_g < 2:
        raise BadParameter("max_g must be at least 2")
    found = []
    for c1 in range(2, 3):
        for c2 in range(c1, 4):
            head = Fraction(1, c1) + Fraction(1, c2)
            c3 = c2
            while True:
                excess = head + Fraction(1, c3) - 1
                if excess < Fraction(2, max_g):
                    break
                if excess > 0 and (2 / excess).denominator == 1:
                    g = int(2 / excess)
                    if 2 <= g <= max_g and _prime_numbering_ok((c1, c2, c3), g):
                        found.append(ClassEquationSolution(c1, c2, c3, g))
                c3 += 1
    return sorted(found)
