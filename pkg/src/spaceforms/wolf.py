"""Groups from the two-generator-plus-involution presentations

    A^m = B^n = 1,  B A B^-1 = A^r,  R^2 = B^(n/2),  R A R^-1 = A^l,  R B R^-1 = B^k

and a demonstration that six different parameter sets give one group.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import BadParameter, InconsistentPresentation, NotAssociative, TableError
from .group import Group
from .isomorphism import is_isomorphic
from .recognition import ClassificationResult, classify
from .tuples import SpaceFormTuple


@dataclass(frozen=True)
class WolfTypeIIParams:
    m: int
    n: int
    r: int
    k: int
    l: int

    def __post_init__(self) -> None:
        if self.m < 1 or self.n < 2 or self.n % 2:
            raise BadParameter(f"need m >= 1 and n even, got m={self.m}, n={self.n}")
        if math.gcd(self.r, self.m) != 1:
            raise BadParameter(f"r={self.r} must be prime to m={self.m}")
        object.__setattr__(self, "r", self.r % self.m)
        object.__setattr__(self, "l", self.l % self.m)
        object.__setattr__(self, "k", self.k % self.n)

    def __str__(self) -> str:
        return f"({self.m},{self.n},{self.r},{self.k},{self.l})"


DUPLICATED_PARAMS = (
    (3, 20, -1, -1, 1),
    (3, 20, -1, -1, -1),
    (5, 12, -1, -1, 1),
    (5, 12, -1, -1, -1),
    (15, 4, -1, -1, 4),
    (15, 4, -1, -1, 11),
)


def build_wolf_II(p: WolfTypeIIParams) -> Group:
    """Cayley table on normal forms ``A^i B^j R^e`` numbered ``(e n + j) m + i``.

    Moving ``R`` and ``B`` to the right uses ``R A = A^l R``, ``R B = B^k R``
    and ``B A = A^r B``; the resulting table is validated in full, so
    parameters that do not define a group of order ``2mn`` are rejected.
    """
    m, n = p.m, p.n
    N = 2 * m * n
    ids = np.arange(N)
    e, rest = np.divmod(ids, m * n)
    j, i = np.divmod(rest, m)
    r_pow = np.array([pow(p.r, jj, m) for jj in range(n)], dtype=np.int64)
    l_pow = np.array([1 % m, p.l], dtype=np.int64)
    k_pow = np.array([1, p.k], dtype=np.int64)
    E1, J1, I1 = e[:, None], j[:, None], i[:, None]
    E2, J2, I2 = e[None, :], j[None, :], i[None, :]
    new_i = (I1 + I2 * l_pow[E1] % m * r_pow[J1]) % m
    new_j = J1 + J2 * k_pow[E1] + (n // 2) * (E1 * E2)
    new_e = (E1 + E2) % 2
    table = (new_e * n + new_j % n) * m + new_i
    try:
        return Group(table, name=f"Wolf{p}")
    except NotAssociative as err:
        raise InconsistentPresentation(f"parameters {p} are inconsistent: {err}", err.triple) from err
    except TableError as err:
        raise InconsistentPresentation(f"parameters {p} are inconsistent: {err}", None) from err


@dataclass(frozen=True, eq=False)
class DuplicationReport:
    params: tuple[WolfTypeIIParams, ...]
    groups: tuple[Group, ...]
    isomorphic: dict[tuple[int, int], bool]
    classifications: tuple[ClassificationResult, ...]

    @property
    def all_isomorphic(self) -> bool:
        return all(self.isomorphic.values())

    @property
    def shared_tuple(self) -> SpaceFormTuple | None:
        tuples = {c.tuple for c in self.classifications}
        if len(tuples) == 1:
            return next(iter(tuples))
        return None

    def lines(self) -> list[str]:
        out = [f"{p}: order {G.n}, {c}" for p, G, c in zip(self.params, self.groups, self.classifications)]
        iso = sum(self.isomorphic.values())
        out.append(f"isomorphic pairs: {iso}/{len(self.isomorphic)}")
        out.append(f"shared tuple: {self.shared_tuple}")
        return out


def duplication_report() -> DuplicationReport:
    params = tuple(WolfTypeIIParams(*q) for q in DUPLICATED_PARAMS)
    groups = tuple(build_wolf_II(p) for p in params)
    iso = {
        (x, y): is_isomorphic(groups[x], groups[y]) is not None
        for x, y in itertools.combinations(range(len(groups)), 2)
    }
    return DuplicationReport(params, groups, iso, tuple(classify(G) for G in groups))
