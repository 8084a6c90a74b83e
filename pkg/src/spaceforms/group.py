"""Finite groups stored as Cayley tables.

Elements are the integers ``0..n-1`` and the identity is always ``0``.  A
:class:`Group` is validated when it is built and never mutated afterwards, so
derived data (inverses, element orders, conjugacy classes) is cached freely.
"""

from __future__ import annotations

import functools
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

import numpy as np

from .errors import NotAssociative, NotLatinSquare, NotNormal, TooLarge, WrongIdentity
from .numtheory import factorize, p_part

MAX_TABLE_ORDER = 2048


class Group:
    """A finite group given by its multiplication table.

    ``table[i, j]`` is the product ``i * j``.  Construction checks the
    identity row and column, associativity over all triples and the Latin
    square property, in that order.
    """

    def __init__(self, table: Sequence[Sequence[int]] | np.ndarray, *, name: str | None = None):
        arr = np.array(table, dtype=np.int64)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
            raise NotLatinSquare(f"table must be a nonempty square array, got shape {arr.shape}")
        n = arr.shape[0]
        if n > MAX_TABLE_ORDER:
            raise TooLarge(f"order {n} exceeds the table cap {MAX_TABLE_ORDER}")
        if arr.min() < 0 or arr.max() >= n:
            raise NotLatinSquare(f"entries must lie in 0..{n - 1}")
        ids = np.arange(n)
        if not (np.array_equal(arr[0], ids) and np.array_equal(arr[:, 0], ids)):
            raise WrongIdentity("row 0 and column 0 must be the identity permutation")
        _check_associative(arr)
        expected = np.arange(n)
        if not np.array_equal(np.sort(arr, axis=1), np.broadcast_to(expected, arr.shape)):
            raise NotLatinSquare("some row is not a permutation")
        if not np.array_equal(np.sort(arr, axis=0).T, np.broadcast_to(expected, arr.shape)):
            raise NotLatinSquare("some column is not a permutation")
        arr.setflags(write=False)
        self.n = n
        self.table = arr
        self.name = name

    @classmethod
    def trusted(cls, table: np.ndarray, *, name: str | None = None) -> Group:
        """Wrap a table derived from validated groups by an operation known to
        give a group (subgroup, quotient, checked product); skips the O(n^3) check."""
        arr = np.array(table, dtype=np.int64)
        n = arr.shape[0]
        if n > MAX_TABLE_ORDER:
            raise TooLarge(f"order {n} exceeds the table cap {MAX_TABLE_ORDER}")
        arr.setflags(write=False)
        G = cls.__new__(cls)
        G.n = n
        G.table = arr
        G.name = name
        return G

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"<Group{label} of order {self.n}>"

    def __len__(self) -> int:
        return self.n

    @functools.cached_property
    def rows(self) -> list[list[int]]:
        """The table as nested lists, for fast scalar lookups."""
        return self.table.tolist()

    @functools.cached_property
    def inverse(self) -> np.ndarray:
        inv = np.argmin(self.table, axis=1)  # the unique column holding 0
        inv.setflags(write=False)
        return inv

    @functools.cached_property
    def element_orders(self) -> np.ndarray:
        n = self.n
        ids = np.arange(n)
        orders = np.zeros(n, dtype=np.int64)
        orders[0] = 1
        cur = ids.copy()
        k = 1
        while not orders.all():
            k += 1
            cur = self.table[cur, ids]
            orders[(cur == 0) & (orders == 0)] = k
        orders.setflags(write=False)
        return orders

    def mul(self, x: int, y: int) -> int:
        return self.rows[x][y]

    def inv(self, x: int) -> int:
        return int(self.inverse[x])

    def power(self, x: int, k: int) -> int:
        k %= int(self.element_orders[x])
        r = self.rows
        out = 0
        for _ in range(k):
            out = r[out][x]
        return out

    def conj(self, g: int, x: int) -> int:
        """``g x g^-1``."""
        return self.rows[self.rows[g][x]][int(self.inverse[g])]

    def order(self, x: int) -> int:
        return int(self.element_orders[x])

    @functools.cached_property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    @functools.cached_property
    def is_cyclic(self) -> bool:
        return bool((self.element_orders == self.n).any())

    @functools.cached_property
    def conjugacy_classes(self) -> list[tuple[int, ...]]:
        """Classes ordered by least member, each sorted."""
        T, inv = self.table, self.inverse
        label = np.full(self.n, -1, dtype=np.int64)
        classes: list[tuple[int, ...]] = []
        for x in range(self.n):
            if label[x] >= 0:
                continue
            cls = np.unique(T[T[:, x], inv])
            label[cls] = len(classes)
            classes.append(tuple(int(c) for c in cls))
        self.__dict__["_class_label"] = label
        return classes

    @property
    def class_label(self) -> np.ndarray:
        self.conjugacy_classes
        return self.__dict__["_class_label"]

    @functools.cached_property
    def class_sizes(self) -> np.ndarray:
        sizes = np.array([len(c) for c in self.conjugacy_classes], dtype=np.int64)
        return sizes[self.class_label]

    @functools.cached_property
    def involutions(self) -> list[int]:
        return [int(x) for x in np.flatnonzero(self.element_orders == 2)]

    @functools.cached_property
    def generators(self) -> tuple[int, ...]:
        """A small generating set, chosen greedily by decreasing element order."""
        order = sorted(range(1, self.n), key=lambda x: (-self.order(x), x))
        gens: list[int] = []
        elems = {0}
        for x in order:
            if len(elems) == self.n:
                break
            if x not in elems:
                gens.append(x)
                elems = _closure(self.rows, gens, elems)
        return tuple(gens)

    def same_table(self, other: Group) -> bool:
        return self.n == other.n and bool(np.array_equal(self.table, other.table))


def _check_associative(T: np.ndarray) -> None:
    n = T.shape[0]
    T = T.astype(np.int16 if n < 2**15 else np.int32)
    step = max(1, 2_000_000 // (n * n))
    for start in range(1, n, step):
        xs = np.arange(start, min(n, start + step))
        left = T[T[xs]]  # left[x, y, z] = (x*y)*z
        right = T[xs][:, T]  # right[x, y, z] = x*(y*z)
        if not np.array_equal(left, right):
            x, y, z = np.argwhere(left != right)[0]
            raise NotAssociative((int(xs[x]), int(y), int(z)))


def group_from_table(rows: Sequence[Sequence[int]] | np.ndarray, name: str | None = None) -> Group:
    """Validate a Cayley table and wrap it as a :class:`Group`."""
    return Group(rows, name=name)


def _closure(rows: list[list[int]], gens: Sequence[int], start: Iterable[int]) -> set[int]:
    """Subgroup generated by ``gens``; ``start`` must be a subgroup inside it."""
    elems = set(start)
    elems.add(0)
    queue = list(elems)
    push = queue.append
    for x in queue:
        rx = rows[x]
        for g in gens:
            y = rx[g]
            if y not in elems:
                elems.add(y)
                push(y)
    return elems


class Subgroup:
    """A subgroup of ``parent`` given by its sorted element ids.

    Closure and Lagrange's theorem are checked on construction.
    """

    def __init__(self, parent: Group, elements: Iterable[int]):
        elems = sorted({int(e) for e in elements})
        if not elems or elems[0] != 0:
            raise ValueError("a subgroup must contain the identity 0")
        if elems[-1] >= parent.n:
            raise ValueError("element id out of range")
        mask = np.zeros(parent.n, dtype=bool)
        mask[elems] = True
        idx = np.array(elems, dtype=np.int64)
        if not mask[parent.table[np.ix_(idx, idx)]].all():
            raise ValueError("element set is not closed under multiplication")
        if parent.n % len(elems):
            raise ValueError("subgroup order does not divide the group order")
        mask.setflags(write=False)
        idx.setflags(write=False)
        self.parent = parent
        self.elements: tuple[int, ...] = tuple(elems)
        self.ids = idx
        self.mask = mask

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, x: object) -> bool:
        return isinstance(x, (int, np.integer)) and 0 <= x < self.parent.n and bool(self.mask[x])

    def __iter__(self):
        return iter(self.elements)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subgroup):
            return NotImplemented
        return other.parent is self.parent and other.elements == self.elements

    def __hash__(self) -> int:
        return hash((id(self.parent), self.elements))

    def __repr__(self) -> str:
        return f"<Subgroup of order {self.order} in {self.parent!r}>"

    def issubset(self, other: Subgroup) -> bool:
        return bool(other.mask[self.ids].all())

    def is_normal(self) -> bool:
        G = self.parent
        conj = G.table[G.table[:, self.ids], G.inverse[:, None]]
        return bool(self.mask[conj].all())

    @functools.cached_property
    def is_cyclic(self) -> bool:
        return bool((self.parent.element_orders[self.ids] == self.order).any())

    @functools.cached_property
    def generators(self) -> tuple[int, ...]:
        rows = self.parent.rows
        order = sorted(self.elements[1:], key=lambda x: (-self.parent.order(x), x))
        gens: list[int] = []
        elems = {0}
        for x in order:
            if len(elems) == self.order:
                break
            if x not in elems:
                gens.append(x)
                elems = _closure(rows, gens, elems)
        return tuple(gens)

    @functools.cached_property
    def _as_group(self) -> tuple[Group, np.ndarray]:
        G = self.parent
        local = np.full(G.n, -1, dtype=np.int64)
        local[self.ids] = np.arange(self.order)
        table = local[G.table[np.ix_(self.ids, self.ids)]]
        return Group.trusted(table), self.ids

    def as_group(self) -> tuple[Group, np.ndarray]:
        """The subgroup as a standalone group, with ``embedding[local] = parent id``."""
        return self._as_group

    def image(self, images: np.ndarray) -> list[int]:
        return sorted({int(images[x]) for x in self.elements})


def trivial_subgroup(G: Group) -> Subgroup:
    return Subgroup(G, [0])


def whole_group(G: Group) -> Subgroup:
    return Subgroup(G, range(G.n))


def subgroup_generated(G: Group, S: Iterable[int]) -> Subgroup:
    """Smallest subgroup containing ``S``."""
    gens: list[int] = []
    elems = {0}
    for s in S:
        s = int(s)
        if s not in elems:
            gens.append(s)
            elems = _closure(G.rows, gens, elems)
    return Subgroup(G, elems)


def normal_closure(G: Group, S: Iterable[int]) -> Subgroup:
    """Smallest normal subgroup containing ``S``."""
    label = G.class_label
    classes = G.conjugacy_classes
    seeds: list[int] = []
    seen: set[int] = set()
    for s in S:
        c = int(label[int(s)])
        if c not in seen:
            seen.add(c)
            seeds.extend(classes[c])
    return subgroup_generated(G, seeds)


def derived_subgroup(G: Group) -> Subgroup:
    T, inv = G.table, G.inverse
    xy = T
    yx_inv = inv[T.T]  # (y*x)^-1 indexed [x, y]
    commutators = np.unique(T[xy, yx_inv])
    return subgroup_generated(G, commutators.tolist())


def center(G: Group) -> Subgroup:
    T = G.table
    return Subgroup(G, np.flatnonzero((T == T.T).all(axis=1)).tolist())


def centralizer(G: Group, S: Subgroup | Iterable[int]) -> Subgroup:
    ids = _ids(S)
    T = G.table
    mask = (T[:, ids] == T[ids, :].T).all(axis=1)
    return Subgroup(G, np.flatnonzero(mask).tolist())


def normalizer(G: Group, S: Subgroup) -> Subgroup:
    T = G.table
    conj = T[T[:, S.ids], G.inverse[:, None]]
    return Subgroup(G, np.flatnonzero(S.mask[conj].all(axis=1)).tolist())


def _ids(S: Subgroup | Iterable[int]) -> np.ndarray:
    if isinstance(S, Subgroup):
        return S.ids
    return np.array(sorted({int(s) for s in S}) or [0], dtype=np.int64)


def sylow_subgroup(G: Group, p: int) -> Subgroup:
    """A Sylow ``p``-subgroup grown by normalizer ascent.

    At each step the least element ``x`` of ``N(P)`` outside ``P`` with
    ``x^p`` in ``P`` is adjoined, so the result is deterministic.
    """
    target = p_part(G.n, p)
    P = trivial_subgroup(G)
    while P.order < target:
        N = normalizer(G, P)
        rows = G.rows
        for x in N.elements:
            if x in P:
                continue
            y = 0
            for _ in range(p):
                y = rows[y][x]
            if y in P:
                P = Subgroup(G, _closure(rows, list(P.generators) + [x], P.elements))
                break
        else:  # pragma: no cover - Sylow's theorem
            raise AssertionError("normalizer ascent stalled")
    return P


def odd_core(G: Group) -> Subgroup:
    """The largest normal subgroup of odd order.

    An element lies in it exactly when its normal closure has odd order, so
    one normal-closure test per conjugacy class of odd-order elements is
    enough; successes are joined into the running core.
    """
    K = trivial_subgroup(G)
    orders = G.element_orders
    for cls in G.conjugacy_classes:
        x = cls[0]
        if orders[x] % 2 == 0 or x in K:
            continue
        N = normal_closure(G, [x])
        if N.order % 2:
            K = subgroup_generated(G, K.generators + N.generators)
    return K


def core_of(G: Group, H: Subgroup) -> Subgroup:
    """Intersection of all conjugates of ``H``."""
    T = G.table
    conj = T[T[:, H.ids], G.inverse[:, None]]  # conj[g, h] = g h g^-1
    keep = np.ones(G.n, dtype=bool)
    for g in range(G.n):
        m = np.zeros(G.n, dtype=bool)
        m[conj[g]] = True
        keep &= m
    return Subgroup(G, np.flatnonzero(keep).tolist())


def elements_of_order_prime_to(G: Group, p: int) -> list[int]:
    return [x for x in range(G.n) if G.order(x) % p]


def perfect_core(G: Group) -> Subgroup:
    """Last term of the derived series."""
    H = whole_group(G)
    while True:
        HG, emb = H.as_group()
        D = derived_subgroup(HG)
        if D.order == HG.n:
            return H
        H = Subgroup(G, emb[D.ids].tolist())


@dataclass(frozen=True, eq=False)
class GroupHom:
    """A homomorphism given by the image of every source element."""

    source: Group
    target: Group
    images: np.ndarray

    def __post_init__(self) -> None:
        img = np.asarray(self.images, dtype=np.int64)
        if img.shape != (self.source.n,):
            raise ValueError("images must list one target id per source element")
        if img[0] != 0:
            raise ValueError("the identity must map to the identity")
        lhs = img[self.source.table]
        rhs = self.target.table[img[:, None], img[None, :]]
        if not np.array_equal(lhs, rhs):
            raise ValueError("map is not a homomorphism")
        img.setflags(write=False)
        object.__setattr__(self, "images", img)

    def __call__(self, x: int) -> int:
        return int(self.images[x])

    def is_bijective(self) -> bool:
        return self.source.n == self.target.n and len(np.unique(self.images)) == self.source.n

    def kernel(self) -> Subgroup:
        return Subgroup(self.source, np.flatnonzero(self.images == 0).tolist())

    def inverse(self) -> GroupHom:
        if not self.is_bijective():
            raise ValueError("only bijections can be inverted")
        inv = np.empty(self.source.n, dtype=np.int64)
        inv[self.images] = np.arange(self.source.n)
        return GroupHom(self.target, self.source, inv)

    def compose(self, first: GroupHom) -> GroupHom:
        """``self ∘ first``."""
        return GroupHom(first.source, self.target, self.images[first.images])


def coset_labels(G: Group, N: Subgroup) -> np.ndarray:
    """Left coset index of each element, cosets numbered by least member."""
    label = np.full(G.n, -1, dtype=np.int64)
    k = 0
    for g in range(G.n):
        if label[g] < 0:
            label[G.table[g, N.ids]] = k
            k += 1
    return label


def quotient_group(G: Group, N: Subgroup) -> tuple[Group, GroupHom]:
    if not N.is_normal():
        raise NotNormal(f"subgroup of order {N.order} is not normal")
    label = coset_labels(G, N)
    m = G.n // N.order
    reps = np.array([int(np.argmax(label == k)) for k in range(m)], dtype=np.int64)
    Q = Group.trusted(label[G.table[np.ix_(reps, reps)]])
    return Q, GroupHom(G, Q, label)


def left_transversal(G: Group, H: Subgroup) -> list[int]:
    """Least element of each left coset ``gH``, in coset order."""
    label = coset_labels(G, H)
    m = G.n // H.order
    return [int(np.argmax(label == k)) for k in range(m)]


def order_prime_parts(n: int) -> dict[int, int]:
    return {p: p**e for p, e in factorize(n).items()}
