"""Brute-force isomorphism and automorphism search on Cayley tables.

The search fixes a short generating sequence ``g_1, ..., g_k`` of the source
and backtracks over images ``h_1, ..., h_k`` in the target.  Candidates must
match an element signature (order, class size, number of square roots and
the same data for prime powers).  Each prefix is checked by extending the
partial map over ``<g_1, ..., g_j>`` along a BFS tree and testing every
edge.  When only existence matters, ``h_j`` ranges over orbit
representatives of the centralizer of ``h_1, ..., h_{j-1}`` acting by
conjugation, since composing an isomorphism with such a conjugation keeps
the earlier images.
"""

from __future__ import annotations

from collections import Counter
from collections.abc import Callable, Iterator

import numpy as np

from .errors import TooLarge
from .group import Group, GroupHom, _closure, center, derived_subgroup
from .numtheory import primes_dividing

ISO_ORDER_CAP = 1024


def _signature_table(G: Group) -> list[tuple]:
    cache = G.__dict__.get("_iso_signatures")
    if cache is not None:
        return cache
    T = G.table
    ids = np.arange(G.n)
    squares = T[ids, ids]
    sqrt_count = np.bincount(squares, minlength=G.n)
    orders = G.element_orders
    sizes = G.class_sizes
    base = [(int(orders[x]), int(sizes[x]), int(sqrt_count[x])) for x in range(G.n)]
    sigs = []
    for x in range(G.n):
        o = base[x][0]
        powers = tuple(base[G.power(x, p)] for p in primes_dividing(o)) if o > 1 else ()
        sigs.append((base[x], powers))
    G.__dict__["_iso_signatures"] = sigs
    return sigs


def invariant_summary(G: Group) -> tuple:
    """Cheap isomorphism invariants, compared before any search."""
    return (G.n, len(G.conjugacy_classes), tuple(sorted(Counter(_signature_table(G)).items())))


def _expensive_invariants(G: Group) -> tuple[int, int]:
    cache = G.__dict__.get("_iso_expensive")
    if cache is None:
        cache = (center(G).order, derived_subgroup(G).order)
        G.__dict__["_iso_expensive"] = cache
    return cache


class _Plan:
    """Generating sequence of the source plus BFS trees of its prefixes."""

    def __init__(self, G: Group):
        sigs = _signature_table(G)
        freq = Counter(sigs)
        rows = G.rows
        gens: list[int] = []
        elems = {0}
        while len(elems) < G.n:
            best = None
            for x in range(1, G.n):
                if x in elems:
                    continue
                size = len(_closure(rows, gens + [x], elems))
                key = (-size, freq[sigs[x]], x)
                if best is None or key < best[0]:
                    best = (key, x)
                    if size == G.n and freq[sigs[x]] == 1:
                        break
            x = best[1]
            gens.append(x)
            elems = _closure(rows, gens, elems)
        self.gens = gens
        # trees[j]: BFS over <g_1..g_{j+1}> as (element, parent, generator index)
        self.trees: list[list[tuple[int, int, int]]] = []
        for j in range(len(gens)):
            sub = gens[: j + 1]
            seen = {0}
            order = [(0, -1, -1)]
            for x, _, _ in order:
                rx = rows[x]
                for i, g in enumerate(sub):
                    y = rx[g]
                    if y not in seen:
                        seen.add(y)
                        order.append((y, x, i))
            self.trees.append(order)


def _plan(G: Group) -> _Plan:
    plan = G.__dict__.get("_iso_plan")
    if plan is None:
        plan = _Plan(G)
        G.__dict__["_iso_plan"] = plan
    return plan


def _extend(G: Group, H: Group, plan: _Plan, j: int, images: list[int]) -> dict[int, int] | None:
    """Extend ``g_i -> images[i]`` over ``<g_1..g_{j+1}>`` or return None."""
    rowsG, rowsH = G.rows, H.rows
    gens = plan.gens[: j + 1]
    img = {0: 0}
    for y, x, i in plan.trees[j][1:]:
        img[y] = rowsH[img[x]][images[i]]
    if len(set(img.values())) != len(img):
        return None
    for x, hx in img.items():
        rx, rhx = rowsG[x], rowsH[hx]
        for i, g in enumerate(gens):
            if img[rx[g]] != rhx[images[i]]:
                return None
    return img


def _conjugation_orbit_reps(H: Group, stabilizer: list[int], candidates: list[int]) -> list[int]:
    if len(stabilizer) <= 1:
        return candidates
    T, inv = H.table, H.inverse
    s = np.array(stabilizer, dtype=np.int64)
    reps = []
    seen: set[int] = set()
    for c in candidates:
        if c in seen:
            continue
        reps.append(c)
        seen.update(T[T[s, c], inv[s]].tolist())
    return reps


def iter_isomorphisms(
    G: Group,
    H: Group,
    *,
    up_to_inner: bool = False,
    cap: int | None = ISO_ORDER_CAP,
) -> Iterator[GroupHom]:
    """Yield isomorphisms ``G -> H`` with least images tried first.

    With ``up_to_inner`` only one isomorphism per coset of the inner
    automorphisms of ``H`` is guaranteed to appear, which is enough to
    decide existence quickly.
    """
    if cap is not None and G.n > cap and H.n > cap:
        raise TooLarge(f"orders {G.n} and {H.n} exceed the isomorphism cap {cap}")
    if G.n != H.n or invariant_summary(G) != invariant_summary(H):
        return
    if _expensive_invariants(G) != _expensive_invariants(H):
        return
    if G.n == 1:
        yield GroupHom(G, H, np.zeros(1, dtype=np.int64))
        return
    plan = _plan(G)
    sigG, sigH = _signature_table(G), _signature_table(H)
    by_sig: dict[tuple, list[int]] = {}
    for y in range(H.n):
        by_sig.setdefault(sigH[y], []).append(y)
    k = len(plan.gens)
    rowsH = H.rows
    images: list[int] = []

    def centralizer_of(elems: list[int], within: list[int]) -> list[int]:
        return [s for s in within if all(rowsH[s][e] == rowsH[e][s] for e in elems)]

    def search(j: int, stab: list[int]) -> Iterator[GroupHom]:
        cands = by_sig.get(sigG[plan.gens[j]], [])
        if up_to_inner:
            cands = _conjugation_orbit_reps(H, stab, cands)
        for h in cands:
            images.append(h)
            img = _extend(G, H, plan, j, images)
            if img is not None:
                if j + 1 == k:
                    arr = np.empty(G.n, dtype=np.int64)
                    for x, y in img.items():
                        arr[x] = y
                    yield GroupHom(G, H, arr)
                else:
                    yield from search(j + 1, centralizer_of([h], stab) if up_to_inner else stab)
            images.pop()

    yield from search(0, list(range(H.n)))


def is_isomorphic(G: Group, H: Group, cap: int | None = ISO_ORDER_CAP) -> GroupHom | None:
    """An explicit isomorphism ``G -> H``, or None when none exists."""
    return next(iter_isomorphisms(G, H, up_to_inner=True, cap=cap), None)


def automorphisms(G: Group) -> Iterator[np.ndarray]:
    for hom in iter_isomorphisms(G, G, cap=None):
        yield hom.images


def inner_automorphism_images(G: Group, gens: list[int]) -> set[tuple[int, ...]]:
    """Generator images of every inner automorphism."""
    T, inv = G.table, G.inverse
    g = np.array(gens, dtype=np.int64)
    conj = T[T[:, g], inv[:, None]]
    return {tuple(row) for row in conj.tolist()}


def is_inner(G: Group, alpha: np.ndarray) -> bool:
    gens = list(G.generators) or [0]
    return tuple(int(alpha[x]) for x in gens) in inner_automorphism_images(G, gens)


def find_automorphism(G: Group, predicate: Callable[[np.ndarray], bool]) -> np.ndarray | None:
    """First automorphism (least images first) satisfying ``predicate``."""
    for alpha in automorphisms(G):
        if predicate(alpha):
            return alpha
    return None


def extend_generator_images(G: Group, gens: list[int], H: Group, images: list[int]) -> np.ndarray | None:
    """The homomorphism ``G -> H`` sending ``gens[i]`` to ``images[i]``, or None
    if the generators do not generate ``G`` or no such homomorphism exists."""
    rowsG, rowsH = G.rows, H.rows
    img = {0: 0}
    frontier = [0]
    for x in frontier:
        for g, h in zip(gens, images):
            y = rowsG[x][g]
            hy = rowsH[img[x]][h]
            if y not in img:
                img[y] = hy
                frontier.append(y)
            elif img[y] != hy:
                return None
    if len(img) != G.n:
        return None
    arr = np.empty(G.n, dtype=np.int64)
    for x, y in img.items():
        arr[x] = y
    if not np.array_equal(arr[G.table], H.table[arr[:, None], arr[None, :]]):
        return None
    return arr
