"""Direct and semidirect products, and the order-4 cyclic extension.

All products number their elements lexicographically on (outer, inner)
coordinates, so ``id = outer * |inner| + inner`` and the identity stays 0.
"""

from __future__ import annotations

from collections.abc import Sequence

import numpy as np

from .errors import NotAnAction, NotAnAutomorphism, PreconditionViolated
from .group import Group


def is_automorphism(N: Group, images: Sequence[int] | np.ndarray) -> bool:
    img = np.asarray(images, dtype=np.int64)
    if img.shape != (N.n,) or img[0] != 0 or len(np.unique(img)) != N.n:
        return False
    return bool(np.array_equal(img[N.table], N.table[img[:, None], img[None, :]]))


def direct_product(outer: Group, inner: Group) -> Group:
    """``outer x inner`` with ``id = o * |inner| + i``."""
    trivial = np.broadcast_to(np.arange(inner.n), (outer.n, inner.n))
    return _semidirect_table(inner, outer, trivial)


def semidirect_product(N: Group, H: Group, action: Sequence[Sequence[int]] | np.ndarray) -> Group:
    """``N : H`` where ``action[h]`` is the automorphism of ``N`` induced by ``h``.

    Elements are pairs ``(n, h)`` numbered ``h * |N| + n``, multiplied as
    ``(n1, h1)(n2, h2) = (n1 * action[h1](n2), h1 h2)``.
    """
    act = np.asarray(action, dtype=np.int64)
    if act.shape != (H.n, N.n):
        raise NotAnAction(f"action must be a {H.n} x {N.n} array, got {act.shape}")
    for h in range(H.n):
        if not is_automorphism(N, act[h]):
            raise NotAnAutomorphism(f"image of element {h} is not an automorphism")
    # action[h1 h2] must equal action[h1] o action[h2]
    lhs = act[H.table]  # lhs[h1, h2, n] = action[h1 h2](n)
    rhs = np.take_along_axis(
        np.broadcast_to(act[:, None, :], (H.n, H.n, N.n)),
        np.broadcast_to(act[None, :, :], (H.n, H.n, N.n)),
        axis=2,
    )  # rhs[h1, h2, n] = action[h1](action[h2](n))
    bad = np.argwhere((lhs != rhs).any(axis=2))
    if len(bad):
        h1, h2 = bad[0]
        raise NotAnAction(f"action is not a homomorphism at ({int(h1)}, {int(h2)})")
    return _semidirect_table(N, H, act)


def _semidirect_table(N: Group, H: Group, act: np.ndarray) -> Group:
    n = N.n * H.n
    ids = np.arange(n)
    h, k = ids // N.n, ids % N.n
    hh = H.table[h[:, None], h[None, :]]
    twisted = act[h[:, None], k[None, :]]
    kk = N.table[k[:, None], twisted]
    return Group.trusted(hh * N.n + kk)


def adjoin_order4(K: Group, alpha: Sequence[int] | np.ndarray, z: int) -> Group:
    """Extend ``K`` by an element ``phi`` with ``phi k phi^-1 = alpha(k)`` and ``phi^2 = z``.

    Elements are ``(k, e)`` for ``k * phi^e`` numbered ``e * |K| + k``.
    """
    a = np.asarray(alpha, dtype=np.int64)
    problems = []
    if not (0 <= z < K.n) or not np.array_equal(K.table[z], K.table[:, z]):
        problems.append(f"z={z} is not central")
    if not is_automorphism(K, a):
        problems.append("alpha is not an automorphism")
    else:
        if a[z] != z:
            problems.append(f"alpha does not fix z (alpha(z)={int(a[z])})")
        if not np.array_equal(a[a], np.arange(K.n)):
            problems.append("alpha is not an involution")
    if problems:
        raise PreconditionViolated("; ".join(problems))
    m = K.n
    T = K.table
    table = np.empty((2 * m, 2 * m), dtype=np.int64)
    table[:m, :m] = T
    table[:m, m:] = T + m
    twisted = T[:, a]  # twisted[k1, k2] = k1 * alpha(k2)
    table[m:, :m] = twisted + m
    table[m:, m:] = T[twisted, z]
    return Group.trusted(table)
