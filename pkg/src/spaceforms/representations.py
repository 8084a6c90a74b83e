"""Fixed-point-free real representations of built space-form groups.

The subgroup ``H`` generated by the prime-order elements is either cyclic or
a binary tetrahedral/icosahedral group times a cyclic group of coprime
order.  Cyclic groups act on the plane by rotations; the product cases act on
the quaternions, the binary factor by left multiplication and the cyclic
factor by right multiplication.  Inducing up to ``G`` gives a free
representation, which :func:`verify_free` checks element by element.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .builders import StructuredGroup
from .errors import BadTransversal, ClosureFailed, UnexpectedShape
from .group import Group, Subgroup, centralizer, coset_labels, left_transversal, subgroup_generated
from .isomorphism import is_isomorphic

TOL = 1e-8
UNIT_TOL = 1e-9
FULL_CHECK_ORDER = 256
GOLDEN = (1 + math.sqrt(5)) / 2


@dataclass(frozen=True)
class Quat:
    w: float
    x: float = 0.0
    y: float = 0.0
    z: float = 0.0

    def as_array(self) -> np.ndarray:
        return np.array([self.w, self.x, self.y, self.z])

    def __mul__(self, other: Quat) -> Quat:
        return quat_mul(self, other)

    def norm(self) -> float:
        return float(np.linalg.norm(self.as_array()))


def _arr(q) -> np.ndarray:
    return q.as_array() if isinstance(q, Quat) else np.asarray(q, dtype=float)


def quat_mul(p, q) -> Quat:
    """Hamilton product."""
    a, b, c, d = _arr(p)
    w, x, y, z = _arr(q)
    return Quat(
        a * w - b * x - c * y - d * z,
        a * x + b * w + c * z - d * y,
        a * y - b * z + c * w + d * x,
        a * z + b * y - c * x + d * w,
    )


def left_mult_matrix(q) -> np.ndarray:
    """Matrix of ``v -> q v`` on coordinates ``(w, x, y, z)``."""
    a, b, c, d = _arr(q)
    return np.array([[a, -b, -c, -d], [b, a, -d, c], [c, d, a, -b], [d, -c, b, a]])


def right_mult_matrix(q) -> np.ndarray:
    """Matrix of ``v -> v q``."""
    a, b, c, d = _arr(q)
    return np.array([[a, -b, -c, -d], [b, a, d, -c], [c, -d, a, b], [d, c, -b, a]])


def _batch_mul(P: np.ndarray, Q: np.ndarray) -> np.ndarray:
    a, b, c, d = np.moveaxis(P, -1, 0)
    w, x, y, z = np.moveaxis(Q, -1, 0)
    return np.stack(
        [
            a * w - b * x - c * y - d * z,
            a * x + b * w + c * z - d * y,
            a * y - b * z + c * w + d * x,
            a * z + b * y - c * x + d * w,
        ],
        axis=-1,
    )


def hurwitz_units() -> np.ndarray:
    """The 24 units ``±1, ±i, ±j, ±k, (±1 ± i ± j ± k)/2``; 1 comes first."""
    units = []
    for axis in range(4):
        for s in (1, -1):
            v = np.zeros(4)
            v[axis] = s
            units.append(v)
    for signs in itertools.product((1, -1), repeat=4):
        units.append(np.array(signs) / 2)
    return np.array(units)


def _even_permutations(n: int) -> list[tuple[int, ...]]:
    out = []
    for perm in itertools.permutations(range(n)):
        inversions = sum(perm[i] > perm[j] for i in range(n) for j in range(i + 1, n))
        if inversions % 2 == 0:
            out.append(perm)
    return out


def icosians() -> np.ndarray:
    """The 120 icosians: Hurwitz units plus even permutations of ``(±τ, ±1, ±1/τ, 0)/2``."""
    base = np.array([GOLDEN, 1.0, 1 / GOLDEN, 0.0]) / 2
    extra = []
    for perm in _even_permutations(4):
        for signs in itertools.product((1, -1), repeat=3):
            v = base * np.array(list(signs) + [1])
            extra.append(v[list(perm)])
    return np.concatenate([hurwitz_units(), np.array(extra)])


def unit_group_table(units: np.ndarray) -> tuple[Group, float]:
    """Cayley table of a finite set of unit quaternions, by nearest-unit rounding.

    Returns the group and the largest rounding distance seen.
    """
    prods = _batch_mul(units[:, None, :], units[None, :, :])
    dist = np.linalg.norm(prods[:, :, None, :] - units[None, None, :, :], axis=-1)
    idx = dist.argmin(axis=-1)
    worst = float(dist.min(axis=-1).max())
    if worst > UNIT_TOL:
        raise ClosureFailed(f"a product lies {worst:.3g} from every listed unit")
    return Group(idx), worst


@functools.lru_cache(maxsize=None)
def _unit_group(kind: str) -> tuple[Group, np.ndarray]:
    units = hurwitz_units() if kind == "2A4" else icosians()
    return unit_group_table(units)[0], units


def quaternion_embedding(G: Group, kind: str) -> np.ndarray:
    """Unit quaternion for each element of ``G``, as an ``n x 4`` array.

    ``kind`` is ``"binary_dihedral"`` (``G`` numbered as by
    :func:`builders.binary_dihedral`), ``"2A4"`` or ``"2A5"`` (any group
    isomorphic to those; the map is found by isomorphism search).
    """
    if kind == "binary_dihedral":
        n = G.n // 4
        ids = np.arange(G.n)
        e, i = np.divmod(ids, 2 * n)
        ang = np.pi * i / n
        rot = np.stack([np.cos(ang), np.sin(ang), np.zeros(G.n), np.zeros(G.n)], axis=-1)
        j = np.array([0.0, 0.0, 1.0, 0.0])
        return np.where(e[:, None] == 1, _batch_mul(rot, j), rot)
    if kind not in ("2A4", "2A5"):
        raise ValueError(f"unknown embedding kind {kind!r}")
    U, units = _unit_group(kind)
    hom = is_isomorphic(G, U)
    if hom is None:
        raise UnexpectedShape(f"group of order {G.n} is not isomorphic to {kind}")
    return units[hom.images]


@dataclass(frozen=True, eq=False)
class RealRep:
    """``matrices[g]`` is the orthogonal matrix of element ``g`` of ``group``."""

    group: Group
    matrices: np.ndarray
    tol: float = TOL

    @property
    def dim(self) -> int:
        return int(self.matrices.shape[1])

    def traces(self) -> np.ndarray:
        return np.trace(self.matrices, axis1=1, axis2=2)


def check_rep(rep: RealRep, sample: int = 4096, seed: int = 0) -> float:
    """Largest deviation from orthogonality or the homomorphism property.

    Every pair is checked up to order 256, a seeded random sample beyond.
    """
    M = rep.matrices
    G = rep.group
    d = rep.dim
    if not np.array_equal(M[0], np.eye(d)):
        return float("inf")
    worst = float(np.abs(M @ np.swapaxes(M, 1, 2) - np.eye(d)).max())
    if G.n <= FULL_CHECK_ORDER:
        for g in range(G.n):
            worst = max(worst, float(np.abs(M[g] @ M - M[G.table[g]]).max()))
    else:
        rng = np.random.default_rng(seed)
        xs = rng.integers(0, G.n, sample)
        ys = rng.integers(0, G.n, sample)
        worst = max(worst, float(np.abs(M[xs] @ M[ys] - M[G.table[xs, ys]]).max()))
    return worst


@dataclass(frozen=True)
class CoreShape:
    """``H = <prime-order elements>`` with its recognised decomposition.

    ``kind`` is ``"cyclic"``, ``"2A4"`` or ``"2A5"``; for the latter two
    ``binary`` and ``cyclic`` are the factors of ``H = binary x cyclic``.
    """

    H: Subgroup
    kind: str
    binary: Subgroup | None = None
    cyclic: Subgroup | None = None


def prime_generated_core(S: StructuredGroup) -> CoreShape:
    G = S.group
    orders = G.element_orders
    prime_elems = [x for x in range(1, G.n) if _is_prime(int(orders[x]))]
    H = subgroup_generated(G, prime_elems)
    if H.is_cyclic:
        return CoreShape(H, "cyclic")
    if "2A5" in S.witnesses:
        X, kind = S.witnesses["2A5"], "2A5"
    elif "Q8" in S.witnesses:
        Q8 = S.witnesses["Q8"]
        CQ = centralizer(G, Q8)
        y = next((x for x in H.elements if orders[x] == 3 and x not in CQ), None)
        if y is None:
            raise UnexpectedShape("noncyclic core without an element of order 3 acting on Q8")
        X, kind = subgroup_generated(G, list(Q8.generators) + [y]), "2A4"
    else:
        raise UnexpectedShape(f"noncyclic core of order {H.order} in a type {S.tuple.type} group")
    if not X.issubset(H):
        raise UnexpectedShape(f"{kind} factor is not inside the core")
    CX = centralizer(G, X)
    C = Subgroup(G, [x for x in CX.elements if x in H and orders[x] % 2])
    if X.order * C.order != H.order or not C.is_cyclic or math.gcd(X.order, C.order) != 1:
        raise UnexpectedShape(f"core of order {H.order} is not {kind} times a coprime cyclic group")
    return CoreShape(H, kind, X, C)


def _is_prime(k: int) -> bool:
    return k > 1 and all(k % p for p in range(2, int(k**0.5) + 1))


def _rotation(angle: np.ndarray) -> np.ndarray:
    c, s = np.cos(angle), np.sin(angle)
    return np.stack([np.stack([c, -s], -1), np.stack([s, c], -1)], -2)


def free_rep_core(core: CoreShape) -> RealRep:
    """The free representation of ``core.H``, indexed by local ids of ``core.H.as_group()``."""
    H = core.H
    HG, emb = H.as_group()
    G = H.parent
    if core.kind == "cyclic":
        m = H.order
        if m <= 2:
            sign = -1.0 if m == 2 else 1.0
            mats = np.array([[[1.0]], [[sign]]])[: m]
            return RealRep(HG, mats)
        gen = next(k for k in range(HG.n) if HG.element_orders[k] == m)
        log = np.empty(m, dtype=np.int64)
        x = 0
        for k in range(m):
            log[x] = k
            x = HG.rows[x][gen]
        return RealRep(HG, _rotation(2 * np.pi * log / m))
    X, C = core.binary, core.cyclic
    XG, xemb = X.as_group()
    quats = quaternion_embedding(XG, core.kind)
    qmats = np.array([left_mult_matrix(q) for q in quats])
    xlocal = {int(p): k for k, p in enumerate(xemb)}
    c_order = C.order
    c_gen = next((c for c in C.elements if G.element_orders[c] == c_order), 0)
    c_pows = [0]
    for _ in range(c_order - 1):
        c_pows.append(G.mul(c_pows[-1], c_gen))
    mats = np.empty((HG.n, 4, 4))
    local = {int(p): k for k, p in enumerate(emb)}
    for k, c in enumerate(c_pows):
        ang = 2 * np.pi * k / c_order
        rmat = right_mult_matrix([np.cos(ang), np.sin(ang), 0.0, 0.0])
        for x in X.elements:
            mats[local[G.mul(x, c)]] = qmats[xlocal[x]] @ rmat
    mats[0] = np.eye(4)
    return RealRep(HG, mats)


def induce_rep(rep: RealRep, H: Subgroup, coset_reps: list[int] | None = None) -> RealRep:
    """Induce ``rep`` (a representation of ``H.as_group()``) up to ``H.parent``.

    Block ``(i, j)`` of ``g`` is ``rep(r_i^-1 g r_j)`` when that lies in ``H``.
    """
    G = H.parent
    _, emb = H.as_group()
    m = G.n // H.order
    labels = coset_labels(G, H)
    if coset_reps is None:
        reps = left_transversal(G, H)
    else:
        reps = [int(r) for r in coset_reps]
        if len(reps) != m or len({int(labels[r]) for r in reps}) != m:
            raise BadTransversal(f"need one representative for each of the {m} left cosets")
    d = rep.dim
    local = np.full(G.n, -1, dtype=np.int64)
    local[emb] = np.arange(H.order)
    r = np.array(reps, dtype=np.int64)
    r_inv = G.inverse[r]
    slot = np.empty(m, dtype=np.int64)
    slot[labels[r]] = np.arange(m)
    coset_of = slot[labels]  # index i with g in r_i H
    D = m * d
    out = np.zeros((G.n, D, D))
    T = G.table
    for g in range(G.n):
        grj = T[g, r]  # g r_j
        i = coset_of[grj]
        h = T[r_inv[i], grj]  # r_i^-1 g r_j, in H by construction
        for j in range(m):
            out[g, i[j] * d : (i[j] + 1) * d, j * d : (j + 1) * d] = rep.matrices[local[h[j]]]
    return RealRep(G, out, rep.tol)


@dataclass(frozen=True)
class FreenessCertificate:
    """Fixed-space dimensions of every element, and the verdict."""

    max_fixed_trace: float
    fixed_traces: np.ndarray
    verdict: str
    tol: float = TOL
    class_traces: list[tuple[int, float]] = field(default_factory=list)


def fixed_space_dimensions(rep: RealRep) -> np.ndarray:
    """``trace((1/k) sum_j rep(g^j))`` for each ``g`` of order ``k``."""
    G = rep.group
    tr = rep.traces()
    orders = G.element_orders
    total = np.zeros(G.n)
    power = np.zeros(G.n, dtype=np.int64)  # g^j
    ids = np.arange(G.n)
    for j in range(int(orders.max())):
        active = j < orders
        total[active] += tr[power[active]]
        power = G.table[power, ids]
    return total / orders


def verify_free(rep: RealRep, tol: float | None = None) -> FreenessCertificate:
    tol = rep.tol if tol is None else tol
    fixed = fixed_space_dimensions(rep)
    G = rep.group
    nontrivial = fixed[1:]
    worst = float(nontrivial.max()) if len(nontrivial) else 0.0
    if worst < tol:
        verdict = "free"
    elif (nontrivial > 1 - tol).any():
        verdict = "not_free"
    else:
        verdict = "inconclusive"
    classes = [(cls[0], float(fixed[cls[0]])) for cls in G.conjugacy_classes]
    return FreenessCertificate(worst, fixed, verdict, tol, classes)


def commutant_basis(rep: RealRep, tol: float = 1e-9) -> np.ndarray:
    """Basis of the matrices commuting with every ``rep(g)``."""
    d = rep.dim
    eye = np.eye(d)
    rows = []
    gens = rep.group.generators or (0,)
    for g in gens:
        M = rep.matrices[g]
        # vec(M X - X M) = (I kron M - M^T kron I) vec(X), column-major vec
        rows.append(np.kron(eye, M) - np.kron(M.T, eye))
    A = np.vstack(rows)
    _, s, vt = np.linalg.svd(A)
    rank = int((s > tol * max(1.0, s.max(initial=0.0))).sum())
    return vt[rank:].reshape(-1, d, d).transpose(0, 2, 1)


def is_irreducible(rep: RealRep, tol: float = 1e-9, seed: int = 0) -> bool:
    """Real irreducibility: the commutant is a division algebra.

    The commutant of an orthogonal representation is closed under transposes,
    and it is a division algebra exactly when a generic element ``X`` has
    ``X^T X`` a positive multiple of the identity.
    """
    basis = commutant_basis(rep, tol)
    if len(basis) == 0:
        return False
    rng = np.random.default_rng(seed)
    X = np.tensordot(rng.normal(size=len(basis)), basis, axes=1)
    P = X.T @ X
    c = np.trace(P) / rep.dim
    return bool(c > tol and np.abs(P - c * np.eye(rep.dim)).max() < 1e-7 * max(1.0, c))


@dataclass(frozen=True, eq=False)
class FreeRepresentation:
    core: CoreShape
    core_rep: RealRep
    rep: RealRep
    certificate: FreenessCertificate


def free_representation(S: StructuredGroup, tol: float = TOL) -> FreeRepresentation:
    """Core representation induced up to the whole group, and its certificate."""
    core = prime_generated_core(S)
    core_rep = free_rep_core(core)
    core_rep = RealRep(core_rep.group, core_rep.matrices, tol)
    rep = induce_rep(core_rep, core.H)
    return FreeRepresentation(core, core_rep, rep, verify_free(rep, tol))


def format_matrices(rep: RealRep) -> str:
    """One block per element: ``# g`` then the rows, 17 significant digits."""
    lines = [f"{rep.group.n} {rep.dim}"]
    for g in range(rep.group.n):
        lines.append(f"# {g}")
        for row in rep.matrices[g]:
            lines.append(" ".join(f"{v:.17g}" for v in row))
    return "\n".join(lines) + "\n"
