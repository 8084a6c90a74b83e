"""Recognise space-form groups from their Cayley tables.

:func:`classify` first runs the cheap necessary conditions (one involution,
no ``Z/p x Z/p``, no nonabelian subgroup of order ``pq``, Sylow shapes), then
identifies ``G / O(G)``, digs out the cyclic normal subgroup ``A`` and reads
off the invariant tuple, which is finally run through the same validator the
builders use.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .builders import build_tuple, conjugation_residues, sl2_3, sl2_5
from .errors import InternalConsistency, NonCyclicSylow, TooLarge
from .group import (
    Group,
    Subgroup,
    center,
    centralizer,
    core_of,
    derived_subgroup,
    normalizer,
    odd_core,
    perfect_core,
    quotient_group,
    subgroup_generated,
    sylow_subgroup,
)
from .isomorphism import is_isomorphic
from .numtheory import coprime, is_power_of, primes_dividing
from .structure import quaternionic_witness, shape_of_2group
from .tuples import SpaceFormTuple, validate_tuple

_WORDS = ["zero", "one", "two", "three", "four", "five", "six", "seven", "eight", "nine", "ten",
          "eleven", "twelve", "thirteen", "fourteen", "fifteen", "sixteen", "seventeen", "eighteen", "nineteen"]


def _count_word(k: int) -> str:
    return _WORDS[k] if k < len(_WORDS) else str(k)


@dataclass(frozen=True)
class Rejection:
    """Why a group is not a space-form group, with element ids as evidence."""

    code: str
    reason: str
    witnesses: tuple[int, ...] = ()

    def __str__(self) -> str:
        return self.reason


@dataclass(frozen=True)
class ClassificationResult:
    tuple: SpaceFormTuple | None = None
    rejection: Rejection | None = None
    witnesses: dict[str, tuple[int, ...]] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.tuple is not None

    def __str__(self) -> str:
        if self.tuple is not None:
            return str(self.tuple)
        return f"REJECT {self.rejection}"


def _prime_order_elements(G: Group) -> dict[int, list[int]]:
    out: dict[int, list[int]] = {}
    for p in primes_dividing(G.n):
        out[p] = np.flatnonzero(G.element_orders == p).tolist()
    return out


def _cyclic_subgroup_reps(G: Group, elems: list[int]) -> list[int]:
    """Least element of each cyclic subgroup generated by an element of ``elems``."""
    reps, seen = [], set()
    for x in elems:
        if x in seen:
            continue
        reps.append(x)
        seen.update(subgroup_generated(G, [x]).elements)
    return reps


def necessary_conditions(G: Group) -> Rejection | None:
    """None when every test passes, else the first failure."""
    invs = G.involutions
    if len(invs) > 1:
        shown = ", ".join(map(str, invs))
        return Rejection("multiple_involutions", f"{_count_word(len(invs))} involutions: ids {shown}", tuple(invs))

    prime_elems = _prime_order_elements(G)
    reps = {p: _cyclic_subgroup_reps(G, xs) for p, xs in prime_elems.items()}
    orders = G.element_orders
    for p, xs in reps.items():
        for x in xs:
            C = centralizer(G, [x])
            X = subgroup_generated(G, [x])
            for y in C.elements:
                if orders[y] == p and y not in X:
                    return Rejection("noncyclic_pq", f"noncyclic subgroup of order {p * p}", (x, y))

    for q, xs in reps.items():
        for x in xs:
            X = subgroup_generated(G, [x])
            N = normalizer(G, X)
            C = centralizer(G, [x])
            for y in N.elements:
                if y in C:
                    continue
                p = int(orders[y])
                if p in prime_elems:
                    return Rejection("noncyclic_pq", f"noncyclic subgroup of order {p * q}", (x, y))

    for p in primes_dividing(G.n):
        P = sylow_subgroup(G, p)
        if p > 2 and not P.is_cyclic:
            return Rejection("noncyclic_sylow", f"Sylow {p}-subgroup is not cyclic", P.generators)
        if p == 2:
            PG, _ = P.as_group()
            if shape_of_2group(PG) == "other":
                return Rejection("bad_2_sylow", "Sylow 2-subgroup is neither cyclic nor quaternionic", P.generators)
    return None


@dataclass(frozen=True)
class MetacyclicDecomposition:
    """``H = A : B`` with ``A``, ``B`` cyclic of coprime orders.

    ``action[b]`` is the exponent ``u`` with ``b x b^-1 = x^u`` on ``A``.
    """

    A: Subgroup
    B: Subgroup
    action: dict[int, int]


def metacyclic_decompose(H: Group | Subgroup) -> MetacyclicDecomposition:
    """``A`` is generated by the derived subgroup and the central Sylow
    subgroups; ``B`` is generated by the least element of order ``|H| / |A|``."""
    if isinstance(H, Subgroup):
        parent = H.parent
        HG, emb = H.as_group()
    else:
        parent, HG, emb = H, H, np.arange(H.n)
    Z = center(HG)
    central: list[int] = []
    for p in primes_dividing(HG.n):
        P = sylow_subgroup(HG, p)
        if not P.is_cyclic:
            raise NonCyclicSylow(f"Sylow {p}-subgroup of order {P.order} is not cyclic")
        if P.issubset(Z):
            central.extend(P.generators)
    A = subgroup_generated(HG, list(derived_subgroup(HG).generators) + central)
    m = HG.n // A.order
    if not A.is_cyclic or not coprime(A.order, m):
        raise InternalConsistency(f"A of order {A.order} is not cyclic of order prime to its index")
    y = int(np.flatnonzero(HG.element_orders == m)[0])
    B = subgroup_generated(HG, [y])
    action: dict[int, int] = {}
    if A.order > 1:
        x = next(e for e in A.elements if HG.element_orders[e] == A.order)
        powers = {HG.power(x, k): k for k in range(A.order)}
        for b in B.elements:
            action[int(emb[b])] = powers[HG.conj(b, x)]
    else:
        action = {int(emb[b]): 0 for b in B.elements}
    return MetacyclicDecomposition(
        Subgroup(parent, emb[A.ids].tolist()), Subgroup(parent, emb[B.ids].tolist()), action
    )


def _generator_of(G: Group, S: Subgroup) -> int:
    if S.order == 1:
        return 0
    return next(e for e in S.elements if G.element_orders[e] == S.order)


def _reject(code: str, reason: str, witnesses=()) -> ClassificationResult:
    return ClassificationResult(rejection=Rejection(code, reason, tuple(int(w) for w in witnesses)))


def _dispatch(Q: Group) -> str | None:
    if is_power_of(Q.n, 2):
        shape = shape_of_2group(Q)
        return {"cyclic": "I", "quaternionic": "II"}.get(shape)
    if Q.n == 24:
        return "III" if is_isomorphic(Q, sl2_3()) is not None else None
    if Q.n == 48:
        O2 = core_of(Q, sylow_subgroup(Q, 2))
        if O2.order == 8 and quaternionic_witness(O2.as_group()[0]) is not None:
            return "IV"
        return None
    if Q.n == 120:
        return "V" if is_isomorphic(Q, sl2_5()) is not None else None
    if Q.n == 240:
        P = perfect_core(Q)
        if P.order == 120 and is_isomorphic(P.as_group()[0], sl2_5()) is not None:
            return "VI"
    return None


def _even_on_quaternion_axes(G: Group, Q8: Subgroup) -> list[int]:
    """Elements inducing an even permutation of the three cyclic order-4 subgroups of ``Q8``."""
    axes: list[frozenset[int]] = []
    reps: list[int] = []
    for e in Q8.elements:
        if G.element_orders[e] == 4:
            S = frozenset(subgroup_generated(G, [e]).elements)
            if S not in axes:
                axes.append(S)
                reps.append(e)
    even = []
    for g in range(G.n):
        perm = []
        for x in reps:
            y = G.conj(g, x)
            perm.append(next(k for k, S in enumerate(axes) if y in S))
        # a permutation of three points is even iff it is the identity or a 3-cycle
        if perm in ([0, 1, 2], [1, 2, 0], [2, 0, 1]):
            even.append(g)
    return even


def classify(G: Group, *, paranoid: bool = False, check_necessary: bool = True) -> ClassificationResult:
    """Invariant tuple of ``G``, or a rejection naming the failed test.

    ``check_necessary=False`` skips the cheap necessary conditions so that
    the final structure validation can be exercised on its own.
    """
    if check_necessary:
        rej = necessary_conditions(G)
        if rej is not None:
            return ClassificationResult(rejection=rej)

    K = odd_core(G)
    Q, _ = quotient_group(G, K)
    type_ = _dispatch(Q)
    if type_ is None:
        return _reject("quotient_shape", f"quotient by the odd core (order {Q.n}) has no admissible shape", K.generators)

    witnesses: dict[str, tuple[int, ...]] = {"O(G)": K.elements}
    try:
        if type_ in ("I", "II"):
            core = K
        elif type_ in ("V", "VI"):
            S = perfect_core(G)
            I = subgroup_generated(G, list(S.generators) + list(centralizer(G, S).generators))
            witnesses["2A5"] = S.elements
            core = _odd_core_within(I)
        else:
            Q8 = core_of(G, sylow_subgroup(G, 2))
            if Q8.order != 8:
                return _reject("quotient_shape", f"normal 2-subgroup has order {Q8.order}, not 8", Q8.generators)
            witnesses["Q8"] = Q8.elements
            J = subgroup_generated(G, _even_on_quaternion_axes(G, Q8))
            prime_to_3 = [e for e in J.elements if G.element_orders[e] % 3]
            I = subgroup_generated(G, prime_to_3)
            core = _odd_core_within(I)
        md = metacyclic_decompose(core)
    except NonCyclicSylow as err:
        return _reject("noncyclic_sylow", str(err))

    A, B = md.A, md.B
    a, b = A.order, B.order
    witnesses["A"] = A.elements
    witnesses["B"] = B.elements
    a_gen = _generator_of(G, A)
    gbar = conjugation_residues(G, a_gen, a, G.generators)

    gbar0 = None
    t = theta = None
    if type_ in ("I", "II"):
        t = G.n // K.order
    if type_ == "II" and G.n % 16 == 0:
        P = sylow_subgroup(G, 2)
        half = P.order // 2
        x = next(e for e in P.elements if G.element_orders[e] == half)
        G0 = subgroup_generated(G, list(K.generators) + [x])
        witnesses["G0"] = G0.elements
        gbar0 = conjugation_residues(G, a_gen, a, G0.generators)
    if type_ == "III":
        theta = G.n // (8 * a * b)
    if type_ == "IV":
        theta = G.n // (16 * a * b)

    T = SpaceFormTuple(type_, G.n, a, gbar, b, t=t, theta=theta, gbar0=gbar0)
    problems = validate_tuple(T)
    if problems:
        return _reject("structure_conditions", "structure conditions: " + "; ".join(problems), (a_gen,))

    if paranoid:
        rebuilt = build_tuple(T).group
        try:
            same = is_isomorphic(G, rebuilt) is not None
        except TooLarge:
            same = True  # beyond the oracle's reach; the tuple already validated
        if not same:
            return _reject("paranoid_mismatch", f"rebuilding {T} gives a non-isomorphic group")
    return ClassificationResult(tuple=T, witnesses=witnesses)


def _odd_core_within(I: Subgroup) -> Subgroup:
    IG, emb = I.as_group()
    O = odd_core(IG)
    return Subgroup(I.parent, emb[O.ids].tolist())


def invariants_equal(t1: SpaceFormTuple, t2: SpaceFormTuple) -> bool:
    """Equality of type, order, ``a``, ``Gbar`` and (when defined) ``Gbar0``."""
    return (
        t1.type == t2.type
        and t1.g == t2.g
        and t1.a == t2.a
        and t1.gbar == t2.gbar
        and t1.gbar0 == t2.gbar0
    )
