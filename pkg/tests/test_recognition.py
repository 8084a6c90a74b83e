from __future__ import annotations

import numpy as np
import pytest

import corpus
import oracles
from spaceforms import (
    Group,
    build_tuple,
    classify,
    cyclic,
    direct_product,
    invariants_equal,
    is_isomorphic,
    metacyclic_decompose,
    necessary_conditions,
    parse_tuple,
    sl2_3,
    sl2_5,
)
from spaceforms.wolf import WolfTypeIIParams, build_wolf_II


def test_classify_examples():
    assert str(classify(corpus.named("Q8"))) == "TYPE=II;g=8;a=1;Gbar=[];b=1;t=8"
    assert str(classify(sl2_3())) == "TYPE=III;g=24;a=1;Gbar=[];b=1;theta=3"
    assert str(classify(sl2_5())) == "TYPE=V;g=120;a=1;Gbar=[];b=1"
    wolf = build_wolf_II(WolfTypeIIParams(3, 20, -1, -1, 1))
    assert str(classify(wolf)) == "TYPE=II;g=120;a=15;Gbar=[1,4,11,14];b=1;t=8"
    r = classify(corpus.named("Z2xZ4"))
    assert not r.ok and r.rejection.code == "multiple_involutions"
    assert str(r).startswith("REJECT three involutions")


def test_wolf_gbar_matches_crt():
    # inverting only the 3-part, only the 5-part, or both
    expected = {
        oracles.crt_residue({3: 1, 5: 1}, 15),
        oracles.crt_residue({3: -1, 5: 1}, 15),
        oracles.crt_residue({3: 1, 5: -1}, 15),
        oracles.crt_residue({3: -1, 5: -1}, 15),
    }
    assert expected == {1, 11, 4, 14}
    wolf = build_wolf_II(WolfTypeIIParams(15, 4, -1, -1, 4))
    assert set(classify(wolf).tuple.gbar.residues) == expected


NEGATIVE = {
    "S3": ("multiple_involutions", "three involutions"),
    "D8": ("multiple_involutions", "five involutions"),
    "Z2xZ2": ("multiple_involutions", "three involutions"),
    "A4": ("multiple_involutions", "three involutions"),
    "S4": ("multiple_involutions", "nine involutions"),
    "A5": ("multiple_involutions", "fifteen involutions"),
    "Z3xZ3": ("noncyclic_pq", "noncyclic subgroup of order 9"),
    "7:3": ("noncyclic_pq", "noncyclic subgroup of order 21"),
    "F20": ("multiple_involutions", "five involutions"),
}


@pytest.mark.parametrize("name", sorted(NEGATIVE))
def test_negative_corpus(name):
    G = corpus.named(name)
    code, text = NEGATIVE[name]
    r = classify(G)
    assert not r.ok
    assert r.rejection.code == code
    assert r.rejection.reason.startswith(text)
    rows = oracles.as_rows(G)
    w = r.rejection.witnesses
    if code == "multiple_involutions":
        assert sorted(w) == [x for x in range(1, G.n) if rows[x][x] == 0]
    else:
        S = oracles.closure(rows, w)
        assert len(S) == int(text.rsplit(" ", 1)[1])
        assert max(oracles.element_order(rows, s) for s in S) < len(S)


def test_structure_condition_path():
    r = classify(corpus.named("F20"), check_necessary=False)
    assert r.rejection.code == "structure_conditions"
    assert "t must exceed" in r.rejection.reason


def test_quotient_shape_path():
    # Z/3 x Z/3 has trivial quotient by its odd core but is not metacyclic
    r = classify(corpus.named("Z3xZ3"), check_necessary=False)
    assert not r.ok and r.rejection.code in ("noncyclic_sylow", "structure_conditions")
    r = classify(corpus.named("A4"), check_necessary=False)
    assert not r.ok and r.rejection.code == "quotient_shape"


def _corpus_for_necessary_conditions():
    for name in ("S3", "D8", "Z2xZ2", "A4", "S4", "Z3xZ3", "7:3", "F20", "5:8", "Q8", "Dic12", "Z2xZ4", "D12", "Z2xZ6"):
        yield name, corpus.named(name)
    for T in corpus.tuples_up_to(48):
        yield str(T), corpus.built(T).group
    for m, n, r in oracles.odd_zgroup_parameters(63):
        yield f"{m}:{n}^{r}", Group(oracles.metacyclic_rows(m, n, r))
    yield "Z3xS3", direct_product(cyclic(3), corpus.named("S3"))
    yield "Z3xQ8", direct_product(cyclic(3), corpus.named("Q8"))
    yield "Z2xQ8", direct_product(cyclic(2), corpus.named("Q8"))


def test_necessary_conditions_match_oracle():
    for label, G in _corpus_for_necessary_conditions():
        ours = necessary_conditions(G) is None
        assert ours == oracles.passes_pq_conditions(oracles.as_rows(G)), label


def test_small_orders_pass_count():
    for names in (corpus.ORDER_8, corpus.ORDER_12):
        passing = [n for n in names if necessary_conditions(corpus.named(n)) is None]
        assert len(passing) == 2


def test_sl25_passes_necessary_conditions():
    assert necessary_conditions(sl2_5()) is None


# --- metacyclic decomposition ---------------------------------------------


def test_metacyclic_examples():
    md = metacyclic_decompose(corpus.named("Z15"))
    assert md.A.order == 15 and md.B.order == 1
    md = metacyclic_decompose(corpus.named("7:3"))
    assert md.A.order == 7 and md.B.order == 3
    G = direct_product(corpus.named("7:3"), cyclic(5))
    md = metacyclic_decompose(G)
    assert md.A.order == 35 and md.B.order == 3
    assert md.A.is_normal() and md.A.is_cyclic


def test_metacyclic_action_exponents():
    G = corpus.named("7:3")
    md = metacyclic_decompose(G)
    x = next(e for e in md.A.elements if G.element_orders[e] == 7)
    for b, u in md.action.items():
        assert G.conj(b, x) == G.power(x, u)


@pytest.mark.parametrize("mnr", [(7, 3, 2), (13, 3, 3), (19, 9, 4), (21, 1, 1), (9, 5, 1), (31, 5, 2)])
def test_metacyclic_matches_oracle(mnr):
    rows = oracles.metacyclic_rows(*mnr)
    md = metacyclic_decompose(Group(rows))
    assert oracles.metacyclic_candidates(rows) == [frozenset(md.A.elements)]


# --- invariants -----------------------------------------------------------


def test_invariants_equal():
    q8 = classify(corpus.named("Q8")).tuple
    z8 = classify(corpus.named("Z8")).tuple
    assert not invariants_equal(q8, z8)
    w1 = classify(build_wolf_II(WolfTypeIIParams(3, 20, -1, -1, 1))).tuple
    w2 = classify(build_wolf_II(WolfTypeIIParams(5, 12, -1, -1, -1))).tuple
    assert invariants_equal(w1, w2)


def test_gbar0_distinguishes():
    t1 = parse_tuple("TYPE=II;g=48;a=3;Gbar=[1,2];b=1;t=16;Gbar0=[1]")
    t2 = parse_tuple("TYPE=II;g=48;a=3;Gbar=[1,2];b=1;t=16;Gbar0=[1,2]")
    assert not invariants_equal(t1, t2)
    G1, G2 = build_tuple(t1).group, build_tuple(t2).group
    assert is_isomorphic(G1, G2) is None
    assert classify(G1).tuple == t1 and classify(G2).tuple == t2


def test_classify_is_invariant_under_relabelling():
    rng = np.random.default_rng(11)
    sample = corpus.tuples_up_to(240)[::9]
    for T in sample:
        G = corpus.built(T).group
        perm = [0] + (rng.permutation(G.n - 1) + 1).tolist()
        H = Group(oracles.relabel(oracles.as_rows(G), perm))
        assert classify(H).tuple == T


def test_classify_witnesses():
    for T in corpus.tuples_up_to(120)[::5]:
        G = corpus.built(T).group
        r = classify(G)
        A = r.witnesses["A"]
        assert len(A) == T.a
        rows = oracles.as_rows(G)
        assert oracles.is_normal(rows, set(A))
        assert max(oracles.element_order(rows, x) for x in A) == T.a


def test_paranoid_mode():
    for text in ("TYPE=II;g=120;a=15;Gbar=[1,4,11,14];b=1;t=8", "TYPE=IV;g=144;a=1;Gbar=[];b=1;theta=9"):
        T = parse_tuple(text)
        assert classify(build_tuple(T).group, paranoid=True).tuple == T
