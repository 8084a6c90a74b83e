from __future__ import annotations

import numpy as np
import pytest

import corpus
import oracles
from spaceforms import (
    Group,
    binary_dihedral,
    build_tuple,
    center,
    centralizer,
    cyclic,
    derived_subgroup,
    direct_product,
    group_from_table,
    is_binary_dihedral,
    is_isomorphic,
    normalizer,
    odd_core,
    parse_tuple,
    quotient_group,
    semidirect_product,
    sl2_3,
    sl2_5,
    subgroup_generated,
    sylow_subgroup,
)
from spaceforms.constructions import adjoin_order4
from spaceforms.errors import (
    NotAnAction,
    NotAnAutomorphism,
    NotAssociative,
    NotLatinSquare,
    PreconditionViolated,
    TableParseError,
    TooLarge,
    WrongIdentity,
)
from spaceforms.group import core_of, coset_labels, perfect_core
from spaceforms.isomorphism import automorphisms, is_inner
from spaceforms.structure import (
    ClassEquationSolution,
    quaternionic_witness,
    shape_of_2group,
    solve_class_equation,
)
from spaceforms.tables import format_table, parse_table, read_table, write_table
from spaceforms.recognition import classify


# --- validation ------------------------------------------------------------


def test_trivial_and_z2_tables():
    assert group_from_table([[0]]).n == 1
    Z2 = group_from_table([[0, 1], [1, 0]])
    assert Z2.n == 2 and Z2.involutions == [1]


def test_nonassociative_table_names_a_triple():
    rows = [[0, 1, 2], [1, 2, 0], [2, 1, 0]]
    with pytest.raises(NotAssociative) as info:
        group_from_table(rows)
    x, y, z = info.value.triple
    assert rows[rows[x][y]][z] != rows[x][rows[y][z]]


def test_nonassociative_triple_matches_brute_force():
    rows = [[0, 1, 2], [1, 2, 0], [2, 1, 0]]
    bad = [
        (x, y, z)
        for x in range(3)
        for y in range(3)
        for z in range(3)
        if rows[rows[x][y]][z] != rows[x][rows[y][z]]
    ]
    with pytest.raises(NotAssociative) as info:
        group_from_table(rows)
    assert info.value.triple in bad


@pytest.mark.parametrize(
    "rows, error",
    [
        ([[0, 1], [1, 1]], NotLatinSquare),
        ([[1, 0], [0, 1]], WrongIdentity),
        ([[0, 1, 2], [1, 0, 2], [2, 2, 0]], NotAssociative),
        ([[0, 1], [1, 2]], NotLatinSquare),
        ([[0, 1, 2]], NotLatinSquare),
    ],
)
def test_bad_tables_rejected(rows, error):
    with pytest.raises(error):
        group_from_table(rows)


def test_table_cap(monkeypatch):
    import spaceforms.group as group_mod

    monkeypatch.setattr(group_mod, "MAX_TABLE_ORDER", 4)
    with pytest.raises(TooLarge):
        Group(oracles.cyclic_rows(5))


def test_trusted_tables_pass_full_validation():
    for T in corpus.tuples_up_to(96)[::3]:
        G = corpus.built(T).group
        assert Group(G.table).same_table(G)


# --- subgroups -------------------------------------------------------------


def test_subgroup_generated_examples():
    assert subgroup_generated(cyclic(6), [2]).elements == (0, 2, 4)
    Q8 = corpus.named("Q8")
    four = next(x for x in range(8) if Q8.element_orders[x] == 4)
    assert subgroup_generated(Q8, [four]).order == 4
    S = sl2_5()
    prime = [x for x in range(S.n) if oracles.is_prime(int(S.element_orders[x]))]
    assert subgroup_generated(S, prime).order == 120
    assert len(oracles.closure(oracles.as_rows(S), prime)) == 120


def test_sylow_examples():
    P = sylow_subgroup(cyclic(12), 2)
    assert P.elements == (0, 3, 6, 9)
    Q = sylow_subgroup(sl2_3(), 2)
    assert Q.order == 8 and is_isomorphic(Q.as_group()[0], corpus.named("Q8")) is not None
    F = sylow_subgroup(sl2_5(), 5)
    assert F.order == 5 and F.is_cyclic


@pytest.mark.parametrize("name", ["Z15", "Z24", "S3", "D12", "A4", "S4", "7:3", "F20", "Dic12", "5:8"])
def test_odd_core_matches_oracle_named(name):
    G = corpus.named(name)
    assert set(odd_core(G).elements) == oracles.odd_core(oracles.as_rows(G))


def test_odd_core_examples():
    assert odd_core(corpus.named("Z15")).order == 15
    assert odd_core(corpus.named("Z24")).order == 3
    assert odd_core(sl2_3()).order == 1


def test_odd_core_matches_oracle_on_built_groups():
    for T in corpus.tuples_up_to(200):
        G = corpus.built(T).group
        assert set(odd_core(G).elements) == oracles.odd_core(oracles.as_rows(G)), T


def test_center_normalizer_sl25():
    S = sl2_5()
    assert center(S).order == 2
    F = sylow_subgroup(S, 5)
    N = normalizer(S, F)
    assert N.order == 20
    assert is_binary_dihedral(N.as_group()[0])


def test_sl25_order_four_elements_form_one_class():
    S = sl2_5()
    fours = {x for x in range(S.n) if S.element_orders[x] == 4}
    assert len(fours) == 30
    assert any(set(c) == fours for c in S.conjugacy_classes)


def test_quotients():
    Z4 = cyclic(4)
    Q, _ = quotient_group(Z4, subgroup_generated(Z4, [2]))
    assert Q.n == 2
    S = sl2_3()
    Q, _ = quotient_group(S, subgroup_generated(S, []))
    assert is_isomorphic(Q, S) is not None
    D = binary_dihedral(12)
    K = odd_core(D)
    Q, hom = quotient_group(D, K)
    assert Q.n == 4 and Q.is_cyclic
    assert all(Q.table[hom.images[x], hom.images[y]] == hom.images[D.table[x, y]] for x in range(12) for y in range(12))


def test_quotient_order_identity():
    for T in corpus.tuples_up_to(60):
        G = corpus.built(T).group
        K = odd_core(G)
        Q, _ = quotient_group(G, K)
        assert Q.n * K.order == G.n
        assert len(set(coset_labels(G, K).tolist())) == Q.n


def test_perfect_core_and_derived():
    S = sl2_5()
    assert derived_subgroup(S).order == 120
    assert perfect_core(S).order == 120
    assert derived_subgroup(sl2_3()).order == 8


# --- constructions ---------------------------------------------------------


def test_semidirect_matches_presentation():
    Z3, Z4 = cyclic(3), cyclic(4)
    inv = [0, 2, 1]
    action = [list(range(3)) if h % 2 == 0 else inv for h in range(4)]
    G = semidirect_product(Z3, Z4, action)
    assert is_isomorphic(G, corpus.named("Dic12")) is not None
    assert oracles.isomorphic(oracles.as_rows(G), oracles.as_rows(corpus.named("Dic12")))


def test_trivial_action_is_direct_product():
    A, B = cyclic(3), cyclic(4)
    G = semidirect_product(A, B, [list(range(3))] * 4)
    assert is_isomorphic(G, direct_product(B, A)) is not None
    assert G.is_cyclic


def test_semidirect_seven_three():
    Z7, Z3 = cyclic(7), cyclic(3)
    act = [[(pow(2, h, 7) * x) % 7 for x in range(7)] for h in range(3)]
    G = semidirect_product(Z7, Z3, act)
    assert G.n == 21 and not G.is_abelian
    assert is_isomorphic(G, corpus.named("7:3")) is not None


def test_semidirect_rejects_bad_actions():
    with pytest.raises(NotAnAutomorphism):
        semidirect_product(cyclic(3), cyclic(2), [[0, 1, 2], [0, 0, 0]])
    with pytest.raises(NotAnAction):
        semidirect_product(cyclic(3), cyclic(3), [[0, 1, 2], [0, 2, 1], [0, 2, 1]])
    with pytest.raises(NotAnAction):
        semidirect_product(cyclic(3), cyclic(2), [[0, 1, 2]])


def test_adjoin_order4():
    Z2 = cyclic(2)
    G = adjoin_order4(Z2, [0, 1], 1)
    assert G.n == 4 and G.is_cyclic
    with pytest.raises(PreconditionViolated):
        adjoin_order4(cyclic(3), [0, 2, 1], 1)


def test_adjoin_order4_to_sl23_gives_type_IV():
    S = sl2_3()
    T = build_tuple(parse_tuple("TYPE=IV;g=48;a=1;Gbar=[];b=1;theta=3"))
    assert classify(T.group).tuple.type == "IV"
    z = center(S).elements[1]
    from spaceforms.builders import find_outer_involution

    alpha = find_outer_involution(S)
    G = adjoin_order4(S, alpha, z)
    assert G.n == 48 and len(G.involutions) == 1
    assert classify(G).tuple.type == "IV"


def test_adjoin_order4_to_sl25_gives_type_VI():
    from spaceforms.builders import find_outer_involution

    S = sl2_5()
    alpha = find_outer_involution(S)
    assert not is_inner(S, alpha)
    G = adjoin_order4(S, alpha, center(S).elements[1])
    result = classify(G)
    assert result.ok and result.tuple.type == "VI" and result.tuple.g == 240


def test_outer_automorphisms_of_sl25():
    S = sl2_5()
    auts = list(automorphisms(S))
    inner = [a for a in auts if is_inner(S, a)]
    assert len(auts) == 120
    assert len(inner) == 60
    assert len({tuple(a) for a in auts}) == len(auts)


# --- isomorphism -----------------------------------------------------------


def test_isomorphism_examples():
    T = build_tuple(parse_tuple("TYPE=III;g=24;a=1;Gbar=[];b=1;theta=3")).group
    assert is_isomorphic(sl2_3(), T) is not None
    assert is_isomorphic(corpus.named("Z4"), corpus.named("Z2xZ2")) is None


@pytest.mark.parametrize("pair", [("Z8", "Q8"), ("D8", "Q8"), ("Z2xZ4", "D8"), ("Z12", "Z2xZ6"), ("A4", "Dic12"), ("D12", "Dic12")])
def test_isomorphism_agrees_with_naive_oracle(pair):
    G, H = (corpus.named(p) for p in pair)
    assert (is_isomorphic(G, H) is not None) == oracles.isomorphic(oracles.as_rows(G), oracles.as_rows(H))


def test_isomorphism_finds_relabelled_copies():
    rng = np.random.default_rng(5)
    for name in ("Q8", "Dic12", "A4", "S4", "7:3"):
        G = corpus.named(name)
        perm = [0] + (rng.permutation(G.n - 1) + 1).tolist()
        H = Group(oracles.relabel(oracles.as_rows(G), perm))
        hom = is_isomorphic(G, H)
        assert hom is not None
        assert all(H.table[hom.images[x], hom.images[y]] == hom.images[G.table[x, y]] for x in range(G.n) for y in range(G.n))
        back = hom.inverse()
        assert np.array_equal(back.compose(hom).images, np.arange(G.n))


def test_isomorphism_cap():
    G = cyclic(8)
    with pytest.raises(TooLarge):
        is_isomorphic(G, G, cap=4)


# --- structure -------------------------------------------------------------


def test_two_group_shapes():
    assert shape_of_2group(corpus.named("Q8")) == "quaternionic"
    assert shape_of_2group(corpus.named("Z8")) == "cyclic"
    assert shape_of_2group(corpus.named("D8")) == "other"
    assert quaternionic_witness(corpus.named("Z2xZ2")) is None


def test_class_equation_examples():
    sols = solve_class_equation(10000)
    assert [(s.c1, s.c2, s.c3, s.g) for s in sols] == [(2, 3, 5, 60)]
    assert solve_class_equation(50) == []
    ClassEquationSolution(2, 3, 5, 60)
    with pytest.raises(ValueError):
        ClassEquationSolution(2, 3, 5, 61)
    with pytest.raises(ValueError):
        ClassEquationSolution(3, 2, 5, 60)


@pytest.mark.parametrize("max_g", [59, 60, 200, 600])
def test_class_equation_matches_oracle(max_g):
    ours = [(s.c1, s.c2, s.c3, s.g) for s in solve_class_equation(max_g)]
    assert ours == oracles.class_equation_solutions(max_g)


def test_sl25_hypotheses_exhaustive():
    S = sl2_5()
    assert derived_subgroup(S).order == S.n
    Z = center(S)
    assert Z.order == 2
    for x in range(S.n):
        if x in Z:
            continue
        C = subgroup_generated(S, [x])
        assert is_binary_dihedral(normalizer(S, C).as_group()[0]), x


# --- Cayley table text format ---------------------------------------------


def test_table_round_trip(tmp_path):
    G = sl2_3()
    text = format_table(G)
    assert text.splitlines()[0] == "24"
    assert parse_table(text).same_table(G)
    path = tmp_path / "g.tbl"
    write_table(G, path)
    assert read_table(path).same_table(G)


@pytest.mark.parametrize(
    "text, line",
    [
        ("", 1),
        ("x\n", 1),
        ("2\n0 1\n", 3),
        ("2\n0 1\n1\n", 3),
        ("2\n0 1\n1 a\n", 3),
        ("2\n0 1\n1 5\n", 3),
    ],
)
def test_table_parse_errors(text, line):
    with pytest.raises(TableParseError) as info:
        parse_table(text)
    assert info.value.line == line


def test_table_parse_rejects_non_group():
    with pytest.raises(NotLatinSquare):
        parse_table("2\n0 1\n1 1\n")


def test_centralizer_of_center_is_whole_group():
    S = sl2_3()
    assert centralizer(S, center(S)).order == 24
    assert core_of(S, sylow_subgroup(S, 2)).order == 8
