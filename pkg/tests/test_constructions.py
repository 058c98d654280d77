"""Concrete atom structures: rainbow families, splits, theta embeddings."""

import pytest

from cylgame.ca import check_ca_axioms
from cylgame.constructions import (RuleSet, bsl_structure, detect_cone,
                                   maddux_E, merge_copies, order_rainbow_ca,
                                   rainbow_ca, rainbow_ra, red_atoms,
                                   split_atoms, theta_embedding)
from cylgame.fc import INHERIT, MATCH
from cylgame.games import complete_graph
from cylgame.ra import check_ra_axioms


@pytest.fixture(scope="module")
def A43():
    return rainbow_ca(3, 4, 3)


def test_rainbow_ca_inventory(A43):
    assert A43.n_atoms == 1779
    by_blocks = {}
    for nm, (pi, edges) in A43.rainbow.graphs.items():
        by_blocks[len(set(pi))] = by_blocks.get(len(set(pi)), 0) + 1
    assert by_blocks == {1: 1, 2: 39, 3: 1739}
    assert len(red_atoms(A43)) == 1590


def test_rainbow_ca_axioms(A43):
    assert check_ca_axioms(A43).ok


def test_cone_atoms_detected(A43):
    for t in (1, 2, 3, 4):
        nm = A43.rainbow.cone_atom(t)
        assert detect_cone(A43, nm) == {"apex": 2, "tint": t}
    assert detect_cone(A43, "000") is None
    white = A43.rainbow.atom_name((0, 1, 1), {(0, 1): ("w", 0)})
    assert detect_cone(A43, white) is None


def test_order_rainbow_inventory():
    O = order_rainbow_ca(3, 3, 3)
    assert O.n_atoms == 1671
    assert check_ca_axioms(O).ok
    assert O.rainbow.rules.green_values == (-3, -2, -1, 0)
    assert O.rainbow.rules.red_values == (0, 1, 2)


def test_order_tint_pairs():
    r = RuleSet.order(3, 3)
    # two apexes with tints -1, -2: joinable iff the reds invert the order
    assert r.tint_pair_ok(-1, 2, -2, 1)
    assert not r.tint_pair_ok(-1, 1, -2, 2)
    # one tint, one red: fine; one tint, two reds: never
    assert r.tint_pair_ok(-1, 1, -1, 1)
    assert not r.tint_pair_ok(-1, 1, -1, 2)


def test_complete_tint_pairs():
    rc = RuleSet.complete(4, 3)
    assert rc.tint_pair_ok(1, 0, 2, 1)
    assert not rc.tint_pair_ok(1, 0, 2, 0)


def test_rainbow_ra_atom_inventories():
    R21 = rainbow_ra(complete_graph(2), complete_graph(1))
    assert R21.names == ("id", "g^0", "g^1", "w")
    R32 = rainbow_ra(complete_graph(3), complete_graph(2))
    assert R32.names == ("id", "g^0", "g^1", "g^2", "w", "r0.1", "r1.0")


def test_rainbow_ra_fails_only_associativity():
    """The two-sorted rainbow colours cannot satisfy the associativity
    clause on a finite atom inventory; every other clause holds.  Frozen
    as a regression: the checker must report associativity failures and
    nothing else."""
    for G, H in ((complete_graph(2), complete_graph(1)),
                 (complete_graph(3), complete_graph(2))):
        rep = check_ra_axioms(rainbow_ra(G, H))
        assert not rep.ok
        assert rep.failures
        assert all("associativity" in f for f in rep.failures)


def test_maddux_and_bsl_families():
    for k in (1, 2, 3):
        assert check_ra_axioms(maddux_E(k)).ok
    B = bsl_structure(3, 2)
    assert B.names == ("id", "g^0", "g^1", "g^2", "r1", "r2")
    assert check_ra_axioms(B).ok


# ---- splitting


def test_ra_split_names_and_frozen_axiom_failure():
    E2 = maddux_E(2)
    S = split_atoms(E2, ["a1"], 3, lift=INHERIT)
    assert S.names == ("id", "a1^0", "a1^1", "a1^2", "a2")
    # splitting a self-converse atom into three copies breaks the
    # checker's symmetric-triple clauses; frozen, not a bug
    assert not check_ra_axioms(S).ok
    th, rep = theta_embedding(E2, S)
    assert rep.ok
    assert th["a1"] == frozenset({S.atom("a1^0"), S.atom("a1^1"),
                                  S.atom("a1^2")})
    S2 = split_atoms(E2, ["a1"], 3, lift=MATCH)
    _, rep2 = theta_embedding(E2, S2)
    assert rep2.ok


def test_merge_copies_round_trip():
    E2 = maddux_E(2)
    S = split_atoms(E2, ["a1"], 3, lift=INHERIT)
    merged = merge_copies(S)
    assert set(merged) == set(E2.names)
    assert merged["a1"] == ("a1^0", "a1^1", "a1^2")
    assert merged["a2"] == ("a2",)


def test_ca_split_all_reds_frozen_failures(A43):
    reds = red_atoms(A43)
    T = split_atoms(A43, reds, 2, lift=INHERIT)
    assert T.n_atoms == (A43.n_atoms - len(reds)) + 2 * len(reds) == 3369
    rep = check_ca_axioms(T)
    assert not rep.ok
    assert any("two d_01 atoms in one acc_0 class" in f
               for f in rep.failures)
    _, threp = theta_embedding(A43, T)
    assert threp.ok

    T = split_atoms(A43, reds, 2, lift=MATCH)
    rep = check_ca_axioms(T)
    assert not rep.ok
    assert any("do not commute" in f for f in rep.failures)
    _, threp = theta_embedding(A43, T)
    assert threp.ok


def test_ca_split_non_diagonal_reds_is_sound(A43):
    nd = [nm for nm in red_atoms(A43)
          if len(set(A43.rainbow.graphs[nm][0])) == 3]
    assert len(nd) == 1572
    T = split_atoms(A43, nd, 2, lift=INHERIT)
    assert T.n_atoms == 3351
    assert check_ca_axioms(T).ok
    _, rep = theta_embedding(A43, T)
    assert rep.ok


def test_ca_split_one_copy_is_identity_like(A43):
    reds = red_atoms(A43)
    T = split_atoms(A43, reds, 1, lift=MATCH)
    assert T.n_atoms == A43.n_atoms
    _, rep = theta_embedding(A43, T)
    assert rep.ok


def test_ca_split_three_copies(A43):
    reds = red_atoms(A43)
    T = split_atoms(A43, reds, 3, lift=INHERIT)
    assert T.n_atoms == (A43.n_atoms - len(reds)) + 3 * len(reds) == 4959
    _, rep = theta_embedding(A43, T)
    assert rep.ok


def test_split_requires_action_closed_targets(A43):
    # a single oriented red atom is not closed under coordinate swaps
    reds = red_atoms(A43)
    target = [nm for nm in reds
              if len(set(A43.rainbow.graphs[nm][0])) == 3][:1]
    closed = True
    nm = target[0]
    aid = A43.atom(nm)
    for i in range(3):
        for j in range(i + 1, 3):
            if A43.sub_transposition(i, j)[aid] != aid:
                closed = False
    if not closed:
        with pytest.raises(ValueError):
            split_atoms(A43, target, 2, lift=INHERIT)


def test_theta_rejects_foreign_split(A43):
    E2 = maddux_E(2)
    S = split_atoms(E2, ["a1"], 2, lift=INHERIT)
    with pytest.raises(ValueError):
        theta_embedding(A43, S)
