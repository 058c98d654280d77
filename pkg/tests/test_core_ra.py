"""Relation-type atom structures: arithmetic, axiom checker, enumeration."""

import random

import pytest

from cylgame.constructions import maddux_E
from cylgame.ra import (RaAtomStructure, bool_ops, check_ra_axioms,
                        peirce_transforms, ra_compose, ra_converse,
                        symmetric_integral_structures)


def small_nonsymmetric():
    # id, one symmetric atom s, one pair p / p-converse; all diversity
    # triangles allowed except (s, s, s)
    names = ["id", "s", "p", "q"]
    conv = [0, 1, 3, 2]
    triples = set()
    for a in range(4):
        for b in range(4):
            for c in range(4):
                if a == 0:
                    if b == c:
                        triples.add((a, b, c))
                    continue
                if b == 0:
                    if a == c:
                        triples.add((a, b, c))
                    continue
                if c == 0:
                    if b == conv[a]:
                        triples.add((a, b, c))
                    continue
                if (a, b, c) == (1, 1, 1):
                    continue
                triples.add((a, b, c))
    # close under the Peircean transforms so the checker's closure clause holds
    closed = set()
    for t in triples:
        closed |= peirce_transforms(conv, t)
    # removing (1,1,1) must also remove its transforms (it is its own orbit)
    closed.discard((1, 1, 1))
    return RaAtomStructure(names, {0}, conv, closed)


def test_maddux_structures_pass_axioms():
    for k in range(1, 6):
        s = maddux_E(k)
        assert check_ra_axioms(s).ok, f"E_{k} fails"
        assert s.is_integral and s.is_symmetric
        assert s.n_atoms == k + 1


def test_maddux_forbids_exactly_monochromatic():
    s = maddux_E(3)
    div = s.nonidentity()
    for a in div:
        for b in div:
            for c in div:
                expected = not (a == b == c)
                assert s.consistent(a, b, c) == expected


def test_composition_arithmetic():
    s = maddux_E(2)
    a1, a2 = s.atom("a1"), s.atom("a2")
    # a1;a1 = {id, a2}: the monochromatic witness is forbidden
    assert ra_compose(s, {a1}, {a1}) == s.element(["id", "a2"])
    assert ra_compose(s, {a1}, {a2}) == s.element(["a1", "a2"])
    # composing with the full element stays full
    assert ra_compose(s, s.full(), s.full()) == s.full()
    assert ra_compose(s, frozenset(), s.full()) == frozenset()


def test_converse_on_nonsymmetric():
    s = small_nonsymmetric()
    assert check_ra_axioms(s).ok
    p, q = s.atom("p"), s.atom("q")
    assert ra_converse(s, {p}) == {q}
    assert ra_converse(s, {p, q}) == {p, q}
    # Peircean rotation: c <= a;b iff conv(a);c meets b
    for (a, b, c) in s.triples:
        assert (s.converse[a], c, b) in s.triples
        assert (c, s.converse[b], a) in s.triples


def test_bool_ops_bundle():
    s = maddux_E(3)
    ops = bool_ops(s)
    rng = random.Random(7)
    atoms = list(s.atoms())
    for _ in range(200):
        x = frozenset(a for a in atoms if rng.random() < 0.5)
        y = frozenset(a for a in atoms if rng.random() < 0.5)
        assert ops["meet"](x, ops["complement"](x)) == ops["bottom"]
        assert ops["join"](x, ops["complement"](x)) == ops["top"]
        # De Morgan
        assert ops["complement"](ops["join"](x, y)) == \
            ops["meet"](ops["complement"](x), ops["complement"](y))


def test_checker_rejects_broken_converse():
    s = maddux_E(2)
    bad = RaAtomStructure(s.names, s.identity, [0, 2, 1], s.triples)
    rep = check_ra_axioms(bad)
    assert not rep.ok


def test_checker_rejects_missing_peircean_closure():
    s = small_nonsymmetric()
    # drop one triple whose orbit has size > 1
    victim = next(t for t in s.triples
                  if len(peirce_transforms(s.converse, t)) > 1)
    bad = RaAtomStructure(s.names, s.identity, s.converse,
                          s.triples - {victim})
    assert not check_ra_axioms(bad).ok


def test_checker_rejects_identity_violation():
    # (id, a, b) with a != b breaks the identity law
    names = ["id", "a", "b"]
    triples = {(0, 0, 0), (1, 0, 1), (0, 1, 1), (1, 1, 0), (2, 0, 2),
               (0, 2, 2), (2, 2, 0), (0, 1, 2)}
    bad = RaAtomStructure(names, {0}, [0, 1, 2], triples)
    rep = check_ra_axioms(bad)
    assert not rep.ok


def test_associativity_clause_detects_failure():
    # of the 16 symmetric integral frames on two diversity atoms, exactly
    # four fail (those with an empty mixed composition a0;a1), and only on
    # associativity: converse, identity and the Peircean closure hold by
    # construction there
    raw = symmetric_integral_structures(2, require_valid=False)
    with_two = [s for s in raw if s.n_atoms == 3]
    assert len(with_two) == 16
    bad = [s for s in with_two if not check_ra_axioms(s).ok]
    assert len(bad) == 4
    for s in bad:
        rep = check_ra_axioms(s)
        assert all("associativity" in f for f in rep.failures), rep.failures


def test_enumeration_counts():
    # independent hand count for k=1: patterns {(a0,a0,a0)} present/absent,
    # both pass the axioms (flexible atom and the two-element group frame)
    small = symmetric_integral_structures(1)
    assert len(small) == 2
    two = symmetric_integral_structures(2)
    assert len(two) == 14
    assert all(check_ra_axioms(s).ok for s in two)
    # deterministic order: same call, same sequence of triple sets
    again = symmetric_integral_structures(2)
    assert [s.triples for s in two] == [s.triples for s in again]


def test_enumeration_count_three():
    structs = symmetric_integral_structures(3)
    assert len(structs) == 308
    assert all(len(s.identity) == 1 and s.is_symmetric for s in structs)
