"""Basic matrices, relational bases, representations, CA networks."""

import pytest

from cylgame import networks as nw
from cylgame.ca import full_set_ca
from cylgame.ra import RaAtomStructure, check_ra_axioms


def _symmetric_frame(names, forbidden):
    """All identity-respecting triples except the forbidden diversity ones."""
    n = len(names)
    trips = set()
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if a == 0 or b == 0 or c == 0:
                    if (a == 0 and b == c) or (b == 0 and a == c) \
                            or (c == 0 and a == b):
                        trips.add((a, b, c))
                    continue
                if (a, b, c) in forbidden:
                    continue
                trips.add((a, b, c))
    return RaAtomStructure(names, {0}, {i: i for i in range(n)}, trips)


def E23():
    # two symmetric diversity atoms, monochromatic triangles forbidden
    return _symmetric_frame(["Id", "a", "b"], {(1, 1, 1), (2, 2, 2)})


def E11():
    # a single flexible diversity atom: (a,a,a) stays consistent
    return _symmetric_frame(["Id", "a"], set())


def test_fixtures_are_frames():
    assert check_ra_axioms(E23()).ok
    assert check_ra_axioms(E11()).ok


def test_rep_search_finds_base_5():
    s = E23()
    rep = nw.rep_search(s, 5)
    assert rep is not None
    assert nw.rep_verify(s, rep).ok
    js = rep.to_json()
    assert js["base_size"] == 5
    assert all(i <= j for i, j, _ in js["edges"])


def test_rep_search_base_6_fails():
    # at base 6 two points must share a colour triangle by pigeonhole
    assert nw.rep_search(E23(), 6) is None


def test_rep_search_matches_oracle_at_base_4():
    s = E23()
    assert (nw.rep_search_oracle(s, 4) is None) == (nw.rep_search(s, 4) is None)


def test_rep_search_requires_integral():
    s = E23()
    twoid = RaAtomStructure(["e1", "e2"], {0, 1}, {0: 0, 1: 1},
                            {(0, 0, 0), (1, 1, 1)})
    with pytest.raises(ValueError):
        nw.rep_search(twoid, 3)
    del s


def test_enumerate_basic_matrices():
    assert len(nw.enumerate_basic_matrices(E23(), 3)) == 6


def test_basis_search_counts():
    bs, info = nw.basis_search(E23(), 4)
    assert bs is not None
    assert info["count"] == 26
    bs1, info1 = nw.basis_search(E11(), 4)
    assert bs1 is not None
    assert info1["count"] == 3


def test_basis_members_are_validated_matrices():
    bs, _ = nw.basis_search(E23(), 4)
    for m in bs:
        assert nw.matrix_validate(E23(), m).ok


def test_matrix_validate():
    s = E23()
    assert nw.matrix_validate(s, nw.BasicMatrix([[0, 1], [1, 0]])).ok
    # entry (1,0) must be the converse of entry (0,1)
    assert not nw.matrix_validate(s, nw.BasicMatrix([[0, 1], [2, 0]])).ok


def test_ca_network_enumeration():
    S32 = full_set_ca(3, 2)
    assert len(nw.enumerate_ca_networks(S32, 1)) == 2
    assert len(nw.enumerate_ca_networks(S32, 2)) == 2
    assert len(nw.enumerate_ca_networks(S32, 3)) == 0
    for net in nw.enumerate_ca_networks(S32, 2):
        assert nw.network_validate(S32, net).ok


def test_ca_basis_search():
    S32 = full_set_ca(3, 2)
    bs, info = nw.ca_basis_search(S32, 3)
    assert bs is not None
    assert info["count"] == 4


def test_network_from_atom():
    S32 = full_set_ca(3, 2)
    net = nw.network_from_atom(S32, S32.atom("(0,0,1)"))
    assert len(net.nodes) == 2
    assert nw.network_validate(S32, net).ok
    net = nw.network_from_atom(S32, S32.atom("(0,0,0)"))
    assert len(net.nodes) == 1
    assert nw.network_validate(S32, net).ok


def test_canonical_network_identifies_node_swaps():
    S32 = full_set_ca(3, 2)
    # the two labeled size-2 networks differ only by swapping the nodes
    nets = nw.enumerate_ca_networks(S32, 2)
    assert len({nw.canonical_network(net) for net in nets}) == 1
    # the two one-node networks carry genuinely different labels
    nets1 = nw.enumerate_ca_networks(S32, 1)
    assert len({nw.canonical_network(net) for net in nets1}) == 2
