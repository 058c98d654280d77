"""Game solvers, their agreement with basis search, EF games, certificates."""

import pytest

from cylgame import games as gm
from cylgame import networks as nw
from cylgame.ca import full_set_ca
from cylgame.constructions import rainbow_ra
from cylgame.ra import RaAtomStructure


def _frame(names, forbidden):
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


E23 = _frame(["Id", "a", "b"], {(1, 1, 1), (2, 2, 2)})
E11 = _frame(["Id", "a"], set())


# ---- safety game <-> relational basis

@pytest.mark.parametrize("struct,m,positions", [
    (E11, 3, 6), (E11, 4, 10), (E23, 3, 9), (E23, 4, 20),
])
def test_ra_game_agrees_with_basis(struct, m, positions):
    bs, _ = nw.basis_search(struct, m)
    g = gm.solve_ra_game(struct, m)
    assert bs is not None
    assert g.winner == "exists"
    assert g.detail["positions"] == positions
    assert g.detail["alive"] == positions


@pytest.mark.parametrize("m", [3, 4])
def test_no_reuse_flips_the_answer(m):
    bs, _ = nw.basis_search(E23, m, allow_reuse=False)
    g = gm.solve_ra_game(E23, m, allow_reuse=False)
    assert bs is None
    assert g.winner == "forall"


def test_bounded_game_exists_at_all_depths():
    for k in (1, 2, 3, 6):
        assert gm.solve_ra_game(E23, 3, k=k).winner == "exists"


def test_ra_game_monotone_in_node_budget():
    # below three nodes no triangle demand can be met; from three on
    # the monochromatic frame always has a safe answer
    assert gm.solve_ra_game(E23, 1).winner == "forall"
    assert gm.solve_ra_game(E23, 2).winner == "forall"
    assert gm.solve_ra_game(E23, 3).winner == "exists"


# ---- EF pebble games

def test_ef_matches_brute_force_oracle():
    bad = 0
    for mm in (1, 2, 3):
        for nn in (1, 2, 3):
            G, H = gm.complete_graph(mm), gm.complete_graph(nn)
            for p in range(4):
                for r in range(4):
                    if gm.solve_ef(G, H, p, r).winner != \
                            gm.solve_ef_oracle(G, H, p, r).winner:
                        bad += 1
    assert bad == 0


def test_ef_distinguishes_k4_k3_with_four_pebbles():
    G, H = gm.complete_graph(4), gm.complete_graph(3)
    assert gm.solve_ef(G, H, 4, 4).winner == "forall"
    # three pebbles never trap the duplicator, however many rounds
    assert gm.solve_ef(G, H, 3, 9).winner == "exists"


def test_ef_symmetric_on_equal_graphs():
    G = gm.complete_graph(3)
    assert gm.solve_ef(G, G, 3, 5).winner == "exists"


# ---- Lyndon-style level check

def test_lyndon_representable_structures_pass_via_rep():
    assert gm.lyndon_check(E23, 5) == \
        (5, {"via": "representation", "base_size": 5})
    assert gm.lyndon_check(E11, 5) == \
        (5, {"via": "representation", "base_size": 3})


# ---- CA atomic and bold games

def test_atomic_game_agrees_with_ca_basis():
    S32 = full_set_ca(3, 2)
    g = gm.solve_atomic_game(S32, 3)
    bs, _ = nw.ca_basis_search(S32, 3)
    assert g.winner == "exists"
    assert bs is not None


def test_atomic_game_full_set_3_3():
    g = gm.solve_atomic_game(full_set_ca(3, 3), 3)
    assert g.winner == "exists"
    assert g.detail == {"positions": 7, "alive": 7}


def test_atomic_game_rejects_m_below_dimension():
    with pytest.raises(ValueError):
        gm.solve_atomic_game(full_set_ca(3, 2), 2)


def test_bold_game_tracks_base_size():
    assert gm.solve_bold_game(full_set_ca(2, 2), 2).winner == "exists"
    g = gm.solve_bold_game(full_set_ca(2, 2), 3)
    assert g.winner == "forall"
    assert g.detail["alive"] == 0
    assert gm.solve_bold_game(full_set_ca(3, 2), 3).winner == "forall"


# ---- strategy certificates

def test_greedy_representation_strategy_verifies():
    def rho_guided(struct, bm, demand):
        x, y, a, b = demand
        for z in range(bm.size):
            if bm[x, z] == a and bm[z, y] == b:
                return ("node", z)
        return ("fresh",)

    cert = gm.StrategyCertificate("ra", "exists_wins", {"m": 4, "k": 3},
                                  rho_guided)
    assert gm.verify_strategy(E23, cert).ok
    assert cert.materialized


def test_verify_rejects_wrong_claim():
    def rho(struct, bm, demand):
        return ("fresh",)

    cert = gm.StrategyCertificate("ra", "exists_wins", {"m": 3, "k": 4}, rho)
    r = gm.verify_strategy(_frame(["Id", "a"],
                                  {(1, 1, 1)}), cert)
    # a lone non-flexible atom cannot absorb fresh nodes forever
    assert not r.ok


def test_certificate_json_shape():
    def rho(struct, bm, demand):
        x, y, a, b = demand
        for z in range(bm.size):
            if bm[x, z] == a and bm[z, y] == b:
                return ("node", z)
        return ("fresh",)

    cert = gm.StrategyCertificate("ra", "exists_wins", {"m": 4, "k": 3}, rho)
    assert gm.verify_strategy(E23, cert).ok
    js = cert.to_json(E23)
    assert js["game"] == "ra"
    assert js["claim"] == "exists_wins"
    assert js["params"] == {"m": 4, "k": 3}
    assert js["positions"]  # materialized during verification
    assert list(js["positions"]) == sorted(js["positions"])


# ---- rainbow RA <-> EF correspondence

def test_rainbow_game_tracks_ef_game():
    """Existential wins in the bounded no-reuse game on the rainbow
    algebra of (K_m, K_n) exactly when the duplicator survives the
    matching EF game."""
    for mm in (2, 3):
        for nn in (2, 3):
            G, H = gm.complete_graph(mm), gm.complete_graph(nn)
            R = rainbow_ra(G, H)
            for p in (2, 3):
                for r in (1, 2):
                    if r > p:
                        continue
                    ef = gm.solve_ef(G, H, p, r).winner
                    ra = gm.solve_ra_game(R, p + 1, k=r,
                                          allow_reuse=False).winner
                    assert ra == ef, (mm, nn, p, r, ef, ra)
