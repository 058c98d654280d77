"""Two-player atom games on networks, pebble games, strategy certificates.

Conventions shared by all solvers here:

* positions are canonicalized before memoization, so exact solves stay
  feasible on small structures;
* a round count k includes the opening move (the universal player placing
  an atom), so k = 0 is a vacuous win for the existential player;
* node budgets m bound the number of nodes ever in play at once.

verify_strategy replays a scripted strategy for one player against every
move of the other and checks the claimed outcome, so a certificate never
depends on the solvers being right.
"""

from itertools import product

from . import networks as nw
from .util import report, BudgetExceeded


class GameResult:
    def __init__(self, winner, per_initial=None, detail=None):
        self.winner = winner          # "exists" | "forall"
        self.per_initial = per_initial or {}
        self.detail = detail or {}

    def __repr__(self):
        return f"GameResult({self.winner!r}, {self.per_initial!r})"


class StrategyCertificate:
    """A scripted strategy for one player of one game, plus the claim.

    game: "atomic" (cylindric atom game), "bold" (witness-naming variant),
          "ra" (triangle game on basic matrices), "ef" (pebble game).
    claim: "forall_wins" or "exists_wins".
    params: game parameters (m, k, ...).
    strategy: a callable, or a {position key: encoded move} mapping as
        produced by a prior verification run.
    initial: atoms the universal player opens with (None = every atom).
    """

    def __init__(self, game, claim, params, strategy, initial=None, note=""):
        self.game = game
        self.claim = claim
        self.params = dict(params)
        self.strategy = strategy
        self.initial = initial
        self.note = note
        self.materialized = None  # filled by verify_strategy

    def to_json(self, struct=None):
        data = {
            "game": self.game,
            "claim": self.claim,
            "params": {k: v for k, v in sorted(self.params.items())
                       if isinstance(v, (int, str, bool, float))},
            "note": self.note,
        }
        if self.initial is not None and struct is not None:
            data["initial"] = sorted(struct.names[a] for a in self.initial)
        if self.materialized is not None:
            data["positions"] = {k: self.materialized[k] for k in sorted(self.materialized)}
        return data


def _pairs(struct):
    cache = getattr(struct, "_pairs_for_cache", None)
    if cache is None:
        cache = nw._pairs_for(struct)
        struct._pairs_for_cache = cache
    return cache


# ----------------------------------------------------------- RA atom game

def _ra_initial_positions(struct, atom):
    """The matrices the existential player may answer an opening atom with."""
    if atom in struct.identity:
        m = nw.BasicMatrix([[atom]])
        return [m] if nw.matrix_validate(struct, m) else []
    conv = struct.converse[atom]
    out = []
    for e1 in sorted(struct.identity):
        for e2 in sorted(struct.identity):
            m = nw.BasicMatrix([[e1, atom], [conv, e2]])
            if nw.matrix_validate(struct, m):
                out.append(m)
    return out


def ra_demands(struct, mat):
    pairs_for = _pairs(struct)
    s = mat.size
    for x in range(s):
        for y in range(s):
            for (a, b) in pairs_for[mat[x, y]]:
                yield (x, y, a, b)


def _ra_col_completions(struct, mat, fixed, diag_choices):
    """Columns col[w] = M(w, z) wiring a node z to every node of mat,
    respecting the fixed entries; yields (col, diag_atom)."""
    s = mat.size
    others = [w for w in range(s) if w not in fixed]
    nonid = sorted(set(struct.atoms()) - struct.identity)

    def ok(col, w):
        # triangles (w1, w, z) against assigned columns, plus (w, w, z)
        for w1 in range(s):
            if w1 == w or col.get(w1) is None:
                continue
            if not struct.consistent(mat[w1, w], col[w], col[w1]):
                return False
        return struct.consistent(mat[w, w], col[w], col[w])

    col0 = dict(fixed)
    for w in fixed:
        if not ok(col0, w):
            return

    def rec(idx, col):
        if idx == len(others):
            for e in diag_choices:
                if all(struct.consistent(e, struct.converse[col[w]], struct.converse[col[w]])
                       for w in range(s)):
                    yield dict(col), e
            return
        w = others[idx]
        for c in nonid:
            col[w] = c
            if ok(col, w):
                yield from rec(idx + 1, col)
            del col[w]

    yield from rec(0, col0)


def ra_responses(struct, mat, demand, m, allow_reuse=True):
    """All matrices the existential player may move to.  An in-place witness
    yields mat itself; reuse rewrites one node's edges; a fresh node grows
    the matrix."""
    x, y, a, b = demand
    s = mat.size
    out = []
    seen = set()
    for z in range(s):
        if mat[x, z] == a and mat[z, y] == b:
            out.append(mat)
            seen.add(mat.entries)
            break
    if allow_reuse:
        for z in range(s):
            if z == x or z == y:
                continue
            sub = _drop_node(mat, z)
            fixed = {_shift(w, z): v for w, v in ((x, a), (y, struct.converse[b]))}
            for col, _e in _ra_col_completions(struct, sub, fixed, [mat[z, z]]):
                rows = [list(r) for r in mat.entries]
                for w in range(s):
                    if w == z:
                        continue
                    c = col[_shift(w, z)]
                    rows[w][z] = c
                    rows[z][w] = struct.converse[c]
                cand = nw.BasicMatrix(rows)
                if cand.entries not in seen:
                    seen.add(cand.entries)
                    out.append(cand)
    if s < m:
        fixed = {x: a, y: struct.converse[b]}
        for col, e in _ra_col_completions(struct, mat, fixed, sorted(struct.identity)):
            cand = mat.grown([col[w] for w in range(s)],
                             [struct.converse[col[w]] for w in range(s)], e)
            if cand.entries not in seen:
                seen.add(cand.entries)
                out.append(cand)
    return out


def _drop_node(mat, z):
    s = mat.size
    return nw.BasicMatrix([[mat[i, j] for j in range(s) if j != z]
                           for i in range(s) if i != z])


def _shift(w, z):
    return w if w < z else w - 1


def solve_ra_game(struct, m, k=None, allow_reuse=True, initial_atoms=None, cap=500_000):
    """Winner of the triangle game on basic matrices with node budget m.

    k = None solves the unbounded (safety) game by a greatest fixed point
    on the reachable position graph; an integer k solves the k-round game,
    the opening atom placement counting as round one.
    """
    initials = sorted(initial_atoms) if initial_atoms is not None else list(struct.atoms())
    if k is not None and k <= 0:
        return GameResult("exists", {struct.names[a]: "exists" for a in initials})
    ckeys = {}

    def ckey(mat):
        got = ckeys.get(mat.entries)
        if got is None:
            got = nw.canonical_matrix(mat)
            ckeys[mat.entries] = got
        return got

    if k is not None:
        memo = {}

        def ewins(mat, r):
            if r == 0:
                return True
            key = (ckey(mat), r)
            if key in memo:
                return memo[key]
            if len(memo) > cap:
                raise BudgetExceeded("solve_ra_game", cap, len(memo))
            val = True
            for demand in ra_demands(struct, mat):
                resp = ra_responses(struct, mat, demand, m, allow_reuse)
                if not any(ewins(rm, r - 1) for rm in resp):
                    val = False
                    break
            memo[key] = val
            return val

        per = {}
        for atom in initials:
            starts = _ra_initial_positions(struct, atom)
            win = any(ewins(s0, k - 1) for s0 in starts)
            per[struct.names[atom]] = "exists" if win else "forall"
        winner = "exists" if all(v == "exists" for v in per.values()) else "forall"
        return GameResult(winner, per, {"positions": len(memo)})

    by_key = {}
    starts = {}
    frontier = []
    for atom in initials:
        starts[atom] = []
        for mat in _ra_initial_positions(struct, atom):
            key = ckey(mat)
            starts[atom].append(key)
            if key not in by_key:
                by_key[key] = mat
                frontier.append(mat)
                if len(by_key) > cap:
                    raise BudgetExceeded("solve_ra_game", cap, len(by_key))
    moves = {}  # key -> list of successor-key lists, one per demand
    while frontier:
        mat = frontier.pop()
        key = ckey(mat)
        dem_lists = []
        for demand in ra_demands(struct, mat):
            rkeys = []
            for rm in ra_responses(struct, mat, demand, m, allow_reuse):
                rkey = ckey(rm)
                rkeys.append(rkey)
                if rkey not in by_key:
                    by_key[rkey] = rm
                    frontier.append(rm)
                    if len(by_key) > cap:
                        raise BudgetExceeded("solve_ra_game", cap, len(by_key))
            dem_lists.append(rkeys)
        moves[key] = dem_lists
    alive = _safety_fixed_point(by_key, moves)
    per = {}
    for atom in initials:
        win = any(k2 in alive for k2 in starts[atom])
        per[struct.names[atom]] = "exists" if win else "forall"
    winner = "exists" if all(v == "exists" for v in per.values()) else "forall"
    return GameResult(winner, per, {"positions": len(by_key), "alive": len(alive)})


def _safety_fixed_point(by_key, moves):
    alive = set(by_key)
    changed = True
    while changed:
        changed = False
        for key in list(alive):
            for rkeys in moves[key]:
                if not any(rk in alive for rk in rkeys):
                    alive.discard(key)
                    changed = True
                    break
    return alive


# ------------------------------------------------------ CA atomic game

def ca_demands(struct, net):
    n = struct.n
    seen = set()
    for xs in product(net.nodes, repeat=n):
        c = net.label(xs)
        for i in range(n):
            for a in struct.class_members(i)[struct.acc[i][c]]:
                d = (xs, i, a)
                if d not in seen:
                    seen.add(d)
                    yield d


def ca_responses(struct, net, demand, m):
    """Existential answers: an existing node already carrying the label, or
    any consistent one-node extension (when the budget allows)."""
    xs, i, a = demand
    out = []
    for z in net.nodes:
        ys = xs[:i] + (z,) + xs[i + 1:]
        if net.label(ys) == a:
            out.append(net)
            break
    if len(net.nodes) < m:
        out.extend(nw.network_extensions(struct, net, demand))
    return out


def solve_atomic_game(struct, m, k=None, initial_atoms=None, cap=200_000):
    """Winner of the cylindric atom game with node budget m.

    k counts rounds including the opening placement; k = None solves the
    safety game.  The opening move admits a unique minimal network, so the
    existential player has no choice there.
    """
    if m < struct.n:
        raise ValueError("node budget below the dimension")
    initials = sorted(initial_atoms) if initial_atoms is not None else list(struct.atoms())
    if k is not None and k <= 0:
        return GameResult("exists", {struct.names[a]: "exists" for a in initials})
    ckeys = {}

    def ckey(net):
        kk = net.key()
        got = ckeys.get(kk)
        if got is None:
            got = nw.canonical_network(net)
            ckeys[kk] = got
        return got

    if k is not None:
        memo = {}

        def ewins(net, r):
            if r == 0:
                return True
            key = (ckey(net), r)
            if key in memo:
                return memo[key]
            if len(memo) > cap:
                raise BudgetExceeded("solve_atomic_game", cap, len(memo))
            val = True
            for demand in ca_demands(struct, net):
                resp = ca_responses(struct, net, demand, m)
                if not any(ewins(rn, r - 1) for rn in resp):
                    val = False
                    break
            memo[key] = val
            return val

        per = {}
        for atom in initials:
            net = nw.network_from_atom(struct, atom)
            ok = bool(nw.network_validate(struct, net)) and ewins(net, k - 1)
            per[struct.names[atom]] = "exists" if ok else "forall"
        winner = "exists" if all(v == "exists" for v in per.values()) else "forall"
        return GameResult(winner, per, {"positions": len(memo)})

    by_key = {}
    starts = {}
    frontier = []
    for atom in initials:
        net = nw.network_from_atom(struct, atom)
        if not nw.network_validate(struct, net):
            starts[atom] = None
            continue
        key = ckey(net)
        starts[atom] = key
        if key not in by_key:
            by_key[key] = net
            frontier.append(net)
            if len(by_key) > cap:
                raise BudgetExceeded("solve_atomic_game", cap, len(by_key))
    moves = {}
    while frontier:
        net = frontier.pop()
        key = ckey(net)
        dem_lists = []
        for demand in ca_demands(struct, net):
            rkeys = []
            for rn in ca_responses(struct, net, demand, m):
                rkey = ckey(rn)
                rkeys.append(rkey)
                if rkey not in by_key:
                    by_key[rkey] = rn
                    frontier.append(rn)
                    if len(by_key) > cap:
                        raise BudgetExceeded("solve_atomic_game", cap, len(by_key))
            dem_lists.append(rkeys)
        moves[key] = dem_lists
    alive = _safety_fixed_point(by_key, moves)
    per = {}
    for atom in initials:
        win = starts[atom] is not None and starts[atom] in alive
        per[struct.names[atom]] = "exists" if win else "forall"
    winner = "exists" if all(v == "exists" for v in per.values()) else "forall"
    return GameResult(winner, per, {"positions": len(by_key), "alive": len(alive)})


# ----------------------------------------------------------- bold game

def bold_move_coherent(struct, xs, i, a, w):
    """Name-level legality of a witness-naming move: placing atom a at
    xs[i -> w] must agree with a's diagonal profile, i.e. a lies below
    d_pi exactly when xs[p] is the named slot."""
    for p in range(len(xs)):
        if p != i and (a in struct.diag[(p, i)]) != (xs[p] == w):
            return False
    return True


def bold_demands(struct, net, m):
    """Universal moves (xs, i, a, w): a demand plus a named witness slot.
    The slot may be fresh (when a slot below m is free) or any node already
    in use, subject to name-level coherence with a's diagonal profile."""
    for (xs, i, a) in ca_demands(struct, net):
        fresh = next((w for w in range(m) if w not in net.nodes), None)
        slots = list(net.nodes)
        if fresh is not None:
            slots.append(fresh)
        for w in slots:
            if bold_move_coherent(struct, xs, i, a, w):
                yield (xs, i, a, w)


def bold_responses(struct, net, demand):
    """Existential answers to a witness-naming move: node w's labels are
    thrown away (if any) and every tuple through w is recompleted, with the
    demanded label forced."""
    xs, i, a, w = demand
    if not bold_move_coherent(struct, xs, i, a, w):
        return []
    if w not in net.nodes:
        exts = nw.network_extensions(struct, net, (xs, i, a))
        return [_rename_last(ext, w) for ext in exts]
    keep = tuple(u for u in net.nodes if u != w)
    if not keep:
        base = nw.network_from_atom(struct, a)
        return [base] if nw.network_validate(struct, base) else []
    lab = {t: v for t, v in net.lab.items() if w not in t}
    stripped = nw.Network(struct, keep, lab)
    fresh = keep[-1] + 1
    xs2 = tuple(fresh if x == w else x for x in xs)
    exts = nw.network_extensions(struct, stripped, (xs2, i, a))
    return [_rename_last(ext, w) for ext in exts]


def _rename_last(net, w):
    """Rename the most recently added node (nodes[-1]) to slot id w."""
    fresh = net.nodes[-1]
    if fresh == w:
        return net
    mapping = {u: u for u in net.nodes}
    mapping[fresh] = w
    inv = {v: u for u, v in mapping.items()}
    nodes = tuple(sorted(mapping[u] for u in net.nodes))
    lab = {}
    for t in nw.nondecreasing_tuples(list(nodes), net.struct.n):
        lab[t] = net.label(tuple(inv[u] for u in t))
    return nw.Network(net.struct, nodes, lab)


def solve_bold_game(struct, m, initial_atoms=None, cap=100_000):
    """Winner of the witness-naming safety game with m node slots."""
    if m < struct.n:
        raise ValueError("node budget below the dimension")
    initials = sorted(initial_atoms) if initial_atoms is not None else list(struct.atoms())
    ckeys = {}

    def ckey(net):
        kk = net.key()
        got = ckeys.get(kk)
        if got is None:
            got = nw.canonical_network(net)
            ckeys[kk] = got
        return got

    by_key = {}
    starts = {}
    frontier = []
    for atom in initials:
        net = nw.network_from_atom(struct, atom)
        if not nw.network_validate(struct, net):
            starts[atom] = None
            continue
        key = ckey(net)
        starts[atom] = key
        if key not in by_key:
            by_key[key] = net
            frontier.append(net)
            if len(by_key) > cap:
                raise BudgetExceeded("solve_bold_game", cap, len(by_key))
    moves = {}
    while frontier:
        net = frontier.pop()
        key = ckey(net)
        dem_lists = []
        for demand in bold_demands(struct, net, m):
            rkeys = []
            for rn in bold_responses(struct, net, demand):
                rkey = ckey(rn)
                rkeys.append(rkey)
                if rkey not in by_key:
                    by_key[rkey] = rn
                    frontier.append(rn)
                    if len(by_key) > cap:
                        raise BudgetExceeded("solve_bold_game", cap, len(by_key))
            dem_lists.append(rkeys)
        moves[key] = dem_lists
    alive = _safety_fixed_point(by_key, moves)
    per = {}
    for atom in initials:
        win = starts[atom] is not None and starts[atom] in alive
        per[struct.names[atom]] = "exists" if win else "forall"
    winner = "exists" if all(v == "exists" for v in per.values()) else "forall"
    return GameResult(winner, per, {"positions": len(by_key), "alive": len(alive)})


# --------------------------------------------------------- pebble games

class EfStructure:
    """Finite structure with binary relations, for pebble games."""

    def __init__(self, size, rels, name=""):
        self.size = size
        self.rels = {k: frozenset(v) for k, v in rels.items()}
        self.name = name

    def __repr__(self):
        return self.name or f"EfStructure({self.size})"


def complete_graph(n):
    return EfStructure(n, {"E": {(i, j) for i in range(n) for j in range(n) if i != j}},
                       name=f"K{n}")


def linear_order(n):
    return EfStructure(n, {"<": {(i, j) for i in range(n) for j in range(n) if i < j}},
                       name=f"L{n}")


def _partial_iso_ok(G, H, pairs, new):
    (a, b) = new
    rels = set(G.rels) | set(H.rels)
    for (a2, b2) in pairs:
        if (a == a2) != (b == b2):
            return False
        for rel in rels:
            RG = G.rels.get(rel, frozenset())
            RH = H.rels.get(rel, frozenset())
            if ((a, a2) in RG) != ((b, b2) in RH):
                return False
            if ((a2, a) in RG) != ((b2, b) in RH):
                return False
    return True


def solve_ef(G, H, p, r):
    """Winner of the p-pebble r-round back-and-forth game on G vs H.

    Pebble slots are interchangeable, so positions are memoized as the set
    of placed pairs.
    """
    memo = {}

    def ewins(pairs, rounds):
        if rounds == 0:
            return True
        key = (frozenset(pairs), rounds)
        if key in memo:
            return memo[key]
        val = True
        lift_choices = list(pairs)
        if len(pairs) < p:
            lift_choices.append(None)
        for lifted in lift_choices:
            rest = tuple(pr for pr in pairs if pr != lifted) if lifted else pairs
            for flip in (False, True):
                side = H if flip else G
                other = G if flip else H
                for elem in range(side.size):
                    answered = False
                    for resp in range(other.size):
                        pair = (resp, elem) if flip else (elem, resp)
                        if _partial_iso_ok(G, H, rest, pair):
                            if ewins(rest + (pair,), rounds - 1):
                                answered = True
                                break
                    if not answered:
                        val = False
                        break
                if not val:
                    break
            if not val:
                break
        memo[key] = val
        return val

    win = ewins(tuple(), r)
    return GameResult("exists" if win else "forall", detail={"positions": len(memo)})


def solve_ef_oracle(G, H, p, r):
    """Reference pebble-game solver: explicit pebble slots, no symmetry."""
    memo = {}

    def ewins(slots, rounds):
        if rounds == 0:
            return True
        key = (slots, rounds)
        if key in memo:
            return memo[key]
        val = True
        for ell in range(p):
            rest = slots[:ell] + (None,) + slots[ell + 1:]
            pairs = tuple(pr for pr in rest if pr is not None)
            for flip in (False, True):
                side = H if flip else G
                other = G if flip else H
                for elem in range(side.size):
                    good = False
                    for resp in range(other.size):
                        pair = (resp, elem) if flip else (elem, resp)
                        if _partial_iso_ok(G, H, pairs, pair):
                            if ewins(rest[:ell] + (pair,) + rest[ell + 1:], rounds - 1):
                                good = True
                                break
                    if not good:
                        val = False
                        break
                if not val:
                    break
            if not val:
                break
        memo[key] = val
        return val

    win = ewins((None,) * p, r)
    return GameResult("exists" if win else "forall", detail={"positions": len(memo)})


# ------------------------------------------------------ lyndon condition

def lyndon_check(struct, K, rep_base_cap=6, cap=200_000):
    """Largest k <= K for which the existential player wins the k-round
    atom game whose node budget grows with the rounds (2 + k nodes for
    matrices, n + k for cylindric structures), so the budget never binds.

    A square representation settles every k at once: answering inside the
    representation meets all demands, so the game is won at every depth.
    Without one the bounded games are solved exactly.
    """
    is_ra = hasattr(struct, "converse")
    if is_ra and len(struct.identity) == 1:
        for b in range(1, rep_base_cap + 1):
            rep = nw.rep_search(struct, b)
            if rep is not None:
                return K, {"via": "representation", "base_size": b}
    best = 0
    for k in range(1, K + 1):
        if is_ra:
            res = solve_ra_game(struct, m=2 + k, k=k, cap=cap)
        else:
            res = solve_atomic_game(struct, m=struct.n + k, k=k, cap=cap)
        if res.winner != "exists":
            return best, {"via": "exact game solve", "fails_at": k}
        best = k
    return best, {"via": "exact game solve"}


# ------------------------------------------------------ certificate replay

def verify_strategy(struct, cert, cap=500_000):
    """Replay a strategy certificate against all opposing moves.

    The scripted player's moves come from cert.strategy; the other player's
    options are enumerated exhaustively.  Passing means the claim holds on
    every branch.  Visited positions and the scripted moves are materialized
    onto cert.materialized for serialization.
    """
    if cert.game == "ra":
        return _verify_ra(struct, cert, cap)
    if cert.game == "atomic":
        return _verify_atomic(struct, cert, cap)
    if cert.game == "bold":
        return _verify_bold(struct, cert, cap)
    if cert.game == "ef":
        return _verify_ef(cert, cap)
    return report([f"unknown game {cert.game!r}"])


def _poskey(key):
    return repr(key)


def _script(cert, key, *args):
    """Fetch the scripted move for a position, from a callable or a
    materialized mapping."""
    if callable(cert.strategy):
        return cert.strategy(*args)
    return cert.strategy.get(_poskey(key))


def _enc_atomic_move(struct, move):
    xs, i, a = move
    return [list(xs), i, struct.names[a]]


def _dec_atomic_move(struct, enc):
    if enc is None:
        return None
    if isinstance(enc, tuple):
        return enc
    xs, i, name = enc
    return (tuple(xs), i, struct.atom(name))


def _enc_bold_move(struct, move):
    xs, i, a, w = move
    return [list(xs), i, struct.names[a], w]


def _dec_bold_move(struct, enc):
    if enc is None:
        return None
    if isinstance(enc, tuple):
        return enc
    xs, i, name, w = enc
    return (tuple(xs), i, struct.atom(name), w)


def _enc_ra_move(struct, move):
    x, y, a, b = move
    return [x, y, struct.names[a], struct.names[b]]


def _dec_ra_move(struct, enc):
    if enc is None:
        return None
    if isinstance(enc, tuple):
        return enc
    x, y, na, nb = enc
    return (x, y, struct.atom(na), struct.atom(nb))


def _verify_atomic(struct, cert, cap):
    m = cert.params["m"]
    k = cert.params.get("k")           # None = safety claim
    fails = []
    mat = {}
    initials = cert.initial if cert.initial is not None else list(struct.atoms())

    if cert.claim == "forall_wins":
        # scripted universal player; every existential answer is explored.
        # A bounded claim must strand the existential player within the
        # round budget on every branch; an unbounded claim must do so while
        # never letting a position repeat along a play (a repeat would hand
        # the existential player an infinite play).
        seen = {}

        def run(net, r, onpath):
            key = nw.canonical_network(net)
            if k is None and key in onpath:
                fails.append("existential player can force a repeating position")
                return False
            if k is not None and r <= 0:
                fails.append("round budget exhausted with the existential player alive")
                return False
            state = (key, r)
            if state in seen:
                return seen[state]
            if len(seen) > cap:
                raise BudgetExceeded("verify_strategy", cap, len(seen))
            move = _dec_atomic_move(struct, _script(cert, key, struct, net))
            if move is None:
                fails.append("scripted universal player has no move")
                seen[state] = False
                return False
            xs, i, a = move
            if any(x not in net.nodes for x in xs):
                fails.append(f"scripted move {move} uses unknown nodes")
                seen[state] = False
                return False
            c = net.label(xs)
            if a not in struct.class_members(i)[struct.acc[i][c]]:
                fails.append(f"scripted move {move} is not a legal demand")
                seen[state] = False
                return False
            mat[_poskey(key)] = _enc_atomic_move(struct, move)
            ok = True
            for rn in ca_responses(struct, net, move, m):
                if not run(rn, (r - 1) if k is not None else None, onpath | {key}):
                    ok = False
                    break
            seen[state] = ok
            return ok

        for atom in initials:
            net = nw.network_from_atom(struct, atom)
            if not nw.network_validate(struct, net):
                continue  # no legal opening answer: the claim holds trivially
            if not run(net, (k - 1) if k is not None else None, frozenset()):
                fails.append(f"strategy fails from atom {struct.names[atom]}")
                break
        cert.materialized = mat
        return report(fails)

    # exists_wins: scripted existential player, every universal demand tried
    seen = set()

    def run_e(net, r):
        if k is not None and r <= 0:
            return True
        key = nw.canonical_network(net)
        state = (key, r)
        if state in seen:
            return True
        seen.add(state)
        if len(seen) > cap:
            raise BudgetExceeded("verify_strategy", cap, len(seen))
        for demand in ca_demands(struct, net):
            answer = cert.strategy(struct, net, demand) if callable(cert.strategy) \
                else cert.strategy.get(_poskey(key) + "|" + _poskey(demand))
            if answer is None:
                fails.append(f"no scripted answer to {demand}")
                return False
            rn = _apply_atomic_answer(struct, net, demand, answer, m)
            if rn is None:
                fails.append(f"illegal scripted answer {answer} to {demand}")
                return False
            mat[_poskey(key) + "|" + _poskey(demand)] = _enc_answer(answer)
            if not run_e(rn, (r - 1) if k is not None else None):
                return False
        return True

    for atom in initials:
        net = nw.network_from_atom(struct, atom)
        if not nw.network_validate(struct, net):
            fails.append(f"no opening answer for atom {struct.names[atom]}")
            break
        if not run_e(net, (k - 1) if k is not None else None):
            fails.append(f"strategy fails from atom {struct.names[atom]}")
            break
    cert.materialized = mat
    return report(fails)


def _enc_answer(answer):
    if answer[0] == "node":
        return ["node", answer[1]]
    return ["fresh"]


def _apply_atomic_answer(struct, net, demand, answer, m):
    xs, i, a = demand
    kind = answer[0]
    if kind == "node":
        z = answer[1]
        if z not in net.nodes:
            return None
        ys = xs[:i] + (z,) + xs[i + 1:]
        return net if net.label(ys) == a else None
    if kind == "fresh":
        if len(net.nodes) >= m:
            return None
        if len(answer) > 1 and isinstance(answer[1], nw.Network):
            ext = answer[1]
            return ext if nw.network_validate(struct, ext) else None
        exts = nw.network_extensions(struct, net, demand)
        return exts[0] if exts else None
    return None


def _verify_bold(struct, cert, cap):
    m = cert.params["m"]
    fails = []
    mat = {}
    initials = cert.initial if cert.initial is not None else list(struct.atoms())
    if cert.claim != "forall_wins":
        return report(["bold-game certificates must claim a universal win"])
    seen = {}

    def run(net, onpath):
        key = nw.canonical_network(net)
        if key in onpath:
            fails.append("existential player can force a repeating position")
            return False
        if key in seen:
            return seen[key]
        if len(seen) > cap:
            raise BudgetExceeded("verify_strategy", cap, len(seen))
        move = _dec_bold_move(struct, _script(cert, key, struct, net))
        if move is None:
            fails.append("scripted universal player has no move")
            seen[key] = False
            return False
        xs, i, a, w = move
        legal = (all(x in net.nodes for x in xs) and w < m
                 and bold_move_coherent(struct, xs, i, a, w))
        if legal:
            c = net.label(xs)
            legal = a in struct.class_members(i)[struct.acc[i][c]]
        if not legal:
            fails.append(f"scripted move {move} is not legal")
            seen[key] = False
            return False
        mat[_poskey(key)] = _enc_bold_move(struct, move)
        ok = True
        for rn in bold_responses(struct, net, move):
            if not run(rn, onpath | {key}):
                ok = False
                break
        seen[key] = ok
        return ok

    for atom in initials:
        net = nw.network_from_atom(struct, atom)
        if not nw.network_validate(struct, net):
            continue
        if not run(net, frozenset()):
            fails.append(f"strategy fails from atom {struct.names[atom]}")
            break
    cert.materialized = mat
    return report(fails)


def _verify_ra(struct, cert, cap):
    m = cert.params["m"]
    k = cert.params.get("k")
    allow_reuse = cert.params.get("allow_reuse", True)
    fails = []
    mat = {}
    initials = cert.initial if cert.initial is not None else list(struct.atoms())

    if cert.claim == "forall_wins":
        seen = {}

        def run(bm, r, onpath):
            key = nw.canonical_matrix(bm)
            if k is None and key in onpath:
                fails.append("existential player can force a repeating position")
                return False
            if k is not None and r <= 0:
                fails.append("round budget exhausted with the existential player alive")
                return False
            state = (key, r)
            if state in seen:
                return seen[state]
            if len(seen) > cap:
                raise BudgetExceeded("verify_strategy", cap, len(seen))
            move = _dec_ra_move(struct, _script(cert, key, struct, bm))
            if move is None:
                fails.append("scripted universal player has no move")
                seen[state] = False
                return False
            x, y, a, b = move
            if x >= bm.size or y >= bm.size or not struct.consistent(a, b, bm[x, y]):
                fails.append(f"scripted move {move} is not a legal demand")
                seen[state] = False
                return False
            mat[_poskey(key)] = _enc_ra_move(struct, move)
            ok = True
            for rm in ra_responses(struct, bm, move, m, allow_reuse):
                if not run(rm, (r - 1) if k is not None else None, onpath | {key}):
                    ok = False
                    break
            seen[state] = ok
            return ok

        for atom in initials:
            for s0 in _ra_initial_positions(struct, atom):
                if not run(s0, (k - 1) if k is not None else None, frozenset()):
                    fails.append(f"strategy fails from atom {struct.names[atom]}")
                    break
            if fails:
                break
        cert.materialized = mat
        return report(fails)

    seen = set()

    def run_e(bm, r):
        if k is not None and r <= 0:
            return True
        key = nw.canonical_matrix(bm)
        state = (key, r)
        if state in seen:
            return True
        seen.add(state)
        if len(seen) > cap:
            raise BudgetExceeded("verify_strategy", cap, len(seen))
        for demand in ra_demands(struct, bm):
            answer = cert.strategy(struct, bm, demand) if callable(cert.strategy) \
                else cert.strategy.get(_poskey(key) + "|" + _poskey(demand))
            if answer is None:
                fails.append(f"no scripted answer to {demand}")
                return False
            rm = _apply_ra_answer(struct, bm, demand, answer, m, allow_reuse)
            if rm is None:
                fails.append(f"illegal scripted answer {answer} to {demand}")
                return False
            mat[_poskey(key) + "|" + _poskey(demand)] = _enc_answer(answer)
            if not run_e(rm, (r - 1) if k is not None else None):
                return False
        return True

    for atom in initials:
        starts = _ra_initial_positions(struct, atom)
        if not starts:
            fails.append(f"no opening answer for atom {struct.names[atom]}")
            break
        if not any(run_e(s0, (k - 1) if k is not None else None) for s0 in starts):
            fails.append(f"strategy fails from atom {struct.names[atom]}")
            break
    cert.materialized = mat
    return report(fails)


def _apply_ra_answer(struct, bm, demand, answer, m, allow_reuse):
    x, y, a, b = demand
    kind = answer[0]
    if kind == "node":
        z = answer[1]
        if z < bm.size and bm[x, z] == a and bm[z, y] == b:
            return bm
        return None
    if kind == "matrix":
        for rm in ra_responses(struct, bm, demand, m, allow_reuse):
            if rm.entries == answer[1]:
                return rm
        return None
    if kind == "fresh":
        for rm in ra_responses(struct, bm, demand, m, allow_reuse):
            if rm.size == bm.size + 1:
                return rm
        return None
    return None


def _verify_ef(cert, cap):
    G = cert.params["G"]
    H = cert.params["H"]
    p = cert.params["p"]
    r = cert.params["r"]
    fails = []
    if cert.claim != "forall_wins":
        return report(["only universal pebble-game certificates are supported"])
    seen = {}

    def run(slots, rounds):
        if rounds <= 0:
            fails.append("round budget exhausted with the existential player alive")
            return False
        key = (slots, rounds)
        if key in seen:
            return seen[key]
        if len(seen) > cap:
            raise BudgetExceeded("verify_strategy", cap, len(seen))
        move = cert.strategy(G, H, slots) if callable(cert.strategy) \
            else cert.strategy.get(repr(key))
        if move is None:
            fails.append("scripted universal player has no move")
            seen[key] = False
            return False
        ell, flip, elem = move
        side = H if flip else G
        if not (0 <= ell < p) or not (0 <= elem < side.size):
            fails.append(f"bad pebble move {move}")
            seen[key] = False
            return False
        rest = slots[:ell] + (None,) + slots[ell + 1:]
        pairs = tuple(pr for pr in rest if pr is not None)
        other = G if flip else H
        ok = True
        for resp in range(other.size):
            pair = (resp, elem) if flip else (elem, resp)
            if _partial_iso_ok(G, H, pairs, pair):
                if not run(rest[:ell] + (pair,) + rest[ell + 1:], rounds - 1):
                    ok = False
                    break
        seen[key] = ok
        return ok

    if not run((None,) * p, r):
        fails.append("pebble strategy fails")
    return report(fails)
