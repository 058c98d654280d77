"""Atomic networks, basic matrices, basis search, representation search.

RA-side objects are square matrices of atoms (identity diagonal, converse
symmetry, consistent triangles).  CA-side networks label n-tuples of nodes
with atoms; only values on nondecreasing tuples are stored, the rest follow
from the coordinate action.  Basis searches run a greatest-fixed-point prune
over all matrices/networks on <= m nodes.
"""

from itertools import product

from .canon import canonical_form
from .util import Report, report, BudgetExceeded


# ---------------------------------------------------------------- RA side

class BasicMatrix:
    """Square atom matrix; doubles as the network of the RA games."""

    __slots__ = ("entries",)

    def __init__(self, entries):
        self.entries = tuple(tuple(row) for row in entries)

    @property
    def size(self):
        return len(self.entries)

    def __getitem__(self, pair):
        return self.entries[pair[0]][pair[1]]

    def __eq__(self, other):
        return isinstance(other, BasicMatrix) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"BasicMatrix({self.entries!r})"

    def grown(self, col, conv, diag_atom):
        """New matrix with one extra node; col[w] labels (w, new)."""
        s = self.size
        rows = [list(r) + [col[w]] for w, r in enumerate(self.entries)]
        rows.append([conv[w] for w in range(s)] + [diag_atom])
        return BasicMatrix(rows)


def matrix_validate(struct, mat):
    """BasicMatrix invariants: identity diagonal, converse symmetry,
    all triangles consistent, no identity atom off the diagonal."""
    fails = []
    s = mat.size
    for i in range(s):
        if mat[i, i] not in struct.identity:
            fails.append(f"entry ({i},{i}) not an identity atom")
    for i in range(s):
        for j in range(s):
            if i != j and mat[i, j] in struct.identity:
                fails.append(f"identity atom off diagonal at ({i},{j})")
            if mat[j, i] != struct.converse[mat[i, j]]:
                fails.append(f"converse symmetry broken at ({i},{j})")
    for i in range(s):
        for j in range(s):
            for k in range(s):
                if not struct.consistent(mat[i, j], mat[j, k], mat[i, k]):
                    fails.append(f"inconsistent triangle ({i},{j},{k})")
                    if len(fails) > 20:
                        return report(fails)
    return report(fails)


def _diag_choices(struct):
    return sorted(struct.identity)


def enumerate_basic_matrices(struct, m, cap=2_000_000):
    """All basic matrices of exact size m, in deterministic order."""
    if m < 1:
        raise ValueError("matrix size must be >= 1")
    nonid = sorted(set(struct.atoms()) - struct.identity)
    out = []
    edges = [(i, j) for j in range(m) for i in range(j)]

    def consistent_so_far(rows, i, j):
        # triangles (k, i, j) among assigned entries, one orientation each;
        # relies on the structure's Peircean closure for the others.  k = i
        # and k = j cover the identity-diagonal triangles.
        b = rows[i][j]
        for k in range(m):
            a, c = rows[k][i], rows[k][j]
            if a is None or c is None:
                continue
            if not struct.consistent(a, b, c):
                return False
        return True

    def rec(di, rows, ei):
        if di < m:
            for e in _diag_choices(struct):
                rows[di][di] = e
                rec(di + 1, rows, ei)
                rows[di][di] = None
            return
        if ei == len(edges):
            out.append(BasicMatrix(rows))
            if len(out) > cap:
                raise BudgetExceeded("enumerate_basic_matrices", cap, len(out))
            return
        i, j = edges[ei]
        for a in nonid:
            rows[i][j] = a
            rows[j][i] = struct.converse[a]
            if consistent_so_far(rows, i, j):
                rec(di, rows, ei + 1)
            rows[i][j] = None
            rows[j][i] = None

    rec(0, [[None] * m for _ in range(m)], 0)
    return out


def matrix_node_sigs(mat):
    s = mat.size
    return [
        (mat[u, u], tuple(sorted((mat[u, v], mat[v, u]) for v in range(s) if v != u)))
        for u in range(s)
    ]


def canonical_matrix(mat):
    s = mat.size
    sigs = matrix_node_sigs(mat)

    def encode(perm):
        return tuple(mat[perm[p], perm[q]] for p in range(s) for q in range(s))

    key, _ = canonical_form(s, sigs, encode)
    return key


def _pairs_for(struct):
    """For each atom c, the list of (a, b) with (a, b, c) consistent."""
    table = {c: [] for c in struct.atoms()}
    for (a, b, c) in struct.triples:
        table[c].append((a, b))
    return {c: tuple(sorted(v)) for c, v in table.items()}


def basis_search(struct, m, cap=2_000_000, allow_reuse=True):
    """Greatest fixed point of the witness-pruning operator on all basic
    matrices with <= m nodes.  Returns (basis, info); basis is None when the
    fixed point fails to realize some atom, with info naming it."""
    if m < 2:
        raise ValueError("basis dimension must be >= 2")
    strata = {}
    total = 0
    for s in range(2, m + 1):
        strata[s] = enumerate_basic_matrices(struct, s, cap=cap)
        total += len(strata[s])
        if total > cap:
            raise BudgetExceeded("basis_search", cap, total)
    alive = {mat.entries for mats in strata.values() for mat in mats}
    pairs_for = _pairs_for(struct)

    def witnessed(entries, x, y, a, b):
        s = len(entries)
        conv = struct.converse
        for z in range(s):
            if entries[x][z] == a and entries[z][y] == b:
                return True
        if allow_reuse:
            for z in range(s):
                if z == x or z == y:
                    continue
                reduced = tuple(
                    tuple(row[w] for w in range(s) if w != z)
                    for u, row in enumerate(entries) if u != z
                )
                for cand in buckets.get((s, z, reduced), ()):
                    if cand[x][z] == a and cand[z][y] == b:
                        return True
        if s < m:
            for cand in buckets.get((s + 1, s, entries), ()):
                if cand[x][s] == a and cand[s][y] == b:
                    return True
        return False

    changed = True
    while changed:
        buckets = {}
        for entries in alive:
            s = len(entries)
            for z in range(s):
                reduced = tuple(
                    tuple(row[w] for w in range(s) if w != z)
                    for u, row in enumerate(entries) if u != z
                )
                buckets.setdefault((s, z, reduced), []).append(entries)
        changed = False
        killed = []
        for entries in alive:
            s = len(entries)
            ok = True
            for x in range(s):
                for y in range(s):
                    for (a, b) in pairs_for[entries[x][y]]:
                        if not witnessed(entries, x, y, a, b):
                            ok = False
                            break
                    if not ok:
                        break
                if not ok:
                    break
            if not ok:
                killed.append(entries)
        if killed:
            changed = True
            alive.difference_update(killed)
    # pruning is node-symmetric, so the surviving set is isomorphism-closed:
    # any realized entry can be relabelled to position (0,1).  Identity atoms
    # live on diagonals only (strict networks), so those count as realized too.
    covered = set()
    for entries in alive:
        for row in entries:
            covered.update(row)
    missing = sorted(set(struct.atoms()) - covered)
    if missing:
        return None, {"uncovered_atom": struct.names[missing[0]]}
    basis = sorted(alive, key=lambda e: (len(e), e))
    return [BasicMatrix(e) for e in basis], {"count": len(basis)}


# ------------------------------------------------------- representations

class Representation:
    """Edge-coloured complete graph over a finite base (square, RA case)."""

    def __init__(self, struct, base_size, edge):
        self.struct = struct
        self.base_size = base_size
        self.edge = dict(edge)  # (i, j) -> atom id, all ordered pairs

    def to_json(self):
        return {
            "base_size": self.base_size,
            "edges": sorted(
                [i, j, self.struct.names[a]] for (i, j), a in self.edge.items() if i <= j
            ),
        }

    @classmethod
    def from_json(cls, struct, data):
        edge = {}
        for i, j, name in data["edges"]:
            a = struct.atom(name)
            edge[(i, j)] = a
            edge[(j, i)] = struct.converse[a]
        return cls(struct, data["base_size"], edge)


def rep_verify(struct, rep):
    """Square-representation conditions: identity exactly on the diagonal,
    converse symmetry, consistent triangles, and the witness property."""
    fails = []
    b = rep.base_size
    for i in range(b):
        for j in range(b):
            a = rep.edge.get((i, j))
            if a is None:
                fails.append(f"edge ({i},{j}) unlabelled")
                continue
            if (i == j) != (a in struct.identity):
                fails.append(f"identity placement wrong at ({i},{j})")
            if rep.edge.get((j, i)) != struct.converse[a]:
                fails.append(f"converse broken at ({i},{j})")
    if fails:
        return report(fails)
    for i in range(b):
        for j in range(b):
            for k in range(b):
                if not struct.consistent(rep.edge[(i, j)], rep.edge[(j, k)], rep.edge[(i, k)]):
                    fails.append(f"inconsistent triangle ({i},{j},{k})")
    pairs_for = _pairs_for(struct)
    for x in range(b):
        for y in range(b):
            c = rep.edge[(x, y)]
            for (a, bb) in pairs_for[c]:
                if not any(rep.edge[(x, z)] == a and rep.edge[(z, y)] == bb for z in range(b)):
                    fails.append(
                        f"no witness for {struct.names[a]};{struct.names[bb]} "
                        f"over edge ({x},{y})={struct.names[c]}"
                    )
                    if len(fails) > 20:
                        return report(fails)
    return report(fails)


def _canonical_prefix_ok(struct, colors, t):
    """colors: dict (i,j)->atom for i<j assigned so far; nodes 0..t fully
    wired.  Requires the restriction to 0..t to be lexicographically minimal
    under permutations of 0..t, so only canonical prefixes are explored."""
    from itertools import permutations as perms
    nodes = list(range(t + 1))
    base = tuple(colors[(i, j)] for j in nodes for i in range(j))
    for p in perms(nodes):
        if list(p) == nodes:
            continue
        cand = []
        for j in nodes:
            for i in range(j):
                u, v = p[i], p[j]
                # stored labels follow the i<j orientation, so a flipped
                # edge contributes its converse
                if u < v:
                    cand.append(colors[(u, v)])
                else:
                    cand.append(struct.converse[colors[(v, u)]])
        if tuple(cand) < base:
            return False
    return True


def rep_search(struct, base_size, symmetry_break=True):
    """Backtracking search for a square representation on the given base.

    Exhaustive at the given base size: returns a verified Representation or
    None.  Only integral structures are searched (single identity atom).
    """
    if len(struct.identity) != 1:
        raise ValueError("square representation search requires an integral structure")
    ident = next(iter(struct.identity))
    b = base_size
    nonid = sorted(set(struct.atoms()) - struct.identity)
    if b == 1:
        rep = Representation(struct, 1, {(0, 0): ident})
        return rep if rep_verify(struct, rep) else None
    edges = [(i, j) for j in range(b) for i in range(j)]
    colors = {}

    def consistent_at(i, j):
        a = colors[(i, j)]
        for k in range(b):
            if k in (i, j):
                continue
            if (min(i, k), max(i, k)) in colors and (min(k, j), max(k, j)) in colors:
                ik = colors[(min(i, k), max(i, k))]
                if i > k:
                    ik = struct.converse[ik]
                kj = colors[(min(k, j), max(k, j))]
                if k > j:
                    kj = struct.converse[kj]
                if not struct.consistent(ik, kj, a):
                    return False
        if not struct.consistent(a, struct.converse[a], ident):
            return False
        return True

    def rec(ei):
        if ei == len(edges):
            edge = {(i, i): ident for i in range(b)}
            for (i, j), a in colors.items():
                edge[(i, j)] = a
                edge[(j, i)] = struct.converse[a]
            rep = Representation(struct, b, edge)
            if rep_verify(struct, rep):
                return rep
            return None
        i, j = edges[ei]
        for a in nonid:
            colors[(i, j)] = a
            if consistent_at(i, j):
                saturated = ei + 1 == len(edges) or edges[ei + 1][1] != j
                if not (symmetry_break and saturated) or _canonical_prefix_ok(struct, colors, j):
                    got = rec(ei + 1)
                    if got is not None:
                        del colors[(i, j)]
                        return got
            del colors[(i, j)]
        return None

    return rec(0)


def rep_search_oracle(struct, base_size):
    """Naive enumerate-and-filter search; validation oracle for rep_search."""
    if len(struct.identity) != 1:
        raise ValueError("integral structures only")
    ident = next(iter(struct.identity))
    b = base_size
    nonid = sorted(set(struct.atoms()) - struct.identity)
    pairs = [(i, j) for j in range(b) for i in range(j)]
    for combo in product(nonid, repeat=len(pairs)):
        edge = {(i, i): ident for i in range(b)}
        for (i, j), a in zip(pairs, combo):
            edge[(i, j)] = a
            edge[(j, i)] = struct.converse[a]
        rep = Representation(struct, b, edge)
        if rep_verify(struct, rep):
            return rep
    return None


# ---------------------------------------------------------------- CA side

def _argsort_perm(xs):
    """Stable sort permutation data: returns (sorted tuple, sigma) with
    xs[p] = sorted[sigma[p]]."""
    idx = sorted(range(len(xs)), key=lambda p: xs[p])
    inv = [0] * len(xs)
    for q, p in enumerate(idx):
        inv[p] = q
    return tuple(xs[p] for p in idx), tuple(inv)


def nondecreasing_tuples(nodes, n):
    if n == 0:
        yield ()
        return
    def rec(start, acc):
        if len(acc) == n:
            yield tuple(acc)
            return
        for v in nodes[start:]:
            yield from rec(nodes.index(v), acc + [v])
    yield from rec(0, [])


class Network:
    """Total atom labelling of n-tuples over a finite node set.

    Only nondecreasing tuples are stored; arbitrary tuples are read through
    the structure's coordinate action.
    """

    __slots__ = ("struct", "nodes", "lab")

    def __init__(self, struct, nodes, lab):
        self.struct = struct
        self.nodes = tuple(sorted(nodes))
        self.lab = dict(lab)

    def label(self, xs):
        s, sigma = _argsort_perm(tuple(xs))
        return self.struct.action(self.lab[s], sigma)

    def key(self):
        return (self.nodes, tuple(sorted(self.lab.items())))

    def __eq__(self, other):
        return isinstance(other, Network) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())


def network_validate(struct, net):
    fails = []
    n = struct.n
    nodes = net.nodes
    tuples = list(product(nodes, repeat=n))
    labels = {}
    for xs in tuples:
        try:
            labels[xs] = net.label(xs)
        except KeyError:
            fails.append(f"tuple {xs} unlabelled")
            return report(fails)
    for xs in tuples:
        a = labels[xs]
        for i in range(n):
            for j in range(n):
                if i != j:
                    below = a in struct.diag[(i, j)]
                    if below != (xs[i] == xs[j]):
                        fails.append(
                            f"diagonal condition broken at {xs}: "
                            f"label {struct.names[a]} vs coordinates {i},{j}"
                        )
                        if len(fails) > 20:
                            return report(fails)
    for xs in tuples:
        for i in range(n):
            for w in nodes:
                ys = xs[:i] + (w,) + xs[i + 1:]
                if not struct.related(i, labels[xs], labels[ys]):
                    fails.append(f"accessibility broken: {xs} ~{i} {ys}")
                    if len(fails) > 20:
                        return report(fails)
    return report(fails)


def network_node_sigs(net):
    nodes = net.nodes
    n = net.struct.n
    sigs = []
    for u in nodes:
        bag = []
        for rest in product(nodes, repeat=n - 1):
            bag.append(net.label((u,) + rest))
        sigs.append(tuple(sorted(bag)))
    return sigs


def canonical_network(net):
    nodes = net.nodes
    n = net.struct.n
    sigs = network_node_sigs(net)
    tuples = list(product(range(len(nodes)), repeat=n))

    def encode(perm):
        return tuple(net.label(tuple(nodes[perm[p]] for p in t)) for t in tuples)

    key, _ = canonical_form(len(nodes), sigs, encode)
    return (len(nodes), key)


def network_from_atom(struct, atom):
    """The minimal network realizing an atom: one node per block."""
    n = struct.n
    # block id per coordinate: minimum coordinate of the block, read off diag
    block = list(range(n))
    for i in range(n):
        for j in range(i):
            if atom in struct.diag[(j, i)]:
                block[i] = block[j]
                break
    reps = sorted(set(block))
    nodes = tuple(range(len(reps)))
    coord_of = {b: reps.index(b) for b in reps}
    xs = tuple(coord_of[block[i]] for i in range(n))
    # label(xs) = atom; fill every nondecreasing tuple via the action where a
    # preimage under coordinate permutation exists, else via diag collapse
    lab = {}
    pending = {}
    s, sigma = _argsort_perm(xs)
    # atom = action(lab[s], sigma); apply inverse permutation to atom
    inv = [0] * n
    for p in range(n):
        inv[sigma[p]] = p
    lab[s] = struct.action(atom, tuple(inv))
    net = Network(struct, nodes, lab)
    complete_network(net)
    return net


def complete_network(net):
    """Fill labels of all nondecreasing tuples derivable from the stored ones
    by diagonal collapse (unique by the atom-level CA conditions)."""
    struct = net.struct
    n = struct.n
    nodes = list(net.nodes)
    todo = [t for t in nondecreasing_tuples(nodes, n) if t not in net.lab]
    guard = 0
    while todo:
        guard += 1
        if guard > 10 * (len(todo) + 1) + 100:
            raise ValueError(f"cannot complete network labels: stuck on {todo}")
        t = todo.pop(0)
        placed = False
        # find a labelled neighbour differing in one coordinate position
        for i in range(n):
            for w in nodes:
                ys = t[:i] + (w,) + t[i + 1:]
                s, sigma = _argsort_perm(ys)
                if s in net.lab and ys != t:
                    base = struct.action(net.lab[s], sigma)  # label at ys
                    # t's label is the unique atom acc_i-related to base lying
                    # under the diagonals t demands at position i
                    j = _twin(t, i)
                    if j is None:
                        continue
                    cls = struct.acc[i][base]
                    rep_map = struct.diag_rep(i, j)
                    if cls not in rep_map:
                        raise ValueError("missing diagonal representative")
                    atom = rep_map[cls]
                    ss, sg = _argsort_perm(t)
                    invp = [0] * n
                    for p in range(n):
                        invp[sg[p]] = p
                    net.lab[ss] = struct.action(atom, tuple(invp))
                    placed = True
                    break
            if placed:
                break
        if not placed:
            todo.append(t)
    return net


def _twin(t, i):
    for j in range(len(t)):
        if j != i and t[j] == t[i]:
            return j
    return None


def enumerate_ca_networks(struct, size, cap=2_000_000):
    """All valid networks on exactly `size` nodes, deterministic order."""
    n = struct.n
    nodes = tuple(range(size))
    out = []
    if size > n:
        raise BudgetExceeded("enumerate_ca_networks", n, size)
    # free positions: injective nondecreasing tuples (size >= n) or, for
    # smaller sizes, tuples using all nodes; the rest follow by collapse
    free = [t for t in nondecreasing_tuples(list(nodes), n) if set(t) == set(nodes)]
    frees = sorted(free)
    choices = []
    for t in frees:
        if len(set(t)) == n:
            cands = [a for a in struct.atoms()
                     if all(a not in struct.diag[(i, j)]
                            for i in range(n) for j in range(n) if i != j)]
        else:
            cands = [a for a in struct.atoms()
                     if all((a in struct.diag[(i, j)]) == (t[i] == t[j])
                            for i in range(n) for j in range(n) if i != j)]
        choices.append(cands)

    def rec(k, lab):
        if k == len(frees):
            net = Network(struct, nodes, lab)
            try:
                complete_network(net)
            except ValueError:
                return
            if network_validate(struct, net):
                out.append(net)
                if len(out) > cap:
                    raise BudgetExceeded("enumerate_ca_networks", cap, len(out))
            return
        t = frees[k]
        for a in choices[k]:
            lab2 = dict(lab)
            lab2[t] = a
            # pairwise accessibility against already chosen free tuples
            ok = True
            for t2, a2 in lab.items():
                d = [p for p in range(n) if t[p] != t2[p]]
                if len(d) == 1 and not struct.related(d[0], a, a2):
                    ok = False
                    break
            if ok:
                rec(k + 1, lab2)

    rec(0, {})
    return out


def ca_basis_search(struct, m, cap=200_000, refuter=None):
    """Fixed-point basis search over networks with nodes <= m.

    When full enumeration would exceed `cap`, a caller-supplied refuter
    (a verified universal-player strategy certificate) may still certify the
    None answer; otherwise the overflow is reported.
    """
    n = struct.n
    if m < n:
        raise ValueError("basis dimension below structure dimension")
    try:
        strata = {}
        for s in range(1, m + 1):
            if s <= n:
                strata[s] = enumerate_ca_networks(struct, s, cap=cap)
            else:
                strata[s] = _extend_networks(struct, strata[s - 1], cap=cap)
    except BudgetExceeded:
        if refuter is not None and refuter(struct, m):
            return None, {"certified_by": "universal strategy refutation"}
        raise
    alive = {}
    for s, nets in strata.items():
        for net in nets:
            alive[net.key()] = net
    changed = True
    while changed:
        changed = False
        killed = []
        for key, net in alive.items():
            if not _net_demands_met(struct, net, alive, m):
                killed.append(key)
        if killed:
            changed = True
            for key in killed:
                del alive[key]
    covered = set()
    for net in alive.values():
        covered.update(net.lab.values())
        for xs in product(net.nodes, repeat=n):
            covered.add(net.label(xs))
    missing = sorted(set(struct.atoms()) - covered)
    if missing:
        return None, {"uncovered_atom": struct.names[missing[0]]}
    basis = sorted(alive.values(), key=lambda nt: nt.key())
    return basis, {"count": len(basis)}


def _extend_networks(struct, nets, cap):
    """All one-node extensions of each network (new node labels enumerated)."""
    out = []
    seen = set()
    for net in nets:
        for ext in network_extensions(struct, net, demand=None):
            k = ext.key()
            if k not in seen:
                seen.add(k)
                out.append(ext)
                if len(out) > cap:
                    raise BudgetExceeded("network extensions", cap, len(out))
    return out


def network_extensions(struct, net, demand):
    """Consistent ways to add one fresh node.

    demand: optional (xs, i, atom) pinning the label of xs[i->fresh]; the
    remaining new labels range over everything consistent.
    """
    n = struct.n
    fresh = (net.nodes[-1] + 1) if net.nodes else 0
    nodes = net.nodes + (fresh,)
    base = dict(net.lab)
    if demand is not None:
        xs, i, atom = demand
        ys = xs[:i] + (fresh,) + xs[i + 1:]
        s, sigma = _argsort_perm(ys)
        inv = [0] * n
        for p in range(n):
            inv[sigma[p]] = p
        base[s] = struct.action(atom, tuple(inv))
    # only fully injective new tuples are free; collapsed ones follow by
    # diagonal collapse inside complete_network
    frees = [t for t in nondecreasing_tuples(list(nodes), n)
             if fresh in t and t not in base and len(set(t)) == n]
    cands_inj = [a for a in struct.atoms()
                 if all(a not in struct.diag[(i, j)]
                        for i in range(n) for j in range(n) if i != j)]
    results = []

    # narrow each free slot by the acc-class constraints its already
    # labelled one-coordinate neighbours impose, cheapest slot first;
    # cross-slot consistency flows through diagonal-collapse shadows
    cands = {}
    for t in frees:
        allowed = cands_inj
        for t2, a2 in base.items():
            d = [p for p in range(n) if t[p] != t2[p]]
            if len(d) == 1:
                allowed = [a for a in allowed if struct.related(d[0], a, a2)]
        cands[t] = allowed
    frees.sort(key=lambda t: (len(cands[t]), t))
    shadow = {}
    for t2, a2 in base.items():
        sh = _collapse_shadow(struct, t2, a2)
        if sh is None:
            return results
        shadow.update(sh)

    def rec(k, lab, shadow):
        if k == len(frees):
            ext = Network(struct, nodes, dict(lab))
            try:
                complete_network(ext)
            except ValueError:
                return
            if network_validate(struct, ext):
                results.append(ext)
            return
        t = frees[k]
        for a in cands[t]:
            ok = True
            for j in range(k):
                t2 = frees[j]
                d = [p for p in range(n) if t[p] != t2[p]]
                if len(d) == 1 and not struct.related(d[0], a, lab[t2]):
                    ok = False
                    break
            if not ok:
                continue
            sh = _collapse_shadow(struct, t, a)
            if sh is None:
                continue
            for key, v in sh.items():
                if shadow.get(key, v) != v or base.get(key, v) != v:
                    ok = False
                    break
            if ok:
                lab[t] = a
                rec(k + 1, lab, {**shadow, **sh})
                del lab[t]

    if len(net.nodes) + 1 < n:
        # not enough nodes for an injective tuple; single collapsed seed
        ext = Network(struct, nodes, base)
        try:
            complete_network(ext)
            if network_validate(struct, ext):
                results.append(ext)
        except ValueError:
            pass
        return results
    rec(0, dict(base), shadow)
    return results


def _collapse_shadow(struct, t, a):
    """Labels forced on the single-identification collapses of tuple t by
    labelling it a: collapsing coordinate i onto j picks the unique d_ij
    atom in a's acc_i class.  None when some class has no such atom."""
    n = struct.n
    out = {}
    for i in range(n):
        for j in range(n):
            if i == j or t[i] == t[j]:
                continue
            tp = t[:i] + (t[j],) + t[i + 1:]
            rep_map = struct.diag_rep(i, j)
            cls = struct.acc[i][a]
            if cls not in rep_map:
                return None
            atom = rep_map[cls]
            ss, sg = _argsort_perm(tp)
            inv = [0] * n
            for p in range(n):
                inv[sg[p]] = p
            out[ss] = struct.action(atom, tuple(inv))
    return out


def _net_demands_met(struct, net, alive, m):
    n = struct.n
    for xs in product(net.nodes, repeat=n):
        c = net.label(xs)
        for i in range(n):
            for a in struct.class_members(i)[struct.acc[i][c]]:
                # witness: some node z with label(xs[i->z]) = a, or a one-node
                # extension in the alive set carrying it
                hit = False
                for z in net.nodes:
                    ys = xs[:i] + (z,) + xs[i + 1:]
                    if net.label(ys) == a:
                        hit = True
                        break
                if hit:
                    continue
                if len(net.nodes) < m:
                    for ext in network_extensions(struct, net, demand=(xs, i, a)):
                        if ext.key() in alive:
                            hit = True
                            break
                if not hit:
                    return False
    return True
