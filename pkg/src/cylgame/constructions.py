"""Builders for the concrete atom structures the workbench studies.

Rainbow structures pair a "green" index structure with a "red" one.  Atoms
of the cylindric variant are coloured graphs: a partition of the n
coordinates into blocks plus an edge colour between any two blocks.  Edge
colours are greens g_i (1 <= i < n-1), tinted greens g_0^t with t a green
element, whites w_i (i < n-1), and reds carrying an ordered pair of red
elements.  Red labels are oriented: the pair is read along the edge
direction and reverses with it.  Keeping the orientation is what makes a
clique of pairwise red edges encode a single assignment of red elements
to its nodes; without it the index-matching rule degenerates into a
per-triangle condition that proper edge colourings can satisfy.

Triangle rules: no all-green triangle; two greens of the same lower index
kill the matching white; two tinted greens meeting a red edge require the
tint-to-index assignment (each tint to the red element at its own apex)
to be a partial isomorphism of the green structure into the red one; a
triangle of reds must compose, i.e. read a single element per node.

Hyperedge labels (shades on (n-1)-tuples) are not modelled; cone bases
are labelled white, which the triangle rules leave unconstrained where a
shade would sit.

Splitting replaces chosen atoms by indexed copies.  The relation-type
split delegates to the finite/cofinite machinery; the cylindric-type
split lifts the accessibility data per the same two rules: "inherit"
ignores copy indices, "match" aligns them on classes consisting entirely
of split atoms (the configurations a red-index-matching rule actually
constrains).  theta_embedding checks that atom |-> join of its copies is
an injective homomorphism into the complex algebra of the split.
"""

from itertools import combinations, permutations, product

from .ca import CaAtomStructure, ca_cylindrify
from .fc import INHERIT, MATCH, SplitRaStructure, monochromatic_base
from .games import complete_graph, linear_order, _partial_iso_ok
from .ra import RaAtomStructure
from .util import BudgetExceeded, report


class RuleSet:
    """Colour inventory and side conditions for a rainbow construction.

    Greens are indexed by the elements of green_struct (through
    green_values, which fixes the display value of each element), reds by
    ordered pairs of distinct elements of red_struct.  The two-greens-one-
    red condition demands that sending each tint to the red element at its
    apex extends to a partial isomorphism green_struct -> red_struct.
    """

    def __init__(self, green_struct, red_struct, green_values=None, red_values=None):
        self.green_struct = green_struct
        self.red_struct = red_struct
        self.green_values = tuple(green_values if green_values is not None
                                  else range(green_struct.size))
        self.red_values = tuple(red_values if red_values is not None
                                else range(red_struct.size))
        if len(self.green_values) != green_struct.size:
            raise ValueError("green value list does not match the structure")
        if len(self.red_values) != red_struct.size:
            raise ValueError("red value list does not match the structure")
        self._gidx = {v: i for i, v in enumerate(self.green_values)}
        self._ridx = {v: i for i, v in enumerate(self.red_values)}

    @classmethod
    def complete(cls, green_count, red_count):
        """Complete irreflexive graphs on both sides; tints 1..green_count."""
        return cls(complete_graph(green_count), complete_graph(red_count),
                   green_values=range(1, green_count + 1))

    @classmethod
    def order(cls, green_depth, red_depth):
        """Linear orders: tints 0, -1, .., -green_depth against red
        elements 0 .. red_depth-1, with the order-preserving condition."""
        greens = linear_order(green_depth + 1)
        reds = linear_order(red_depth)
        values = [k - green_depth for k in range(green_depth + 1)]
        return cls(greens, reds, green_values=values)

    def tint_pair_ok(self, t1, k1, t2, k2):
        """May apexes tinted t1, t2 carry red elements k1, k2?"""
        pair1 = (self._gidx[t1], self._ridx[k1])
        pair2 = (self._gidx[t2], self._ridx[k2])
        return _partial_iso_ok(self.green_struct, self.red_struct, (pair1,), pair2)

    def __repr__(self):
        return f"RuleSet({self.green_struct!r} -> {self.red_struct!r})"


def _flip(col):
    if col[0] == "r":
        return ("r", col[2], col[1])
    return col


def _colour_str(col):
    kind = col[0]
    if kind == "g":
        return f"g{col[1]}"
    if kind == "g0":
        return f"g0^{col[1]}"
    if kind == "w":
        return f"w{col[1]}"
    return f"r{col[1]}.{col[2]}"


def _triangle_ok(rules, c01, c02, c12):
    """Consistency of an oriented colour triangle on nodes 0, 1, 2.

    c01 is the colour read 0 -> 1, c02 read 0 -> 2, c12 read 1 -> 2.
    """
    cols = (c01, c02, c12)
    kinds = tuple(c[0] for c in cols)
    greens = [c for c in cols if c[0] in ("g", "g0")]
    if len(greens) == 3:
        return False
    if len(greens) == 2:
        lo1 = 0 if greens[0][0] == "g0" else greens[0][1]
        lo2 = 0 if greens[1][0] == "g0" else greens[1][1]
        if lo1 == lo2:
            for c in cols:
                if c[0] == "w" and c[1] == lo1:
                    return False
        if greens[0][0] == "g0" and greens[1][0] == "g0":
            # tint pairs with the red element at its own apex
            if kinds[2] == "r" and kinds[0] == "g0" and kinds[1] == "g0":
                if not rules.tint_pair_ok(c01[1], c12[1], c02[1], c12[2]):
                    return False
            elif kinds[1] == "r" and kinds[0] == "g0" and kinds[2] == "g0":
                if not rules.tint_pair_ok(c01[1], c02[1], c12[1], c02[2]):
                    return False
            elif kinds[0] == "r" and kinds[1] == "g0" and kinds[2] == "g0":
                if not rules.tint_pair_ok(c02[1], c01[1], c12[1], c01[2]):
                    return False
    if kinds == ("r", "r", "r"):
        # one red element per node: (0->1);(1->2) must read as (0->2)
        if not (c01[1] == c02[1] and c01[2] == c12[1] and c12[2] == c02[2]):
            return False
    return True


def _canonical_graph(pi_raw, edges_raw):
    """Relabel blocks in first-occurrence order; edges follow, with red
    orientation corrected for reversed pairs."""
    relabel = {}
    pi = []
    for b in pi_raw:
        if b not in relabel:
            relabel[b] = len(relabel)
        pi.append(relabel[b])
    edges = {}
    for (a, b), col in edges_raw.items():
        na, nb = relabel[a], relabel[b]
        if na < nb:
            edges[(na, nb)] = col
        else:
            edges[(nb, na)] = _flip(col)
    return tuple(pi), edges


def _graph_name(pi, edges):
    head = "".join(str(b) for b in pi)
    if not edges:
        return head
    body = ";".join(f"{a}{b}:{_colour_str(edges[(a, b)])}" for a, b in sorted(edges))
    return head + "|" + body


def _partitions(n):
    out = []

    def rec(prefix, mx):
        if len(prefix) == n:
            out.append(tuple(prefix))
            return
        for b in range(mx + 2):
            rec(prefix + [b], max(mx, b))

    rec([0], 0)
    return out


class RainbowModel:
    """Colour-level view of a rainbow atom structure.

    graphs maps atom name -> (partition, edge colour dict on block pairs
    a < b, read a -> b).  Helpers construct and recognize the atoms the
    scripted strategies traffic in.
    """

    def __init__(self, n, rules, graphs):
        self.n = n
        self.rules = rules
        self.graphs = dict(graphs)

    def atom_name(self, pi_raw, edges_raw):
        pi, edges = _canonical_graph(pi_raw, edges_raw)
        name = _graph_name(pi, edges)
        if name not in self.graphs:
            raise KeyError(f"no atom with graph {name}")
        return name

    def cone_atom(self, tint, base=("w", 0)):
        """The all-distinct atom whose last node is an apex of the given
        tint over the base tuple, base edges coloured uniformly."""
        n = self.n
        edges = {}
        for i in range(n - 1):
            for j in range(i + 1, n - 1):
                edges[(i, j)] = base
            edges[(i, n - 1)] = ("g0", tint) if i == 0 else ("g", i)
        return self.atom_name(tuple(range(n)), edges)

    def edge_colour(self, net, u, v):
        """Colour on the (u, v) edge of a network over this structure."""
        xs = (u,) + (v,) * (self.n - 1)
        name = net.struct.names[net.label(xs)]
        pi, edges = self.graphs[name]
        if len(set(pi)) == 1:
            return None
        return edges[(0, 1)]


def rainbow_ca(n, green_count=None, red_count=None, rules=None, max_atoms=500_000):
    """Cylindric-type rainbow atom structure of dimension n.

    With default rules the green and red index structures are complete
    irreflexive graphs on the given counts (tints 1..green_count).  Atoms
    are consistent coloured graphs quotiented onto canonical partitions;
    accessibility relates atoms agreeing off a coordinate, diagonals come
    from coordinate coincidences, and coordinate permutations act by
    relabelling.
    """
    if rules is None:
        if green_count is None or red_count is None:
            raise ValueError("give either counts or a RuleSet")
        rules = RuleSet.complete(green_count, red_count)
    if n < 3:
        raise ValueError("rainbow structures need dimension at least 3")
    colours = [("g", i) for i in range(1, n - 1)]
    colours += [("g0", t) for t in rules.green_values]
    colours += [("w", i) for i in range(n - 1)]
    colours += [("r", p, q) for p in rules.red_values
                for q in rules.red_values if p != q]

    graphs = {}
    names = []
    for pi in _partitions(n):
        nb = max(pi) + 1
        pairs = list(combinations(range(nb), 2))
        est = len(colours) ** len(pairs)
        if est > max_atoms:
            raise BudgetExceeded("rainbow_ca", max_atoms, est)
        for combo in product(colours, repeat=len(pairs)):
            edges = dict(zip(pairs, combo))
            ok = True
            for a, b, c in combinations(range(nb), 3):
                if not _triangle_ok(rules, edges[(a, b)], edges[(a, c)], edges[(b, c)]):
                    ok = False
                    break
            if not ok:
                continue
            name = _graph_name(pi, edges)
            graphs[name] = (pi, edges)
            names.append(name)
            if len(names) > max_atoms:
                raise BudgetExceeded("rainbow_ca", max_atoms, len(names))

    index = {nm: k for k, nm in enumerate(names)}
    acc = []
    for i in range(n):
        keymap = {}
        row = []
        for nm in names:
            pi, edges = graphs[nm]
            row.append(keymap.setdefault(_restrict_sig(pi, edges, i, n), len(keymap)))
        acc.append(row)
    diag = {}
    for i in range(n):
        for j in range(n):
            if i != j:
                diag[(i, j)] = frozenset(
                    k for k, nm in enumerate(names) if graphs[nm][0][i] == graphs[nm][0][j]
                )
    action_table = {}
    for sigma in permutations(range(n)):
        perm = []
        for nm in names:
            pi, edges = graphs[nm]
            moved = tuple(pi[sigma[p]] for p in range(n))
            cpi, cedges = _canonical_graph(moved, edges)
            perm.append(index[_graph_name(cpi, cedges)])
        action_table[sigma] = tuple(perm)
    struct = CaAtomStructure(n, names, acc, diag, action_table)
    struct.rainbow = RainbowModel(n, rules, graphs)
    return struct


def _restrict_sig(pi, edges, i, n):
    coords = [j for j in range(n) if j != i]
    relabel = {}
    sub = []
    for j in coords:
        b = pi[j]
        if b not in relabel:
            relabel[b] = len(relabel)
        sub.append(relabel[b])
    inv = {v: k for k, v in relabel.items()}
    sub_edges = []
    for a in range(len(relabel)):
        for b in range(a + 1, len(relabel)):
            oa, ob = inv[a], inv[b]
            col = edges[(oa, ob)] if oa < ob else _flip(edges[(ob, oa)])
            sub_edges.append(((a, b), col))
    return (tuple(sub), tuple(sub_edges))


def order_rainbow_ca(n, green_depth, red_depth, max_atoms=500_000):
    """Rainbow structure over linear orders: tints 0..-green_depth against
    red elements 0..red_depth-1 with the order-preserving condition."""
    return rainbow_ca(n, rules=RuleSet.order(green_depth, red_depth),
                      max_atoms=max_atoms)


def _parse_colour(s):
    if s.startswith("g0^"):
        return ("g0", int(s[3:]))
    if s.startswith("g"):
        return ("g", int(s[1:]))
    if s.startswith("w"):
        return ("w", int(s[1:]))
    if s.startswith("r"):
        p, q = s[1:].split(".")
        return ("r", int(p), int(q))
    raise ValueError(f"unreadable colour {s!r}")


def _parse_graph_name(name, n):
    head, _, body = name.partition("|")
    if len(head) != n or not head.isdigit():
        raise ValueError(f"unreadable atom name {name!r}")
    pi = tuple(int(ch) for ch in head)
    edges = {}
    if body:
        for item in body.split(";"):
            pair, sep, colstr = item.partition(":")
            if not sep or len(pair) != 2 or not pair.isdigit():
                raise ValueError(f"unreadable atom name {name!r}")
            edges[(int(pair[0]), int(pair[1]))] = _parse_colour(colstr)
    if _graph_name(*_canonical_graph(pi, edges)) != name:
        raise ValueError(f"non-canonical atom name {name!r}")
    return pi, edges


def attach_rainbow(struct):
    """Reconstruct the colour-level view of a rainbow structure.

    Structures built in process carry it already; structures read back
    from text files only have their atom names.  The names encode the
    coloured graphs completely, so the model is rebuilt from them; the
    inferred rule set is then validated by regenerating the structure and
    comparing atom inventories.  Raises ValueError when the names do not
    describe a rainbow structure.
    """
    if getattr(struct, "rainbow", None) is not None:
        return struct
    n = getattr(struct, "n", None)
    if n is None:
        raise ValueError("rainbow colour view needs a cylindric-type structure")
    tints, reds = set(), set()
    for nm in struct.names:
        _, edges = _parse_graph_name(nm, n)
        for col in edges.values():
            if col[0] == "g0":
                tints.add(col[1])
            elif col[0] == "r":
                reds.update(col[1:])
    if not tints:
        raise ValueError("no tinted greens: not a rainbow structure")
    if not reds:
        # a single red element produces no red edges, leaving the red
        # inventory undecidable from the names alone
        raise ValueError("no red edges: cannot infer the red inventory")
    if tints != set(range(min(tints), max(tints) + 1)) or \
            reds != set(range(max(reds) + 1)):
        raise ValueError("colour inventory has gaps")
    if max(tints) == 0:
        rules = RuleSet.order(-min(tints), len(reds))
    elif min(tints) == 1:
        rules = RuleSet.complete(len(tints), len(reds))
    else:
        raise ValueError(f"unrecognized tint inventory {sorted(tints)}")
    reference = rainbow_ca(n, rules=rules)
    if sorted(reference.names) != sorted(struct.names):
        raise ValueError("atom inventory does not match the inferred rules")
    struct.rainbow = reference.rainbow
    return struct


def detect_cone(struct, atom_name):
    """Recognize an all-distinct atom as a cone: one apex node reached by
    a tinted green from block 0's counterpart and plain greens g_1..g_{n-2}
    from the rest.  Returns {"apex": block, "tint": t} or None."""
    model = attach_rainbow(struct).rainbow
    pi, edges = model.graphs[atom_name]
    n = model.n
    if len(set(pi)) != n:
        return None
    for z in range(n):
        legs = []
        for b in range(n):
            if b == z:
                continue
            col = edges[(b, z)] if b < z else _flip(edges[(z, b)])
            legs.append(col)
        tints = [c[1] for c in legs if c[0] == "g0"]
        plains = sorted(c[1] for c in legs if c[0] == "g")
        if len(tints) == 1 and plains == list(range(1, n - 1)):
            return {"apex": z, "tint": tints[0]}
    return None


def rainbow_ra(G, H, rules=None):
    """Relation-type rainbow structure on green structure G and red
    structure H: identity, a green per element of G, one white, and an
    oriented red per ordered pair of distinct elements of H.  The triangle
    rules are the cylindric ones read on three points."""
    if rules is None:
        rules = RuleSet(G, H)
    cols = [("g0", t) for t in rules.green_values]
    cols.append(("w", 0))
    cols += [("r", p, q) for p in rules.red_values for q in rules.red_values if p != q]
    names = ["id"] + [_ra_colour_name(c) for c in cols]
    colour_of = {k + 1: c for k, c in enumerate(cols)}
    N = len(names)
    conv = [0] * N
    for k, c in colour_of.items():
        flipped = _flip(c)
        conv[k] = 1 + cols.index(flipped)
    triples = set()
    for a in range(N):
        for b in range(N):
            for c in range(N):
                if 0 in (a, b, c):
                    if _id_triple_ok(a, b, c, conv):
                        triples.add((a, b, c))
                    continue
                # triangle x->y = a, y->z = b, x->z = c
                if _triangle_ok(rules, colour_of[a], colour_of[c], colour_of[b]):
                    triples.add((a, b, c))
    struct = RaAtomStructure(names, {0}, conv, triples)
    struct.rainbow_rules = rules
    return struct


def _ra_colour_name(col):
    if col[0] == "g0":
        return f"g^{col[1]}"
    if col[0] == "w":
        return "w"
    return f"r{col[1]}.{col[2]}"


def _id_triple_ok(a, b, c, conv):
    if a == 0:
        return b == c
    if b == 0:
        return a == c
    return b == conv[a]


def maddux_E(k):
    """Symmetric integral structure with k non-identity atoms forbidding
    exactly the monochromatic non-identity triangles."""
    if k < 1:
        raise ValueError("need at least one non-identity atom")
    return monochromatic_base([f"a{i}" for i in range(1, k + 1)])


def bsl_structure(green_count, red_count):
    """Symmetric integral structure with greens g^0..g^{green_count-1} and
    reds r_1..r_{red_count}; forbidden: every all-green triangle and the
    monochromatic red ones."""
    if green_count < 1 or red_count < 1:
        raise ValueError("counts must be positive")
    names = (["id"] + [f"g^{i}" for i in range(green_count)]
             + [f"r{j}" for j in range(1, red_count + 1)])
    N = len(names)
    greens = set(range(1, green_count + 1))
    conv = list(range(N))
    triples = set()
    for a in range(N):
        for b in range(N):
            for c in range(N):
                if 0 in (a, b, c):
                    if _id_triple_ok(a, b, c, conv):
                        triples.add((a, b, c))
                    continue
                if a in greens and b in greens and c in greens:
                    continue
                if a == b == c:
                    continue
                triples.add((a, b, c))
    return RaAtomStructure(names, {0}, conv, triples)


# ------------------------------------------------------------- splitting

def split_atoms(struct, targets, copies, lift=INHERIT):
    """Replace each target atom by indexed copies.

    Relation-type structures accept finite copies (concrete structure) or
    copies=None for the symbolic term-algebra view.  Cylindric-type
    structures accept finite copies; the target set must be closed under
    the coordinate action.  The lift rule is "inherit" or "match".
    """
    if lift not in (INHERIT, MATCH):
        raise ValueError(f"unknown lift rule {lift!r}")
    if isinstance(struct, RaAtomStructure):
        tnames = [t if isinstance(t, str) else struct.names[t] for t in targets]
        if not tnames:
            raise ValueError("empty target set")
        sp = SplitRaStructure(struct, {t: copies for t in tnames},
                              {t: lift for t in tnames})
        if copies is None:
            return sp
        out = sp.finite()
        out.split_info = _split_info(struct, tnames, copies, lift, out.names)
        return out
    if not isinstance(struct, CaAtomStructure):
        raise TypeError("unsupported structure type")
    if copies is None:
        raise ValueError("symbolic splitting applies to relation-type structures only")
    return _split_ca(struct, targets, copies, lift)


def _split_info(base, tnames, copies, lift, new_names):
    copies_of = {}
    base_of = {}
    tset = set(tnames)
    for nm in base.names:
        if nm in tset and copies > 1:
            mine = [f"{nm}^{i}" for i in range(copies)]
        elif nm in tset and copies == 1:
            mine = [nm] if nm in new_names else [f"{nm}^0"]
        else:
            mine = [nm]
        copies_of[nm] = mine
        for c in mine:
            base_of[c] = nm
    missing = [c for c in base_of if c not in set(new_names)]
    if missing:
        raise ValueError(f"split bookkeeping lost atoms {missing}")
    return {"base": base, "targets": tuple(tnames), "copies": copies,
            "lift": lift, "copies_of": copies_of, "base_of": base_of}


def red_atoms(struct):
    """Names of rainbow atoms whose graph contains a red edge."""
    model = attach_rainbow(struct).rainbow
    out = []
    for nm, (pi, edges) in model.graphs.items():
        if any(c[0] == "r" for c in edges.values()):
            out.append(nm)
    return out


def _split_ca(struct, targets, copies, lift):
    tids = {struct.atom(t) if isinstance(t, str) else t for t in targets}
    if not tids:
        raise ValueError("empty target set")
    if copies < 1:
        raise ValueError("copy count must be positive")
    if struct.has_action:
        for sigma, perm in struct.action_table.items():
            for a in tids:
                if perm[a] not in tids:
                    raise ValueError("target set not closed under the coordinate action")
    atom_list = []
    for a in struct.atoms():
        if a in tids:
            atom_list.extend((a, s) for s in range(copies))
        else:
            atom_list.append((a, None))
    index = {pair: k for k, pair in enumerate(atom_list)}
    names = [struct.names[a] if s is None else f"{struct.names[a]}^{s}"
             for a, s in atom_list]

    n = struct.n
    acc = []
    for i in range(n):
        members = struct.class_members(i)
        full = {cls: all(m in tids for m in mem) for cls, mem in members.items()}
        keymap = {}
        row = []
        for a, s in atom_list:
            cls = struct.acc[i][a]
            if lift == MATCH and full[cls]:
                key = (cls, s)
            else:
                key = (cls, None)
            row.append(keymap.setdefault(key, len(keymap)))
        acc.append(row)
    diag = {}
    for i in range(n):
        for j in range(n):
            if i != j:
                dset = struct.diag[(i, j)]
                diag[(i, j)] = frozenset(k for k, (a, s) in enumerate(atom_list)
                                         if a in dset)
    action_table = None
    if struct.has_action:
        action_table = {}
        for sigma, perm in struct.action_table.items():
            action_table[sigma] = tuple(index[(perm[a], s)] for a, s in atom_list)
    out = CaAtomStructure(n, names, acc, diag, action_table)
    tnames = [struct.names[a] for a in sorted(tids)]
    out.split_info = _split_info(struct, tnames, copies, lift, names)
    return out


def merge_copies(split):
    """Collapse a finite split back onto its base atom names: the inverse
    bookkeeping for the round-trip check."""
    info = split.split_info
    return {nm: tuple(info["copies_of"][nm]) for nm in info["base"].names}


def theta_embedding(original, split):
    """Check that atom |-> join of its copies embeds the complex algebra
    of the original into the complex algebra of the split structure.

    Verified clauses: the copy sets are nonempty and partition the split
    atoms (injective Boolean embedding, join and complement); diagonal
    sets map onto diagonal sets; cylindrification commutes with the map
    at every atom and coordinate; the coordinate action commutes likewise
    (converse and identity on the relation-type side).  Relational
    composition of a split is not part of the contract: copy-index rules
    deliberately perturb it.  Returns (theta, Report) with theta mapping
    atom name -> frozenset of split atom ids.
    """
    info = getattr(split, "split_info", None)
    if info is None or info["base"] is not original:
        raise ValueError("split does not declare the given structure as its base")
    fails = []
    theta = {}
    sidx = {nm: k for k, nm in enumerate(split.names)}
    for nm in original.names:
        theta[nm] = frozenset(sidx[c] for c in info["copies_of"][nm])
        if not theta[nm]:
            fails.append(f"atom {nm} has no copies")
    covered = set()
    for nm in original.names:
        if covered & theta[nm]:
            fails.append(f"copies of {nm} overlap another atom's")
        covered |= theta[nm]
    if covered != set(range(len(split.names))):
        fails.append("copy sets do not cover the split structure")

    if isinstance(original, CaAtomStructure):
        n = original.n
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                img = frozenset().union(*(theta[original.names[a]]
                                          for a in original.diag[(i, j)])) \
                    if original.diag[(i, j)] else frozenset()
                if img != split.diag[(i, j)]:
                    fails.append(f"diagonal d_{i}{j} not preserved")
        for a in original.atoms():
            nm = original.names[a]
            for i in range(n):
                cls = original.class_members(i)[original.acc[i][a]]
                lhs = frozenset().union(*(theta[original.names[b]] for b in cls))
                rhs = ca_cylindrify(split, theta[nm], i)
                if lhs != rhs:
                    fails.append(f"c_{i} broken at atom {nm}")
        if original.has_action and split.has_action:
            for i in range(n):
                for k in range(i + 1, n):
                    perm0 = original.sub_transposition(i, k)
                    perm1 = split.sub_transposition(i, k)
                    for a in original.atoms():
                        lhs = theta[original.names[perm0[a]]]
                        rhs = frozenset(perm1[x] for x in theta[original.names[a]])
                        if lhs != rhs:
                            fails.append(f"s_[{i},{k}] broken at atom {original.names[a]}")
        return theta, report(fails)

    id_img = frozenset().union(*(theta[original.names[e]] for e in original.identity))
    if id_img != frozenset(split.identity):
        fails.append("identity not preserved")
    for a in original.atoms():
        nm = original.names[a]
        lhs = theta[original.names[original.converse[a]]]
        rhs = frozenset(split.converse[x] for x in theta[nm])
        if lhs != rhs:
            fails.append(f"converse broken at atom {nm}")
    return theta, report(fails)
