"""Finite cylindric-style atom structures of fixed dimension.

An atom structure of dimension n carries, per index i < n, an
equivalence relation (stored as class ids) governing cylindrification,
diagonal atom sets d_ij, and optionally a coordinate action giving the
effect of permuting tuple positions (used by networks and games, and
providing the substitution operations where present).
"""

from itertools import permutations

from .util import Report, report


class CaAtomStructure:
    def __init__(self, n, names, acc, diag, action_table=None, acc_pairs=None, display=None):
        self.n = n
        self.names = tuple(names)
        self.n_atoms = len(self.names)
        # acc[i][atom] is the class id of atom under the i-th equivalence
        self.acc = tuple(tuple(row) for row in acc)
        if len(self.acc) != n or any(len(r) != self.n_atoms for r in self.acc):
            raise ValueError("acc table shape mismatch")
        self.diag = {}
        for (i, j), s in diag.items():
            if i == j:
                continue
            self.diag[(i, j)] = frozenset(s)
            self.diag[(j, i)] = frozenset(s)
        for i in range(n):
            for j in range(n):
                if i != j and (i, j) not in self.diag:
                    raise ValueError(f"missing diagonal set d_{i}{j}")
        # action_table maps a permutation tuple sigma (new position p reads old
        # coordinate sigma[p]) to the induced atom permutation
        self.action_table = None
        if action_table is not None:
            self.action_table = {tuple(k): tuple(v) for k, v in action_table.items()}
        self.acc_pairs = acc_pairs  # raw input relation when loaded from a file
        self.display = tuple(display) if display is not None else self.names
        self._index = {nm: i for i, nm in enumerate(self.names)}
        self._members = None
        self._diag_rep = {}

    def atom(self, name):
        return self._index[name]

    def atoms(self):
        return range(self.n_atoms)

    @property
    def has_action(self):
        return self.action_table is not None

    def action(self, atom, sigma):
        return self.action_table[tuple(sigma)][atom]

    def sub_transposition(self, i, j):
        """Atom permutation for the transposition [i, j], if an action exists."""
        sigma = list(range(self.n))
        sigma[i], sigma[j] = sigma[j], sigma[i]
        return self.action_table[tuple(sigma)]

    def class_members(self, i):
        if self._members is None:
            self._members = []
            for k in range(self.n):
                d = {}
                for a in self.atoms():
                    d.setdefault(self.acc[k][a], []).append(a)
                self._members.append({c: tuple(v) for c, v in d.items()})
        return self._members[i]

    def related(self, i, a, b):
        return self.acc[i][a] == self.acc[i][b]

    def diag_rep(self, i, j):
        """Map acc_i class -> the unique d_ij atom in that class."""
        key = (i, j)
        if key not in self._diag_rep:
            rep = {}
            for a in self.diag[(i, j)]:
                c = self.acc[i][a]
                if c in rep and rep[c] != a:
                    raise ValueError(f"d_{i}{j} not unique inside an acc_{i} class")
                rep[c] = a
            self._diag_rep[key] = rep
        return self._diag_rep[key]

    def __repr__(self):
        return f"CaAtomStructure(n={self.n}, {self.n_atoms} atoms)"


def ca_cylindrify(struct, x, i):
    """c_i applied to a set of atom ids."""
    members = struct.class_members(i)
    out = set()
    seen = set()
    for a in x:
        c = struct.acc[i][a]
        if c not in seen:
            seen.add(c)
            out.update(members[c])
    return frozenset(out)


def ca_diagonal(struct, i, j):
    if i == j:
        return frozenset(struct.atoms())
    return struct.diag[(i, j)]


def ca_substitute(struct, x, i, j):
    """The substitution s_[i,j] (transposition) applied to an element."""
    perm = struct.sub_transposition(i, j)
    return frozenset(perm[a] for a in x)


def check_ca_axioms(struct):
    """Frame conditions making the complex algebra a cylindric-style algebra.

    Verifies: the raw accessibility input (when present) is an equivalence
    matching the class table; the equivalences commute pairwise; every
    acc_i class meets d_ij and contains at most one d_ij atom; the diagonal
    interchange d_ij = c_k(d_ik * d_kj); acc_k leaves d_ij membership alone
    for k outside {i,j}; and, when an action is present, that it is a group
    action permuting the acc and diag data the way coordinate swaps should.
    """
    fails = []
    n = struct.n
    N = struct.n_atoms
    if struct.acc_pairs is not None:
        for i in range(n):
            rel = struct.acc_pairs[i]
            for a, b in rel:
                if struct.acc[i][a] != struct.acc[i][b]:
                    fails.append(f"acc_{i} pair ({a},{b}) crosses class boundary")
            for a in range(N):
                if (a, a) not in rel:
                    fails.append(f"acc_{i} not reflexive at atom {a}")
            for a, b in rel:
                if (b, a) not in rel:
                    fails.append(f"acc_{i} not symmetric at ({a},{b})")
            for a, b in rel:
                for c in range(N):
                    if (b, c) in rel and (a, c) not in rel:
                        fails.append(f"acc_{i} not transitive via ({a},{b},{c})")
                        break
            # classes must not merge unrelated atoms
            by_class = {}
            for a in range(N):
                by_class.setdefault(struct.acc[i][a], []).append(a)
            for cls, mem in by_class.items():
                for a in mem:
                    for b in mem:
                        if (a, b) not in rel:
                            fails.append(f"acc_{i} class {cls} not fully related")
                            break
                    else:
                        continue
                    break
        if fails:
            return report(fails)
    # commutation: rows of the inhabitation matrix pairwise equal or disjoint
    for i in range(n):
        for j in range(i + 1, n):
            rows = {}
            for a in range(N):
                rows.setdefault(struct.acc[i][a], set()).add(struct.acc[j][a])
            frozen = {k: frozenset(v) for k, v in rows.items()}
            owner = {}
            ok = True
            for k, row in frozen.items():
                for y in row:
                    if y in owner and owner[y] != row:
                        fails.append(f"acc_{i} and acc_{j} do not commute (class {k})")
                        ok = False
                        break
                    owner[y] = row
                if not ok:
                    break
    # diagonal conditions
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            d = struct.diag[(i, j)]
            classes_hit = {struct.acc[i][a] for a in d}
            all_classes = set(struct.acc[i])
            if classes_hit != all_classes:
                fails.append(f"some acc_{i} class misses d_{i}{j}")
            seen = {}
            for a in d:
                c = struct.acc[i][a]
                if c in seen:
                    fails.append(f"two d_{i}{j} atoms in one acc_{i} class")
                    break
                seen[c] = a
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if len({i, j, k}) < 3:
                    continue
                d = struct.diag[(i, j)]
                dd = struct.diag[(i, k)] & struct.diag[(k, j)]
                image = ca_cylindrify(struct, dd, k)
                if image != d:
                    fails.append(f"d_{i}{j} != c_{k}(d_{i}{k} * d_{k}{j})")
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            d = struct.diag[(i, j)]
            for k in range(n):
                if k in (i, j):
                    continue
                if ca_cylindrify(struct, d, k) != d:
                    fails.append(f"acc_{k} moves atoms across d_{i}{j}")
    if struct.has_action:
        idp = tuple(range(n))
        table = struct.action_table
        if idp not in table or tuple(table[idp]) != tuple(range(N)):
            fails.append("action table lacks identity permutation")
        for sigma, perm in table.items():
            if sorted(perm) != list(range(N)):
                fails.append(f"action for {sigma} is not a bijection")
                continue
            # moving coordinates relabels the accessibility index: relating
            # atoms at i must become relating atoms at sigma^-1(i)
            for i in range(n):
                p = sigma.index(i)
                fwd, bwd = {}, {}
                for a in range(N):
                    c, c2 = struct.acc[i][a], struct.acc[p][perm[a]]
                    if fwd.setdefault(c, c2) != c2 or bwd.setdefault(c2, c) != c:
                        fails.append(f"action for {sigma} breaks acc_{i}")
                        break
        for (i, j), dset in struct.diag.items():
            for sigma, perm in table.items():
                inv_i = sigma.index(i)
                inv_j = sigma.index(j)
                mapped = {perm[a] for a in dset}
                if mapped != set(struct.diag[(inv_i, inv_j)]):
                    fails.append(f"action for {sigma} breaks d_{i}{j}")
                    break
    return report(fails)


def neat_reduct(struct, m):
    """Restrict to the first m coordinates.

    Atoms of the reduct are classes of the equivalence generated by the
    acc_i for i >= m; accessibility, diagonals and the action descend to
    classes.  Requires m >= 2 and m <= n.
    """
    n = struct.n
    if not (2 <= m <= n):
        raise ValueError("neat reduct dimension out of range")
    if m == n:
        return struct
    N = struct.n_atoms
    parent = list(range(N))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[max(rx, ry)] = min(rx, ry)

    for i in range(m, n):
        members = struct.class_members(i)
        for mem in members.values():
            for a in mem[1:]:
                union(mem[0], a)
    classes = sorted({find(a) for a in range(N)})
    cls_id = {c: k for k, c in enumerate(classes)}
    of_atom = [cls_id[find(a)] for a in range(N)]
    group = {k: [] for k in range(len(classes))}
    for a in range(N):
        group[of_atom[a]].append(a)
    names = []
    for k in range(len(classes)):
        rep = group[k][0]
        names.append(struct.names[rep] if len(group[k]) == 1 else f"[{struct.names[rep]}]")
    acc = []
    for i in range(m):
        row = []
        # class of a reduct atom: the set of acc_i classes its members hit
        keymap = {}
        for k in range(len(classes)):
            key = frozenset(struct.acc[i][a] for a in group[k])
            row.append(keymap.setdefault(key, len(keymap)))
        acc.append(row)
    diag = {}
    for i in range(m):
        for j in range(m):
            if i != j:
                dset = struct.diag[(i, j)]
                diag[(i, j)] = frozenset(
                    k for k in range(len(classes)) if all(a in dset for a in group[k])
                )
    action_table = None
    if struct.has_action:
        action_table = {}
        for sigma in permutations(range(m)):
            full = tuple(sigma) + tuple(range(m, n))
            perm = struct.action_table[full]
            action_table[sigma] = tuple(of_atom[perm[group[k][0]]] for k in range(len(classes)))
    return CaAtomStructure(m, names, acc, diag, action_table)


def full_set_ca(n, base_size):
    """Atom structure of the full set algebra on n-tuples over a base set."""
    from itertools import product

    atoms = list(product(range(base_size), repeat=n))
    index = {t: k for k, t in enumerate(atoms)}
    names = ["(" + ",".join(map(str, t)) + ")" for t in atoms]
    acc = []
    for i in range(n):
        keymap = {}
        row = []
        for t in atoms:
            key = t[:i] + t[i + 1:]
            row.append(keymap.setdefault(key, len(keymap)))
        acc.append(row)
    diag = {}
    for i in range(n):
        for j in range(n):
            if i != j:
                diag[(i, j)] = frozenset(index[t] for t in atoms if t[i] == t[j])
    action_table = {}
    for sigma in permutations(range(n)):
        action_table[sigma] = tuple(index[tuple(t[sigma[p]] for p in range(n))] for t in atoms)
    return CaAtomStructure(n, names, acc, diag, action_table)
