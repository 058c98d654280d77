"""Finite relation-algebra atom structures and their atom-level arithmetic.

An atom structure is given by a list of atom names, the set of identity
atoms, the converse permutation and the set of consistent triples
(a, b, c), read as: c is below a ; b.  Elements of the (finite) complex
algebra are frozensets of atom ids; compose/converse/boolean operations
act on those.
"""

from functools import reduce

from .util import Report, report, bits, mask_of


class RaAtomStructure:
    def __init__(self, names, identity, converse, triples, display=None):
        self.names = tuple(names)
        self.n_atoms = len(self.names)
        self.identity = frozenset(identity)
        self.converse = tuple(converse)
        self.triples = frozenset((int(a), int(b), int(c)) for a, b, c in triples)
        # optional pretty-printing table, id -> display string
        self.display = tuple(display) if display is not None else self.names
        self._index = {nm: i for i, nm in enumerate(self.names)}
        if len(self._index) != self.n_atoms:
            raise ValueError("duplicate atom names")
        if len(self.converse) != self.n_atoms:
            raise ValueError("converse table has wrong length")
        # composition masks: comp[a][b] = bitmask of atoms below a;b
        comp = [[0] * self.n_atoms for _ in range(self.n_atoms)]
        for a, b, c in self.triples:
            comp[a][b] |= 1 << c
        self._comp = comp

    def atom(self, name):
        return self._index[name]

    def atoms(self):
        return range(self.n_atoms)

    def consistent(self, a, b, c):
        return (self._comp[a][b] >> c) & 1 == 1

    def comp_mask(self, a, b):
        return self._comp[a][b]

    @property
    def is_integral(self):
        return len(self.identity) == 1

    @property
    def is_symmetric(self):
        return all(self.converse[a] == a for a in self.atoms())

    def nonidentity(self):
        return [a for a in self.atoms() if a not in self.identity]

    def full(self):
        return frozenset(self.atoms())

    def element(self, names):
        """Element from an iterable of atom names."""
        return frozenset(self._index[nm] for nm in names)

    def describe(self, x):
        return "{" + ", ".join(sorted(self.display[a] for a in x)) + "}"

    def __repr__(self):
        return f"RaAtomStructure({self.n_atoms} atoms, {len(self.triples)} triples)"


def ra_compose(struct, x, y):
    """Atomwise composition of two elements (frozensets of atom ids)."""
    m = 0
    for a in x:
        row = struct._comp[a]
        for b in y:
            m |= row[b]
    return frozenset(bits(m))


def ra_converse(struct, x):
    return frozenset(struct.converse[a] for a in x)


def bool_ops(struct):
    """Boolean operation bundle for elements of struct: join, meet, complement, top, bottom."""
    top = struct.full()

    def join(x, y):
        return x | y

    def meet(x, y):
        return x & y

    def complement(x):
        return top - x

    return {
        "join": join,
        "meet": meet,
        "complement": complement,
        "top": top,
        "bottom": frozenset(),
    }


def peirce_transforms(conv, t):
    """All six Peircean transforms of a triple under the converse table."""
    a, b, c = t
    out = set()
    stack = [t]
    while stack:
        a, b, c = stack.pop()
        if (a, b, c) in out:
            continue
        out.add((a, b, c))
        stack.append((conv[a], c, b))
        stack.append((c, conv[b], a))
    return out


def check_ra_axioms(struct):
    """Verify the atom-structure conditions for a finite relation algebra.

    Checks: converse is an involution fixing identity atoms; the triple set
    is closed under the Peircean transforms; the identity law (a triple with
    an identity atom on the left forces its other two entries equal, and
    every atom has an identity witness); atom-level associativity.
    Returns a Report with failure descriptions.
    """
    fails = []
    n = struct.n_atoms
    conv = struct.converse
    for a in range(n):
        if not (0 <= conv[a] < n):
            return report([f"converse of atom {a} out of range"])
        if conv[conv[a]] != a:
            fails.append(f"converse not involutive at {struct.names[a]}")
    for e in struct.identity:
        if conv[e] != e:
            fails.append(f"identity atom {struct.names[e]} not self-converse")
    for t in struct.triples:
        for u in peirce_transforms(conv, t):
            if u not in struct.triples:
                fails.append(f"triple {_tn(struct, t)} lacks Peircean image {_tn(struct, u)}")
                break
    # identity law
    for e in struct.identity:
        for b in range(n):
            for c in bits(struct._comp[e][b]):
                if c != b:
                    fails.append(
                        f"identity law: ({struct.names[e]},{struct.names[b]},{struct.names[c]}) consistent"
                    )
    for b in range(n):
        if not any(struct.consistent(e, b, b) for e in struct.identity):
            fails.append(f"atom {struct.names[b]} has no identity witness")
    # associativity at atom level:
    # exists x with (a,b,x) and (x,c,d)  iff  exists y with (b,c,y) and (a,y,d)
    comp = struct._comp
    for a in range(n):
        for b in range(n):
            ab = comp[a][b]
            for c in range(n):
                left = 0
                m = ab
                while m:
                    low = m & -m
                    left |= comp[low.bit_length() - 1][c]
                    m ^= low
                right = 0
                m = comp[b][c]
                while m:
                    low = m & -m
                    right |= comp[a][low.bit_length() - 1]
                    m ^= low
                if left != right:
                    fails.append(
                        f"associativity fails at ({struct.names[a]};{struct.names[b]});{struct.names[c]}"
                    )
                    if len(fails) > 40:
                        return report(fails)
    return report(fails)


def _tn(struct, t):
    return "(" + ",".join(struct.names[i] for i in t) + ")"


def symmetric_integral_structures(max_nonidentity, require_valid=True):
    """Enumerate all integral symmetric atom structures with up to the given
    number of non-identity atoms, in a fixed deterministic order.

    Atoms are named id, a0, a1, ...; the free data is which multisets of
    non-identity atoms form consistent triples (symmetry makes the triple
    set permutation-invariant, so multisets suffice).  Structures failing
    check_ra_axioms are skipped unless require_valid is False.
    """
    from itertools import combinations_with_replacement

    out = []
    for k in range(1, max_nonidentity + 1):
        names = ["id"] + [f"a{i}" for i in range(k)]
        nonid = list(range(1, k + 1))
        patterns = list(combinations_with_replacement(nonid, 3))
        for pick in range(1 << len(patterns)):
            triples = set()
            for b in nonid:
                triples.add((0, b, b))
                triples.add((b, 0, b))
                triples.add((b, b, 0))
            triples.add((0, 0, 0))
            for i, pat in enumerate(patterns):
                if (pick >> i) & 1:
                    x, y, z = pat
                    for p in ((x, y, z), (x, z, y), (y, x, z), (y, z, x), (z, x, y), (z, y, x)):
                        triples.add(p)
            s = RaAtomStructure(names, {0}, list(range(k + 1)), triples)
            if require_valid and not check_ra_axioms(s).ok:
                continue
            out.append(s)
    return out


def is_atom_consistent_network_triple(struct, a, b, c):
    """Triangle reading used by matrices: edge (x,y)=c with witness z,
    (x,z)=a and (z,y)=b.  Identical to triple consistency."""
    return struct.consistent(a, b, c)
