"""Finite/cofinite elements over split atom structures.

Splitting replaces chosen atoms of a base structure by a block of copies
(finitely many, or a symbolic infinite supply).  Elements of the term
algebra over such a structure are, per block, either a finite set of copy
indices or a cofinite one; this module implements that element type and
its Boolean and relational arithmetic, plus finite materialization used
both as an oracle and as the finite splitting constructor.

Two lift rules govern how a forbidden base triple behaves on copies:
  inherit: the lifted triple is consistent iff the base triple is; copy
           indices never matter.
  match:   a forbidden base triple (a,a,a) on a split atom is diluted:
           the lifted triple is forbidden only when all three copy
           indices coincide.
Triples containing an identity atom always require the two non-identity
copy indices to agree, so splitting preserves the identity law.
"""

from itertools import product

from .ra import RaAtomStructure

INHERIT = "inherit"
MATCH = "match"


class Block:
    """One block of the split universe: copies of a single base atom."""

    def __init__(self, name, count):
        self.name = name
        self.count = count  # int for finite, None for symbolic infinite

    @property
    def symbolic(self):
        return self.count is None

    def __repr__(self):
        size = "w" if self.symbolic else str(self.count)
        return f"Block({self.name}:{size})"


class FcElement:
    """Per-block finite or cofinite sets of copy indices.

    parts maps block name -> ("fin", frozenset) or ("cofin", frozenset);
    the cofin form is only used for symbolic blocks.
    """

    __slots__ = ("parts",)

    def __init__(self, parts):
        self.parts = dict(parts)

    def part(self, name):
        return self.parts.get(name, ("fin", frozenset()))

    def __eq__(self, other):
        if not isinstance(other, FcElement):
            return NotImplemented
        keys = set(self.parts) | set(other.parts)
        return all(_norm(self.part(k)) == _norm(other.part(k)) for k in keys)

    def __hash__(self):
        # empty fin parts are indistinguishable from missing ones under __eq__
        items = sorted((k, _norm(v)) for k, v in self.parts.items()
                       if _norm(v) != ("fin", frozenset()))
        return hash(tuple(items))

    def __repr__(self):
        items = []
        for k in sorted(self.parts):
            kind, s = _norm(self.part(k))
            if kind == "fin" and not s:
                continue
            body = ",".join(str(i) for i in sorted(s))
            items.append(f"{k}:{'~' if kind == 'cofin' else ''}{{{body}}}")
        return "Fc(" + " ".join(items) + ")"


def _norm(part):
    kind, s = part
    return (kind, frozenset(s))


class FcUniverse:
    """The block layout of a split structure, with Boolean arithmetic."""

    def __init__(self, blocks):
        self.blocks = {b.name: b for b in blocks}
        self.order = tuple(b.name for b in blocks)

    def zero(self):
        return FcElement({})

    def one(self):
        parts = {}
        for name in self.order:
            b = self.blocks[name]
            if b.symbolic:
                parts[name] = ("cofin", frozenset())
            else:
                parts[name] = ("fin", frozenset(range(b.count)))
        return FcElement(parts)

    def atom(self, block, index=0):
        b = self.blocks[block]
        if not b.symbolic and not (0 <= index < b.count):
            raise ValueError(f"copy index {index} out of range for {block}")
        return FcElement({block: ("fin", frozenset([index]))})

    def _valid_part(self, name, part):
        kind, s = part
        b = self.blocks[name]
        if kind == "cofin" and not b.symbolic:
            raise ValueError(f"cofin part on finite block {name}")
        if not b.symbolic and any(i >= b.count or i < 0 for i in s):
            raise ValueError(f"index out of range in block {name}")

    def validate(self, x):
        for name, part in x.parts.items():
            if name not in self.blocks:
                raise ValueError(f"unknown block {name}")
            self._valid_part(name, part)
        return True

    def join(self, x, y):
        parts = {}
        for name in set(x.parts) | set(y.parts):
            parts[name] = _pjoin(x.part(name), y.part(name))
        return FcElement(parts)

    def meet(self, x, y):
        parts = {}
        for name in set(x.parts) | set(y.parts):
            parts[name] = _pmeet(x.part(name), y.part(name))
        return FcElement(parts)

    def complement(self, x):
        parts = {}
        for name in self.order:
            b = self.blocks[name]
            kind, s = x.part(name)
            if b.symbolic:
                parts[name] = ("fin", s) if kind == "cofin" else ("cofin", s)
            else:
                full = frozenset(range(b.count))
                parts[name] = ("fin", full - s)
        return FcElement(parts)

    def is_zero(self, x):
        for name, part in x.parts.items():
            kind, s = part
            if kind == "cofin":
                return False
            if s:
                return False
        return True

    def part_nonempty(self, x, name):
        kind, s = x.part(name)
        if kind == "cofin":
            return True
        return bool(s)

    def part_singleton(self, x, name):
        """The sole index if the block part is a one-element set, else None."""
        kind, s = x.part(name)
        if kind == "fin" and len(s) == 1:
            return next(iter(s))
        return None

    def random_element(self, rng, span=8):
        parts = {}
        for name in self.order:
            b = self.blocks[name]
            hi = span if b.symbolic else b.count
            picks = frozenset(i for i in range(hi) if rng.random() < 0.4)
            if b.symbolic and rng.random() < 0.5:
                parts[name] = ("cofin", picks)
            else:
                parts[name] = ("fin", picks)
        return FcElement(parts)


def _pjoin(p, q):
    (k1, s1), (k2, s2) = p, q
    if k1 == "fin" and k2 == "fin":
        return ("fin", s1 | s2)
    if k1 == "cofin" and k2 == "cofin":
        return ("cofin", s1 & s2)
    if k1 == "cofin":
        return ("cofin", s1 - s2)
    return ("cofin", s2 - s1)


def _pmeet(p, q):
    (k1, s1), (k2, s2) = p, q
    if k1 == "fin" and k2 == "fin":
        return ("fin", s1 & s2)
    if k1 == "cofin" and k2 == "cofin":
        return ("cofin", s1 | s2)
    if k1 == "cofin":
        return ("fin", s2 - s1)
    return ("fin", s1 - s2)


class SplitRaStructure:
    """A base structure with selected atoms split into copy blocks.

    counts maps base atom name -> copy count (None for symbolic); unnamed
    atoms keep a single copy.  lift maps base atom name -> INHERIT or
    MATCH and defaults to INHERIT.  Identity atoms cannot be split.
    """

    def __init__(self, base: RaAtomStructure, counts, lift=None):
        self.base = base
        self.counts = dict(counts)
        self.lift = dict(lift or {})
        for nm in self.counts:
            if base.atom(nm) in base.identity:
                raise ValueError("cannot split an identity atom")
        blocks = []
        for a in base.atoms():
            nm = base.names[a]
            blocks.append(Block(nm, self.counts.get(nm, 1)))
        self.universe = FcUniverse(blocks)

    def _lift_kind(self, name):
        return self.lift.get(name, INHERIT)

    def triple_consistent(self, x, y, z):
        """Consistency of a lifted triple; each of x,y,z is (base_name, index)."""
        (an, ai), (bn, bi), (cn, ci) = x, y, z
        b = self.base
        a_, b_, c_ = b.atom(an), b.atom(bn), b.atom(cn)
        ids = b.identity
        if a_ in ids or b_ in ids or c_ in ids:
            if not b.consistent(a_, b_, c_):
                return False
            nonid = [(p, i) for p, i in ((a_, ai), (b_, bi), (c_, ci)) if p not in ids]
            if len(nonid) == 2:
                return nonid[0][1] == nonid[1][1]
            return True
        if b.consistent(a_, b_, c_):
            return True
        if an == bn == cn and self._lift_kind(an) == MATCH:
            return not (ai == bi == ci)
        return False

    def converse_pair(self, x):
        nm, i = x
        return (self.base.names[self.base.converse[self.base.atom(nm)]], i)

    def compose(self, X, Y):
        """Composition of FcElements; returns an FcElement.

        Works block by block from the base composition table, with the
        special identity and dilution cases handled on finite/cofinite
        index sets directly.
        """
        u = self.universe
        base = self.base
        ids = base.identity
        out = u.zero()
        for c in base.atoms():
            cn = base.names[c]
            cblk = u.blocks[cn]
            acc = ("fin", frozenset())
            for a in base.atoms():
                an = base.names[a]
                if not u.part_nonempty(X, an):
                    continue
                for b in base.atoms():
                    bn = base.names[b]
                    if not u.part_nonempty(Y, bn):
                        continue
                    consistent = base.consistent(a, b, c)
                    if c in ids:
                        if not consistent or a in ids and b in ids:
                            if consistent and a in ids and b in ids:
                                acc = _pjoin(acc, ("fin", frozenset([0])))
                            continue
                        # witness pair must share a copy index
                        if a in ids or b in ids:
                            acc = _pjoin(acc, ("fin", frozenset([0])))
                            continue
                        common = _pmeet(X.part(an), Y.part(bn))
                        if common[0] == "cofin" or common[1]:
                            acc = _pjoin(acc, ("fin", frozenset([0])))
                        continue
                    if consistent:
                        if a in ids and b in ids:
                            continue  # c nonidentity cannot sit under id;id
                        if a in ids:
                            # copies pass through with their indices
                            if bn == cn:
                                acc = _pjoin(acc, Y.part(bn))
                            continue
                        if b in ids:
                            if an == cn:
                                acc = _pjoin(acc, X.part(an))
                            continue
                        acc = _pjoin(acc, _full_part(cblk))
                        continue
                    # base-forbidden
                    if an == bn == cn and self._lift_kind(an) == MATCH:
                        sx = u.part_singleton(X, an)
                        sy = u.part_singleton(Y, bn)
                        if sx is not None and sx == sy:
                            part = _pmeet(_full_part(cblk), ("cofin", frozenset([sx])))
                            if not cblk.symbolic:
                                part = ("fin", frozenset(range(cblk.count)) - {sx})
                            acc = _pjoin(acc, part)
                        else:
                            acc = _pjoin(acc, _full_part(cblk))
            if acc != ("fin", frozenset()):
                out = u.join(out, FcElement({cn: acc}))
        return out

    def converse(self, X):
        parts = {}
        for nm, part in X.parts.items():
            cn = self.base.names[self.base.converse[self.base.atom(nm)]]
            parts[cn] = _pjoin(parts.get(cn, ("fin", frozenset())), part)
        return FcElement(parts)

    def finite(self, default_count=2):
        """Materialize to a concrete RaAtomStructure (symbolic blocks get
        default_count copies).  Used as the oracle for the symbolic path."""
        base = self.base
        atom_list = []
        for a in base.atoms():
            nm = base.names[a]
            blk = self.universe.blocks[nm]
            count = blk.count if not blk.symbolic else default_count
            for i in range(count):
                atom_list.append((nm, i))
        index = {pair: k for k, pair in enumerate(atom_list)}
        names = [f"{nm}^{i}" if len([p for p in atom_list if p[0] == nm]) > 1 else nm
                 for nm, i in atom_list]
        identity = {index[(base.names[e], 0)] for e in base.identity}
        converse = [index[self.converse_pair(p)] for p in atom_list]
        triples = set()
        for x, y, z in product(atom_list, repeat=3):
            if self.triple_consistent(x, y, z):
                triples.add((index[x], index[y], index[z]))
        return RaAtomStructure(names, identity, converse, triples)


def _full_part(block):
    if block.symbolic:
        return ("cofin", frozenset())
    return ("fin", frozenset(range(block.count)))


def monochromatic_base(colours):
    """Base structure with one identity atom and the named symmetric
    colours, forbidding exactly the monochromatic non-identity triples."""
    names = ["id"] + list(colours)
    n = len(names)
    triples = {(0, 0, 0)}
    for b in range(1, n):
        triples |= {(0, b, b), (b, 0, b), (b, b, 0)}
        for c in range(1, n):
            for d in range(1, n):
                if not (b == c == d):
                    triples.add((b, c, d))
    return RaAtomStructure(names, {0}, list(range(n)), triples)
