"""Line-oriented text format for atom structures.

Relation-type structure:

    [atoms]      atom names, whitespace separated, any number of lines
    [identity]   names of identity atoms
    [converse]   lines "x y" setting x and y converse to each other;
                 atoms not mentioned are self-converse
    [triples]    lines "a b c", the consistent triples
    [rule]       alternative to [triples]: a named intensional rule,
                 materialized at load ("monochromatic-forbidden")

Cylindric-type structure:

    [dim]        the dimension n
    [atoms]      as above
    [acc i]      one line per equivalence class of the i-th accessibility
                 relation, listing its members
    [diag i j]   members of the diagonal d_ij (stored for i < j, mirrored)
    [action s_0 ... s_{n-1}]
                 optional; lines "x y" mapping each atom under the
                 coordinate permutation p -> s_p; give all n! sections
                 or none

Lines starting with "#" and blank lines are ignored.  Unknown section
names are rejected.  Atom names must be whitespace-free.  Saving a
structure and loading it back reproduces the frame data exactly;
display tables equal to the names are implied.
"""

from itertools import permutations

from .ca import CaAtomStructure
from .ra import RaAtomStructure

RULES = {}


def _rule_monochromatic(names, identity, converse):
    n = len(names)
    triples = set()
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if a in identity or b in identity or c in identity:
                    if ((a in identity and b == c)
                            or (b in identity and a == c)
                            or (c in identity and b == converse[a])):
                        triples.add((a, b, c))
                elif not (a == b == c):
                    triples.add((a, b, c))
    return triples


RULES["monochromatic-forbidden"] = _rule_monochromatic


def _sections(text):
    current = None
    out = []
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("["):
            if not line.endswith("]"):
                raise ValueError(f"line {ln}: malformed section header {line!r}")
            parts = line[1:-1].split()
            if not parts:
                raise ValueError(f"line {ln}: empty section header")
            current = (parts[0], tuple(parts[1:]), [])
            out.append(current)
            continue
        if current is None:
            raise ValueError(f"line {ln}: content before any section")
        current[2].append(line)
    return out


def parse_structure(text):
    """Parse either structure kind, dispatching on the [dim] section."""
    secs = _sections(text)
    names = {s[0] for s in secs}
    if "dim" in names:
        return _parse_ca(secs)
    return _parse_ra(secs)


_RA_SECTIONS = {"atoms", "identity", "converse", "triples", "rule"}
_CA_SECTIONS = {"dim", "atoms", "acc", "diag", "action"}


def _parse_ra(secs):
    atoms = []
    identity = set()
    conv_pairs = []
    triples = []
    rule = None
    for name, args, lines in secs:
        if name not in _RA_SECTIONS:
            raise ValueError(f"unknown section [{name}]")
        if args:
            raise ValueError(f"section [{name}] takes no arguments here")
        if name == "atoms":
            for line in lines:
                atoms.extend(line.split())
        elif name == "identity":
            for line in lines:
                identity.update(line.split())
        elif name == "converse":
            for line in lines:
                parts = line.split()
                if len(parts) != 2:
                    raise ValueError(f"converse line needs two names: {line!r}")
                conv_pairs.append(tuple(parts))
        elif name == "triples":
            if rule is not None:
                raise ValueError("[triples] and [rule] are mutually exclusive")
            for line in lines:
                parts = line.split()
                if len(parts) != 3:
                    raise ValueError(f"triple line needs three names: {line!r}")
                triples.append(tuple(parts))
            if rule is None:
                rule = "triples"
        elif name == "rule":
            if rule is not None:
                raise ValueError("[triples] and [rule] are mutually exclusive")
            body = " ".join(ln for ln in lines)
            rule = body.strip()
            if rule not in RULES:
                raise ValueError(f"unknown rule {rule!r}")
    if not atoms:
        raise ValueError("no atoms declared")
    if len(set(atoms)) != len(atoms):
        raise ValueError("duplicate atom names")
    index = {nm: k for k, nm in enumerate(atoms)}
    for nm in identity:
        if nm not in index:
            raise ValueError(f"unknown identity atom {nm}")
    converse = list(range(len(atoms)))
    for x, y in conv_pairs:
        if x not in index or y not in index:
            raise ValueError(f"unknown atom in converse pair {x} {y}")
        converse[index[x]] = index[y]
        converse[index[y]] = index[x]
    ident = {index[nm] for nm in identity}
    if rule is None or rule == "triples":
        tset = set()
        for a, b, c in triples:
            for nm in (a, b, c):
                if nm not in index:
                    raise ValueError(f"unknown atom in triple {a} {b} {c}")
            tset.add((index[a], index[b], index[c]))
    else:
        tset = RULES[rule](atoms, ident, converse)
    return RaAtomStructure(atoms, ident, converse, tset)


def _parse_ca(secs):
    n = None
    atoms = []
    acc_classes = {}
    diag = {}
    actions = {}
    for name, args, lines in secs:
        if name not in _CA_SECTIONS:
            raise ValueError(f"unknown section [{name}]")
        if name == "dim":
            body = " ".join(lines).split()
            if args or len(body) != 1:
                raise ValueError("[dim] takes a single number")
            n = int(body[0])
        elif name == "atoms":
            if args:
                raise ValueError("[atoms] takes no arguments")
            for line in lines:
                atoms.extend(line.split())
        elif name == "acc":
            if len(args) != 1:
                raise ValueError("[acc] needs one coordinate argument")
            i = int(args[0])
            acc_classes.setdefault(i, []).extend(line.split() for line in lines)
        elif name == "diag":
            if len(args) != 2:
                raise ValueError("[diag] needs two coordinate arguments")
            i, j = int(args[0]), int(args[1])
            mem = []
            for line in lines:
                mem.extend(line.split())
            diag.setdefault((i, j), []).extend(mem)
        elif name == "action":
            sigma = tuple(int(a) for a in args)
            pairs = []
            for line in lines:
                parts = line.split()
                if len(parts) != 2:
                    raise ValueError(f"action line needs two names: {line!r}")
                pairs.append(tuple(parts))
            actions[sigma] = pairs
    if n is None:
        raise ValueError("missing [dim]")
    if not atoms:
        raise ValueError("no atoms declared")
    if len(set(atoms)) != len(atoms):
        raise ValueError("duplicate atom names")
    index = {nm: k for k, nm in enumerate(atoms)}
    acc = []
    for i in range(n):
        if i not in acc_classes:
            raise ValueError(f"missing [acc {i}]")
        row = [None] * len(atoms)
        for cls, members in enumerate(acc_classes[i]):
            for nm in members:
                if nm not in index:
                    raise ValueError(f"unknown atom {nm} in [acc {i}]")
                if row[index[nm]] is not None:
                    raise ValueError(f"atom {nm} in two classes of [acc {i}]")
                row[index[nm]] = cls
        if any(c is None for c in row):
            missing = atoms[row.index(None)]
            raise ValueError(f"atom {missing} missing from [acc {i}]")
        acc.append(row)
    dmap = {}
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            mem = diag.get((i, j), diag.get((j, i)))
            if mem is None:
                raise ValueError(f"missing [diag {min(i,j)} {max(i,j)}]")
            for nm in mem:
                if nm not in index:
                    raise ValueError(f"unknown atom {nm} in a diag section")
            dmap[(i, j)] = frozenset(index[nm] for nm in mem)
    action_table = None
    if actions:
        perms = set(permutations(range(n)))
        if set(actions) != perms:
            raise ValueError("give [action] sections for all permutations or none")
        action_table = {}
        for sigma, pairs in actions.items():
            perm = [None] * len(atoms)
            for x, y in pairs:
                if x not in index or y not in index:
                    raise ValueError(f"unknown atom in action pair {x} {y}")
                if perm[index[x]] is not None:
                    raise ValueError(f"atom {x} mapped twice under {sigma}")
                perm[index[x]] = index[y]
            if any(p is None for p in perm):
                raise ValueError(f"incomplete [action {' '.join(map(str, sigma))}]")
            action_table[sigma] = tuple(perm)
    return CaAtomStructure(n, atoms, acc, dmap, action_table)


def write_structure(struct):
    if isinstance(struct, CaAtomStructure):
        return _write_ca(struct)
    if isinstance(struct, RaAtomStructure):
        return _write_ra(struct)
    raise TypeError("unsupported structure type")


def _write_ra(struct):
    out = ["[atoms]"]
    out.extend(struct.names)
    out.append("[identity]")
    out.extend(struct.names[e] for e in sorted(struct.identity))
    out.append("[converse]")
    for a in struct.atoms():
        b = struct.converse[a]
        if a < b:
            out.append(f"{struct.names[a]} {struct.names[b]}")
    out.append("[triples]")
    for a, b, c in sorted(struct.triples):
        out.append(f"{struct.names[a]} {struct.names[b]} {struct.names[c]}")
    return "\n".join(out) + "\n"


def _write_ca(struct):
    n = struct.n
    out = ["[dim]", str(n), "[atoms]"]
    out.extend(struct.names)
    for i in range(n):
        out.append(f"[acc {i}]")
        members = struct.class_members(i)
        for cls in sorted(members):
            out.append(" ".join(struct.names[a] for a in members[cls]))
    for i in range(n):
        for j in range(i + 1, n):
            out.append(f"[diag {i} {j}]")
            row = " ".join(struct.names[a] for a in sorted(struct.diag[(i, j)]))
            out.append(row if row else "#")
    if struct.has_action:
        for sigma in sorted(struct.action_table):
            out.append("[action " + " ".join(map(str, sigma)) + "]")
            perm = struct.action_table[sigma]
            out.extend(f"{struct.names[a]} {struct.names[perm[a]]}"
                       for a in struct.atoms())
    return "\n".join(out) + "\n"


def load_structure(path):
    with open(path, "r", encoding="utf-8") as fh:
        return parse_structure(fh.read())


def save_structure(struct, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(write_structure(struct))
