"""Canonical forms for node-labelled structures under node renaming.

Positions in games and matrices in basis searches are identified up to a
permutation of their nodes.  Candidate orderings are cut down with a
permutation-invariant per-node signature first; the canonical form is the
minimum encoding over the orderings that respect signature classes.
"""

from itertools import permutations


def _grouped_perms(sigs):
    """Permutations (new position -> old node) compatible with signature order."""
    order = sorted(range(len(sigs)), key=lambda u: (repr(sigs[u]), u))
    groups = []
    for u in order:
        if groups and sigs[groups[-1][-1]] == sigs[u]:
            groups[-1].append(u)
        else:
            groups.append([u])
    def rec(k):
        if k == len(groups):
            yield ()
            return
        for head in permutations(groups[k]):
            for tail in rec(k + 1):
                yield head + tail
    return rec(0)


def canonical_form(n_nodes, sigs, encode):
    """Minimal encoding and the permutation achieving it.

    sigs: per-node invariant values; encode(perm) -> comparable encoding where
    perm maps new positions to old nodes.
    """
    best = None
    best_perm = None
    for perm in _grouped_perms(sigs):
        enc = encode(perm)
        if best is None or enc < best:
            best = enc
            best_perm = perm
    return best, best_perm
