"""Command-line front end.

Verbs: check, build, game, ef, basis, repsearch, split, theta, lyndon,
play.  Structures come from a file (--in), from a builtin builder name
(--structure), or from stdin when piped, in the text format of the
fileformat module.

Builtin structure names, colon-and-comma form:

    maddux:k            symmetric integral, k diversity atoms
    rainbowCA:n,g,r     rainbow cylindric structure, g greens / r reds
    orderRainbow:n,D,D' rainbow structure over descending green tints
    bsl:g,r             greens-vs-reds relation structure
    fullSet:n,b         full set structure on a b-element base

Exit status: 0 for pass / Some / requested-side outcomes, 1 for checked
negative outcomes (fail / None / opponent wins), 2 for usage or budget
errors.  --json writes the result object to stdout (human text moves to
stderr); --out writes the certificate file, timing excluded so reruns
are byte-comparable.  --jobs (or CYLGAME_JOBS) caps worker processes;
results are collected in submission order, so the output does not depend
on the worker count.
"""

import argparse
import json
import os
import signal
import sys
import time
from multiprocessing import Pool

from . import games
from . import networks as nw
from .ca import CaAtomStructure, check_ca_axioms, full_set_ca
from .constructions import (bsl_structure, maddux_E, order_rainbow_ca,
                            rainbow_ca, red_atoms, split_atoms,
                            theta_embedding)
from .fileformat import parse_structure, write_structure
from .ra import RaAtomStructure, check_ra_axioms
from .strategies import cone_bombardment, descending_bombardment, greedy_exists
from .util import BudgetExceeded


class UsageError(Exception):
    pass


# ------------------------------------------------------------ plumbing

def _canon_json(obj):
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def _say(args, text):
    stream = sys.stderr if args.json else sys.stdout
    print(text, file=stream)


def _finish(args, result, negative, certificate=None):
    """Common tail: certificate file, JSON echo, exit status."""
    if args.out and certificate is not None:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(_canon_json(certificate))
    if args.json:
        sys.stdout.write(_canon_json(result))
    return 1 if negative else 0


def _pool_jobs(args):
    jobs = args.jobs
    if jobs is None:
        jobs = int(os.environ.get("CYLGAME_JOBS", "1"))
    if jobs < 1:
        raise UsageError("--jobs must be >= 1")
    return jobs


def _pmap(fn, items, jobs):
    """Order-preserving map over a worker pool; jobs == 1 stays inline."""
    items = list(items)
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with Pool(processes=min(jobs, len(items))) as pool:
        return pool.map(fn, items)


def _w_matrix_ok(arg):
    struct, entries = arg
    return bool(nw.matrix_validate(struct, nw.BasicMatrix(entries)))


def _w_network_ok(arg):
    struct, net = arg
    return bool(nw.network_validate(struct, net))


BUILDERS = {
    "maddux": (("k",), lambda p, cap: maddux_E(p["k"])),
    "rainbowCA": (("n", "g", "r"),
                  lambda p, cap: rainbow_ca(p["n"], p["g"], p["r"], max_atoms=cap)),
    "orderRainbow": (("n", "dg", "dr"),
                     lambda p, cap: order_rainbow_ca(p["n"], p["dg"], p["dr"],
                                                     max_atoms=cap)),
    "bsl": (("g", "r"), lambda p, cap: bsl_structure(p["g"], p["r"])),
    "fullSet": (("n", "base"), lambda p, cap: full_set_ca(p["n"], p["base"])),
}


def _build_structure(name, params, max_atoms):
    if name not in BUILDERS:
        raise UsageError(f"unknown builder {name!r} (choose from "
                         f"{', '.join(sorted(BUILDERS))})")
    keys, fn = BUILDERS[name]
    missing = [k for k in keys if params.get(k) is None]
    if missing:
        raise UsageError(f"builder {name} needs --{' --'.join(missing)}")
    return fn(params, max_atoms)


def _struct_from_dsl(text, max_atoms):
    name, _, rest = text.partition(":")
    vals = [v for v in rest.split(",") if v] if rest else []
    if name not in BUILDERS:
        raise UsageError(f"unknown builtin structure {name!r}")
    keys, _fn = BUILDERS[name]
    if len(vals) != len(keys):
        raise UsageError(f"{name} takes {len(keys)} parameters "
                         f"({','.join(keys)}), got {len(vals)}")
    try:
        params = {k: int(v) for k, v in zip(keys, vals)}
    except ValueError:
        raise UsageError(f"non-integer parameter in {text!r}")
    return _build_structure(name, params, max_atoms)


def _load_structure(args):
    given = sum(1 for v in (getattr(args, "in_path", None),
                            getattr(args, "structure", None)) if v)
    if given > 1:
        raise UsageError("give only one of --in / --structure")
    cap = getattr(args, "max_atoms", None) or 500_000
    if getattr(args, "structure", None):
        return _struct_from_dsl(args.structure, cap)
    if getattr(args, "in_path", None):
        with open(args.in_path, "r", encoding="utf-8") as fh:
            return parse_structure(fh.read())
    if sys.stdin.isatty():
        raise UsageError("no structure: give --in, --structure, or pipe one in")
    return parse_structure(sys.stdin.read())


def _kind(struct):
    return "ca" if isinstance(struct, CaAtomStructure) else "ra"


def _ef_structure(text):
    kind, num = text[:1], text[1:]
    if num.isdigit() and int(num) >= 1:
        if kind == "K":
            return games.complete_graph(int(num))
        if kind == "L":
            return games.linear_order(int(num))
    raise UsageError(f"unknown pebble structure {text!r} (K<n> or L<n>)")


# --------------------------------------------------------------- verbs

def cmd_check(args):
    struct = _load_structure(args)
    check = check_ca_axioms if _kind(struct) == "ca" else check_ra_axioms
    rep = check(struct)
    for f in rep.failures:
        _say(args, f"FAIL: {f}")
    _say(args, f"axioms: {'pass' if rep.ok else 'fail'} "
               f"({_kind(struct)}, {struct.n_atoms} atoms)")
    result = {"verb": "check", "kind": _kind(struct), "atoms": struct.n_atoms,
              "ok": rep.ok, "failures": list(rep.failures)}
    return _finish(args, result, negative=not rep.ok, certificate=result)


def _emit_structure(args, text, result):
    """Route a produced structure: text to --out or stdout; with --json
    and no --out the JSON (carrying the text) replaces it so stdout stays
    a single well-formed document."""
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        if args.json:
            sys.stdout.write(_canon_json(result))
        return
    if args.json:
        sys.stdout.write(_canon_json(dict(result, structure=text)))
    else:
        sys.stdout.write(text)


def cmd_build(args):
    params = {k: getattr(args, k) for k in ("k", "n", "g", "r", "dg", "dr", "base")}
    if ":" in args.name:
        if any(v is not None for v in params.values()):
            raise UsageError("give parameters either in the name or as flags")
        struct = _struct_from_dsl(args.name, args.max_atoms or 500_000)
    else:
        struct = _build_structure(args.name, params, args.max_atoms or 500_000)
    text = write_structure(struct)
    result = {"verb": "build", "name": args.name, "kind": _kind(struct),
              "atoms": struct.n_atoms}
    _emit_structure(args, text, result)
    return 0


_VARIANTS = {"ra": "RA", "RA": "RA", "atomic": "Gmk", "Gmk": "Gmk",
             "bold": "boldG", "boldG": "boldG"}

_SCRIPTS = {"cone": cone_bombardment, "descending": descending_bombardment}


def _scripted_cert(args, struct):
    if args.script == "greedy":
        if args.m is None:
            raise UsageError("--script greedy needs --m")
        return greedy_exists(struct, args.m, k=args.k)
    try:
        return _SCRIPTS[args.script](struct, m=args.m)
    except ValueError as e:
        raise UsageError(str(e))


def cmd_game(args):
    struct = _load_structure(args)
    if args.variant not in _VARIANTS:
        raise UsageError(f"unknown variant {args.variant!r}")
    gname = _VARIANTS[args.variant]
    initial = None
    if args.initial:
        try:
            initial = sorted(struct.atom(nm) for nm in args.initial)
        except KeyError as e:
            raise UsageError(f"unknown atom {e.args[0]!r}")
    t0 = time.monotonic()

    if args.script:
        cert = _scripted_cert(args, struct)
        want = {"RA": "ra", "Gmk": "atomic", "boldG": "bold"}[gname]
        if cert.game != want:
            raise UsageError(f"--script {args.script} plays the {cert.game} "
                             f"game, not {want}")
        rep = games.verify_strategy(struct, cert,
                                    cap=args.max_positions or 500_000)
        for f in rep.failures:
            _say(args, f"FAIL: {f}")
        verdict = "verified" if rep.ok else "refuted"
        _say(args, f"scripted {cert.game} strategy ({cert.claim}): {verdict}")
        certificate = {
            "game": gname, "params": dict(sorted(cert.params.items())),
            "winner": cert.claim.replace("_wins", "") if rep.ok else None,
            "rounds_solved": cert.params.get("k"),
            "certificate": cert.to_json(struct),
            "positions_explored": len(cert.materialized or ()),
            "verified": rep.ok,
        }
        result = dict(certificate,
                      wall_time_ms=int(1000 * (time.monotonic() - t0)))
        return _finish(args, result, negative=not rep.ok, certificate=certificate)

    if args.m is None:
        raise UsageError("game needs --m (node budget)")
    kwargs = {"initial_atoms": initial}
    if args.max_positions:
        kwargs["cap"] = args.max_positions
    if gname == "RA":
        res = games.solve_ra_game(struct, args.m, k=args.k,
                                  allow_reuse=not args.no_reuse, **kwargs)
    elif gname == "Gmk":
        if _kind(struct) != "ca":
            raise UsageError("atomic variant needs a cylindric-type structure")
        res = games.solve_atomic_game(struct, args.m, k=args.k, **kwargs)
    else:
        if _kind(struct) != "ca":
            raise UsageError("bold variant needs a cylindric-type structure")
        if args.k is not None:
            raise UsageError("the witness-naming game is a safety game; drop --k")
        res = games.solve_bold_game(struct, args.m, **kwargs)
    ms = int(1000 * (time.monotonic() - t0))
    _say(args, f"winner: {res.winner} "
               f"({res.detail.get('positions', 0)} positions, {ms} ms)")
    certificate = {
        "game": gname,
        "params": {"m": args.m, "k": args.k,
                   "allow_reuse": not args.no_reuse},
        "winner": res.winner,
        "rounds_solved": args.k,
        "certificate": {"per_initial": dict(sorted(res.per_initial.items()))},
        "positions_explored": res.detail.get("positions", 0),
    }
    result = dict(certificate, wall_time_ms=ms)
    return _finish(args, result, negative=res.winner != args.claim,
                   certificate=certificate)


def cmd_ef(args):
    G = _ef_structure(args.left)
    H = _ef_structure(args.right)
    t0 = time.monotonic()
    solver = games.solve_ef_oracle if args.oracle else games.solve_ef
    res = solver(G, H, args.p, args.r)
    ms = int(1000 * (time.monotonic() - t0))
    if args.verify:
        other = games.solve_ef_oracle if not args.oracle else games.solve_ef
        if other(G, H, args.p, args.r).winner != res.winner:
            _say(args, "FAIL: solvers disagree")
            return _finish(args, {"error": "solver disagreement"}, True)
    _say(args, f"winner: {res.winner} ({ms} ms)")
    certificate = {
        "game": "EF",
        "params": {"left": args.left, "right": args.right,
                   "p": args.p, "r": args.r},
        "winner": res.winner,
        "rounds_solved": args.r,
        "certificate": None,
        "positions_explored": res.detail.get("positions", 0),
    }
    result = dict(certificate, wall_time_ms=ms)
    return _finish(args, result, negative=res.winner != args.claim,
                   certificate=certificate)


def cmd_basis(args):
    struct = _load_structure(args)
    jobs = _pool_jobs(args)
    cap = args.max_positions or (200_000 if _kind(struct) == "ca" else 2_000_000)
    if _kind(struct) == "ca":
        basis, info = nw.ca_basis_search(struct, args.m, cap=cap)
    else:
        basis, info = nw.basis_search(struct, args.m, cap=cap,
                                      allow_reuse=not args.no_reuse)
    found = basis is not None
    if found and args.verify:
        if _kind(struct) == "ca":
            oks = _pmap(_w_network_ok, [(struct, b) for b in basis], jobs)
        else:
            oks = _pmap(_w_matrix_ok, [(struct, b.entries) for b in basis], jobs)
        if not all(oks):
            _say(args, "FAIL: basis member fails validation")
            return _finish(args, {"error": "invalid basis member"}, True)
    _say(args, f"basis: {'Some, %d members' % len(basis) if found else 'None'} "
               f"({info})")
    listing = None
    if found:
        if _kind(struct) == "ra":
            listing = [[[struct.names[a] for a in row] for row in b.entries]
                       for b in basis]
        else:
            listing = [str(b.key()) for b in basis]
    certificate = {"verb": "basis", "kind": _kind(struct), "m": args.m,
                   "found": found, "info": info, "members": listing}
    return _finish(args, certificate, negative=not found, certificate=certificate)


def cmd_repsearch(args):
    struct = _load_structure(args)
    rep = nw.rep_search(struct, args.base)
    if rep is None:
        _say(args, f"representation on base {args.base}: None")
        certificate = {"verb": "repsearch", "base": args.base, "found": False}
        return _finish(args, certificate, True, certificate)
    check = nw.rep_verify(struct, rep)
    if args.verify and not check.ok:
        for f in check.failures:
            _say(args, f"FAIL: {f}")
        return _finish(args, {"error": "verification failed"}, True)
    certificate = {"verb": "repsearch", "base": args.base, "found": True,
                   "verified": check.ok, "representation": rep.to_json()}
    if not args.json:
        sys.stdout.write(json.dumps(certificate, indent=2, sort_keys=True) + "\n")
    return _finish(args, certificate, False, certificate)


def _split_targets(args, struct):
    if args.targets == "reds":
        tg = red_atoms(struct)
        if not tg:
            raise UsageError("structure has no red atoms to split")
        return tg
    names = [t for t in args.targets.split(",") if t]
    try:
        ids = [struct.atom(nm) for nm in names]
    except KeyError as e:
        raise UsageError(f"unknown atom {e.args[0]!r}")
    return ids if _kind(struct) == "ca" else names


def cmd_split(args):
    struct = _load_structure(args)
    targets = _split_targets(args, struct)
    out = split_atoms(struct, targets, args.copies, lift=args.lift)
    text = write_structure(out)
    result = {"verb": "split", "kind": _kind(struct), "copies": args.copies,
              "lift": args.lift, "targets": len(targets),
              "atoms_before": struct.n_atoms, "atoms_after": out.n_atoms}
    _emit_structure(args, text, result)
    return 0


def cmd_theta(args):
    struct = _load_structure(args)
    targets = _split_targets(args, struct)
    split = split_atoms(struct, targets, args.copies, lift=args.lift)
    theta, rep = theta_embedding(struct, split)
    for f in rep.failures:
        _say(args, f"FAIL: {f}")
    _say(args, f"theta embedding: {'pass' if rep.ok else 'fail'} "
               f"({struct.n_atoms} -> {split.n_atoms} atoms)")
    certificate = {
        "verb": "theta", "ok": rep.ok, "copies": args.copies, "lift": args.lift,
        "atoms_before": struct.n_atoms, "atoms_after": split.n_atoms,
        "theta": {nm: sorted(split.names[c] for c in cs)
                  for nm, cs in sorted(theta.items())},
        "failures": list(rep.failures),
    }
    return _finish(args, certificate, negative=not rep.ok, certificate=certificate)


def cmd_lyndon(args):
    struct = _load_structure(args)
    t0 = time.monotonic()
    k, info = games.lyndon_check(struct, args.K, rep_base_cap=args.rep_base_cap,
                                 cap=args.max_positions or 200_000)
    ms = int(1000 * (time.monotonic() - t0))
    _say(args, f"games won up to k = {k} of {args.K} ({info}, {ms} ms)")
    certificate = {"verb": "lyndon", "game": "Gk", "K": args.K, "k": k,
                   "info": info}
    result = dict(certificate, wall_time_ms=ms)
    return _finish(args, result, negative=k < args.K, certificate=certificate)


# ----------------------------------------------------------- interactive

def _play_demands(struct, variant, pos, m):
    if variant == "RA":
        return list(games.ra_demands(struct, pos))
    if variant == "Gmk":
        return list(games.ca_demands(struct, pos))
    return list(games.bold_demands(struct, pos, m))


def _play_responses(struct, variant, pos, demand, m, allow_reuse):
    if variant == "RA":
        return games.ra_responses(struct, pos, demand, m, allow_reuse)
    if variant == "Gmk":
        return games.ca_responses(struct, pos, demand, m)
    return games.bold_responses(struct, pos, demand)


def _play_key(variant, pos):
    return pos.entries if variant == "RA" else pos.key()


def _survives(struct, variant, pos, rounds, m, allow_reuse, memo):
    """Depth-limited exact evaluation: can the existential player last
    `rounds` more universal moves from this position?"""
    if rounds <= 0:
        return True
    key = (_play_key(variant, pos), rounds)
    if key in memo:
        return memo[key]
    val = True
    for d in _play_demands(struct, variant, pos, m):
        resp = _play_responses(struct, variant, pos, d, m, allow_reuse)
        if not any(_survives(struct, variant, r2, rounds - 1, m,
                             allow_reuse, memo) for r2 in resp):
            val = False
            break
    memo[key] = val
    return val


def _describe_demand(struct, variant, d):
    if variant == "RA":
        x, y, a, b = d
        return f"split edge ({x},{y}) as {struct.names[a]};{struct.names[b]}"
    if variant == "Gmk":
        xs, i, a = d
        return f"tuple {list(xs)}, coord {i}, atom {struct.names[a]}"
    xs, i, a, w = d
    return (f"tuple {list(xs)}, coord {i}, atom {struct.names[a]}, "
            f"witness slot {w}")


def _describe_response(struct, variant, pos, cand):
    if variant == "RA":
        if cand.entries == pos.entries:
            return "existing in-place witness"
        if cand.size > pos.size:
            col = ", ".join(struct.names[cand[w, cand.size - 1]]
                            for w in range(pos.size))
            return f"fresh node {pos.size}: [{col}]"
        z = next(w for w in range(pos.size)
                 if any(cand[w, u] != pos[w, u] for u in range(pos.size)))
        col = ", ".join(struct.names[cand[w, z]] for w in range(pos.size)
                        if w != z)
        return f"rewire node {z}: [{col}]"
    new = sorted(set(cand.nodes) - set(pos.nodes))
    if not new:
        return "existing node answers"
    return f"fresh node {new[0]}"


def _prompt(args, label):
    print(f"{label}> ", end="", flush=True)
    line = sys.stdin.readline()
    if not line:
        return "quit"
    return line.strip()


def _choose(args, label, options, describe):
    """Numbered menu; returns the chosen option or None on quit.  Entries
    that are not a listed number are rejected with the reason."""
    descs = [describe(opt) for opt in options]
    counts = {}
    for idx, d in enumerate(descs):
        counts[d] = counts.get(d, 0) + 1
        if counts[d] > 1:
            descs[idx] = f"{d}, wiring {counts[d]}"
    for idx, d in enumerate(descs, 1):
        print(f"  [{idx}] {d}")
    while True:
        raw = _prompt(args, label)
        if raw == "quit":
            return None
        if not raw.isdigit():
            print(f"illegal move: {raw!r} is not an option number (1..{len(options)})")
            continue
        pick = int(raw)
        if not 1 <= pick <= len(options):
            print(f"illegal move: {pick} is outside 1..{len(options)}")
            continue
        return options[pick - 1]


def cmd_play(args):
    struct = _load_structure(args)
    if args.variant not in _VARIANTS:
        raise UsageError(f"unknown variant {args.variant!r}")
    variant = _VARIANTS[args.variant]
    if variant != "RA" and _kind(struct) != "ca":
        raise UsageError("this variant needs a cylindric-type structure")
    if variant == "RA" and _kind(struct) != "ra":
        raise UsageError("the RA variant needs a relation-type structure")
    m = args.m
    if m is None:
        raise UsageError("play needs --m")
    if variant != "RA" and m < struct.n:
        raise UsageError("node budget below the dimension")
    k = args.k if args.k is not None else 6
    human = args.side
    memo = {}
    script = None
    if args.script:
        if human == "forall":
            raise UsageError("--script drives the engine universal player; "
                             "use --side exists with it")
        script = _scripted_cert(args, struct)

    transcript = {"variant": variant, "human": human, "m": m, "k": k,
                  "moves": [], "outcome": None}

    def record(player, text):
        by = "human" if player == human else "engine"
        transcript["moves"].append({"by": by, "player": player, "move": text})
        print(f"{player} ({by}): {text}")

    def save(code):
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(_canon_json(transcript))
            print(f"transcript saved to {args.out}")
        return code

    # opening atom: universal player's choice
    atoms = (sorted(script.initial) if script is not None and script.initial
             else list(struct.atoms()))
    if human == "forall":
        names = [struct.names[a] for a in atoms]
        show = ", ".join(names[:40]) + (" ..." if len(names) > 40 else "")
        print(f"atoms: {show}")
        while True:
            raw = _prompt(args, "opening atom")
            if raw == "quit":
                transcript["outcome"] = "quit"
                return save(0)
            if raw in struct._index:
                opening = struct.atom(raw)
                break
            print(f"illegal move: unknown atom name {raw!r}")
    else:
        opening = atoms[0]
        if script is None:
            for a in atoms:
                pos0 = _initial_position(struct, variant, a)
                if pos0 is None or not _survives(struct, variant, pos0, k - 1,
                                                m, not args.no_reuse, memo):
                    opening = a
                    break
    record("forall", f"opening atom {struct.names[opening]}")

    pos = _initial_position(struct, variant, opening)
    if pos is None:
        record("exists", "no consistent opening position")
        transcript["outcome"] = "forall wins"
        print("forall wins: the opening atom admits no network")
        return save(0 if human == "forall" else 1)

    rounds_left = k - 1
    while rounds_left > 0:
        # universal move
        demands = _play_demands(struct, variant, pos, m)
        if human == "forall":
            d = _choose(args, "demand", demands,
                        lambda dd: _describe_demand(struct, variant, dd))
            if d is None:
                transcript["outcome"] = "quit"
                return save(0)
        else:
            d = None
            if script is not None:
                mv = script.strategy(struct, pos)
                if mv is not None:
                    d = tuple(mv)
            if d is None and demands:
                for cand in demands:
                    resp = _play_responses(struct, variant, pos, cand, m,
                                           not args.no_reuse)
                    if not any(_survives(struct, variant, r2, rounds_left - 1,
                                         m, not args.no_reuse, memo)
                               for r2 in resp):
                        d = cand
                        break
                if d is None:
                    d = demands[0]
            if d is None:
                transcript["outcome"] = "exists survives"
                print("exists survives: the universal player has no move")
                return save(0 if human == "exists" else 1)
        record("forall", _describe_demand(struct, variant, d))

        # existential move
        resp = _play_responses(struct, variant, pos, d, m, not args.no_reuse)
        if not resp:
            transcript["outcome"] = "forall wins"
            print(f"forall wins: no legal answer to "
                  f"{_describe_demand(struct, variant, d)}")
            return save(0 if human == "forall" else 1)
        if human == "exists":
            nxt = _choose(args, "answer", resp,
                          lambda rr: _describe_response(struct, variant, pos, rr))
            if nxt is None:
                transcript["outcome"] = "quit"
                return save(0)
        else:
            nxt = next((r2 for r2 in resp
                        if _survives(struct, variant, r2, rounds_left - 1, m,
                                     not args.no_reuse, memo)), resp[0])
        record("exists", _describe_response(struct, variant, pos, nxt))
        pos = nxt
        rounds_left -= 1

    transcript["outcome"] = "exists survives"
    print(f"exists survives all {k} rounds")
    return save(0 if human == "exists" else 1)


def _initial_position(struct, variant, atom):
    if variant == "RA":
        opts = games._ra_initial_positions(struct, atom)
        return opts[0] if opts else None
    net = nw.network_from_atom(struct, atom)
    return net if nw.network_validate(struct, net) else None


# ---------------------------------------------------------------- main

def _add_common(sp, struct_input=True):
    sp.add_argument("--json", action="store_true",
                    help="write the result object to stdout")
    sp.add_argument("--out", help="write the certificate / output file here")
    sp.add_argument("--jobs", type=int, default=None,
                    help="worker process cap (default: CYLGAME_JOBS or 1)")
    sp.add_argument("--verify", action="store_true",
                    help="re-check the result with the independent verifier")
    sp.add_argument("--max-positions", type=int, default=None)
    sp.add_argument("--max-atoms", type=int, default=None)
    sp.add_argument("--timeout-s", type=float, default=None)
    if struct_input:
        sp.add_argument("--in", dest="in_path", help="structure file")
        sp.add_argument("--structure", help="builtin structure name")


def build_parser():
    ap = argparse.ArgumentParser(
        prog="cylgame",
        description="games, bases and representations on finite atom structures")
    sub = ap.add_subparsers(dest="verb", required=True)

    sp = sub.add_parser("check", help="run the axiom checker")
    _add_common(sp)
    sp.set_defaults(fn=cmd_check)

    sp = sub.add_parser("build", help="emit a builtin structure as a file")
    sp.add_argument("name", help="builder name, flag form or name:p1,p2 form")
    for flag in ("k", "n", "g", "r", "dg", "dr", "base"):
        sp.add_argument(f"--{flag}", type=int, default=None)
    _add_common(sp, struct_input=False)
    sp.set_defaults(fn=cmd_build)

    sp = sub.add_parser("game", help="solve or verify an atom game")
    sp.add_argument("--variant", required=True,
                    help="ra | atomic | bold (aliases RA, Gmk, boldG)")
    sp.add_argument("--m", type=int, default=None, help="node budget")
    sp.add_argument("--k", type=int, default=None, help="round bound")
    sp.add_argument("--no-reuse", action="store_true")
    sp.add_argument("--initial", nargs="*", default=None,
                    help="restrict opening atoms (names)")
    sp.add_argument("--claim", choices=("exists", "forall"), default="exists")
    sp.add_argument("--script", choices=("cone", "descending", "greedy"),
                    default=None, help="verify a scripted strategy instead")
    _add_common(sp)
    sp.set_defaults(fn=cmd_game)

    sp = sub.add_parser("ef", help="solve a pebble comparison game")
    sp.add_argument("--left", required=True, help="K<n> or L<n>")
    sp.add_argument("--right", required=True, help="K<n> or L<n>")
    sp.add_argument("--p", type=int, required=True, help="pebble pairs")
    sp.add_argument("--r", type=int, required=True, help="rounds")
    sp.add_argument("--oracle", action="store_true",
                    help="use the independent solver")
    sp.add_argument("--claim", choices=("exists", "forall"), default="exists")
    _add_common(sp, struct_input=False)
    sp.set_defaults(fn=cmd_ef)

    sp = sub.add_parser("basis", help="relational basis search")
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--no-reuse", action="store_true")
    _add_common(sp)
    sp.set_defaults(fn=cmd_basis)

    sp = sub.add_parser("repsearch", help="square representation search")
    sp.add_argument("--base", type=int, required=True)
    _add_common(sp)
    sp.set_defaults(fn=cmd_repsearch)

    sp = sub.add_parser("split", help="replace atoms by indexed copies")
    sp.add_argument("--targets", required=True,
                    help='"reds" or comma-separated atom names')
    sp.add_argument("--copies", type=int, required=True)
    sp.add_argument("--lift", choices=("inherit", "match"), default="inherit")
    _add_common(sp)
    sp.set_defaults(fn=cmd_split)

    sp = sub.add_parser("theta", help="check the split embedding")
    sp.add_argument("--targets", required=True)
    sp.add_argument("--copies", type=int, required=True)
    sp.add_argument("--lift", choices=("inherit", "match"), default="inherit")
    _add_common(sp)
    sp.set_defaults(fn=cmd_theta)

    sp = sub.add_parser("lyndon", help="bounded-game ladder up to K rounds")
    sp.add_argument("--K", type=int, default=6)
    sp.add_argument("--rep-base-cap", type=int, default=6)
    _add_common(sp)
    sp.set_defaults(fn=cmd_lyndon)

    sp = sub.add_parser("play", help="interactive game against the engine")
    sp.add_argument("--variant", required=True)
    sp.add_argument("--m", type=int, default=None)
    sp.add_argument("--k", type=int, default=None)
    sp.add_argument("--side", choices=("exists", "forall"), default="exists")
    sp.add_argument("--no-reuse", action="store_true")
    sp.add_argument("--script", choices=("cone", "descending"), default=None,
                    help="engine universal player follows this script")
    _add_common(sp)
    sp.set_defaults(fn=cmd_play)

    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        if getattr(args, "timeout_s", None):
            def _alarm(signum, frame):
                raise BudgetExceeded("wall clock", args.timeout_s, "timeout")
            signal.signal(signal.SIGALRM, _alarm)
            signal.setitimer(signal.ITIMER_REAL, args.timeout_s)
        return args.fn(args)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return 2
    except BudgetExceeded as e:
        print(f"budget error: {e}", file=sys.stderr)
        return 2
    except ValueError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return 2
    except FileNotFoundError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return 2
    except BrokenPipeError:
        return 0


if __name__ == "__main__":
    sys.exit(main())
