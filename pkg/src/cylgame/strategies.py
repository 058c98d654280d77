"""Hand-scripted strategies, packaged as verifiable certificates.

The universal-player scripts drive the witness-naming game on rainbow
structures by stacking cones over one base: every demand asks for an apex
of a fresh tint over the same two base nodes.  Apex-to-apex edges are
forced red (the base triangles kill every other colour), so the
existential player is maintaining an assignment of red elements to the
live apexes, constrained pairwise through the rule set.  On a complete
rule set distinct tints need distinct red elements and one more cone than
there are reds exhausts them.  On an order rule set descending tints need
descending elements; the initial 0-tinted apex caps the first choice, and
once the slots fill, re-demanding the stalest apex keeps the descent
going below zero.
"""

from .games import StrategyCertificate


def _model(struct):
    from .constructions import attach_rainbow
    return attach_rainbow(struct).rainbow


def _cone_scan(struct, net):
    """Read a stacked-cone position: the white base edge plus the apexes
    with their tints.  Returns None if the network is not of this shape."""
    model = struct.rainbow
    nodes = list(net.nodes)
    base = None
    for u in nodes:
        for v in nodes:
            if u < v and (c := model.edge_colour(net, u, v)) and c[0] == "w":
                if base is not None:
                    return None
                base = (u, v)
    if base is None:
        return None
    rest = [u for u in nodes if u not in base]
    for x0, x1 in (base, base[::-1]):
        apexes = {}
        for u in rest:
            leg = model.edge_colour(net, x0, u)
            if leg is None or leg[0] != "g0":
                break
            apexes[u] = leg[1]
        else:
            if all((c := model.edge_colour(net, x1, u)) and c[0] == "g" for u in rest):
                return {"x0": x0, "x1": x1, "apexes": apexes}
    return None


def _cone_demand(struct, info, tint, w):
    xs = (info["x0"],) + (info["x1"],) * (struct.n - 1)
    a = struct.atom(struct.rainbow.cone_atom(tint))
    return (xs, struct.n - 1, a, w)


def cone_bombardment(struct, m=None):
    """Universal-player certificate for the witness-naming game on a
    complete-rules rainbow structure with more green tints than red
    elements: open with a cone, then demand cones of the remaining tints
    on fresh slots until the red elements run out."""
    model = _model(struct)
    tints = sorted(model.rules.green_values)
    if len(tints) <= len(model.rules.red_values):
        raise ValueError("needs more green tints than red elements")
    if m is None:
        m = struct.n + 3

    def play(s, net):
        info = _cone_scan(s, net)
        if info is None:
            return None
        used = set(info["apexes"].values())
        tint = next((t for t in tints if t not in used), None)
        if tint is None:
            return None
        w = next((u for u in range(m) if u not in net.nodes), None)
        if w is None:
            return None
        return _cone_demand(s, info, tint, w)

    return StrategyCertificate(
        "bold", "forall_wins", {"m": m}, play,
        initial=[struct.atom(model.cone_atom(tints[0]))],
        note="cone stacking over one base; distinct tints exhaust the reds")


def descending_bombardment(struct, m=None):
    """Universal-player certificate for the witness-naming game on an
    order-rules rainbow structure: open with the 0-tinted cone, keep
    demanding the next smaller tint, and when the slots fill re-demand
    the apex with the stalest (largest) tint.  The existential player's
    red elements must descend with the tints and hit bottom."""
    model = _model(struct)
    tints = sorted(model.rules.green_values)
    floor = tints[0]
    top = tints[-1]
    if top != 0:
        raise ValueError("expects the 0 tint of an order rule set")
    if m is None:
        m = struct.n + 3

    def play(s, net):
        info = _cone_scan(s, net)
        if info is None or not info["apexes"]:
            return None
        tint = min(info["apexes"].values()) - 1
        if tint < floor:
            return None
        w = next((u for u in range(m) if u not in net.nodes), None)
        if w is None:
            w = max(info["apexes"], key=info["apexes"].get)
        return _cone_demand(s, info, tint, w)

    return StrategyCertificate(
        "bold", "forall_wins", {"m": m}, play,
        initial=[struct.atom(model.cone_atom(top))],
        note="cone stacking with slot reuse; tints force a descent in the reds")


def greedy_exists(struct, m, k=None, initial_atoms=None):
    """Existential-player certificate for the bounded atomic game: answer
    each demand with the first existing node already carrying the right
    label, else extend.  Only sound on structures where the unbounded
    game is an existential win; verify before trusting."""

    def play(s, net, demand):
        xs, i, a = demand
        for z in net.nodes:
            ys = xs[:i] + (z,) + xs[i + 1:]
            if net.label(ys) == a:
                return ("node", z)
        return ("fresh",)

    params = {"m": m}
    if k is not None:
        params["k"] = k
    return StrategyCertificate("atomic", "exists_wins", params, play,
                               initial=initial_atoms,
                               note="first matching node, else a fresh one")
