"""Combinatorial group-colored Heegaard diagrams and their move calculus.

A diagram is stored purely combinatorially: crossing incidences between
upper and lower circles, a sign per crossing, cyclic traversal orders per
circle, and a group color per upper circle.  Realizability on a genus-g
surface is certified through the rotation system induced by the signs
(see ``euler_certificate``); everything downstream consumes only the
combinatorial data.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace

from .groups import GroupTable, Report, Word, evaluate_word


@dataclass(frozen=True)
class Crossing:
    id: int
    upper: int
    lower: int
    sign: int  # +1 or -1


@dataclass(frozen=True)
class Diagram:
    genus: int
    crossings: tuple
    upper_orders: tuple  # per upper circle, cyclic tuple of crossing ids
    lower_orders: tuple
    colors: tuple = None  # per upper circle, group element index
    pi: GroupTable = None

    def crossing_map(self):
        return {c.id: c for c in self.crossings}

    def fresh_id(self) -> int:
        return max((c.id for c in self.crossings), default=-1) + 1

    @property
    def colored(self) -> bool:
        return self.colors is not None

    def with_colors(self, pi: GroupTable, colors) -> "Diagram":
        return replace(self, colors=tuple(colors), pi=pi)

    def uncolored(self) -> "Diagram":
        return replace(self, colors=None, pi=None)


# -- validation ---------------------------------------------------------------


def extract_words(D: Diagram):
    """One word per lower circle: letter x_k^sign per crossing with upper
    circle k, read along the stored traversal order."""
    cmap = D.crossing_map()
    words = []
    for order in D.lower_orders:
        words.append(Word(tuple((cmap[i].upper, cmap[i].sign) for i in order)))
    return words


# Counterclockwise slot order of the four arc-ends at a crossing; derived
# from the sign convention (lower-then-upper tangents positively oriented
# at sign +1).
_SLOTS_POS = (("l", "out"), ("u", "out"), ("l", "in"), ("u", "in"))
_SLOTS_NEG = (("l", "out"), ("u", "in"), ("l", "in"), ("u", "out"))


def euler_certificate(D: Diagram):
    """Total genus demanded by the rotation system, summed over connected
    components of the crossing graph, plus the component count.

    Circles without crossings do not constrain the surface and are
    ignored here.
    """
    cmap = D.crossing_map()
    theta = {}
    for orders, kind in ((D.upper_orders, "u"), (D.lower_orders, "l")):
        for order in orders:
            n = len(order)
            for t, cid in enumerate(order):
                nxt = order[(t + 1) % n]
                theta[(cid, kind, "out")] = (nxt, kind, "in")
                theta[(nxt, kind, "in")] = (cid, kind, "out")
    rho = {}
    for c in D.crossings:
        slots = _SLOTS_POS if c.sign == 1 else _SLOTS_NEG
        for t, (kind, way) in enumerate(slots):
            nk, nw = slots[(t + 1) % 4]
            rho[(c.id, kind, way)] = (c.id, nk, nw)

    # Connected components of the crossing graph (via shared circles).
    parent = {c.id: c.id for c in D.crossings}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        parent[find(a)] = find(b)

    for orders in (D.upper_orders, D.lower_orders):
        for order in orders:
            for a, b in zip(order, order[1:]):
                union(a, b)

    components = {}
    for c in D.crossings:
        components.setdefault(find(c.id), set()).add(c.id)

    total_genus = 0
    for comp in components.values():
        vertices = len(comp)
        darts = [d for d in theta if d[0] in comp]
        edges = len(darts) // 2
        seen = set()
        faces = 0
        for start in darts:
            if start in seen:
                continue
            faces += 1
            d = start
            while True:
                seen.add(d)
                d = rho[theta[d]]
                if d == start:
                    break
        chi = vertices - edges + faces
        if (2 - chi) % 2:
            return None, len(components)  # non-orientable rotation data
        total_genus += (2 - chi) // 2
    return total_genus, len(components)


def validate_diagram(D: Diagram) -> Report:
    report = Report()
    g = D.genus
    if g < 1:
        report.fail("genus must be positive")
        return report
    if len(D.upper_orders) != g or len(D.lower_orders) != g:
        report.fail(
            f"expected {g} upper and {g} lower circles, got "
            f"{len(D.upper_orders)} and {len(D.lower_orders)}"
        )
        return report
    ids = [c.id for c in D.crossings]
    if len(set(ids)) != len(ids):
        report.fail("duplicate crossing ids")
        return report
    cmap = D.crossing_map()
    for c in D.crossings:
        if c.sign not in (1, -1):
            report.fail(f"crossing {c.id} has sign {c.sign}, expected +-1")
        if not (0 <= c.upper < g):
            report.fail(f"crossing {c.id} references upper circle {c.upper}")
        if not (0 <= c.lower < g):
            report.fail(f"crossing {c.id} references lower circle {c.lower}")
    if not report.passed:
        return report
    for orders, attr, kind in (
        (D.upper_orders, "upper", "upper"),
        (D.lower_orders, "lower", "lower"),
    ):
        seen = {}
        for circle, order in enumerate(orders):
            for cid in order:
                if cid not in cmap:
                    report.fail(f"{kind} order references unknown crossing {cid}")
                    return report
                if cid in seen:
                    report.fail(
                        f"crossing {cid} appears twice in {kind} orders "
                        f"(circles {seen[cid]} and {circle})"
                    )
                elif getattr(cmap[cid], attr) != circle:
                    report.fail(
                        f"crossing {cid} listed on {kind} circle {circle} "
                        f"but declares {getattr(cmap[cid], attr)}"
                    )
                seen[cid] = circle
        missing = set(cmap) - set(seen)
        if missing:
            report.fail(f"crossings {sorted(missing)} missing from {kind} orders")
    if not report.passed:
        return report

    if D.colored:
        if len(D.colors) != g:
            report.fail("color vector length differs from genus")
            return report
        for k, a in enumerate(D.colors):
            if not (0 <= a < D.pi.order):
                report.fail(f"color of upper circle {k} out of range")
                return report
        for i, w in enumerate(extract_words(D)):
            value = evaluate_word(w, D.colors, D.pi)
            if value != D.pi.identity:
                report.fail(
                    f"color condition fails on lower circle {i}: "
                    f"word {w} evaluates to {D.pi.names[value]!r}"
                )

    demanded, _ = euler_certificate(D)
    if demanded is None:
        report.fail("rotation system is not orientable")
    elif demanded > g:
        report.fail(
            f"rotation system demands genus {demanded}, diagram declares {g}"
        )
    elif demanded < g:
        report.warn(
            f"rotation system only certifies genus {demanded} of {g}; "
            "surface is not filled cellularly"
        )
    return report


def enumerate_colorings(D: Diagram, pi: GroupTable):
    """All color vectors satisfying the word condition, in lexicographic
    index order."""
    words = extract_words(D)
    out = []
    for colors in itertools.product(range(pi.order), repeat=D.genus):
        if all(evaluate_word(w, colors, pi) == pi.identity for w in words):
            out.append(colors)
    return out


# -- generators ----------------------------------------------------------------


def lens_diagram(p: int) -> Diagram:
    """Genus-1 diagram with one upper and one lower circle meeting p times
    positively; the single word is x^p.  p=1 is the 3-sphere, p=2 real
    projective 3-space."""
    if p < 1:
        raise ValueError("need at least one crossing; p >= 1")
    order = tuple(range(p))
    crossings = tuple(Crossing(i, 0, 0, 1) for i in range(p))
    return Diagram(1, crossings, (order,), (order,))


def connected_sum(D1: Diagram, D2: Diagram) -> Diagram:
    if D1.colored != D2.colored:
        raise ValueError("cannot sum a colored and an uncolored diagram")
    if D1.colored and D1.pi is not D2.pi and D1.pi != D2.pi:
        raise ValueError("colored summands must share the coloring group")
    shift = D1.fresh_id()
    crossings = D1.crossings + tuple(
        Crossing(c.id + shift, c.upper + D1.genus, c.lower + D1.genus, c.sign)
        for c in D2.crossings
    )
    upper = D1.upper_orders + tuple(
        tuple(i + shift for i in order) for order in D2.upper_orders
    )
    lower = D1.lower_orders + tuple(
        tuple(i + shift for i in order) for order in D2.lower_orders
    )
    colors = D1.colors + D2.colors if D1.colored else None
    return Diagram(D1.genus + D2.genus, crossings, upper, lower, colors, D1.pi)


def mirror_diagram(D: Diagram) -> Diagram:
    flipped = tuple(
        Crossing(c.id, c.upper, c.lower, -c.sign) for c in D.crossings
    )
    return replace(D, crossings=flipped)


# -- moves --------------------------------------------------------------------


@dataclass(frozen=True)
class MoveSpec:
    """Parameters of one diagram move.

    kinds: relabel, reverse, two_point_insert, two_point_remove,
    stabilize, destabilize, slide.
    """

    kind: str
    circle: str = "upper"  # reverse / slide: which family
    index: int = 0  # reverse / destabilize / slide: the moving circle
    other: int = 0  # slide: the circle slid past
    upper: int = 0  # two_point: upper circle
    lower: int = 0  # two_point: lower circle
    pos_upper: int = 0  # two_point insert positions
    pos_lower: int = 0
    sign: int = 1  # two_point insert / stabilize: sign of (first) crossing
    pair: tuple = None  # two_point_remove: the two crossing ids
    upper_perm: tuple = None  # relabel
    lower_perm: tuple = None
    rotations: tuple = None  # relabel: (upper offsets, lower offsets)
    band_self: int = 0  # slide: splice position in the moving circle's order
    band_other: int = 0  # slide: starting rotation of the copied order


class MoveError(ValueError):
    """Move parameters do not apply to the diagram."""


def _insert(seq, pos, items):
    pos %= len(seq) + 1 if seq else 1
    return tuple(seq[:pos]) + tuple(items) + tuple(seq[pos:])


def _apply_relabel(D, m):
    g = D.genus
    up = m.upper_perm or tuple(range(g))
    lp = m.lower_perm or tuple(range(g))
    if sorted(up) != list(range(g)) or sorted(lp) != list(range(g)):
        raise MoveError("relabel permutations must permute the circles")
    # up[k] = new index of old upper circle k.
    crossings = tuple(
        Crossing(c.id, up[c.upper], lp[c.lower], c.sign) for c in D.crossings
    )
    upper = [None] * g
    lower = [None] * g
    for k in range(g):
        upper[up[k]] = D.upper_orders[k]
        lower[lp[k]] = D.lower_orders[k]
    if m.rotations is not None:
        urot, lrot = m.rotations
        upper = [
            o[r % len(o):] + o[: r % len(o)] if o else o
            for o, r in zip(upper, urot)
        ]
        lower = [
            o[r % len(o):] + o[: r % len(o)] if o else o
            for o, r in zip(lower, lrot)
        ]
    colors = None
    if D.colored:
        colors = [None] * g
        for k in range(g):
            colors[up[k]] = D.colors[k]
        colors = tuple(colors)
    return Diagram(g, crossings, tuple(upper), tuple(lower), colors, D.pi)


def _apply_reverse(D, m):
    k = m.index
    if m.circle == "upper":
        if not (0 <= k < D.genus):
            raise MoveError(f"no upper circle {k}")
        order = tuple(reversed(D.upper_orders[k]))
        on_circle = set(order)
        crossings = tuple(
            Crossing(c.id, c.upper, c.lower, -c.sign if c.id in on_circle else c.sign)
            for c in D.crossings
        )
        upper = tuple(
            order if i == k else o for i, o in enumerate(D.upper_orders)
        )
        colors = D.colors
        if D.colored:
            colors = tuple(
                D.pi.inverse[a] if i == k else a for i, a in enumerate(D.colors)
            )
        return Diagram(D.genus, crossings, upper, D.lower_orders, colors, D.pi)
    if m.circle == "lower":
        if not (0 <= k < D.genus):
            raise MoveError(f"no lower circle {k}")
        order = tuple(reversed(D.lower_orders[k]))
        on_circle = set(order)
        crossings = tuple(
            Crossing(c.id, c.upper, c.lower, -c.sign if c.id in on_circle else c.sign)
            for c in D.crossings
        )
        lower = tuple(
            order if i == k else o for i, o in enumerate(D.lower_orders)
        )
        return Diagram(D.genus, crossings, D.upper_orders, lower, D.colors, D.pi)
    raise MoveError(f"unknown circle family {m.circle!r}")


def _apply_two_point_insert(D, m):
    k, i = m.upper, m.lower
    if not (0 <= k < D.genus and 0 <= i < D.genus):
        raise MoveError("two-point move references missing circles")
    if m.sign not in (1, -1):
        raise MoveError("two-point sign must be +-1")
    a = D.fresh_id()
    b = a + 1
    # The positive-sign crossing comes first in both traversal orders;
    # this is the bigon shape whose removal is the inverse move.
    first, second = (a, b) if m.sign == 1 else (b, a)
    crossings = D.crossings + (
        Crossing(a, k, i, m.sign),
        Crossing(b, k, i, -m.sign),
    )
    upper = tuple(
        _insert(o, m.pos_upper, (first, second)) if c == k else o
        for c, o in enumerate(D.upper_orders)
    )
    lower = tuple(
        _insert(o, m.pos_lower, (first, second)) if c == i else o
        for c, o in enumerate(D.lower_orders)
    )
    return Diagram(D.genus, crossings, upper, lower, D.colors, D.pi)


def _adjacent_in(order, a, b):
    """True if b directly follows a in the cyclic order."""
    n = len(order)
    return any(
        order[t] == a and order[(t + 1) % n] == b for t in range(n)
    )


def cancelling_pairs(D: Diagram):
    """All crossing-id pairs removable by the two-point move: same circles,
    opposite signs, the positive one directly followed by the negative one
    in both traversal orders."""
    cmap = D.crossing_map()
    out = []
    for a, b in itertools.permutations(cmap.values(), 2):
        if (
            a.upper == b.upper
            and a.lower == b.lower
            and a.sign == 1
            and b.sign == -1
            and _adjacent_in(D.upper_orders[a.upper], a.id, b.id)
            and _adjacent_in(D.lower_orders[a.lower], a.id, b.id)
        ):
            out.append((a.id, b.id))
    return out


def _apply_two_point_remove(D, m):
    if m.pair is None:
        raise MoveError("two_point_remove needs the crossing pair")
    pair = tuple(m.pair)
    options = cancelling_pairs(D)
    if pair not in options and tuple(reversed(pair)) not in options:
        raise MoveError(f"crossings {pair} are not a removable two-point pair")
    drop = set(pair)
    crossings = tuple(c for c in D.crossings if c.id not in drop)
    upper = tuple(
        tuple(i for i in o if i not in drop) for o in D.upper_orders
    )
    lower = tuple(
        tuple(i for i in o if i not in drop) for o in D.lower_orders
    )
    return Diagram(D.genus, crossings, upper, lower, D.colors, D.pi)


def _apply_stabilize(D, m):
    if m.sign not in (1, -1):
        raise MoveError("stabilize sign must be +-1")
    cid = D.fresh_id()
    crossings = D.crossings + (Crossing(cid, D.genus, D.genus, m.sign),)
    colors = D.colors + (D.pi.identity,) if D.colored else None
    return Diagram(
        D.genus + 1,
        crossings,
        D.upper_orders + ((cid,),),
        D.lower_orders + ((cid,),),
        colors,
        D.pi,
    )


def _apply_destabilize(D, m):
    k = m.index
    if D.genus < 2:
        raise MoveError("cannot destabilize a genus-1 diagram")
    if not (0 <= k < D.genus):
        raise MoveError(f"no upper circle {k}")
    order = D.upper_orders[k]
    if len(order) != 1:
        raise MoveError("handle not standard: upper circle has several crossings")
    cid = order[0]
    c = D.crossing_map()[cid]
    if D.lower_orders[c.lower] != (cid,):
        raise MoveError("handle not standard: lower circle has extra crossings")
    if D.colored and D.colors[k] != D.pi.identity:
        raise MoveError("handle upper circle is not colored by the identity")
    j = c.lower

    def drop_upper(idx):
        return idx - 1 if idx > k else idx

    def drop_lower(idx):
        return idx - 1 if idx > j else idx

    crossings = tuple(
        Crossing(x.id, drop_upper(x.upper), drop_lower(x.lower), x.sign)
        for x in D.crossings
        if x.id != cid
    )
    upper = tuple(o for t, o in enumerate(D.upper_orders) if t != k)
    lower = tuple(o for t, o in enumerate(D.lower_orders) if t != j)
    colors = None
    if D.colored:
        colors = tuple(a for t, a in enumerate(D.colors) if t != k)
    return Diagram(D.genus - 1, crossings, upper, lower, colors, D.pi)


def _apply_slide(D, m):
    i, j = m.index, m.other
    if i == j:
        raise MoveError("a circle cannot slide past itself")
    g = D.genus
    if not (0 <= i < g and 0 <= j < g):
        raise MoveError("slide references missing circles")
    cmap = D.crossing_map()
    base = D.fresh_id()
    along_upper = m.circle == "upper"
    moving_orders = D.upper_orders if along_upper else D.lower_orders
    slid = moving_orders[j]
    if not slid:
        raise MoveError("cannot slide past a circle without crossings")
    rot = m.band_other % len(slid)
    copied = slid[rot:] + slid[:rot]
    twin_of = {cid: base + t for t, cid in enumerate(copied)}
    twins = []
    for cid in copied:
        c = cmap[cid]
        owner = (i, c.lower) if along_upper else (c.upper, i)
        twins.append(Crossing(twin_of[cid], owner[0], owner[1], c.sign))
    crossings = D.crossings + tuple(twins)

    new_moving = list(moving_orders)
    new_moving[i] = _insert(
        moving_orders[i], m.band_self, tuple(twin_of[cid] for cid in copied)
    )
    # On the transverse circle each twin sits next to its original; the
    # copy runs parallel to the slid circle, so the twin precedes the
    # original at a positive crossing and follows it at a negative one.
    other_orders = list(D.lower_orders if along_upper else D.upper_orders)
    for circle, order in enumerate(other_orders):
        out = []
        for cid in order:
            if cid in twin_of:
                if cmap[cid].sign == 1:
                    out.extend([twin_of[cid], cid])
                else:
                    out.extend([cid, twin_of[cid]])
            else:
                out.append(cid)
        other_orders[circle] = tuple(out)

    if along_upper:
        upper, lower = tuple(new_moving), tuple(other_orders)
    else:
        upper, lower = tuple(other_orders), tuple(new_moving)
    colors = D.colors
    if D.colored and along_upper:
        # The slid copy keeps color a_i^-1 a_j; the moving circle keeps a_i.
        ai, aj = D.colors[i], D.colors[j]
        new_aj = D.pi.mul[D.pi.inverse[ai]][aj]
        colors = tuple(
            new_aj if t == j else a for t, a in enumerate(D.colors)
        )
    return Diagram(g, crossings, upper, lower, colors, D.pi)


_MOVES = {
    "relabel": _apply_relabel,
    "reverse": _apply_reverse,
    "two_point_insert": _apply_two_point_insert,
    "two_point_remove": _apply_two_point_remove,
    "stabilize": _apply_stabilize,
    "destabilize": _apply_destabilize,
    "slide": _apply_slide,
}


def apply_move(D: Diagram, m: MoveSpec) -> Diagram:
    try:
        handler = _MOVES[m.kind]
    except KeyError:
        raise MoveError(f"unknown move kind {m.kind!r}") from None
    result = handler(D, m)
    # Insertion/band positions are free parameters; combinations that force
    # extra genus do not correspond to a move on the declared surface.
    demanded, _ = euler_certificate(result)
    if demanded is None or demanded > result.genus:
        raise MoveError(
            f"{m.kind} parameters are not realizable on a genus-"
            f"{result.genus} surface (certificate demands {demanded})"
        )
    return result
