"""Randomized generators for testing: diagrams, move sequences, and
structure-constant mutations.

Everything is driven by an explicit ``random.Random`` so campaigns are
reproducible from a seed.
"""

from __future__ import annotations

from dataclasses import replace

from .heegaard import (
    Crossing,
    Diagram,
    MoveError,
    MoveSpec,
    apply_move,
    cancelling_pairs,
    lens_diagram,
    validate_diagram,
)
from .hopf import HopfPiCoalgebra
from .scalars import ONE, Scalar


def random_diagram(rng, genus_max=3, max_crossings=12, tries=200) -> Diagram:
    """A random valid uncolored diagram, by rejection sampling plus a
    fallback to a small lens diagram when the sampler is unlucky."""
    for _ in range(tries):
        g = rng.randint(1, genus_max)
        n = rng.randint(g, max_crossings)
        crossings = tuple(
            Crossing(i, rng.randrange(g), rng.randrange(g), rng.choice((1, -1)))
            for i in range(n)
        )
        upper = [[] for _ in range(g)]
        lower = [[] for _ in range(g)]
        for c in crossings:
            upper[c.upper].append(c.id)
            lower[c.lower].append(c.id)
        for bucket in (*upper, *lower):
            rng.shuffle(bucket)
        D = Diagram(
            g,
            crossings,
            tuple(tuple(o) for o in upper),
            tuple(tuple(o) for o in lower),
        )
        if validate_diagram(D).passed:
            return D
    return lens_diagram(rng.randint(1, 4))


def random_move(rng, D: Diagram) -> MoveSpec:
    """A random move spec whose parameters reference the diagram; the
    parameters may still be rejected by apply_move (bad band positions)."""
    g = D.genus
    kinds = ["relabel", "reverse", "two_point_insert", "stabilize"]
    if g >= 2:
        kinds += ["destabilize", "slide"]
    if cancelling_pairs(D):
        kinds.append("two_point_remove")
    kind = rng.choice(kinds)
    if kind == "relabel":
        up, lp = list(range(g)), list(range(g))
        rng.shuffle(up)
        rng.shuffle(lp)
        rots = (
            tuple(rng.randrange(8) for _ in range(g)),
            tuple(rng.randrange(8) for _ in range(g)),
        )
        return MoveSpec(
            "relabel", upper_perm=tuple(up), lower_perm=tuple(lp), rotations=rots
        )
    if kind == "reverse":
        return MoveSpec(
            "reverse", circle=rng.choice(("upper", "lower")), index=rng.randrange(g)
        )
    if kind == "two_point_insert":
        return MoveSpec(
            "two_point_insert",
            upper=rng.randrange(g),
            lower=rng.randrange(g),
            pos_upper=rng.randrange(24),
            pos_lower=rng.randrange(24),
            sign=rng.choice((1, -1)),
        )
    if kind == "two_point_remove":
        return MoveSpec(
            "two_point_remove", pair=rng.choice(cancelling_pairs(D))
        )
    if kind == "stabilize":
        return MoveSpec("stabilize", sign=rng.choice((1, -1)))
    if kind == "destabilize":
        return MoveSpec("destabilize", index=rng.randrange(g))
    i = rng.randrange(g)
    j = (i + 1 + rng.randrange(g - 1)) % g
    return MoveSpec(
        "slide",
        circle=rng.choice(("upper", "lower")),
        index=i,
        other=j,
        band_self=rng.randrange(8),
        band_other=rng.randrange(8),
    )


def random_move_walk(rng, D: Diagram, steps: int, max_crossings: int = 28):
    """Apply up to ``steps`` random applicable moves, capping growth;
    yields each intermediate diagram."""
    out = []
    for _ in range(steps):
        for _attempt in range(30):
            m = random_move(rng, D)
            if (
                m.kind in ("two_point_insert", "stabilize", "slide")
                and len(D.crossings) >= max_crossings - 1
            ):
                continue
            try:
                E = apply_move(D, m)
            except MoveError:
                continue
            if len(E.crossings) <= max_crossings:
                D = E
                out.append((m, D))
                break
    return out


# -- algebra mutations ---------------------------------------------------------


def _bump(rows, path, delta):
    if not path:
        return rows + delta
    head, *rest = path
    return tuple(
        _bump(v, rest, delta) if t == head else v for t, v in enumerate(rows)
    )


def mutate_algebra(H: HopfPiCoalgebra, rng) -> tuple:
    """Perturb one random structure constant by +1; returns (description,
    mutated algebra).  Used to confirm the validators actually bite."""
    support = [a for a in range(H.pi.order) if H.dim[a] > 0]
    kind = rng.choice(("mul", "unit", "delta", "counit", "antipode"))
    delta = ONE
    if kind == "mul":
        a = rng.choice(support)
        d = H.dim[a]
        path = tuple(rng.randrange(d) for _ in range(3))
        mul = dict(H.mul)
        mul[a] = _bump(H.mul[a], path, delta)
        return f"mul[{a}]{path} += 1", replace_field(H, mul=mul)
    if kind == "unit":
        a = rng.choice(support)
        i = rng.randrange(H.dim[a])
        unit = dict(H.unit)
        unit[a] = _bump(H.unit[a], (i,), delta)
        return f"unit[{a}][{i}] += 1", replace_field(H, unit=unit)
    if kind == "delta":
        a, b = rng.choice(support), rng.choice(support)
        ab = H.pi.mul[a][b]
        if H.dim[ab] == 0:
            return mutate_algebra(H, rng)
        path = (
            rng.randrange(H.dim[ab]),
            rng.randrange(H.dim[a]),
            rng.randrange(H.dim[b]),
        )
        dd = dict(H.delta)
        dd[(a, b)] = _bump(H.delta[(a, b)], path, delta)
        return f"delta[({a},{b})]{path} += 1", replace_field(H, delta=dd)
    if kind == "counit":
        i = rng.randrange(H.dim_identity)
        counit = _bump(H.counit, (i,), delta)
        return f"counit[{i}] += 1", replace_field(H, counit=counit)
    a = rng.choice(support)
    ai = H.pi.inverse[a]
    path = (rng.randrange(H.dim[a]), rng.randrange(H.dim[ai]))
    s = dict(H.antipode)
    s[a] = _bump(H.antipode[a], path, delta)
    return f"antipode[{a}]{path} += 1", replace_field(H, antipode=s)


def replace_field(H: HopfPiCoalgebra, **kwargs) -> HopfPiCoalgebra:
    base = dict(
        pi=H.pi,
        dim=H.dim,
        mul=H.mul,
        unit=H.unit,
        delta=H.delta,
        counit=H.counit,
        antipode=H.antipode,
        crossing=H.crossing,
    )
    base.update(kwargs)
    return HopfPiCoalgebra(**base)
