import random

import pytest

from hopfk.fuzz import random_diagram, random_move_walk
from hopfk.groups import cyclic_group, symmetric_group
from hopfk.heegaard import (
    Crossing,
    Diagram,
    MoveError,
    MoveSpec,
    apply_move,
    cancelling_pairs,
    connected_sum,
    enumerate_colorings,
    euler_certificate,
    extract_words,
    lens_diagram,
    mirror_diagram,
    validate_diagram,
)


def test_lens_family():
    with pytest.raises(ValueError):
        lens_diagram(0)
    for p in (1, 2, 3, 4):
        D = lens_diagram(p)
        report = validate_diagram(D)
        assert report.passed and not report.warnings
        (w,) = extract_words(D)
        assert str(w) == ".".join(["x1"] * p)
        assert euler_certificate(D) == (1, 1)


def test_color_condition(z2):
    assert validate_diagram(lens_diagram(2).with_colors(z2, (1,))).passed
    report = validate_diagram(lens_diagram(3).with_colors(z2, (1,)))
    assert not report.passed
    assert any("color condition" in v for v in report.violations)


def test_malformed_diagrams_rejected():
    D = lens_diagram(2)
    # same crossing in two upper orders
    bad = Diagram(2, D.crossings + (Crossing(9, 1, 1, 1),),
                  (D.upper_orders[0], D.upper_orders[0] + (9,)),
                  (D.lower_orders[0], (9,)))
    assert not validate_diagram(bad).passed
    # crossing missing from the orders
    bad = Diagram(1, D.crossings, ((0,),), ((0,),))
    assert not validate_diagram(bad).passed
    # bad sign
    bad = Diagram(1, (Crossing(0, 0, 0, 2),), ((0,),), ((0,),))
    assert not validate_diagram(bad).passed
    # color vector too short
    bad = connected_sum(lens_diagram(1), lens_diagram(1))
    bad = Diagram(bad.genus, bad.crossings, bad.upper_orders, bad.lower_orders,
                  (0,), cyclic_group(2))
    assert not validate_diagram(bad).passed


def test_euler_flags_overcrowded_torus():
    # two crossings interleaved on one handle pair demand genus 2 when the
    # traversal orders disagree in a non-planar pattern
    D = lens_diagram(2)
    twisted = Diagram(
        1,
        (Crossing(0, 0, 0, 1), Crossing(1, 0, 0, -1)),
        ((0, 1),),
        ((0, 1),),
    )
    report = validate_diagram(twisted)
    # whatever the verdict, the certificate must be computed consistently
    demanded, comps = euler_certificate(twisted)
    assert comps == 1
    assert report.passed == (demanded <= 1)


def test_colorings(z2, s3):
    assert enumerate_colorings(lens_diagram(2), z2) == [(0,), (1,)]
    assert enumerate_colorings(lens_diagram(3), z2) == [(0,)]
    assert enumerate_colorings(lens_diagram(1), s3) == [(s3.identity,)]
    # lexicographic order over higher genus
    D = connected_sum(lens_diagram(2), lens_diagram(2))
    assert enumerate_colorings(D, z2) == [(0, 0), (0, 1), (1, 0), (1, 1)]


def test_connected_sum_words(z2):
    D = connected_sum(lens_diagram(2), lens_diagram(3))
    w1, w2 = extract_words(D)
    assert str(w1) == "x1.x1" and str(w2) == "x2.x2.x2"
    assert validate_diagram(D).passed
    C = connected_sum(
        lens_diagram(1).with_colors(z2, (0,)),
        lens_diagram(2).with_colors(z2, (1,)),
    )
    assert C.colors == (0, 1)
    assert validate_diagram(C).passed
    with pytest.raises(ValueError):
        connected_sum(lens_diagram(1), lens_diagram(1).with_colors(z2, (0,)))


def test_mirror(z2):
    D = lens_diagram(3).with_colors(z2, (0,))
    M = mirror_diagram(D)
    assert all(c.sign == -1 for c in M.crossings)
    assert mirror_diagram(M) == D
    assert M.genus == D.genus and len(M.crossings) == len(D.crossings)
    assert validate_diagram(M).passed


# -- moves -------------------------------------------------------------------


def test_reverse_upper(z2):
    D = lens_diagram(2).with_colors(z2, (1,))
    E = apply_move(D, MoveSpec("reverse", circle="upper", index=0))
    assert E.colors == (1,)  # self-inverse color
    (w,) = extract_words(E)
    assert str(w) == "x1^-1.x1^-1"
    assert validate_diagram(E).passed


def test_reverse_lower(z2):
    D = lens_diagram(2).with_colors(z2, (1,))
    E = apply_move(D, MoveSpec("reverse", circle="lower", index=0))
    (w,) = extract_words(E)
    assert str(w) == "x1^-1.x1^-1"
    assert E.colors == (1,)
    assert validate_diagram(E).passed


def test_stabilize_destabilize(z2):
    D = lens_diagram(2).with_colors(z2, (1,))
    E = apply_move(D, MoveSpec("stabilize"))
    assert E.genus == 2
    assert E.colors == (1, 0)
    words = extract_words(E)
    assert str(words[1]) == "x2"
    assert validate_diagram(E).passed
    back = apply_move(E, MoveSpec("destabilize", index=1))
    assert back == D
    with pytest.raises(MoveError):
        apply_move(D, MoveSpec("destabilize", index=0))  # genus 1
    with pytest.raises(MoveError):
        apply_move(E, MoveSpec("destabilize", index=0))  # not a 1-crossing handle


def test_two_point_insert_remove(z2):
    D = lens_diagram(2).with_colors(z2, (1,))
    m = MoveSpec("two_point_insert", upper=0, lower=0, pos_upper=1, pos_lower=1)
    E = apply_move(D, m)
    assert len(E.crossings) == 4
    (w,) = extract_words(E)
    assert str(w.free_reduce()) == "x1.x1"
    assert validate_diagram(E).passed
    pairs = cancelling_pairs(E)
    assert pairs
    back = apply_move(E, MoveSpec("two_point_remove", pair=pairs[0]))
    assert back == D
    with pytest.raises(MoveError):
        apply_move(D, MoveSpec("two_point_remove", pair=(0, 1)))


def test_two_point_colorings_stable(z2):
    D = lens_diagram(3)
    before = enumerate_colorings(D, z2)
    E = apply_move(D, MoveSpec("two_point_insert", upper=0, lower=0,
                               pos_upper=2, pos_lower=2, sign=-1))
    assert enumerate_colorings(E, z2) == before


def test_relabel(z2):
    D = connected_sum(
        lens_diagram(2).with_colors(z2, (1,)),
        lens_diagram(4).with_colors(z2, (0,)),
    )
    E = apply_move(
        D,
        MoveSpec(
            "relabel",
            upper_perm=(1, 0),
            lower_perm=(1, 0),
            rotations=((1, 2), (0, 3)),
        ),
    )
    assert E.colors == (0, 1)
    assert validate_diagram(E).passed
    w1, w2 = extract_words(E)
    assert str(w1).startswith("x1") and str(w2).startswith("x2")
    with pytest.raises(MoveError):
        apply_move(D, MoveSpec("relabel", upper_perm=(0, 0)))


def test_slide_upper_color_rule():
    z4 = cyclic_group(4)
    D = connected_sum(
        lens_diagram(1).with_colors(z4, (0,)),
        lens_diagram(1).with_colors(z4, (0,)),
    )
    # recolor by hand to (a, b) satisfying the (trivial) words x1, x2 — only
    # identity colors are valid here, so check the rule on the word level
    E = apply_move(D, MoveSpec("slide", circle="upper", index=0, other=1))
    words = [str(w.free_reduce()) for w in extract_words(E)]
    assert words[0] == "x1"
    assert words[1] in ("x1.x2", "x2.x1")
    assert validate_diagram(E).passed


def test_slide_lower_inserts_relator_copy(z2):
    D = connected_sum(
        lens_diagram(2).with_colors(z2, (1,)),
        lens_diagram(2).with_colors(z2, (1,)),
    )
    E = apply_move(D, MoveSpec("slide", circle="lower", index=0, other=1))
    assert E.colors == D.colors
    w1, w2 = extract_words(E)
    assert str(w2) == "x2.x2"
    assert len(w1) == 4
    assert validate_diagram(E).passed


def test_slide_errors(z2):
    D = lens_diagram(2).with_colors(z2, (1,))
    with pytest.raises(MoveError):
        apply_move(D, MoveSpec("slide", circle="upper", index=0, other=0))
    with pytest.raises(MoveError):
        apply_move(D, MoveSpec("unknown_kind"))


def test_moves_always_yield_valid_diagrams(z2):
    rng = random.Random(5)
    for _ in range(20):
        D = random_diagram(rng, genus_max=2, max_crossings=8)
        colorings = enumerate_colorings(D, z2)
        D = D.with_colors(z2, rng.choice(colorings))
        for m, E in random_move_walk(rng, D, steps=6, max_crossings=20):
            report = validate_diagram(E)
            assert report.passed, (m, report.violations)
            D = E
