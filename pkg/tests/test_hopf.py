import random

import pytest

from hopfk.fuzz import mutate_algebra, replace_field
from hopfk.groups import GroupHom, cyclic_group, symmetric_group, trivial_hom
from hopfk.hopf import (
    StructureError,
    apply_antipode,
    basis_vector,
    build_function_hopf,
    build_kac_paljutkin,
    check_shapes,
    check_structural_lemmas,
    conjugation_crossing,
    derive_integral_data,
    dual_variants,
    identity_crossing_data,
    iterated_delta,
    matrix_inverse,
    validate_crossing,
    validate_hopf,
    vec_multiply,
    with_identity_crossing,
)
from hopfk.scalars import I, ONE, Scalar, ZERO


def all_constructors():
    return [
        build_kac_paljutkin(),
        build_function_hopf(__import__("hopfk").sign_hom_s3()),
        build_function_hopf(__import__("hopfk").mod_hom(4, 2)),
        build_function_hopf(trivial_hom(cyclic_group(3))),
        build_function_hopf(
            GroupHom(cyclic_group(2), cyclic_group(1), (0, 0))
        ),
    ]


# -- constructors -----------------------------------------------------------


def test_kp_basic_structure(kp):
    assert kp.dim == (4, 4)
    # coproduct of the first idempotent starts with 1/2 e11 (x) e11
    half = Scalar(1) / Scalar(2)
    assert kp.delta[(1, 1)][0][0][0] == half
    # antipode on the matrix component is transposition: e12 -> e21
    assert kp.antipode[1][1][2] == ONE and kp.antipode[1][1][1] == ZERO


def test_kp_validates(kp):
    assert validate_hopf(kp).passed


def test_kp_involutory_explicitly(kp):
    for a in (0, 1):
        for i in range(4):
            x = basis_vector(4, i)
            assert apply_antipode(kp, a, apply_antipode(kp, a, x)) == x


def test_function_hopf_dims(fs3):
    assert fs3.dim == (3, 3)
    assert validate_hopf(fs3).passed
    phi_id = GroupHom(cyclic_group(2), cyclic_group(2), (0, 1))
    assert build_function_hopf(phi_id).dim == (1, 1)
    collapsed = build_function_hopf(trivial_hom(cyclic_group(2)))
    assert collapsed.dim == (2,)


def test_function_hopf_rejects_bad_hom():
    bad = GroupHom(cyclic_group(2), cyclic_group(2), (0, 0))
    # 1 -> 0 but 1+1=0 -> 0 is fine; break multiplicativity instead
    worse = GroupHom(cyclic_group(4), cyclic_group(2), (0, 1, 1, 0))
    with pytest.raises(ValueError):
        build_function_hopf(worse)
    assert validate_hopf(build_function_hopf(bad)).passed  # constant hom is a hom


def test_all_constructors_validate():
    for H in all_constructors():
        report = validate_hopf(H)
        assert report.passed, report.violations[:3]


def test_empty_components_allowed():
    # non-surjective grading: component at 1 is empty
    phi = GroupHom(cyclic_group(3), cyclic_group(2), (0, 0, 0))
    H = build_function_hopf(phi)
    assert H.dim == (3, 0)
    assert validate_hopf(H).passed
    assert H.support() == [0]


def test_shape_check_catches_malformed(kp):
    bad = replace_field(kp, counit=kp.counit[:-1])
    with pytest.raises(StructureError):
        check_shapes(bad)
    bad = replace_field(kp, mul={0: kp.mul[0], 1: kp.mul[1][:-1]})
    with pytest.raises(StructureError):
        validate_hopf(bad)


# -- integral data -----------------------------------------------------------


def test_kp_integral_data(kp):
    integral = derive_integral_data(kp)
    assert integral.trace[0] == (ONE, ONE, ONE, ONE)
    assert integral.trace[1] == (Scalar(2), ZERO, ZERO, Scalar(2))
    assert integral.cotrace == (Scalar(4), ZERO, ZERO, ZERO)


def test_fs3_integral_data(fs3):
    integral = derive_integral_data(fs3)
    assert integral.trace[0] == (ONE, ONE, ONE)
    assert integral.trace[1] == (ONE, ONE, ONE)
    assert integral.cotrace == (Scalar(3), ZERO, ZERO)


def test_structural_lemmas_all_constructors():
    for H in all_constructors():
        integral = derive_integral_data(H)
        report = check_structural_lemmas(H, integral, cyclic_bound=3)
        assert report.passed, report.violations[:3]


def test_trace_symmetry_randomized(kp):
    rng = random.Random(1)
    integral = derive_integral_data(kp)
    for a in (0, 1):
        T = integral.trace[a]
        for _ in range(25):
            x = tuple(Scalar(rng.randint(-3, 3)) for _ in range(4))
            y = tuple(Scalar(rng.randint(-3, 3)) for _ in range(4))
            xy = vec_multiply(kp, a, x, y)
            yx = vec_multiply(kp, a, y, x)
            t = lambda v: sum((T[i] * v[i] for i in range(4)), ZERO)
            assert t(xy) == t(yx)
            sx = apply_antipode(kp, a, x)
            Ti = integral.trace[kp.pi.inverse[a]]
            assert sum((Ti[i] * sx[i] for i in range(4)), ZERO) == t(x)


# -- iterated coproduct ---------------------------------------------------------


def test_iterated_delta_single_is_identity(kp):
    x = (ONE, Scalar(2), ZERO, I)
    t = iterated_delta(kp, (1,), x)
    assert t.labels == (0,)
    assert tuple(t.entry((i,)) for i in range(4)) == x


def test_iterated_delta_function_algebra(fs3):
    # coproduct of a delta function over the even fiber splits over factorizations
    phi = __import__("hopfk").sign_hom_s3()
    fiber0 = phi.fiber(0)
    g = fiber0[1]
    x = tuple(ONE if h == g else ZERO for h in fiber0)
    t = iterated_delta(fs3, (0, 0), x)
    G = phi.source
    for j, h in enumerate(fiber0):
        for k, kk in enumerate(fiber0):
            expected = ONE if G.mul[h][kk] == g else ZERO
            assert t.entry((j, k)) == expected


def test_iterated_delta_nesting_equivalence(kp):
    # left-nested must agree with splitting the first factor instead
    rng = random.Random(3)
    for grading in ((0, 1, 1), (1, 0, 1), (1, 1, 0), (0, 0, 0)):
        total = 0
        for a in grading:
            total ^= a
        x = tuple(Scalar(rng.randint(-2, 2)) for _ in range(4))
        left = iterated_delta(kp, grading, x)
        # right-heavy: split head off the product of the rest
        head, rest = grading[0], grading[1:]
        partial = iterated_delta(kp, (head, total ^ head), x)
        full = {}
        for (j, p), v in partial.data.items():
            sub = iterated_delta(
                kp, rest, basis_vector(4, p)
            )
            for key, w in sub.data.items():
                k = (j,) + key
                full[k] = full.get(k, ZERO) + v * w
        assert {k: v for k, v in full.items() if not v.is_zero()} == left.data


def test_iterated_delta_errors(kp):
    with pytest.raises(ValueError):
        iterated_delta(kp, (), (ONE,) * 4)
    with pytest.raises(ValueError):
        iterated_delta(kp, (0, 1), (ONE,))


# -- mutations ------------------------------------------------------------------


def test_single_mutation_example(kp):
    mutated = replace_field(
        kp,
        delta={
            **kp.delta,
            (0, 0): tuple(
                tuple(
                    tuple(
                        v + ONE if (i, j, k) == (0, 0, 0) else v
                        for k, v in enumerate(row)
                    )
                    for j, row in enumerate(block)
                )
                for i, block in enumerate(kp.delta[(0, 0)])
            ),
        },
    )
    assert not validate_hopf(mutated).passed


def test_mutation_sensitivity(kp):
    rng = random.Random(2024)
    for _ in range(20):
        desc, mutated = mutate_algebra(kp, rng)
        broken = not validate_hopf(mutated).passed
        if not broken:
            integral = derive_integral_data(mutated)
            broken = not check_structural_lemmas(
                mutated, integral, cyclic_bound=2
            ).passed
        assert broken, f"mutation went undetected: {desc}"


# -- duals ------------------------------------------------------------------------


def test_duals_validate():
    for H in all_constructors():
        for kind in ("opposite", "coopposite"):
            assert validate_hopf(dual_variants(H, kind)).passed, kind


def test_opposite_of_commutative_is_same(fs3):
    op = dual_variants(fs3, "opposite")
    assert op.mul == fs3.mul
    assert op.antipode == fs3.antipode  # involutory: S^-1 = S


def test_coopposite_twice_roundtrip(kp):
    twice = dual_variants(dual_variants(kp, "coopposite"), "coopposite")
    assert twice.dim == kp.dim
    assert twice.mul == kp.mul
    assert twice.delta == kp.delta
    assert twice.antipode == kp.antipode


def test_dual_kind_rejected(kp):
    with pytest.raises(ValueError):
        dual_variants(kp, "transpose")


def test_matrix_inverse():
    m = ((ONE, ONE), (ZERO, ONE))
    inv = matrix_inverse(m, 2)
    assert inv == ((ONE, -ONE), (ZERO, ONE))
    with pytest.raises(ZeroDivisionError):
        matrix_inverse(((ONE, ONE), (ONE, ONE)), 2)


# -- crossing -----------------------------------------------------------------------


def test_identity_crossing(kp):
    assert kp.crossing is not None
    assert validate_crossing(kp).passed


def test_crossing_absent_is_warning(fs3):
    stripped = replace_field(fs3, crossing=None)
    report = validate_crossing(stripped)
    assert report.passed and report.warnings


def test_identity_crossing_requires_abelian(s3):
    with pytest.raises(ValueError):
        identity_crossing_data(s3, (1,) * 6)


def test_crossing_mutation_detected(kp):
    cr = {
        b: dict(kp.crossing[b]) for b in kp.crossing
    }
    flipped = [list(row) for row in cr[1][1]]
    flipped[0][1], flipped[0][0] = flipped[0][0], flipped[0][1]
    cr[1][1] = tuple(tuple(r) for r in flipped)
    bad = replace_field(kp, crossing=cr)
    assert not validate_crossing(bad).passed


def test_conjugation_crossing_s3(s3):
    idhom = GroupHom(s3, s3, tuple(range(6)))
    H = replace_field(
        build_function_hopf(idhom), crossing=conjugation_crossing(idhom)
    )
    assert validate_crossing(H).passed
    with pytest.raises(ValueError):
        conjugation_crossing(__import__("hopfk").sign_hom_s3())


def test_with_identity_crossing(fs3):
    assert validate_crossing(with_identity_crossing(fs3)).passed
