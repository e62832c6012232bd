"""Hopf group-coalgebras given by exact structure constants.

A ``HopfPiCoalgebra`` stores, for a finite group pi, the per-component
multiplication, unit, comultiplication, counit, and antipode tensors over
Q(i), plus an optional crossing.  Everything the invariant needs is
derived from these tensors; every defining identity is checkable exactly
and ``validate_hopf`` checks all of them.

Conventions (fixed here and in the JSON schema, see docs/formats.md):

  mul[a][i][j][k]      e_i e_j = sum_k mul[a][i][j][k] e_k        in H_a
  unit[a][k]           coefficients of the unit of H_a
  delta[(a,b)][i][j][k] Delta_{a,b}(e_i) = sum delta[i][j][k] e_j (x) e_k,
                        e_i a basis vector of H_{ab}
  counit[i]            counit on the identity component
  antipode[a][i][j]    S_a(e_i) = sum_j antipode[a][i][j] e_j     in H_{a^-1}
  crossing[b][a][i][j] phi_b(e_i in H_a) = sum_j ... e_j          in H_{bab^-1}
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .groups import GroupHom, GroupTable, Report, cyclic_group, validate_hom
from .scalars import ONE, ZERO, I, Scalar
from .tensors import GradedTensor, Leg


class StructureError(ValueError):
    """Tensor shapes are inconsistent with the declared dimensions."""


@dataclass(eq=False)
class HopfPiCoalgebra:
    pi: GroupTable
    dim: tuple
    mul: dict
    unit: dict
    delta: dict
    counit: tuple
    antipode: dict
    crossing: dict | None = None

    @property
    def dim_identity(self) -> int:
        return self.dim[self.pi.identity]

    def support(self):
        return [a for a in range(self.pi.order) if self.dim[a] > 0]


# -- small linear-algebra helpers over Q(i) ---------------------------------


def _zeros(*shape):
    if len(shape) == 1:
        return [ZERO for _ in range(shape[0])]
    return [_zeros(*shape[1:]) for _ in range(shape[0])]


def _freeze(x):
    if isinstance(x, list):
        return tuple(_freeze(v) for v in x)
    return x


def identity_matrix(n):
    return tuple(
        tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n)
    )


def matrix_inverse(matrix, n):
    """Exact inverse of an n x n Scalar matrix; raises on singular input."""
    aug = [
        [matrix[i][j] for j in range(n)]
        + [ONE if i == j else ZERO for j in range(n)]
        for i in range(n)
    ]
    for col in range(n):
        pivot = next(
            (r for r in range(col, n) if not aug[r][col].is_zero()), None
        )
        if pivot is None:
            raise ZeroDivisionError("singular matrix")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv_p = ONE / aug[col][col]
        aug[col] = [v * inv_p for v in aug[col]]
        for r in range(n):
            if r != col and not aug[r][col].is_zero():
                factor = aug[r][col]
                aug[r] = [v - factor * w for v, w in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


def vec_multiply(H, a, x, y):
    """Product of two coefficient vectors in H_a."""
    mu = H.mul[a]
    n = H.dim[a]
    out = _zeros(n)
    for i in range(n):
        if x[i].is_zero():
            continue
        for j in range(n):
            if y[j].is_zero():
                continue
            c = x[i] * y[j]
            row = mu[i][j]
            for k in range(n):
                if not row[k].is_zero():
                    out[k] = out[k] + c * row[k]
    return tuple(out)


def apply_antipode(H, a, x):
    s = H.antipode[a]
    m = H.dim[H.pi.inverse[a]]
    out = _zeros(m)
    for i, xi in enumerate(x):
        if xi.is_zero():
            continue
        for j in range(m):
            if not s[i][j].is_zero():
                out[j] = out[j] + xi * s[i][j]
    return tuple(out)


def basis_vector(n, i):
    return tuple(ONE if k == i else ZERO for k in range(n))


# -- structural validation ---------------------------------------------------


def check_shapes(H: HopfPiCoalgebra):
    """Raise StructureError if any tensor shape disagrees with dim."""
    pi = H.pi
    n = pi.order
    if len(H.dim) != n:
        raise StructureError("dim list length differs from group order")
    for a in range(n):
        d = H.dim[a]
        if a not in H.mul or a not in H.unit or a not in H.antipode:
            raise StructureError(f"missing tensors for component {pi.names[a]!r}")
        mu = H.mul[a]
        if len(mu) != d or any(
            len(row) != d or any(len(col) != d for col in row) for row in mu
        ):
            raise StructureError(f"mul tensor shape mismatch at {pi.names[a]!r}")
        if len(H.unit[a]) != d:
            raise StructureError(f"unit shape mismatch at {pi.names[a]!r}")
        di = H.dim[pi.inverse[a]]
        s = H.antipode[a]
        if len(s) != d or any(len(row) != di for row in s):
            raise StructureError(f"antipode shape mismatch at {pi.names[a]!r}")
        for b in range(n):
            key = (a, b)
            if key not in H.delta:
                raise StructureError(
                    f"missing delta component ({pi.names[a]!r},{pi.names[b]!r})"
                )
            dd = H.delta[key]
            dab = H.dim[pi.mul[a][b]]
            if len(dd) != dab or any(
                len(row) != d or any(len(col) != H.dim[b] for col in row)
                for row in dd
            ):
                raise StructureError(
                    f"delta shape mismatch at ({pi.names[a]!r},{pi.names[b]!r})"
                )
    if len(H.counit) != H.dim[pi.identity]:
        raise StructureError("counit shape mismatch")


def validate_hopf(H: HopfPiCoalgebra) -> Report:
    """Check every defining identity of an involutory Hopf pi-coalgebra."""
    check_shapes(H)
    report = Report()
    pi = H.pi
    n = pi.order
    e = pi.identity

    def name(a):
        return pi.names[a]

    # Associativity and unit of each component algebra.
    for a in range(n):
        d = H.dim[a]
        mu = H.mul[a]
        for i, j, k in itertools.product(range(d), repeat=3):
            lhs = _zeros(d)
            rhs = _zeros(d)
            for m in range(d):
                c = mu[i][j][m]
                if not c.is_zero():
                    for p in range(d):
                        lhs[p] = lhs[p] + c * mu[m][k][p]
                c = mu[j][k][m]
                if not c.is_zero():
                    for p in range(d):
                        rhs[p] = rhs[p] + c * mu[i][m][p]
            if lhs != rhs:
                report.fail(f"associativity fails in H_{name(a)} at ({i},{j},{k})")
        for i in range(d):
            ei = basis_vector(d, i)
            if vec_multiply(H, a, H.unit[a], ei) != ei:
                report.fail(f"left unit fails in H_{name(a)} at basis {i}")
            if vec_multiply(H, a, ei, H.unit[a]) != ei:
                report.fail(f"right unit fails in H_{name(a)} at basis {i}")

    # Coassociativity over all triples.
    for a, b, c in itertools.product(range(n), repeat=3):
        ab, bc = pi.mul[a][b], pi.mul[b][c]
        abc = pi.mul[ab][c]
        d_abc = H.dim[abc]
        da, db, dc = H.dim[a], H.dim[b], H.dim[c]
        left = H.delta[(ab, c)]
        split_ab = H.delta[(a, b)]
        right = H.delta[(a, bc)]
        split_bc = H.delta[(b, c)]
        for i in range(d_abc):
            lhs = _zeros(da, db, dc)
            for m in range(H.dim[ab]):
                for l in range(dc):
                    cc = left[i][m][l]
                    if cc.is_zero():
                        continue
                    for j in range(da):
                        for k in range(db):
                            v = split_ab[m][j][k]
                            if not v.is_zero():
                                lhs[j][k][l] = lhs[j][k][l] + cc * v
            rhs = _zeros(da, db, dc)
            for j in range(da):
                for m in range(H.dim[bc]):
                    cc = right[i][j][m]
                    if cc.is_zero():
                        continue
                    for k in range(db):
                        for l in range(dc):
                            v = split_bc[m][k][l]
                            if not v.is_zero():
                                rhs[j][k][l] = rhs[j][k][l] + cc * v
            if _freeze(lhs) != _freeze(rhs):
                report.fail(
                    "coassociativity fails at "
                    f"({name(a)},{name(b)},{name(c)}) basis {i}"
                )

    # Counit law.
    for a in range(n):
        d = H.dim[a]
        for i in range(d):
            right = _zeros(d)
            for j in range(d):
                for k in range(H.dim[e]):
                    c = H.delta[(a, e)][i][j][k]
                    if not c.is_zero():
                        right[j] = right[j] + c * H.counit[k]
            left = _zeros(d)
            for k in range(H.dim[e]):
                for j in range(d):
                    c = H.delta[(e, a)][i][k][j]
                    if not c.is_zero():
                        left[j] = left[j] + c * H.counit[k]
            expected = basis_vector(d, i)
            if _freeze(right) != expected:
                report.fail(f"counit law (id x eps) fails in H_{name(a)} at {i}")
            if _freeze(left) != expected:
                report.fail(f"counit law (eps x id) fails in H_{name(a)} at {i}")

    # Antipode law, both sides.
    for a in range(n):
        ai = pi.inverse[a]
        d = H.dim[a]
        for i in range(H.dim[e]):
            eps_unit = tuple(H.counit[i] * u for u in H.unit[a])
            lhs = _zeros(d)
            for j in range(H.dim[ai]):
                for k in range(d):
                    c = H.delta[(ai, a)][i][j][k]
                    if c.is_zero():
                        continue
                    sj = H.antipode[ai][j]
                    for m in range(d):
                        if sj[m].is_zero():
                            continue
                        cm = c * sj[m]
                        row = H.mul[a][m][k]
                        for p in range(d):
                            if not row[p].is_zero():
                                lhs[p] = lhs[p] + cm * row[p]
            if _freeze(lhs) != eps_unit:
                report.fail(f"antipode law (S x id) fails in H_{name(a)} at {i}")
            rhs = _zeros(d)
            for j in range(d):
                for k in range(H.dim[ai]):
                    c = H.delta[(a, ai)][i][j][k]
                    if c.is_zero():
                        continue
                    sk = H.antipode[ai][k]
                    for m in range(d):
                        if sk[m].is_zero():
                            continue
                        cm = c * sk[m]
                        row = H.mul[a][j][m]
                        for p in range(d):
                            if not row[p].is_zero():
                                rhs[p] = rhs[p] + cm * row[p]
            if _freeze(rhs) != eps_unit:
                report.fail(f"antipode law (id x S) fails in H_{name(a)} at {i}")

    # Comultiplication and counit are algebra homomorphisms.
    for a in range(n):
        for b in range(n):
            ab = pi.mul[a][b]
            d = H.dim[ab]
            da, db = H.dim[a], H.dim[b]
            dd = H.delta[(a, b)]
            expected_unit = _zeros(da, db)
            for j in range(da):
                for k in range(db):
                    expected_unit[j][k] = H.unit[a][j] * H.unit[b][k]
            image_unit = _zeros(da, db)
            for i in range(d):
                if H.unit[ab][i].is_zero():
                    continue
                for j in range(da):
                    for k in range(db):
                        if not dd[i][j][k].is_zero():
                            image_unit[j][k] = (
                                image_unit[j][k] + H.unit[ab][i] * dd[i][j][k]
                            )
            if _freeze(image_unit) != _freeze(expected_unit):
                report.fail(f"Delta({name(a)},{name(b)}) does not preserve the unit")
            for i1, i2 in itertools.product(range(d), repeat=2):
                lhs = _zeros(da, db)
                for m in range(d):
                    c = H.mul[ab][i1][i2][m]
                    if c.is_zero():
                        continue
                    for j in range(da):
                        for k in range(db):
                            if not dd[m][j][k].is_zero():
                                lhs[j][k] = lhs[j][k] + c * dd[m][j][k]
                rhs = _zeros(da, db)
                for j1 in range(da):
                    for k1 in range(db):
                        c1 = dd[i1][j1][k1]
                        if c1.is_zero():
                            continue
                        for j2 in range(da):
                            for k2 in range(db):
                                c2 = dd[i2][j2][k2]
                                if c2.is_zero():
                                    continue
                                c12 = c1 * c2
                                rowa = H.mul[a][j1][j2]
                                rowb = H.mul[b][k1][k2]
                                for j in range(da):
                                    if rowa[j].is_zero():
                                        continue
                                    cj = c12 * rowa[j]
                                    for k in range(db):
                                        if not rowb[k].is_zero():
                                            rhs[j][k] = rhs[j][k] + cj * rowb[k]
                if _freeze(lhs) != _freeze(rhs):
                    report.fail(
                        f"Delta({name(a)},{name(b)}) is not multiplicative "
                        f"at basis pair ({i1},{i2})"
                    )
    de = H.dim[e]
    eps_of_unit = sum(
        (H.counit[i] * H.unit[e][i] for i in range(de)), ZERO
    )
    if de and eps_of_unit != ONE:
        report.fail("counit of the unit is not 1")
    for i1, i2 in itertools.product(range(de), repeat=2):
        lhs = sum(
            (H.mul[e][i1][i2][m] * H.counit[m] for m in range(de)), ZERO
        )
        if lhs != H.counit[i1] * H.counit[i2]:
            report.fail(f"counit is not multiplicative at ({i1},{i2})")

    # Involutory antipode.
    for a in range(n):
        ai = pi.inverse[a]
        d = H.dim[a]
        for i in range(d):
            composed = apply_antipode(H, ai, apply_antipode(H, a, basis_vector(d, i)))
            if composed != basis_vector(d, i):
                report.fail(f"S_{name(ai)} S_{name(a)} != id at basis {i}")

    # Antipode anti-multiplicative with S(1) = 1.
    for a in range(n):
        d = H.dim[a]
        if apply_antipode(H, a, H.unit[a]) != H.unit[pi.inverse[a]]:
            report.fail(f"S_{name(a)} does not preserve the unit")
        for i, j in itertools.product(range(d), repeat=2):
            prod = vec_multiply(
                H, a, basis_vector(d, i), basis_vector(d, j)
            )
            lhs = apply_antipode(H, a, prod)
            rhs = vec_multiply(
                H,
                pi.inverse[a],
                apply_antipode(H, a, basis_vector(d, j)),
                apply_antipode(H, a, basis_vector(d, i)),
            )
            if lhs != rhs:
                report.fail(f"S_{name(a)} is not anti-multiplicative at ({i},{j})")

    # Antipode anti-comultiplicative; eps o S_1 = eps.
    for i in range(de):
        lhs = sum(
            (H.antipode[e][i][j] * H.counit[j] for j in range(de)), ZERO
        )
        if lhs != H.counit[i]:
            report.fail(f"eps o S != eps at basis {i}")
    for a, b in itertools.product(range(n), repeat=2):
        ab = pi.mul[a][b]
        abi, ainv, binv = pi.inverse[ab], pi.inverse[a], pi.inverse[b]
        d = H.dim[ab]
        da, db = H.dim[a], H.dim[b]
        dai, dbi = H.dim[ainv], H.dim[binv]
        for i in range(d):
            lhs = _zeros(dbi, dai)
            s = H.antipode[ab][i]
            for m in range(H.dim[abi]):
                if s[m].is_zero():
                    continue
                for j in range(dbi):
                    for k in range(dai):
                        c = H.delta[(binv, ainv)][m][j][k]
                        if not c.is_zero():
                            lhs[j][k] = lhs[j][k] + s[m] * c
            rhs = _zeros(dbi, dai)
            for j in range(da):
                for k in range(db):
                    c = H.delta[(a, b)][i][j][k]
                    if c.is_zero():
                        continue
                    sa = H.antipode[a][j]
                    sb = H.antipode[b][k]
                    for q in range(dbi):
                        if sb[q].is_zero():
                            continue
                        cq = c * sb[q]
                        for p in range(dai):
                            if not sa[p].is_zero():
                                rhs[q][p] = rhs[q][p] + cq * sa[p]
            if _freeze(lhs) != _freeze(rhs):
                report.fail(
                    f"antipode is not anti-comultiplicative at "
                    f"({name(a)},{name(b)}) basis {i}"
                )

    # Support is a subgroup; identity component is non-trivial.
    support = set(H.support())
    for a in support:
        if pi.inverse[a] not in support:
            report.fail(f"support not closed under inverse at {name(a)}")
        for b in support:
            if pi.mul[a][b] not in support:
                report.fail(
                    f"support not closed under product at ({name(a)},{name(b)})"
                )
    if H.dim_identity == 0:
        report.fail("identity component has dimension 0")

    return report


# -- iterated comultiplication -----------------------------------------------


def iterated_delta(H: HopfPiCoalgebra, grading, x) -> GradedTensor:
    """Left-nested iterate of Delta along the given grading sequence.

    ``x`` is a coefficient vector in the component graded by the product of
    ``grading``; the result has legs labeled 0..n-1.
    """
    grading = tuple(grading)
    if not grading:
        raise ValueError("grading sequence must be non-empty")
    pi = H.pi
    total = pi.identity
    for a in grading:
        total = pi.mul[total][a]
    if len(x) != H.dim[total]:
        raise ValueError("vector length does not match graded component")
    n = len(grading)
    prefix = [pi.identity]
    for a in grading:
        prefix.append(pi.mul[prefix[-1]][a])

    data = {
        (i,): v for i, v in enumerate(x) if not v.is_zero()
    }
    cur = GradedTensor((Leg(("pend", n), H.dim[total], total),), data)
    # Peel the last grading off the pending leg, one Delta per step.
    for t in range(n - 1, 0, -1):
        a, b = prefix[t], grading[t]
        dd = H.delta[(a, b)]
        node_data = {}
        for i in range(H.dim[prefix[t + 1]]):
            for j in range(H.dim[a]):
                for k in range(H.dim[b]):
                    c = dd[i][j][k]
                    if not c.is_zero():
                        node_data[(i, j, k)] = c
        node = GradedTensor(
            (
                Leg(("pend", t + 1), H.dim[prefix[t + 1]], prefix[t + 1]),
                Leg(("pend", t), H.dim[a], a),
                Leg(t, H.dim[b], b),
            ),
            node_data,
        )
        cur = cur.contract(node)
    cur = cur.relabel({("pend", 1): 0})
    order = [cur.axis(t) for t in range(n)]
    return cur.permute(order)


# -- integral data -------------------------------------------------------------


@dataclass(eq=False)
class IntegralData:
    """Trace forms T_a and the cotrace C used by the diagram invariant."""

    trace: dict  # a -> covector on H_a
    cotrace: tuple  # vector in the identity component


def derive_integral_data(H: HopfPiCoalgebra) -> IntegralData:
    pi = H.pi
    trace = {}
    for a in range(pi.order):
        d = H.dim[a]
        mu = H.mul[a]
        trace[a] = tuple(
            sum((mu[k][i][k] for k in range(d)), ZERO) for i in range(d)
        )
    e = pi.identity
    de = H.dim[e]
    dd = H.delta[(e, e)]
    cotrace = tuple(
        sum((dd[i][i][k] for i in range(de)), ZERO) for k in range(de)
    )
    return IntegralData(trace, cotrace)


def check_structural_lemmas(
    H: HopfPiCoalgebra, integral: IntegralData, cyclic_bound: int = 4
) -> Report:
    """Verify the integral and symmetry identities the invariant relies on."""
    report = Report()
    pi = H.pi
    e = pi.identity
    T, C = integral.trace, integral.cotrace

    def name(a):
        return pi.names[a]

    def t_apply(a, x):
        return sum((T[a][i] * x[i] for i in range(H.dim[a])), ZERO)

    # T is a two-sided pi-integral: both sides of the defining equation.
    for a in range(pi.order):
        for b in range(pi.order):
            ab = pi.mul[a][b]
            dab, da, db = H.dim[ab], H.dim[a], H.dim[b]
            dd = H.delta[(a, b)]
            for i in range(dab):
                scal = t_apply(ab, basis_vector(dab, i))
                right = _zeros(da)
                for j in range(da):
                    for k in range(db):
                        c = dd[i][j][k]
                        if not c.is_zero():
                            right[j] = right[j] + c * T[b][k]
                if _freeze(right) != tuple(scal * u for u in H.unit[a]):
                    report.fail(
                        f"(id x T) integral equation fails at "
                        f"({name(a)},{name(b)}) basis {i}"
                    )
                left = _zeros(db)
                for j in range(da):
                    for k in range(db):
                        c = dd[i][j][k]
                        if not c.is_zero():
                            left[k] = left[k] + T[a][j] * c
                if _freeze(left) != tuple(scal * u for u in H.unit[b]):
                    report.fail(
                        f"(T x id) integral equation fails at "
                        f"({name(a)},{name(b)}) basis {i}"
                    )

    # C is a two-sided integral for the identity component.
    de = H.dim[e]
    for i in range(de):
        x = basis_vector(de, i)
        if vec_multiply(H, e, x, C) != tuple(H.counit[i] * c for c in C):
            report.fail(f"C is not a left integral at basis {i}")
        if vec_multiply(H, e, C, x) != tuple(H.counit[i] * c for c in C):
            report.fail(f"C is not a right integral at basis {i}")

    # Scalar identities.
    dim_scalar = Scalar(de)
    eps_C = sum((H.counit[i] * C[i] for i in range(de)), ZERO)
    if t_apply(e, H.unit[e]) != dim_scalar:
        report.fail("T(1) != dim of identity component")
    if eps_C != dim_scalar:
        report.fail("eps(C) != dim of identity component")
    if t_apply(e, C) != dim_scalar:
        report.fail("T(C) != dim of identity component")
    if apply_antipode(H, e, C) != C:
        report.fail("S(C) != C")
    for a in range(pi.order):
        d = H.dim[a]
        for i in range(d):
            if t_apply(pi.inverse[a], apply_antipode(H, a, basis_vector(d, i))) != T[a][i]:
                report.fail(f"T o S != T in H_{name(a)} at basis {i}")

    # dim H_a = dim H_1 on the support (characteristic-zero statement),
    # and the semisimplicity criterion T_a(1_a) = dim H_1 != 0.
    for a in H.support():
        if H.dim[a] != de:
            report.fail(
                f"dim H_{name(a)} = {H.dim[a]} differs from identity "
                f"component dimension {de}"
            )
        if t_apply(a, H.unit[a]) != dim_scalar:
            report.fail(f"T(1) in H_{name(a)} differs from dim of H at identity")

    # Cyclic symmetry of T o m^(n) for n up to the bound.
    for a in H.support():
        d = H.dim[a]
        for arity in range(2, cyclic_bound + 1):
            for idx in itertools.product(range(d), repeat=arity):
                vec = basis_vector(d, idx[0])
                for i in idx[1:]:
                    vec = vec_multiply(H, a, vec, basis_vector(d, i))
                rotated = basis_vector(d, idx[1])
                for i in idx[2:] + (idx[0],):
                    rotated = vec_multiply(H, a, rotated, basis_vector(d, i))
                if t_apply(a, vec) != t_apply(a, rotated):
                    report.fail(
                        f"trace product not cyclically symmetric in "
                        f"H_{name(a)} at {idx} (arity {arity})"
                    )
                    break
            else:
                continue
            break

    # Cyclic symmetry of the iterated coproduct of C.
    support = H.support()
    for arity in range(2, cyclic_bound + 1):
        for grading in itertools.product(support, repeat=arity - 1):
            rest = pi.identity
            for g in grading:
                rest = pi.mul[rest][g]
            last = pi.inverse[rest]
            if last not in support:
                continue
            full = grading + (last,)
            base = iterated_delta(H, full, C)
            rotated_grading = full[1:] + full[:1]
            rotated = iterated_delta(H, rotated_grading, C)
            # Shifting legs of the rotated grading back by one must give base.
            shifted = rotated.permute([arity - 1] + list(range(arity - 1)))
            if shifted.data != base.data:
                report.fail(
                    f"iterated coproduct of C not cyclically symmetric "
                    f"for grading {tuple(name(g) for g in full)}"
                )

    return report


# -- constructors -----------------------------------------------------------


def build_function_hopf(phi: GroupHom) -> HopfPiCoalgebra:
    """Functions on a finite group G, graded over pi by a homomorphism phi.

    Basis of the component at a: delta functions e_g for g in the fiber of
    a.  Multiplication is pointwise, the coproduct is convolution-style,
    and the antipode is induced by inversion.
    """
    report = validate_hom(phi)
    if not report.passed:
        raise ValueError("invalid group homomorphism: " + "; ".join(report.violations))
    G, pi = phi.source, phi.target
    fibers = {a: phi.fiber(a) for a in range(pi.order)}
    pos = {
        a: {g: i for i, g in enumerate(fibers[a])} for a in range(pi.order)
    }
    dim = tuple(len(fibers[a]) for a in range(pi.order))
    mul = {}
    unit = {}
    antipode = {}
    for a in range(pi.order):
        d = dim[a]
        mul[a] = tuple(
            tuple(
                tuple(
                    ONE if i == j == k else ZERO for k in range(d)
                )
                for j in range(d)
            )
            for i in range(d)
        )
        unit[a] = tuple(ONE for _ in range(d))
        ai = pi.inverse[a]
        antipode[a] = tuple(
            tuple(
                ONE if pos[ai][G.inverse[fibers[a][i]]] == j else ZERO
                for j in range(dim[ai])
            )
            for i in range(d)
        )
    delta = {}
    for a in range(pi.order):
        for b in range(pi.order):
            ab = pi.mul[a][b]
            table = _zeros(dim[ab], dim[a], dim[b])
            for j, h in enumerate(fibers[a]):
                for k, kk in enumerate(fibers[b]):
                    g = G.mul[h][kk]
                    table[pos[ab][g]][j][k] = ONE
            delta[(a, b)] = _freeze(table)
    e = pi.identity
    counit = tuple(
        ONE if fibers[e][i] == G.identity else ZERO for i in range(dim[e])
    )
    crossing = None
    if pi.is_abelian():
        crossing = identity_crossing_data(pi, dim)
    return HopfPiCoalgebra(pi, dim, mul, unit, delta, counit, antipode, crossing)


def conjugation_crossing(phi: GroupHom, section=None):
    """Crossing data for the function algebra graded through phi, induced
    by conjugation along a multiplicative section of phi.

    ``section[b]`` must be a source element over b with section[b b'] =
    section[b] section[b']; when phi is the identity the canonical choice
    ``section[b] = b`` is used.
    """
    G, pi = phi.source, phi.target
    if section is None:
        if G is not pi and G != pi:
            raise ValueError("no canonical section; provide one explicitly")
        section = tuple(range(pi.order))
    for b in range(pi.order):
        if phi(section[b]) != b:
            raise ValueError(f"section does not lie over element {pi.names[b]!r}")
        for b2 in range(pi.order):
            if section[pi.mul[b][b2]] != G.mul[section[b]][section[b2]]:
                raise ValueError("section is not multiplicative")
    fibers = {a: phi.fiber(a) for a in range(pi.order)}
    pos = {a: {g: i for i, g in enumerate(fibers[a])} for a in range(pi.order)}
    crossing = {}
    for b in range(pi.order):
        h = section[b]
        crossing[b] = {}
        for a in range(pi.order):
            target = pi.conjugate(b, a)
            mat = _zeros(len(fibers[a]), len(fibers[target]))
            for i, g in enumerate(fibers[a]):
                mat[i][pos[target][G.conjugate(h, g)]] = ONE
            crossing[b][a] = _freeze(mat)
    return crossing


def identity_crossing_data(pi: GroupTable, dim):
    """The identity crossing, available whenever pi is abelian."""
    if not pi.is_abelian():
        raise ValueError("identity crossing requires an abelian group")
    return {
        b: {a: identity_matrix(dim[a]) for a in range(pi.order)}
        for b in range(pi.order)
    }


def with_identity_crossing(H: HopfPiCoalgebra) -> HopfPiCoalgebra:
    return HopfPiCoalgebra(
        H.pi,
        H.dim,
        H.mul,
        H.unit,
        H.delta,
        H.counit,
        H.antipode,
        identity_crossing_data(H.pi, H.dim),
    )


def build_kac_paljutkin() -> HopfPiCoalgebra:
    """The 8-dimensional Kac-Paljutkin algebra as a Z/2-graded coalgebra.

    Component 0 is Q(i)^4 with pointwise product, component 1 is the 2x2
    matrix algebra with basis (e11, e12, e21, e22).  The coproduct blocks
    are hard-coded; ``validate_hopf`` re-derives all axioms from them.
    """
    pi = cyclic_group(2)
    dim = (4, 4)
    half = Scalar(1) / Scalar(2)
    mul0 = tuple(
        tuple(
            tuple(ONE if i == j == k else ZERO for k in range(4))
            for j in range(4)
        )
        for i in range(4)
    )
    # Matrix units in order e11, e12, e21, e22: e_{ab} e_{cd} = [b==c] e_{ad}.
    pairs = [(0, 0), (0, 1), (1, 0), (1, 1)]
    pidx = {p: i for i, p in enumerate(pairs)}
    mul1_table = _zeros(4, 4, 4)
    for i, (a1, b1) in enumerate(pairs):
        for j, (a2, b2) in enumerate(pairs):
            if b1 == a2:
                mul1_table[i][j][pidx[(a1, b2)]] = ONE
    mul = {0: mul0, 1: _freeze(mul1_table)}
    unit = {0: (ONE, ONE, ONE, ONE), 1: (ONE, ZERO, ZERO, ONE)}
    counit = (ONE, ZERO, ZERO, ZERO)

    def table(rows):
        out = _zeros(4, 4, 4)
        for i, terms in enumerate(rows):
            for j, k, c in terms:
                out[i][j][k] = c
        return _freeze(out)

    d00 = table(
        [
            [(0, 0, ONE), (1, 1, ONE), (2, 2, ONE), (3, 3, ONE)],
            [(0, 1, ONE), (1, 0, ONE), (2, 3, ONE), (3, 2, ONE)],
            [(0, 2, ONE), (2, 0, ONE), (1, 3, ONE), (3, 1, ONE)],
            [(0, 3, ONE), (3, 0, ONE), (1, 2, ONE), (2, 1, ONE)],
        ]
    )
    # Rows below are indexed by the matrix-unit basis e11, e12, e21, e22.
    d01 = table(
        [
            [(0, 0, ONE), (1, 3, ONE), (2, 0, ONE), (3, 3, ONE)],
            [(0, 1, ONE), (1, 2, -I), (2, 1, -ONE), (3, 2, I)],
            [(0, 2, ONE), (1, 1, I), (2, 2, -ONE), (3, 1, -I)],
            [(0, 3, ONE), (1, 0, ONE), (2, 3, ONE), (3, 0, ONE)],
        ]
    )
    d10 = table(
        [
            [(0, 0, ONE), (3, 1, ONE), (0, 2, ONE), (3, 3, ONE)],
            [(1, 0, ONE), (2, 1, I), (1, 2, -ONE), (2, 3, -I)],
            [(2, 0, ONE), (1, 1, -I), (2, 2, -ONE), (1, 3, I)],
            [(3, 0, ONE), (0, 1, ONE), (3, 2, ONE), (0, 3, ONE)],
        ]
    )
    d11 = table(
        [
            [(0, 0, half), (3, 3, half), (1, 1, half), (2, 2, half)],
            [(0, 3, half), (3, 0, half), (1, 2, half * I), (2, 1, -half * I)],
            [(0, 0, half), (3, 3, half), (1, 1, -half), (2, 2, -half)],
            [(0, 3, half), (3, 0, half), (1, 2, -half * I), (2, 1, half * I)],
        ]
    )
    delta = {(0, 0): d00, (0, 1): d01, (1, 0): d10, (1, 1): d11}
    s0 = identity_matrix(4)
    s1 = tuple(
        tuple(ONE if pidx[(pairs[i][1], pairs[i][0])] == j else ZERO for j in range(4))
        for i in range(4)
    )
    antipode = {0: s0, 1: s1}
    crossing = identity_crossing_data(pi, dim)
    return HopfPiCoalgebra(pi, dim, mul, unit, delta, counit, antipode, crossing)


def dual_variants(H: HopfPiCoalgebra, kind: str) -> HopfPiCoalgebra:
    """The opposite (reversed products) or coopposite (regraded, flipped
    coproducts) coalgebra; both need the inverse antipode, which exists in
    finite type."""
    pi = H.pi
    n = pi.order
    if kind == "opposite":
        mul = {
            a: tuple(
                tuple(
                    tuple(H.mul[a][j][i][k] for k in range(H.dim[a]))
                    for j in range(H.dim[a])
                )
                for i in range(H.dim[a])
            )
            for a in range(n)
        }
        antipode = {}
        for a in range(n):
            ai = pi.inverse[a]
            if H.dim[a] != H.dim[ai]:
                raise ValueError("antipode is not square; data corrupt")
            antipode[a] = matrix_inverse(H.antipode[ai], H.dim[a])
        return HopfPiCoalgebra(
            pi, H.dim, mul, dict(H.unit), dict(H.delta), H.counit, antipode, None
        )
    if kind == "coopposite":
        dim = tuple(H.dim[pi.inverse[a]] for a in range(n))
        mul = {a: H.mul[pi.inverse[a]] for a in range(n)}
        unit = {a: H.unit[pi.inverse[a]] for a in range(n)}
        delta = {}
        for a in range(n):
            for b in range(n):
                src = H.delta[(pi.inverse[b], pi.inverse[a])]
                ab = pi.mul[a][b]
                flipped = _zeros(dim[ab], dim[a], dim[b])
                for i in range(dim[ab]):
                    for j in range(H.dim[pi.inverse[b]]):
                        for k in range(H.dim[pi.inverse[a]]):
                            flipped[i][k][j] = src[i][j][k]
                delta[(a, b)] = _freeze(flipped)
        antipode = {}
        for a in range(n):
            if H.dim[a] != H.dim[pi.inverse[a]]:
                raise ValueError("antipode is not square; data corrupt")
            antipode[a] = matrix_inverse(H.antipode[a], H.dim[a])
        return HopfPiCoalgebra(pi, dim, mul, unit, delta, H.counit, antipode, None)
    raise ValueError(f"unknown dual kind {kind!r}")


def validate_crossing(H: HopfPiCoalgebra) -> Report:
    """Check the optional crossing: algebra isomorphisms conjugating the
    grading, multiplicative in the crossing index, preserving Delta, eps,
    and (hence, checked anyway) S."""
    report = Report()
    if H.crossing is None:
        report.warn("crossing data not provided")
        return report
    pi = H.pi
    n = pi.order

    def name(a):
        return pi.names[a]

    def apply(b, a, x):
        mat = H.crossing[b][a]
        target = pi.conjugate(b, a)
        out = _zeros(H.dim[target])
        for i, xi in enumerate(x):
            if xi.is_zero():
                continue
            for j in range(H.dim[target]):
                if not mat[i][j].is_zero():
                    out[j] = out[j] + xi * mat[i][j]
        return tuple(out)

    for b in range(n):
        if b not in H.crossing:
            report.fail(f"crossing missing component for {name(b)}")
            return report
        for a in range(n):
            target = pi.conjugate(b, a)
            mat = H.crossing[b][a]
            if len(mat) != H.dim[a] or any(len(r) != H.dim[target] for r in mat):
                report.fail(f"crossing phi_{name(b)} shape mismatch on H_{name(a)}")
                continue
            if H.dim[a] != H.dim[target]:
                report.fail(f"crossing phi_{name(b)} cannot be iso on H_{name(a)}")
                continue
            if H.dim[a]:
                try:
                    matrix_inverse(mat, H.dim[a])
                except ZeroDivisionError:
                    report.fail(f"phi_{name(b)} is singular on H_{name(a)}")
            if apply(b, a, H.unit[a]) != H.unit[target]:
                report.fail(f"phi_{name(b)} does not preserve the unit of H_{name(a)}")
            d = H.dim[a]
            for i, j in itertools.product(range(d), repeat=2):
                lhs = apply(
                    b, a, vec_multiply(H, a, basis_vector(d, i), basis_vector(d, j))
                )
                rhs = vec_multiply(
                    H,
                    target,
                    apply(b, a, basis_vector(d, i)),
                    apply(b, a, basis_vector(d, j)),
                )
                if lhs != rhs:
                    report.fail(
                        f"phi_{name(b)} not multiplicative on H_{name(a)} at ({i},{j})"
                    )
            # Antipode compatibility.
            ai = pi.inverse[a]
            for i in range(d):
                lhs = apply(b, ai, apply_antipode(H, a, basis_vector(d, i)))
                rhs = apply_antipode(H, target, apply(b, a, basis_vector(d, i)))
                if lhs != rhs:
                    report.fail(
                        f"phi_{name(b)} does not commute with S on H_{name(a)} at {i}"
                    )

    # Counit and coproduct preservation.
    e = pi.identity
    for b in range(n):
        de = H.dim[e]
        for i in range(de):
            lhs = sum(
                (
                    H.crossing[b][e][i][j] * H.counit[j]
                    for j in range(de)
                ),
                ZERO,
            )
            if lhs != H.counit[i]:
                report.fail(f"phi_{name(b)} does not preserve the counit at {i}")
        for a, g in itertools.product(range(n), repeat=2):
            ag = pi.mul[a][g]
            ta, tg = pi.conjugate(b, a), pi.conjugate(b, g)
            tag = pi.mul[ta][tg]
            dsrc, da, dg = H.dim[ag], H.dim[a], H.dim[g]
            for i in range(dsrc):
                lhs = _zeros(H.dim[ta], H.dim[tg])
                for j in range(da):
                    for k in range(dg):
                        c = H.delta[(a, g)][i][j][k]
                        if c.is_zero():
                            continue
                        for p in range(H.dim[ta]):
                            cj = H.crossing[b][a][j][p]
                            if cj.is_zero():
                                continue
                            for q in range(H.dim[tg]):
                                ck = H.crossing[b][g][k][q]
                                if not ck.is_zero():
                                    lhs[p][q] = lhs[p][q] + c * cj * ck
                rhs = _zeros(H.dim[ta], H.dim[tg])
                for m in range(H.dim[tag]):
                    c = H.crossing[b][ag][i][m]
                    if c.is_zero():
                        continue
                    for p in range(H.dim[ta]):
                        for q in range(H.dim[tg]):
                            v = H.delta[(ta, tg)][m][p][q]
                            if not v.is_zero():
                                rhs[p][q] = rhs[p][q] + c * v
                if _freeze(lhs) != _freeze(rhs):
                    report.fail(
                        f"phi_{name(b)} does not preserve Delta on "
                        f"({name(a)},{name(g)}) at basis {i}"
                    )

    # Multiplicativity in the crossing index.
    for b1, b2 in itertools.product(range(n), repeat=2):
        b12 = pi.mul[b1][b2]
        for a in range(n):
            mid = pi.conjugate(b2, a)
            d = H.dim[a]
            for i in range(d):
                step = apply(b2, a, basis_vector(d, i))
                lhs = apply(b1, mid, step)
                rhs = apply(b12, a, basis_vector(d, i))
                if lhs != rhs:
                    report.fail(
                        f"crossing not multiplicative: phi_{name(b1)} o "
                        f"phi_{name(b2)} != phi on H_{name(a)} at basis {i}"
                    )
    return report
