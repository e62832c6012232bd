"""Sparse exact tensors with labeled legs.

A ``GradedTensor`` holds Q(i) entries indexed by tuples of basis indices,
one per leg.  Legs carry a label (used to match contraction partners), a
dimension, and optionally a grading group element.  Entries equal to zero
are never stored, which matters because the structure-constant tensors of
the algebras we contract are very sparse.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from .scalars import Scalar, ZERO

DEFAULT_ENTRY_CAP = 10_000_000
ENTRY_CAP_ENV = "HOPFK_ENTRY_CAP"


class EntryCapExceeded(RuntimeError):
    """An intermediate tensor would exceed the configured entry cap."""


def entry_cap() -> int:
    value = os.environ.get(ENTRY_CAP_ENV)
    return int(value) if value else DEFAULT_ENTRY_CAP


@dataclass(frozen=True)
class Leg:
    label: object
    dim: int
    grading: object = None  # group element index, when meaningful


class GradedTensor:
    """Dense-by-contract, sparse-by-storage multi-index array over Q(i)."""

    def __init__(self, legs, data=None):
        self.legs = tuple(legs)
        self.data = {}
        if data:
            for key, value in data.items():
                if not value.is_zero():
                    self.data[key] = value

    # -- constructors ------------------------------------------------------

    @classmethod
    def scalar(cls, value: Scalar) -> "GradedTensor":
        t = cls(())
        if not value.is_zero():
            t.data[()] = value
        return t

    # -- basic queries -----------------------------------------------------

    @property
    def labels(self):
        return tuple(leg.label for leg in self.legs)

    def size(self) -> int:
        n = 1
        for leg in self.legs:
            n *= leg.dim
        return n

    def axis(self, label) -> int:
        for i, leg in enumerate(self.legs):
            if leg.label == label:
                return i
        raise KeyError(f"no leg labeled {label!r}")

    def entry(self, key) -> Scalar:
        return self.data.get(tuple(key), ZERO)

    def as_scalar(self) -> Scalar:
        if self.legs:
            raise ValueError("tensor still has open legs")
        return self.data.get((), ZERO)

    # -- structural operations ----------------------------------------------

    def relabel(self, mapping) -> "GradedTensor":
        legs = tuple(
            Leg(mapping.get(leg.label, leg.label), leg.dim, leg.grading)
            for leg in self.legs
        )
        out = GradedTensor(legs)
        out.data = dict(self.data)
        return out

    def permute(self, order) -> "GradedTensor":
        """Reorder legs; ``order`` lists old axis positions."""
        legs = tuple(self.legs[i] for i in order)
        out = GradedTensor(legs)
        out.data = {tuple(key[i] for i in order): v for key, v in self.data.items()}
        return out

    def apply_matrix(self, label, matrix, new_dim=None, new_grading=None) -> "GradedTensor":
        """Compose a matrix into one leg: entry index i is replaced by j
        with weight ``matrix[i][j]``."""
        ax = self.axis(label)
        old = self.legs[ax]
        dim = new_dim if new_dim is not None else (len(matrix[0]) if matrix else 0)
        legs = list(self.legs)
        legs[ax] = Leg(old.label, dim, new_grading)
        out = GradedTensor(legs)
        acc = out.data
        for key, value in self.data.items():
            row = matrix[key[ax]]
            for j in range(dim):
                c = row[j]
                if c.is_zero():
                    continue
                new_key = key[:ax] + (j,) + key[ax + 1 :]
                prev = acc.get(new_key)
                total = value * c if prev is None else prev + value * c
                if total.is_zero():
                    acc.pop(new_key, None)
                else:
                    acc[new_key] = total
        return out

    # -- contraction ---------------------------------------------------------

    def contract(self, other: "GradedTensor", cap=None) -> "GradedTensor":
        """Contract all legs whose labels appear in both tensors.

        Matching legs must agree in dimension; the result keeps the
        remaining legs of ``self`` followed by those of ``other``.
        """
        shared = set(self.labels) & set(other.labels)
        my_keep = [i for i, leg in enumerate(self.legs) if leg.label not in shared]
        my_pair = [i for i, leg in enumerate(self.legs) if leg.label in shared]
        ot_keep = [i for i, leg in enumerate(other.legs) if leg.label not in shared]
        ot_pair = {other.legs[i].label: i for i in range(len(other.legs)) if other.legs[i].label in shared}
        pair_ot = [ot_pair[self.legs[i].label] for i in my_pair]
        for i, j in zip(my_pair, pair_ot):
            if self.legs[i].dim != other.legs[j].dim:
                raise ValueError(
                    f"leg {self.legs[i].label!r} dimension mismatch: "
                    f"{self.legs[i].dim} vs {other.legs[j].dim}"
                )
        legs = tuple(self.legs[i] for i in my_keep) + tuple(other.legs[j] for j in ot_keep)
        limit = cap if cap is not None else entry_cap()
        n = 1
        for leg in legs:
            n *= leg.dim
        if n > limit:
            raise EntryCapExceeded(
                f"contraction would allocate {n} entries (cap {limit})"
            )
        out = GradedTensor(legs)
        # Hash-join on the shared index values.
        buckets = {}
        for key, value in other.data.items():
            pk = tuple(key[j] for j in pair_ot)
            buckets.setdefault(pk, []).append(
                (tuple(key[j] for j in ot_keep), value)
            )
        acc = out.data
        for key, value in self.data.items():
            pk = tuple(key[i] for i in my_pair)
            hits = buckets.get(pk)
            if not hits:
                continue
            base = tuple(key[i] for i in my_keep)
            for rest, other_value in hits:
                new_key = base + rest
                term = value * other_value
                prev = acc.get(new_key)
                total = term if prev is None else prev + term
                if total.is_zero():
                    acc.pop(new_key, None)
                else:
                    acc[new_key] = total
        return out

    # -- comparison -----------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, GradedTensor):
            return NotImplemented
        return self.labels == other.labels and self.data == other.data

    def __repr__(self):
        return f"GradedTensor(legs={self.labels}, nnz={len(self.data)})"


def contract_network(nodes, cap=None, rng=None):
    """Fully contract a list of tensors into one Scalar.

    Repeatedly contracts a pair of tensors sharing a leg.  By default the
    pair is chosen greedily (smallest resulting open-size, deterministic
    tie-break on insertion order); pass ``rng`` to pick uniformly among the
    connected pairs instead (used to test order independence).
    Disconnected components reduce to scalars which are then multiplied.
    """
    pool = list(nodes)
    while True:
        candidates = []
        for a in range(len(pool)):
            labels_a = set(pool[a].labels)
            for b in range(a + 1, len(pool)):
                shared = labels_a & set(pool[b].labels)
                if not shared:
                    continue
                size = 1
                seen = shared
                for leg in pool[a].legs + pool[b].legs:
                    if leg.label not in seen:
                        size *= leg.dim
                candidates.append((size, a, b))
        if not candidates:
            break
        if rng is None:
            _, a, b = min(candidates)
        else:
            _, a, b = candidates[rng.randrange(len(candidates))]
        merged = pool[a].contract(pool[b], cap=cap)
        pool = [t for i, t in enumerate(pool) if i not in (a, b)]
        pool.append(merged)
    result = Scalar(1)
    for t in pool:
        result = result * t.as_scalar()
    return result
