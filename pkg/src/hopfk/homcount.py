"""Brute-force lift counting, independent of all tensor machinery.

For the function algebra on a group G graded through a homomorphism
phi: G -> pi, the diagram invariant equals the number of representations
of the fundamental group into G lying over the coloring.  This module
computes that number by direct enumeration over the fibers of phi, and
deliberately shares no code with the contraction engine.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .groups import GroupHom, evaluate_word

DEFAULT_SEARCH_CAP = 100_000_000


class SearchSpaceExceeded(RuntimeError):
    """The fiber product is too large to enumerate."""


@dataclass(frozen=True)
class LiftCountQuery:
    words: tuple  # relators, one per lower circle
    colors: tuple  # one target-group element per generator
    phi: GroupHom

    def __post_init__(self):
        object.__setattr__(self, "words", tuple(self.words))
        object.__setattr__(self, "colors", tuple(self.colors))


def count_lifts(q: LiftCountQuery, cap: int = DEFAULT_SEARCH_CAP) -> int:
    """#{(g_1..g_n) with phi(g_k) = colors[k] and every relator = 1 in G}."""
    G = q.phi.source
    for w in q.words:
        for k, _ in w.letters:
            if k >= len(q.colors):
                raise ValueError(
                    f"word references generator {k + 1} but only "
                    f"{len(q.colors)} colors were given"
                )
    fibers = [q.phi.fiber(a) for a in q.colors]
    space = 1
    for f in fibers:
        space *= len(f)
        if space > cap:
            raise SearchSpaceExceeded(
                f"fiber product exceeds {cap} tuples; refusing to enumerate"
            )
    count = 0
    for assignment in itertools.product(*fibers):
        if all(
            evaluate_word(w, assignment, G) == G.identity for w in q.words
        ):
            count += 1
    return count
