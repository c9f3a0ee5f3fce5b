"""Seeded random ladders for fuzzing the identity checkers.

Generated ladders are symmetric (left mirrors right), strong-flagged, and
moderate, with the center rank capped so that ladders and their pairwise
joins stay inside the preconditions of the duality operations (the dual-shape
rule needs the center rank to fit in the ambient box)."""

from __future__ import annotations

import random

from .core import LefschetzLadder


def random_moderate_ladder(
    rng: random.Random,
    *,
    min_ambient: int = 2,
    max_ambient: int = 20,
    max_center: int = 4,
    name: str | None = None,
) -> LefschetzLadder:
    n = rng.randint(min_ambient, max_ambient)
    m = rng.randint(1, n - 1)
    r0 = rng.randint(1, min(n, max_center))
    heights = sorted((rng.randint(1, r0) for _ in range(m)), reverse=True)
    heights[0] = r0
    primitives = tuple(
        heights[i] - (heights[i + 1] if i + 1 < m else 0) for i in range(m)
    )
    return LefschetzLadder(
        name=name or f"rnd(N={n},m={m},r0={r0})",
        ambient_rank=n,
        right_primitives=primitives,
        right_strong=True,
        left_strong=True,
    )


def random_ladder_pair(
    rng: random.Random, **kwargs
) -> tuple[LefschetzLadder, LefschetzLadder]:
    """A pair whose join still has its center rank within the summed ambient
    rank, so the joined ladder remains a legal duality input."""
    while True:
        l1 = random_moderate_ladder(rng, name="rndA", **kwargs)
        l2 = random_moderate_ladder(rng, name="rndB", **kwargs)
        r1 = sum(l1.right_primitives)
        r2 = sum(l2.right_primitives)
        if r1 * r2 <= l1.ambient_rank + l2.ambient_rank:
            return l1, l2
