"""Blowup Lefschetz structures under linear projection, and projected joins.

Projecting a ladder over a rank-Ntilde bundle down to rank N blows up the
projection center.  Numerically every component gains one copy of the
base change of the category to the center, whose rank the ladder does not
determine; it is carried as a named unknown u.  The result always has length
N - 1: components r_i + u up to the source length, then bare u out to N - 2.

The projected join is the blowup applied to a categorical join; its dual is
emitted as a statement record, since the dual side involves fiber-product
categories whose ranks are again unknowns.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .core import (
    IdentityRecord,
    InvalidLadderError,
    LefschetzLadder,
    RankExpr,
    component_ranks,
    heights_to_primitives,
    identity,
    require_valid,
    total_rank,
)
from .hpd import _require_hpd_input, hpd_length
from .join import JoinResult, categorical_join


@dataclass(frozen=True)
class ProjectedLadder:
    """Ladder with component ranks linear in one unknown u (the rank of the
    source category base-changed to the projection center)."""

    name: str
    ambient_rank: int
    heights: tuple[RankExpr, ...]
    unknown: str
    source_name: str
    source_ambient: int
    source_heights: tuple[int, ...]
    right_strong: bool = False
    left_strong: bool = False
    diagnostics: tuple[IdentityRecord, ...] = ()

    @property
    def length(self) -> int:
        return len(self.heights)

    @property
    def is_moderate(self) -> bool:
        return self.length < self.ambient_rank

    @property
    def center(self) -> RankExpr:
        return self.heights[0]

    def total_rank(self) -> RankExpr:
        out = RankExpr(0)
        for h in self.heights:
            out = out + h
        return out

    def specialize(self, value: int) -> LefschetzLadder:
        """Substitute an integer for the unknown and renormalize (trailing
        zero components drop, making the length exact again)."""
        heights = [h.substitute({self.unknown: value}).as_int() for h in self.heights]
        while heights and heights[-1] == 0:
            heights.pop()
        primitives = heights_to_primitives(heights)
        return LefschetzLadder(
            name=f"{self.name}|{self.unknown}={value}",
            ambient_rank=self.ambient_rank,
            right_primitives=primitives,
            left_primitives=primitives,
            right_strong=self.right_strong,
            left_strong=self.left_strong,
        )

    @property
    def passed(self) -> bool:
        return all(rec.passed for rec in self.diagnostics)


def blowup_lefschetz(
    ladder: LefschetzLadder, target_rank: int, unknown: str | None = None
) -> ProjectedLadder:
    """Lefschetz structure of a linear projection of a ladder down to ambient
    rank `target_rank` (the source length must be strictly smaller)."""
    require_valid(ladder)
    source_n = ladder.ambient_rank
    m = ladder.length
    if not m < target_rank:
        raise InvalidLadderError(
            f"projection needs length < target rank: {ladder.name!r} has length {m},"
            f" target rank {target_rank}"
        )
    if target_rank > source_n:
        raise InvalidLadderError(
            f"target rank {target_rank} exceeds the source ambient rank {source_n}"
        )
    unknown = unknown or f"rank({ladder.name}_P(K))"
    u = RankExpr.unknown(unknown)
    heights = component_ranks(ladder, "right")
    new_heights = tuple(RankExpr(h) + u for h in heights) + tuple(
        u for _ in range(target_rank - 1 - m)
    )
    source_total = total_rank(ladder)
    expected_total = RankExpr(source_total) + u * (target_rank - 1)
    computed_total = RankExpr(0)
    for h in new_heights:
        computed_total = computed_total + h
    diagnostics = (
        identity("blowup-length", len(new_heights), target_rank - 1),
        identity("blowup-total-rank", computed_total, expected_total),
        identity("blowup-center", new_heights[0], RankExpr(heights[0]) + u),
    )
    return ProjectedLadder(
        name=f"Bl({ladder.name})",
        ambient_rank=target_rank,
        heights=new_heights,
        unknown=unknown,
        source_name=ladder.name,
        source_ambient=source_n,
        source_heights=heights,
        right_strong=ladder.right_strong,
        left_strong=ladder.left_strong,
        diagnostics=diagnostics,
    )


def projected_join(
    l1: LefschetzLadder, l2: LefschetzLadder, target_rank: int
) -> tuple[ProjectedLadder, JoinResult]:
    """Join of two ladders followed by projection to a common ambient of rank
    `target_rank`; needs length(l1) + length(l2) < target_rank."""
    require_valid(l1)
    require_valid(l2)
    if not l1.length + l2.length < target_rank:
        raise InvalidLadderError(
            f"projected join needs length({l1.name}) + length({l2.name}) ="
            f" {l1.length + l2.length} < target rank {target_rank}"
        )
    join = categorical_join(l1, l2)
    projected = blowup_lefschetz(
        join.ladder,
        target_rank,
        unknown=f"rank(J({l1.name},{l2.name})_P(K))",
    )
    return projected, join


@dataclass(frozen=True)
class ProjectedHpdStatement:
    """Duality statement for a projected join: the left side's computable
    shadow next to a description of the dual tensor category, whose rank
    stays unknown."""

    projected: ProjectedLadder
    lhs_hpd_length: int
    rhs_kind: str
    rhs_description: str
    rhs_rank: RankExpr
    dual_factor_lengths: tuple[int, ...]
    parameters: Mapping[str, int]


def projected_join_hpd(
    l1: LefschetzLadder, l2: LefschetzLadder, target_rank: int
) -> ProjectedHpdStatement:
    """Dual of a projected join: equivalent to the tensor product of the two
    dual categories over the dual target when both inputs share the target
    ambient, and to the base change of the join of the duals in general."""
    _require_hpd_input(l1)
    _require_hpd_input(l2)
    projected, join = projected_join(l1, l2, target_rank)

    # center equality against the blown-up center is structural: components
    # agree exactly while the source components do, since every one carries
    # the same unknown summand
    source_p = heights_to_primitives(projected.source_heights)
    center_run = next(i for i, p in enumerate(source_p) if p > 0) + 1
    lhs_hpd_length = target_rank - center_run

    n1, n2 = hpd_length(l1), hpd_length(l2)
    same_ambient = l1.ambient_rank == l2.ambient_rank == target_rank
    if same_ambient:
        kind = "tensor-of-duals"
        description = (
            f"hpd(J_V({l1.name},{l2.name})) = hpd({l1.name}) (x)_P(V') hpd({l2.name})"
        )
    else:
        kind = "base-changed-join-of-duals"
        description = (
            f"hpd(J_V({l1.name},{l2.name})) = J(hpd({l1.name}),hpd({l2.name}))"
            f" (x)_P(V1'+V2') Perf(P(V'))"
        )
    return ProjectedHpdStatement(
        projected=projected,
        lhs_hpd_length=lhs_hpd_length,
        rhs_kind=kind,
        rhs_description=description,
        rhs_rank=RankExpr.unknown(f"rank(hpd({projected.name}))"),
        dual_factor_lengths=(n1, n2),
        parameters={
            "target_rank": target_rank,
            "join_length": join.ladder.length,
            "self_join": int(l1.name == l2.name),
        },
    )
