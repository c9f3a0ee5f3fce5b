"""Categorical and resolved joins of ladders.

The join of two ladders lives over the direct sum of their ambient bundles.
Its primitive components are assembled from the tensor grid of the factors'
primitives: the grid cell (i1, i2) holds the product piece of the two
primitives, and the i-th join primitive collects the antidiagonal
i1 + i2 = i - 1 (so the 0-th join primitive is always zero).  The mirrored
rule, with left primitives and i1 + i2 = i + 1, gives the left side.

Every join result carries a diagnostics list with the rank identities this
construction is known to satisfy; a failing record indicates corrupt input or
an engine bug, never a legitimate state.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .core import (
    Atom,
    Block,
    IdentityRecord,
    InvalidLadderError,
    LefschetzLadder,
    SodComponent,
    SodPresentation,
    LadderSuffix,
    TwistVector,
    component_ranks,
    identity,
    require_valid,
    tensor,
    tensor_block,
    total_rank,
)


@dataclass(frozen=True)
class GridCell:
    rank: int
    blocks: tuple[Block, ...] | None = None

    @property
    def label(self) -> str:
        if self.blocks is None:
            return ""
        return ", ".join(b.label for b in self.blocks)


@dataclass(frozen=True)
class PrimitiveGrid:
    """Tensor grid of right primitive components: rows are first-factor
    indices, columns second-factor indices."""

    cells: Mapping[tuple[int, int], GridCell]
    dims: tuple[int, int]

    def rank(self, i1: int, i2: int) -> int:
        cell = self.cells.get((i1, i2))
        return 0 if cell is None else cell.rank

    def antidiagonal_rank(self, c: int) -> int:
        return sum(cell.rank for (i1, i2), cell in self.cells.items() if i1 + i2 == c)


@dataclass(frozen=True)
class JoinPrimitives:
    grid: PrimitiveGrid
    j_right: tuple[int, ...]
    j_left: tuple[int, ...]


@dataclass(frozen=True)
class JoinResult:
    ladder: LefschetzLadder
    grid: PrimitiveGrid
    j_right: tuple[int, ...]
    j_left: tuple[int, ...]
    resolved_presentation: SodPresentation
    diagnostics: tuple[IdentityRecord, ...]

    @property
    def passed(self) -> bool:
        return all(rec.passed for rec in self.diagnostics)


def _primitive_grid(l1: LefschetzLadder, l2: LefschetzLadder, side: str) -> PrimitiveGrid:
    p1 = l1.right_primitives if side == "right" else l1.left_primitives
    p2 = l2.right_primitives if side == "right" else l2.left_primitives
    sign = 1 if side == "right" else -1
    cells = {}
    for i1, a in enumerate(p1):
        for i2, b in enumerate(p2):
            blocks = None
            b1 = l1.primitive_blocks(sign * i1)
            b2 = l2.primitive_blocks(sign * i2)
            if b1 is not None and b2 is not None:
                blocks = tuple(tensor_block(x, y) for x in b1 for y in b2)
            cells[(i1, i2)] = GridCell(rank=a * b, blocks=blocks)
    return PrimitiveGrid(cells, (len(p1), len(p2)))


def join_primitives(l1: LefschetzLadder, l2: LefschetzLadder) -> JoinPrimitives:
    """Right-side primitive grid, plus both antidiagonal rank sequences
    (j_right[i] for i = 0..m-1, j_left[k] for indices 0, -1, .., 1-m)."""
    require_valid(l1)
    require_valid(l2)
    m = l1.length + l2.length
    grid = _primitive_grid(l1, l2, "right")
    left_grid = _primitive_grid(l1, l2, "left")
    j_right = tuple(grid.antidiagonal_rank(i - 1) for i in range(m))
    j_left = tuple(left_grid.antidiagonal_rank(k - 1) for k in range(m))
    return JoinPrimitives(grid=grid, j_right=j_right, j_left=j_left)


def _diagonal_blocks(
    l1: LefschetzLadder, l2: LefschetzLadder, side: str, c: int
) -> tuple[Block, ...] | None:
    """Blocks on antidiagonal i1 + i2 = c, or None unless every nonzero cell
    is decorated on both factors."""
    p1 = l1.right_primitives if side == "right" else l1.left_primitives
    p2 = l2.right_primitives if side == "right" else l2.left_primitives
    sign = 1 if side == "right" else -1
    out: list[Block] = []
    for i1 in range(len(p1)):
        i2 = c - i1
        if not (0 <= i2 < len(p2)):
            continue
        if p1[i1] * p2[i2] == 0:
            continue
        b1 = l1.primitive_blocks(sign * i1)
        b2 = l2.primitive_blocks(sign * i2)
        if b1 is None or b2 is None:
            return None
        out.extend(tensor_block(x, y) for x in b1 for y in b2)
    return tuple(out)


def resolved_join_presentation(l1: LefschetzLadder, l2: LefschetzLadder) -> SodPresentation:
    """Decomposition of the resolved join: the categorical join first, then
    the pushforward terms from the two exceptional divisors.  The total rank
    is 2 * r1 * r2 because the resolved join is a projective line bundle over
    the product."""
    require_valid(l1)
    require_valid(l2)
    join_total = _join_ladder_total(l1, l2)
    components = [
        SodComponent(
            expr=Atom(Block(f"J({l1.name},{l2.name})", join_total)),
            twist=TwistVector.zero(),
            origin="join",
        )
    ]
    r1 = total_rank(l1)
    r2 = total_rank(l2)
    for i in range(1, l2.length):
        components.append(
            SodComponent(
                expr=tensor(Atom(Block(l1.name, r1)), LadderSuffix(l2.name, "right", i)),
                twist=TwistVector.single("H2", i),
                origin="eps1!",
            )
        )
    for i in range(1, l1.length):
        components.append(
            SodComponent(
                expr=tensor(LadderSuffix(l1.name, "right", i), Atom(Block(l2.name, r2))),
                twist=TwistVector.single("H1", i),
                origin="eps2!",
            )
        )
    return SodPresentation(tuple(components), ambient=f"P(V1+V2), N={l1.ambient_rank + l2.ambient_rank}")


def _join_ladder_total(l1: LefschetzLadder, l2: LefschetzLadder) -> int:
    t1, t2 = total_rank(l1), total_rank(l2)
    r1 = component_ranks(l1, "right")
    r2 = component_ranks(l2, "right")
    return 2 * t1 * t2 - t1 * sum(r2[1:]) - t2 * sum(r1[1:])


def categorical_join(
    l1: LefschetzLadder, l2: LefschetzLadder, name: str | None = None
) -> JoinResult:
    """Join ladder over rank N1 + N2, with full diagnostics."""
    prim = join_primitives(l1, l2)
    m = l1.length + l2.length
    name = name or f"J({l1.name},{l2.name})"

    blocks: dict[int, tuple[Block, ...]] = {}
    for i in range(m):
        if prim.j_right[i] > 0:
            deco = _diagonal_blocks(l1, l2, "right", i - 1)
            if deco is not None:
                blocks[i] = deco
        if prim.j_left[i] > 0:
            deco = _diagonal_blocks(l1, l2, "left", i - 1)
            if deco is not None and i > 0:
                blocks[-i] = deco

    ladder = LefschetzLadder(
        name=name,
        ambient_rank=l1.ambient_rank + l2.ambient_rank,
        right_primitives=prim.j_right,
        left_primitives=prim.j_left,
        right_strong=l1.right_strong and l2.right_strong,
        left_strong=l1.left_strong and l2.left_strong,
        blocks=blocks or None,
    )
    require_valid(ladder)

    resolved = resolved_join_presentation(l1, l2)
    scope = {l1.name: l1, l2.name: l2}
    r1 = component_ranks(l1, "right")
    r2 = component_ranks(l2, "right")
    jr = component_ranks(ladder, "right")
    jl = component_ranks(ladder, "left")
    t = total_rank(ladder)

    t1, t2 = total_rank(l1), total_rank(l2)
    diagnostics = [
        identity(
            "join-rank-conservation",
            t,
            2 * t1 * t2 - t1 * sum(r2[1:]) - t2 * sum(r1[1:]),
        ),
        identity("center-product", jr[0], r1[0] * r2[0]),
        identity("right-lefschetz-sum", sum(jr), t),
        identity("left-lefschetz-sum", sum(jl), t),
        identity("resolved-join-rank", resolved.total_rank(scope).as_int(), 2 * total_rank(l1) * total_rank(l2)),
        identity("length-additivity", ladder.length, l1.length + l2.length),
        identity(
            "moderateness-rule",
            ladder.is_moderate,
            l1.is_moderate or l2.is_moderate,
        ),
    ]
    for i in range(1, m):
        diagnostics.append(ji_alternate_check(l1, l2, i))
        diagnostics.append(ji_alternate_check(l1, l2, -i))

    return JoinResult(
        ladder=ladder,
        grid=prim.grid,
        j_right=prim.j_right,
        j_left=prim.j_left,
        resolved_presentation=resolved,
        diagnostics=tuple(diagnostics),
    )


def _rank_at(ranks: Sequence[int], i: int) -> int:
    return ranks[i] if 0 <= i < len(ranks) else 0


def ji_alternate_check(l1: LefschetzLadder, l2: LefschetzLadder, i: int) -> IdentityRecord:
    """Rank of the i-th join component computed two independent ways: as the
    grid antidiagonal tail, and via the case formulas that expand it in whole
    components of one factor against primitives of the other.  All expansions
    must agree; only rank equality is checked (their orderings differ)."""
    require_valid(l1)
    require_valid(l2)
    m1, m2 = l1.length, l2.length
    m = m1 + m2
    if not 1 <= abs(i) <= m - 1:
        raise InvalidLadderError(f"component index {i} out of range 1..{m - 1} (either sign)")

    if i > 0:
        p1, p2 = l1.right_primitives, l2.right_primitives
        r1, r2 = component_ranks(l1, "right"), component_ranks(l2, "right")
    else:
        p1, p2 = l1.left_primitives, l2.left_primitives
        r1, r2 = component_ranks(l1, "left"), component_ranks(l2, "left")
    k = abs(i)

    tail = sum(
        p1[i1] * p2[i2]
        for i1 in range(m1)
        for i2 in range(m2)
        if i1 + i2 >= k - 1
    )

    # expansion against primitives of the second factor
    if k <= m2:
        by_second = sum(_rank_at(r1, k - 1 - t) * p2[t] for t in range(k - 1)) + r1[0] * r2[k - 1]
    else:
        by_second = sum(_rank_at(r1, k - 1 - t) * p2[t] for t in range(m2))
    # expansion against primitives of the first factor
    if k <= m1:
        by_first = sum(p1[t] * _rank_at(r2, k - 1 - t) for t in range(k - 1)) + r1[k - 1] * r2[0]
    else:
        by_first = sum(p1[t] * _rank_at(r2, k - 1 - t) for t in range(m1))

    passed = tail == by_second == by_first
    return IdentityRecord(
        name=f"jcomp-alternate({i})",
        lhs=tail,
        rhs=(by_second, by_first),
        passed=passed,
    )


def iterated_join(
    ladders: Sequence[LefschetzLadder], name: str | None = None
) -> JoinResult:
    """Left fold of the binary join; the length is the sum of the lengths."""
    if len(ladders) < 2:
        raise InvalidLadderError("iterated join needs at least 2 ladders")
    result = categorical_join(ladders[0], ladders[1])
    for nxt in ladders[2:]:
        result = categorical_join(result.ladder, nxt)
    if name is not None:
        result = JoinResult(
            ladder=LefschetzLadder(
                name=name,
                ambient_rank=result.ladder.ambient_rank,
                right_primitives=result.ladder.right_primitives,
                left_primitives=result.ladder.left_primitives,
                right_strong=result.ladder.right_strong,
                left_strong=result.ladder.left_strong,
                blocks=result.ladder.blocks,
            ),
            grid=result.grid,
            j_right=result.j_right,
            j_left=result.j_left,
            resolved_presentation=result.resolved_presentation,
            diagnostics=result.diagnostics,
        )
    return result
