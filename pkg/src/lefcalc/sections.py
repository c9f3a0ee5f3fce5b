"""Linear-section decompositions and the paired dual decompositions.

Cutting a ladder by a subspace of corank s keeps the components from index s
outward, twisted by 1H .. (m-s)H, behind one unknown piece K; the dual ladder
cut by the orthogonal subspace exposes the mirrored tail in front of an
unknown K', and the two unknowns are identified.  Ranks of base-changed
categories are never computed here: they depend on the geometry of the
section, so K and K' stay as named unknowns, while the tails are exact.

The nonlinear variants run the same bookkeeping through a categorical join
(of the inputs on one side and of their duals on the other).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .core import (
    IdentityRecord,
    InvalidLadderError,
    LefschetzLadder,
    RankExpr,
    SodComponent,
    SodPresentation,
    LadderSuffix,
    TwistVector,
    Unknown,
    component_blocks,
    identity,
    require_valid,
)
from .hpd import hpd_shape, _require_hpd_input
from .join import categorical_join, iterated_join


@dataclass(frozen=True)
class SectionPair:
    lhs: SodPresentation
    rhs: SodPresentation
    equation: tuple[RankExpr, RankExpr]
    parameters: Mapping[str, int]
    identities: tuple[IdentityRecord, ...]
    notes: tuple[str, ...] = ()
    scope: Mapping[str, LefschetzLadder] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(rec.passed for rec in self.identities)

    @property
    def is_pure_equivalence(self) -> bool:
        """True when both sides degenerate to the bare K = K' identification."""
        return len(self.lhs) == 1 and len(self.rhs) == 1


def linear_section(
    ladder: LefschetzLadder,
    corank: int,
    side: str = "right",
    hyperplane: str = "H",
    unknown: str | None = None,
) -> SodPresentation:
    """Decomposition of the base change of a ladder to a section of corank s.

    On the right side: [K, A_s(H), ..., A_{m-1}((m-s)H)]; the tail is empty
    once s >= m.  On the left side the mirrored components come first and the
    unknown sits last.
    """
    require_valid(ladder)
    n = ladder.ambient_rank
    if not 1 <= corank <= n - 1:
        raise InvalidLadderError(
            f"corank {corank} out of range 1..{n - 1} for ambient rank {n}"
        )
    m = ladder.length
    if side not in ("right", "left"):
        raise ValueError(f"side must be 'right' or 'left', got {side!r}")

    tail = []
    for i in range(corank, m):
        t = i - corank + 1
        if side == "right":
            expr = LadderSuffix(ladder.name, "right", i)
            twist = TwistVector.single(hyperplane, t)
        else:
            expr = LadderSuffix(ladder.name, "left", -i)
            twist = TwistVector.single(hyperplane, -t)
        tail.append(
            SodComponent(
                expr=expr,
                twist=twist,
                origin="section-tail",
                blocks=component_blocks(ladder, side, i),
            )
        )

    if unknown is None:
        unknown = "K" if side == "right" else "K'"
    k_comp = SodComponent(Unknown(unknown), TwistVector.zero(), origin="K-unknown")
    if side == "right":
        components = [k_comp] + tail
    else:
        components = list(reversed(tail)) + [k_comp]
    return SodPresentation(
        tuple(components),
        ambient=f"{ladder.name}_P(L), corank {corank} in N={n}",
    )


def _tail_bookkeeping(
    pair_name: str,
    lhs: SodPresentation,
    rhs: SodPresentation,
    m: int,
    s: int,
    n: int,
    r: int,
    hyperplane: str = "H",
    dual_hyperplane: str = "H'",
) -> list[IdentityRecord]:
    """Counts and twist runs forced by the two section displays."""
    records = [
        identity(f"{pair_name}:lhs-tail-count", len(lhs) - 1, max(0, m - s)),
        identity(f"{pair_name}:rhs-tail-count", len(rhs) - 1, max(0, n - r)),
    ]
    lhs_twists = [c.twist for c in lhs.components[1:]]
    records.append(
        identity(
            f"{pair_name}:lhs-twists",
            tuple(str(t) for t in lhs_twists),
            tuple(str(TwistVector.single(hyperplane, t)) for t in range(1, max(0, m - s) + 1)),
        )
    )
    rhs_twists = [c.twist for c in rhs.components[:-1]]
    records.append(
        identity(
            f"{pair_name}:rhs-twists",
            tuple(str(t) for t in rhs_twists),
            tuple(
                str(TwistVector.single(dual_hyperplane, -t))
                for t in range(max(0, n - r), 0, -1)
            ),
        )
    )
    return records


def hpd_section_pair(
    ladder: LefschetzLadder,
    subspace_rank: int,
    dual: LefschetzLadder | None = None,
) -> SectionPair:
    """Section of a ladder by a subspace of rank r paired with the section of
    its dual by the orthogonal subspace (corank s = N - r on this side, corank
    r on the dual side), with the two unknowns identified.

    A decorated `dual` ladder may be supplied (it must match the computed dual
    shape); otherwise the dual-partition shape is used, undecorated.
    """
    _require_hpd_input(ladder)
    n_ambient = ladder.ambient_rank
    if not 1 <= subspace_rank <= n_ambient - 1:
        raise InvalidLadderError(
            f"subspace rank {subspace_rank} out of range 1..{n_ambient - 1}"
        )
    s = n_ambient - subspace_rank
    shape = hpd_shape(ladder)
    if dual is None:
        dual = shape.ladder
    elif dual.shape() != shape.ladder.shape():
        raise InvalidLadderError(
            f"supplied dual {dual.name!r} does not match the dual shape of {ladder.name!r}"
        )
    lhs = linear_section(ladder, s, side="right", hyperplane="H", unknown="K")
    rhs = linear_section(dual, subspace_rank, side="left", hyperplane="H'", unknown="K'")
    m, n = ladder.length, shape.length
    records = _tail_bookkeeping(
        "section-pair", lhs, rhs, m=m, s=s, n=n, r=subspace_rank
    )
    return SectionPair(
        lhs=lhs,
        rhs=rhs,
        equation=(RankExpr.unknown("K"), RankExpr.unknown("K'")),
        parameters={
            "ambient_rank": n_ambient,
            "subspace_rank": subspace_rank,
            "corank": s,
            "length": m,
            "dual_length": n,
        },
        identities=tuple(records),
        scope={ladder.name: ladder, dual.name: dual},
    )


def nonlinear_pair(
    l1: LefschetzLadder, l2: LefschetzLadder, w_rank: int
) -> SectionPair:
    """Fiber product of two ladders over a shared ambient of rank N, described
    through the join: the join sectioned at corank N on one side, the join of
    the duals sectioned at corank N on the other, with K identified with K'.

    When both tails are empty (length of the join at most N on each side) the
    pair degenerates to a bare equivalence.
    """
    _require_hpd_input(l1)
    _require_hpd_input(l2)
    if not (l1.ambient_rank == l2.ambient_rank == w_rank):
        raise InvalidLadderError(
            f"ambient mismatch: the fiber product needs rank(V1) = rank(V2) = rank(W),"
            f" got {l1.ambient_rank}, {l2.ambient_rank}, {w_rank}"
        )
    join = categorical_join(l1, l2)
    d1, d2 = hpd_shape(l1), hpd_shape(l2)
    dual_join = categorical_join(d1.ladder, d2.ladder)
    m = join.ladder.length
    n = dual_join.ladder.length
    s = r = w_rank

    lhs = linear_section(join.ladder, s, side="right", hyperplane="H", unknown="K")
    rhs = linear_section(dual_join.ladder, r, side="left", hyperplane="H'", unknown="K'")
    records = _tail_bookkeeping("nonlinear", lhs, rhs, m=m, s=s, n=n, r=r)
    records.append(
        identity("nonlinear:dual-lengths-add", n, d1.length + d2.length)
    )
    return SectionPair(
        lhs=lhs,
        rhs=rhs,
        equation=(RankExpr.unknown("K"), RankExpr.unknown("K'")),
        parameters={
            "w_rank": w_rank,
            "corank": s,
            "subspace_rank": r,
            "length": m,
            "dual_length": n,
        },
        identities=tuple(records),
        scope={join.ladder.name: join.ladder, dual_join.ladder.name: dual_join.ladder},
    )


def iterated_nonlinear(
    ladders: Sequence[LefschetzLadder], w_rank: int
) -> SectionPair:
    """Fiber product of any number of ladders over a common subbundle of rank
    r: the iterated join sectioned at corank s = sum(N_k) - r against the
    iterated join of the duals sectioned at corank r.

    For more than two factors the dual side is reported purely as a
    presentation of the sectioned iterated join; no geometric reading of that
    side is claimed.
    """
    if len(ladders) < 2:
        raise InvalidLadderError("iterated sections need at least 2 ladders")
    for lad in ladders:
        _require_hpd_input(lad)
        if w_rank > lad.ambient_rank:
            raise InvalidLadderError(
                f"subspace rank {w_rank} cannot embed in {lad.name!r}"
                f" (ambient rank {lad.ambient_rank})"
            )
    if w_rank < 1:
        raise InvalidLadderError("subspace rank must be >= 1")
    total_ambient = sum(lad.ambient_rank for lad in ladders)
    s = total_ambient - w_rank
    join = iterated_join(list(ladders))
    duals = [hpd_shape(lad) for lad in ladders]
    dual_join = iterated_join([d.ladder for d in duals])
    m = join.ladder.length
    n = dual_join.ladder.length

    lhs = linear_section(join.ladder, s, side="right", hyperplane="H", unknown="K")
    rhs = linear_section(dual_join.ladder, w_rank, side="left", hyperplane="H'", unknown="K'")
    records = _tail_bookkeeping("iterated", lhs, rhs, m=m, s=s, n=n, r=w_rank)
    records.append(identity("iterated:dual-lengths-add", n, sum(d.length for d in duals)))
    notes = ()
    if len(ladders) > 2:
        notes = (
            "dual side reported as a section of the iterated join of duals;"
            " it is not a fiber product of the duals",
        )
    return SectionPair(
        lhs=lhs,
        rhs=rhs,
        equation=(RankExpr.unknown("K"), RankExpr.unknown("K'")),
        parameters={
            "w_rank": w_rank,
            "corank": s,
            "length": m,
            "dual_length": n,
        },
        identities=tuple(records),
        notes=notes,
        scope={join.ladder.name: join.ladder, dual_join.ladder.name: dual_join.ladder},
    )
