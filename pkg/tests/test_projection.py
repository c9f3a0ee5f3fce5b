import random

import pytest

from lefcalc.core import InvalidLadderError, LefschetzLadder, RankExpr, component_ranks
from lefcalc.projection import blowup_lefschetz, projected_join, projected_join_hpd
from lefcalc.sampling import random_moderate_ladder


def ladder(name, n, p, **kw):
    kw.setdefault("right_strong", True)
    kw.setdefault("left_strong", True)
    return LefschetzLadder(name, n, tuple(p), **kw)


def proj_space(m, n):
    return ladder(f"P({m},{n})", n, (0,) * (m - 1) + (1,))


GR25 = ladder("gr25", 10, (0, 0, 0, 0, 2))
VERONESE = ladder("veronese_p2", 6, (1, 1))


def test_blowup_projective_space():
    m, target = 3, 7
    pl = blowup_lefschetz(proj_space(m, 9), target)
    u = RankExpr.unknown(pl.unknown)
    assert pl.length == target - 1
    assert pl.heights[:m] == tuple(RankExpr(1) + u for _ in range(m))
    assert pl.heights[m:] == tuple(u for _ in range(target - 1 - m))
    assert pl.passed


def test_blowup_veronese_to_rank4():
    pl = blowup_lefschetz(VERONESE, 4)
    u = RankExpr.unknown(pl.unknown)
    assert pl.length == 3
    assert list(pl.heights) == [RankExpr(2) + u, RankExpr(1) + u, u]
    assert pl.total_rank() == RankExpr(3) + u * 3


def test_blowup_trivial_projection_specializes_to_source():
    pl = blowup_lefschetz(VERONESE, 6)  # no actual center: u = 0
    back = pl.specialize(0)
    assert component_ranks(back, "right") == component_ranks(VERONESE, "right")
    assert back.length == VERONESE.length


def test_blowup_hypothesis_boundary():
    with pytest.raises(InvalidLadderError):
        blowup_lefschetz(VERONESE, 2)  # length 2 not < 2
    with pytest.raises(InvalidLadderError):
        blowup_lefschetz(VERONESE, 7)  # cannot project to a larger ambient


def test_blowup_random_total_rank_identity():
    rng = random.Random(5)
    for _ in range(100):
        lad = random_moderate_ladder(rng, max_ambient=12)
        target = rng.randint(lad.length + 1, lad.ambient_rank)
        pl = blowup_lefschetz(lad, target)
        u = RankExpr.unknown(pl.unknown)
        assert pl.total_rank() == RankExpr(sum(component_ranks(lad, "right"))) + u * (target - 1)
        back = pl.specialize(0)
        assert component_ranks(back, "right") == component_ranks(lad, "right")
        assert pl.passed


def test_projected_join_veronese_pair():
    pl, join = projected_join(VERONESE, VERONESE, 6)
    u = RankExpr.unknown(pl.unknown)
    assert pl.length == 5
    # center of the join is the product of the factor centers, 2 * 2
    assert pl.center == RankExpr(4) + u
    assert pl.is_moderate


def test_projected_join_minimal():
    pl, _ = projected_join(proj_space(1, 3), proj_space(1, 3), 3)
    assert pl.length == 2


def test_projected_join_hypothesis_boundary():
    with pytest.raises(InvalidLadderError):
        projected_join(GR25, GR25, 10)  # lengths add to exactly 10


def test_projected_join_hpd_same_ambient():
    stmt = projected_join_hpd(proj_space(1, 3), proj_space(1, 3), 3)
    assert stmt.rhs_kind == "tensor-of-duals"
    assert stmt.dual_factor_lengths == (2, 2)
    assert not stmt.rhs_rank.is_constant
    # join primitives (0, 1): the center run is 2, so dual length is 3 - 2
    assert stmt.lhs_hpd_length == 1


def test_projected_join_hpd_self_join_statement():
    stmt = projected_join_hpd(VERONESE, VERONESE, 6)
    assert stmt.parameters["self_join"] == 1
    assert stmt.rhs_kind == "tensor-of-duals"
    assert "hpd(veronese_p2)" in stmt.rhs_description


def test_projected_join_hpd_general_case():
    stmt = projected_join_hpd(VERONESE, proj_space(1, 4), 4)
    assert stmt.rhs_kind == "base-changed-join-of-duals"
    assert "J(hpd(veronese_p2),hpd(P(1,4)))" in stmt.rhs_description
