import pytest
from hypothesis import given, strategies as st

from lefcalc.core import (
    Atom,
    Block,
    InvalidLadderError,
    LefschetzLadder,
    RankExpr,
    SodComponent,
    SodPresentation,
    Tensor,
    TwistVector,
    Unknown,
    UnresolvedReferenceError,
    ZERO,
    LadderSuffix,
    component_ranks,
    heights_to_primitives,
    partition_transpose,
    rank_of,
    shape_rows,
    sod_tensor,
    tensor,
    total_rank,
    validate_ladder,
)


def ladder(name, n, p, q=None, **kw):
    return LefschetzLadder(name, n, tuple(p), None if q is None else tuple(q), **kw)


GR25 = ladder("gr25", 10, (0, 0, 0, 0, 2))
VERONESE = ladder("veronese_p2", 6, (1, 1))
CLIFFORD = ladder("clifford_p5", 6, (0, 0, 0, 1, 1))


def proj_space(m, n):
    return ladder(f"proj_space({m},{n})", n, (0,) * (m - 1) + (1,))


# --- rank algebra ---------------------------------------------------------


def test_rank_expr_canonical_form():
    assert RankExpr(3, {"u": 0}) == RankExpr(3)
    assert RankExpr(0, {"u": 2}) != RankExpr(0, {"u": 3})
    assert RankExpr.unknown("u") + RankExpr.unknown("u", -1) == 0


def test_rank_expr_arithmetic():
    u = RankExpr.unknown("u")
    e = 2 * u + 3
    assert e - u == u + 3
    assert e.substitute({"u": 5}) == 13
    assert not (3 * u).is_constant
    with pytest.raises(ValueError):
        (u + 1).as_int()
    with pytest.raises(ValueError):
        u * u  # the algebra is linear


def test_rank_expr_str():
    assert str(RankExpr(0)) == "0"
    assert str(RankExpr.unknown("u") * 3 + 1) == "3*u + 1"
    assert str(RankExpr(0, {"u": -1})) == "-u"


small_ints = st.integers(min_value=-5, max_value=5)
exprs = st.builds(
    RankExpr,
    small_ints,
    st.dictionaries(st.sampled_from(["u", "v", "w"]), small_ints, max_size=3),
)


@given(exprs, exprs, exprs)
def test_rank_expr_equality_stable_under_arithmetic(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b - b == a
    assert (a + b) * 2 == a * 2 + b * 2


def test_twist_vector_canonical():
    assert TwistVector({"H": 0}) == TwistVector.zero()
    t = TwistVector.single("H", 2) + TwistVector.single("H'", -1)
    assert t == TwistVector({"H": 2, "H'": -1})
    assert (t + (-t)).is_zero
    assert str(TwistVector.single("H", 1)) == "H"
    assert str(TwistVector.single("H2", -3)) == "-3H2"


def test_block_invariants():
    with pytest.raises(ValueError):
        Block("", 1)
    with pytest.raises(ValueError):
        Block("O", -1)


# --- category expressions -------------------------------------------------


def test_tensor_normalization():
    a = Atom(Block("O", 1))
    b = Atom(Block("U^v", 2))
    t = tensor(a, tensor(b, a))
    assert isinstance(t, Tensor) and len(t.factors) == 3
    assert tensor(a, ZERO) is ZERO
    assert tensor(a) is a


def test_rank_of_examples():
    cl0 = Atom(Block("Cl0", 4))
    assert rank_of(tensor(cl0, cl0)) == 16
    assert rank_of(ZERO) == 0
    assert rank_of(tensor(Unknown("u"), Atom(Block("B", 3)))) == RankExpr.unknown("u") * 3


def test_rank_of_suffix_resolution():
    scope = {"gr25": GR25}
    assert rank_of(LadderSuffix("gr25", "right", 0), scope) == 2
    assert rank_of(LadderSuffix("gr25", "right", 4), scope) == 2
    assert rank_of(LadderSuffix("gr25", "right", 5), scope) == 0  # past the length
    assert rank_of(LadderSuffix("gr25", "left", -3), scope) == 2
    with pytest.raises(UnresolvedReferenceError):
        rank_of(LadderSuffix("nope", "right", 0))


def test_ladder_suffix_side_checks():
    with pytest.raises(ValueError):
        LadderSuffix("x", "right", -1)
    with pytest.raises(ValueError):
        LadderSuffix("x", "left", 1)


# --- ladder validation ----------------------------------------------------


def test_validate_gr25():
    report = validate_ladder(GR25)
    assert report.is_valid
    assert report.moderate
    assert report.total_rank == 10


def test_validate_boundary_not_moderate():
    report = validate_ladder(ladder("pt", 1, (1,)))
    assert report.is_valid
    assert not report.moderate


def test_validate_constructed_violation():
    bad = ladder("bad", 6, (1, 1), (1, 2))
    report = validate_ladder(bad)
    assert not report.is_valid
    assert any("3 vs 5" in p for p in report.problems)


def test_validate_exactness_and_negatives():
    assert not validate_ladder(ladder("z", 4, (1, 0))).is_valid
    assert not validate_ladder(ladder("n", 4, (-1, 2))).is_valid
    assert not validate_ladder(ladder("e", 4, ())).is_valid
    assert not validate_ladder(ladder("a", 0, (1,))).is_valid


def test_validate_center_mismatch():
    report = validate_ladder(ladder("c", 9, (0, 3, 1), (0, 0, 3)))
    assert not report.is_valid
    assert any("center" in p for p in report.problems)


def test_validate_block_decoration():
    good = ladder("g", 10, (0, 2), blocks={1: (Block("O"), Block("U^v", 2))})
    assert validate_ladder(good).is_valid
    bad = ladder("b", 10, (0, 2), blocks={1: (Block("O"),)})
    assert not validate_ladder(bad).is_valid


# --- component ranks and totals --------------------------------------------


def test_component_ranks_examples():
    assert component_ranks(VERONESE, "right") == (2, 1)
    assert component_ranks(proj_space(4, 6), "right") == (1, 1, 1, 1)
    assert component_ranks(ladder("one", 3, (2,)), "right") == (2,)


def test_total_rank_gr25():
    # five components, each generated by two objects
    oracle = sum([2] * 5)
    assert total_rank(GR25) == oracle


def test_total_rank_proj_space():
    for m in range(1, 6):
        assert total_rank(proj_space(m, 8)) == m


def test_total_rank_clifford():
    # component table: ranks 1,2,2,2,2 from the outermost in
    oracle = 1 + 2 + 2 + 2 + 2
    assert total_rank(CLIFFORD) == oracle


def test_total_rank_rejects_invalid():
    with pytest.raises(InvalidLadderError):
        total_rank(ladder("bad", 6, (1, 0)))


def _rows_by_cell_count(heights):
    # independent oracle: count Young-diagram cells row by row
    cells = {(i, k) for i, r in enumerate(heights) for k in range(r)}
    rows = []
    k = 0
    while any(c[1] == k for c in cells):
        rows.append(sum(1 for c in cells if c[1] == k))
        k += 1
    return tuple(rows)


def test_shape_rows_examples():
    assert shape_rows(GR25) == _rows_by_cell_count((2, 2, 2, 2, 2)) == (5, 5)
    assert shape_rows(VERONESE) == _rows_by_cell_count((2, 1)) == (2, 1)
    assert shape_rows(proj_space(3, 9)) == (3,)


@st.composite
def small_ladders(draw):
    n = draw(st.integers(min_value=1, max_value=12))
    m = draw(st.integers(min_value=1, max_value=min(n, 6)))
    p = [draw(st.integers(min_value=0, max_value=3)) for _ in range(m - 1)]
    p.append(draw(st.integers(min_value=1, max_value=3)))
    return LefschetzLadder("h", n, tuple(p))


@given(small_ladders())
def test_shape_rows_transpose_involution(lad):
    rows = shape_rows(lad, "right")
    assert partition_transpose(rows) == component_ranks(lad, "right")
    assert partition_transpose(partition_transpose(rows)) == rows


@given(small_ladders())
def test_left_right_totals_agree(lad):
    p = lad.right_primitives
    q = lad.left_primitives
    assert sum((i + 1) * v for i, v in enumerate(p)) == sum(
        (i + 1) * v for i, v in enumerate(q)
    )
    assert sum(component_ranks(lad, "right")) == total_rank(lad)


def test_heights_to_primitives_roundtrip():
    for lad in (GR25, VERONESE, CLIFFORD):
        heights = component_ranks(lad, "right")
        assert heights_to_primitives(heights) == lad.right_primitives


# --- presentations ----------------------------------------------------------


def atom(rank, label="B"):
    return SodComponent(Atom(Block(label, rank)))


def test_sod_tensor_counts_and_rank():
    a = SodPresentation((atom(1), atom(2)))
    b = SodPresentation((atom(1), atom(1), atom(3)))
    ab = sod_tensor(a, b)
    assert len(ab) == 6
    assert ab.total_rank() == a.total_rank() * b.total_rank()


def test_sod_tensor_veronese_grid():
    pieces = SodPresentation((atom(1, "a0"), atom(1, "a1")))
    grid = sod_tensor(pieces, pieces)
    assert len(grid) == 4
    assert all(c.rank() == 1 for c in grid)


def test_sod_tensor_row_major_order():
    a = SodPresentation((atom(1, "a0"), atom(1, "a1")))
    b = SodPresentation((atom(1, "b0"), atom(1, "b1"), atom(1, "b2")))
    ab = sod_tensor(a, b)
    assert [str(c.expr) for c in ab] == [
        "a0 (x) b0",
        "a0 (x) b1",
        "a0 (x) b2",
        "a1 (x) b0",
        "a1 (x) b1",
        "a1 (x) b2",
    ]


def test_sod_tensor_zero_absorbs():
    z = SodPresentation((SodComponent(ZERO),))
    a = SodPresentation((atom(2), atom(3)))
    az = sod_tensor(a, z)
    assert all(c.rank() == 0 for c in az)


def test_sod_tensor_twists_add():
    a = SodPresentation((SodComponent(Atom(Block("x")), TwistVector.single("H1", 1)),))
    b = SodPresentation((SodComponent(Atom(Block("y")), TwistVector.single("H2", 2)),))
    ab = sod_tensor(a, b)
    assert ab.components[0].twist == TwistVector({"H1": 1, "H2": 2})


def test_rank_homomorphism_over_concatenation():
    a = SodPresentation((atom(1), atom(4)))
    b = SodPresentation((atom(2),))
    joined = SodPresentation(a.components + b.components)
    assert joined.total_rank() == a.total_rank() + b.total_rank()
