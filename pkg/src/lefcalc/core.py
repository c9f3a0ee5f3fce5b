"""Core data model: Lefschetz ladders, the integer rank algebra with named
unknowns, and semiorthogonal-presentation values.

A ladder records the numerical shadow of a Lefschetz category over a
projective bundle of rank N: the primitive component ranks on the right side
(indices 0 .. m-1) and on the left side (indices 0, -1, .. 1-m).  Everything
downstream (joins, duality shapes, section decompositions) is computed from
these integers.  Rank is additive over semiorthogonal decompositions and
multiplicative over tensor products; that is the entire semantics.

All values are immutable; every operation is a pure function.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Mapping, Sequence, Union


class LadderError(Exception):
    """Base class for engine errors."""


class InvalidLadderError(LadderError):
    """An operation received a ladder that fails validation or a precondition."""


class UnresolvedReferenceError(LadderError):
    """A category expression refers to a ladder that is not in scope."""


# ---------------------------------------------------------------------------
# rank algebra


IntLike = Union[int, "RankExpr"]


class RankExpr:
    """Integer linear expression over named unknowns, kept in canonical form
    (zero coefficients are never stored, equality is coefficient equality)."""

    __slots__ = ("constant", "terms")

    def __init__(self, constant: int = 0, terms: Mapping[str, int] | None = None):
        if not isinstance(constant, int):
            raise TypeError(f"constant must be int, got {type(constant).__name__}")
        self.constant = constant
        cleaned = {}
        for name, coeff in (terms or {}).items():
            if not isinstance(coeff, int):
                raise TypeError(f"coefficient of {name!r} must be int")
            if coeff != 0:
                cleaned[name] = coeff
        self.terms = cleaned

    @classmethod
    def unknown(cls, name: str, coeff: int = 1) -> "RankExpr":
        return cls(0, {name: coeff})

    @classmethod
    def coerce(cls, value: IntLike) -> "RankExpr":
        if isinstance(value, RankExpr):
            return value
        return cls(value)

    @property
    def is_constant(self) -> bool:
        return not self.terms

    def as_int(self) -> int:
        if self.terms:
            raise ValueError(f"{self} contains unknowns {sorted(self.terms)}")
        return self.constant

    def substitute(self, values: Mapping[str, int]) -> "RankExpr":
        """Plug in integer values for some unknowns."""
        constant = self.constant
        terms = {}
        for name, coeff in self.terms.items():
            if name in values:
                constant += coeff * values[name]
            else:
                terms[name] = coeff
        return RankExpr(constant, terms)

    def __add__(self, other: IntLike) -> "RankExpr":
        other = RankExpr.coerce(other)
        terms = dict(self.terms)
        for name, coeff in other.terms.items():
            terms[name] = terms.get(name, 0) + coeff
        return RankExpr(self.constant + other.constant, terms)

    __radd__ = __add__

    def __neg__(self) -> "RankExpr":
        return RankExpr(-self.constant, {n: -c for n, c in self.terms.items()})

    def __sub__(self, other: IntLike) -> "RankExpr":
        return self + (-RankExpr.coerce(other))

    def __rsub__(self, other: IntLike) -> "RankExpr":
        return RankExpr.coerce(other) + (-self)

    def __mul__(self, other: IntLike) -> "RankExpr":
        other = RankExpr.coerce(other)
        # the algebra is linear: at least one factor must be unknown-free
        if self.terms and other.terms:
            raise ValueError(f"product of {self} and {other} is not linear")
        if other.terms:
            return other * self.constant
        k = other.constant
        return RankExpr(self.constant * k, {n: c * k for n, c in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = RankExpr(other)
        if not isinstance(other, RankExpr):
            return NotImplemented
        return self.constant == other.constant and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.constant, frozenset(self.terms.items())))

    def __str__(self) -> str:
        parts = []
        for name in sorted(self.terms):
            coeff = self.terms[name]
            if coeff == 1:
                parts.append(name)
            elif coeff == -1:
                parts.append(f"-{name}")
            else:
                parts.append(f"{coeff}*{name}")
        if self.constant or not parts:
            parts.append(str(self.constant))
        out = " + ".join(parts)
        return out.replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"RankExpr({self})"


class TwistVector:
    """Integer combination of named hyperplane classes ("H", "H'", "H1", ...),
    canonical (zero entries dropped)."""

    __slots__ = ("entries",)

    def __init__(self, entries: Mapping[str, int] | None = None):
        self.entries = {k: v for k, v in (entries or {}).items() if v != 0}

    @classmethod
    def zero(cls) -> "TwistVector":
        return cls()

    @classmethod
    def single(cls, name: str, amount: int) -> "TwistVector":
        return cls({name: amount})

    @property
    def is_zero(self) -> bool:
        return not self.entries

    def __add__(self, other: "TwistVector") -> "TwistVector":
        entries = dict(self.entries)
        for name, value in other.entries.items():
            entries[name] = entries.get(name, 0) + value
        return TwistVector(entries)

    def __neg__(self) -> "TwistVector":
        return TwistVector({n: -v for n, v in self.entries.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TwistVector):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self) -> int:
        return hash(frozenset(self.entries.items()))

    def __str__(self) -> str:
        if not self.entries:
            return "0"
        parts = []
        for name in sorted(self.entries):
            value = self.entries[name]
            if value == 1:
                parts.append(name)
            elif value == -1:
                parts.append(f"-{name}")
            else:
                parts.append(f"{value}{name}")
        return " + ".join(parts).replace("+ -", "- ")

    __repr__ = __str__


# ---------------------------------------------------------------------------
# blocks and category expressions


@dataclass(frozen=True)
class Block:
    """Atomic generator of a component (a line bundle, a tautological bundle,
    an even Clifford algebra, ...) decorated with its sheaf-level rank."""

    label: str
    rank: int = 1

    def __post_init__(self) -> None:
        if not self.label:
            raise ValueError("block label must be nonempty")
        if self.rank < 0:
            raise ValueError("block rank must be >= 0")

    def __str__(self) -> str:
        return self.label


def tensor_block(a: Block, b: Block) -> Block:
    return Block(f"{a.label} x {b.label}", a.rank * b.rank)


class CategoryExpr:
    """Symbolic category term; see the concrete forms below."""

    __slots__ = ()


@dataclass(frozen=True)
class Zero(CategoryExpr):
    def __str__(self) -> str:
        return "0"


ZERO = Zero()


@dataclass(frozen=True)
class Atom(CategoryExpr):
    block: Block

    def __str__(self) -> str:
        return self.block.label


@dataclass(frozen=True)
class Unknown(CategoryExpr):
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class LadderSuffix(CategoryExpr):
    """Lefschetz component of a named ladder: the suffix of primitives from
    `start` outward.  `side="right"` needs start >= 0, `side="left"` start <= 0."""

    ladder: str
    side: str
    start: int

    def __post_init__(self) -> None:
        if self.side not in ("right", "left"):
            raise ValueError(f"side must be 'right' or 'left', got {self.side!r}")
        if self.side == "right" and self.start < 0:
            raise ValueError("right suffix needs start >= 0")
        if self.side == "left" and self.start > 0:
            raise ValueError("left suffix needs start <= 0")

    def __str__(self) -> str:
        return f"{self.ladder}[{self.start}]"


@dataclass(frozen=True)
class Tensor(CategoryExpr):
    factors: tuple[CategoryExpr, ...]

    def __str__(self) -> str:
        return " (x) ".join(str(f) for f in self.factors)


def tensor(*factors: CategoryExpr) -> CategoryExpr:
    """Tensor product of expressions: flattens nesting, absorbs zeros,
    collapses a single factor."""
    flat: list[CategoryExpr] = []
    for f in factors:
        if isinstance(f, Tensor):
            flat.extend(f.factors)
        else:
            flat.append(f)
    if any(isinstance(f, Zero) for f in flat):
        return ZERO
    if not flat:
        raise ValueError("tensor of no factors")
    if len(flat) == 1:
        return flat[0]
    return Tensor(tuple(flat))


LadderScope = Mapping[str, "LefschetzLadder"]


def rank_of(expr: CategoryExpr, ladders: LadderScope | None = None) -> RankExpr:
    """Rank of a category expression: additive over suffix components,
    multiplicative over tensor factors.  Ladder references resolve through
    `ladders`; a suffix past the ladder length has rank 0."""
    if isinstance(expr, Zero):
        return RankExpr(0)
    if isinstance(expr, Atom):
        return RankExpr(expr.block.rank)
    if isinstance(expr, Unknown):
        return RankExpr.unknown(expr.name)
    if isinstance(expr, LadderSuffix):
        ladder = (ladders or {}).get(expr.ladder)
        if ladder is None:
            raise UnresolvedReferenceError(f"no ladder named {expr.ladder!r} in scope")
        ranks = component_ranks(ladder, expr.side)
        index = abs(expr.start)
        if index >= len(ranks):
            return RankExpr(0)
        return RankExpr(ranks[index])
    if isinstance(expr, Tensor):
        out = RankExpr(1)
        for factor in expr.factors:
            out = out * rank_of(factor, ladders)
        return out
    raise TypeError(f"not a category expression: {expr!r}")


# ---------------------------------------------------------------------------
# semiorthogonal presentations


@dataclass(frozen=True)
class SodComponent:
    """One component of a semiorthogonal presentation.  `origin` is
    informational only; `blocks` is optional display decoration carrying the
    sheaf-level generators when they are known."""

    expr: CategoryExpr
    twist: TwistVector = field(default_factory=TwistVector.zero)
    origin: str = ""
    blocks: tuple[Block, ...] | None = None

    def rank(self, ladders: LadderScope | None = None) -> RankExpr:
        return rank_of(self.expr, ladders)

    @property
    def block_rank(self) -> int | None:
        """Sum of decorated block ranks, or None when undecorated."""
        if self.blocks is None:
            return None
        return sum(b.rank for b in self.blocks)

    def shape_key(self, ladders: LadderScope | None = None) -> tuple[RankExpr, TwistVector]:
        return (self.rank(ladders), self.twist)


@dataclass(frozen=True)
class SodPresentation:
    components: tuple[SodComponent, ...]
    ambient: str | None = None

    def __iter__(self) -> Iterator[SodComponent]:
        return iter(self.components)

    def __len__(self) -> int:
        return len(self.components)

    def total_rank(self, ladders: LadderScope | None = None) -> RankExpr:
        out = RankExpr(0)
        for c in self.components:
            out = out + c.rank(ladders)
        return out

    def shape_keys(self, ladders: LadderScope | None = None):
        return tuple(c.shape_key(ladders) for c in self.components)


def sod_tensor(a: SodPresentation, b: SodPresentation) -> SodPresentation:
    """Pairwise tensor of two presentations in row-major order (an order
    extending the coordinate-wise partial order); twists add."""
    components = []
    for ca in a.components:
        for cb in b.components:
            blocks = None
            if ca.blocks is not None and cb.blocks is not None:
                blocks = tuple(tensor_block(x, y) for x in ca.blocks for y in cb.blocks)
            components.append(
                SodComponent(
                    expr=tensor(ca.expr, cb.expr),
                    twist=ca.twist + cb.twist,
                    origin=f"{ca.origin}(x){cb.origin}" if ca.origin or cb.origin else "",
                    blocks=blocks,
                )
            )
    ambient = None
    if a.ambient or b.ambient:
        ambient = f"{a.ambient or '?'} x {b.ambient or '?'}"
    return SodPresentation(tuple(components), ambient)


# ---------------------------------------------------------------------------
# ladders


BlockMap = Mapping[int, tuple[Block, ...]]


@dataclass(frozen=True)
class LefschetzLadder:
    """Numerical shadow of a Lefschetz category over a projective bundle of
    rank `ambient_rank`.

    `right_primitives[i]` is the rank of the i-th right primitive component;
    `left_primitives[k]` is the rank of the (-k)-th left primitive component
    (both lists run from the center outward).  When `left_primitives` is
    omitted it mirrors the right side, which covers every symmetric example;
    asymmetric input remains supported.

    Strongness is carried as an input flag, never inferred: admissibility of
    primitive components is not visible at rank level.

    `blocks` optionally decorates primitive components with their atomic
    generators: key i >= 0 names the i-th right primitive, key i < 0 the i-th
    left primitive.  Decoration never influences shape decisions.
    """

    name: str
    ambient_rank: int
    right_primitives: tuple[int, ...]
    left_primitives: tuple[int, ...] | None = None
    right_strong: bool = False
    left_strong: bool = False
    blocks: Mapping[int, tuple[Block, ...]] | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "right_primitives", tuple(self.right_primitives))
        if self.left_primitives is None:
            object.__setattr__(self, "left_primitives", self.right_primitives)
        else:
            object.__setattr__(self, "left_primitives", tuple(self.left_primitives))
        if self.blocks is not None:
            normal = {int(k): tuple(v) for k, v in self.blocks.items()}
            object.__setattr__(self, "blocks", normal)

    @property
    def length(self) -> int:
        return len(self.right_primitives)

    @property
    def is_moderate(self) -> bool:
        return self.length < self.ambient_rank

    def primitive_blocks(self, index: int) -> tuple[Block, ...] | None:
        """Decoration of the primitive at a signed index, or None."""
        if self.blocks is None:
            return None
        return self.blocks.get(index)

    def shape(self) -> tuple[int, tuple[int, ...], tuple[int, ...]]:
        """(ambient rank, right component ranks, left component ranks);
        the data compared when two ladders are said to be equal as ladders."""
        return (
            self.ambient_rank,
            component_ranks(self, "right"),
            component_ranks(self, "left"),
        )

    def __str__(self) -> str:
        return f"{self.name}(N={self.ambient_rank}, p={list(self.right_primitives)})"


def _suffix_sums(values: Sequence[int]) -> tuple[int, ...]:
    out = []
    acc = 0
    for v in reversed(values):
        acc += v
        out.append(acc)
    return tuple(reversed(out))


def heights_to_primitives(heights: Sequence[int]) -> tuple[int, ...]:
    """Inverse of component_ranks: successive differences of a weakly
    decreasing positive sequence."""
    hs = list(heights)
    return tuple(hs[i] - (hs[i + 1] if i + 1 < len(hs) else 0) for i in range(len(hs)))


@dataclass(frozen=True)
class ValidationReport:
    name: str
    problems: tuple[str, ...]
    moderate: bool
    right_strong: bool
    left_strong: bool
    length: int
    total_rank: int | None

    @property
    def is_valid(self) -> bool:
        return not self.problems


def validate_ladder(ladder: LefschetzLadder) -> ValidationReport:
    """Check every ladder invariant; the report lists each violation (an empty
    list means valid).  Moderateness and strongness ride along as metadata."""
    problems: list[str] = []
    p = ladder.right_primitives
    q = ladder.left_primitives
    m = len(p)
    if ladder.ambient_rank < 1:
        problems.append("ambient_rank must be >= 1")
    if m < 1:
        problems.append("right_primitives must be nonempty (length >= 1)")
    if any(v < 0 for v in p):
        problems.append("right primitive ranks must be >= 0")
    if any(v < 0 for v in q):
        problems.append("left primitive ranks must be >= 0")
    if m >= 1 and p[-1] <= 0:
        problems.append("outermost right primitive must be positive (the length is exact)")
    if len(q) != m:
        problems.append(f"left side has {len(q)} primitives, right side {m}; lengths must agree")
    elif m >= 1:
        if q[-1] <= 0:
            problems.append("outermost left primitive must be positive (the length is exact)")
        if q[0] != p[0]:
            problems.append(
                f"center primitives disagree: left {q[0]} vs right {p[0]}"
                " (the two center primitives differ by a line-bundle twist, so their ranks agree)"
            )
        if sum(q) != sum(p):
            problems.append(
                f"center component rank mismatch: right {sum(p)} vs left {sum(q)}"
                " (both sides decompose the same center)"
            )
        right_total = sum(r for r in _suffix_sums(p))
        left_total = sum(r for r in _suffix_sums(q))
        if right_total != left_total:
            problems.append(
                f"left/right total-rank sums {right_total} vs {left_total} differ"
            )
    if ladder.blocks is not None and len(q) == m:
        for index, blocks in sorted(ladder.blocks.items()):
            side = p if index >= 0 else q
            k = abs(index)
            if k >= m:
                problems.append(f"blocks[{index}] is outside the ladder (length {m})")
            elif len(blocks) != side[k]:
                problems.append(
                    f"blocks[{index}] lists {len(blocks)} generators but the primitive rank is {side[k]}"
                )
    total = None
    if not problems and m >= 1:
        total = sum(_suffix_sums(p))
    return ValidationReport(
        name=ladder.name,
        problems=tuple(problems),
        moderate=ladder.is_moderate,
        right_strong=ladder.right_strong,
        left_strong=ladder.left_strong,
        length=m,
        total_rank=total,
    )


def require_valid(ladder: LefschetzLadder) -> None:
    report = validate_ladder(ladder)
    if not report.is_valid:
        raise InvalidLadderError(f"invalid ladder {ladder.name!r}: " + "; ".join(report.problems))


def component_ranks(ladder: LefschetzLadder, side: str = "right") -> tuple[int, ...]:
    """Component ranks from the center outward: (r_0, ..., r_{m-1}) on the
    right, (r_0, r_{-1}, ..., r_{1-m}) on the left."""
    if side == "right":
        return _suffix_sums(ladder.right_primitives)
    if side == "left":
        return _suffix_sums(ladder.left_primitives)
    raise ValueError(f"side must be 'right' or 'left', got {side!r}")


def total_rank(ladder: LefschetzLadder) -> int:
    """Rank of the whole category: the sum of the right Lefschetz component
    ranks, equivalently sum_i (i+1) * p_i."""
    require_valid(ladder)
    return sum(component_ranks(ladder, "right"))


def shape_rows(ladder: LefschetzLadder, side: str = "right") -> tuple[int, ...]:
    """Row view of the component ranks as a partition: row k (1-based, up to
    the center rank) has length #{i : r_i >= k}.  The first row length is the
    ladder length; transposing returns the component ranks."""
    require_valid(ladder)
    heights = component_ranks(ladder, side)
    r0 = heights[0]
    return tuple(sum(1 for r in heights if r >= k) for k in range(1, r0 + 1))


def partition_transpose(parts: Sequence[int]) -> tuple[int, ...]:
    """Transpose of a weakly decreasing sequence of nonnegative integers."""
    if not parts or parts[0] == 0:
        return ()
    return tuple(sum(1 for p in parts if p >= k) for k in range(1, parts[0] + 1))


def component_blocks(ladder: LefschetzLadder, side: str, index: int) -> tuple[Block, ...] | None:
    """Blocks of a whole Lefschetz component (the union of its primitive
    decorations from `index` outward), or None if any contributing primitive
    is undecorated."""
    primitives = ladder.right_primitives if side == "right" else ladder.left_primitives
    sign = 1 if side == "right" else -1
    out: list[Block] = []
    for k in range(abs(index), len(primitives)):
        if primitives[k] == 0:
            continue
        decoration = ladder.primitive_blocks(sign * k)
        if decoration is None:
            return None
        out.extend(decoration)
    return tuple(out)


# ---------------------------------------------------------------------------
# identity records (the common report row shared by all checkers)


@dataclass(frozen=True)
class IdentityRecord:
    name: str
    lhs: object
    rhs: object
    passed: bool
    note: str = ""

    def as_dict(self) -> dict:
        out = {
            "name": self.name,
            "lhs": _jsonable(self.lhs),
            "rhs": _jsonable(self.rhs),
            "pass": self.passed,
        }
        if self.note:
            out["note"] = self.note
        return out


def identity(name: str, lhs: object, rhs: object, note: str = "") -> IdentityRecord:
    return IdentityRecord(name=name, lhs=lhs, rhs=rhs, passed=(lhs == rhs), note=note)


def _jsonable(value: object) -> object:
    if isinstance(value, (RankExpr, TwistVector)):
        return str(value)
    if isinstance(value, tuple):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    return value
