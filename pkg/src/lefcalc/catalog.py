"""Built-in example ladders and their regression suite.

Each entry freezes the facts its ladder must reproduce (total rank, dual
length and rank, the dual heights); catalog_verify replays every fact plus
the cross-entry identities (the double-Veronese ladder dualizes to the even
Clifford ladder, the two self-dual Grassmannian-type entries are fixed
points, projective subbundles dualize to their orthogonals, and duality
commutes with joins on all entry pairs).

The spinor entry ogr510 stores a derived primitive profile: the profile is
forced, among the homogeneous profiles over a rank-16 ambient, by shape
self-duality together with total rank 16.  The enumeration that pins it down
runs as part of the verification suite.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable

from .core import (
    Block,
    IdentityRecord,
    LadderError,
    LefschetzLadder,
    component_ranks,
    identity,
    total_rank,
    validate_ladder,
)
from .hpd import check_hpd_join_commute, hpd_length, hpd_rank, hpd_shape


class CatalogError(LadderError):
    """Unknown catalog name."""


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    ladder: LefschetzLadder
    provenance: str
    expected_facts: tuple[tuple[str, object], ...]


def _gr25() -> CatalogEntry:
    deco = (Block("O", 1), Block("U^v", 2))
    ladder = LefschetzLadder(
        name="gr25",
        ambient_rank=10,
        right_primitives=(0, 0, 0, 0, 2),
        right_strong=True,
        left_strong=True,
        blocks={4: deco, -4: deco},
    )
    return CatalogEntry(
        name="gr25",
        ladder=ladder,
        provenance="Grassmannian of planes in a 5-space, Pluecker-embedded;"
        " five components spanned by O and the dual tautological bundle",
        expected_facts=(
            ("total_rank", 10),
            ("hpd_length", 5),
            ("hpd_rank", 10),
            ("heights", (2, 2, 2, 2, 2)),
            ("dual_heights", (2, 2, 2, 2, 2)),  # self-dual shape
        ),
    )


def _ogr510() -> CatalogEntry:
    ladder = LefschetzLadder(
        name="ogr510",
        ambient_rank=16,
        right_primitives=(0, 0, 0, 0, 0, 0, 0, 2),
        right_strong=True,
        left_strong=True,
    )
    return CatalogEntry(
        name="ogr510",
        ladder=ladder,
        provenance="spinor 10-fold in the projectivized half-spinor 16-space;"
        " derived profile, pinned by self-duality plus total rank 16"
        " (see the homogeneous-profile enumeration in catalog_verify)",
        expected_facts=(
            ("total_rank", 16),
            ("hpd_length", 8),
            ("hpd_rank", 16),
            ("heights", (2,) * 8),
            ("dual_heights", (2,) * 8),
        ),
    )


def _veronese_p2() -> CatalogEntry:
    ladder = LefschetzLadder(
        name="veronese_p2",
        ambient_rank=6,
        right_primitives=(1, 1),
        right_strong=True,
        left_strong=True,
    )
    return CatalogEntry(
        name="veronese_p2",
        ladder=ladder,
        provenance="projective plane under the double Veronese embedding,"
        " components (O, O(1)) then (O)",
        expected_facts=(
            ("total_rank", 3),
            ("hpd_length", 5),
            ("hpd_rank", 9),
            ("heights", (2, 1)),
            ("dual_heights", (2, 2, 2, 2, 1)),
        ),
    )


def _clifford_p5() -> CatalogEntry:
    cl0 = (Block("Cl0", 4),)
    cl1 = (Block("Cl-1", 4),)
    ladder = LefschetzLadder(
        name="clifford_p5",
        ambient_rank=6,
        right_primitives=(0, 0, 0, 1, 1),
        right_strong=True,
        left_strong=True,
        blocks={-4: cl0, -3: cl1, 4: cl0, 3: cl1},
    )
    return CatalogEntry(
        name="clifford_p5",
        ladder=ladder,
        provenance="even Clifford algebra of the universal conic over the dual"
        " 5-space; Cl0 = O + (2-forms)(-1) has sheaf rank 4, left components"
        " (Cl0) outermost then (Cl-1, Cl0)",
        expected_facts=(
            ("total_rank", 9),
            ("hpd_length", 2),
            ("hpd_rank", 3),
            ("heights", (2, 2, 2, 2, 1)),
            ("left_heights_display", (1, 2, 2, 2, 2)),
            ("dual_heights", (2, 1)),
        ),
    )


_FIXED = {
    "gr25": _gr25,
    "ogr510": _ogr510,
    "veronese_p2": _veronese_p2,
    "clifford_p5": _clifford_p5,
}

_PROJ_RE = re.compile(r"^proj_space\((\d+),\s*(\d+)\)$")


def proj_space(m: int, n: int) -> LefschetzLadder:
    """Projective subbundle of rank m inside rank n, standard structure."""
    if not 1 <= m:
        raise CatalogError(f"proj_space needs m >= 1, got {m}")
    return LefschetzLadder(
        name=f"proj_space({m},{n})",
        ambient_rank=n,
        right_primitives=(0,) * (m - 1) + (1,),
        right_strong=True,
        left_strong=True,
    )


def catalog_names() -> tuple[str, ...]:
    return tuple(_FIXED)


def catalog_get(name: str) -> CatalogEntry:
    """Fetch an entry by name; proj_space(m,N) is parametric."""
    match = _PROJ_RE.match(name.strip())
    if match:
        m, n = int(match.group(1)), int(match.group(2))
        ladder = proj_space(m, n)
        facts: tuple[tuple[str, object], ...] = (
            ("total_rank", m),
            ("heights", (1,) * m),
        )
        if m < n:
            facts += (
                ("hpd_length", n - m),
                ("hpd_rank", n - m),
                ("dual_heights", (1,) * (n - m)),
            )
        return CatalogEntry(
            name=ladder.name,
            ladder=ladder,
            provenance="projective subbundle with the standard structure",
            expected_facts=facts,
        )
    if name in _FIXED:
        return _FIXED[name]()
    raise CatalogError(
        f"unknown catalog name {name!r}; choose one of {', '.join(_FIXED)}"
        " or proj_space(m,N)"
    )


def _check_fact(entry: CatalogEntry, fact: str, expected: object) -> IdentityRecord:
    ladder = entry.ladder
    if fact == "total_rank":
        value: object = total_rank(ladder)
    elif fact == "hpd_length":
        value = hpd_length(ladder)
    elif fact == "hpd_rank":
        value = hpd_rank(ladder)
    elif fact == "heights":
        value = component_ranks(ladder, "right")
    elif fact == "left_heights_display":
        value = tuple(reversed(component_ranks(ladder, "left")))
    elif fact == "dual_heights":
        value = component_ranks(hpd_shape(ladder).ladder, "right")
    else:
        raise CatalogError(f"unknown fact {fact!r} on entry {entry.name!r}")
    return identity(f"{entry.name}:{fact}", value, expected)


def _self_dual_homogeneous_profiles(ambient: int, rank: int) -> list[tuple[int, ...]]:
    """Oracle for the derived spinor profile: all homogeneous (all components
    equal) moderate profiles over the given ambient with the given total rank
    whose dual shape is the same profile."""
    out = []
    for width in range(1, ambient):
        if rank % width:
            continue
        height = rank // width
        if height > ambient:
            continue
        ladder = LefschetzLadder(
            "candidate",
            ambient,
            (0,) * (width - 1) + (height,),
            right_strong=True,
            left_strong=True,
        )
        dual = hpd_shape(ladder).ladder
        if component_ranks(dual, "right") == component_ranks(ladder, "right"):
            out.append(component_ranks(ladder, "right"))
    return out


def catalog_verify(
    entries: Iterable[CatalogEntry] | None = None,
) -> tuple[IdentityRecord, ...]:
    """Replay every stored fact, the ladder validations, the cross-entry dual
    shapes, the derived-profile enumeration, and the join-duality commutation
    on all ordered pairs.  Cross checks only run between entries that are
    actually present in the given subset."""
    if entries is None:
        entries = [catalog_get(name) for name in catalog_names()]
    else:
        entries = list(entries)
    records: list[IdentityRecord] = []
    by_name = {e.name: e for e in entries}

    for entry in entries:
        report = validate_ladder(entry.ladder)
        records.append(
            IdentityRecord(
                name=f"{entry.name}:valid",
                lhs=list(report.problems),
                rhs=[],
                passed=report.is_valid,
            )
        )
        for fact, expected in entry.expected_facts:
            records.append(_check_fact(entry, fact, expected))

    if "veronese_p2" in by_name and "clifford_p5" in by_name:
        dual = hpd_shape(by_name["veronese_p2"].ladder).ladder
        records.append(
            identity(
                "veronese_p2:dual-shape-is-clifford_p5",
                dual.shape(),
                by_name["clifford_p5"].ladder.shape(),
            )
        )
    if "ogr510" in by_name:
        profiles = _self_dual_homogeneous_profiles(16, 16)
        records.append(
            identity(
                "ogr510:profile-enumeration",
                profiles,
                [component_ranks(by_name["ogr510"].ladder, "right")],
                note="unique self-dual homogeneous profile with rank 16 over rank 16",
            )
        )

    moderate = [
        e for e in entries if e.ladder.is_moderate and e.ladder.right_strong
    ]
    for e1 in moderate:
        for e2 in moderate:
            records.append(check_hpd_join_commute(e1.ladder, e2.ladder))
    return tuple(records)
