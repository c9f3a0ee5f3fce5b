"""JSON ladder documents.

Schema (a single object):

    {
      "name":             string,
      "ambient_rank":     integer >= 1,
      "right_primitives": [int, ...],          ranks from the center outward
      "left_primitives":  [int, ...],          optional; mirrors the right
                                               side when omitted; entry k is
                                               the rank at index -k
      "strong":           {"right": bool, "left": bool},   optional
      "blocks":           {"<signed index>": [{"label": str, "rank": int}]}
    }

Parsing produces a canonical validated ladder; errors carry the offending
field path.  serialize(parse(x)) is stable byte for byte.
"""

from __future__ import annotations

import json
from typing import Any, Mapping

from .core import Block, LadderError, LefschetzLadder, validate_ladder


class LadderFormatError(LadderError):
    """Malformed ladder document; the message starts with the field path."""


def _expect(condition: bool, path: str, message: str) -> None:
    if not condition:
        raise LadderFormatError(f"{path}: {message}")


def _int_list(value: Any, path: str) -> tuple[int, ...]:
    _expect(isinstance(value, list), path, "expected a list of integers")
    out = []
    for k, item in enumerate(value):
        _expect(
            isinstance(item, int) and not isinstance(item, bool),
            f"{path}[{k}]",
            "expected an integer",
        )
        out.append(item)
    return tuple(out)


def ladder_from_document(doc: Mapping[str, Any], path: str = "$") -> LefschetzLadder:
    _expect(isinstance(doc, Mapping), path, "expected a JSON object")
    known = {"name", "ambient_rank", "right_primitives", "left_primitives", "strong", "blocks"}
    for key in doc:
        _expect(key in known, f"{path}.{key}", "unknown field")

    name = doc.get("name", "ladder")
    _expect(isinstance(name, str) and name != "", f"{path}.name", "expected a nonempty string")

    _expect("ambient_rank" in doc, f"{path}.ambient_rank", "required field is missing")
    ambient = doc["ambient_rank"]
    _expect(
        isinstance(ambient, int) and not isinstance(ambient, bool),
        f"{path}.ambient_rank",
        "expected an integer",
    )
    _expect(ambient >= 1, f"{path}.ambient_rank", "ambient_rank must be >= 1")

    _expect("right_primitives" in doc, f"{path}.right_primitives", "required field is missing")
    right = _int_list(doc["right_primitives"], f"{path}.right_primitives")
    left = None
    if "left_primitives" in doc:
        left = _int_list(doc["left_primitives"], f"{path}.left_primitives")

    right_strong = left_strong = False
    if "strong" in doc:
        strong = doc["strong"]
        _expect(isinstance(strong, Mapping), f"{path}.strong", "expected an object")
        for key in strong:
            _expect(key in ("right", "left"), f"{path}.strong.{key}", "unknown flag")
            _expect(isinstance(strong[key], bool), f"{path}.strong.{key}", "expected a boolean")
        right_strong = bool(strong.get("right", False))
        left_strong = bool(strong.get("left", False))

    blocks = None
    if "blocks" in doc:
        raw = doc["blocks"]
        _expect(isinstance(raw, Mapping), f"{path}.blocks", "expected an object")
        blocks = {}
        for key, items in raw.items():
            bpath = f"{path}.blocks.{key}"
            try:
                index = int(key)
            except (TypeError, ValueError):
                raise LadderFormatError(f"{bpath}: key must be a signed integer index")
            _expect(isinstance(items, list), bpath, "expected a list of blocks")
            parsed = []
            for k, item in enumerate(items):
                ipath = f"{bpath}[{k}]"
                _expect(isinstance(item, Mapping), ipath, "expected a block object")
                label = item.get("label")
                _expect(isinstance(label, str) and label != "", f"{ipath}.label", "expected a nonempty string")
                rank = item.get("rank", 1)
                _expect(
                    isinstance(rank, int) and not isinstance(rank, bool) and rank >= 0,
                    f"{ipath}.rank",
                    "expected an integer >= 0",
                )
                parsed.append(Block(label, rank))
            blocks[index] = tuple(parsed)

    ladder = LefschetzLadder(
        name=name,
        ambient_rank=ambient,
        right_primitives=right,
        left_primitives=left,
        right_strong=right_strong,
        left_strong=left_strong,
        blocks=blocks,
    )
    report = validate_ladder(ladder)
    if not report.is_valid:
        raise LadderFormatError(f"{path}: invalid ladder: " + "; ".join(report.problems))
    return ladder


def parse_ladder(data: bytes | str) -> LefschetzLadder:
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise LadderFormatError(f"$: malformed JSON: {exc}") from exc
    return ladder_from_document(doc)


def ladder_to_document(ladder: LefschetzLadder) -> dict:
    doc: dict[str, Any] = {
        "name": ladder.name,
        "ambient_rank": ladder.ambient_rank,
        "right_primitives": list(ladder.right_primitives),
        "left_primitives": list(ladder.left_primitives),
        "strong": {"right": ladder.right_strong, "left": ladder.left_strong},
    }
    if ladder.blocks:
        doc["blocks"] = {
            str(index): [{"label": b.label, "rank": b.rank} for b in blocks]
            for index, blocks in sorted(ladder.blocks.items())
        }
    return doc


def dumps_ladder(ladder: LefschetzLadder) -> str:
    return json.dumps(ladder_to_document(ladder), indent=2, sort_keys=True) + "\n"
