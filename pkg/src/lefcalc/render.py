"""Monospaced rendering of primitive grids.

Rows are the first factor's primitive indices, columns the second factor's;
each cell shows the rank of the tensor piece, and the antidiagonal legend
maps cells to the join components they assemble (cell (i1, i2) feeds the
component of index i1 + i2 + 1).  Output is plain ASCII and byte-for-byte
deterministic for equal inputs.
"""

from __future__ import annotations

from .join import JoinResult, PrimitiveGrid


def render_grid(grid_or_join: PrimitiveGrid | JoinResult) -> str:
    if isinstance(grid_or_join, JoinResult):
        grid = grid_or_join.grid
        j_right: tuple[int, ...] | None = grid_or_join.j_right
        j_left: tuple[int, ...] | None = grid_or_join.j_left
    else:
        grid = grid_or_join
        j_right = j_left = None

    m1, m2 = grid.dims
    lines = ["primitive grid: cell (i1,i2) feeds the join component j[i1+i2+1]"]
    if m1 == 0 or m2 == 0:
        lines.append("(empty grid)")
        return "\n".join(lines) + "\n"

    headers = [f"i2={j}" for j in range(m2)]
    width = max(4, *(len(h) for h in headers))
    for i1 in range(m1):
        width = max(width, *(len(str(grid.rank(i1, i2))) for i2 in range(m2)))
    row_label = max(len(f"i1={m1 - 1}"), 2)

    lines.append(" " * row_label + "  " + "  ".join(h.rjust(width) for h in headers))
    for i1 in range(m1):
        cells = "  ".join(str(grid.rank(i1, i2)).rjust(width) for i2 in range(m2))
        lines.append(f"i1={i1}".rjust(row_label) + "  " + cells)

    if j_right is not None:
        lines.append("j (right): " + "  ".join(f"j[{i}]={v}" for i, v in enumerate(j_right)))
    if j_left is not None:
        lines.append("j (left):  " + "  ".join(f"j[{-i}]={v}" for i, v in enumerate(j_left)))

    labelled = [
        (key, cell)
        for key, cell in sorted(grid.cells.items())
        if cell.blocks is not None and cell.rank > 0
    ]
    if labelled:
        lines.append("cell generators:")
        for (i1, i2), cell in labelled:
            lines.append(f"  ({i1},{i2}): {cell.label}")
    return "\n".join(lines) + "\n"
