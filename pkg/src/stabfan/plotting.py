"""Rank-2 pictures of an arrangement, drawn with matplotlib.

Every wall line is a separate artist whose SVG group id is
``wall_<x>_<y>`` (primitive direction, first nonzero entry positive), and
the boundary hyperplane is ``h_infinity``.  Output bytes depend only on the
inputs: the SVG hash salt and metadata are pinned.
"""
from __future__ import annotations

import csv
import io
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .errors import UnsupportedRank  # noqa: E402
from .fan import Arrangement, FanSlice, line_direction  # noqa: E402

VIEW = 10
_RC = {
    "svg.hashsalt": "stabfan",
    "svg.fonttype": "none",
    "path.simplify": False,
    "lines.linewidth": 0.8,
}


def _segment(direction):
    # long enough to leave the [-VIEW, VIEW]^2 window on both ends
    t = 2 * VIEW / max(abs(x) for x in direction)
    return [-t * direction[0], t * direction[0]], [-t * direction[1], t * direction[1]]


def h_infinity_direction(arr: Arrangement) -> tuple[int, int]:
    a, b = arr.delta_restriction()
    return line_direction((b, -a))


def figure(arr: Arrangement, fan: FanSlice):
    if len(arr.J) != 2:
        raise UnsupportedRank(f"rendering needs |J| = 2, got {len(arr.J)}")
    lines = sorted(arr.wall_lines(fan))
    with plt.rc_context(_RC):
        fig, ax = plt.subplots(figsize=(5, 5))
        for d in lines:
            xs, ys = _segment(d)
            ax.plot(xs, ys, color="black", gid=f"wall_{d[0]}_{d[1]}")
        xs, ys = _segment(h_infinity_direction(arr))
        ax.plot(xs, ys, color="tab:red", linestyle="--", gid="h_infinity")
        ax.set_xlim(-VIEW, VIEW)
        ax.set_ylim(-VIEW, VIEW)
        ax.set_aspect("equal")
        ax.set_xlabel(f"theta({arr.J[0]})")
        ax.set_ylabel(f"theta({arr.J[1]})")
        ax.set_title(f"{arr.diagram.name}, J = {{{', '.join(arr.J)}}}, radius {fan.radius}")
    return fig, lines


def render_svg(arr: Arrangement, fan: FanSlice) -> str:
    fig, _ = figure(arr, fan)
    buf = io.StringIO()
    with plt.rc_context(_RC):
        fig.savefig(buf, format="svg", metadata={"Date": None, "Creator": None})
    plt.close(fig)
    return buf.getvalue()


def wall_table(arr: Arrangement, fan: FanSlice) -> list[dict]:
    """One row per wall of a rank-2 slice: ray, spanned line, normal."""
    rows = []
    for wall in fan.walls():
        (ray,) = arr.face_rays(wall)
        rows.append(
            {
                "sign": "+" if wall.sign > 0 else "-",
                "ray": " ".join(str(x) for x in ray),
                "line": " ".join(str(x) for x in line_direction(ray)),
                "normal": " ".join(str(x) for x in arr.wall_normal(wall)),
                "word_length": wall.length,
                "frontier": wall.key in fan.frontier,
            }
        )
    return rows


def write_render(arr: Arrangement, fan: FanSlice, out: Path) -> tuple[Path, Path]:
    """Write the SVG to ``out`` and the wall table next to it as CSV."""
    out = Path(out)
    svg = render_svg(arr, fan)
    out.write_text(svg, encoding="utf-8")
    table = out.with_suffix(".walls.csv")
    rows = wall_table(arr, fan)
    with table.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(fh, fieldnames=["sign", "ray", "line", "normal", "word_length", "frontier"])
        writer.writeheader()
        writer.writerows(rows)
    return out, table
