"""SVG drawings of trees and of flip sequences, one frame per tree."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .core import Edge, FlipSeq, NcTree, edge


@dataclass(frozen=True)
class RenderSpec:
    size: int = 320
    radius: float = 6.0
    labels: bool = True
    highlight: frozenset = field(default_factory=frozenset)

    @property
    def margin(self) -> float:
        return self.radius + (22 if self.labels else 6)


def vertex_position(k: int, n: int, spec: RenderSpec) -> tuple[float, float]:
    """Point ``k`` on the circle; ``1`` at the top, labels increasing clockwise."""
    c = spec.size / 2
    r = c - spec.margin
    theta = math.radians(90 - 360 * (k - 1) / n)
    # svg y grows downward
    return c + r * math.cos(theta), c - r * math.sin(theta)


def _fmt(x: float) -> str:
    s = f"{x:.2f}".rstrip("0").rstrip(".")
    return "0" if s == "-0" else s


def _line(p, q, style: str) -> str:
    return (
        f'<line x1="{_fmt(p[0])}" y1="{_fmt(p[1])}" x2="{_fmt(q[0])}" y2="{_fmt(q[1])}" {style}/>'
    )


def render_tree(
    tree: NcTree,
    spec: RenderSpec | None = None,
    removed: Edge | None = None,
    added: Edge | None = None,
    title: str | None = None,
) -> str:
    """SVG text for ``tree``; ``removed`` is drawn dashed and ``added`` bold."""
    spec = spec or RenderSpec()
    n = tree.n
    pos = {k: vertex_position(k, n, spec) for k in range(1, n + 1)}
    highlight = {edge(*e) for e in spec.highlight}
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{spec.size}" height="{spec.size}" '
        f'viewBox="0 0 {spec.size} {spec.size}">'
    ]
    if title:
        out.append(f"<title>{title}</title>")
    out.append(f'<rect width="{spec.size}" height="{spec.size}" fill="white"/>')
    # faint hull so the convex position reads at a glance
    hull = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in (pos[k] for k in range(1, n + 1)))
    out.append(f'<polygon points="{hull}" fill="none" stroke="#dddddd" stroke-width="1"/>')
    drawn = sorted(tree.edges | ({removed} if removed else set()))
    for e in drawn:
        if e == removed:
            style = 'stroke="#c0392b" stroke-width="2" stroke-dasharray="6,4"'
        elif e == added:
            style = 'stroke="#1f6fb2" stroke-width="4"'
        elif e in highlight:
            style = 'stroke="#e67e22" stroke-width="3"'
        else:
            style = 'stroke="black" stroke-width="2"'
        out.append(_line(pos[e[0]], pos[e[1]], style))
    for k in range(1, n + 1):
        x, y = pos[k]
        out.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="{_fmt(spec.radius)}" fill="black"/>')
        if spec.labels:
            c = spec.size / 2
            dx, dy = x - c, y - c
            norm = math.hypot(dx, dy) or 1.0
            off = spec.radius + 10
            lx, ly = x + dx / norm * off, y + dy / norm * off
            out.append(
                f'<text x="{_fmt(lx)}" y="{_fmt(ly)}" font-family="sans-serif" font-size="12" '
                f'text-anchor="middle" dominant-baseline="central">{k}</text>'
            )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_frames(seq: FlipSeq, spec: RenderSpec | None = None) -> list[str]:
    """``len(seq) + 1`` frames: frame 0 is the start tree, frame ``k`` the tree after flip ``k``.

    On frame ``k >= 1`` the edge that flip removed is ghosted in dashed and
    the edge it added is bold.
    """
    trees = list(seq.trees())
    frames = [render_tree(trees[0], spec, title="frame 0")]
    for k, flip in enumerate(seq.flips, start=1):
        frames.append(
            render_tree(trees[k], spec, removed=flip.removed, added=flip.added, title=f"frame {k}")
        )
    return frames
