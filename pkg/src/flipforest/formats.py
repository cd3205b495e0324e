"""Plain-text tree (``.nct``) and flip-sequence (``.nfs``) files.

Tree file::

    # comment
    n 4
    1 2
    2 3
    3 4

Sequence file::

    n 4
    start
    1 2
    2 3
    3 4
    - 3 4 + 1 4
    - 2 3 + 1 3
"""

from __future__ import annotations

from pathlib import Path

from .core import FlipSeq, NcTree, make_flip
from .errors import FlipForestError


class ParseError(FlipForestError, ValueError):
    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def _parse_header(lines) -> int:
    try:
        lineno, line = next(lines)
    except StopIteration:
        raise ParseError("empty file") from None
    parts = line.split()
    if len(parts) != 2 or parts[0] != "n":
        raise ParseError("expected 'n <int>' header", lineno)
    try:
        n = int(parts[1])
    except ValueError:
        raise ParseError(f"bad point count {parts[1]!r}", lineno) from None
    if n < 2:
        raise ParseError("n must be at least 2", lineno)
    return n


def _parse_pair(parts, lineno):
    try:
        a, b = int(parts[0]), int(parts[1])
    except ValueError:
        raise ParseError(f"bad edge {' '.join(parts)!r}", lineno) from None
    if a == b:
        raise ParseError(f"self loop {a} {a}", lineno)
    return a, b


def parse_tree(text: str, check: bool = True) -> NcTree:
    lines = _content_lines(text)
    n = _parse_header(lines)
    edges = []
    for lineno, line in lines:
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"expected 'i j', got {line!r}", lineno)
        edges.append(_parse_pair(parts, lineno))
    if check:
        return NcTree.checked(n, edges)
    return NcTree(n, edges)


def format_tree(tree: NcTree) -> str:
    out = [f"n {tree.n}"]
    out += [f"{a} {b}" for a, b in sorted(tree.edges)]
    return "\n".join(out) + "\n"


def parse_sequence(text: str) -> FlipSeq:
    """Parse a sequence file; the start tree is validated, the flips are not replayed."""
    lines = _content_lines(text)
    n = _parse_header(lines)
    try:
        lineno, line = next(lines)
    except StopIteration:
        raise ParseError("missing 'start' block") from None
    if line != "start":
        raise ParseError("expected 'start'", lineno)
    edges, flips = [], []
    for lineno, line in lines:
        parts = line.split()
        if parts[0] == "-":
            if len(parts) != 6 or parts[3] != "+":
                raise ParseError(f"expected '- i j + k l', got {line!r}", lineno)
            flips.append(make_flip(_parse_pair(parts[1:3], lineno), _parse_pair(parts[4:6], lineno)))
        elif flips:
            raise ParseError("edge line after the first flip", lineno)
        elif len(parts) == 2:
            edges.append(_parse_pair(parts, lineno))
        else:
            raise ParseError(f"unrecognised line {line!r}", lineno)
    return FlipSeq(NcTree.checked(n, edges), tuple(flips))


def format_sequence(seq: FlipSeq) -> str:
    out = [f"n {seq.start.n}", "start"]
    out += [f"{a} {b}" for a, b in sorted(seq.start.edges)]
    for (a, b), (c, d) in seq.flips:
        out.append(f"- {a} {b} + {c} {d}")
    return "\n".join(out) + "\n"


def read_tree(path) -> NcTree:
    return parse_tree(Path(path).read_text())


def write_tree(path, tree: NcTree) -> None:
    Path(path).write_text(format_tree(tree))


def read_sequence(path) -> FlipSeq:
    return parse_sequence(Path(path).read_text())


def write_sequence(path, seq: FlipSeq) -> None:
    Path(path).write_text(format_sequence(seq))


def is_sequence_text(text: str) -> bool:
    """True if the text looks like a sequence file rather than a tree file."""
    for _, line in _content_lines(text):
        if line == "start":
            return True
    return False
