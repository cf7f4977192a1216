"""Plain-text file formats.

Matroid files: line 1 is ``m r``, line 2 the keyword ``bases`` or
``circuits``, then one set per line as strictly increasing space-separated
indices.  Graph files: first line the vertex count, then one ``u v`` edge
per line.  Blank lines and ``#`` comments are ignored everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .bitset import elements
from .errors import FormatError
from .hamilton import Graph
from .matroid import ExplicitMatroid
from .paving import CircuitFamily


@dataclass(frozen=True)
class MatroidFile:
    kind: str  # "bases" or "circuits"
    m: int
    r: int
    sets: tuple[int, ...]

    def to_matroid(self) -> ExplicitMatroid:
        if self.kind != "bases":
            raise FormatError("file does not hold a basis list")
        return ExplicitMatroid(self.m, self.r, self.sets)

    def to_family(self) -> CircuitFamily:
        if self.kind != "circuits":
            raise FormatError("file does not hold a circuit list")
        return CircuitFamily(self.m, self.r, self.sets)


def _content_lines(text: str) -> list[str]:
    out = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(line)
    return out


def _parse_set(line: str, m: int) -> int:
    try:
        idx = [int(tok) for tok in line.split()]
    except ValueError as exc:
        raise FormatError(f"bad set line {line!r}") from exc
    if idx != sorted(set(idx)):
        raise FormatError(f"set line not strictly increasing: {line!r}")
    if any(not 0 <= i < m for i in idx):
        raise FormatError(f"index outside 0..{m - 1} in line {line!r}")
    return sum(1 << i for i in idx)


def parse_matroid(text: str) -> MatroidFile:
    lines = _content_lines(text)
    if len(lines) < 2:
        raise FormatError("matroid file needs a header line and a keyword line")
    header = lines[0].split()
    if len(header) != 2:
        raise FormatError(f"header must be 'm r', got {lines[0]!r}")
    try:
        m, r = int(header[0]), int(header[1])
    except ValueError as exc:
        raise FormatError(f"header must be 'm r', got {lines[0]!r}") from exc
    kind = lines[1]
    if kind not in ("bases", "circuits"):
        raise FormatError(f"keyword must be 'bases' or 'circuits', got {kind!r}")
    sets = tuple(_parse_set(line, m) for line in lines[2:])
    return MatroidFile(kind, m, r, sets)


def read_matroid_file(path) -> MatroidFile:
    return parse_matroid(Path(path).read_text())


def format_matroid(kind: str, m: int, r: int, sets) -> str:
    if kind not in ("bases", "circuits"):
        raise FormatError(f"keyword must be 'bases' or 'circuits', got {kind!r}")
    lines = [f"{m} {r}", kind]
    for mask in sorted(sets, key=elements):
        lines.append(" ".join(str(i) for i in elements(mask)))
    return "\n".join(lines) + "\n"


def write_matroid_file(path, kind: str, m: int, r: int, sets) -> None:
    Path(path).write_text(format_matroid(kind, m, r, sets))


def write_family_file(path, fam: CircuitFamily) -> None:
    write_matroid_file(path, "circuits", fam.m, fam.r, fam.circuits)


def write_bases_file(path, matroid: ExplicitMatroid) -> None:
    write_matroid_file(path, "bases", matroid.m, matroid.r, matroid.bases)


def parse_graph(text: str) -> Graph:
    lines = _content_lines(text)
    if not lines:
        raise FormatError("graph file is empty")
    try:
        n = int(lines[0])
    except ValueError as exc:
        raise FormatError(f"first line must be the vertex count, got {lines[0]!r}") from exc
    edges = []
    for line in lines[1:]:
        toks = line.split()
        if len(toks) != 2:
            raise FormatError(f"edge line must be 'u v', got {line!r}")
        try:
            u, v = int(toks[0]), int(toks[1])
        except ValueError as exc:
            raise FormatError(f"edge line must be 'u v', got {line!r}") from exc
        edges.append((u, v))
    return Graph(n, tuple(edges))


def read_graph_file(path) -> Graph:
    return parse_graph(Path(path).read_text())


def write_graph_file(path, g: Graph) -> None:
    lines = [str(g.n)] + [f"{u} {v}" for u, v in g.edges]
    Path(path).write_text("\n".join(lines) + "\n")
