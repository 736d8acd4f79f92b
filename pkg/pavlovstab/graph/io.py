from typing import Iterable, TextIO

from ..errors import GraphFormatError
from .constants import COMMENT_PREFIX
from .graph import Graph, canonical_edge


def _content_lines(lines: Iterable[str]) -> Iterable[tuple[int, list[str]]]:
    for lineno, line in enumerate(lines, start=1):
        line = line.strip()
        if not line or line.startswith(COMMENT_PREFIX):
            continue
        yield lineno, line.split()


def _parse_ints(fields: list[str], lineno: int) -> list[int]:
    try:
        return [int(f) for f in fields]
    except ValueError:
        raise GraphFormatError(f"Expected integers, got {' '.join(fields)!r}.", line=lineno) from None


def parse_graph(lines: Iterable[str], *, name: str = "") -> Graph:
    """
    Parse the graph text format.

    ```
    # comment
    n m
    u v
    ...
    ```

    ### Args
    `lines`
        Lines of text.
    `name`
        Name given to the graph.

    ### Returns
    `Graph` with edges in file order, each stored smaller endpoint first.

    ### Raises
    `GraphFormatError` naming the offending line.
    """
    rows = _content_lines(lines)
    header = next(rows, None)
    if header is None:
        raise GraphFormatError("Missing 'n m' header.")

    lineno, fields = header
    if len(fields) != 2:
        raise GraphFormatError("Header must be 'n m'.", line=lineno)
    n, m = _parse_ints(fields, lineno)
    if n < 0 or m < 0:
        raise GraphFormatError("Vertex and edge counts must be non-negative.", line=lineno)

    edges = []
    seen = set()
    for lineno, fields in rows:
        if len(fields) != 2:
            raise GraphFormatError("Edge must be 'u v'.", line=lineno)
        u, v = _parse_ints(fields, lineno)
        if u == v:
            raise GraphFormatError(f"Self-loop at vertex {u}.", line=lineno)
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"Vertex out of range 0..{n - 1}.", line=lineno)
        e = canonical_edge(u, v)
        if e in seen:
            raise GraphFormatError(f"Duplicate edge {e}.", line=lineno)
        seen.add(e)
        edges.append(e)

    if len(edges) != m:
        raise GraphFormatError(f"Header declares {m} edges but {len(edges)} were read.")
    return Graph(n, tuple(edges), name=name)


def read_graph(path: str) -> Graph:
    with open(path, "rt") as fh:
        return parse_graph(fh, name=path)


def write_graph(g: Graph, fh: TextIO) -> None:
    if g.name:
        fh.write(f"{COMMENT_PREFIX} {g.name}\n")
    fh.write(f"{g.n} {g.m}\n")
    for u, v in g.edges:
        fh.write(f"{u} {v}\n")
