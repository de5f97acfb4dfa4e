"""Simple undirected graphs, named families, cut matrices and local complementation.

Vertex numbering per family (fixed so that reports are reproducible):

* ``path:n`` and ``cycle:n`` -- vertices ``0..n-1`` along the chain.
* ``complete:n`` and ``star:n`` -- vertex 0 is the star centre.
* ``grid:RxC:open|periodic`` -- row-major, vertex ``r*C + c``.
* ``honeycomb:RxC:open|periodic`` -- brick-wall layout of ``R x C`` unit cells
  with two vertices each; vertex ``2*(r*C + c) + s`` with ``s=0`` for the A
  site and ``s=1`` for the B site.  A(r,c) is joined to B(r,c), B(r,c-1) and
  B(r-1,c).
"""

from __future__ import annotations

import os
import re
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from .errors import InvalidInputError
from .gf2 import BitMatrix, popcount

DEFAULT_ORBIT_BUDGET = 10**6


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on vertices ``0..n-1``."""

    n: int
    adjacency: BitMatrix
    name: str = field(default="", compare=False)

    def __post_init__(self):
        adj = self.adjacency
        if adj.rows != self.n or adj.cols != self.n:
            raise InvalidInputError("adjacency must be n x n")
        for a, row in enumerate(adj.data):
            if (row >> a) & 1:
                raise InvalidInputError(f"self-loop at vertex {a}")
            r = row
            while r:
                low = r & -r
                b = low.bit_length() - 1
                if not (adj.data[b] >> a) & 1:
                    raise InvalidInputError(f"adjacency not symmetric at ({a}, {b})")
                r ^= low

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], name: str = "") -> Graph:
        if n < 1:
            raise InvalidInputError("graph needs at least one vertex")
        rows = [0] * n
        for u, v in edges:
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidInputError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise InvalidInputError(f"self-loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, BitMatrix(n, n, tuple(rows)), name)

    @property
    def rows(self) -> tuple[int, ...]:
        return self.adjacency.data

    def neighbors(self, a: int) -> list[int]:
        row = self.rows[a]
        return [b for b in range(self.n) if (row >> b) & 1]

    def degree(self, a: int) -> int:
        return popcount(self.rows[a])

    def degrees(self) -> list[int]:
        return [popcount(r) for r in self.rows]

    def min_degree(self) -> int:
        return min(self.degrees())

    def edges(self) -> list[tuple[int, int]]:
        return [(a, b) for a in range(self.n) for b in self.neighbors(a) if a < b]

    def has_edge(self, a: int, b: int) -> bool:
        return bool((self.rows[a] >> b) & 1)

    def is_connected(self) -> bool:
        seen = 1
        frontier = 1
        while frontier:
            nxt = 0
            f = frontier
            while f:
                low = f & -f
                nxt |= self.rows[low.bit_length() - 1]
                f ^= low
            frontier = nxt & ~seen
            seen |= nxt
        return seen == (1 << self.n) - 1

    def key(self) -> tuple[int, ...]:
        """Canonical key of the labelled graph (its packed adjacency rows)."""
        return self.rows

    def relabel(self, perm: Sequence[int]) -> Graph:
        """Graph with vertex ``a`` renamed to ``perm[a]``."""
        return Graph.from_edges(self.n, [(perm[a], perm[b]) for a, b in self.edges()])

    def __str__(self) -> str:
        return self.name or f"graph(n={self.n}, edges={len(self.edges())})"


def require_connected(G: Graph, min_n: int = 3) -> None:
    """Reject graphs outside the fully entangled setting (connected, ``n >= min_n``)."""
    if G.n < min_n:
        raise InvalidInputError(f"analysis requires n >= {min_n}, got n={G.n}")
    if not G.is_connected():
        raise InvalidInputError(
            f"{G} is disconnected; analyses assume a fully entangled (connected) graph state"
        )


# --------------------------------------------------------------------------
# families


def path(n: int) -> Graph:
    if n < 2:
        raise InvalidInputError("path needs n >= 2")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)], f"path:{n}")


def cycle(n: int) -> Graph:
    if n < 3:
        raise InvalidInputError("cycle needs n >= 3")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)], f"cycle:{n}")


def complete(n: int) -> Graph:
    if n < 2:
        raise InvalidInputError("complete graph needs n >= 2")
    return Graph.from_edges(n, combinations(range(n), 2), f"complete:{n}")


def star(n: int) -> Graph:
    if n < 2:
        raise InvalidInputError("star needs n >= 2")
    return Graph.from_edges(n, [(0, i) for i in range(1, n)], f"star:{n}")


def grid(rows: int, cols: int, periodic: bool = False) -> Graph:
    if rows < 2 or cols < 2:
        raise InvalidInputError("grid needs at least 2 rows and 2 columns")
    edges = set()
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            for rr, cc in ((r, c + 1), (r + 1, c)):
                if periodic:
                    rr, cc = rr % rows, cc % cols
                elif rr >= rows or cc >= cols:
                    continue
                w = rr * cols + cc
                if w != v:
                    edges.add((min(v, w), max(v, w)))
    bc = "periodic" if periodic else "open"
    return Graph.from_edges(rows * cols, sorted(edges), f"grid:{rows}x{cols}:{bc}")


def honeycomb(rows: int, cols: int, periodic: bool = False) -> Graph:
    if rows < 1 or cols < 1:
        raise InvalidInputError("honeycomb needs at least one unit cell")
    if periodic and (rows < 2 or cols < 2):
        raise InvalidInputError("periodic honeycomb needs at least 2x2 cells")

    def vid(r, c, s):
        return 2 * (r * cols + c) + s

    edges = set()
    for r in range(rows):
        for c in range(cols):
            a = vid(r, c, 0)
            edges.add((a, vid(r, c, 1)))
            for rr, cc in ((r, c - 1), (r - 1, c)):
                if periodic:
                    rr, cc = rr % rows, cc % cols
                elif rr < 0 or cc < 0:
                    continue
                b = vid(rr, cc, 1)
                edges.add((min(a, b), max(a, b)))
    bc = "periodic" if periodic else "open"
    return Graph.from_edges(2 * rows * cols, sorted(edges), f"honeycomb:{rows}x{cols}:{bc}")


_SIZED = {"path": path, "cycle": cycle, "complete": complete, "star": star}
_LATTICES = {"grid": grid, "honeycomb": honeycomb}
FAMILIES = tuple(_SIZED) + tuple(_LATTICES)


def family(name: str, *params) -> Graph:
    """Build a named graph family, e.g. ``family("grid", 3, 4, "periodic")``."""
    if name in _SIZED:
        if len(params) != 1:
            raise InvalidInputError(f"{name} takes one size parameter")
        return _SIZED[name](int(params[0]))
    if name in _LATTICES:
        if len(params) not in (2, 3):
            raise InvalidInputError(f"{name} takes rows, cols and optional boundary")
        bc = params[2] if len(params) == 3 else "open"
        if bc not in ("open", "periodic"):
            raise InvalidInputError(f"unknown boundary condition {bc!r}")
        return _LATTICES[name](int(params[0]), int(params[1]), bc == "periodic")
    raise InvalidInputError(f"unknown graph family {name!r}")


_FAMILY_RE = re.compile(r"^([a-z]+):(\d+)(?:x(\d+))?(?::(open|periodic))?$")


def parse_family(text: str) -> Graph:
    """Parse the compact family syntax: ``cycle:6``, ``grid:3x4:open``..."""
    m = _FAMILY_RE.match(text.strip())
    if not m:
        raise InvalidInputError(f"cannot parse graph family {text!r}")
    name, a, b, bc = m.groups()
    if name in _SIZED:
        if b is not None or bc is not None:
            raise InvalidInputError(f"{name} takes a single size, got {text!r}")
        return family(name, int(a))
    if b is None:
        raise InvalidInputError(f"{name} needs RxC dimensions, got {text!r}")
    return family(name, int(a), int(b), bc or "open")


def parse_edge_list(text: str, name: str = "") -> Graph:
    """Parse the edge-list format: first line ``n``, then ``u v`` pairs, ``#`` comments."""
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        raise InvalidInputError("empty edge list")
    try:
        n = int(lines[0])
        edges = []
        for line in lines[1:]:
            parts = line.split()
            if len(parts) != 2:
                raise ValueError(line)
            edges.append((int(parts[0]), int(parts[1])))
    except ValueError as exc:
        raise InvalidInputError(f"malformed edge list line: {exc}") from None
    return Graph.from_edges(n, edges, name)


def read_edge_list(path: str | os.PathLike) -> Graph:
    with open(path) as f:
        return parse_edge_list(f.read(), name=os.fspath(path))


def format_edge_list(G: Graph) -> str:
    lines = [str(G.n)] + [f"{u} {v}" for u, v in G.edges()]
    return "\n".join(lines) + "\n"


def load_graph(source: str) -> Graph:
    """Family string if it parses as one, otherwise an edge-list file path."""
    if _FAMILY_RE.match(source.strip()):
        return parse_family(source)
    if os.path.exists(source):
        return read_edge_list(source)
    raise InvalidInputError(f"{source!r} is neither a graph family nor an existing file")


# --------------------------------------------------------------------------
# cut matrices and local complementation


def submatrix_cut(G: Graph, A: Iterable[int]) -> BitMatrix:
    """Adjacency block between ``A`` (rows, ascending) and ``V \\ A`` (columns, ascending)."""
    A = sorted(set(A))
    if not A:
        raise InvalidInputError("subset A must be nonempty")
    if len(A) >= G.n:
        raise InvalidInputError("subset A must be a proper subset of V")
    if A[0] < 0 or A[-1] >= G.n:
        raise InvalidInputError("subset A contains vertices out of range")
    in_a = set(A)
    outside = [b for b in range(G.n) if b not in in_a]
    data = []
    for a in A:
        row = G.rows[a]
        data.append(sum(1 << j for j, b in enumerate(outside) if (row >> b) & 1))
    return BitMatrix(len(A), len(outside), tuple(data))


def cut_rows(G: Graph, A_mask: int) -> list[int]:
    """Rows of the cut matrix for a subset given as a bit mask, left in vertex columns.

    Column positions are not compressed; rank is unaffected.  This is the hot
    path for subset enumeration.
    """
    outside = ((1 << G.n) - 1) & ~A_mask
    rows = G.rows
    out = []
    m = A_mask
    while m:
        low = m & -m
        out.append(rows[low.bit_length() - 1] & outside)
        m ^= low
    return out


def _lc_rows(rows: tuple[int, ...], a: int) -> tuple[int, ...]:
    nbrs = rows[a]
    new = list(rows)
    m = nbrs
    while m:
        low = m & -m
        b = low.bit_length() - 1
        new[b] ^= nbrs & ~low
        m ^= low
    return tuple(new)


def local_complement(G: Graph, a: int) -> Graph:
    """Toggle every edge inside the neighbourhood of vertex ``a``."""
    if not 0 <= a < G.n:
        raise InvalidInputError(f"vertex {a} out of range")
    rows = _lc_rows(G.rows, a)
    return Graph(G.n, BitMatrix(G.n, G.n, rows), G.name)


def apply_local_complements(G: Graph, vertices: Iterable[int]) -> Graph:
    for a in vertices:
        G = local_complement(G, a)
    return G


@dataclass(frozen=True)
class OrbitResult:
    """Outcome of an LC-orbit minimum-degree search.

    ``exact`` is False when the budget ran out before the orbit was closed (or
    the lower bound of 1 reached); ``min_degree`` is then only an upper bound.
    """

    min_degree: int
    witness: tuple[int, ...]
    exact: bool
    visited: int

    @property
    def delta(self) -> int:
        return self.min_degree + 1


def lc_orbit(G: Graph, budget: int = DEFAULT_ORBIT_BUDGET) -> tuple[list[tuple[int, ...]], bool]:
    """Breadth-first closure of the labelled LC orbit; returns (keys, complete)."""
    start = G.key()
    seen = {start}
    order = [start]
    queue = deque([start])
    while queue:
        rows = queue.popleft()
        for a in range(G.n):
            nxt = _lc_rows(rows, a)
            if nxt not in seen:
                if len(seen) >= budget:
                    return order, False
                seen.add(nxt)
                order.append(nxt)
                queue.append(nxt)
    return order, True


def lc_orbit_min_degree(G: Graph, budget: int = DEFAULT_ORBIT_BUDGET) -> OrbitResult:
    """Minimum vertex degree over the LC orbit of a connected graph.

    Breadth-first search with the packed adjacency as visited-set key.  The
    search stops early once degree 1 is found, since local complementation
    preserves connectivity and no connected graph with ``n >= 2`` has an
    isolated vertex.
    """
    if G.n < 2 or not G.is_connected():
        raise InvalidInputError("LC orbit search requires a connected graph with n >= 2")

    def mindeg(rows):
        return min(popcount(r) for r in rows)

    start = G.key()
    parent: dict[tuple[int, ...], tuple[tuple[int, ...], int] | None] = {start: None}
    best_key, best = start, mindeg(start)
    queue = deque([start])
    exact = True
    while queue and best > 1:
        rows = queue.popleft()
        for a in range(G.n):
            nxt = _lc_rows(rows, a)
            if nxt in parent:
                continue
            if len(parent) >= budget:
                exact = False
                queue.clear()
                break
            parent[nxt] = (rows, a)
            queue.append(nxt)
            d = mindeg(nxt)
            if d < best:
                best_key, best = nxt, d
                if best == 1:
                    break

    witness = []
    k = best_key
    while parent[k] is not None:
        k, a = parent[k]
        witness.append(a)
    witness.reverse()
    return OrbitResult(best, tuple(witness), exact, len(parent))
