"""Undirected simple graphs in CSR form, random generators, and instance file I/O."""

from __future__ import annotations

import numpy as np


class Graph:
    """Immutable undirected simple graph stored as sorted CSR neighbor lists.

    ``offsets`` has length ``num_nodes + 1`` and ``neighbors`` has length
    ``2 * num_edges`` (each edge appears once per endpoint, neighbor lists
    sorted ascending). Use :func:`from_edge_list` or the generators below to
    construct canonical instances; a graph is safe to share across threads.
    """

    __slots__ = ("num_nodes", "offsets", "neighbors", "_edges", "_csr")

    def __init__(self, num_nodes: int, offsets, neighbors):
        self.num_nodes = int(num_nodes)
        self.offsets = np.asarray(offsets, dtype=np.int64)
        self.neighbors = np.asarray(neighbors, dtype=np.int32)
        self._edges = None
        self._csr = None

    @property
    def num_edges(self) -> int:
        return self.neighbors.size // 2

    def degrees(self) -> np.ndarray:
        return np.diff(self.offsets)

    def neighbors_of(self, node: int) -> np.ndarray:
        return self.neighbors[self.offsets[node]:self.offsets[node + 1]]

    def edge_array(self) -> np.ndarray:
        """Undirected edges as an (E, 2) array with u < v, lexicographically sorted."""
        if self._edges is None:
            src = np.repeat(
                np.arange(self.num_nodes, dtype=np.int32), self.degrees()
            )
            keep = src < self.neighbors
            self._edges = np.column_stack((src[keep], self.neighbors[keep]))
        return self._edges

    def adjacency_csr(self):
        """Adjacency matrix as a scipy CSR matrix with unit float weights (cached)."""
        if self._csr is None:
            from scipy.sparse import csr_matrix

            data = np.ones(self.neighbors.size, dtype=np.float64)
            self._csr = csr_matrix(
                (data, self.neighbors, self.offsets),
                shape=(self.num_nodes, self.num_nodes),
            )
        return self._csr

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self.num_nodes == other.num_nodes
            and np.array_equal(self.offsets, other.offsets)
            and np.array_equal(self.neighbors, other.neighbors)
        )

    def __repr__(self) -> str:
        return f"Graph(num_nodes={self.num_nodes}, num_edges={self.num_edges})"


def from_edge_list(num_nodes: int, edges) -> Graph:
    """Build a canonical Graph from unordered node pairs.

    Duplicate pairs (in either orientation) collapse to a single edge. Self
    loops and out-of-range endpoints raise ValueError.
    """
    n = int(num_nodes)
    if n < 0:
        raise ValueError(f"num_nodes must be nonnegative, got {num_nodes}")
    pairs = np.asarray(list(edges), dtype=np.int64).reshape(-1, 2)
    u, v = pairs[:, 0], pairs[:, 1]
    if pairs.size:
        bad = (u < 0) | (u >= n) | (v < 0) | (v >= n)
        if bad.any():
            i = int(np.flatnonzero(bad)[0])
            raise ValueError(
                f"edge ({u[i]}, {v[i]}) out of range for {n} nodes"
            )
        loops = u == v
        if loops.any():
            i = int(np.flatnonzero(loops)[0])
            raise ValueError(f"self loop ({u[i]}, {v[i]}) is not allowed")
    # Both directions, deduplicated and sorted via integer keys: src-major
    # order makes each neighbor list ascending by construction.
    src = np.concatenate((u, v))
    dst = np.concatenate((v, u))
    keys = np.unique(src * n + dst)
    src = keys // n
    dst = (keys % n).astype(np.int32)
    offsets = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.bincount(src, minlength=n), out=offsets[1:])
    return Graph(n, offsets, dst)


def generate_er(num_nodes: int, p: float, seed: int) -> Graph:
    """Sample an Erdos-Renyi G(n, p) graph.

    Every unordered pair is included independently with probability ``p``.
    Pairs are examined in lexicographic order with one uniform variate each,
    so output is byte-identical for a fixed (n, p, seed) across runs and
    platforms.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"edge probability must be in [0, 1], got {p}")
    rng = np.random.default_rng(seed)
    us = []
    vs = []
    for i in range(num_nodes - 1):
        row = rng.random(num_nodes - 1 - i)
        hits = np.flatnonzero(row < p)
        if hits.size:
            us.append(np.full(hits.size, i, dtype=np.int64))
            vs.append(hits + i + 1)
    if us:
        pairs = np.column_stack((np.concatenate(us), np.concatenate(vs)))
    else:
        pairs = np.empty((0, 2), dtype=np.int64)
    return from_edge_list(num_nodes, pairs)


def generate_ba(num_nodes: int, m: int, seed: int) -> Graph:
    """Sample a Barabasi-Albert preferential-attachment graph.

    Starts from ``m`` isolated nodes; each subsequent node attaches ``m``
    edges to distinct existing nodes drawn proportionally to degree (the
    first attachment step, where all degrees are zero, connects to all ``m``
    seed nodes). Edge count is exactly ``m * (num_nodes - m)``.
    """
    if not 1 <= m < num_nodes:
        raise ValueError(
            f"attachment count must satisfy 1 <= m < n, got m={m}, n={num_nodes}"
        )
    rng = np.random.default_rng(seed)
    targets = list(range(m))
    repeated = []  # one entry per unit of degree; uniform draws = preferential attachment
    edges = []
    for src in range(m, num_nodes):
        edges.extend((src, t) for t in targets)
        repeated.extend(targets)
        repeated.extend([src] * m)
        if src + 1 < num_nodes:
            chosen = []
            seen = set()
            while len(chosen) < m:
                cand = repeated[rng.integers(len(repeated))]
                if cand not in seen:
                    seen.add(cand)
                    chosen.append(cand)
            targets = chosen
    return from_edge_list(num_nodes, edges)


def parse_instance(text: str, fmt: str) -> Graph:
    """Parse an instance from text in ``"edge-list"`` or ``"dimacs"`` format."""
    if fmt == "edge-list":
        return _parse_edge_list(text)
    if fmt == "dimacs":
        return _parse_dimacs(text)
    raise ValueError(f"unknown instance format {fmt!r}")


def write_instance(graph: Graph, fmt: str) -> str:
    """Serialize a graph so that ``parse_instance(write_instance(g, f), f) == g``."""
    edges = graph.edge_array()
    if fmt == "edge-list":
        lines = [f"{graph.num_nodes} {graph.num_edges}"]
        lines.extend(f"{u} {v}" for u, v in edges)
    elif fmt == "dimacs":
        lines = [f"p edge {graph.num_nodes} {graph.num_edges}"]
        lines.extend(f"e {u + 1} {v + 1}" for u, v in edges)
    else:
        raise ValueError(f"unknown instance format {fmt!r}")
    return "\n".join(lines) + "\n"


def detect_format(text: str) -> str:
    """Guess the instance format: DIMACS lines start with 'c' or 'p'."""
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        return "dimacs" if line[0] in ("c", "p") else "edge-list"
    return "edge-list"


def read_instance(path, fmt: str | None = None) -> Graph:
    """Read an instance file, sniffing the format when ``fmt`` is None."""
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    if fmt is None:
        name = str(path).lower()
        if name.endswith((".dimacs", ".col", ".clq")):
            fmt = "dimacs"
        else:
            fmt = detect_format(text)
    return parse_instance(text, fmt)


def _int_field(token: str, lineno: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise ValueError(f"line {lineno}: expected integer {what}, got {token!r}") from None


def _parse_edge_list(text: str) -> Graph:
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append((lineno, line.split()))
    if not rows:
        raise ValueError("empty edge-list instance (missing 'N M' header)")
    lineno, head = rows[0]
    if len(head) != 2:
        raise ValueError(f"line {lineno}: expected header 'N M'")
    n = _int_field(head[0], lineno, "node count")
    m = _int_field(head[1], lineno, "edge count")
    if n < 0 or m < 0:
        raise ValueError(f"line {lineno}: header counts must be nonnegative")
    edges = []
    for lineno, tokens in rows[1:]:
        if len(tokens) != 2:
            raise ValueError(f"line {lineno}: expected edge 'u v'")
        u = _int_field(tokens[0], lineno, "node index")
        v = _int_field(tokens[1], lineno, "node index")
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"line {lineno}: edge ({u}, {v}) out of range for {n} nodes")
        if u == v:
            raise ValueError(f"line {lineno}: self loop ({u}, {v}) is not allowed")
        edges.append((u, v))
    if len(edges) != m:
        raise ValueError(f"header declares {m} edges but {len(edges)} edge lines found")
    return from_edge_list(n, edges)


def _parse_dimacs(text: str) -> Graph:
    n = None
    m = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line[0] == "c":
            continue
        tokens = line.split()
        if tokens[0] == "p":
            if n is not None:
                raise ValueError(f"line {lineno}: duplicate problem line")
            if len(tokens) != 4 or tokens[1] != "edge":
                raise ValueError(f"line {lineno}: expected 'p edge N M'")
            n = _int_field(tokens[2], lineno, "node count")
            m = _int_field(tokens[3], lineno, "edge count")
            if n < 0 or m < 0:
                raise ValueError(f"line {lineno}: problem counts must be nonnegative")
        elif tokens[0] == "e":
            if n is None:
                raise ValueError(f"line {lineno}: edge before 'p edge' line")
            if len(tokens) != 3:
                raise ValueError(f"line {lineno}: expected 'e u v'")
            u = _int_field(tokens[1], lineno, "node index")
            v = _int_field(tokens[2], lineno, "node index")
            if not (1 <= u <= n and 1 <= v <= n):
                raise ValueError(
                    f"line {lineno}: edge ({u}, {v}) out of range for {n} nodes (1-indexed)"
                )
            if u == v:
                raise ValueError(f"line {lineno}: self loop ({u}, {v}) is not allowed")
            edges.append((u - 1, v - 1))
        else:
            raise ValueError(f"line {lineno}: unrecognized line {line!r}")
    if n is None:
        raise ValueError("missing 'p edge N M' line")
    if len(edges) != m:
        raise ValueError(f"problem line declares {m} edges but {len(edges)} edge lines found")
    return from_edge_list(n, edges)
