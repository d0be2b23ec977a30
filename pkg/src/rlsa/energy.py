"""Energy models over binary solution vectors for MIS, max-clique, max-cut, and QUBO.

Every model exposes the penalized energy H(x) to minimize, its closed-form
gradient, and the flip-drop vector Delta with Delta_i = (2x_i - 1) * grad_i.
All four energies are multilinear in the binary coordinates, so Delta_i is
exactly the energy decrease from flipping coordinate i.
"""

from __future__ import annotations

import numpy as np

from .graph import Graph

KINDS = ("mis", "mcl", "mcut", "qubo")


class EnergyModel:
    """Problem kind + graph + coefficients; all evaluation methods are pure.

    Kinds:
      * ``mis``  -- minus the selected-set size plus ``beta`` per selected
        adjacent pair; requires ``beta > 1`` so every local optimum is an
        independent set.
      * ``mcl``  -- minus the selected-set size plus ``beta`` per selected
        NON-adjacent pair (max clique); computed via the complement identity
        on the selected-pair count, never materializing the complement graph;
        requires ``beta > 1``.
      * ``mcut`` -- minus the cut size; ``beta`` is accepted but unused.
      * ``qubo`` -- ``linear . x + quad_scale * x^T A x`` with optional
        per-edge weights on A; ``beta`` is unused.

    Methods accept a single solution of shape (N,) or a batch of shape
    (B, N); batched calls return one value per row.
    """

    def __init__(
        self,
        kind: str,
        graph: Graph,
        beta: float = 1.02,
        linear=None,
        quad_scale: float | None = None,
        edge_weights=None,
    ):
        kind = str(kind).lower()
        if kind not in KINDS:
            raise ValueError(f"unknown problem kind {kind!r}, expected one of {KINDS}")
        self.kind = kind
        self.graph = graph
        self.beta = float(beta)
        if self.beta <= 0:
            raise ValueError(f"beta must be positive, got {beta}")
        if kind in ("mis", "mcl") and self.beta <= 1.0:
            raise ValueError(
                f"beta must exceed 1 for {kind} so local optima are feasible, got {beta}"
            )

        if kind == "qubo":
            if linear is None or quad_scale is None:
                raise ValueError("qubo models require both 'linear' and 'quad_scale'")
            self.linear = np.asarray(linear, dtype=np.float64)
            if self.linear.shape != (graph.num_nodes,):
                raise ValueError(
                    f"linear coefficients have shape {self.linear.shape}, "
                    f"expected ({graph.num_nodes},)"
                )
            self.quad_scale = float(quad_scale)
            self._A = _weighted_csr(graph, edge_weights)
        else:
            if linear is not None or quad_scale is not None or edge_weights is not None:
                raise ValueError(f"linear/quad_scale/edge_weights only apply to qubo, not {kind}")
            self.linear = None
            self.quad_scale = None
            self._A = graph.adjacency_csr()
        self._deg = graph.degrees().astype(np.float64)

    @property
    def num_nodes(self) -> int:
        return self.graph.num_nodes

    # -- evaluation ---------------------------------------------------------

    def energy(self, x):
        """H(x); float for a single solution, (B,) array for a batch."""
        X, single = self._as_batch(x)
        e = self._energy(X)
        return float(e[0]) if single else e

    def gradient(self, x):
        """Closed-form gradient of H at x, same shape as x."""
        X, single = self._as_batch(x)
        g = self._gradient(X)
        return g[0] if single else g

    def delta(self, x):
        """Flip-drop vector: delta_i = (2x_i - 1) * grad_i = H(x) - H(flip_i(x))."""
        X, single = self._as_batch(x)
        d = (2.0 * X - 1.0) * self._gradient(X)
        return d[0] if single else d

    def objective(self, x):
        """Problem objective (set/clique/cut size). Errors on infeasible mis/mcl and on qubo."""
        if self.kind == "qubo":
            raise ValueError("qubo models have no canonical objective")
        X, single = self._as_batch(x)
        if self.kind == "mcut":
            u, v = self._edge_cols()
            B = X.astype(np.int64)
            obj = (B[:, u] != B[:, v]).sum(axis=1)
        else:
            viol = self._violation(X)
            if (viol > 0).any():
                raise ValueError(
                    f"objective is undefined for infeasible {self.kind} solutions "
                    f"(violation={int(viol.max())})"
                )
            obj = X.sum(axis=1).astype(np.int64)
        return int(obj[0]) if single else obj

    def violation(self, x):
        """Count of violated constraints: selected adjacent pairs for mis,
        selected non-adjacent pairs for mcl, always 0 for mcut/qubo."""
        X, single = self._as_batch(x)
        viol = self._violation(X)
        return int(viol[0]) if single else viol

    # -- internals ----------------------------------------------------------

    def _as_batch(self, x):
        arr = np.asarray(x)
        if arr.ndim == 1:
            arr = arr[None, :]
            single = True
        elif arr.ndim == 2:
            single = False
        else:
            raise ValueError(f"solutions must be 1-D or 2-D, got ndim={arr.ndim}")
        if arr.shape[1] != self.num_nodes:
            raise ValueError(
                f"solution length {arr.shape[1]} does not match graph with "
                f"{self.num_nodes} nodes"
            )
        if not ((arr == 0) | (arr == 1)).all():
            raise ValueError("solution entries must all be 0 or 1")
        return arr.astype(np.float64, copy=False), single

    def _ax(self, X):
        # (B, N) -> (B, N); per-column CSR accumulation keeps each row's
        # result independent of the batch size.
        return (self._A @ X.T).T

    def _energy(self, X):
        if self.kind == "mis":
            s = X.sum(axis=1)
            quad = (X * self._ax(X)).sum(axis=1)
            return -s + 0.5 * self.beta * quad
        if self.kind == "mcl":
            s = X.sum(axis=1)
            quad = (X * self._ax(X)).sum(axis=1)
            return -s + 0.5 * self.beta * (s * s - s - quad)
        if self.kind == "mcut":
            quad = (X * self._ax(X)).sum(axis=1)
            return quad - (X * self._deg).sum(axis=1)
        s = (X * self.linear).sum(axis=1)
        quad = (X * self._ax(X)).sum(axis=1)
        return s + self.quad_scale * quad

    def _gradient(self, X):
        ax = self._ax(X)
        if self.kind == "mis":
            return self.beta * ax - 1.0
        if self.kind == "mcl":
            s = X.sum(axis=1)
            return self.beta * (s[:, None] - X - ax) - 1.0
        if self.kind == "mcut":
            return 2.0 * ax - self._deg
        return 2.0 * self.quad_scale * ax + self.linear

    def _edge_cols(self):
        edges = self.graph.edge_array()
        return edges[:, 0], edges[:, 1]

    def _violation(self, X):
        B = X.astype(np.int64)
        if self.kind == "mis":
            u, v = self._edge_cols()
            return (B[:, u] * B[:, v]).sum(axis=1)
        if self.kind == "mcl":
            u, v = self._edge_cols()
            s = B.sum(axis=1)
            return s * (s - 1) // 2 - (B[:, u] * B[:, v]).sum(axis=1)
        return np.zeros(X.shape[0], dtype=np.int64)

    def __repr__(self) -> str:
        return f"EnergyModel(kind={self.kind!r}, graph={self.graph!r}, beta={self.beta})"


def _weighted_csr(graph: Graph, edge_weights):
    """CSR adjacency with one weight per undirected edge (default all ones)."""
    if edge_weights is None:
        return graph.adjacency_csr()
    w = np.asarray(edge_weights, dtype=np.float64)
    if w.shape != (graph.num_edges,):
        raise ValueError(
            f"edge_weights has shape {w.shape}, expected ({graph.num_edges},) "
            "aligned with Graph.edge_array()"
        )
    from scipy.sparse import coo_matrix

    edges = graph.edge_array()
    rows = np.concatenate((edges[:, 0], edges[:, 1]))
    cols = np.concatenate((edges[:, 1], edges[:, 0]))
    data = np.concatenate((w, w))
    n = graph.num_nodes
    mat = coo_matrix((data, (rows, cols)), shape=(n, n)).tocsr()
    mat.sort_indices()
    return mat
