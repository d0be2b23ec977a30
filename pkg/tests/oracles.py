"""Independent brute-force oracles and small-graph builders shared by tests."""

import numpy as np

from rlsa import EnergyModel, from_edge_list, generate_ba, generate_er


def triangle():
    return from_edge_list(3, [(0, 1), (1, 2), (0, 2)])


def path3():
    return from_edge_list(3, [(0, 1), (1, 2)])


def single_edge():
    return from_edge_list(2, [(0, 1)])


def all_bitvectors(n):
    """All 2**n binary vectors as an (2**n, n) int8 array."""
    masks = np.arange(2 ** n, dtype=np.uint32)
    return ((masks[:, None] >> np.arange(n)) & 1).astype(np.int8)


def flip_drop_oracle(model, X):
    """H(x) - H(flip_i(x)) for every row of X and every coordinate i."""
    X = np.atleast_2d(np.asarray(X))
    base = model.energy(X)
    out = np.empty(X.shape, dtype=np.float64)
    for i in range(X.shape[1]):
        flipped = X.copy()
        flipped[:, i] = 1 - flipped[:, i]
        out[:, i] = base - model.energy(flipped)
    return out


def exhaustive_min_energy(model):
    """Global minimum of H over all binary vectors (exponential; N <= 20)."""
    bits = all_bitvectors(model.num_nodes)
    energies = model.energy(bits)
    i = int(np.argmin(energies))
    return float(energies[i]), bits[i]


def mis_optimum_size(graph, beta=1.02):
    model = EnergyModel("mis", graph, beta=beta)
    bits = all_bitvectors(graph.num_nodes)
    feasible = model.violation(bits) == 0
    return int(bits.sum(axis=1)[feasible].max())


def maxcut_optimum_size(graph):
    model = EnergyModel("mcut", graph)
    bits = all_bitvectors(graph.num_nodes)
    return int(model.objective(bits).max())


def random_small_graph(rng, n_min=2, n_max=12):
    """Mixed ER/BA instance with a random size, driven by the given rng."""
    n = int(rng.integers(n_min, n_max + 1))
    seed = int(rng.integers(0, 2 ** 31))
    if n >= 3 and rng.random() < 0.5:
        m = int(rng.integers(1, min(3, n - 1) + 1))
        return generate_ba(n, m, seed)
    p = float(rng.uniform(0.1, 0.9))
    return generate_er(n, p, seed)
