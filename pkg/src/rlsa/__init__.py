"""Regularized Langevin simulated annealing for binary combinatorial optimization.

Solvers for maximum independent set, maximum clique, maximum cut, and
generic QUBO energies on undirected graphs: parallel annealed chains with
gradient-guided Bernoulli flips, a fixed-step-size Langevin baseline, greedy
feasibility decoding, and a primal-gap benchmark harness.
"""

from .energy import EnergyModel
from .graph import (
    Graph,
    from_edge_list,
    generate_ba,
    generate_er,
    parse_instance,
    read_instance,
    write_instance,
)
from .ld import LDConfig, ld_flip_probabilities, run_ld
from .postprocess import (
    GapRecord,
    Summary,
    gap_curve,
    gap_records,
    greedy_decode,
    primal_gap,
    summarize,
)
from .sampler import (
    ChainState,
    RunResult,
    SamplerConfig,
    Trajectory,
    chain_rng,
    flip_probabilities,
    kth_largest,
    make_chain_state,
    normalized_flip_probabilities,
    rlsa_step,
    run_rlsa,
    temperature,
)

__version__ = "0.1.0"

__all__ = [
    "ChainState",
    "EnergyModel",
    "GapRecord",
    "Graph",
    "LDConfig",
    "RunResult",
    "SamplerConfig",
    "Summary",
    "Trajectory",
    "chain_rng",
    "flip_probabilities",
    "from_edge_list",
    "gap_curve",
    "gap_records",
    "generate_ba",
    "generate_er",
    "greedy_decode",
    "kth_largest",
    "ld_flip_probabilities",
    "make_chain_state",
    "normalized_flip_probabilities",
    "parse_instance",
    "primal_gap",
    "read_instance",
    "rlsa_step",
    "run_ld",
    "run_rlsa",
    "summarize",
    "temperature",
    "write_instance",
]
