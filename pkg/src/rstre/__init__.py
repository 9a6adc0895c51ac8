"""Random spanning trees of the complete graph with two-point edge disorder.

Sampling, exact oracles and Monte Carlo harness.  Hot loops live in a
compiled extension with a pure-Python twin; ``rstre.BACKEND`` says which
one is active.
"""
__version__ = "0.1.0"

from ._backend import BACKEND  # noqa: E402
from .disorder import (  # noqa: E402
    ComponentDecomposition,
    ContractedGraph,
    DisorderSample,
    contract,
    decompose,
    sample_disorder,
    union_top_k,
)
from .spanning import (  # noqa: E402
    ContractedWalkTrace,
    WeightedTree,
    aldous_broder_contracted,
    assemble_lower_bound_path,
    assemble_tree,
    path_containment_violation,
    tree_diameter,
    tree_distance,
    wilson_ust,
)
from .sampling import (  # noqa: E402
    RepeatTrace,
    no_repeat_prob_exact,
    repeat_envelope,
    s_statistic,
    size_biased_stream,
)
from .oracles import (  # noqa: E402
    SmallWeightedGraph,
    balanced_ratio,
    bottleneck_ratio_exact,
    effective_resistance,
    enumerate_spanning_trees,
    km_distance_tail,
    laplacian_walk_sample,
    ust_edge_probability,
)
from .branching import (  # noqa: E402
    BPRun,
    ExplorationLog,
    component_statistics,
    coupled_domination_trial,
    explore_component,
    simulate_bp,
)
from .experiments import (  # noqa: E402
    ExperimentConfig,
    ResultRecord,
    estimate_exponent,
    run_diameter_sweep,
    run_repeat_sweep,
)
