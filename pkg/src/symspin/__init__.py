"""Bipartite entanglement and spin squeezing for symmetric spin-1/2 ensembles.

Permutation-symmetric N-spin states live in an (N+1)-dimensional basis, so
partial traces, partial transposes, Schmidt decompositions and squeezing
dynamics scale polynomially in N instead of exponentially; this package
computes entanglement measures across all bipartite splits and particle-loss
reductions for N up to several hundred.
"""

from .dynamics import (
    Hamiltonian,
    Trajectory,
    build_hamiltonian,
    find_optimal_time,
    ghz_proximity,
    propagate,
    run_trajectory,
    trajectory_measures,
)
from .errors import DataError, DomainError, SearchError, UndefinedSqueezingError
from .measures import (
    CollectiveMoments,
    SqueezingRecord,
    collective_moments,
    concurrence_pair,
    dicke_concurrence_closed_form,
    entropy_of_entanglement,
    eof_pair,
    even_split_entropy,
    log_negativity,
    majorizes,
    negativity,
    pair_concurrence,
    pair_formation,
    reduce_to,
    split_log_negativity,
    squeezing_after_loss,
    squeezing_of,
    squeezing_parameter,
    trace_distance,
    unobtainable_bound,
    von_neumann_entropy,
)
from .states import (
    StateSpec,
    build_state,
    make_comb,
    make_dicke,
    make_ghz,
    make_polarized,
    make_random,
    parse_state_spec,
    superpose,
)
from .symcore import (
    BinomTable,
    Split,
    SplitDensity,
    SymDensity,
    SymKet,
    binom_coeff,
    binom_table,
    dicke_schmidt_profile,
    even_split,
    log_binom,
    partial_trace,
    partial_transpose,
    schmidt_values,
)

__version__ = "0.1.0"
