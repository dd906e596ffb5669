"""Exact maximum-likelihood decoding workbench for small stabilizer codes.

The package models n-qubit Pauli noise (n <= 8) as explicit probability
vectors over the phaseless Pauli group, decodes [[n, 1]] stabilizer codes
exactly by coset enumeration, and layers three workflows on top: bias
sweeps over a two-parameter channel family, ingestion of measured
two-qubit process matrices, and randomized search for good codes.
"""

from .channel import (
    BiasedParams,
    ChannelError,
    EXTRAPOLATIONS,
    PauliChannel,
    biased_single_qubit,
    compose,
    convex,
    embed,
    extrapolate_convex,
    extrapolate_convex_product,
    extrapolate_product,
    from_total_and_bias,
    identity_channel,
    iid,
    iid_biased,
    load_channel,
    point_mass,
    save_channel,
)
from .code import (
    BUILTIN_CODES,
    CodeError,
    StabilizerCode,
    cyclic7,
    distance,
    five_qubit,
    from_generators,
    load_code,
    phase_flip3,
    resolve_code,
    steane,
    trivial,
)
from .decoder import (
    DecoderError,
    DecoderTable,
    density_matrix_oracle,
    logical_error_rate,
    optimal_decoder,
    save_table,
)
from .ingest import (
    ChannelEstimate,
    IngestError,
    PTM_ORDER,
    SanitizeReport,
    load_estimate,
    pauli_twirl,
    pauli_twirl_with_report,
    ptm_of_pauli_channel,
    sanitize,
    save_estimate,
)
from .pauli import PauliOperator, from_index, from_string, multiply, symplectic_product, weight
from .search import (
    SearchConfig,
    SearchError,
    SearchResult,
    run_search,
    save_result,
    verify_constraints,
)

__all__ = [
    "BUILTIN_CODES",
    "BiasedParams",
    "ChannelError",
    "ChannelEstimate",
    "CodeError",
    "DecoderError",
    "DecoderTable",
    "EXTRAPOLATIONS",
    "IngestError",
    "PTM_ORDER",
    "PauliChannel",
    "PauliOperator",
    "SanitizeReport",
    "SearchConfig",
    "SearchError",
    "SearchResult",
    "StabilizerCode",
    "biased_single_qubit",
    "compose",
    "convex",
    "cyclic7",
    "density_matrix_oracle",
    "distance",
    "embed",
    "extrapolate_convex",
    "extrapolate_convex_product",
    "extrapolate_product",
    "five_qubit",
    "from_generators",
    "from_index",
    "from_string",
    "from_total_and_bias",
    "identity_channel",
    "iid",
    "iid_biased",
    "load_channel",
    "load_code",
    "load_estimate",
    "logical_error_rate",
    "multiply",
    "optimal_decoder",
    "pauli_twirl",
    "pauli_twirl_with_report",
    "phase_flip3",
    "point_mass",
    "ptm_of_pauli_channel",
    "resolve_code",
    "run_search",
    "sanitize",
    "save_channel",
    "save_estimate",
    "save_result",
    "save_table",
    "steane",
    "symplectic_product",
    "trivial",
    "verify_constraints",
    "weight",
]
