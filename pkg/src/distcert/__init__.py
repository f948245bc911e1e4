"""Certified lower bounds on distances to structured channel and state sets.

The library turns achievable entropic quantities (coherent information and
friends) into rigorous lower bounds on diamond-norm distance from a channel
to the degradable, antidegradable, and entanglement-breaking sets, and on
trace-norm distance from a bipartite state to the separable and product
sets, by inverting the matching continuity bounds.
"""

from .bounds import (
    BoundEntry,
    BoundReport,
    ContinuityBoundSpec,
    Formula,
    antidegradable_distance_lower,
    assemble_report,
    assemble_state_report,
    channel_distance_kernel,
    degradable_distance_lower,
    entanglement_breaking_distance_lower,
    invert_continuity_bound,
    product_distance_lower,
    separable_distance_lower,
    state_distance_kernel,
)
from .channels import (
    ChoiMatrix,
    KrausChannel,
    StinespringIsometry,
    apply_channel,
    channel_coherent_information,
    channel_from_dict,
    channel_to_dict,
    choi,
    complement,
    completely_depolarizing,
    depolarizing,
    erasure,
    identity_embedding,
    load_channel,
    random_channel,
    reverse_coherent_information,
    save_channel,
    stinespring,
    tensor_with_identity,
)
from .entropy import (
    binary_entropy,
    coherent_information,
    g_correction,
    max_coherent_information,
    mutual_information,
    relative_entropy,
    relative_entropy_to_marginals,
    spectrum_entropy,
    von_neumann_entropy,
)
from .linalg import (
    DensityMatrix,
    PureState,
    basis_state,
    chaotic_state,
    maximally_entangled,
    partial_trace,
    purify,
    random_density_matrix,
    random_pure_state,
    tensor,
    trace_norm,
)
from .optimize import (
    Certificate,
    OptimizerConfig,
    coherent_information_gradient,
    maximize_coherent_information,
    maximize_reverse_coherent_information,
    minimize_coherent_information,
    partial_transpose,
    project_ppt,
    ree_dual_certificate,
    ree_ppt_lower,
    reverse_coherent_information_gradient,
    seesaw_diamond_lower,
    seesaw_objective,
    trace_dist_to_ppt,
)

__version__ = "0.1.0"

__all__ = [
    "BoundEntry",
    "BoundReport",
    "Certificate",
    "ChoiMatrix",
    "ContinuityBoundSpec",
    "DensityMatrix",
    "Formula",
    "KrausChannel",
    "OptimizerConfig",
    "PureState",
    "StinespringIsometry",
    "antidegradable_distance_lower",
    "apply_channel",
    "assemble_report",
    "assemble_state_report",
    "basis_state",
    "binary_entropy",
    "channel_coherent_information",
    "channel_distance_kernel",
    "channel_from_dict",
    "channel_to_dict",
    "chaotic_state",
    "choi",
    "coherent_information",
    "coherent_information_gradient",
    "complement",
    "completely_depolarizing",
    "degradable_distance_lower",
    "depolarizing",
    "entanglement_breaking_distance_lower",
    "erasure",
    "g_correction",
    "identity_embedding",
    "invert_continuity_bound",
    "load_channel",
    "max_coherent_information",
    "maximally_entangled",
    "maximize_coherent_information",
    "maximize_reverse_coherent_information",
    "minimize_coherent_information",
    "mutual_information",
    "partial_trace",
    "partial_transpose",
    "product_distance_lower",
    "project_ppt",
    "purify",
    "random_channel",
    "random_density_matrix",
    "random_pure_state",
    "ree_dual_certificate",
    "ree_ppt_lower",
    "relative_entropy",
    "relative_entropy_to_marginals",
    "reverse_coherent_information",
    "reverse_coherent_information_gradient",
    "save_channel",
    "seesaw_diamond_lower",
    "seesaw_objective",
    "separable_distance_lower",
    "spectrum_entropy",
    "state_distance_kernel",
    "stinespring",
    "tensor",
    "tensor_with_identity",
    "trace_dist_to_ppt",
    "trace_norm",
    "von_neumann_entropy",
]
