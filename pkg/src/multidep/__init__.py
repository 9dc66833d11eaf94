"""Multipartite dependence D_N of classical distributions and quantum states."""

from .channels import (
    ChoiChannel,
    KrausChannel,
    MonotonicityRecord,
    amplitude_damping_half,
    apply_channel,
    apply_local,
    channel_from_choi,
    choi,
    depolarizing_channel,
    identity_channel,
    monotonicity_gap,
    random_channel,
)
from .dependence import (
    DependenceReport,
    dependence,
    dependence_classical,
    dependence_pure,
    dicke_dependence_analytic,
    k_dependence,
)
from .info import (
    ProbTensor,
    classical_cmi,
    conditional_mutual_information,
    grouped_cmi,
    mutual_information,
    shannon_entropy,
    subsystem_entropy,
    von_neumann_entropy,
)
from .measure_opt import (
    MeasurementGap,
    MeasurementSetting,
    OptResult,
    induced_distribution,
    measurement_gap,
    optimize_classical_cmi,
)
from .qmat import (
    DensityOperator,
    ValidationError,
    append_product_party,
    hermitian_eig,
    kron,
    marginal,
    merge_subsystems,
    partial_trace,
    permute_parties,
    random_density,
    rng,
    split_subsystem,
    tensor,
)
from .secret_sharing import (
    RateBoundReport,
    SecretSharingScheme,
    leakage_audit,
    rate_bound,
    ss_decode,
    ss_encode,
)
from .specs import SpecError, parse_state_spec
from .states import (
    GraphSpec,
    PauliString,
    ame_state,
    classical_presets,
    dicke,
    ghz,
    graph_state,
    kuniform_mixed,
    nc_state,
    smolin,
    stabilizer_state,
    w_state,
)

__version__ = "0.1.0"
