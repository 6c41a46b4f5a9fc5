"""Secret-key capacity and omnivocality analysis for multiterminal sources."""

from .capacity import (
    CapacityReport,
    MinimizerStatus,
    MinimizerVerdict,
    partition_surplus,
    restricted_singleton_surplus,
    singleton_minimizer_check,
    singleton_surplus_identity,
    sk_capacity,
)
from .errors import (
    InputError,
    InternalInconsistencyError,
    InvalidPartitionError,
    InvalidSubsetError,
    PreconditionError,
    SizeLimitError,
    SkomniError,
)
from .generators import exchangeable_mixture, random_source
from .isentropic import (
    IsentropyProfile,
    block_conditional_entropy,
    check_block_rate_monotone,
    isentropy_check,
    surplus_complement,
)
from .omnivocality import (
    Classification,
    ConjectureProbe,
    Construction,
    OmniStatus,
    OmnivocalityVerdict,
    probe_conjecture,
    verdict_by_condition,
    verdict_by_lp,
    verdict_for_three_terminals,
)
from .partitions import (
    Partition,
    enumerate_partitions,
    format_partition,
    isolating_partition,
    parse_partition,
    singleton_partition,
)
from .pin import (
    PinGraph,
    PinOracle,
    complete_graph,
    incident_weight,
    load_pin_graph,
    partition_crossing,
    pin_capacity,
    strength_quotient,
)
from .silent_rate import (
    RateConstraint,
    RateRegion,
    SilentCapacityReport,
    build_rate_region,
    min_sum_rate,
    reduced_rate_region,
    silent_capacity,
    sum_rate_lower_bound,
)
from .sources import (
    ExtendedPrecisionOracle,
    JointSource,
    TabularOracle,
    conditional_entropy,
    load_source,
    marginal,
    mutual_information,
)

__version__ = "0.1.0"
