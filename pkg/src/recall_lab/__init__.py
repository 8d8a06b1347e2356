"""B-matrix feedback associative memories with active-site delta-rule training."""
from .activesites import SiteAssignment, assign_sites, score_sites, update_order_from_sites
from .bmatrix import (
    Fragment,
    TriangularGenerator,
    UpdateOrder,
    check_weights,
    generate,
    retrieves,
    split_lower,
)
from .errors import (
    CapacityError,
    ConfigError,
    DomainError,
    InfeasibleError,
    InvariantError,
    RecallLabError,
    UsageError,
)
from .harness import (
    CapacityCurve,
    CapacityPoint,
    ExperimentConfig,
    Rule,
    read_curve,
    run_capacity_sweep,
    run_trial,
    write_curve,
)
from .learning import (
    LearningConfig,
    TrainReport,
    delta_train_all,
    delta_train_memory,
    hebbian_train,
    widrow_hoff_train,
)
from .memcore import Levels, MemorySet, QuantizerConfig, quantize, random_memory_set, sgn

__version__ = "0.1.0"
