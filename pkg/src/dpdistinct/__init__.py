"""Person-level differentially private lower bounds on distinct counts."""

from dpdistinct._backend import NAME as BACKEND
from dpdistinct.estimator import (
    DpEstimate,
    UtilityScores,
    dp_approx_distinct_count,
    dp_count_fixed_bound,
    dp_distinct_count,
    dp_sampling_distinct_count,
    estimate_from_curve,
    sampling_count,
    sampling_count_curve,
    select_bound,
    utility_scores,
)
from dpdistinct.greedy import greedy_count_at, greedy_count_curve
from dpdistinct.ingest import (
    Dataset,
    ParseError,
    PersonRecord,
    StatsReport,
    dataset_stats,
    distinct_count_exact,
    dump_dataset,
    load_dataset,
)
from dpdistinct.matching import (
    BoundedCountCurve,
    CopyGraph,
    bounded_count_curve,
    bounded_distinct_count,
    build_copy_graph,
    maximum_matching_size,
)
from dpdistinct.mechanisms import (
    Envelope,
    GemProblem,
    PrivacyParams,
    RandomSource,
    build_upper_envelope,
    exponential_mechanism_sample,
    gem_scores_fast,
    gem_select,
    laplace_offset,
    sample_laplace,
)

__version__ = "0.1.0"
