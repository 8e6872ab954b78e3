"""Single-machine scheduling with one non-renewable resource, minimising sum w_j C_j."""

from .errors import (
    IneligibleTuple,
    InfeasibleSchedule,
    InvalidEpsilon,
    InvalidProfile,
    InvariantViolation,
    ModelMismatch,
    NonUniformRequirement,
    NotTerminal,
    OverflowBudget,
    ParseError,
    SchedulingError,
    SizeLimit,
    StateSpaceExceeded,
    Unsolvable,
    ZeroRequirement,
)
from .evaluator import (
    block_contribution,
    canonical_left_shift,
    check_compact_feasible,
    check_feasible,
    compact_left_shift,
    compact_objective,
    objective,
)
from .exact_dp import DpState, dp_solve, terminal_value, wspt_order
from .formats import format_instance, format_schedule, parse_instance, parse_schedule
from .fptas import GeometricRounder, RoundedValue, fptas_solve, round_up
from .fptas_hme import allocate, enumerate_eligible, hme_fptas_solve
from .greedy import spt_list, spt_lower_bound, supply_lower_bound, weight_order_list
from .instgen import gen_partition_reduction, gen_random, gen_tight_pair
from .model import (
    Block,
    CompactSchedule,
    Instance,
    Job,
    JobClass,
    Schedule,
    SolveReport,
    SupplyProfile,
    expand_hme,
    group_identical,
    job_capacity_prefix,
    prefix_supply,
)
from .oracle import assignment_oracle, permutation_oracle

__version__ = "0.1.0"
