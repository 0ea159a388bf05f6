"""Resilient multi-robot target tracking.

Select one trajectory per robot so that the tracking objective stays high
even after an adversary removes the worst-case subset of up to alpha
selected trajectories.  The package bundles the planar coverage model, the
partition matroid over per-robot menus, two monotone submodular tracking
objectives, the two-phase resilient planner with baselines, exact and
heuristic attack oracles, guarantee analysis, a closed-loop simulation and
an experiment harness with a small command line.
"""

from .adversary import (
    ATTACKER_NAMES,
    AttackResult,
    attack_greedy,
    attack_none,
    attack_optimal,
    attack_random,
    attack_rate,
    get_attacker,
)
from .analysis import (
    BoundReport,
    CurvatureReport,
    check_performance_bound,
    constrained_curvature,
    h_bound,
)
from .errors import (
    CsvFormatError,
    DegenerateObjective,
    EnumerationCapExceeded,
    MissingCoverageRect,
    ObjectiveSetTooLarge,
    SpecError,
    TrackingError,
    UndefinedAttackRate,
)
from .geometry import (
    Direction,
    Point2,
    Rect,
    RobotSpec,
    Trajectory,
    contains,
    coverage_rect,
    rect_intersection,
)
from .matroid import DEFAULT_ENUMERATION_CAP, PartitionMatroid
from .objectives import (
    CountingOracle,
    CoverageCount,
    ExpectedDetections,
    GaussianTargetBelief,
    PropertyViolation,
    check_monotone,
    check_submodular,
    coverage_count,
    expected_detections,
    normal_cdf,
)
from .planners import (
    PLANNER_NAMES,
    AlgorithmTrace,
    PlanResult,
    get_planner,
    plan_bruteforce_maxmin,
    plan_greedy,
    plan_random,
    plan_resilient,
)
from .simulation import (
    RoundRecord,
    SimConfig,
    TargetTrack,
    init_robots,
    init_tracks,
    kalman_update,
    measure,
    run_rounds,
    step_targets,
)
from .worlds import (
    DIRECTION_ORDER,
    WorldInstance,
    build_instance,
    coverage_objective,
    sample_instance,
    trajectory_menu,
)

__version__ = "0.1.0"
