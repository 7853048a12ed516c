"""Co-creative drawing engine and analytics platform.

A drawing partner that collaborates on a shared canvas while coding the
interaction per tick, deriving turns and couplings, classifying trends,
and comparing session groups statistically.
"""

from .agent import (
    AgentPlan,
    RecognitionResult,
    StubImageGenerator,
    StyleSet,
    TaughtObject,
    apply_vote,
    ctm_decide,
    detect_repetition,
    match_object_label,
    recognize,
)
from .analytics import (
    CollaborationCounts,
    Coupling,
    GroupComparison,
    MetricTable,
    collaboration_dynamics,
    compare_groups,
    detect_couplings,
    session_metrics,
    turn_rhythm,
    welch_t,
)
from .coding import CodeSeries, CsmCurve, CurveStats, code_timeline, csm_curve, curve_stats, mode_counts
from .engine import Engine
from .geometry import (
    Rect,
    TransformSpec,
    apply_transform,
    bounding_box,
    discrete_frechet,
    find_open_space,
    polyline_length,
    resample_normalize,
)
from .logio import LOG_VERSION, LogFormatError, read_log, write_log
from .model import (
    ActionEvent,
    Actor,
    DrawingMode,
    EngineConfig,
    EventKind,
    InteractionMode,
    Point,
    Session,
    Stroke,
    Turn,
    derive_strokes,
    derive_turns,
    validate_event_stream,
)
from .report import build_report, comparison_to_dict, serialize_report
from .simulate import simulate, simulate_session
from .trend import MacdResult, TrendLabel, TrendSegment, classify, ema, macd, phase_frequencies, run_lengths

__version__ = "0.1.0"
