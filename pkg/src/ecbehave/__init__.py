"""Event Calculus recognition of long-term behaviours in video event logs.

Submodules:

kernel
    narratives, fluents and maximal-interval computation
dsl
    the rule language: parser, validator and formatter
behaviours
    spatial built-ins, thresholds and the recognition pipeline
ingest
    loaders for event logs, context maps and ground truth
evaluation
    interval matching, precision and recall
cli
    the ``ecbehave`` command
"""

from .behaviours import (BEHAVIOURS, ContextMap, Place, RecognitionResult,
                         ThresholdConfig, Track, load_rules, recognize)
from .dsl import RuleError, RuleSet, check_rules, format_rules, parse_rules, validate_rules
from .evaluation import EvalReport, match_intervals, metrics, render_ratio, report
from .ingest import (GroundTruthRecord, IngestError, load_context, load_events,
                     load_ground_truth)
from .kernel import (Action, ContractError, EventCalculus, FluentAssignment,
                     Interval, Narrative, StateError, VocabularyError,
                     compute_intervals)

__version__ = "0.1.0"

__all__ = [
    "Action", "FluentAssignment", "Interval", "Narrative", "EventCalculus",
    "compute_intervals", "ContractError", "StateError", "VocabularyError",
    "RuleSet", "RuleError", "parse_rules", "validate_rules", "format_rules",
    "check_rules", "Track", "Place", "ContextMap", "ThresholdConfig",
    "RecognitionResult", "recognize", "load_rules", "BEHAVIOURS",
    "IngestError", "GroundTruthRecord", "load_events", "load_context",
    "load_ground_truth", "EvalReport", "match_intervals", "metrics",
    "render_ratio", "report",
]
