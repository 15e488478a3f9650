"""Cyber-attack resilience analysis for radial power distribution networks.

Scores vulnerabilities with CVSS v3.1, gates attack simulation on severity,
quantifies post-attack resilience from graph metrics and critical-load
service, and searches tie-switch closures for the best restoration.
"""

from ._backend import kernel_backend
from .cvss import (
    CvssScore,
    CvssVector,
    Severity,
    base_score,
    parse_vector,
    roundup,
    severity,
)
from .cvestore import CveRecord, CveStore, NvdClient, load_seed_records
from .engine import (
    AttackAssessment,
    EngineConfig,
    ReferenceVector,
    ResilienceScore,
    ResilienceTerms,
    RestorationPlan,
    baseline_reference,
    evaluate_attack,
    plan_restoration,
    resilience_score,
    resilience_trajectory,
    restoration_candidates,
)
from .graph import GraphView
from .metrics import (
    MetricVector,
    algebraic_connectivity,
    average_betweenness,
    average_shortest_path,
    betweenness,
    diameter,
    fiedler_pair,
    metric_vector,
)
from .model import (
    AttackAction,
    Bus,
    CriticalLoad,
    Der,
    Island,
    Line,
    Network,
    Scenario,
    TieSwitch,
    apply_attack,
    build_modified_ieee33,
    bundled_network_path,
    bundled_scenario_dir,
    close_switches,
    graph_view,
    load_network,
    load_scenario,
    partition_islands,
)
from .service import ServicePolicy, ServiceResult, evaluate_service

__version__ = "0.1.0"

__all__ = [
    "AttackAction",
    "AttackAssessment",
    "Bus",
    "CriticalLoad",
    "CveRecord",
    "CveStore",
    "CvssScore",
    "CvssVector",
    "Der",
    "EngineConfig",
    "GraphView",
    "Island",
    "Line",
    "MetricVector",
    "Network",
    "NvdClient",
    "ReferenceVector",
    "ResilienceScore",
    "ResilienceTerms",
    "RestorationPlan",
    "Scenario",
    "ServicePolicy",
    "ServiceResult",
    "Severity",
    "TieSwitch",
    "algebraic_connectivity",
    "apply_attack",
    "average_betweenness",
    "average_shortest_path",
    "base_score",
    "baseline_reference",
    "betweenness",
    "build_modified_ieee33",
    "bundled_network_path",
    "bundled_scenario_dir",
    "close_switches",
    "diameter",
    "evaluate_attack",
    "evaluate_service",
    "fiedler_pair",
    "graph_view",
    "kernel_backend",
    "load_network",
    "load_scenario",
    "load_seed_records",
    "metric_vector",
    "parse_vector",
    "partition_islands",
    "plan_restoration",
    "resilience_score",
    "resilience_trajectory",
    "restoration_candidates",
    "roundup",
    "severity",
    "__version__",
]
