"""Resilience scoring, CVSS gating, and restoration planning.

The pipeline: score the scenario's vulnerability, gate on severity (High
or Critical, base >= 7.0 by default), apply the attack, score resilience
against the intact baseline, then search tie-switch closures for the best
restoration.

Resilience r is the mean of five baseline-normalized terms, each clamped
to [0, 1]: algebraic connectivity, inverse average path length, inverse
average betweenness, inverse diameter, and the critical-load service
ratio. The intact network in standard mode (tie switches open) defines the
baseline, so r = 1 before the attack by construction.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace

from .cvss import CvssScore, CvssVector, base_score, parse_vector
from .cvestore import CVE_ID_RE, CveStore
from .errors import (
    CveResolutionError,
    GridResError,
    NotStandardModeError,
    UngatedScenarioError,
)
from .metrics import MetricVector, metric_vector
from .model import Network, Scenario, apply_attack, close_switches, graph_view
from .service import DEFAULT_POLICY, ServicePolicy, ServiceResult, coerce_policy, evaluate_service

FULL_GRAPH = "full-graph"
GRID_COMPONENT = "grid-component"
METRIC_POLICIES = (FULL_GRAPH, GRID_COMPONENT)

GATING_THRESHOLD = 7.0


@dataclass(frozen=True)
class EngineConfig:
    """All evaluation tunables in one place, sourced from the CLI."""

    policy: ServicePolicy = DEFAULT_POLICY
    metric_policy: str = FULL_GRAPH
    gating_threshold: float = GATING_THRESHOLD

    def __post_init__(self):
        object.__setattr__(self, "policy", coerce_policy(self.policy))
        if self.metric_policy not in METRIC_POLICIES:
            raise GridResError(
                f"unknown metric policy {self.metric_policy!r}; expected one of "
                + ", ".join(METRIC_POLICIES)
            )
        if not 0.0 <= self.gating_threshold <= 10.0:
            raise GridResError("gating threshold must lie in [0, 10]")


@dataclass(frozen=True)
class ReferenceVector:
    """Baseline normalization constants taken from the intact network."""

    metrics: MetricVector
    e_cl: float


@dataclass(frozen=True)
class ResilienceTerms:
    lambda2: float
    avg_path_inv: float
    betweenness_inv: float
    diameter_inv: float
    critical_service: float

    def as_tuple(self) -> tuple[float, float, float, float, float]:
        return (
            self.lambda2,
            self.avg_path_inv,
            self.betweenness_inv,
            self.diameter_inv,
            self.critical_service,
        )


@dataclass(frozen=True)
class ResilienceScore:
    r: float
    terms: ResilienceTerms


@dataclass(frozen=True)
class AttackAssessment:
    scenario: str
    vector: CvssVector
    cvss: CvssScore
    gated: bool
    pre_attack_r: float
    attack_r: ResilienceScore | None
    service: ServiceResult | None
    attacked_network: Network | None
    reference: ReferenceVector
    config: EngineConfig


@dataclass(frozen=True)
class RestorationCandidate:
    closed_switches: tuple[str, ...]
    e_cl: float
    r: float


@dataclass(frozen=True)
class RestorationPlan:
    closed_switches: frozenset[str]
    post_r: ResilienceScore
    post_service: ServiceResult
    restored_network: Network


def baseline_reference(net: Network, config: EngineConfig | None = None) -> ReferenceVector:
    """Normalization constants from a network in standard mode.

    Standard mode means no disabled lines, every tie switch open, and a
    connected topology; anything else cannot define a baseline.
    """
    if any(not ln.in_service for ln in net.lines):
        raise NotStandardModeError("baseline network has out-of-service lines")
    if any(sw.closed for sw in net.tie_switches):
        raise NotStandardModeError("baseline network has closed tie switches")
    g = graph_view(net)
    if g.n < 2:
        raise NotStandardModeError("baseline network needs at least 2 buses")
    if not g.is_connected():
        raise NotStandardModeError("baseline network is not connected")
    return ReferenceVector(metrics=metric_vector(g), e_cl=1.0)


def _clamp01(x: float) -> float:
    return 0.0 if x < 0.0 else (1.0 if x > 1.0 else x)


_ZERO_METRICS = MetricVector(
    lambda2=0.0, avg_path_inv=0.0, betweenness_inv=0.0, diameter_inv=0.0
)


def _metric_graph(net: Network, config: EngineConfig):
    g = graph_view(net)
    if config.metric_policy == GRID_COMPONENT:
        for comp in g.components():
            if net.grid_source_bus in comp:
                return g.subgraph(comp)
        return None
    return g


def _score_network(
    net: Network, ref: ReferenceVector, config: EngineConfig
) -> tuple[ResilienceScore, ServiceResult]:
    g = _metric_graph(net, config)
    if g is None or g.n < 2:
        m = _ZERO_METRICS
    else:
        m = metric_vector(g, betweenness_inv_cap=ref.metrics.betweenness_inv)
    svc = evaluate_service(net, config.policy)
    terms = ResilienceTerms(
        lambda2=_clamp01(m.lambda2 / ref.metrics.lambda2),
        avg_path_inv=_clamp01(m.avg_path_inv / ref.metrics.avg_path_inv),
        betweenness_inv=_clamp01(m.betweenness_inv / ref.metrics.betweenness_inv),
        diameter_inv=_clamp01(m.diameter_inv / ref.metrics.diameter_inv),
        critical_service=_clamp01(svc.e_cl / ref.e_cl),
    )
    r = (
        terms.lambda2
        + terms.avg_path_inv
        + terms.betweenness_inv
        + terms.diameter_inv
        + terms.critical_service
    ) / 5.0
    return ResilienceScore(r=r, terms=terms), svc


def resilience_score(
    net: Network, ref: ReferenceVector, config: EngineConfig | None = None
) -> ResilienceScore:
    """Resilience of a (possibly attacked) network against a baseline."""
    return _score_network(net, ref, config or EngineConfig())[0]


def resolve_vector(cve_ref: str | None, store: CveStore) -> CvssVector:
    """Turn a scenario's vulnerability reference into a CVSS vector.

    References starting with CVE- go through the store; anything else is
    parsed as an inline vector string.
    """
    if not cve_ref:
        raise CveResolutionError("scenario carries no CVE id or CVSS vector")
    if cve_ref.upper().startswith("CVE-"):
        record = store.lookup(cve_ref)
        if record.vector is None:
            raise CveResolutionError(
                f"{record.cve_id} has no vector data; cannot derive sub-scores"
            )
        return record.vector
    return parse_vector(cve_ref)


def evaluate_attack(
    net: Network,
    scenario: Scenario,
    store: CveStore,
    config: EngineConfig | None = None,
) -> AttackAssessment:
    """Score the scenario and, when gated, the attacked network.

    A scenario-level policy override replaces the configured service policy;
    the effective config is carried on the assessment. Ungated scenarios
    (base below the threshold) leave the network untouched: attack_r,
    service, and attacked_network stay None.
    """
    config = config or EngineConfig()
    if scenario.policy is not None:
        config = replace(config, policy=coerce_policy(scenario.policy))
    ref = baseline_reference(net, config)
    vector = resolve_vector(scenario.action.cve_ref, store)
    score = base_score(vector)
    gated = score.base >= config.gating_threshold
    if not gated:
        return AttackAssessment(
            scenario=scenario.name,
            vector=vector,
            cvss=score,
            gated=False,
            pre_attack_r=1.0,
            attack_r=None,
            service=None,
            attacked_network=None,
            reference=ref,
            config=config,
        )
    attacked = apply_attack(net, scenario.action)
    attack_score, svc = _score_network(attacked, ref, config)
    return AttackAssessment(
        scenario=scenario.name,
        vector=vector,
        cvss=score,
        gated=True,
        pre_attack_r=1.0,
        attack_r=attack_score,
        service=svc,
        attacked_network=attacked,
        reference=ref,
        config=config,
    )


def _closable(net: Network) -> list[str]:
    return sorted(
        sw.id
        for sw in net.tie_switches
        if not sw.closed and sw.from_bus in net.bus_ids and sw.to_bus in net.bus_ids
    )


def restoration_candidates(
    net: Network, ref: ReferenceVector, config: EngineConfig | None = None
) -> tuple[RestorationCandidate, ...]:
    """Every closable switch subset with its e_cl and r, enumeration order
    by subset size then lexicographic switch ids. Diagnostic companion to
    plan_restoration."""
    config = config or EngineConfig()
    closable = _closable(net)
    out = []
    for k in range(len(closable) + 1):
        for combo in itertools.combinations(closable, k):
            restored = close_switches(net, combo)
            score, svc = _score_network(restored, ref, config)
            out.append(
                RestorationCandidate(closed_switches=combo, e_cl=svc.e_cl, r=score.r)
            )
    return tuple(out)


def plan_restoration(
    net: Network, ref: ReferenceVector, config: EngineConfig | None = None
) -> RestorationPlan:
    """Best tie-switch closure for an attacked network.

    Exhaustive search over subsets of open switches whose endpoints are
    still energizable, ranked lexicographically: maximize e_cl, then
    maximize r, then fewest closures, then lowest switch ids. The empty
    subset is always a candidate, so the plan never regresses below the
    attacked state. Deterministic and independent of switch declaration
    order.
    """
    config = config or EngineConfig()
    closable = _closable(net)
    best_key = None
    best: tuple[tuple[str, ...], ResilienceScore, ServiceResult] | None = None
    for k in range(len(closable) + 1):
        for combo in itertools.combinations(closable, k):
            restored = close_switches(net, combo)
            score, svc = _score_network(restored, ref, config)
            key = (-svc.e_cl, -score.r, len(combo), combo)
            if best_key is None or key < best_key:
                best_key = key
                best = (combo, score, svc)
    assert best is not None
    combo, score, svc = best
    return RestorationPlan(
        closed_switches=frozenset(combo),
        post_r=score,
        post_service=svc,
        restored_network=close_switches(net, combo),
    )


def resilience_trajectory(
    assessment: AttackAssessment, plan: RestorationPlan
) -> tuple[tuple[str, float], ...]:
    """The r series across the three phases of a gated scenario."""
    if not assessment.gated or assessment.attack_r is None:
        raise UngatedScenarioError(
            f"scenario {assessment.scenario!r} was not gated; no trajectory"
        )
    return (
        ("pre_attack", assessment.pre_attack_r),
        ("post_attack", assessment.attack_r.r),
        ("post_restoration", plan.post_r.r),
    )
