"""Run report assembly and serialization.

Reports are plain dicts with a fixed key order and all real-valued fields
rounded to 4 decimals (CVSS base keeps its native 1 decimal), so repeated
runs over the same inputs serialize byte-identically. docs/report_schema.md
describes the layout.
"""

from __future__ import annotations

import json

from .engine import (
    AttackAssessment,
    ResilienceScore,
    RestorationPlan,
)
from .service import ServiceResult

SCHEMA = "gridres-report/1"


def _r4(x: float) -> float:
    return round(x, 4)


def _metrics_block(m) -> dict:
    return {
        "lambda2": _r4(m.lambda2),
        "avg_path_inv": _r4(m.avg_path_inv),
        "betweenness_inv": _r4(m.betweenness_inv),
        "diameter_inv": _r4(m.diameter_inv),
    }


def _terms_block(score: ResilienceScore) -> dict:
    t = score.terms
    return {
        "lambda2": _r4(t.lambda2),
        "avg_path_inv": _r4(t.avg_path_inv),
        "betweenness_inv": _r4(t.betweenness_inv),
        "diameter_inv": _r4(t.diameter_inv),
        "critical_service": _r4(t.critical_service),
    }


def _service_block(svc: ServiceResult) -> dict:
    return {
        "e_cl": _r4(svc.e_cl),
        "served": {cid: ok for cid, ok in svc.served},
    }


def build_report(
    assessment: AttackAssessment,
    plan: RestorationPlan | None,
    baseline_service: ServiceResult,
) -> dict:
    """Assemble the full report for one evaluated scenario."""
    cvss = assessment.cvss
    report = {
        "schema": SCHEMA,
        "scenario": assessment.scenario,
        "policy": assessment.config.policy.value,
        "metric_policy": assessment.config.metric_policy,
        "gating_threshold": _r4(assessment.config.gating_threshold),
        "cvss": {
            "vector": assessment.vector.canonical(),
            "base": round(cvss.base, 1),
            "severity": cvss.severity.value,
            "iss": _r4(cvss.iss),
            "impact": _r4(cvss.impact),
            "exploitability": _r4(cvss.exploitability),
        },
        "gated": assessment.gated,
        "baseline_metrics": _metrics_block(assessment.reference.metrics),
        "phases": {
            "pre_attack": {
                "r": _r4(assessment.pre_attack_r),
                "service": _service_block(baseline_service),
            }
        },
        "restoration": None,
        "trajectory": None,
    }
    if assessment.gated and assessment.attack_r is not None:
        report["phases"]["post_attack"] = {
            "r": _r4(assessment.attack_r.r),
            "terms": _terms_block(assessment.attack_r),
            "service": _service_block(assessment.service),
        }
    if plan is not None and assessment.gated:
        report["phases"]["post_restoration"] = {
            "r": _r4(plan.post_r.r),
            "terms": _terms_block(plan.post_r),
            "service": _service_block(plan.post_service),
        }
        report["restoration"] = {
            "closed_switches": sorted(plan.closed_switches),
            "full_service": plan.post_service.e_cl >= 1.0,
        }
        report["trajectory"] = [
            {"phase": "pre_attack", "r": _r4(assessment.pre_attack_r)},
            {"phase": "post_attack", "r": _r4(assessment.attack_r.r)},
            {"phase": "post_restoration", "r": _r4(plan.post_r.r)},
        ]
    return report


def render_json(report: dict) -> str:
    """Deterministic JSON: fixed key order, 2-space indent, trailing newline."""
    return json.dumps(report, indent=2, ensure_ascii=False) + "\n"


def render_csv(report: dict) -> str:
    """CSV projection: the phase,r trajectory rows."""
    lines = ["phase,r"]
    trajectory = report.get("trajectory")
    if trajectory:
        for entry in trajectory:
            lines.append(f"{entry['phase']},{entry['r']:.4f}")
    else:
        for phase, block in report["phases"].items():
            lines.append(f"{phase},{block['r']:.4f}")
    return "\n".join(lines) + "\n"
