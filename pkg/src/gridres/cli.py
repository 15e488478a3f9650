"""Command line interface.

Three subcommands:

  gridres score     score a CVE id or raw CVSS vector
  gridres simulate  evaluate one attack scenario against a network
  gridres batch     evaluate a directory of scenarios into a CSV summary

Exit codes: 0 success, 2 input or scoring failure, 3 scenario gated but no
switch closure restores full critical service. Reports are deterministic;
see docs/report_schema.md.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .cvss import base_score, parse_vector, severity
from .cvestore import CveStore, NvdClient, normalize_cve_id
from .engine import (
    EngineConfig,
    FULL_GRAPH,
    GATING_THRESHOLD,
    METRIC_POLICIES,
    evaluate_attack,
    plan_restoration,
)
from .errors import GridResError
from .model import bundled_network_path, load_network, load_scenario
from .report import build_report, render_csv, render_json
from .service import ServicePolicy, evaluate_service

EXIT_OK = 0
EXIT_ERROR = 2
EXIT_PARTIAL_RESTORATION = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gridres",
        description="Cyber-attack resilience analysis for radial distribution networks",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_score = sub.add_parser("score", help="score a CVE id or CVSS v3.1 vector")
    p_score.add_argument("cve", nargs="?", help="CVE identifier, e.g. CVE-2017-7921")
    p_score.add_argument("--vector", help="raw CVSS v3.1 vector string")
    p_score.add_argument("--offline", action="store_true", help="disable NVD fetch")
    p_score.add_argument("--cache", help="CVE cache file path")
    p_score.set_defaults(func=cmd_score)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--network", help="network JSON (default: bundled 33-bus system)")
    common.add_argument(
        "--policy",
        choices=[p.value for p in ServicePolicy],
        default=ServicePolicy.DER_CAPACITY.value,
        help="islanded service policy (default: der-capacity)",
    )
    common.add_argument(
        "--metric-policy",
        choices=list(METRIC_POLICIES),
        default=FULL_GRAPH,
        help="graph scope for topological metrics (default: full-graph)",
    )
    common.add_argument(
        "--gating-threshold",
        type=float,
        default=GATING_THRESHOLD,
        help="base score at or above which the attack is simulated (default: 7.0)",
    )
    common.add_argument("--offline", action="store_true", help="disable NVD fetch")
    common.add_argument("--cache", help="CVE cache file path")
    common.add_argument("--cve-records", help="JSON array of CVE records to import")
    common.add_argument("--out", help="write output to this path instead of stdout")

    p_sim = sub.add_parser(
        "simulate", parents=[common], help="evaluate one attack scenario"
    )
    p_sim.add_argument("--scenario", required=True, help="scenario JSON file")
    p_sim.add_argument(
        "--format", choices=("json", "csv"), default="json", help="report format"
    )
    p_sim.set_defaults(func=cmd_simulate)

    p_batch = sub.add_parser(
        "batch", parents=[common], help="evaluate a directory of scenarios"
    )
    p_batch.add_argument(
        "--scenario-dir", required=True, help="directory of scenario JSON files"
    )
    p_batch.set_defaults(func=cmd_batch)
    return parser


def _make_store(args) -> CveStore:
    client = None
    if not args.offline:
        client = NvdClient(api_key=os.environ.get("NVD_API_KEY"))
    store = CveStore(cache_path=args.cache, client=client)
    if getattr(args, "cve_records", None):
        store.import_records(args.cve_records)
    return store


def _emit(text: str, out_path):
    if out_path:
        Path(out_path).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_score(args) -> int:
    if (args.cve is None) == (args.vector is None):
        print("error: give a CVE id or --vector, not both", file=sys.stderr)
        return EXIT_ERROR
    if args.vector is not None:
        vector = parse_vector(args.vector)
    else:
        record = _make_store(args).lookup(normalize_cve_id(args.cve))
        if record.vector is None:
            # Score-only record: report what the source published.
            print(f"cve: {record.cve_id}")
            print(f"base: {record.published_base:.1f}")
            print(f"severity: {severity(record.published_base).value}")
            return EXIT_OK
        vector = record.vector
    score = base_score(vector)
    print(f"vector: {vector.canonical()}")
    print(f"base: {score.base:.1f}")
    print(f"severity: {score.severity.value}")
    print(f"iss: {score.iss:.4f}")
    print(f"impact: {score.impact:.4f}")
    print(f"exploitability: {score.exploitability:.4f}")
    return EXIT_OK


def _load_inputs(args):
    network_path = args.network or bundled_network_path()
    net = load_network(network_path)
    config = EngineConfig(
        policy=args.policy,
        metric_policy=args.metric_policy,
        gating_threshold=args.gating_threshold,
    )
    return net, config


def _run_scenario(net, scenario, store, config):
    assessment = evaluate_attack(net, scenario, store, config)
    plan = None
    if assessment.gated:
        plan = plan_restoration(
            assessment.attacked_network, assessment.reference, assessment.config
        )
    baseline_service = evaluate_service(net, assessment.config.policy)
    report = build_report(assessment, plan, baseline_service)
    return assessment, plan, report


def cmd_simulate(args) -> int:
    net, config = _load_inputs(args)
    scenario = load_scenario(args.scenario)
    store = _make_store(args)
    assessment, plan, report = _run_scenario(net, scenario, store, config)
    text = render_json(report) if args.format == "json" else render_csv(report)
    _emit(text, args.out)
    if assessment.gated and plan is not None and plan.post_service.e_cl < 1.0:
        return EXIT_PARTIAL_RESTORATION
    return EXIT_OK


BATCH_HEADER = (
    "scenario,base,severity,gated,attack_r,restored_r,"
    "e_cl_attack,e_cl_restored,closed_switches"
)


def cmd_batch(args) -> int:
    net, config = _load_inputs(args)
    store = _make_store(args)
    scenario_dir = Path(args.scenario_dir)
    if not scenario_dir.is_dir():
        print(f"error: {scenario_dir} is not a directory", file=sys.stderr)
        return EXIT_ERROR
    rows = []
    failures = 0
    for path in sorted(scenario_dir.glob("*.json")):
        try:
            scenario = load_scenario(path)
            assessment, plan, _ = _run_scenario(net, scenario, store, config)
        except GridResError as exc:
            failures += 1
            print(f"error: {path.name}: {exc}", file=sys.stderr)
            continue
        if assessment.gated:
            row = (
                f"{assessment.scenario},{assessment.cvss.base:.1f},"
                f"{assessment.cvss.severity.value},true,"
                f"{assessment.attack_r.r:.4f},{plan.post_r.r:.4f},"
                f"{assessment.service.e_cl:.4f},{plan.post_service.e_cl:.4f},"
                f"{';'.join(sorted(plan.closed_switches))}"
            )
        else:
            row = (
                f"{assessment.scenario},{assessment.cvss.base:.1f},"
                f"{assessment.cvss.severity.value},false,,,,,"
            )
        rows.append((assessment.scenario, row))
    rows.sort(key=lambda item: item[0])
    text = BATCH_HEADER + "\n" + "".join(row + "\n" for _, row in rows)
    _emit(text, args.out)
    return EXIT_ERROR if failures else EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except GridResError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    raise SystemExit(main())
