"""Radial distribution network model.

Carries the physical system: buses with base loads, distribution lines,
DER units, critical loads, and normally-open tie switches. All model types
are immutable; attack application and switch closure return new Network
values instead of mutating.

The bundled system is a 33-bus radial feeder (main chain 1..18 with
laterals at buses 2, 3, and 6) augmented with four DER units, four
critical loads, and four tie switches. Bus 1 is the grid source.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from functools import cached_property
from importlib import resources
from pathlib import Path

from .errors import (
    EndpointDisabledError,
    InvariantViolation,
    ParseError,
    UnknownElementError,
)
from .graph import GraphView


@dataclass(frozen=True)
class Bus:
    id: int
    p_kw: float
    q_kvar: float


@dataclass(frozen=True)
class Line:
    id: str
    from_bus: int
    to_bus: int
    in_service: bool = True

    @property
    def pair(self) -> tuple[int, int]:
        a, b = self.from_bus, self.to_bus
        return (a, b) if a < b else (b, a)


@dataclass(frozen=True)
class Der:
    id: str
    bus: int
    p_kw: float


@dataclass(frozen=True)
class CriticalLoad:
    id: str
    bus: int
    p_kw: float
    q_kvar: float


@dataclass(frozen=True)
class TieSwitch:
    id: str
    from_bus: int
    to_bus: int
    closed: bool = False


@dataclass(frozen=True)
class AttackAction:
    """Topological attack payload plus its vulnerability reference.

    cve_ref holds either a CVE identifier or an explicit CVSS vector
    string; resolution happens at evaluation time.
    """

    disabled_buses: frozenset[int] = frozenset()
    disabled_lines: frozenset[tuple[int, int]] = frozenset()
    cve_ref: str | None = None

    @staticmethod
    def build(disabled_buses=(), disabled_lines=(), cve_ref=None) -> "AttackAction":
        pairs = frozenset(
            (a, b) if a < b else (b, a) for a, b in disabled_lines
        )
        return AttackAction(
            disabled_buses=frozenset(disabled_buses),
            disabled_lines=pairs,
            cve_ref=cve_ref,
        )


@dataclass(frozen=True)
class Scenario:
    name: str
    action: AttackAction
    policy: str | None = None


@dataclass(frozen=True)
class Island:
    """One connected component of the in-service topology."""

    buses: frozenset[int]
    has_grid_source: bool
    der_capacity_p: float
    total_load_p: float
    critical_loads: frozenset[str]


@dataclass(frozen=True)
class Network:
    buses: tuple[Bus, ...]
    lines: tuple[Line, ...]
    ders: tuple[Der, ...]
    critical_loads: tuple[CriticalLoad, ...]
    tie_switches: tuple[TieSwitch, ...]
    grid_source_bus: int

    @cached_property
    def bus_ids(self) -> frozenset[int]:
        return frozenset(b.id for b in self.buses)

    @cached_property
    def switch_map(self) -> dict[str, TieSwitch]:
        return {sw.id: sw for sw in self.tie_switches}

    @cached_property
    def line_pairs(self) -> frozenset[tuple[int, int]]:
        return frozenset(ln.pair for ln in self.lines)


# Base loads for the bundled feeder, (bus, p_kw, q_kvar). Bus 1 is the
# source and carries no load.
_BASE_LOADS = (
    (1, 0.0, 0.0),
    (2, 100.0, 60.0),
    (3, 90.0, 40.0),
    (4, 120.0, 80.0),
    (5, 60.0, 30.0),
    (6, 60.0, 20.0),
    (7, 200.0, 100.0),
    (8, 200.0, 100.0),
    (9, 60.0, 20.0),
    (10, 60.0, 20.0),
    (11, 45.0, 30.0),
    (12, 60.0, 35.0),
    (13, 60.0, 35.0),
    (14, 120.0, 80.0),
    (15, 60.0, 10.0),
    (16, 60.0, 20.0),
    (17, 60.0, 20.0),
    (18, 90.0, 40.0),
    (19, 90.0, 40.0),
    (20, 90.0, 40.0),
    (21, 90.0, 40.0),
    (22, 90.0, 40.0),
    (23, 90.0, 50.0),
    (24, 420.0, 200.0),
    (25, 420.0, 200.0),
    (26, 60.0, 25.0),
    (27, 60.0, 25.0),
    (28, 60.0, 20.0),
    (29, 120.0, 70.0),
    (30, 200.0, 600.0),
    (31, 150.0, 70.0),
    (32, 210.0, 100.0),
    (33, 60.0, 40.0),
)

# Radial branch list: main chain 1..18, lateral 19..22 off bus 2, lateral
# 23..25 off bus 3, lateral 26..33 off bus 6.
_BRANCHES = (
    (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (8, 9),
    (9, 10), (10, 11), (11, 12), (12, 13), (13, 14), (14, 15), (15, 16),
    (16, 17), (17, 18),
    (2, 19), (19, 20), (20, 21), (21, 22),
    (3, 23), (23, 24), (24, 25),
    (6, 26), (26, 27), (27, 28), (28, 29), (29, 30), (30, 31), (31, 32),
    (32, 33),
)

_DERS = (
    ("DER-1", 5, 720.0),
    ("DER-2", 18, 800.0),
    ("DER-3", 21, 760.0),
    ("DER-4", 29, 800.0),
)

_CRITICAL_LOADS = (
    ("CL-1", 7, 200.0, 100.0),
    ("CL-2", 14, 120.0, 80.0),
    ("CL-3", 24, 1420.0, 200.0),
    ("CL-4", 31, 150.0, 70.0),
)

_TIE_SWITCHES = (
    ("SW1", 12, 21),
    ("SW2", 9, 15),
    ("SW3", 18, 33),
    ("SW4", 25, 29),
)

GRID_SOURCE_BUS = 1


def _line_id(a: int, b: int) -> str:
    return f"L{min(a, b)}-{max(a, b)}"


def build_modified_ieee33() -> Network:
    """The bundled 33-bus test system in standard mode.

    All lines in service, all tie switches open. Aggregate base load is
    3715 kW / 2300 kvar; critical demand totals 1890 kW.
    """
    net = Network(
        buses=tuple(Bus(i, p, q) for i, p, q in _BASE_LOADS),
        lines=tuple(Line(_line_id(a, b), a, b) for a, b in _BRANCHES),
        ders=tuple(Der(i, b, p) for i, b, p in _DERS),
        critical_loads=tuple(CriticalLoad(i, b, p, q) for i, b, p, q in _CRITICAL_LOADS),
        tie_switches=tuple(TieSwitch(i, a, b) for i, a, b in _TIE_SWITCHES),
        grid_source_bus=GRID_SOURCE_BUS,
    )
    validate_network(net)
    return net


def bundled_network_path() -> Path:
    """Filesystem path of the bundled network description."""
    return Path(str(resources.files("gridres") / "data" / "ieee33.json"))


def bundled_scenario_dir() -> Path:
    """Directory holding the bundled attack scenarios."""
    return Path(str(resources.files("gridres") / "data" / "scenarios"))


def validate_network(net: Network):
    """Check structural invariants; raises InvariantViolation naming the rule.

    Radiality and connectedness are properties of the bundled intact
    system, not of networks in general, so they are not checked here.
    """
    seen_buses = set()
    for bus in net.buses:
        if bus.id in seen_buses:
            raise InvariantViolation(f"duplicate bus id {bus.id}")
        seen_buses.add(bus.id)
        if bus.p_kw < 0 or bus.q_kvar < 0:
            raise InvariantViolation(f"negative load at bus {bus.id}")
    pairs = set()
    for line in net.lines:
        if line.from_bus == line.to_bus:
            raise InvariantViolation(f"line {line.id} connects a bus to itself")
        if line.from_bus not in seen_buses or line.to_bus not in seen_buses:
            raise InvariantViolation(f"line {line.id} references unknown bus")
        if line.pair in pairs:
            raise InvariantViolation(
                f"more than one line between buses {line.pair[0]} and {line.pair[1]}"
            )
        pairs.add(line.pair)
    seen = set()
    for der in net.ders:
        if der.id in seen:
            raise InvariantViolation(f"duplicate DER id {der.id}")
        seen.add(der.id)
        if der.bus not in seen_buses:
            raise InvariantViolation(f"DER {der.id} references unknown bus {der.bus}")
        if der.p_kw <= 0:
            raise InvariantViolation(f"DER {der.id} capacity must be positive")
    seen = set()
    for cl in net.critical_loads:
        if cl.id in seen:
            raise InvariantViolation(f"duplicate critical load id {cl.id}")
        seen.add(cl.id)
        if cl.bus not in seen_buses:
            raise InvariantViolation(
                f"critical load {cl.id} references unknown bus {cl.bus}"
            )
        if cl.p_kw <= 0 or cl.q_kvar < 0:
            raise InvariantViolation(f"critical load {cl.id} demand must be positive")
    seen = set()
    for sw in net.tie_switches:
        if sw.id in seen:
            raise InvariantViolation(f"duplicate tie switch id {sw.id}")
        seen.add(sw.id)
        if sw.from_bus == sw.to_bus:
            raise InvariantViolation(f"tie switch {sw.id} connects a bus to itself")
        if sw.from_bus not in seen_buses or sw.to_bus not in seen_buses:
            raise InvariantViolation(f"tie switch {sw.id} references unknown bus")
    if net.grid_source_bus not in seen_buses:
        raise InvariantViolation(f"grid source bus {net.grid_source_bus} does not exist")


def _field(obj, key, kind, where):
    if key not in obj:
        raise ParseError(f"{where}: missing field {key!r}")
    value = obj[key]
    if kind is float:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ParseError(f"{where}: field {key!r} must be a number")
        return float(value)
    if kind is int:
        if isinstance(value, bool) or not isinstance(value, int):
            raise ParseError(f"{where}: field {key!r} must be an integer")
        return value
    if kind is str:
        if not isinstance(value, str):
            raise ParseError(f"{where}: field {key!r} must be a string")
        return value
    raise AssertionError(kind)


def _load_json(path) -> tuple[dict, str]:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"{path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ParseError(f"{path}: top level must be an object")
    return data, str(path)


def load_network(path) -> Network:
    """Read a network description file; see docs/report_schema.md for the
    input format. Validates every structural invariant before returning."""
    data, where = _load_json(path)
    for key in ("buses", "lines", "ders", "critical_loads", "tie_switches"):
        if key not in data or not isinstance(data[key], list):
            raise ParseError(f"{where}: missing or non-array field {key!r}")
    buses = tuple(
        Bus(
            id=_field(b, "id", int, f"{where}: buses[{i}]"),
            p_kw=_field(b, "p_kw", float, f"{where}: buses[{i}]"),
            q_kvar=_field(b, "q_kvar", float, f"{where}: buses[{i}]"),
        )
        for i, b in enumerate(data["buses"])
    )
    lines = tuple(
        Line(
            id=_line_id(
                _field(ln, "from", int, f"{where}: lines[{i}]"),
                _field(ln, "to", int, f"{where}: lines[{i}]"),
            ),
            from_bus=ln["from"],
            to_bus=ln["to"],
        )
        for i, ln in enumerate(data["lines"])
    )
    ders = tuple(
        Der(
            id=_field(d, "id", str, f"{where}: ders[{i}]"),
            bus=_field(d, "bus", int, f"{where}: ders[{i}]"),
            p_kw=_field(d, "p_kw", float, f"{where}: ders[{i}]"),
        )
        for i, d in enumerate(data["ders"])
    )
    cls_ = tuple(
        CriticalLoad(
            id=_field(c, "id", str, f"{where}: critical_loads[{i}]"),
            bus=_field(c, "bus", int, f"{where}: critical_loads[{i}]"),
            p_kw=_field(c, "p_kw", float, f"{where}: critical_loads[{i}]"),
            q_kvar=_field(c, "q_kvar", float, f"{where}: critical_loads[{i}]"),
        )
        for i, c in enumerate(data["critical_loads"])
    )
    switches = tuple(
        TieSwitch(
            id=_field(s, "id", str, f"{where}: tie_switches[{i}]"),
            from_bus=_field(s, "from", int, f"{where}: tie_switches[{i}]"),
            to_bus=_field(s, "to", int, f"{where}: tie_switches[{i}]"),
        )
        for i, s in enumerate(data["tie_switches"])
    )
    source = _field(data, "grid_source_bus", int, where)
    net = Network(
        buses=buses,
        lines=lines,
        ders=ders,
        critical_loads=cls_,
        tie_switches=switches,
        grid_source_bus=source,
    )
    validate_network(net)
    return net


def network_to_dict(net: Network) -> dict:
    """Network as a JSON-ready dict in the input file format."""
    return {
        "buses": [{"id": b.id, "p_kw": b.p_kw, "q_kvar": b.q_kvar} for b in net.buses],
        "lines": [{"from": ln.from_bus, "to": ln.to_bus} for ln in net.lines],
        "ders": [{"id": d.id, "bus": d.bus, "p_kw": d.p_kw} for d in net.ders],
        "critical_loads": [
            {"id": c.id, "bus": c.bus, "p_kw": c.p_kw, "q_kvar": c.q_kvar}
            for c in net.critical_loads
        ],
        "tie_switches": [
            {"id": s.id, "from": s.from_bus, "to": s.to_bus} for s in net.tie_switches
        ],
        "grid_source_bus": net.grid_source_bus,
    }


def load_scenario(path) -> Scenario:
    """Read an attack scenario file.

    Exactly one of `cve` and `cvss_vector` must be present; `policy` is an
    optional service-policy override applied at evaluation time.
    """
    data, where = _load_json(path)
    name = _field(data, "name", str, where)
    attack = data.get("attack")
    if not isinstance(attack, dict):
        raise ParseError(f"{where}: missing or non-object field 'attack'")
    disabled_buses = attack.get("disabled_buses", [])
    disabled_lines = attack.get("disabled_lines", [])
    if not isinstance(disabled_buses, list) or not all(
        isinstance(b, int) and not isinstance(b, bool) for b in disabled_buses
    ):
        raise ParseError(f"{where}: attack.disabled_buses must be an array of bus ids")
    if not isinstance(disabled_lines, list) or not all(
        isinstance(p, list)
        and len(p) == 2
        and all(isinstance(x, int) and not isinstance(x, bool) for x in p)
        for p in disabled_lines
    ):
        raise ParseError(
            f"{where}: attack.disabled_lines must be an array of [from, to] pairs"
        )
    cve = data.get("cve")
    vector = data.get("cvss_vector")
    if cve is not None and vector is not None:
        raise ParseError(f"{where}: give either 'cve' or 'cvss_vector', not both")
    if cve is None and vector is None:
        raise ParseError(f"{where}: one of 'cve' or 'cvss_vector' is required")
    ref = cve if cve is not None else vector
    if not isinstance(ref, str):
        raise ParseError(f"{where}: vulnerability reference must be a string")
    policy = data.get("policy")
    if policy is not None and not isinstance(policy, str):
        raise ParseError(f"{where}: field 'policy' must be a string")
    return Scenario(
        name=name,
        action=AttackAction.build(disabled_buses, disabled_lines, cve_ref=ref),
        policy=policy,
    )


def apply_attack(net: Network, action: AttackAction) -> Network:
    """New network with the attack applied.

    Disabled buses are removed together with incident lines and any DERs or
    critical loads they host; listed lines are flagged out of service but
    kept. Tie switches are retained even if an endpoint was removed;
    close_switches rejects those.
    """
    for bus_id in action.disabled_buses:
        if bus_id not in net.bus_ids:
            raise UnknownElementError(f"cannot disable unknown bus {bus_id}")
    for pair in action.disabled_lines:
        if pair not in net.line_pairs:
            raise UnknownElementError(
                f"cannot disable unknown line ({pair[0]}, {pair[1]})"
            )
    gone = action.disabled_buses
    lines = []
    for line in net.lines:
        if line.from_bus in gone or line.to_bus in gone:
            continue
        if line.pair in action.disabled_lines:
            lines.append(replace(line, in_service=False))
        else:
            lines.append(line)
    return Network(
        buses=tuple(b for b in net.buses if b.id not in gone),
        lines=tuple(lines),
        ders=tuple(d for d in net.ders if d.bus not in gone),
        critical_loads=tuple(c for c in net.critical_loads if c.bus not in gone),
        tie_switches=net.tie_switches,
        grid_source_bus=net.grid_source_bus,
    )


def close_switches(net: Network, switch_ids) -> Network:
    """New network with the named tie switches closed.

    Closing an already-closed switch is a no-op. Unknown ids and switches
    whose endpoints were disabled are rejected.
    """
    ids = list(switch_ids)
    for sid in ids:
        sw = net.switch_map.get(sid)
        if sw is None:
            raise UnknownElementError(f"unknown tie switch {sid!r}")
        if sw.from_bus not in net.bus_ids or sw.to_bus not in net.bus_ids:
            raise EndpointDisabledError(
                f"tie switch {sid} endpoint bus was disabled"
            )
    chosen = set(ids)
    return replace(
        net,
        tie_switches=tuple(
            replace(sw, closed=True) if sw.id in chosen else sw
            for sw in net.tie_switches
        ),
    )


def graph_view(net: Network) -> GraphView:
    """Topology of the in-service system: live lines plus closed switches."""
    edges = [ln.pair for ln in net.lines if ln.in_service]
    edges.extend(
        (sw.from_bus, sw.to_bus) for sw in net.tie_switches if sw.closed
    )
    return GraphView.build((b.id for b in net.buses), edges)


def partition_islands(net: Network) -> tuple[Island, ...]:
    """Connected components with their service-relevant aggregates.

    total_load_p counts base bus load plus critical demand on member buses.
    Ordered by smallest member bus, so the grid island comes first whenever
    the source bus is alive.
    """
    comps = graph_view(net).components()
    islands = []
    for comp in comps:
        der_p = sum(d.p_kw for d in net.ders if d.bus in comp)
        base_p = sum(b.p_kw for b in net.buses if b.id in comp)
        crit = [c for c in net.critical_loads if c.bus in comp]
        islands.append(
            Island(
                buses=comp,
                has_grid_source=net.grid_source_bus in comp,
                der_capacity_p=der_p,
                total_load_p=base_p + sum(c.p_kw for c in crit),
                critical_loads=frozenset(c.id for c in crit),
            )
        )
    return tuple(islands)
