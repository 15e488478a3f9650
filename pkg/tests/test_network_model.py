"""Bundled system data, file round-trips, and attack/restoration surgery."""

import json

import pytest

from gridres.errors import (
    EndpointDisabledError,
    InvariantViolation,
    ParseError,
    UnknownElementError,
)
from gridres.model import (
    AttackAction,
    Network,
    TieSwitch,
    apply_attack,
    build_modified_ieee33,
    bundled_network_path,
    bundled_scenario_dir,
    close_switches,
    graph_view,
    load_network,
    load_scenario,
    network_to_dict,
    partition_islands,
    validate_network,
)


@pytest.fixture(scope="module")
def net():
    return build_modified_ieee33()


# ---------------------------------------------------------------------------
# bundled system shape


def test_system_inventory(net):
    assert len(net.buses) == 33
    assert len(net.lines) == 32
    assert len(net.ders) == 4
    assert len(net.critical_loads) == 4
    assert len(net.tie_switches) == 4
    assert net.grid_source_bus == 1
    assert sum(b.p_kw for b in net.buses) == 3715.0
    assert sum(b.q_kvar for b in net.buses) == 2300.0
    assert sum(d.p_kw for d in net.ders) == 3080.0
    assert sum(c.p_kw for c in net.critical_loads) == 1890.0


def test_der_and_cl_placement(net):
    assert {(d.id, d.bus, d.p_kw) for d in net.ders} == {
        ("DER-1", 5, 720.0),
        ("DER-2", 18, 800.0),
        ("DER-3", 21, 760.0),
        ("DER-4", 29, 800.0),
    }
    assert {(c.id, c.bus, c.p_kw) for c in net.critical_loads} == {
        ("CL-1", 7, 200.0),
        ("CL-2", 14, 120.0),
        ("CL-3", 24, 1420.0),
        ("CL-4", 31, 150.0),
    }
    assert {(s.id, *sorted((s.from_bus, s.to_bus))) for s in net.tie_switches} == {
        ("SW1", 12, 21),
        ("SW2", 9, 15),
        ("SW3", 18, 33),
        ("SW4", 25, 29),
    }
    assert all(not s.closed for s in net.tie_switches)


def test_intact_topology_is_radial(net):
    g = graph_view(net)
    assert g.is_connected()
    assert len(g.edges) == g.n - 1  # tree
    islands = partition_islands(net)
    assert len(islands) == 1 and islands[0].has_grid_source


def test_bundled_file_matches_builder(net):
    assert load_network(bundled_network_path()) == net


def test_round_trip(tmp_path, net):
    p = tmp_path / "net.json"
    p.write_text(json.dumps(network_to_dict(net)))
    assert load_network(p) == net


# ---------------------------------------------------------------------------
# parse and validation errors


def _dump(tmp_path, mutate):
    data = network_to_dict(build_modified_ieee33())
    mutate(data)
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(data))
    return p


def test_load_rejects_bad_json(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{nope")
    with pytest.raises(ParseError):
        load_network(p)


def test_load_names_missing_field(tmp_path):
    p = _dump(tmp_path, lambda d: d["buses"][3].pop("p_kw"))
    with pytest.raises(ParseError, match="p_kw"):
        load_network(p)


@pytest.mark.parametrize(
    "mutate,fragment",
    [
        (lambda d: d["lines"].append({"from": 2, "to": 2}), "itself"),
        (lambda d: d["lines"].append({"from": 2, "to": 99}), "unknown bus"),
        (lambda d: d["lines"].append({"from": 2, "to": 1}), "more than one line"),
        (lambda d: d["buses"].append(dict(d["buses"][0])), "duplicate bus"),
        (lambda d: d["buses"][5].update(p_kw=-1.0), "negative load"),
        (lambda d: d["ders"][0].update(p_kw=0.0), "positive"),
        (lambda d: d["critical_loads"][0].update(bus=99), "unknown bus"),
        (lambda d: d.update(grid_source_bus=99), "does not exist"),
        (lambda d: d["tie_switches"].append(dict(d["tie_switches"][0])), "duplicate"),
    ],
)
def test_validation_rules(tmp_path, mutate, fragment):
    p = _dump(tmp_path, mutate)
    with pytest.raises(InvariantViolation, match=fragment):
        load_network(p)


def test_validate_network_direct():
    validate_network(build_modified_ieee33())  # silent on good input


# ---------------------------------------------------------------------------
# attacks


def test_disable_bus_removes_hosted_equipment(net):
    attacked = apply_attack(net, AttackAction.build(disabled_buses=[29]))
    assert 29 not in attacked.bus_ids
    assert len(attacked.buses) == 32
    # both lines at bus 29 are gone entirely
    assert len(attacked.lines) == 30
    assert all(29 not in (ln.from_bus, ln.to_bus) for ln in attacked.lines)
    # DER-4 lived on bus 29
    assert {d.id for d in attacked.ders} == {"DER-1", "DER-2", "DER-3"}
    # switches survive even with a dead endpoint
    assert len(attacked.tie_switches) == 4


def test_disable_bus30_strands_tail(net):
    attacked = apply_attack(net, AttackAction.build(disabled_buses=[30]))
    islands = partition_islands(attacked)
    assert len(islands) == 2
    tail = [i for i in islands if not i.has_grid_source]
    assert len(tail) == 1
    assert tail[0].buses == frozenset({31, 32, 33})
    assert tail[0].critical_loads == frozenset({"CL-4"})
    assert tail[0].der_capacity_p == 0.0


def test_disable_line_keeps_it_flagged(net):
    attacked = apply_attack(net, AttackAction.build(disabled_lines=[(7, 6)]))
    assert len(attacked.lines) == 32
    down = [ln for ln in attacked.lines if ln.pair == (6, 7)]
    assert len(down) == 1 and not down[0].in_service
    g = graph_view(attacked)
    assert len(g.edges) == 31
    islands = partition_islands(attacked)
    assert frozenset(range(7, 19)) in {i.buses for i in islands}


def test_attack_validates_references(net):
    with pytest.raises(UnknownElementError):
        apply_attack(net, AttackAction.build(disabled_buses=[99]))
    with pytest.raises(UnknownElementError):
        apply_attack(net, AttackAction.build(disabled_lines=[(1, 33)]))


def test_attack_action_normalizes_pairs():
    a = AttackAction.build(disabled_lines=[(7, 6), (6, 7)])
    assert a.disabled_lines == frozenset({(6, 7)})


# ---------------------------------------------------------------------------
# switching


def test_close_switch_reconnects(net):
    attacked = apply_attack(net, AttackAction.build(disabled_buses=[30]))
    restored = close_switches(attacked, ["SW3"])
    assert graph_view(restored).is_connected()
    # source object untouched
    assert not attacked.switch_map["SW3"].closed


def test_close_switch_errors(net):
    with pytest.raises(UnknownElementError):
        close_switches(net, ["SW9"])
    attacked = apply_attack(net, AttackAction.build(disabled_buses=[21]))
    with pytest.raises(EndpointDisabledError):
        close_switches(attacked, ["SW1"])


def test_close_is_idempotent(net):
    once = close_switches(net, ["SW1"])
    twice = close_switches(once, ["SW1"])
    assert once == twice
    assert len(graph_view(once).edges) == 33


def test_closing_all_switches_adds_four_cycles(net):
    g = graph_view(close_switches(net, ["SW1", "SW2", "SW3", "SW4"]))
    assert g.is_connected()
    assert len(g.edges) == 36  # 32 lines + 4 ties


def test_graph_view_ignores_switch_declaration_order(net):
    shuffled = Network(
        buses=net.buses,
        lines=tuple(reversed(net.lines)),
        ders=net.ders,
        critical_loads=net.critical_loads,
        tie_switches=tuple(reversed(net.tie_switches)),
        grid_source_bus=net.grid_source_bus,
    )
    assert graph_view(shuffled) == graph_view(net)


# ---------------------------------------------------------------------------
# islands


def test_case3_island_aggregates(net):
    attacked = apply_attack(net, AttackAction.build(disabled_lines=[(11, 12)]))
    islands = partition_islands(attacked)
    assert len(islands) == 2
    tail = next(i for i in islands if not i.has_grid_source)
    assert tail.buses == frozenset(range(12, 19))
    assert tail.der_capacity_p == 800.0  # DER-2 at bus 18
    assert tail.critical_loads == frozenset({"CL-2"})
    assert tail.total_load_p == sum(
        b.p_kw for b in net.buses if b.id in tail.buses
    ) + 120.0


def test_island_totals_partition_the_system(net):
    attacked = apply_attack(
        net, AttackAction.build(disabled_lines=[(3, 23), (5, 6)])
    )
    islands = partition_islands(attacked)
    assert len(islands) == 3
    assert sum(i.total_load_p for i in islands) == pytest.approx(3715.0 + 1890.0)
    assert sum(i.der_capacity_p for i in islands) == pytest.approx(3080.0)
    assert [i.has_grid_source for i in islands].count(True) == 1
    # ordered by smallest member bus
    mins = [min(i.buses) for i in islands]
    assert mins == sorted(mins)


# ---------------------------------------------------------------------------
# scenario files


def test_bundled_scenarios_parse():
    names = set()
    for path in sorted(bundled_scenario_dir().glob("*.json")):
        sc = load_scenario(path)
        names.add(sc.name)
        assert sc.action.cve_ref.startswith("CVE-")
    assert names == {"case1", "case2", "case3", "case4"}


def _scenario_file(tmp_path, data):
    p = tmp_path / "sc.json"
    p.write_text(json.dumps(data))
    return p


def test_scenario_requires_exactly_one_reference(tmp_path):
    base = {"name": "x", "attack": {"disabled_buses": [2]}}
    with pytest.raises(ParseError, match="required"):
        load_scenario(_scenario_file(tmp_path, base))
    with pytest.raises(ParseError, match="not both"):
        load_scenario(
            _scenario_file(
                tmp_path,
                {**base, "cve": "CVE-2020-10937", "cvss_vector": "AV:N/..."},
            )
        )


def test_scenario_rejects_bad_shapes(tmp_path):
    with pytest.raises(ParseError, match="disabled_lines"):
        load_scenario(
            _scenario_file(
                tmp_path,
                {
                    "name": "x",
                    "cve": "CVE-2020-10937",
                    "attack": {"disabled_lines": [[1, 2, 3]]},
                },
            )
        )
    with pytest.raises(ParseError, match="disabled_buses"):
        load_scenario(
            _scenario_file(
                tmp_path,
                {
                    "name": "x",
                    "cve": "CVE-2020-10937",
                    "attack": {"disabled_buses": ["2"]},
                },
            )
        )
    with pytest.raises(ParseError, match="attack"):
        load_scenario(
            _scenario_file(tmp_path, {"name": "x", "cve": "CVE-2020-10937"})
        )


def test_scenario_policy_override_field(tmp_path):
    sc = load_scenario(
        _scenario_file(
            tmp_path,
            {
                "name": "x",
                "cve": "CVE-2020-10937",
                "attack": {"disabled_buses": [30]},
                "policy": "grid-only",
            },
        )
    )
    assert sc.policy == "grid-only"
