"""Critical-load service evaluation.

Decides which critical loads stay energized after an attack and reduces
the answer to e_cl, the served fraction of total critical demand (active
power only). The island containing the grid source serves everything on
it; DER-backed islands follow the selected policy:

  grid-only          islanded critical loads are never served
  der-capacity       all-or-nothing: the island serves every member
                     critical load iff DER capacity covers the island's
                     full load (base plus critical)
  critical-priority  base load is shed; critical loads are picked in
                     ascending demand order (ties by id) while cumulative
                     critical demand fits within DER capacity
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import GridResError
from .model import Island, Network, partition_islands


class ServicePolicy(str, Enum):
    GRID_ONLY = "grid-only"
    DER_CAPACITY = "der-capacity"
    CRITICAL_PRIORITY = "critical-priority"

    def __str__(self):
        return self.value


DEFAULT_POLICY = ServicePolicy.DER_CAPACITY


def coerce_policy(value) -> ServicePolicy:
    """Accept a ServicePolicy or its string value."""
    if isinstance(value, ServicePolicy):
        return value
    try:
        return ServicePolicy(value)
    except ValueError:
        raise GridResError(
            f"unknown service policy {value!r}; expected one of "
            + ", ".join(p.value for p in ServicePolicy)
        ) from None


@dataclass(frozen=True)
class ServiceResult:
    served: tuple[tuple[str, bool], ...]
    e_cl: float
    islands: tuple[Island, ...]

    def served_map(self) -> dict[str, bool]:
        return dict(self.served)


def evaluate_service(net: Network, policy=DEFAULT_POLICY) -> ServiceResult:
    """Served/unserved state per critical load and the e_cl ratio.

    e_cl is served critical demand over total critical demand of the
    network; a network without critical loads evaluates to 1.0.
    """
    policy = coerce_policy(policy)
    islands = partition_islands(net)
    demand = {c.id: c.p_kw for c in net.critical_loads}
    served: dict[str, bool] = {c.id: False for c in net.critical_loads}
    for island in islands:
        members = sorted(island.critical_loads)
        if not members:
            continue
        if island.has_grid_source:
            for cid in members:
                served[cid] = True
        elif policy is ServicePolicy.GRID_ONLY:
            continue
        elif policy is ServicePolicy.DER_CAPACITY:
            if island.der_capacity_p >= island.total_load_p:
                for cid in members:
                    served[cid] = True
        else:  # CRITICAL_PRIORITY
            cumulative = 0.0
            for cid in sorted(members, key=lambda c: (demand[c], c)):
                if cumulative + demand[cid] <= island.der_capacity_p:
                    served[cid] = True
                    cumulative += demand[cid]
    total = sum(demand.values())
    got = sum(demand[cid] for cid, ok in served.items() if ok)
    e_cl = 1.0 if total == 0 else got / total
    ordered = tuple((c.id, served[c.id]) for c in sorted(net.critical_loads, key=lambda c: c.id))
    return ServiceResult(served=ordered, e_cl=e_cl, islands=islands)
