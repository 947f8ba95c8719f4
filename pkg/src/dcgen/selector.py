"""Per-class equipment model selection.

For each equipment class the catalog may offer several models; the one
that minimizes the chosen objective while covering demand wins. The space
score of a candidate is its installed footprint including maintenance
access; the power score is its installed electrical draw. Selection is
deterministic: ties fall back to fewer units, then the smaller model id.
"""

from __future__ import annotations

from enum import Enum
from typing import Callable, Optional, Sequence

from .catalog import CatalogError, EquipmentClass, EquipmentModel
from .redundancy import RedundancyPolicy, datacenter_units


class Objective(Enum):
    SPACE = "space"
    POWER = "power"


def space_score(model: EquipmentModel, unit_count: int) -> float:
    return unit_count * (1.0 + model.access_factor) * model.footprint_m2


def power_score(model: EquipmentModel, unit_count: int) -> float:
    return unit_count * model.max_draw_kw


def select_model(
    equipment_class: EquipmentClass,
    demand_kw: float,
    candidates: Sequence[EquipmentModel],
    policy: RedundancyPolicy,
    objective: Objective,
    count_fn: Optional[Callable[[EquipmentModel], int]] = None,
) -> tuple[EquipmentModel, int]:
    """Pick the best model of one class and its required unit count.

    count_fn overrides how a candidate's unit count is derived (rack-level
    classes count per pod and multiply by pods); the default is the
    datacenter-level rule on demand_kw.
    """
    if not candidates:
        raise CatalogError(f"no models for class {equipment_class.value}")
    for model in candidates:
        if model.equipment_class is not equipment_class:
            raise CatalogError(
                f"candidate '{model.id}' is {model.equipment_class.value}, "
                f"expected {equipment_class.value}"
            )

    if count_fn is None:
        count_fn = lambda m: datacenter_units(demand_kw, m, policy)

    counted = [(model, count_fn(model)) for model in candidates]
    # A power objective is meaningless when no candidate draws anything;
    # fall back to the space score in that case.
    use_power = objective is Objective.POWER and any(
        m.max_draw_kw > 0 for m, _ in counted
    )
    scorer = power_score if use_power else space_score
    return min(counted, key=lambda mc: (scorer(mc[0], mc[1]), mc[1], mc[0].id))
