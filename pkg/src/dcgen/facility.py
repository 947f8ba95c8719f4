"""Cooling-chain and power-chain sizing for a generated IT layout.

CDUs and PDUs are sized per pod for each rack class (pods hold one class)
and multiplied by that class's pod count. Chillers and the chosen heat
sink are sized against the full IT load, with heat assumed equal to
electrical power. UPSs, MSBs and generators are sized twice: once for the
IT load and once for the electrical draw of the installed cooling chain;
both counts are reported. Gray space sums every installed unit's footprint
scaled by its maintenance-access factor, split indoor/outdoor by the
model's placement.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .catalog import (
    EquipmentClass,
    EquipmentModel,
    HeatSinkKind,
    Placement,
    PodLayout,
    models_by_class,
)
from .it_sizing import ITDesign
from .redundancy import RedundancyPolicy, datacenter_units, pod_units
from .selector import Objective, select_model

DEFAULT_POD_LAYOUT = PodLayout(rows_per_pod=2, racks_per_row=8)
DEFAULT_POLICY = RedundancyPolicy.additive(1, safety_margin=0.1)

# Cooling-chain classes whose electrical draw the power chain must carry.
COOLING_DRAW_CLASSES = (
    EquipmentClass.CDU,
    EquipmentClass.CHILLER,
    EquipmentClass.DRY_COOLER,
    EquipmentClass.EVAPORATIVE_TOWER,
)

POWER_CHAIN_CLASSES = (
    EquipmentClass.UPS,
    EquipmentClass.MSB,
    EquipmentClass.GENERATOR,
)


@dataclass(frozen=True)
class ClassPlan:
    """Chosen model and unit counts for one equipment class."""

    model: EquipmentModel
    it_units: int
    facility_units: int = 0

    @property
    def total_units(self) -> int:
        return self.it_units + self.facility_units

    @property
    def serving(self) -> str:
        if self.facility_units == 0:
            return "IT"
        if self.it_units == 0:
            return "Facility"
        return "Both"

    @property
    def max_draw_kw(self) -> float:
        return self.total_units * self.model.max_draw_kw

    @property
    def gray_space_m2(self) -> float:
        return (
            (1.0 + self.model.access_factor)
            * self.total_units
            * self.model.footprint_m2
        )


@dataclass(frozen=True)
class FacilityPlan:
    """Sized cooling and power chains for one heat-sink choice."""

    per_class: tuple[tuple[EquipmentClass, ClassPlan], ...]
    heat_sink: HeatSinkKind
    policy: RedundancyPolicy
    pod_layout: PodLayout
    facility_peak_power_mw: float
    gray_space_indoor_m2: float
    gray_space_outdoor_m2: float

    @property
    def gray_space_total_m2(self) -> float:
        return self.gray_space_indoor_m2 + self.gray_space_outdoor_m2

    def plan_for(self, equipment_class: EquipmentClass) -> ClassPlan:
        for cls, plan in self.per_class:
            if cls is equipment_class:
                return plan
        raise KeyError(equipment_class)


def _ceil_div(numerator: int, denominator: int) -> int:
    return -(-numerator // denominator)


def pod_counts(it: ITDesign, layout: PodLayout) -> list[tuple[int, float]]:
    """(pods, rack peak kW) per rack class; pods hold one class only."""
    return [
        (_ceil_div(count, layout.racks_per_pod), spec.peak_power_kw)
        for spec, count in it.per_class
        if count > 0
    ]


def _rack_level_count_fn(
    it: ITDesign, layout: PodLayout, policy: RedundancyPolicy
):
    per_class_pods = pod_counts(it, layout)

    def count(model: EquipmentModel) -> int:
        return sum(
            pods * pod_units(rack_peak_kw, layout, model, policy)
            for pods, rack_peak_kw in per_class_pods
        )

    return count


def plan_facility(
    it: ITDesign,
    catalog: Sequence[EquipmentModel],
    layout: PodLayout = DEFAULT_POD_LAYOUT,
    policy: RedundancyPolicy = DEFAULT_POLICY,
    heat_sink: HeatSinkKind = HeatSinkKind.EVAPORATIVE,
    objective: Objective = Objective.SPACE,
) -> FacilityPlan:
    """Size every non-IT equipment class for an IT design."""
    grouped = models_by_class(catalog)
    it_kw = it.it_peak_power_kw
    plans: list[tuple[EquipmentClass, ClassPlan]] = []

    rack_count_fn = _rack_level_count_fn(it, layout, policy)
    for cls in (EquipmentClass.CDU, EquipmentClass.PDU):
        model, units = select_model(
            cls, it_kw, grouped[cls], policy, objective, count_fn=rack_count_fn
        )
        plans.append((cls, ClassPlan(model=model, it_units=units)))

    sink_class = (
        EquipmentClass.DRY_COOLER
        if heat_sink is HeatSinkKind.DRY
        else EquipmentClass.EVAPORATIVE_TOWER
    )
    for cls in (EquipmentClass.CHILLER, sink_class):
        model, units = select_model(cls, it_kw, grouped[cls], policy, objective)
        plans.append((cls, ClassPlan(model=model, it_units=units)))

    cooling_draw_kw = sum(
        plan.max_draw_kw
        for cls, plan in plans
        if cls in COOLING_DRAW_CLASSES
    )

    for cls in POWER_CHAIN_CLASSES:
        def count(model: EquipmentModel) -> int:
            total = datacenter_units(it_kw, model, policy)
            if cooling_draw_kw > 0:
                total += datacenter_units(cooling_draw_kw, model, policy)
            return total

        model, _ = select_model(
            cls, it_kw, grouped[cls], policy, objective, count_fn=count
        )
        it_units = datacenter_units(it_kw, model, policy)
        facility_units = (
            datacenter_units(cooling_draw_kw, model, policy)
            if cooling_draw_kw > 0
            else 0
        )
        plans.append((cls, ClassPlan(model=model, it_units=it_units,
                                     facility_units=facility_units)))

    indoor = sum(
        plan.gray_space_m2
        for _, plan in plans
        if plan.model.placement is Placement.INDOOR
    )
    outdoor = sum(
        plan.gray_space_m2
        for _, plan in plans
        if plan.model.placement is Placement.OUTDOOR
    )

    return FacilityPlan(
        per_class=tuple(plans),
        heat_sink=heat_sink,
        policy=policy,
        pod_layout=layout,
        facility_peak_power_mw=cooling_draw_kw / 1000.0,
        gray_space_indoor_m2=indoor,
        gray_space_outdoor_m2=outdoor,
    )
