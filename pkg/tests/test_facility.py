import random
from fractions import Fraction

import pytest

from dcgen.catalog import (
    EquipmentClass,
    EquipmentModel,
    HeatSinkKind,
    NodeType,
    Placement,
    PodLayout,
    RackClassSpec,
    load_catalog,
)
from dcgen.facility import ClassPlan, plan_facility, pod_counts
from dcgen.it_sizing import ITDesign
from dcgen.redundancy import (
    RedundancyKind,
    RedundancyPolicy,
    datacenter_units,
    pod_units,
)
from dcgen.selector import Objective


def _design(entries, area=1.8):
    total = sum(c for _, c in entries)
    power_kw = sum(c * s.peak_power_kw for s, c in entries)
    return ITDesign(
        per_class=tuple(entries),
        total_racks=total,
        it_peak_power_kw=power_kw,
        power_density_kw_m2=power_kw / (area * total),
        white_space_m2=total * area,
        area_per_rack_m2=area,
        normalized_ru=entries[0][0].ru_height,
    )


def _unit(id, cls, rated, draw=0.0, footprint=1.0, access=0.5,
          placement=Placement.INDOOR):
    return EquipmentModel(
        id=id,
        equipment_class=cls,
        rated_capacity_kw=rated,
        max_draw_kw=draw,
        footprint_m2=footprint,
        access_factor=access,
        placement=placement,
    )


def _exact_fit_catalog():
    """One model per class, sized so a single 160 kW pod fits exactly."""
    return [
        _unit("cdu", EquipmentClass.CDU, 160.0, draw=2.0),
        _unit("pdu", EquipmentClass.PDU, 160.0),
        _unit("chiller", EquipmentClass.CHILLER, 160.0, draw=30.0),
        _unit("dry", EquipmentClass.DRY_COOLER, 160.0, draw=4.0,
              placement=Placement.OUTDOOR, access=0.3),
        _unit("evap", EquipmentClass.EVAPORATIVE_TOWER, 160.0, draw=2.0,
              placement=Placement.OUTDOOR, access=0.3),
        _unit("ups", EquipmentClass.UPS, 160.0),
        _unit("msb", EquipmentClass.MSB, 160.0),
        _unit("gen", EquipmentClass.GENERATOR, 160.0,
              placement=Placement.OUTDOOR, access=0.3),
    ]


@pytest.fixture(scope="module")
def default_catalog():
    return load_catalog()


def _single_pod_design():
    rack = RackClassSpec(node_type=NodeType.CPU, ru_height=42, peak_power_kw=10.0)
    return _design([(rack, 16)])


def test_exact_fit_single_pod_is_minimal():
    it = _single_pod_design()
    policy = RedundancyPolicy.additive(0, safety_margin=0.0)
    plan = plan_facility(
        it, _exact_fit_catalog(), PodLayout(2, 8), policy,
        heat_sink=HeatSinkKind.DRY, objective=Objective.SPACE,
    )
    for cls in (EquipmentClass.CDU, EquipmentClass.PDU, EquipmentClass.CHILLER,
                EquipmentClass.DRY_COOLER):
        assert plan.plan_for(cls).it_units == 1
    # the chosen sink is exclusive
    with pytest.raises(KeyError):
        plan.plan_for(EquipmentClass.EVAPORATIVE_TOWER)
    # power chain serves IT (1 unit) plus the 36 kW cooling draw (1 unit)
    for cls in (EquipmentClass.UPS, EquipmentClass.MSB, EquipmentClass.GENERATOR):
        class_plan = plan.plan_for(cls)
        assert class_plan.it_units == 1
        assert class_plan.facility_units == 1
        assert class_plan.serving == "Both"
    assert plan.facility_peak_power_mw == pytest.approx(0.036)


def test_additive_spare_increments_every_class():
    it = _single_pod_design()
    catalog = _exact_fit_catalog()
    plans = {
        r: plan_facility(
            it, catalog, PodLayout(2, 8),
            RedundancyPolicy.additive(r, safety_margin=0.0),
            heat_sink=HeatSinkKind.DRY, objective=Objective.SPACE,
        )
        for r in (0, 1, 2)
    }
    for r in (0, 1):
        for cls, class_plan in plans[r].per_class:
            bumped = plans[r + 1].plan_for(cls)
            # one pod, one site: every count grows by exactly one spare per
            # serving role
            assert bumped.it_units == class_plan.it_units + 1
            if class_plan.facility_units:
                assert bumped.facility_units >= class_plan.facility_units


def test_rack_level_totals_equal_pods_times_per_pod(default_catalog):
    gpu = RackClassSpec(node_type=NodeType.GPU, ru_height=42, peak_power_kw=158.0)
    storage = RackClassSpec(node_type=NodeType.STORAGE, ru_height=42, peak_power_kw=29.7)
    it = _design([(gpu, 8876), (storage, 1124)])
    layout = PodLayout(2, 8)
    policy = RedundancyPolicy.additive(1, safety_margin=0.1)
    plan = plan_facility(it, default_catalog, layout, policy,
                         heat_sink=HeatSinkKind.EVAPORATIVE, objective=Objective.SPACE)
    for cls in (EquipmentClass.CDU, EquipmentClass.PDU):
        class_plan = plan.plan_for(cls)
        expected = sum(
            pods * pod_units(peak, layout, class_plan.model, policy)
            for pods, peak in pod_counts(it, layout)
        )
        assert class_plan.it_units == expected
    assert pod_counts(it, layout) == [(555, 158.0), (71, 29.7)]


def test_gray_space_additivity_and_split(default_catalog):
    gpu = RackClassSpec(node_type=NodeType.GPU, ru_height=42, peak_power_kw=600.0)
    it = _design([(gpu, 500)])
    plan = plan_facility(
        it, default_catalog, PodLayout(2, 8), RedundancyPolicy.additive(1, 0.1),
        heat_sink=HeatSinkKind.DRY, objective=Objective.POWER,
    )
    indoor = sum(
        p.gray_space_m2 for _, p in plan.per_class
        if p.model.placement is Placement.INDOOR
    )
    outdoor = sum(
        p.gray_space_m2 for _, p in plan.per_class
        if p.model.placement is Placement.OUTDOOR
    )
    assert plan.gray_space_indoor_m2 == indoor
    assert plan.gray_space_outdoor_m2 == outdoor
    assert plan.gray_space_total_m2 == indoor + outdoor
    for _, class_plan in plan.per_class:
        expected = (
            (1 + class_plan.model.access_factor)
            * class_plan.total_units
            * class_plan.model.footprint_m2
        )
        assert class_plan.gray_space_m2 == expected


def test_facility_power_is_cooling_chain_draw(default_catalog):
    gpu = RackClassSpec(node_type=NodeType.GPU, ru_height=42, peak_power_kw=158.0)
    it = _design([(gpu, 320)])
    plan = plan_facility(
        it, default_catalog, PodLayout(2, 8), RedundancyPolicy.additive(1, 0.1),
        heat_sink=HeatSinkKind.EVAPORATIVE, objective=Objective.SPACE,
    )
    cooling_classes = (
        EquipmentClass.CDU, EquipmentClass.CHILLER, EquipmentClass.EVAPORATIVE_TOWER
    )
    expected_kw = sum(plan.plan_for(cls).max_draw_kw for cls in cooling_classes)
    assert plan.facility_peak_power_mw == pytest.approx(expected_kw / 1000.0)
    # PDU draw is not part of the cooling chain (and is zero by default)
    assert plan.plan_for(EquipmentClass.PDU).model.max_draw_kw == 0.0


def test_capacity_coverage_every_class(default_catalog):
    rng = random.Random(55)
    for _ in range(40):
        peak = rng.uniform(5.0, 900.0)
        rack = RackClassSpec(node_type=NodeType.GPU, ru_height=42, peak_power_kw=peak)
        it = _design([(rack, rng.randint(1, 4000))])
        policy = (
            RedundancyPolicy.additive(rng.randint(0, 2), rng.choice([0.0, 0.1, 0.2]))
            if rng.random() < 0.5
            else RedundancyPolicy.fractional(rng.randint(2, 4), 1, 0.1)
        )
        sink = rng.choice([HeatSinkKind.DRY, HeatSinkKind.EVAPORATIVE])
        plan = plan_facility(it, default_catalog, PodLayout(2, 8), policy,
                             heat_sink=sink, objective=Objective.SPACE)
        spares = policy.r if policy.kind is RedundancyKind.ADDITIVE else 0
        margin = 1 + policy.safety_margin
        for cls, class_plan in plan.per_class:
            rated = class_plan.model.rated_capacity_kw * float(policy.derate)
            if cls.is_rack_level:
                continue  # covered per pod, checked in the pod consistency test
            carrying = (class_plan.it_units - spares) * rated
            assert carrying >= margin * it.it_peak_power_kw - 1e-6


def test_heat_sink_exclusive_and_plan_metadata(default_catalog):
    gpu = RackClassSpec(node_type=NodeType.GPU, ru_height=42, peak_power_kw=158.0)
    it = _design([(gpu, 64)])
    policy = RedundancyPolicy.fractional(2, safety_margin=0.05)
    plan = plan_facility(it, default_catalog, PodLayout(2, 8), policy,
                         heat_sink=HeatSinkKind.EVAPORATIVE, objective=Objective.POWER)
    classes = [cls for cls, _ in plan.per_class]
    assert EquipmentClass.EVAPORATIVE_TOWER in classes
    assert EquipmentClass.DRY_COOLER not in classes
    assert plan.heat_sink is HeatSinkKind.EVAPORATIVE
    assert plan.policy is policy
    assert plan.pod_layout == PodLayout(2, 8)


def test_counts_monotonic_in_redundancy(default_catalog):
    gpu = RackClassSpec(node_type=NodeType.GPU, ru_height=42, peak_power_kw=158.0)
    it = _design([(gpu, 512)])
    layout = PodLayout(2, 8)

    def totals(policy):
        plan = plan_facility(it, default_catalog, layout, policy,
                             heat_sink=HeatSinkKind.DRY, objective=Objective.SPACE)
        return {cls: p.total_units for cls, p in plan.per_class}

    for weaker, stronger in [
        (RedundancyPolicy.additive(0, 0.1), RedundancyPolicy.additive(1, 0.1)),
        (RedundancyPolicy.additive(1, 0.0), RedundancyPolicy.additive(1, 0.2)),
        (RedundancyPolicy.fractional(4, 3, 0.1), RedundancyPolicy.fractional(2, 1, 0.1)),
    ]:
        weak, strong = totals(weaker), totals(stronger)
        for cls in weak:
            assert strong[cls] >= weak[cls]


def test_brute_force_count_oracle_small():
    rng = random.Random(56)
    for _ in range(200):
        rated = rng.uniform(20.0, 3000.0)
        model = _unit("probe", EquipmentClass.CHILLER, rated, draw=1.0)
        demand = rng.uniform(0.5, 20.0) * rated
        policy = (
            RedundancyPolicy.additive(rng.randint(0, 3), rng.uniform(0.0, 0.3))
            if rng.random() < 0.5
            else RedundancyPolicy.fractional(rng.randint(1, 5), 1, rng.uniform(0.0, 0.3))
        )
        load = (1 + Fraction(str(policy.safety_margin))) * Fraction(str(demand))
        capacity = Fraction(str(rated)) * policy.derate
        units = 1
        while units * capacity < load:
            units += 1
        if policy.kind is RedundancyKind.ADDITIVE:
            units += policy.r
        assert datacenter_units(demand, model, policy) == units


def test_rack_level_capacity_covers_each_pod(default_catalog):
    rng = random.Random(57)
    layout = PodLayout(2, 8)
    for _ in range(30):
        peak = rng.uniform(2.0, 700.0)
        rack = RackClassSpec(node_type=NodeType.GPU, ru_height=42, peak_power_kw=peak)
        it = _design([(rack, rng.randint(1, 900))])
        policy = (
            RedundancyPolicy.additive(rng.randint(0, 2), rng.choice([0.0, 0.1]))
            if rng.random() < 0.5
            else RedundancyPolicy.fractional(2, 1, 0.1)
        )
        plan = plan_facility(it, default_catalog, layout, policy,
                             heat_sink=HeatSinkKind.DRY, objective=Objective.SPACE)
        spares = policy.r if policy.kind is RedundancyKind.ADDITIVE else 0
        pod_load = layout.racks_per_pod * peak * (1 + policy.safety_margin)
        for cls in (EquipmentClass.CDU, EquipmentClass.PDU):
            class_plan = plan.plan_for(cls)
            per_pod = pod_units(peak, layout, class_plan.model, policy)
            carrying = (per_pod - spares) * (
                class_plan.model.rated_capacity_kw * float(policy.derate)
            )
            assert carrying >= pod_load - 1e-6


def test_class_plan_serving_labels():
    model = _unit("u", EquipmentClass.UPS, 100.0)
    assert ClassPlan(model, it_units=2).serving == "IT"
    assert ClassPlan(model, it_units=2, facility_units=1).serving == "Both"
    assert ClassPlan(model, it_units=0, facility_units=3).serving == "Facility"
