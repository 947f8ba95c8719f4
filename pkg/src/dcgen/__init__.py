"""Datacenter hardware design generator.

Generates realistic datacenter designs (IT rack layout, cooling chain,
power-distribution chain) from either a rack-count target or an
electrical-power target, using a library of reference and canonical IT
configurations plus an editable equipment catalog.
"""

from .catalog import (
    CatalogError,
    DatacenterType,
    EquipmentClass,
    EquipmentModel,
    HeatSinkKind,
    NodeType,
    Placement,
    PodLayout,
    RackClassSpec,
    ReferenceITConfig,
    canonical_name,
    find_config,
    load_catalog,
    load_reference_library,
    models_by_class,
    serialize_catalog,
    serialize_library,
)
from .cli import DesignDocument, ScenarioRequest, paper_case_studies, run, sweep
from .facility import ClassPlan, FacilityPlan, plan_facility
from .it_sizing import (
    InfeasibleTargetError,
    ITDesign,
    SizingTarget,
    largest_remainder_apportionment,
    normalize_config,
    normalize_rack,
    power_density,
    size_by_power,
    size_by_racks,
)
from .redundancy import (
    RedundancyPolicy,
    datacenter_units,
    effective_unit_capacity,
    pod_units,
)
from .selector import Objective, select_model
from .storage import (
    StorageNodeModel,
    StorageRegime,
    ai_storage_power_kw,
    compute_racks_per_storage_rack,
    estimate_storage_racks,
    storage_rack_peak_kw,
    storage_racks_ai_power_rule,
    storage_racks_cloud_power_rule,
    storage_racks_from_volume,
    storage_racks_inference_iops_rule,
    with_estimated_storage,
)

__version__ = "0.1.0"

__all__ = [
    "CatalogError",
    "ClassPlan",
    "DatacenterType",
    "DesignDocument",
    "EquipmentClass",
    "EquipmentModel",
    "FacilityPlan",
    "HeatSinkKind",
    "ITDesign",
    "InfeasibleTargetError",
    "NodeType",
    "Objective",
    "Placement",
    "PodLayout",
    "RackClassSpec",
    "RedundancyPolicy",
    "ReferenceITConfig",
    "ScenarioRequest",
    "SizingTarget",
    "StorageNodeModel",
    "StorageRegime",
    "ai_storage_power_kw",
    "canonical_name",
    "compute_racks_per_storage_rack",
    "datacenter_units",
    "effective_unit_capacity",
    "estimate_storage_racks",
    "find_config",
    "largest_remainder_apportionment",
    "load_catalog",
    "load_reference_library",
    "models_by_class",
    "normalize_config",
    "normalize_rack",
    "paper_case_studies",
    "plan_facility",
    "pod_units",
    "power_density",
    "run",
    "select_model",
    "serialize_catalog",
    "serialize_library",
    "size_by_power",
    "size_by_racks",
    "storage_rack_peak_kw",
    "storage_racks_ai_power_rule",
    "storage_racks_cloud_power_rule",
    "storage_racks_from_volume",
    "storage_racks_inference_iops_rule",
    "sweep",
    "with_estimated_storage",
]
