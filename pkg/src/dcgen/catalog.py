"""Equipment catalog and reference IT configuration library.

Both are plain JSON data files. The catalog lists cooling and
power-distribution hardware (rated capacity, electrical draw, footprint,
access-area factor, placement); the library lists rack-level IT
configurations, covering surveyed real-world systems and the canonical
per-type/per-year models. Loaders validate all invariants up front and
return immutable values, so loaded data is safe to share across threads.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from enum import Enum
from importlib import resources
from pathlib import Path
from typing import Iterable, Optional

SCHEMA_VERSION = "1.0"

CATALOG_FILENAME = "equipment_catalog.json"
LIBRARY_FILENAME = "reference_library.json"

DATA_DIR_ENV = "DCGEN_DATA_DIR"


class CatalogError(ValueError):
    """Raised for malformed or inconsistent catalog/library data."""


class EquipmentClass(Enum):
    """Non-IT hardware classes, cooling chain and power chain."""

    CDU = "CDU"
    PDU = "PDU"
    CHILLER = "Chiller"
    DRY_COOLER = "DryCooler"
    EVAPORATIVE_TOWER = "EvaporativeTower"
    UPS = "UPS"
    MSB = "MSB"
    GENERATOR = "Generator"

    @property
    def is_rack_level(self) -> bool:
        """CDUs and PDUs are deployed per pod; everything else is sitewide."""
        return self in (EquipmentClass.CDU, EquipmentClass.PDU)

    @property
    def is_heat_sink(self) -> bool:
        return self in (EquipmentClass.DRY_COOLER, EquipmentClass.EVAPORATIVE_TOWER)

    @property
    def is_cooling(self) -> bool:
        return self in (
            EquipmentClass.CDU,
            EquipmentClass.CHILLER,
            EquipmentClass.DRY_COOLER,
            EquipmentClass.EVAPORATIVE_TOWER,
        )


class Placement(Enum):
    INDOOR = "Indoor"
    OUTDOOR = "Outdoor"


class HeatSinkKind(Enum):
    EVAPORATIVE = "Evaporative"
    DRY = "Dry"


class NodeType(Enum):
    GPU = "GPU"
    CPU_GPU = "CPU_GPU"
    CPU = "CPU"
    STORAGE = "Storage"


class DatacenterType(Enum):
    AI_TRAINING = "ai-training"
    MIXED = "mixed"
    AI_INFERENCE = "ai-inference"
    CLOUD = "cloud"


# Which node types a datacenter type may contain.
ALLOWED_NODE_TYPES = {
    DatacenterType.AI_TRAINING: {NodeType.GPU, NodeType.STORAGE},
    DatacenterType.MIXED: {NodeType.GPU, NodeType.CPU_GPU, NodeType.STORAGE},
    DatacenterType.AI_INFERENCE: {NodeType.CPU_GPU, NodeType.CPU, NodeType.STORAGE},
    DatacenterType.CLOUD: {NodeType.CPU, NodeType.STORAGE},
}


@dataclass(frozen=True)
class EquipmentModel:
    """One catalog entry for a cooling or power-distribution unit.

    rated_capacity_kw is the load the unit serves (heat removed for cooling
    classes, power delivered for electrical classes); max_draw_kw is the
    electricity the unit itself consumes at peak and may be 0 for electrical
    classes in the default catalog.
    """

    id: str
    equipment_class: EquipmentClass
    rated_capacity_kw: float
    max_draw_kw: float
    footprint_m2: float
    access_factor: float
    placement: Placement
    heat_sink_kind: Optional[HeatSinkKind] = None

    def __post_init__(self) -> None:
        if not self.id:
            raise CatalogError("equipment model with empty id")
        if self.rated_capacity_kw <= 0:
            raise CatalogError(f"model '{self.id}': rated_capacity_kw must be > 0")
        if self.max_draw_kw < 0:
            raise CatalogError(f"model '{self.id}': max_draw_kw must be >= 0")
        if self.footprint_m2 <= 0:
            raise CatalogError(f"model '{self.id}': footprint_m2 must be > 0")
        if self.access_factor < 0:
            raise CatalogError(f"model '{self.id}': access_factor must be >= 0")
        if self.equipment_class.is_heat_sink:
            expected = (
                HeatSinkKind.DRY
                if self.equipment_class is EquipmentClass.DRY_COOLER
                else HeatSinkKind.EVAPORATIVE
            )
            if self.heat_sink_kind is None:
                object.__setattr__(self, "heat_sink_kind", expected)
            elif self.heat_sink_kind is not expected:
                raise CatalogError(
                    f"model '{self.id}': heat_sink_kind {self.heat_sink_kind.value} "
                    f"conflicts with class {self.equipment_class.value}"
                )
        elif self.heat_sink_kind is not None:
            raise CatalogError(
                f"model '{self.id}': heat_sink_kind only applies to heat-sink classes"
            )


@dataclass(frozen=True)
class RackClassSpec:
    """One homogeneous rack class: the atomic IT unit of a design."""

    node_type: NodeType
    ru_height: int
    peak_power_kw: float
    is_hpc: bool = False
    pflops: Optional[float] = None

    def __post_init__(self) -> None:
        if not 1 <= self.ru_height <= 60:
            raise CatalogError(f"rack ru_height {self.ru_height} outside [1, 60]")
        if self.peak_power_kw <= 0:
            raise CatalogError("rack peak_power_kw must be > 0")
        if self.pflops is not None and self.pflops < 0:
            raise CatalogError("rack pflops must be >= 0")


@dataclass(frozen=True)
class ReferenceITConfig:
    """A named reference or canonical datacenter IT layout."""

    name: str
    year: int
    dc_type: DatacenterType
    entries: tuple[tuple[RackClassSpec, int], ...]
    area_per_rack_m2: float
    total_storage_tb: Optional[float] = None
    compute_capability_tflops: Optional[float] = None

    def __post_init__(self) -> None:
        if self.year not in (2024, 2027, 2029):
            raise CatalogError(f"config '{self.name}': year {self.year} not in 2024/2027/2029")
        if not self.entries:
            raise CatalogError(f"config '{self.name}': no rack entries")
        if self.area_per_rack_m2 <= 0:
            raise CatalogError(f"config '{self.name}': area_per_rack_m2 must be > 0")
        if self.total_storage_tb is not None and self.total_storage_tb <= 0:
            raise CatalogError(f"config '{self.name}': total_storage_tb must be > 0")
        if self.compute_capability_tflops is not None and self.compute_capability_tflops <= 0:
            raise CatalogError(f"config '{self.name}': compute_capability_tflops must be > 0")
        seen: set[NodeType] = set()
        allowed = ALLOWED_NODE_TYPES[self.dc_type]
        for spec, count in self.entries:
            if count < 1:
                raise CatalogError(f"config '{self.name}': rack count must be >= 1")
            if spec.node_type in seen:
                raise CatalogError(
                    f"config '{self.name}': duplicate entry for node type {spec.node_type.value}"
                )
            seen.add(spec.node_type)
            if spec.node_type not in allowed:
                raise CatalogError(
                    f"config '{self.name}': node type {spec.node_type.value} not allowed "
                    f"in {self.dc_type.value} datacenters"
                )

    @property
    def total_racks(self) -> int:
        return sum(count for _, count in self.entries)

    @property
    def total_power_kw(self) -> float:
        return sum(count * spec.peak_power_kw for spec, count in self.entries)

    def entry_for(self, node_type: NodeType) -> Optional[tuple[RackClassSpec, int]]:
        for spec, count in self.entries:
            if spec.node_type is node_type:
                return spec, count
        return None


@dataclass(frozen=True)
class PodLayout:
    """Rack grouping served by shared rack-level cooling/power units."""

    rows_per_pod: int = 2
    racks_per_row: int = 8

    def __post_init__(self) -> None:
        if self.rows_per_pod < 1 or self.racks_per_row < 1:
            raise CatalogError("pod layout dimensions must be >= 1")

    @property
    def racks_per_pod(self) -> int:
        return self.rows_per_pod * self.racks_per_row


# ---------------------------------------------------------------------------
# Data-file loading


def packaged_data_dir() -> Path:
    """Directory holding the data files shipped inside the package."""
    return Path(str(resources.files("dcgen") / "data"))


def default_data_dir() -> Path:
    """Shipped data directory, overridable via the DCGEN_DATA_DIR env var."""
    override = os.environ.get(DATA_DIR_ENV)
    if override:
        return Path(override)
    return packaged_data_dir()


def default_catalog_path() -> Path:
    return default_data_dir() / CATALOG_FILENAME


def default_library_path() -> Path:
    return default_data_dir() / LIBRARY_FILENAME


def _read_json(path: str | Path) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise CatalogError(f"{path}: not valid JSON ({exc})") from exc


def _check_schema_version(doc: dict, path: str | Path) -> None:
    version = doc.get("schema_version")
    if not isinstance(version, str):
        raise CatalogError(f"{path}: missing schema_version")
    major = version.split(".")[0]
    if major != SCHEMA_VERSION.split(".")[0]:
        raise CatalogError(f"{path}: unsupported schema_version {version}")


def _enum_value(enum_cls, raw, context: str):
    try:
        return enum_cls(raw)
    except ValueError:
        choices = ", ".join(e.value for e in enum_cls)
        raise CatalogError(f"{context}: unknown value {raw!r} (expected one of {choices})")


def load_catalog(path: str | Path | None = None) -> list[EquipmentModel]:
    """Load and validate the equipment catalog file.

    Every equipment class must have at least one model.
    """
    path = Path(path) if path is not None else default_catalog_path()
    doc = _read_json(path)
    _check_schema_version(doc, path)
    raw_models = doc.get("models")
    if not isinstance(raw_models, list):
        raise CatalogError(f"{path}: missing 'models' list")

    models: list[EquipmentModel] = []
    seen_ids: set[str] = set()
    for raw in raw_models:
        context = f"{path}: model '{raw.get('id', '?')}'"
        try:
            model = EquipmentModel(
                id=str(raw["id"]),
                equipment_class=_enum_value(EquipmentClass, raw["class"], context),
                rated_capacity_kw=float(raw["rated_capacity_kw"]),
                max_draw_kw=float(raw.get("max_draw_kw", 0.0)),
                footprint_m2=float(raw["footprint_m2"]),
                access_factor=float(raw["access_factor"]),
                placement=_enum_value(Placement, raw["placement"], context),
                heat_sink_kind=(
                    _enum_value(HeatSinkKind, raw["heat_sink_kind"], context)
                    if "heat_sink_kind" in raw
                    else None
                ),
            )
        except KeyError as exc:
            raise CatalogError(f"{context}: missing field {exc}") from exc
        if model.id in seen_ids:
            raise CatalogError(f"{path}: duplicate model id '{model.id}'")
        seen_ids.add(model.id)
        models.append(model)

    present = {m.equipment_class for m in models}
    for cls in EquipmentClass:
        if cls not in present:
            raise CatalogError(f"{path}: no models for class {cls.value}")
    return models


def _rack_entry_from_raw(raw: dict, context: str) -> tuple[RackClassSpec, int]:
    spec = RackClassSpec(
        node_type=_enum_value(NodeType, raw["node_type"], context),
        ru_height=int(raw["ru_height"]),
        peak_power_kw=float(raw["peak_power_kw"]),
        is_hpc=bool(raw.get("is_hpc", False)),
        pflops=float(raw["pflops"]) if raw.get("pflops") is not None else None,
    )
    return spec, int(raw["count"])


def load_reference_library(path: str | Path | None = None) -> list[ReferenceITConfig]:
    """Load and validate the reference IT configuration library file."""
    path = Path(path) if path is not None else default_library_path()
    doc = _read_json(path)
    _check_schema_version(doc, path)
    raw_configs = doc.get("configs")
    if not isinstance(raw_configs, list):
        raise CatalogError(f"{path}: missing 'configs' list")

    configs: list[ReferenceITConfig] = []
    seen: set[str] = set()
    for raw in raw_configs:
        name = str(raw.get("name", "?"))
        context = f"{path}: config '{name}'"
        try:
            config = ReferenceITConfig(
                name=name,
                year=int(raw["year"]),
                dc_type=_enum_value(DatacenterType, raw["dc_type"], context),
                entries=tuple(
                    _rack_entry_from_raw(entry, context) for entry in raw["entries"]
                ),
                area_per_rack_m2=float(raw["area_per_rack_m2"]),
                total_storage_tb=(
                    float(raw["total_storage_tb"])
                    if raw.get("total_storage_tb") is not None
                    else None
                ),
                compute_capability_tflops=(
                    float(raw["compute_capability_tflops"])
                    if raw.get("compute_capability_tflops") is not None
                    else None
                ),
            )
        except KeyError as exc:
            raise CatalogError(f"{context}: missing field {exc}") from exc
        if config.name in seen:
            raise CatalogError(f"{path}: duplicate config name '{config.name}'")
        seen.add(config.name)
        configs.append(config)
    return configs


def models_by_class(models: Iterable[EquipmentModel]) -> dict[EquipmentClass, list[EquipmentModel]]:
    grouped: dict[EquipmentClass, list[EquipmentModel]] = {cls: [] for cls in EquipmentClass}
    for model in models:
        grouped[model.equipment_class].append(model)
    return grouped


def find_config(configs: Iterable[ReferenceITConfig], name: str) -> ReferenceITConfig:
    for config in configs:
        if config.name == name:
            return config
    raise CatalogError(f"unknown reference config '{name}'")


def canonical_name(dc_type: DatacenterType, year: int) -> str:
    return f"canonical-{dc_type.value}-{year}"


# ---------------------------------------------------------------------------
# Serialization (inverse of the loaders, used for round-trip checks and
# for writing user-edited data files back out)


def _model_to_raw(model: EquipmentModel) -> dict:
    raw = {
        "id": model.id,
        "class": model.equipment_class.value,
        "rated_capacity_kw": model.rated_capacity_kw,
        "max_draw_kw": model.max_draw_kw,
        "footprint_m2": model.footprint_m2,
        "access_factor": model.access_factor,
        "placement": model.placement.value,
    }
    if model.heat_sink_kind is not None:
        raw["heat_sink_kind"] = model.heat_sink_kind.value
    return raw


def serialize_catalog(models: Iterable[EquipmentModel]) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "models": [_model_to_raw(m) for m in models],
    }


def _config_to_raw(config: ReferenceITConfig) -> dict:
    raw: dict = {
        "name": config.name,
        "year": config.year,
        "dc_type": config.dc_type.value,
        "area_per_rack_m2": config.area_per_rack_m2,
        "entries": [],
    }
    for spec, count in config.entries:
        entry = {
            "node_type": spec.node_type.value,
            "ru_height": spec.ru_height,
            "peak_power_kw": spec.peak_power_kw,
            "is_hpc": spec.is_hpc,
            "count": count,
        }
        if spec.pflops is not None:
            entry["pflops"] = spec.pflops
        raw["entries"].append(entry)
    if config.total_storage_tb is not None:
        raw["total_storage_tb"] = config.total_storage_tb
    if config.compute_capability_tflops is not None:
        raw["compute_capability_tflops"] = config.compute_capability_tflops
    return raw


def serialize_library(configs: Iterable[ReferenceITConfig]) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "configs": [_config_to_raw(c) for c in configs],
    }
