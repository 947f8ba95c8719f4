"""Storage rack estimation rules.

Most surveyed systems publish compute rack data but not storage. These
rules back out storage rack counts from what is known: total storage
volume, the share of facility power that storage draws in comparable
systems (4.2% in AI fleets, 18% in cloud fleets), or the IOPS a storage
rack can feed to inference compute (404 IOPS per TFLOPS served).

All ratios are evaluated with exact rational arithmetic before the final
ceiling, so rule outputs never suffer float off-by-one at exact-fit
boundaries.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import ceil

from .catalog import DatacenterType, NodeType, RackClassSpec, ReferenceITConfig

# Share of total electrical power drawn by storage racks when volume data
# is unavailable: AI fleets vs cloud fleets.
AI_STORAGE_POWER_SHARE = Fraction(42, 1000)
CLOUD_STORAGE_POWER_SHARE = Fraction(18, 100)

# Disk IOPS demanded per TFLOPS of inference compute served.
IOPS_PER_TFLOPS = 404


class StorageRegime(Enum):
    AI = "AI"
    CLOUD = "Cloud"


@dataclass(frozen=True)
class StorageNodeModel:
    """Reference 1U storage server used for all estimates."""

    capacity_tb_per_node: float = 51.2  # 8 x 6.4 TB SSD
    peak_power_w_ai: float = 708.0  # both CPUs plus 8 SSDs at full write
    peak_power_w_cloud: float = 438.0  # single CPU plus 8 SSDs at full write
    iops_per_node: float = 7_200_000.0  # 8 disks x 900k random-write IOPS
    ru_per_node: int = 1

    def __post_init__(self) -> None:
        values = (
            self.capacity_tb_per_node,
            self.peak_power_w_ai,
            self.peak_power_w_cloud,
            self.iops_per_node,
            self.ru_per_node,
        )
        if any(v <= 0 for v in values):
            raise ValueError("storage node model fields must all be positive")


DEFAULT_STORAGE_NODE = StorageNodeModel()


def _frac(value: float | int) -> Fraction:
    """Exact decimal value of a number (str round-trip keeps 0.1 as 1/10)."""
    return Fraction(str(value))


def _require_positive(**values: float | int) -> None:
    for name, value in values.items():
        if value <= 0:
            raise ValueError(f"{name} must be positive, got {value}")


def storage_rack_peak_kw(
    ru_rack: int,
    node: StorageNodeModel = DEFAULT_STORAGE_NODE,
    regime: StorageRegime = StorageRegime.AI,
) -> float:
    """Peak power of a rack filled with storage nodes, in kW."""
    _require_positive(ru_rack=ru_rack)
    watts = node.peak_power_w_ai if regime is StorageRegime.AI else node.peak_power_w_cloud
    nodes_per_rack = ru_rack // node.ru_per_node
    return float(_frac(watts) * nodes_per_rack / 1000)


def storage_racks_from_volume(
    total_storage_tb: float,
    ru_rack: int,
    node: StorageNodeModel = DEFAULT_STORAGE_NODE,
) -> int:
    """Racks needed to hold a total storage volume."""
    _require_positive(total_storage_tb=total_storage_tb, ru_rack=ru_rack)
    nodes_per_rack = ru_rack // node.ru_per_node
    per_rack_tb = _frac(node.capacity_tb_per_node) * nodes_per_rack
    return ceil(_frac(total_storage_tb) / per_rack_tb)


def ai_storage_power_kw(compute_rack_count: int, compute_rack_peak_kw: float) -> float:
    """Storage power implied by the AI power-share rule, in kW.

    Storage is assumed to draw 4.2% of total power, so it equals
    4.2/95.8 of the compute power.
    """
    _require_positive(
        compute_rack_count=compute_rack_count, compute_rack_peak_kw=compute_rack_peak_kw
    )
    compute_kw = compute_rack_count * _frac(compute_rack_peak_kw)
    share = AI_STORAGE_POWER_SHARE / (1 - AI_STORAGE_POWER_SHARE)
    return float(compute_kw * share)


def storage_racks_ai_power_rule(
    compute_rack_count: int,
    compute_rack_peak_kw: float,
    ru_rack: int,
    node: StorageNodeModel = DEFAULT_STORAGE_NODE,
) -> int:
    """Storage racks for AI fleets via the 4.2% power-share rule."""
    _require_positive(
        compute_rack_count=compute_rack_count,
        compute_rack_peak_kw=compute_rack_peak_kw,
        ru_rack=ru_rack,
    )
    numerator = AI_STORAGE_POWER_SHARE * compute_rack_count * _frac(compute_rack_peak_kw)
    nodes_per_rack = ru_rack // node.ru_per_node
    denominator = (
        (1 - AI_STORAGE_POWER_SHARE) * nodes_per_rack * _frac(node.peak_power_w_ai) / 1000
    )
    return ceil(numerator / denominator)


def storage_racks_cloud_power_rule(
    cpu_rack_count: int,
    cpu_rack_peak_kw: float,
    ru_rack: int,
    node: StorageNodeModel = DEFAULT_STORAGE_NODE,
) -> int:
    """Storage racks for cloud fleets via the 18% power-share rule."""
    _require_positive(
        cpu_rack_count=cpu_rack_count, cpu_rack_peak_kw=cpu_rack_peak_kw, ru_rack=ru_rack
    )
    numerator = CLOUD_STORAGE_POWER_SHARE * cpu_rack_count * _frac(cpu_rack_peak_kw)
    nodes_per_rack = ru_rack // node.ru_per_node
    denominator = (
        (1 - CLOUD_STORAGE_POWER_SHARE) * nodes_per_rack * _frac(node.peak_power_w_cloud) / 1000
    )
    return ceil(numerator / denominator)


def storage_racks_inference_iops_rule(
    compute_capability_tflops: float,
    ru_rack: int,
    node: StorageNodeModel = DEFAULT_STORAGE_NODE,
) -> int:
    """Storage racks needed to feed an inference fleet's IOPS demand."""
    _require_positive(compute_capability_tflops=compute_capability_tflops, ru_rack=ru_rack)
    demand_iops = _frac(compute_capability_tflops) * IOPS_PER_TFLOPS
    nodes_per_rack = ru_rack // node.ru_per_node
    rack_iops = _frac(node.iops_per_node) * nodes_per_rack
    return ceil(demand_iops / rack_iops)


def compute_racks_per_storage_rack(
    tflops_per_compute_rack: float,
    ru_rack: int,
    node: StorageNodeModel = DEFAULT_STORAGE_NODE,
) -> int:
    """Inverse of the IOPS rule: compute racks one storage rack serves."""
    _require_positive(tflops_per_compute_rack=tflops_per_compute_rack, ru_rack=ru_rack)
    nodes_per_rack = ru_rack // node.ru_per_node
    rack_iops = _frac(node.iops_per_node) * nodes_per_rack
    served_tflops = rack_iops / IOPS_PER_TFLOPS
    return ceil(served_tflops / _frac(tflops_per_compute_rack))


def estimate_storage_racks(
    config: ReferenceITConfig,
    node: StorageNodeModel = DEFAULT_STORAGE_NODE,
) -> int:
    """Estimate storage racks for a config that lacks an explicit entry.

    Dispatch order: total volume when known; the IOPS rule for inference
    configs with a stated compute capability; otherwise the power-share
    rule for the config's regime (4.2% AI, 18% cloud).
    """
    compute_entries = [
        (spec, count)
        for spec, count in config.entries
        if spec.node_type is not NodeType.STORAGE
    ]
    if not compute_entries:
        raise ValueError(f"config '{config.name}' has no compute racks")
    ru_rack = compute_entries[0][0].ru_height

    if config.total_storage_tb is not None:
        return storage_racks_from_volume(config.total_storage_tb, ru_rack, node)
    if config.dc_type is DatacenterType.AI_INFERENCE:
        if config.compute_capability_tflops is None:
            raise ValueError(
                f"config '{config.name}': inference storage estimate needs "
                "compute_capability_tflops"
            )
        return storage_racks_inference_iops_rule(
            config.compute_capability_tflops, ru_rack, node
        )
    if config.dc_type in (DatacenterType.AI_TRAINING, DatacenterType.MIXED):
        numerator = AI_STORAGE_POWER_SHARE * sum(
            count * _frac(spec.peak_power_kw) for spec, count in compute_entries
        )
        nodes_per_rack = ru_rack // node.ru_per_node
        denominator = (
            (1 - AI_STORAGE_POWER_SHARE) * nodes_per_rack * _frac(node.peak_power_w_ai) / 1000
        )
        return ceil(numerator / denominator)
    numerator = CLOUD_STORAGE_POWER_SHARE * sum(
        count * _frac(spec.peak_power_kw) for spec, count in compute_entries
    )
    nodes_per_rack = ru_rack // node.ru_per_node
    denominator = (
        (1 - CLOUD_STORAGE_POWER_SHARE) * nodes_per_rack * _frac(node.peak_power_w_cloud) / 1000
    )
    return ceil(numerator / denominator)


def with_estimated_storage(
    config: ReferenceITConfig,
    node: StorageNodeModel = DEFAULT_STORAGE_NODE,
) -> ReferenceITConfig:
    """Return the config with a storage entry appended if it lacks one."""
    if config.entry_for(NodeType.STORAGE) is not None:
        return config
    racks = estimate_storage_racks(config, node)
    regime = (
        StorageRegime.CLOUD
        if config.dc_type is DatacenterType.CLOUD
        else StorageRegime.AI
    )
    ru_rack = config.entries[0][0].ru_height
    storage_spec = RackClassSpec(
        node_type=NodeType.STORAGE,
        ru_height=ru_rack,
        peak_power_kw=storage_rack_peak_kw(ru_rack, node, regime),
        is_hpc=False,
    )
    return ReferenceITConfig(
        name=config.name,
        year=config.year,
        dc_type=config.dc_type,
        entries=config.entries + ((storage_spec, racks),),
        area_per_rack_m2=config.area_per_rack_m2,
        total_storage_tb=config.total_storage_tb,
        compute_capability_tflops=config.compute_capability_tflops,
    )
