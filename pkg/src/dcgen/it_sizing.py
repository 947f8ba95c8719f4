"""IT layout generation from a rack-count or electrical-power target.

A reference configuration fixes the mix of rack classes; a target fixes
the scale. Rack counts are apportioned to the target by the reference
fractions using largest-remainder rounding, so per-class counts always
sum exactly to the target and scaling a reference by an integer factor
reproduces it exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .catalog import RackClassSpec, ReferenceITConfig


class InfeasibleTargetError(ValueError):
    """Target too small to place at least one rack of every class."""


@dataclass(frozen=True)
class SizingTarget:
    """Either a total rack count or a peak electrical power in MW."""

    racks: Optional[int] = None
    power_mw: Optional[float] = None

    def __post_init__(self) -> None:
        if (self.racks is None) == (self.power_mw is None):
            raise ValueError("exactly one of racks or power_mw must be set")
        if self.racks is not None and self.racks < 1:
            raise ValueError("rack target must be >= 1")
        if self.power_mw is not None and self.power_mw <= 0:
            raise ValueError("power target must be > 0")

    @property
    def kind(self) -> str:
        return "racks" if self.racks is not None else "power_mw"

    @property
    def value(self) -> float | int:
        return self.racks if self.racks is not None else self.power_mw


@dataclass(frozen=True)
class ITDesign:
    """Generated IT layout with its headline metrics."""

    per_class: tuple[tuple[RackClassSpec, int], ...]
    total_racks: int
    it_peak_power_kw: float
    power_density_kw_m2: float
    white_space_m2: float
    area_per_rack_m2: float
    normalized_ru: int

    @property
    def it_peak_power_mw(self) -> float:
        return self.it_peak_power_kw / 1000.0


def largest_remainder_apportionment(weights: Sequence[int], total: int) -> list[int]:
    """Split an integer total proportionally to weights, conserving the sum.

    Floors the exact shares, then hands the leftover units to the largest
    fractional remainders (ties broken by larger weight, then position).
    Classes with positive weight are topped up to at least one unit when
    the total allows it.
    """
    if total < 0:
        raise ValueError("total must be >= 0")
    if any(w < 0 for w in weights):
        raise ValueError("weights must be >= 0")
    weight_sum = sum(weights)
    if weight_sum == 0:
        raise ValueError("at least one weight must be positive")

    shares = [Fraction(w * total, weight_sum) for w in weights]
    counts = [int(s) for s in shares]  # exact floor, shares are nonnegative
    leftover = total - sum(counts)
    order = sorted(
        range(len(weights)),
        key=lambda i: (shares[i] - counts[i], weights[i], -i),
        reverse=True,
    )
    for i in order[:leftover]:
        counts[i] += 1

    # Largest-remainder can starve a tiny class; steal from the biggest.
    positive = [i for i, w in enumerate(weights) if w > 0]
    if total >= len(positive):
        for i in positive:
            while counts[i] == 0:
                donor = max(
                    (j for j in positive if counts[j] > 1),
                    key=lambda j: counts[j],
                )
                counts[donor] -= 1
                counts[i] += 1
    return counts


def normalize_rack(spec: RackClassSpec, target_ru: int) -> RackClassSpec:
    """Rescale a rack class to a common rack height.

    Power scales with the RU ratio; high-density HPC racks are additionally
    derated to 2/3 when mapped onto standard datacenter racks. Per-rack
    compute scales with the RU ratio only.
    """
    if target_ru < 1:
        raise ValueError("target_ru must be >= 1")
    ratio = Fraction(target_ru, spec.ru_height)
    peak = Fraction(str(spec.peak_power_kw)) * ratio
    if spec.is_hpc:
        peak *= Fraction(2, 3)
    pflops = None
    if spec.pflops is not None:
        pflops = float(Fraction(str(spec.pflops)) * ratio)
    return RackClassSpec(
        node_type=spec.node_type,
        ru_height=target_ru,
        peak_power_kw=float(peak),
        is_hpc=False,
        pflops=pflops,
    )


def normalize_config(ref: ReferenceITConfig, target_ru: int) -> ReferenceITConfig:
    """Normalize every rack class of a reference config to one rack height."""
    if all(spec.ru_height == target_ru and not spec.is_hpc for spec, _ in ref.entries):
        return ref
    return ReferenceITConfig(
        name=ref.name,
        year=ref.year,
        dc_type=ref.dc_type,
        entries=tuple((normalize_rack(spec, target_ru), count) for spec, count in ref.entries),
        area_per_rack_m2=ref.area_per_rack_m2,
        total_storage_tb=ref.total_storage_tb,
        compute_capability_tflops=ref.compute_capability_tflops,
    )


def power_density(ref: ReferenceITConfig) -> float:
    """Peak electrical power per unit of white space, in kW/m2."""
    return ref.total_power_kw / (ref.area_per_rack_m2 * ref.total_racks)


def _build_design(
    entries: Sequence[tuple[RackClassSpec, int]], area_per_rack_m2: float
) -> ITDesign:
    total = sum(count for _, count in entries)
    power_kw = sum(count * spec.peak_power_kw for spec, count in entries)
    return ITDesign(
        per_class=tuple(entries),
        total_racks=total,
        it_peak_power_kw=power_kw,
        power_density_kw_m2=power_kw / (area_per_rack_m2 * total),
        white_space_m2=total * area_per_rack_m2,
        area_per_rack_m2=area_per_rack_m2,
        normalized_ru=entries[0][0].ru_height,
    )


def size_by_racks(ref: ReferenceITConfig, n_rack: int) -> ITDesign:
    """Scale a reference mix to a total rack count."""
    if n_rack < len(ref.entries):
        raise InfeasibleTargetError(
            f"{n_rack} racks cannot host all {len(ref.entries)} rack classes "
            f"of '{ref.name}'"
        )
    counts = largest_remainder_apportionment([c for _, c in ref.entries], n_rack)
    entries = [(spec, count) for (spec, _), count in zip(ref.entries, counts)]
    return _build_design(entries, ref.area_per_rack_m2)


def size_by_power(ref: ReferenceITConfig, p_dc_max_mw: float) -> ITDesign:
    """Scale a reference mix to a peak electrical power target.

    The power target fixes the floor space through the reference power
    density; the rack count is the nearest integer fit of that space
    (half-up). Achieved power lands within one rack of the target.
    """
    if p_dc_max_mw <= 0:
        raise InfeasibleTargetError("power target must be > 0")
    density = power_density(ref)
    floor_space_m2 = 1000.0 * p_dc_max_mw / density
    n_rack = math.floor(floor_space_m2 / ref.area_per_rack_m2 + 0.5)
    if n_rack < len(ref.entries):
        raise InfeasibleTargetError(
            f"power target {p_dc_max_mw} MW is below the smallest feasible "
            f"layout of '{ref.name}'"
        )
    return size_by_racks(ref, n_rack)


def size(ref: ReferenceITConfig, target: SizingTarget) -> ITDesign:
    if target.racks is not None:
        return size_by_racks(ref, target.racks)
    return size_by_power(ref, target.power_mw)
