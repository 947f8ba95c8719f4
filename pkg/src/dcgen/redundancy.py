"""Redundancy policies and equipment unit-count rules.

Two schemes are supported. Additive (N+r) installs the units needed to
carry the demand plus r spares at full rating. Fractional (xN/y) derates
every unit to y/x of nameplate so that any y/x share of the fleet carries
the load; 2N is the x=2, y=1 case. A safety margin inflates demand before
counting, for either scheme.

Unit counts are computed with exact rational arithmetic so that exact-fit
demands land on the exact count.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .catalog import EquipmentModel, PodLayout


class RedundancyKind(Enum):
    ADDITIVE = "additive"
    FRACTIONAL = "fractional"


@dataclass(frozen=True)
class RedundancyPolicy:
    kind: RedundancyKind
    r: int = 0  # spares, additive scheme only
    x: int = 1  # fleet multiple, fractional scheme only
    y: int = 1  # carrying share denominator, fractional scheme only
    safety_margin: float = 0.0

    def __post_init__(self) -> None:
        if not 0.0 <= self.safety_margin <= 1.0:
            raise ValueError("safety_margin must be within [0, 1]")
        if self.kind is RedundancyKind.ADDITIVE:
            if self.r < 0:
                raise ValueError("additive redundancy needs r >= 0")
        else:
            if not self.x >= self.y >= 1:
                raise ValueError("fractional redundancy needs x >= y >= 1")

    @classmethod
    def additive(cls, r: int, safety_margin: float = 0.0) -> "RedundancyPolicy":
        return cls(RedundancyKind.ADDITIVE, r=r, safety_margin=safety_margin)

    @classmethod
    def fractional(cls, x: int, y: int = 1, safety_margin: float = 0.0) -> "RedundancyPolicy":
        return cls(RedundancyKind.FRACTIONAL, x=x, y=y, safety_margin=safety_margin)

    @classmethod
    def parse(cls, text: str, safety_margin: float = 0.0) -> "RedundancyPolicy":
        """Parse 'n+1' style additive or '2n'/'4n3' style fractional labels."""
        label = text.strip().lower()
        match = re.fullmatch(r"n\+(\d+)", label)
        if match:
            return cls.additive(int(match.group(1)), safety_margin)
        match = re.fullmatch(r"(\d+)n(\d*)", label)
        if match:
            x = int(match.group(1))
            y = int(match.group(2)) if match.group(2) else 1
            return cls.fractional(x, y, safety_margin)
        raise ValueError(f"unrecognized redundancy '{text}' (expected n+R, 2n, 4n3, ...)")

    @property
    def label(self) -> str:
        if self.kind is RedundancyKind.ADDITIVE:
            return f"n+{self.r}"
        return f"{self.x}n" if self.y == 1 else f"{self.x}n{self.y}"

    @property
    def derate(self) -> Fraction:
        if self.kind is RedundancyKind.FRACTIONAL:
            return Fraction(self.y, self.x)
        return Fraction(1)


def effective_unit_capacity(model: EquipmentModel, policy: RedundancyPolicy) -> float:
    """Capacity one unit may carry under the policy, in kW."""
    return float(Fraction(str(model.rated_capacity_kw)) * policy.derate)


def _count_units(demand_kw: Fraction, model: EquipmentModel, policy: RedundancyPolicy) -> int:
    capacity = Fraction(str(model.rated_capacity_kw)) * policy.derate
    if capacity <= 0:
        raise ValueError(f"model '{model.id}' has zero effective capacity")
    margin = 1 + Fraction(str(policy.safety_margin))
    needed = math.ceil(demand_kw * margin / capacity)
    if policy.kind is RedundancyKind.ADDITIVE:
        needed += policy.r
    return needed


def pod_units(
    rack_peak_kw: float,
    layout: PodLayout,
    model: EquipmentModel,
    policy: RedundancyPolicy,
) -> int:
    """Units of a rack-level class (CDU, PDU) needed in one pod."""
    pod_load = Fraction(str(rack_peak_kw)) * layout.racks_per_pod
    return _count_units(pod_load, model, policy)


def datacenter_units(
    demand_kw: float,
    model: EquipmentModel,
    policy: RedundancyPolicy,
) -> int:
    """Units of a datacenter-level class needed to carry a sitewide demand."""
    return _count_units(Fraction(str(demand_kw)), model, policy)
