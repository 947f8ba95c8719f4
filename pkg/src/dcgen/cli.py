"""Command-line entry point and scenario orchestration.

Generates a full design document (IT layout plus one facility plan per
heat-sink variant) for a single target, or sweeps a list of scenarios into
a CSV metric table plus per-scenario JSON documents. Output is fully
deterministic: identical inputs produce byte-identical files.

Exit codes: 0 ok, 2 usage error, 3 data error, 4 infeasible target.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Optional, Sequence

from .catalog import (
    CatalogError,
    DatacenterType,
    HeatSinkKind,
    canonical_name,
    find_config,
    load_catalog,
    load_reference_library,
)
from .facility import DEFAULT_POD_LAYOUT, FacilityPlan, plan_facility
from .it_sizing import (
    ITDesign,
    InfeasibleTargetError,
    SizingTarget,
    normalize_config,
    size,
)
from .redundancy import RedundancyPolicy
from .selector import Objective

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DATA = 3
EXIT_INFEASIBLE = 4

DOCUMENT_SCHEMA_VERSION = "1.0"

SWEEP_CSV_HEADER = [
    "scenario",
    "dc_type",
    "year",
    "target_kind",
    "target_value",
    "total_racks",
    "it_power_mw",
    "facility_power_mw",
    "density_kw_m2",
    "white_space_m2",
    "gray_indoor_m2",
    "gray_outdoor_m2",
    "heat_sink",
    "error",
]

PAPER_CASE_STUDIES_PRESET = "paper-case-studies"


class UsageError(ValueError):
    """Invalid request surface: unparseable flags or inconsistent targets."""


@dataclass(frozen=True)
class ScenarioRequest:
    """One design request, as accepted on the command line."""

    target: SizingTarget
    dc_type: Optional[DatacenterType] = None
    year: Optional[int] = None
    reference: Optional[str] = None
    policy: RedundancyPolicy = RedundancyPolicy.additive(1, safety_margin=0.1)
    objective: Objective = Objective.SPACE
    heat_sink: str = "both"  # evaporative | dry | both
    normalized_ru: int = 42
    name: Optional[str] = None
    catalog_path: Optional[Path] = None
    library_path: Optional[Path] = None

    def __post_init__(self) -> None:
        if self.reference is None:
            if self.dc_type is None or self.year is None:
                raise UsageError("either --reference or both --type and --year are required")
            if self.year not in (2024, 2027, 2029):
                raise UsageError(f"year {self.year} not in 2024/2027/2029")
        if self.heat_sink not in ("evaporative", "dry", "both"):
            raise UsageError(f"unknown heat sink '{self.heat_sink}'")
        if self.normalized_ru < 1:
            raise UsageError("--ru must be >= 1")

    @property
    def reference_name(self) -> str:
        if self.reference is not None:
            return self.reference
        return canonical_name(self.dc_type, self.year)

    @property
    def scenario_name(self) -> str:
        if self.name:
            return self.name
        target = (
            f"racks-{self.target.racks}"
            if self.target.racks is not None
            else f"power-{_fmt_num(self.target.power_mw)}"
        )
        return f"{self.reference_name}-{target}"

    @property
    def heat_sinks(self) -> tuple[HeatSinkKind, ...]:
        if self.heat_sink == "both":
            return (HeatSinkKind.DRY, HeatSinkKind.EVAPORATIVE)
        if self.heat_sink == "dry":
            return (HeatSinkKind.DRY,)
        return (HeatSinkKind.EVAPORATIVE,)


@dataclass(frozen=True)
class DesignDocument:
    """A complete generated design: request echo, IT layout, facility plans."""

    request: ScenarioRequest
    reference_name: str
    dc_type: DatacenterType
    year: int
    it_design: ITDesign
    facility_plans: tuple[FacilityPlan, ...]

    def to_dict(self) -> dict:
        it = self.it_design
        doc = {
            "schema_version": DOCUMENT_SCHEMA_VERSION,
            "request": {
                "scenario": self.request.scenario_name,
                "dc_type": self.dc_type.value,
                "year": self.year,
                "reference": self.reference_name,
                "target_kind": self.request.target.kind,
                "target_value": _round6(self.request.target.value),
                "redundancy": self.request.policy.label,
                "safety_margin": _round6(self.request.policy.safety_margin),
                "objective": self.request.objective.value,
                "heat_sink": self.request.heat_sink,
                "normalized_ru": self.request.normalized_ru,
            },
            "it_design": {
                "normalized_ru": it.normalized_ru,
                "area_per_rack_m2": _round6(it.area_per_rack_m2),
                "racks": [
                    {
                        "node_type": spec.node_type.value,
                        "ru_height": spec.ru_height,
                        "peak_power_kw": _round6(spec.peak_power_kw),
                        "count": count,
                    }
                    for spec, count in it.per_class
                ],
                "total_racks": it.total_racks,
                "it_peak_power_mw": _round6(it.it_peak_power_mw),
                "power_density_kw_m2": _round6(it.power_density_kw_m2),
                "white_space_m2": _round6(it.white_space_m2),
            },
            "facility_plans": [_plan_to_dict(plan) for plan in self.facility_plans],
            "summary": {
                "power_density_kw_m2": _round6(it.power_density_kw_m2),
                "it_power_mw": _round6(it.it_peak_power_mw),
                "white_space_m2": _round6(it.white_space_m2),
                "facility": [
                    {
                        "heat_sink": plan.heat_sink.value,
                        "facility_power_mw": _round6(plan.facility_peak_power_mw),
                        "gray_space_indoor_m2": _round6(plan.gray_space_indoor_m2),
                        "gray_space_outdoor_m2": _round6(plan.gray_space_outdoor_m2),
                    }
                    for plan in self.facility_plans
                ],
            },
        }
        return doc

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"


def _round6(value: float | int) -> float | int:
    """Fix floats at 6 significant digits for reproducible output."""
    if isinstance(value, int):
        return value
    return float(f"{value:.6g}")


def _fmt_num(value: float | int) -> str:
    rounded = _round6(value)
    if isinstance(rounded, float) and rounded.is_integer():
        return str(int(rounded))
    return str(rounded)


def _plan_to_dict(plan: FacilityPlan) -> dict:
    return {
        "heat_sink": plan.heat_sink.value,
        "redundancy": plan.policy.label,
        "safety_margin": _round6(plan.policy.safety_margin),
        "pod_layout": {
            "rows_per_pod": plan.pod_layout.rows_per_pod,
            "racks_per_row": plan.pod_layout.racks_per_row,
        },
        "equipment": [
            {
                "class": cls.value,
                "model_id": class_plan.model.id,
                "serving": class_plan.serving,
                "it_units": class_plan.it_units,
                "facility_units": class_plan.facility_units,
                "total_units": class_plan.total_units,
            }
            for cls, class_plan in plan.per_class
        ],
        "facility_peak_power_mw": _round6(plan.facility_peak_power_mw),
        "gray_space_indoor_m2": _round6(plan.gray_space_indoor_m2),
        "gray_space_outdoor_m2": _round6(plan.gray_space_outdoor_m2),
    }


def run(request: ScenarioRequest) -> DesignDocument:
    """Execute one scenario: load data, size IT, plan the facility."""
    library = load_reference_library(request.library_path)
    catalog = load_catalog(request.catalog_path)
    reference = find_config(library, request.reference_name)
    normalized = normalize_config(reference, request.normalized_ru)
    it = size(normalized, request.target)
    plans = tuple(
        plan_facility(
            it,
            catalog,
            layout=DEFAULT_POD_LAYOUT,
            policy=request.policy,
            heat_sink=sink,
            objective=request.objective,
        )
        for sink in request.heat_sinks
    )
    return DesignDocument(
        request=request,
        reference_name=reference.name,
        dc_type=reference.dc_type,
        year=reference.year,
        it_design=it,
        facility_plans=plans,
    )


def sweep(requests: Sequence[ScenarioRequest], out_dir: str | Path) -> Path:
    """Run many scenarios; write per-scenario JSON plus one CSV table.

    A failing scenario fills the CSV error column and the sweep continues.
    Returns the CSV path.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    rows: list[list[str]] = []
    for request in requests:
        try:
            document = run(request)
        except (CatalogError, InfeasibleTargetError, UsageError, OSError) as exc:
            rows.append(_error_row(request, str(exc)))
            continue
        json_path = out_dir / f"{request.scenario_name}.json"
        json_path.write_text(document.to_json(), encoding="utf-8")
        rows.extend(_document_rows(document))

    csv_path = out_dir / "sweep.csv"
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(SWEEP_CSV_HEADER)
    writer.writerows(rows)
    csv_path.write_text(buffer.getvalue(), encoding="utf-8")
    return csv_path


def _document_rows(document: DesignDocument) -> list[list[str]]:
    it = document.it_design
    request = document.request
    rows = []
    for plan in document.facility_plans:
        rows.append(
            [
                request.scenario_name,
                document.dc_type.value,
                str(document.year),
                request.target.kind,
                _fmt_num(request.target.value),
                str(it.total_racks),
                _fmt_num(it.it_peak_power_mw),
                _fmt_num(plan.facility_peak_power_mw),
                _fmt_num(it.power_density_kw_m2),
                _fmt_num(it.white_space_m2),
                _fmt_num(plan.gray_space_indoor_m2),
                _fmt_num(plan.gray_space_outdoor_m2),
                plan.heat_sink.value,
                "",
            ]
        )
    return rows


def _error_row(request: ScenarioRequest, message: str) -> list[str]:
    dc_type = request.dc_type.value if request.dc_type else ""
    year = str(request.year) if request.year else ""
    return [
        request.scenario_name,
        dc_type,
        year,
        request.target.kind,
        _fmt_num(request.target.value),
        "", "", "", "", "", "", "", "",
        message,
    ]


def paper_case_studies() -> list[ScenarioRequest]:
    """The shipped sweep preset: 4 types x 3 years x {10,000 racks, 1 GW}."""
    requests = []
    for dc_type in DatacenterType:
        for year in (2024, 2027, 2029):
            for target in (SizingTarget(racks=10_000), SizingTarget(power_mw=1000.0)):
                requests.append(
                    ScenarioRequest(target=target, dc_type=dc_type, year=year)
                )
    return requests


def load_sweep_file(path: str | Path) -> list[ScenarioRequest]:
    """Read scenario requests from a JSON sweep file."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise CatalogError(f"{path}: not valid JSON ({exc})") from exc
    raw_scenarios = doc.get("scenarios")
    if not isinstance(raw_scenarios, list):
        raise CatalogError(f"{path}: missing 'scenarios' list")
    requests = []
    for raw in raw_scenarios:
        try:
            requests.append(_request_from_raw(raw))
        except (ValueError, KeyError) as exc:
            raise CatalogError(f"{path}: bad scenario {raw.get('name', '?')!r}: {exc}")
    return requests


def _request_from_raw(raw: dict) -> ScenarioRequest:
    racks = raw.get("racks")
    power_mw = raw.get("power_mw")
    target = SizingTarget(
        racks=int(racks) if racks is not None else None,
        power_mw=float(power_mw) if power_mw is not None else None,
    )
    return ScenarioRequest(
        target=target,
        dc_type=DatacenterType(raw["type"]) if raw.get("type") else None,
        year=int(raw["year"]) if raw.get("year") else None,
        reference=raw.get("reference"),
        policy=RedundancyPolicy.parse(
            raw.get("redundancy", "n+1"), float(raw.get("safety_margin", 0.1))
        ),
        objective=Objective(raw.get("objective", "space")),
        heat_sink=raw.get("heat_sink", "both"),
        normalized_ru=int(raw.get("ru", 42)),
        name=raw.get("name"),
    )


# ---------------------------------------------------------------------------
# Argument parsing


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dcgen",
        description=(
            "Generate a datacenter hardware design (IT racks, cooling chain, "
            "power chain) from a rack-count or electrical-power target."
        ),
    )
    parser.add_argument(
        "--type",
        dest="dc_type",
        choices=[t.value for t in DatacenterType],
        help="datacenter type of the canonical reference mix",
    )
    parser.add_argument("--year", type=int, choices=[2024, 2027, 2029])
    parser.add_argument("--racks", type=int, help="target total rack count")
    parser.add_argument("--power-mw", type=float, help="target peak electrical power (MW)")
    parser.add_argument("--reference", help="use a named library config instead of a canonical one")
    parser.add_argument(
        "--redundancy",
        default="n+1",
        help="n+R additive (n+1, n+2, ...) or xN/y fractional (2n, 4n3, ...)",
    )
    parser.add_argument("--safety-margin", type=float, default=0.1,
                        help="fractional demand oversizing (default 0.1)")
    parser.add_argument("--objective", choices=["space", "power"], default="space")
    parser.add_argument("--heat-sink", choices=["evaporative", "dry", "both"], default="both")
    parser.add_argument("--ru", type=int, default=42,
                        help="rack height every class is normalized to (default 42)")
    parser.add_argument("--catalog", help="equipment catalog JSON path")
    parser.add_argument("--library", help="reference library JSON path")
    parser.add_argument("--out", help="output path: design JSON, or sweep directory")
    parser.add_argument("--sweep", metavar="PRESET|FILE",
                        help=f"run a scenario sweep ('{PAPER_CASE_STUDIES_PRESET}' or a JSON file)")
    return parser


def _request_from_args(args: argparse.Namespace) -> ScenarioRequest:
    if (args.racks is None) == (args.power_mw is None):
        raise UsageError("exactly one of --racks or --power-mw is required")
    try:
        target = SizingTarget(racks=args.racks, power_mw=args.power_mw)
        policy = RedundancyPolicy.parse(args.redundancy, args.safety_margin)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    return ScenarioRequest(
        target=target,
        dc_type=DatacenterType(args.dc_type) if args.dc_type else None,
        year=args.year,
        reference=args.reference,
        policy=policy,
        objective=Objective(args.objective),
        heat_sink=args.heat_sink,
        normalized_ru=args.ru,
        catalog_path=Path(args.catalog) if args.catalog else None,
        library_path=Path(args.library) if args.library else None,
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.sweep:
            if args.sweep == PAPER_CASE_STUDIES_PRESET:
                requests = paper_case_studies()
            else:
                requests = load_sweep_file(args.sweep)
            if args.catalog or args.library:
                requests = [
                    replace(
                        request,
                        catalog_path=Path(args.catalog) if args.catalog else None,
                        library_path=Path(args.library) if args.library else None,
                    )
                    for request in requests
                ]
            out_dir = Path(args.out) if args.out else Path("sweep-out")
            csv_path = sweep(requests, out_dir)
            print(f"wrote {csv_path}")
            return EXIT_OK

        request = _request_from_args(args)
        document = run(request)
        payload = document.to_json()
        if args.out:
            Path(args.out).write_text(payload, encoding="utf-8")
            print(f"wrote {args.out}")
        else:
            sys.stdout.write(payload)
        return EXIT_OK
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InfeasibleTargetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (CatalogError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
