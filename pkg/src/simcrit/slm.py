"""Selective laser melting preset, build-time table and material comparisons."""

from __future__ import annotations

from dataclasses import dataclass
from decimal import ROUND_HALF_EVEN, Decimal
from typing import Optional

from .dims import DimensionVector, LMTTheta, Quantity
from .pi import BasisSelection, DimensionalMatrix
from .units import UnitError, UnitRegistry, default_registry, parse_unit

# (symbol, name, unit text, dimension row over L, M, T, Θ)
# Rows are deliberately kept as recorded, including E without mass and z with M^-1.
PRESET_ROWS = (
    ("t_c", "sintering time", "с", (0, 0, 1, 0)),
    ("V", "melt volume", "мкм³", (3, 0, 0, 0)),
    ("T", "temperature", "K", (0, 0, 0, 1)),
    ("z", "specific heat capacity", "кДж/(кг·°C)", (2, -1, -2, -1)),
    ("ρ", "powder density", "кг/м³", (-3, 1, 0, 0)),
    ("E", "laser power", "Вт", (2, 0, -3, 0)),
    ("M", "powder mass", "кг", (0, 1, 0, 0)),
)
PRESET_BASIS = ("t_c", "V", "T", "z")

RATE_RANGE_CM3_PER_H = (10.0, 100.0)


@dataclass(frozen=True)
class SlmPreset:
    matrix: DimensionalMatrix
    basis: BasisSelection

    @property
    def quantities(self) -> tuple[Quantity, ...]:
        return self.matrix.quantities

    @property
    def unit_texts(self) -> dict[str, Optional[str]]:
        return {q.symbol: q.unit_text for q in self.matrix.quantities}


def laser_melting_preset() -> SlmPreset:
    registry = default_registry()
    quantities = []
    for symbol, name, unit, row in PRESET_ROWS:
        scale = parse_unit(unit, registry).si_scale
        quantities.append(
            Quantity(symbol, DimensionVector(LMTTheta, row), name=name, unit_text=unit, si_scale=scale)
        )
    matrix = DimensionalMatrix(quantities, LMTTheta)
    return SlmPreset(matrix, BasisSelection.from_symbols(matrix, PRESET_BASIS))


def slm_preset() -> tuple[DimensionalMatrix, BasisSelection]:
    p = laser_melting_preset()
    return p.matrix, p.basis


@dataclass(frozen=True)
class AuditRecord:
    symbol: str
    unit_text: Optional[str]
    declared: DimensionVector
    parsed: Optional[DimensionVector]
    match: bool
    error: Optional[str] = None


def audit_quantities(quantities, registry: UnitRegistry | None = None) -> list[AuditRecord]:
    """Compare declared dimension rows against what each unit text parses to."""
    registry = registry or default_registry()
    out = []
    for q in quantities:
        if q.unit_text is None:
            out.append(AuditRecord(q.symbol, None, q.dims, None, True))
            continue
        try:
            parsed = parse_unit(q.unit_text, registry).dims
        except UnitError as exc:
            out.append(AuditRecord(q.symbol, q.unit_text, q.dims, None, False, str(exc)))
            continue
        out.append(AuditRecord(q.symbol, q.unit_text, q.dims, parsed, parsed == q.dims))
    return out


def audit_preset(p: SlmPreset | None = None, r: UnitRegistry | None = None) -> list[AuditRecord]:
    return audit_quantities((p or laser_melting_preset()).quantities, r)


# --- build time -----------------------------------------------------------

ACCURACY_CLASSES = {"A": 0.02, "B": 0.05, "C": 0.1}


@dataclass(frozen=True)
class PrintTimeRow:
    part_name: str
    part_name_en: str
    volume_cm3: float
    hours_A: float
    hours_B: float
    hours_C: float

    def __post_init__(self) -> None:
        if min(self.volume_cm3, self.hours_A, self.hours_B, self.hours_C) <= 0:
            raise ValueError(f"{self.part_name}: volume and hours must be positive")
        if not self.hours_A >= self.hours_B >= self.hours_C:
            raise ValueError(f"{self.part_name}: finer classes cannot be faster")

    def hours(self, accuracy_class: str) -> float:
        return getattr(self, f"hours_{accuracy_class}")


PRINT_TIME_TABLE = (
    PrintTimeRow("Подшипник скольжения", "plain bearing", 2.9, 0.4, 0.3, 0.2),
    PrintTimeRow("Центробежное колесо", "centrifugal impeller", 81, 8, 4.3, 3.2),
    PrintTimeRow("Ротор турбоагрегата", "turbine rotor", 195, 21, 13.1, 9.6),
    PrintTimeRow("Втулка резьбовая", "threaded bushing", 8.2, 1.5, 0.9, 0.6),
)


def print_time_table_data() -> dict:
    """Machine-readable form of the build-time table."""
    return {
        "class_tolerances_mm": dict(ACCURACY_CLASSES),
        "units": {"volume": "cm^3", "time": "h"},
        "rows": [
            {
                "part_name": r.part_name,
                "part_name_en": r.part_name_en,
                "volume_cm3": r.volume_cm3,
                "hours": {c: r.hours(c) for c in ACCURACY_CLASSES},
            }
            for r in PRINT_TIME_TABLE
        ],
    }


@dataclass(frozen=True)
class PrintEstimate:
    hours: float
    rate_warning: Optional[str] = None


def _rate_warning(rate: float) -> Optional[str]:
    lo, hi = RATE_RANGE_CM3_PER_H
    if rate < lo or rate > hi:
        return f"rate {rate:g} cm³/h is outside the expected {lo:g}-{hi:g} cm³/h range"
    return None


def estimate_print_time(volume_cm3: float, rate_cm3_per_h: float) -> PrintEstimate:
    if volume_cm3 < 0:
        raise ValueError("volume must be non-negative")
    if not rate_cm3_per_h > 0:
        raise ValueError("deposition rate must be positive")
    return PrintEstimate(volume_cm3 / rate_cm3_per_h, _rate_warning(rate_cm3_per_h))


def implied_rate(volume_cm3: float, hours: float) -> float:
    if not volume_cm3 > 0 or not hours > 0:
        raise ValueError("volume and hours must be positive")
    return volume_cm3 / hours


# --- material comparison --------------------------------------------------

# Scalar results of the impeller strength runs at 450 °C.
SAFETY_FACTORS = {"ТНМ20": 1.23, "40Х": 0.291}
MAX_DISPLACEMENT_MM = {"40Х": 0.0787, "ТНМ20": 0.0472}


def format_sig(x: float, sig_figs: int) -> str:
    """Round to significant figures, keeping trailing zeros (``1.0``, ``4.2``)."""
    if sig_figs < 1:
        raise ValueError("sig_figs must be at least 1")
    d = Decimal(repr(x))
    if d == 0:
        return "0"
    exp = d.adjusted() - sig_figs + 1
    q = d.quantize(Decimal(1).scaleb(exp), rounding=ROUND_HALF_EVEN)
    return f"{q:f}"


@dataclass(frozen=True)
class ComparisonResult:
    ratio: float
    better: str
    metric_name: str
    sig_figs: int = 2

    @property
    def display(self) -> str:
        return format_sig(self.ratio, self.sig_figs)

    @property
    def display_ratio(self) -> float:
        return float(self.display)


def compare_materials(
    value_a: float,
    value_b: float,
    labels: tuple[str, str] = ("a", "b"),
    higher_is_better: bool = True,
    sig_figs: int = 2,
    metric_name: str = "",
) -> ComparisonResult:
    """Ratio of the better value over the worse one (always >= 1)."""
    if not value_a > 0 or not value_b > 0:
        raise ValueError("compared metrics must be positive")
    a_wins = value_a >= value_b if higher_is_better else value_a <= value_b
    hi, lo = max(value_a, value_b), min(value_a, value_b)
    return ComparisonResult(hi / lo, labels[0] if a_wins else labels[1], metric_name, sig_figs)
