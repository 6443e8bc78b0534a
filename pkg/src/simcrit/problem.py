"""JSON problem and case files.

A problem file::

    {
      "system": {"dimensions": ["L", "M", "T", "Θ"]},
      "quantities": [
        {"symbol": "ρ", "name": "density", "unit": "кг/м^3"},
        {"symbol": "V", "dims": ["3", "0", "0", "0"]}
      ],
      "basis": ["V", ...]
    }

Unknown keys are rejected.  Each quantity needs ``unit`` or ``dims``; when
both are present they must agree unless auditing is switched off.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Any

import jsonschema

from .dims import DimensionSystem, DimensionVector, Quantity, to_fraction
from .pi import BasisSelection, DimensionalMatrix
from .units import UnitError, UnitRegistry, default_registry, parse_unit

_RATIONAL = {"oneOf": [{"type": "string", "pattern": r"^\s*[-−+]?\d+(\s*/\s*\d+)?\s*$"}, {"type": "integer"}]}

PROBLEM_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "required": ["system", "quantities", "basis"],
    "properties": {
        "system": {
            "type": "object",
            "additionalProperties": False,
            "required": ["dimensions"],
            "properties": {
                "dimensions": {
                    "type": "array",
                    "minItems": 1,
                    "uniqueItems": True,
                    "items": {"type": "string", "minLength": 1},
                }
            },
        },
        "quantities": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "object",
                "additionalProperties": False,
                "required": ["symbol"],
                "properties": {
                    "symbol": {"type": "string", "minLength": 1},
                    "name": {"type": "string"},
                    "unit": {"type": "string", "minLength": 1},
                    "dims": {"type": "array", "items": _RATIONAL},
                },
                "anyOf": [{"required": ["unit"]}, {"required": ["dims"]}],
            },
        },
        "basis": {"type": "array", "uniqueItems": True, "items": {"type": "string"}},
    },
}

CASE_SCHEMA = {
    "type": "object",
    "additionalProperties": {"type": "number"},
}


class ProblemError(ValueError):
    """A problem or case file is malformed; ``field`` locates the fault."""

    def __init__(self, message: str, field: str = "$"):
        self.field = field
        super().__init__(f"{field}: {message}")


@dataclass(frozen=True)
class Problem:
    matrix: DimensionalMatrix
    basis: BasisSelection
    data: dict  # normalized file content

    @property
    def basis_symbols(self) -> list[str]:
        return [self.matrix.quantities[i].symbol for i in self.basis.indices]


def _validate(data: Any, schema: dict) -> None:
    try:
        jsonschema.validate(data, schema)
    except jsonschema.ValidationError as exc:
        raise ProblemError(exc.message, exc.json_path) from None


def _remap(parsed: DimensionVector, system: DimensionSystem, where: str) -> DimensionVector:
    """Express a registry vector in the problem's own dimension ordering."""
    exps = [Fraction(0)] * len(system)
    for symbol, e in zip(parsed.system.base_symbols, parsed):
        if e == 0:
            continue
        if symbol not in system.base_symbols:
            raise ProblemError(f"unit needs dimension {symbol!r} which the system lacks", where)
        exps[system.index(symbol)] = e
    return DimensionVector(system, exps)


def problem_from_dict(
    data: Any, *, audit: bool = True, registry: UnitRegistry | None = None
) -> Problem:
    _validate(data, PROBLEM_SCHEMA)
    registry = registry or default_registry()
    system = DimensionSystem(tuple(data["system"]["dimensions"]))
    quantities = []
    seen: set[str] = set()
    for n, entry in enumerate(data["quantities"]):
        where = f"$.quantities[{n}]"
        symbol = entry["symbol"]
        if symbol in seen:
            raise ProblemError(f"duplicate symbol {symbol!r}", f"{where}.symbol")
        seen.add(symbol)
        declared = None
        if "dims" in entry:
            if len(entry["dims"]) != len(system):
                raise ProblemError(
                    f"expected {len(system)} exponents, got {len(entry['dims'])}", f"{where}.dims"
                )
            try:
                declared = DimensionVector(system, [to_fraction(x) for x in entry["dims"]])
            except (TypeError, ValueError) as exc:
                raise ProblemError(str(exc), f"{where}.dims") from None
        unit = entry.get("unit")
        scale = None
        if unit is not None:
            try:
                parsed = parse_unit(unit, registry)
            except UnitError as exc:
                raise ProblemError(str(exc), f"{where}.unit") from None
            parsed_dims = _remap(parsed.dims, system, f"{where}.unit")
            scale = parsed.si_scale
            if declared is None:
                declared = parsed_dims
            elif audit and declared != parsed_dims:
                raise ProblemError(
                    f"unit {unit!r} of {symbol!r} has dims {parsed_dims.as_text()} "
                    f"but declared dims are {declared.as_text()}",
                    f"{where}.dims",
                )
        quantities.append(
            Quantity(symbol, declared, name=entry.get("name", ""), unit_text=unit, si_scale=scale)
        )
    matrix = DimensionalMatrix(quantities, system)
    for n, symbol in enumerate(data["basis"]):
        if symbol not in seen:
            raise ProblemError(f"basis symbol {symbol!r} is not a declared quantity", f"$.basis[{n}]")
    basis = BasisSelection(matrix.index(s) for s in data["basis"])
    return Problem(matrix, basis, problem_to_dict(matrix, basis))


def problem_to_dict(m: DimensionalMatrix, b: BasisSelection) -> dict:
    quantities = []
    for q in m.quantities:
        entry: dict[str, Any] = {"symbol": q.symbol}
        if q.name:
            entry["name"] = q.name
        if q.unit_text is not None:
            entry["unit"] = q.unit_text
        entry["dims"] = q.dims.as_text()
        quantities.append(entry)
    return {
        "system": {"dimensions": list(m.system.base_symbols)},
        "quantities": quantities,
        "basis": [m.quantities[i].symbol for i in b.indices],
    }


def load_json(path: str | Path) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ProblemError(f"cannot read file: {exc.strerror}", str(path)) from None
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise ProblemError(f"invalid JSON: {exc}", str(path)) from None


def load_problem(path: str | Path, *, audit: bool = True) -> Problem:
    return problem_from_dict(load_json(path), audit=audit)


def case_from_dict(data: Any, problem: Problem) -> dict[str, float]:
    """Validate a case map and convert its magnitudes to coherent SI."""
    _validate(data, CASE_SCHEMA)
    values = {}
    for symbol, v in data.items():
        try:
            q = problem.matrix.quantities[problem.matrix.index(symbol)]
        except KeyError:
            raise ProblemError(f"unknown quantity {symbol!r}", f"$.{symbol}") from None
        if isinstance(v, bool) or not v > 0:
            raise ProblemError(f"value must be a positive number, got {v!r}", f"$.{symbol}")
        values[symbol] = float(v) * float(q.si_scale if q.si_scale is not None else 1)
    return values


def dumps(data: Any) -> str:
    """Stable JSON text used for every emitted file."""
    return json.dumps(data, ensure_ascii=False, indent=2) + "\n"


def checksum(data: Any) -> str:
    canonical = json.dumps(data, ensure_ascii=False, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def bundled_path(name: str):
    return resources.files("simcrit") / "data" / name


def bundled_problem_text() -> str:
    return bundled_path("slm.problem").read_text(encoding="utf-8")


def preset_problem_dict() -> dict:
    """Problem-file form of the laser-melting preset.

    Unit texts are omitted because two of the preset rows disagree with
    their own units and would be refused by the audit.
    """
    from .slm import slm_preset

    data = problem_to_dict(*slm_preset())
    for q in data["quantities"]:
        q.pop("unit", None)
    return data


def preset_checksum() -> str:
    return checksum(preset_problem_dict())
