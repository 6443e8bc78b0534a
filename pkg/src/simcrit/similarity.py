"""Numeric evaluation of dimensionless groups and model/prototype comparison."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .pi import DimensionalMatrix, PiGroup, format_pi_group

DEFAULT_TOLERANCE = 1e-9


class SimilarityError(ValueError):
    pass


class MissingParameterError(SimilarityError):
    def __init__(self, symbol: str):
        self.symbol = symbol
        super().__init__(f"no value given for {symbol!r}")


class UnsolvableError(SimilarityError):
    pass


@dataclass(frozen=True)
class CaseAssignment:
    """Positive coherent-SI magnitudes keyed by quantity symbol."""

    values: Mapping[str, float]
    label: str = ""

    def __post_init__(self) -> None:
        vals = {}
        for symbol, v in dict(self.values).items():
            v = float(v)
            if not v > 0 or math.isinf(v):
                raise SimilarityError(f"value of {symbol!r} must be positive and finite, got {v}")
            vals[symbol] = v
        object.__setattr__(self, "values", vals)


@dataclass(frozen=True)
class GroupComparison:
    group: str
    value_a: float
    value_b: float
    relative_deviation: float


@dataclass(frozen=True)
class SimilarityReport:
    records: list[GroupComparison] = field(default_factory=list)
    similar: bool = True
    tolerance: float = DEFAULT_TOLERANCE


def relative_deviation(a: float, b: float) -> float:
    scale = max(abs(a), abs(b))
    return 0.0 if scale == 0 else abs(a - b) / scale


def _value(m: DimensionalMatrix, values: Mapping[str, float], i: int) -> float:
    symbol = m.quantities[i].symbol
    try:
        v = values[symbol]
    except KeyError:
        raise MissingParameterError(symbol) from None
    if not v > 0:
        raise SimilarityError(f"value of {symbol!r} must be positive, got {v}")
    return v


def eval_pi(g: PiGroup, m: DimensionalMatrix, c: CaseAssignment) -> float:
    """Product of value**exponent over the group's quantities, in quantity order."""
    result = 1.0
    for i, e in enumerate(g.monomial):
        if e:
            result *= _value(m, c.values, i) ** float(e)
    return result


def check_similarity(
    groups: Sequence[PiGroup],
    m: DimensionalMatrix,
    case_a: CaseAssignment,
    case_b: CaseAssignment,
    tolerance: float = DEFAULT_TOLERANCE,
) -> SimilarityReport:
    if not tolerance > 0:
        raise SimilarityError("tolerance must be positive")
    records = []
    for g in groups:
        va, vb = eval_pi(g, m, case_a), eval_pi(g, m, case_b)
        records.append(GroupComparison(format_pi_group(g, m), va, vb, relative_deviation(va, vb)))
    similar = all(r.relative_deviation <= tolerance for r in records)
    return SimilarityReport(records, similar, tolerance)


def solve_unknown(g: PiGroup, m: DimensionalMatrix, partial: CaseAssignment, target_pi: float) -> float:
    """Value of the single unvalued quantity that makes the group equal ``target_pi``."""
    if not target_pi > 0:
        raise SimilarityError("target value of the group must be positive")
    referenced = [i for i, e in enumerate(g.monomial) if e]
    missing = [i for i in referenced if m.quantities[i].symbol not in partial.values]
    if len(missing) != 1:
        names = [m.quantities[i].symbol for i in missing]
        raise SimilarityError(f"exactly one unknown is required, found {len(missing)}: {names}")
    x = missing[0]
    rest = 1.0
    for i in referenced:
        if i != x:
            rest *= _value(m, partial.values, i) ** float(g.monomial[i])
    return (target_pi / rest) ** (1.0 / float(g.monomial[x]))


def solve_for(g: PiGroup, m: DimensionalMatrix, partial: CaseAssignment, unknown: str, target_pi: float) -> float:
    """Like :func:`solve_unknown` but names the unknown explicitly.

    Raises :class:`UnsolvableError` when the named quantity does not appear
    in the group.
    """
    i = m.index(unknown)
    if g.monomial[i] == 0:
        raise UnsolvableError(f"{unknown!r} has exponent 0 in {format_pi_group(g, m)}")
    values = {k: v for k, v in partial.values.items() if k != unknown}
    return solve_unknown(g, m, CaseAssignment(values, partial.label), target_pi)


def similarity_transform(
    m: DimensionalMatrix, c: CaseAssignment, scales: Mapping[str, float], label: str = ""
) -> CaseAssignment:
    """Rescale every value by ``prod(scale_d ** exponent_d)`` over base dimensions.

    ``scales`` maps base-dimension symbols to positive factors; unlisted
    dimensions keep factor 1.  Dimensionless groups are invariant under this.
    """
    out = {}
    for symbol, v in c.values.items():
        dims = m.quantities[m.index(symbol)].dims
        f = 1.0
        for base, e in zip(m.system.base_symbols, dims):
            if e:
                f *= float(scales.get(base, 1.0)) ** float(e)
        out[symbol] = v * f
    return CaseAssignment(out, label or c.label)
