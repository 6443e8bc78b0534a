"""Exact dimension-vector algebra and the quantity model."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Union

RationalLike = Union[int, Fraction, str]


class DimensionError(ValueError):
    """Base class for dimensional errors."""


class SystemMismatchError(DimensionError):
    """Raised when two vectors belong to different dimension systems."""


def to_fraction(value: RationalLike) -> Fraction:
    """Convert ints, Fractions and text such as ``"-1/3"`` to a Fraction.

    Floats are refused: they would silently import rounding error into
    exponents that must stay exact.
    """
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"exact rational required, got {value!r}")
    if isinstance(value, str):
        text = value.strip().replace("−", "-")
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational: {value!r}") from exc
    return Fraction(value)


def fraction_text(value: Fraction) -> str:
    """Render ``-1/3`` style text; integers have no denominator."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True)
class DimensionSystem:
    """Ordered list of base-dimension symbols, e.g. L, M, T, Θ."""

    base_symbols: tuple[str, ...] = ("L", "M", "T", "Θ")

    def __post_init__(self) -> None:
        symbols = tuple(self.base_symbols)
        object.__setattr__(self, "base_symbols", symbols)
        if not symbols:
            raise DimensionError("dimension system needs at least one base symbol")
        if any(not isinstance(s, str) or not s for s in symbols):
            raise DimensionError("base symbols must be non-empty text")
        if len(set(symbols)) != len(symbols):
            raise DimensionError(f"duplicate base symbols in {symbols}")

    def __len__(self) -> int:
        return len(self.base_symbols)

    def index(self, symbol: str) -> int:
        return self.base_symbols.index(symbol)

    def zero(self) -> DimensionVector:
        return DimensionVector(self, (0,) * len(self))

    def base(self, symbol: str) -> DimensionVector:
        """Unit vector for one base dimension."""
        exps = [0] * len(self)
        exps[self.index(symbol)] = 1
        return DimensionVector(self, exps)

    def vector(self, **exponents: RationalLike) -> DimensionVector:
        exps = [0] * len(self)
        for symbol, exp in exponents.items():
            exps[self.index(symbol)] = exp
        return DimensionVector(self, exps)


LMTTheta = DimensionSystem()


@dataclass(frozen=True)
class DimensionVector:
    """Rational exponents over the base symbols of ``system``."""

    system: DimensionSystem
    exponents: tuple[Fraction, ...]

    def __init__(self, system: DimensionSystem, exponents: Iterable[RationalLike]):
        exps = tuple(to_fraction(e) for e in exponents)
        if len(exps) != len(system):
            raise DimensionError(
                f"expected {len(system)} exponents for {system.base_symbols}, got {len(exps)}"
            )
        object.__setattr__(self, "system", system)
        object.__setattr__(self, "exponents", exps)

    def __iter__(self):
        return iter(self.exponents)

    def __len__(self) -> int:
        return len(self.exponents)

    def __getitem__(self, i: int) -> Fraction:
        return self.exponents[i]

    def __mul__(self, other: DimensionVector) -> DimensionVector:
        return dv_combine(self, other, 1)

    def __truediv__(self, other: DimensionVector) -> DimensionVector:
        return dv_combine(self, other, -1)

    def __pow__(self, power: RationalLike) -> DimensionVector:
        return dv_combine(self.system.zero(), self, power)

    @property
    def is_dimensionless(self) -> bool:
        return dv_is_dimensionless(self)

    def as_text(self) -> list[str]:
        return [fraction_text(e) for e in self.exponents]

    def __str__(self) -> str:
        parts = []
        for symbol, exp in zip(self.system.base_symbols, self.exponents):
            if exp == 1:
                parts.append(symbol)
            elif exp != 0:
                parts.append(f"{symbol}^{fraction_text(exp)}")
        return "·".join(parts) if parts else "1"


def dv_combine(a: DimensionVector, b: DimensionVector, r: RationalLike) -> DimensionVector:
    """Return the componentwise ``a + r*b``.

    ``r=1`` multiplies, ``r=-1`` divides, and a zero ``a`` raises ``b`` to
    the power ``r``.
    """
    if a.system != b.system:
        raise SystemMismatchError(
            f"cannot combine {a.system.base_symbols} with {b.system.base_symbols}"
        )
    r = to_fraction(r)
    return DimensionVector(a.system, (x + r * y for x, y in zip(a.exponents, b.exponents)))


def dv_is_dimensionless(a: DimensionVector) -> bool:
    return all(e == 0 for e in a.exponents)


@dataclass(frozen=True)
class Quantity:
    """A named physical parameter with its dimensions.

    ``si_scale`` converts a magnitude expressed in ``unit_text`` to coherent
    base units; it is filled in from the unit text by :meth:`from_unit`.
    """

    symbol: str
    dims: DimensionVector
    name: str = ""
    unit_text: Optional[str] = None
    si_scale: Optional[Fraction] = field(default=None)

    def __post_init__(self) -> None:
        if not self.symbol:
            raise DimensionError("quantity symbol must be non-empty")
        if self.si_scale is not None:
            scale = to_fraction(self.si_scale)
            if scale <= 0:
                raise DimensionError(f"si_scale of {self.symbol} must be positive")
            object.__setattr__(self, "si_scale", scale)

    @classmethod
    def from_unit(
        cls,
        symbol: str,
        unit_text: str,
        registry=None,
        *,
        name: str = "",
        dims: Optional[DimensionVector] = None,
    ) -> Quantity:
        """Build a quantity whose scale (and, unless given, dims) come from a unit.

        Declared ``dims`` are kept as-is even if they disagree with the
        parsed unit; use the audit helpers to surface such conflicts.
        """
        from .units import default_registry, parse_unit

        parsed = parse_unit(unit_text, registry or default_registry())
        return cls(
            symbol=symbol,
            dims=parsed.dims if dims is None else dims,
            name=name,
            unit_text=unit_text,
            si_scale=parsed.si_scale,
        )
