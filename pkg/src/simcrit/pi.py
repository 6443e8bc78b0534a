"""Basis validation and derivation of dimensionless groups.

A group for target quantity ``x`` over basis ``b_1..b_n`` has the form
``x / (b_1^k_1 ... b_n^k_n)`` where the exponents solve
``sum_i k_i * dims(b_i) = dims(x)``.  Two independent solvers are provided:
determinant ratios with row replacement (Cramer) and an exact nullspace of
the stacked basis and target rows.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

from . import linalg
from .dims import DimensionError, DimensionSystem, DimensionVector, Quantity, fraction_text, to_fraction


class DerivationError(ValueError):
    pass


class ShapeError(DerivationError):
    """The basis is not square against the dimension count."""


class SingularBasisError(DerivationError):
    def __init__(self, message: str, determinant: Fraction | None = None):
        self.determinant = determinant
        super().__init__(message)


class InconsistentSystemError(DerivationError):
    """The target's dimensions lie outside the span of the basis rows."""


class DimensionalMatrix:
    """Ordered quantities whose dimension rows share one system."""

    def __init__(self, quantities: Iterable[Quantity], system: DimensionSystem | None = None):
        qs = tuple(quantities)
        if system is None:
            if not qs:
                raise DimensionError("cannot infer a dimension system from no quantities")
            system = qs[0].dims.system
        symbols = [q.symbol for q in qs]
        if len(set(symbols)) != len(symbols):
            dupes = sorted({s for s in symbols if symbols.count(s) > 1})
            raise DimensionError(f"duplicate quantity symbols: {dupes}")
        for q in qs:
            if q.dims.system != system:
                raise DimensionError(f"quantity {q.symbol!r} is not in system {system.base_symbols}")
        self.quantities = qs
        self.system = system
        self._index = {s: i for i, s in enumerate(symbols)}

    def __len__(self) -> int:
        return len(self.quantities)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DimensionalMatrix):
            return NotImplemented
        return self.system == other.system and self.quantities == other.quantities

    def __repr__(self) -> str:
        return f"DimensionalMatrix({[q.symbol for q in self.quantities]}, {self.system.base_symbols})"

    @property
    def symbols(self) -> tuple[str, ...]:
        return tuple(q.symbol for q in self.quantities)

    def row(self, i: int) -> DimensionVector:
        return self.quantities[i].dims

    def rows(self, indices: Iterable[int] | None = None) -> list[list[Fraction]]:
        idx = range(len(self)) if indices is None else indices
        return [list(self.quantities[i].dims) for i in idx]

    def index(self, symbol: str) -> int:
        try:
            return self._index[symbol]
        except KeyError:
            raise KeyError(f"unknown quantity {symbol!r}") from None

    def rank(self) -> int:
        return linalg.rank(self.rows())


@dataclass(frozen=True)
class BasisSelection:
    indices: tuple[int, ...]

    def __init__(self, indices: Iterable[int]):
        idx = tuple(indices)
        if len(set(idx)) != len(idx):
            raise DimensionError(f"basis indices must be distinct, got {idx}")
        object.__setattr__(self, "indices", idx)

    @classmethod
    def from_symbols(cls, m: DimensionalMatrix, symbols: Iterable[str]) -> BasisSelection:
        return cls(m.index(s) for s in symbols).validated(m)

    def validated(self, m: DimensionalMatrix) -> BasisSelection:
        for i in self.indices:
            if not 0 <= i < len(m):
                raise DimensionError(f"basis index {i} out of range for {len(m)} quantities")
        return self

    def __len__(self) -> int:
        return len(self.indices)

    def __contains__(self, i: int) -> bool:
        return i in self.indices


@dataclass(frozen=True)
class BasisCheck:
    determinant: Fraction
    independent: bool


@dataclass(frozen=True, eq=True)
class PiGroup:
    """A dimensionless monomial ``target / prod(basis_i ** k_i)``.

    ``monomial`` holds the full exponent vector over all quantities: +1 for
    the target, ``-k_i`` for basis quantity ``i`` and 0 elsewhere.
    """

    target_index: int
    basis_exponents: Mapping[int, Fraction]
    monomial: tuple[Fraction, ...]

    __hash__ = None  # type: ignore[assignment]

    @classmethod
    def build(cls, target: int, basis: BasisSelection, k: Sequence[Fraction], n_quantities: int) -> PiGroup:
        if target in basis:
            raise DerivationError("target quantity must not be part of the basis")
        exps = {b: Fraction(ki) for b, ki in zip(basis.indices, k)}
        mono = [Fraction(0)] * n_quantities
        mono[target] = Fraction(1)
        for b, ki in exps.items():
            mono[b] = -ki
        return cls(target, exps, tuple(mono))

    def exponents_by_symbol(self, m: DimensionalMatrix) -> dict[str, Fraction]:
        """Nonzero monomial exponents keyed by quantity symbol."""
        return {m.quantities[i].symbol: e for i, e in enumerate(self.monomial) if e != 0}


def net_dimensions(
    m: DimensionalMatrix,
    exponents: Union[Sequence[object], Mapping[str, object]],
) -> DimensionVector:
    """Dimensions of ``prod(q_i ** e_i)``.

    ``exponents`` is either a full per-quantity sequence or a mapping from
    symbol to exponent (missing symbols count as zero).
    """
    if isinstance(exponents, Mapping):
        full = [Fraction(0)] * len(m)
        for symbol, e in exponents.items():
            full[m.index(symbol)] = to_fraction(e)
    else:
        if len(exponents) != len(m):
            raise DimensionError(f"expected {len(m)} exponents, got {len(exponents)}")
        full = [to_fraction(e) for e in exponents]
    acc = [Fraction(0)] * len(m.system)
    for e, q in zip(full, m.quantities):
        if e:
            acc = [a + e * d for a, d in zip(acc, q.dims)]
    return DimensionVector(m.system, acc)


def _require_square(m: DimensionalMatrix, b: BasisSelection) -> None:
    b.validated(m)
    if len(b) != len(m.system):
        raise ShapeError(
            f"basis has {len(b)} quantities but the system has {len(m.system)} dimensions; "
            "the determinant test needs a square basis, use derive_exponents_nullspace instead"
        )


def check_basis(m: DimensionalMatrix, b: BasisSelection) -> BasisCheck:
    """Exact determinant of the basis rows and whether it is nonzero."""
    _require_square(m, b)
    d = linalg.det(m.rows(b.indices))
    return BasisCheck(d, d != 0)


def replacement_determinants(m: DimensionalMatrix, b: BasisSelection, target: int) -> list[Fraction]:
    """Determinants of the basis matrix with row ``i`` swapped for the target row."""
    _require_square(m, b)
    base = m.rows(b.indices)
    target_row = list(m.row(target))
    out = []
    for i in range(len(base)):
        replaced = list(base)
        replaced[i] = target_row
        out.append(linalg.det(replaced))
    return out


def derive_exponents_cramer(m: DimensionalMatrix, b: BasisSelection, target: int) -> list[Fraction]:
    """Basis exponents of ``target`` as ratios of row-replaced determinants."""
    check = check_basis(m, b)
    if not check.independent:
        raise SingularBasisError("basis quantities are dimensionally dependent (determinant 0)", check.determinant)
    if target in b:
        raise DerivationError(f"target {m.quantities[target].symbol!r} is part of the basis")
    return [d / check.determinant for d in replacement_determinants(m, b, target)]


def derive_exponents_nullspace(m: DimensionalMatrix, b: BasisSelection, target: int) -> list[Fraction]:
    """Basis exponents of ``target`` from the nullspace of [basis | target].

    Works for any number of basis quantities, including systems whose rank
    is below the dimension count.
    """
    b.validated(m)
    if target in b:
        raise DerivationError(f"target {m.quantities[target].symbol!r} is part of the basis")
    cols = m.rows(b.indices) + [list(m.row(target))]
    ns = linalg.nullspace(linalg.transpose(cols), n_cols=len(cols))
    symbol = m.quantities[target].symbol
    if not ns:
        raise InconsistentSystemError(
            f"dimensions of {symbol!r} are not reachable from basis "
            f"{[m.quantities[i].symbol for i in b.indices]}"
        )
    if len(ns) > 1 or ns[0][-1] == 0:
        raise SingularBasisError("basis quantities are dimensionally dependent")
    v = ns[0]
    return [-x / v[-1] for x in v[:-1]]


def _check_independent(m: DimensionalMatrix, b: BasisSelection) -> None:
    if len(b) == len(m.system):
        check = check_basis(m, b)
        if not check.independent:
            raise SingularBasisError("basis quantities are dimensionally dependent (determinant 0)", check.determinant)
    elif linalg.rank(m.rows(b.indices)) != len(b):
        raise SingularBasisError("basis quantities are dimensionally dependent")


def derive_pi_groups(m: DimensionalMatrix, b: BasisSelection) -> list[PiGroup]:
    """One dimensionless group per non-basis quantity, in quantity order."""
    b.validated(m)
    if len(b) > len(m.system):
        raise SingularBasisError(
            f"{len(b)} basis quantities cannot be independent in {len(m.system)} dimensions"
        )
    _check_independent(m, b)
    square = len(b) == len(m.system)
    groups = []
    for target in range(len(m)):
        if target in b:
            continue
        if square:
            k = derive_exponents_cramer(m, b, target)
        else:
            k = derive_exponents_nullspace(m, b, target)
        group = PiGroup.build(target, b, k, len(m))
        assert net_dimensions(m, group.monomial).is_dimensionless, (
            f"group for {m.quantities[target].symbol!r} is not dimensionless"
        )
        groups.append(group)
    return groups


def _power(symbol: str, exp: Fraction) -> str:
    if exp == 1:
        return symbol
    if exp.denominator == 1:
        return f"{symbol}^{exp.numerator}"
    return f"{symbol}^({fraction_text(exp)})"


def format_pi_group(g: PiGroup, m: DimensionalMatrix) -> str:
    """Render e.g. ``E·t_c^3/V^(2/3)``: target first, then basis order."""
    order = [g.target_index] + list(g.basis_exponents)
    num, den = [], []
    for i in order:
        e = g.monomial[i]
        if e > 0:
            num.append(_power(m.quantities[i].symbol, e))
        elif e < 0:
            den.append(_power(m.quantities[i].symbol, -e))
    text = "·".join(num)
    if len(den) == 1:
        text += "/" + den[0]
    elif den:
        text += "/(" + "·".join(den) + ")"
    return text
