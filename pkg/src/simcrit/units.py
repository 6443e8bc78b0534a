"""Unit-expression parsing into dimension vectors and exact SI scale factors.

Grammar (whitespace is ignored between tokens)::

    expression := term (('*' | '·' | '/') term)*
    term       := atom [exponent]
    atom       := '1' | [prefix] symbol | '(' expression ')'
    exponent   := '^' signed-rational | superscript digits

Operators are left-associative and each ``/`` divides only the term that
follows it, so ``a/b/c`` is ``a·b⁻¹·c⁻¹``.  A bare ``^2/3`` is read as the
rational 2/3 only when a digit follows the slash; ``m^2/s`` is m² per second.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from types import MappingProxyType
from typing import Mapping

from .dims import DimensionError, DimensionSystem, DimensionVector, LMTTheta, dv_combine


class UnitError(ValueError):
    pass


class UnknownUnitError(UnitError):
    def __init__(self, symbol: str, offset: int):
        self.symbol = symbol
        self.offset = offset
        super().__init__(f"unknown unit {symbol!r} at byte {offset}")


class UnitParseError(UnitError):
    def __init__(self, message: str, text: str, pos: int):
        self.offset = len(text[:pos].encode("utf-8"))
        super().__init__(f"{message} at byte {self.offset} in {text!r}")


@dataclass(frozen=True)
class ParsedUnit:
    dims: DimensionVector
    si_scale: Fraction

    def __post_init__(self) -> None:
        if self.si_scale <= 0:
            raise UnitError("si_scale must be positive")


class UnitRegistry:
    """Immutable symbol table of units and prefixes over one dimension system."""

    def __init__(
        self,
        system: DimensionSystem,
        entries: Mapping[str, tuple[DimensionVector, Fraction]],
        prefixes: Mapping[str, Fraction],
    ):
        for symbol, (dims, scale) in entries.items():
            if dims.system != system:
                raise DimensionError(f"unit {symbol!r} is not in system {system.base_symbols}")
            if Fraction(scale) <= 0:
                raise UnitError(f"unit {symbol!r} needs a positive scale")
        self._system = system
        self._entries = MappingProxyType(
            {k: (dims, Fraction(scale)) for k, (dims, scale) in entries.items()}
        )
        self._prefixes = MappingProxyType({k: Fraction(v) for k, v in prefixes.items()})
        # longest prefix first so "мк" wins over "м"
        self._prefix_order = tuple(sorted(self._prefixes, key=lambda p: (-len(p), p)))

    @property
    def system(self) -> DimensionSystem:
        return self._system

    @property
    def entries(self) -> Mapping[str, tuple[DimensionVector, Fraction]]:
        return self._entries

    @property
    def prefixes(self) -> Mapping[str, Fraction]:
        return self._prefixes

    def __contains__(self, symbol: str) -> bool:
        return symbol in self._entries

    def lookup(self, symbol: str) -> ParsedUnit:
        """Resolve a (possibly prefixed) unit symbol.

        A standalone unit always beats a prefix reading, so "м" is metre
        and "с" is second.
        """
        if symbol in self._entries:
            dims, scale = self._entries[symbol]
            return ParsedUnit(dims, scale)
        for prefix in self._prefix_order:
            rest = symbol[len(prefix):]
            if symbol.startswith(prefix) and rest in self._entries:
                dims, scale = self._entries[rest]
                return ParsedUnit(dims, scale * self._prefixes[prefix])
        raise KeyError(symbol)


@lru_cache(maxsize=None)
def default_registry() -> UnitRegistry:
    """SI registry with Latin and Cyrillic spellings."""
    s = LMTTheta
    length, mass, time, temp = (s.base(x) for x in s.base_symbols)
    one = s.zero()
    energy = s.vector(L=2, M=1, T=-2)
    units: dict[tuple[str, ...], tuple[DimensionVector, Fraction]] = {
        ("m", "м"): (length, Fraction(1)),
        ("kg", "кг"): (mass, Fraction(1)),
        ("g", "г"): (mass, Fraction(1, 1000)),
        ("t", "т"): (mass, Fraction(1000)),
        ("s", "с", "sec"): (time, Fraction(1)),
        ("min", "мин"): (time, Fraction(60)),
        ("h", "ч", "час"): (time, Fraction(3600)),
        ("K", "К"): (temp, Fraction(1)),
        ("°C", "℃", "°С"): (temp, Fraction(1)),
        ("l", "L", "л"): (length ** 3, Fraction(1, 1000)),
        ("Hz", "Гц"): (time ** -1, Fraction(1)),
        ("N", "Н"): (s.vector(L=1, M=1, T=-2), Fraction(1)),
        ("Pa", "Па"): (s.vector(L=-1, M=1, T=-2), Fraction(1)),
        ("J", "Дж"): (energy, Fraction(1)),
        ("W", "Вт"): (s.vector(L=2, M=1, T=-3), Fraction(1)),
        ("rad", "рад"): (one, Fraction(1)),
    }
    entries = {alias: value for aliases, value in units.items() for alias in aliases}
    prefixes = {
        "G": Fraction(10**9), "Г": Fraction(10**9),
        "M": Fraction(10**6), "М": Fraction(10**6),
        "k": Fraction(1000), "к": Fraction(1000),
        "d": Fraction(1, 10), "д": Fraction(1, 10),
        "c": Fraction(1, 100), "с": Fraction(1, 100),
        "m": Fraction(1, 1000), "м": Fraction(1, 1000),
        "µ": Fraction(1, 10**6), "μ": Fraction(1, 10**6), "u": Fraction(1, 10**6),
        "мк": Fraction(1, 10**6),
        "n": Fraction(1, 10**9), "н": Fraction(1, 10**9),
    }
    return UnitRegistry(s, entries, prefixes)


_MUL = {"*", "·", "⋅", "×"}
_SUPERSCRIPTS = {
    "⁰": "0", "¹": "1", "²": "2", "³": "3", "⁴": "4",
    "⁵": "5", "⁶": "6", "⁷": "7", "⁸": "8", "⁹": "9",
    "⁻": "-", "⁺": "+",
}
_MINUS = {"-", "−"}


def _is_symbol_char(ch: str) -> bool:
    return ch.isalpha() or ch in "°℃_"


def _rational_power(value: Fraction, power: Fraction) -> Fraction | None:
    """Exact ``value ** power`` or None when the result is irrational."""
    if power.denominator == 1:
        return value ** power.numerator
    root = power.denominator

    def iroot(n: int) -> int | None:
        lo, hi = 0, 1 << (n.bit_length() // root + 1)
        while lo < hi:
            mid = (lo + hi) // 2
            if mid**root < n:
                lo = mid + 1
            else:
                hi = mid
        return lo if lo**root == n else None

    num, den = iroot(value.numerator), iroot(value.denominator)
    if num is None or den is None:
        return None
    return Fraction(num, den) ** power.numerator


class _Parser:
    def __init__(self, text: str, registry: UnitRegistry):
        self.text = text
        self.registry = registry
        self.pos = 0

    def error(self, message: str, pos: int | None = None) -> UnitParseError:
        return UnitParseError(message, self.text, self.pos if pos is None else pos)

    def peek(self) -> str:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def parse(self) -> ParsedUnit:
        result = self.expression()
        if self.peek():
            raise self.error(f"unexpected {self.peek()!r}")
        return result

    def expression(self) -> ParsedUnit:
        acc = self.term()
        while True:
            ch = self.peek()
            if ch in _MUL:
                sign = 1
            elif ch == "/":
                sign = -1
            else:
                return acc
            self.pos += 1
            rhs = self.term()
            acc = ParsedUnit(
                dv_combine(acc.dims, rhs.dims, sign),
                acc.si_scale * rhs.si_scale**sign,
            )

    def term(self) -> ParsedUnit:
        start = self.pos
        base = self.atom()
        power = self.exponent()
        if power is None:
            return base
        scale = _rational_power(base.si_scale, power)
        if scale is None:
            raise self.error(f"scale {base.si_scale} has no exact power {power}", start)
        return ParsedUnit(dv_combine(self.registry.system.zero(), base.dims, power), scale)

    def atom(self) -> ParsedUnit:
        ch = self.peek()
        if not ch:
            raise self.error("unexpected end of expression")
        if ch == "(":
            self.pos += 1
            inner = self.expression()
            if self.peek() != ")":
                raise self.error("expected ')'")
            self.pos += 1
            return inner
        if ch.isdigit():
            start = self.pos
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            if self.text[start:self.pos] != "1":
                raise self.error("only the literal 1 may stand for a unit", start)
            return ParsedUnit(self.registry.system.zero(), Fraction(1))
        if not _is_symbol_char(ch):
            raise self.error(f"unexpected {ch!r}")
        start = self.pos
        while self.pos < len(self.text) and _is_symbol_char(self.text[self.pos]):
            self.pos += 1
        symbol = self.text[start:self.pos]
        try:
            return self.registry.lookup(symbol)
        except KeyError:
            raise UnknownUnitError(symbol, len(self.text[:start].encode("utf-8"))) from None

    def exponent(self) -> Fraction | None:
        # superscripts attach directly, without whitespace
        if self.pos < len(self.text) and self.text[self.pos] in _SUPERSCRIPTS:
            start = self.pos
            while self.pos < len(self.text) and self.text[self.pos] in _SUPERSCRIPTS:
                self.pos += 1
            digits = "".join(_SUPERSCRIPTS[c] for c in self.text[start:self.pos])
            try:
                return Fraction(int(digits))
            except ValueError:
                raise self.error("malformed superscript exponent", start) from None
        if self.peek() != "^":
            return None
        self.pos += 1
        if self.peek() == "(":
            self.pos += 1
            value = self.signed_rational(allow_slash=True)
            if self.peek() != ")":
                raise self.error("expected ')' after exponent")
            self.pos += 1
            return value
        return self.signed_rational(allow_slash=False)

    def signed_rational(self, allow_slash: bool) -> Fraction:
        sign = 1
        ch = self.peek()
        if ch in _MINUS or ch == "+":
            sign = -1 if ch in _MINUS else 1
            self.pos += 1
        num = self.integer()
        den = 1
        slash_at = self.pos
        if self.peek() == "/":
            nxt = self.text[self.pos + 1:self.pos + 2]
            if allow_slash or nxt.isdigit():
                self.pos += 1
                den = self.integer()
                if den == 0:
                    raise self.error("zero denominator in exponent", slash_at)
            else:
                self.pos = slash_at
        return Fraction(sign * num, den)

    def integer(self) -> int:
        self.peek()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise self.error("expected an integer")
        return int(self.text[start:self.pos])


def parse_unit(text: str, registry: UnitRegistry | None = None) -> ParsedUnit:
    """Parse a unit expression such as ``"кДж/(кг·°C)"``."""
    if not text or not text.strip():
        raise UnitParseError("empty unit expression", text or "", 0)
    return _Parser(text, registry or default_registry()).parse()
