from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from simcrit.dims import LMTTheta, dv_combine
from simcrit.units import UnitParseError, UnknownUnitError, default_registry, parse_unit

REG = default_registry()


def dims(*exps):
    return tuple(Fraction(e) for e in exps)


class TestParseExamples:
    def test_density(self):
        p = parse_unit("кг/м^3")
        assert p.dims.exponents == dims(-3, 1, 0, 0)
        assert p.si_scale == 1

    def test_literal_one(self):
        p = parse_unit("1")
        assert p.dims == LMTTheta.zero()
        assert p.si_scale == 1

    def test_specific_heat(self):
        # kJ = 10^3 kg m^2 s^-2, the kg cancels
        p = parse_unit("кДж/(кг·°C)")
        assert p.dims.exponents == dims(2, 0, -2, -1)
        assert p.si_scale == 1000

    def test_cubic_micrometre(self):
        p = parse_unit("мкм^3")
        assert p.dims.exponents == dims(3, 0, 0, 0)
        assert p.si_scale == Fraction(1, 10**18)

    @pytest.mark.parametrize("text", ["мкм³", "мкм^3", "(мкм)^3", "мкм^(3)", "µm^3", "um^3"])
    def test_volume_spellings(self, text):
        assert parse_unit(text).si_scale == Fraction(1, 10**18)

    def test_superscript_negative(self):
        assert parse_unit("м·с⁻²").dims.exponents == dims(1, 0, -2, 0)

    def test_rational_exponent(self):
        assert parse_unit("m^(1/2)").dims.exponents == dims(Fraction(1, 2), 0, 0, 0)
        assert parse_unit("m^-1/3").dims.exponents == dims(Fraction(-1, 3), 0, 0, 0)

    def test_slash_after_exponent_divides(self):
        assert parse_unit("m^2/s").dims.exponents == dims(2, 0, -1, 0)

    def test_chained_division(self):
        assert parse_unit("m/s/kg").dims.exponents == dims(1, -1, -1, 0)

    def test_deposition_rate(self):
        p = parse_unit("см^3/час")
        assert p.dims.exponents == dims(3, 0, -1, 0)
        assert p.si_scale == Fraction(1, 10**6 * 3600)

    def test_inverse(self):
        assert parse_unit("1/s").dims.exponents == dims(0, 0, -1, 0)


class TestRegistry:
    def test_watt_carries_mass(self):
        assert REG.lookup("Вт").dims.exponents == dims(2, 1, -3, 0)

    def test_cyrillic_second(self):
        assert REG.lookup("с").dims.exponents == dims(0, 0, 1, 0)

    def test_kilogram_is_base(self):
        p = REG.lookup("кг")
        assert p.dims.exponents == dims(0, 1, 0, 0)
        assert p.si_scale == 1

    def test_standalone_beats_prefix(self):
        assert REG.lookup("м").si_scale == 1
        assert REG.lookup("мм").si_scale == Fraction(1, 1000)
        assert REG.lookup("ms").dims.exponents == dims(0, 0, 1, 0)

    @pytest.mark.parametrize("sym", ["s", "с", "m", "м", "kg", "кг", "g", "г", "K", "К", "°C", "J", "Дж", "W", "Вт", "h", "ч"])
    def test_required_symbols(self, sym):
        assert sym in REG

    def test_immutable(self):
        with pytest.raises(TypeError):
            REG.entries["x"] = None


class TestErrors:
    def test_unknown_unit_named(self):
        with pytest.raises(UnknownUnitError) as info:
            parse_unit("кг/furlong")
        assert info.value.symbol == "furlong"

    def test_byte_offset(self):
        with pytest.raises(UnitParseError) as info:
            parse_unit("кг/)")
        assert info.value.offset == len("кг/".encode())

    def test_zero_denominator(self):
        with pytest.raises(UnitParseError):
            parse_unit("m^(1/0)")

    @pytest.mark.parametrize("text", ["", "  ", "m/", "(m", "m^", "2", "m**2", "m^x"])
    def test_malformed(self, text):
        with pytest.raises(UnitParseError):
            parse_unit(text)

    def test_irrational_scale(self):
        with pytest.raises(UnitParseError):
            parse_unit("km^(1/2)")


UNITS = ["m", "kg", "s", "K", "J", "W", "Па", "Н", "кДж", "мкм", "см", "ч", "г", "°C"]
atoms = st.sampled_from(UNITS)
# scale 1, so any rational power stays exact
coherent = st.sampled_from(["m", "kg", "s", "K", "J", "W", "Па", "Н", "°C"])
exponents = st.builds(Fraction, st.integers(-4, 4), st.sampled_from([1, 3]))


def _exp_text(n: Fraction) -> str:
    return f"({n.numerator}/{n.denominator})"


class TestProperties:
    @given(atoms, atoms)
    def test_division_subtracts(self, a, b):
        assert parse_unit(f"{a}/{b}").dims == dv_combine(parse_unit(a).dims, parse_unit(b).dims, -1)

    @given(coherent, exponents)
    def test_rational_power_scales_dims(self, a, n):
        p = parse_unit(f"({a})^{_exp_text(n)}")
        assert p.dims == dv_combine(LMTTheta.zero(), parse_unit(a).dims, n)

    @given(atoms, st.integers(-4, 4))
    def test_integer_power_scales_dims_and_scale(self, a, n):
        p = parse_unit(f"({a})^{n}")
        assert p.dims == dv_combine(LMTTheta.zero(), parse_unit(a).dims, n)
        assert p.si_scale == parse_unit(a).si_scale ** n

    @given(atoms, atoms)
    def test_scales_multiply(self, a, b):
        assert parse_unit(f"{a}·{b}").si_scale == parse_unit(a).si_scale * parse_unit(b).si_scale

    @given(st.lists(atoms, min_size=1, max_size=4))
    def test_deterministic(self, parts):
        text = "*".join(parts)
        assert parse_unit(text) == parse_unit(text)
