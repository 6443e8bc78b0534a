"""Derivation reports: exact, JSON round-trippable records of a π derivation."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Optional

from . import __version__
from .dims import fraction_text
from .pi import check_basis, derive_pi_groups, format_pi_group, net_dimensions, replacement_determinants
from .problem import Problem, checksum, preset_checksum

ENGINE_NAME = "simcrit"


@dataclass
class GroupRecord:
    name: str
    target: str
    exponents: dict[str, str]  # basis symbol -> k as fraction text
    monomial: dict[str, str]  # symbol -> exponent, nonzero entries only
    formula: str
    dimensionless: bool
    # row-replaced basis determinants; None when the basis is not square
    determinants: Optional[list[str]] = None


@dataclass
class DerivationReport:
    engine: dict[str, str]
    preset_sha256: str
    input_sha256: str
    input: dict
    determinant: Optional[str]
    rank: int
    groups: list[GroupRecord] = field(default_factory=list)

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> DerivationReport:
        data = dict(data)
        data["groups"] = [GroupRecord(**g) for g in data.get("groups", [])]
        return cls(**data)


def build_report(problem: Problem) -> DerivationReport:
    """Derive all groups for a problem; every group is re-checked before reporting."""
    m, b = problem.matrix, problem.basis
    determinant = None
    if len(b) == len(m.system):
        determinant = fraction_text(check_basis(m, b).determinant)
    groups = []
    for n, g in enumerate(derive_pi_groups(m, b), start=len(b) + 1):
        dimensionless = net_dimensions(m, g.monomial).is_dimensionless
        if not dimensionless:
            raise AssertionError(f"group {n} failed the dimensionless check")
        groups.append(
            GroupRecord(
                name=f"π{n}",
                target=m.quantities[g.target_index].symbol,
                exponents={m.quantities[i].symbol: fraction_text(k) for i, k in g.basis_exponents.items()},
                monomial={s: fraction_text(e) for s, e in g.exponents_by_symbol(m).items()},
                formula=format_pi_group(g, m),
                dimensionless=dimensionless,
                determinants=(
                    [fraction_text(d) for d in replacement_determinants(m, b, g.target_index)]
                    if determinant is not None
                    else None
                ),
            )
        )
    return DerivationReport(
        engine={"name": ENGINE_NAME, "version": __version__},
        preset_sha256=preset_checksum(),
        input_sha256=checksum(problem.data),
        input=problem.data,
        determinant=determinant,
        rank=m.rank(),
        groups=groups,
    )


def render_text(report: DerivationReport) -> str:
    inp = report.input
    lines = [
        f"{report.engine['name']} {report.engine['version']}",
        f"system: {' '.join(inp['system']['dimensions'])}",
        f"quantities: {', '.join(q['symbol'] for q in inp['quantities'])}",
        f"basis: {', '.join(inp['basis'])}",
    ]
    if report.determinant is not None:
        lines.append(f"basis determinant: {report.determinant}")
    lines.append(f"rank: {report.rank}; groups: {len(report.groups)}")
    for g in report.groups:
        ks = ", ".join(f"{s}: {k}" for s, k in g.exponents.items())
        check = "dimensionless" if g.dimensionless else "NOT dimensionless"
        lines.append(f"  {g.name} = {g.formula}    k = ({ks})    [{check}]")
        if g.determinants is not None:
            lines.append(f"       row-replaced determinants: {', '.join(g.determinants)}")
    if report.groups:
        names = "; ".join(g.name for g in report.groups)
        lines.append(f"Φ({names}) = 0")
    return "\n".join(lines) + "\n"
