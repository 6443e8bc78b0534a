import itertools
import random
from fractions import Fraction

import pytest

from simcrit import linalg
from simcrit.dims import DimensionSystem, DimensionVector, Quantity
from simcrit.pi import BasisSelection, DimensionalMatrix
from simcrit.slm import slm_preset


def leibniz_det(rows):
    """Determinant by permutation expansion; independent of the elimination code."""
    n = len(rows)
    total = Fraction(0)
    for perm in itertools.permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = Fraction(-1 if inversions % 2 else 1)
        for i, p in enumerate(perm):
            term *= rows[i][p]
        total += term
    return total


def random_system(rng: random.Random, max_dims=5, max_quantities=10):
    """Random rational dimensional matrix plus a maximal independent basis."""
    n_dims = rng.randint(2, max_dims)
    n_q = rng.randint(1, max_quantities)
    system = DimensionSystem(tuple(f"D{i}" for i in range(n_dims)))
    quantities = []
    for i in range(n_q):
        row = [Fraction(rng.randint(-4, 4), rng.choice((1, 2, 3))) for _ in range(n_dims)]
        quantities.append(Quantity(f"q{i}", DimensionVector(system, row)))
    m = DimensionalMatrix(quantities, system)
    return m, greedy_basis(m, rng.sample(range(n_q), n_q))


def greedy_basis(m, order):
    chosen = []
    for i in order:
        if linalg.rank(m.rows(chosen + [i])) == len(chosen) + 1:
            chosen.append(i)
    return BasisSelection(chosen)


@pytest.fixture
def preset():
    return slm_preset()


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
