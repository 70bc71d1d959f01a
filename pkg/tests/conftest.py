"""Session-scoped fixtures for the expensive analytic computations.

The line integrals and the big sweep take seconds to minutes; computing
them once and sharing the results keeps the whole suite within budget.
"""

import pytest

from hpmaps import dirichlet, find_periodic_points


@pytest.fixture(scope="session")
def sweep_3_20():
    """Full periodic-point sweep for p = 3 up to t = 2^20."""
    return find_periodic_points(3, 1 << 20)


@pytest.fixture(scope="session")
def perron_vals():
    """perron_integral on the four desk-scale (n, omega) pairs."""
    pairs = [(1, 1), (2, 1), (3, 1), (2, -1)]
    return {pair: dirichlet.perron_integral(*pair) for pair in pairs}


@pytest.fixture(scope="session")
def shifted_vals():
    """shifted_integral(n, 1) for the consistency and scaling checks."""
    return {n: dirichlet.shifted_integral(n, 1) for n in (2, 3, 4, 8, 16, 32)}


@pytest.fixture(scope="session")
def residue_vals():
    """residue_R3(1, n) for the three-way consistency checks."""
    return {n: dirichlet.residue_R3(1, n) for n in (2, 3)}
