"""Shared fixtures: exact Fibonacci/Lucas tables built by plain iteration.

The tables are the reference values for everything fast-doubling or
closed-form; they deliberately use nothing from the package itself.
"""

import pytest

_TABLE_SIZE = 2012


@pytest.fixture(scope="session")
def fib_table():
    """[F_0, F_1, ..., F_2011] as exact integers."""
    table = [0, 1]
    while len(table) < _TABLE_SIZE:
        table.append(table[-1] + table[-2])
    return table


@pytest.fixture(scope="session")
def lucas_table():
    """[L_0, L_1, ..., L_2011] as exact integers."""
    table = [2, 1]
    while len(table) < _TABLE_SIZE:
        table.append(table[-1] + table[-2])
    return table
