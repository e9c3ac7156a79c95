import os
from pathlib import Path

import pytest
import sympy

from painleve_fibrations.algebra import MultiPoly, RationalFunction, parse_expr

ROOT = Path(__file__).resolve().parents[1]
PAPER = ROOT / "paper.md"


def to_sympy(p):
    """Our polynomial or rational function as a sympy expression."""
    if isinstance(p, RationalFunction):
        return to_sympy(p.num) / to_sympy(p.den)
    return sympy.sympify(str(MultiPoly.coerce(p)).replace("^", "**"))


def from_sympy(e):
    return parse_expr(str(sympy.expand(e)))


@pytest.fixture(scope="session")
def catalog():
    from painleve_fibrations.catalog import load_catalog
    return load_catalog()


@pytest.fixture(scope="session")
def paper_text():
    if not PAPER.exists():
        pytest.skip("paper.md not available")
    return PAPER.read_text()
