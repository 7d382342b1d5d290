from __future__ import annotations

import pytest

from weightedres import PolyIdeal, parse_ideal


@pytest.fixture
def corpus() -> list[PolyIdeal]:
    """The worked-example ideals used across the suite."""
    return [
        parse_ideal("x^5 + x^3*y^3 + y^7"),
        parse_ideal("x^5 + x^3*y^3 + y^8"),
        parse_ideal("x^4, x*y^4, x^2*y*z^2"),
        parse_ideal("x*y^2 + y^4"),
    ]
