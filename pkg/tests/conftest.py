from __future__ import annotations

from datetime import date as Date

import pytest

from hullcast import DaySeries

# the 23 hourly CO values of the worked single-day example
TABLE1_POINTS = (
    (1, 3.92), (2, 4.37), (3, 3.87), (4, 3.39), (5, 3.35), (6, 2.5),
    (7, 1.39), (8, 0.96), (9, 1.74), (10, 1.08), (11, 0.36), (12, 0.18),
    (13, 0.8), (14, 0.92), (15, 0.9), (16, 0.91), (17, 0.7), (18, 0.86),
    (19, 1.26), (20, 2.26), (21, 2.24), (22, 3.37), (23, 4.1),
)

# the worked example's hand-picked 12 "outer region" values (its selection
# does not coincide with the strict hull; kept to pin the averaging formula)
OUTER_REGION_VALUES = (3.92, 3.39, 1.39, 0.96, 0.36, 0.18, 0.7, 0.86, 1.26, 2.24, 4.1, 4.37)


@pytest.fixture
def table1_series() -> DaySeries:
    return DaySeries(Date(2014, 1, 2), "CO", TABLE1_POINTS)
