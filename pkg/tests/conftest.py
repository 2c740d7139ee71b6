"""Shared engine builds; constructed once per session."""

import pytest

from frobpi import CATALOG_NAMES, build, catalog
from frobpi.fields import field_from_descriptor

Q_DEGREE = 16
FP_DEGREE = {2: 13, 3: 12, 5: 13, 7: 12}


@pytest.fixture(scope="session")
def q_engines():
    return {name: build(catalog(name), Q_DEGREE) for name in CATALOG_NAMES}


@pytest.fixture(scope="session")
def fp_engines():
    out = {}
    for p, deg in FP_DEGREE.items():
        f = field_from_descriptor(f"fp:{p}")
        for name in CATALOG_NAMES:
            out[name, p] = build(catalog(name, f), deg)
    return out


@pytest.fixture(scope="session")
def bikwad_q(q_engines):
    return q_engines["bikwad"]
