from __future__ import annotations

from itertools import product as iproduct

import pytest

from iwk.root_datum import build_datum, preset_names

# presets named by the oracle-equivalence criteria
ORACLE_PRESETS = ["GL2", "SL2", "PGL2", "SL3", "GSp4", "ResE2-GL2", "U3-unram"]


@pytest.fixture(scope="session")
def datums():
    return {name: build_datum(name) for name in preset_names()}


def dominant_grid(datum, bound):
    """All dominant coweights with coordinates bounded in absolute value."""
    ranges = []
    for i in range(datum.lattice.rank):
        if i < datum.lattice.free_rank:
            ranges.append(range(-bound, bound + 1))
        else:
            ranges.append(range(datum.lattice.torsion[i - datum.lattice.free_rank]))
    out = []
    for v in iproduct(*ranges):
        if datum.is_dominant(v):
            out.append(datum.lattice.reduce(v))
    return out


@pytest.fixture(scope="session")
def mu_grid2(datums):
    """Dominant coweights with coordinates bounded by 2, per preset."""
    return {name: dominant_grid(d, 2) for name, d in datums.items()}
