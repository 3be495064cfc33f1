import numpy as np
import pytest

from rachsim import ChannelParams, MsgA


@pytest.fixture
def channel():
    return ChannelParams()


def make_group(powers, slot=1, preamble=1, arrivals=None, ids=None):
    """Build one (slot, preamble) group of msg-A from raw power values."""
    n = len(powers)
    ids = ids if ids is not None else list(range(n))
    arrivals = arrivals if arrivals is not None else [1.0] * n
    return [
        MsgA(
            device_id=ids[i],
            preamble=preamble,
            slot=slot,
            rx_power_dbm=float(powers[i]),
            arrival_time_us=float(arrivals[i]),
        )
        for i in range(n)
    ]


def random_groups(n_groups, rng, max_size=5, power_lo=-130.0, power_hi=-70.0):
    """Random decode groups with i.i.d. uniform powers, sizes 1..max_size."""
    groups = []
    for _ in range(n_groups):
        size = int(rng.integers(1, max_size + 1))
        powers = rng.uniform(power_lo, power_hi, size)
        groups.append(make_group(powers, ids=list(range(size))))
    return groups


def arrival_groups(n_groups, rng, max_size=5):
    groups = []
    for _ in range(n_groups):
        size = int(rng.integers(1, max_size + 1))
        arrivals = rng.uniform(0.0, 10.0, size)
        groups.append(make_group(np.full(size, -100.0), arrivals=arrivals))
    return groups
