"""Pure-numpy decode kernels (fallback when the compiled extension is absent).

Both kernels operate on arrays pre-sorted by (group id, sort key) and return
a boolean mask, aligned with the input order, of the entries that decode.
"""

from __future__ import annotations

import numpy as np

BACKEND = "numpy"


def decode_sorted_groups(
    group_ids: np.ndarray, keys: np.ndarray, threshold: float
) -> np.ndarray:
    """Chain decode over contiguous groups of a sorted frame.

    Within each group the entries are ordered by decode priority (ascending
    key); entry q decodes while every gap key[j+1]-key[j] from the group
    start up to and including the gap after q exceeds the threshold, and the
    last entry of a fully cancelled group decodes too.
    """
    n = group_ids.shape[0]
    if n == 0:
        return np.zeros(0, dtype=bool)
    new_group = np.empty(n, dtype=bool)
    new_group[0] = True
    np.not_equal(group_ids[1:], group_ids[:-1], out=new_group[1:])

    # fail[q]: the gap arriving at q (from q-1) is within the same group and
    # does not exceed the threshold.
    fail = np.zeros(n, dtype=bool)
    fail[1:] = (keys[1:] - keys[:-1] <= threshold) & ~new_group[1:]
    cum = np.cumsum(fail)

    # Failures accumulated since the group start, inclusive of the gap
    # arriving at q (group-start entries contribute zero by construction).
    start_idx = np.maximum.accumulate(np.where(new_group, np.arange(n), 0))
    pf = cum - cum[start_idx]

    last = np.empty(n, dtype=bool)
    last[-1] = True
    last[:-1] = new_group[1:]

    decoded = np.empty(n, dtype=bool)
    # Non-last entries need the gap after them to pass as well; the last
    # entry decodes iff every gap before it passed.
    decoded[:-1] = np.where(last[:-1], pf[:-1] == 0, pf[1:] == 0)
    decoded[-1] = pf[-1] == 0
    return decoded


def singleton_mask(group_ids: np.ndarray) -> np.ndarray:
    """Mask of entries that are alone in their group (input sorted by group)."""
    n = group_ids.shape[0]
    if n == 0:
        return np.zeros(0, dtype=bool)
    new_group = np.empty(n, dtype=bool)
    new_group[0] = True
    np.not_equal(group_ids[1:], group_ids[:-1], out=new_group[1:])
    last = np.empty(n, dtype=bool)
    last[-1] = True
    last[:-1] = new_group[1:]
    return new_group & last
