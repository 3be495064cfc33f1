"""Kernel backend selection and the frame-level decode entry point.

The hot loop of a run is decoding every (slot, preamble) group of a frame.
A compiled extension implements it when available; otherwise a vectorised
numpy fallback is used.  Set RACHSIM_PURE_PYTHON=1 to force the fallback
(used by the benchmark and the backend-equivalence tests).
"""

from __future__ import annotations

import os

import numpy as np

from . import _kernels_py

if os.environ.get("RACHSIM_PURE_PYTHON"):
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _kernels_py

BACKEND: str = _impl.BACKEND


def get_backend() -> str:
    """Name of the active kernel backend ('cython' or 'numpy')."""
    return BACKEND


def chain_decode_mask(
    group_ids: np.ndarray,
    keys: np.ndarray,
    tie_ids: np.ndarray,
    threshold: float,
    impl=None,
) -> np.ndarray:
    """Decode mask for one frame of msg-A, in the caller's input order.

    ``keys`` is the decode-priority key (ascending = decoded first), i.e.
    negated received power for the SIC rule or arrival time for the
    arrival-gap rule; ``tie_ids`` breaks exact key ties deterministically.
    """
    if impl is None:
        impl = _impl
    order = np.lexsort((tie_ids, keys, group_ids))
    decoded_sorted = impl.decode_sorted_groups(
        np.ascontiguousarray(group_ids[order], dtype=np.int64),
        np.ascontiguousarray(keys[order], dtype=np.float64),
        float(threshold),
    )
    decoded = np.empty(group_ids.shape[0], dtype=bool)
    decoded[order] = decoded_sorted
    return decoded
