"""Boundary-counting kernels with a numba path and a pure-numpy fallback.

The backend is picked once at import time from ``CLC_BACKEND``
(``numba`` or ``numpy``); ``numba`` is the default when it is installed.
numba itself is imported on first use, and batches too small to repay the
dispatch cost take the numpy path unless a backend is named explicitly.

Both kernels take the corner involution ``sigma`` over the ``4m`` boundary
arc endpoints (node ``4*i + 2*end + side`` for edge ``i``) and a batch of
twist masks, and return the number of boundary circles for each mask.  The
edge involution is implicit: inside an edge's block of four nodes an
untwisted edge pairs ``x`` with ``x ^ 3`` and a twisted one with ``x ^ 2``.
"""
from __future__ import annotations

import importlib.util
import os

import numpy as np

BACKEND = os.environ.get("CLC_BACKEND", "numba").strip().lower()
if BACKEND != "numba" or importlib.util.find_spec("numba") is None:
    BACKEND = "numpy"

# below this many node visits the numpy path wins on latency
SMALL_WORK = 1 << 14


def count_boundaries_numpy(sigma: np.ndarray, masks: np.ndarray) -> np.ndarray:
    n = sigma.shape[0]
    masks = np.asarray(masks, dtype=np.int64)
    if n == 0:
        return np.ones(masks.shape[0], dtype=np.int64)
    nodes = np.arange(n, dtype=np.int64)
    bits = (masks[:, None] >> (nodes >> 2)[None, :]) & 1
    tau = nodes[None, :] ^ (3 - bits)
    # f = tau o sigma has exactly two cycles per boundary circle
    f = tau[:, sigma]
    label = np.broadcast_to(nodes, f.shape).copy()
    steps = max(1, int(np.ceil(np.log2(n))) + 1)
    for _ in range(steps):
        label = np.minimum(label, np.take_along_axis(label, f, axis=1))
        f = np.take_along_axis(f, f, axis=1)
    return (label == nodes[None, :]).sum(axis=1) // 2


def _count_boundaries_loop(sigma, masks):
    n = sigma.shape[0]
    out = np.empty(masks.shape[0], dtype=np.int64)
    seen = np.zeros(n, dtype=np.uint8)
    for k in range(masks.shape[0]):
        if n == 0:
            out[k] = 1
            continue
        mask = masks[k]
        seen[:] = 0
        b = 0
        for s in range(n):
            if seen[s]:
                continue
            b += 1
            x = s
            while True:
                seen[x] = 1
                y = sigma[x]
                seen[y] = 1
                x = y ^ (3 - ((mask >> (y >> 2)) & 1))
                if x == s:
                    break
        out[k] = b
    return out


_numba_kernel = None


def numba_kernel():
    """The compiled loop kernel, or None when numba is unavailable."""
    global _numba_kernel
    if _numba_kernel is None:
        try:
            from numba import njit
        except ImportError:
            return None
        _numba_kernel = njit(cache=True, nogil=True)(_count_boundaries_loop)
    return _numba_kernel


def count_boundaries(sigma: np.ndarray, masks: np.ndarray, backend: str | None = None) -> np.ndarray:
    """Boundary circle count for each twist mask in ``masks``."""
    sigma = np.ascontiguousarray(sigma, dtype=np.int64)
    masks = np.ascontiguousarray(masks, dtype=np.int64)
    if backend is None:
        backend = BACKEND if masks.shape[0] * sigma.shape[0] >= SMALL_WORK else "numpy"
    if backend == "numba":
        kernel = numba_kernel()
        if kernel is not None:
            return kernel(sigma, masks)
    out = np.empty(masks.shape[0], dtype=np.int64)
    # bound the (batch x 4m) working set
    step = max(1, (1 << 20) // max(1, sigma.shape[0]))
    for a in range(0, masks.shape[0], step):
        out[a:a + step] = count_boundaries_numpy(sigma, masks[a:a + step])
    return out


def odd_parity_any(cycle_masks: np.ndarray, masks: np.ndarray) -> np.ndarray:
    """True where some cycle carries an odd number of twisted edges."""
    masks = np.asarray(masks, dtype=np.int64)
    if len(cycle_masks) == 0:
        return np.zeros(masks.shape[0], dtype=bool)
    cyc = np.asarray(cycle_masks, dtype=np.int64)
    par = np.bitwise_count(masks[:, None] & cyc[None, :]) & 1
    return par.any(axis=1)


def scatter_bits(counters: np.ndarray, positions: list[int]) -> np.ndarray:
    """Map counter bit ``j`` to bit ``positions[j]`` for every counter."""
    counters = np.asarray(counters, dtype=np.int64)
    out = np.zeros_like(counters)
    for j, p in enumerate(positions):
        out |= ((counters >> j) & 1) << p
    return out
