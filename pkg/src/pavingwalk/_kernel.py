"""Vectorized multi-chain simulation of the bases-exchange walk.

Both backends (numba-compiled and pure numpy) reproduce, chain for chain and
draw for draw, the scalar walk in :mod:`walk` / :mod:`_rng`: one combined
Lemire-rejected draw per step selects an (element-out, element-in) pair and
the acceptance variate.  Endpoints therefore do not depend on the backend or
on the number of threads.
"""

from __future__ import annotations

import os

import numpy as np

from ._rng import CHAIN_MULT, GOLDEN, MASK64

_U64 = np.uint64
_NO_NUMBA = bool(os.environ.get("PAVINGWALK_NO_NUMBA"))

_numba_fn = None


def _get_numba_fn():
    global _numba_fn
    if _numba_fn is not None:
        return _numba_fn
    import numba

    golden = _U64(GOLDEN)
    chain_mult = _U64(CHAIN_MULT)
    c1 = _U64(0xBF58476D1CE4E5B9)
    c2 = _U64(0x94D049BB133111EB)
    low32 = _U64(0xFFFFFFFF)

    @numba.njit(cache=True, inline="always")
    def _mix64(x):
        z = x
        z = (z ^ (z >> _U64(30))) * c1
        z = (z ^ (z >> _U64(27))) * c2
        return z ^ (z >> _U64(31))

    @numba.njit(cache=True, parallel=True)
    def _run(base_key, n_chains, steps, start_idx, move, m, mr, span, threshold, out):
        for c in numba.prange(n_chains):
            key = _mix64(base_key + _U64(c + 1) * chain_mult)
            ui = _U64(0)
            s = start_idx
            for _ in range(steps):
                while True:
                    o = _mix64(key + ((ui >> _U64(1)) + _U64(1)) * golden)
                    if ui & _U64(1):
                        x = o >> _U64(32)
                    else:
                        x = o & low32
                    ui += _U64(1)
                    prod = x * span
                    if (prod & low32) >= threshold:
                        break
                w = prod >> _U64(32)
                k = w // m
                v = w - k * m
                tgt = move[s, k]
                if v < mr and tgt >= 0:
                    s = tgt
            out[c] = s

    _numba_fn = _run
    return _numba_fn


def _mix64_vec(x):
    z = x.copy()
    z ^= z >> _U64(30)
    z *= _U64(0xBF58476D1CE4E5B9)
    z ^= z >> _U64(27)
    z *= _U64(0x94D049BB133111EB)
    z ^= z >> _U64(31)
    return z


def _run_numpy(base_key, n_chains, steps, start_idx, move, m, mr, span, threshold):
    keys = _mix64_vec(
        _U64(base_key) + (np.arange(1, n_chains + 1, dtype=np.uint64)) * _U64(CHAIN_MULT)
    )
    ui = np.zeros(n_chains, dtype=np.uint64)
    state = np.full(n_chains, start_idx, dtype=np.int64)
    low32 = _U64(0xFFFFFFFF)
    span64 = _U64(span)
    thr = _U64(threshold)
    m64 = _U64(m)
    mr64 = _U64(mr)
    for _ in range(steps):
        o = _mix64_vec(keys + ((ui >> _U64(1)) + _U64(1)) * _U64(GOLDEN))
        x = np.where(ui & _U64(1), o >> _U64(32), o & low32)
        ui += _U64(1)
        prod = x * span64
        bad = (prod & low32) < thr
        while bad.any():
            idx = np.nonzero(bad)[0]
            o = _mix64_vec(keys[idx] + ((ui[idx] >> _U64(1)) + _U64(1)) * _U64(GOLDEN))
            x = np.where(ui[idx] & _U64(1), o >> _U64(32), o & low32)
            ui[idx] += _U64(1)
            prod[idx] = x * span64
            bad[idx] = (prod[idx] & low32) < thr
        w = prod >> _U64(32)
        k = (w // m64).astype(np.int64)
        v = w - k.astype(np.uint64) * m64
        tgt = move[state, k]
        ok = (v < mr64) & (tgt >= 0)
        state = np.where(ok, tgt, state)
    return state.astype(np.int32)


def run_chains(base_key: int, n_chains: int, steps: int, start_idx: int, move, m: int, mr: int):
    """Endpoint state indices of ``n_chains`` independent walks of ``steps`` steps."""
    npairs = move.shape[1]
    span = npairs * m
    if span == 0 or steps == 0 or npairs == 0:
        return np.full(n_chains, start_idx, dtype=np.int32)
    threshold = ((1 << 32) - span) % span
    if not _NO_NUMBA:
        try:
            fn = _get_numba_fn()
        except ImportError:
            fn = None
        if fn is not None:
            out = np.empty(n_chains, dtype=np.int32)
            fn(
                _U64(base_key),
                n_chains,
                steps,
                np.int32(start_idx),
                move,
                _U64(m),
                _U64(mr),
                _U64(span),
                _U64(threshold),
                out,
            )
            return out
    return _run_numpy(base_key, n_chains, steps, start_idx, move, m, mr, span, threshold)
