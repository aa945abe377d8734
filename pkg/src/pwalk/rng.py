"""Counter-based step streams.

Step ``i`` of trial ``k`` under master seed ``s`` is a pure function of
``(s, k, i)``: it is read from word ``i`` of the Philox4x64 stream keyed by
``(s, k)``.  Trials can therefore be generated in any order or partition.
"""

from __future__ import annotations

import numpy as np

_MASK64 = (1 << 64) - 1
# 2**64 = 1 (mod 3), so only the all-ones word breaks uniformity on {0, 1, 2}
_REJECT = np.uint64(_MASK64)
_RETRY_SHIFT = 192


def _key(seed: int, trial: int) -> list[int]:
    return [seed & _MASK64, trial & _MASK64]


def _words(seed: int, trial: int, start: int, n: int, round_: int = 0) -> np.ndarray:
    bits = np.random.Philox(key=_key(seed, trial))
    block, lane = divmod(start, 4)
    offset = (round_ << _RETRY_SHIFT) + block
    if offset:
        bits.advance(offset)
    return bits.random_raw(lane + n)[lane:]


def step_indices(seed: int, trial: int, n: int, start: int = 0) -> np.ndarray:
    """Exponents j in {0, 1, 2} for steps ``start .. start+n-1`` (uint8 array)."""
    raw = _words(seed, trial, start, n)
    bad = np.flatnonzero(raw == _REJECT)
    for i in bad:
        raw[i] = _retry(seed, trial, start + int(i))
    return (raw % np.uint64(3)).astype(np.uint8)


def _retry(seed: int, trial: int, i: int) -> np.uint64:
    round_ = 1
    while True:
        w = _words(seed, trial, i, 1, round_)[0]
        if w != _REJECT:
            return w
        round_ += 1


def step_at(seed: int, trial: int, i: int) -> int:
    return int(step_indices(seed, trial, 1, start=i)[0])
