"""Packed n-bit membership table indexed by vertex ID."""

from __future__ import annotations

import numba
import numpy as np

_ONE = np.uint64(1)


class Bitmap:
    """A reusable vertex set backed by ``ceil(n / 64)`` uint64 words.

    The listing kernels operate on :attr:`words` directly through the
    ``bit_*`` helpers below; the methods here are for callers in Python.
    """

    __slots__ = ("n", "words")

    def __init__(self, n: int):
        self.n = int(n)
        self.words = np.zeros(max((self.n + 63) >> 6, 1), dtype=np.uint64)

    def _check(self, v: int) -> int:
        v = int(v)
        if not 0 <= v < self.n:
            raise IndexError(f"bit {v} out of range for Bitmap of size {self.n}")
        return v

    def set(self, v: int) -> None:
        v = self._check(v)
        self.words[v >> 6] |= _ONE << np.uint64(v & 63)

    def clear(self, v: int) -> None:
        v = self._check(v)
        self.words[v >> 6] &= ~(_ONE << np.uint64(v & 63))

    def __contains__(self, v: int) -> bool:
        v = self._check(v)
        return bool((self.words[v >> 6] >> np.uint64(v & 63)) & _ONE)

    def set_many(self, vs) -> None:
        for v in vs:
            self.set(v)

    def clear_many(self, vs) -> None:
        for v in vs:
            self.clear(v)

    def reset(self) -> None:
        self.words[:] = 0

    def is_clear(self) -> bool:
        return not self.words.any()

    def count(self) -> int:
        return int(sum(int(w).bit_count() for w in self.words)) if self.n else 0

    def __len__(self) -> int:
        return self.n

    @property
    def nbytes(self) -> int:
        return self.words.nbytes

    def __repr__(self) -> str:
        return f"Bitmap(n={self.n}, set={self.count()})"


@numba.njit(inline="always", nogil=True)
def bit_set(words, v):
    words[v >> 6] |= np.uint64(1) << np.uint64(v & 63)


@numba.njit(inline="always", nogil=True)
def bit_clear(words, v):
    words[v >> 6] &= ~(np.uint64(1) << np.uint64(v & 63))


@numba.njit(inline="always", nogil=True)
def bit_test(words, v):
    return ((words[v >> 6] >> np.uint64(v & 63)) & np.uint64(1)) != np.uint64(0)
