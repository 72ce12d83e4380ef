"""Finite windows v[1..N] of complex values bounded by 1."""

from __future__ import annotations

import numpy as np

MODULUS_TOL = 1e-9


class SeqWindow:
    """Values ``v[1], ..., v[N]`` with ``|v[n]| <= 1``.

    Indexing is 1-based through :meth:`at`; ``values`` is the raw 0-based
    array (``values[n - 1] == v[n]``).
    """

    __slots__ = ("values",)

    def __init__(self, values):
        arr = np.asarray(values, dtype=complex).reshape(-1)
        if arr.size and np.abs(arr).max() > 1 + MODULUS_TOL:
            bad = int(np.argmax(np.abs(arr))) + 1
            raise ValueError(f"|v[{bad}]| = {abs(arr[bad - 1])} exceeds 1")
        arr.flags.writeable = False
        self.values = arr

    @classmethod
    def from_signs(cls, signs) -> SeqWindow:
        signs = np.asarray(signs)
        if not np.isin(signs, (-1, 1)).all():
            raise ValueError("sign window must contain only +1 and -1")
        return cls(signs.astype(complex))

    @property
    def N(self) -> int:
        return len(self.values)

    def __len__(self) -> int:
        return len(self.values)

    def at(self, n: int) -> complex:
        if not 1 <= n <= self.N:
            raise IndexError(f"index {n} outside 1..{self.N}")
        return complex(self.values[n - 1])

    def is_pm1(self) -> bool:
        v = self.values
        return bool(np.all(v.imag == 0) and np.all(np.abs(v.real) == 1))

    def signs(self) -> np.ndarray:
        if not self.is_pm1():
            raise ValueError("window is not +-1 valued")
        return self.values.real.astype(np.int64)

    def __eq__(self, other):
        if not isinstance(other, SeqWindow):
            return NotImplemented
        return np.array_equal(self.values, other.values)

    def __repr__(self):
        return f"SeqWindow(N={self.N})"
