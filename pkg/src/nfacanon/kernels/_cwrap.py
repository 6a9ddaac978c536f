"""Wrapper exposing the compiled successor kernel with int-bitmask I/O."""

from __future__ import annotations

import sys

import numpy as np

from ..automata import Nfa
from . import _ckernels

if sys.byteorder != "little":  # mask <-> word packing assumes little-endian
    raise ImportError("compiled kernel requires a little-endian platform")


class CSuccessorKernel:
    backend = "compiled"

    def __init__(self, nfa: Nfa):
        self.alphabet_size = nfa.alphabet_size
        n = nfa.num_states
        self._nwords = (n + 63) // 64
        self._nbytes = self._nwords * 8
        table = np.zeros((n, nfa.alphabet_size, self._nwords), dtype=np.uint64)
        for a in range(nfa.alphabet_size):
            row = nfa.succ_masks(a)
            for s in range(n):
                if row[s]:
                    table[s, a] = np.frombuffer(
                        row[s].to_bytes(self._nbytes, "little"), dtype=np.uint64
                    )
        self._table = table
        self._out = np.empty((nfa.alphabet_size, self._nwords), dtype=np.uint64)

    def successors(self, mask: int) -> list[int]:
        member_words = np.frombuffer(
            mask.to_bytes(self._nbytes, "little"), dtype=np.uint64
        )
        self._out[:] = 0
        _ckernels.batch_successors(self._table, member_words, self._out)
        raw = self._out.tobytes()
        nb = self._nbytes
        return [
            int.from_bytes(raw[a * nb : (a + 1) * nb], "little")
            for a in range(self.alphabet_size)
        ]
