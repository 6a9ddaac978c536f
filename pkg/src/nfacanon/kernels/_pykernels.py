"""Pure-Python successor kernel (fallback backend)."""

from __future__ import annotations

from ..automata import Nfa


class PySuccessorKernel:
    """Computes all per-symbol successor metastates of a metastate.

    Transition rows are pre-grouped by source state so one pass over the set
    bits of the metastate fills every symbol's accumulator.
    """

    backend = "python"

    def __init__(self, nfa: Nfa):
        self.alphabet_size = nfa.alphabet_size
        rows = [nfa.succ_masks(a) for a in range(nfa.alphabet_size)]
        self._by_state = [
            tuple(rows[a][s] for a in range(nfa.alphabet_size))
            for s in range(nfa.num_states)
        ]

    def successors(self, mask: int) -> list[int]:
        out = [0] * self.alphabet_size
        by_state = self._by_state
        m = mask
        while m:
            low = m & -m
            m ^= low
            for a, v in enumerate(by_state[low.bit_length() - 1]):
                out[a] |= v
        return out
