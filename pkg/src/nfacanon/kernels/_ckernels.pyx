# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled successor kernel over word-packed transition bitsets."""

cdef extern from *:
    int __builtin_ctzll(unsigned long long) nogil


def batch_successors(
    const unsigned long long[:, :, :] table,
    const unsigned long long[:] member_words,
    unsigned long long[:, :] out,
):
    """OR together transition rows of every member state, per symbol.

    ``table`` has shape (num_states, alphabet_size, num_words); ``out`` has
    shape (alphabet_size, num_words) and must be zeroed by the caller.
    """
    cdef Py_ssize_t k = table.shape[1]
    cdef Py_ssize_t nwords = table.shape[2]
    cdef Py_ssize_t w, w2, a, s
    cdef unsigned long long word
    with nogil:
        for w in range(nwords):
            word = member_words[w]
            while word != 0:
                s = w * 64 + __builtin_ctzll(word)
                word &= word - 1
                for a in range(k):
                    for w2 in range(nwords):
                        out[a, w2] |= table[s, a, w2]
