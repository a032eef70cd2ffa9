# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of ``_kernels_py``; same signatures, same results."""

cdef enum:
    END = 0
    ANY = 1
    RUN = 2


cdef inline bint _excluded(Py_UCS4 c, str excluded):
    cdef Py_UCS4 x
    for x in excluded:
        if x == c:
            return True
    return False


cdef Py_ssize_t _match_at(str s, Py_ssize_t n, tuple parts, Py_ssize_t nparts,
                          Py_ssize_t k, Py_ssize_t pos):
    cdef int kind
    cdef str excluded
    cdef Py_ssize_t j, e, r
    if k == nparts:
        return pos
    part = <tuple>parts[k]
    kind = <int>part[0]
    if kind == END:
        if pos == n:
            return _match_at(s, n, parts, nparts, k + 1, pos)
        return -1
    if kind == ANY:
        if pos < n:
            return _match_at(s, n, parts, nparts, k + 1, pos + 1)
        return -1
    excluded = <str>part[1]
    j = pos
    while j < n and not _excluded(s[j], excluded):
        j += 1
    e = j
    while e > pos:
        r = _match_at(s, n, parts, nparts, k + 1, e)
        if r >= 0:
            return r
        e -= 1
    return -1


def regex_search(str s, tuple parts):
    cdef Py_ssize_t n = len(s)
    cdef Py_ssize_t nparts = len(parts)
    cdef Py_ssize_t start, end
    for start in range(n + 1):
        end = _match_at(s, n, parts, nparts, 0, start)
        if end >= 0:
            return start, end
    return None


def longest_common_factor(strings):
    cdef str first = strings[0]
    cdef list rest = list(strings[1:])
    cdef Py_ssize_t n = len(first)
    cdef Py_ssize_t best_len = 0, best_start = 0, i, length
    cdef bint common
    cdef str piece
    for i in range(n):
        length = best_len + 1
        while i + length <= n:
            piece = first[i:i + length]
            common = True
            for t in rest:
                if piece not in <str>t:
                    common = False
                    break
            if not common:
                break
            best_len = length
            best_start = i
            length += 1
    return first[best_start:best_start + best_len]
