"""Pure-Python hot kernels. ``_kernels.pyx`` mirrors this module exactly."""

from __future__ import annotations

END = 0
ANY = 1
RUN = 2


def _match_at(s: str, parts: tuple, k: int, pos: int) -> int:
    if k == len(parts):
        return pos
    kind, excluded = parts[k]
    n = len(s)
    if kind == END:
        return _match_at(s, parts, k + 1, pos) if pos == n else -1
    if kind == ANY:
        return _match_at(s, parts, k + 1, pos + 1) if pos < n else -1
    j = pos
    while j < n and s[j] not in excluded:
        j += 1
    # greedy run, shrinking until the rest of the chain matches
    for e in range(j, pos, -1):
        r = _match_at(s, parts, k + 1, e)
        if r >= 0:
            return r
    return -1


def regex_search(s: str, parts: tuple) -> tuple[int, int] | None:
    """Leftmost match of a flattened regex chain in ``s``.

    ``parts`` is a tuple of ``(kind, excluded)`` pairs: ``END`` matches the empty
    string at the end, ``ANY`` one character, ``RUN`` a non-empty run of
    characters outside ``excluded``.
    """
    for start in range(len(s) + 1):
        end = _match_at(s, parts, 0, start)
        if end >= 0:
            return start, end
    return None


def longest_common_factor(strings) -> str:
    """Longest common substring; ties go to the earliest start in ``strings[0]``."""
    first = strings[0]
    rest = strings[1:]
    n = len(first)
    best_len = 0
    best_start = 0
    for i in range(n):
        length = best_len + 1
        while i + length <= n:
            piece = first[i:i + length]
            if all(piece in t for t in rest):
                best_len = length
                best_start = i
                length += 1
            else:
                break
    return first[best_start:best_start + best_len]
