"""Linear-time exact matching (prefix function) over byte strings."""

from typing import List


def prefix_function(pattern: bytes) -> List[int]:
    pi = [0] * len(pattern)
    k = 0
    for i in range(1, len(pattern)):
        while k and pattern[i] != pattern[k]:
            k = pi[k - 1]
        if pattern[i] == pattern[k]:
            k += 1
        pi[i] = k
    return pi


def kmp_find(text: bytes, pattern: bytes) -> List[int]:
    """Every offset s with text[s:s + len(pattern)] == pattern, ascending."""
    m = len(pattern)
    if m == 0:
        raise ValueError('empty pattern')
    pi = prefix_function(pattern)
    hits: List[int] = []
    k = 0
    for i, c in enumerate(text):
        while k and c != pattern[k]:
            k = pi[k - 1]
        if c == pattern[k]:
            k += 1
        if k == m:
            hits.append(i - m + 1)
            k = pi[k - 1]
    return hits
