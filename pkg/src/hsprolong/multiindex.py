"""Multi-indices for n commuting derivation families.

A multi-index is a plain tuple of naturals of length n.  The canonical order
everywhere (enumeration, elimination, rendering) is graded lexicographic:
ascending total size, and within one size descending tuple order, so for
n = 2 the order starts (0,0), (1,0), (0,1), (2,0), (1,1), (0,2).
"""

from __future__ import annotations

import itertools
from typing import Iterator, Sequence

MultiIndex = tuple[int, ...]


def zero_index(n: int) -> tuple[int, ...]:
    return (0,) * n


def unit_index(n: int, i: int) -> tuple[int, ...]:
    e = [0] * n
    e[i] = 1
    return tuple(e)


def index_size(alpha: Sequence[int]) -> int:
    return sum(alpha)


def index_add(alpha: Sequence[int], beta: Sequence[int]) -> tuple[int, ...]:
    if len(alpha) != len(beta):
        raise ValueError("multi-index length mismatch")
    return tuple(a + b for a, b in zip(alpha, beta))


def index_sub(alpha: Sequence[int], beta: Sequence[int]) -> tuple[int, ...]:
    out = tuple(a - b for a, b in zip(alpha, beta))
    if any(e < 0 for e in out):
        raise ValueError("multi-index subtraction went negative")
    return out


def index_leq(alpha: Sequence[int], beta: Sequence[int]) -> bool:
    """Coordinatewise partial order (not the size comparison)."""
    return len(alpha) == len(beta) and all(a <= b for a, b in zip(alpha, beta))


def graded_lex_key(alpha: Sequence[int]) -> tuple:
    """Sort key realizing the canonical graded-lex order."""
    return (sum(alpha), tuple(-e for e in alpha))


def _compositions(n: int, s: int) -> Iterator[tuple[int, ...]]:
    if n == 0:
        if s == 0:
            yield ()
        return
    if n == 1:
        yield (s,)
        return
    for head in range(s, -1, -1):
        for rest in _compositions(n - 1, s - head):
            yield (head,) + rest


def enumerate_multiindices(n: int, m: int) -> list[tuple[int, ...]]:
    """All multi-indices of length n and size <= m in graded-lex order.

    The result has length C(n+m, n).
    """
    if n < 0 or m < 0:
        raise ValueError("n and m must be naturals")
    out: list[tuple[int, ...]] = []
    for s in range(m + 1):
        out.extend(_compositions(n, s))
        if n == 0:
            break
    return out


def indices_below(alpha: Sequence[int]) -> list[tuple[int, ...]]:
    """All beta <= alpha in the coordinatewise order, deterministic order."""
    return [tuple(b) for b in itertools.product(*(range(a + 1) for a in alpha))]


def splittings(alpha: Sequence[int]) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """All ordered pairs (beta, gamma) with beta + gamma = alpha (Leibniz sums)."""
    alpha = tuple(alpha)
    return [(beta, index_sub(alpha, beta)) for beta in indices_below(alpha)]
