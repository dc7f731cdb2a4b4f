"""Permutations as 0-based one-line tuples.

``p[i]`` is the image of ``i``.  Composition ``compose(s, t)`` is the function
composite ``s∘t``.  A permutation acts on input lists on the right: the
``i``-th input of ``sigma* m`` is input ``sigma[i]`` of ``m``, so
``(s∘t)* = t* ∘ s*``.
"""
from __future__ import annotations

from itertools import permutations as _itperms
from typing import Sequence

Perm = tuple


def identity(n: int) -> Perm:
    return tuple(range(n))


def is_identity(p: Sequence[int]) -> bool:
    return all(i == x for i, x in enumerate(p))


def is_permutation(p: Sequence[int]) -> bool:
    return sorted(p) == list(range(len(p)))


def compose(s: Sequence[int], t: Sequence[int]) -> Perm:
    if len(s) != len(t):
        raise ValueError(f"cannot compose permutations of sizes {len(s)} and {len(t)}")
    return tuple(s[x] for x in t)


def inverse(p: Sequence[int]) -> Perm:
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def act(items: Sequence, p: Sequence[int]) -> tuple:
    """Reorder ``items`` the way ``p*`` reorders the inputs of a morphism."""
    return tuple(items[x] for x in p)


def transposition(n: int, i: int) -> Perm:
    """Adjacent transposition swapping 1-based positions ``i`` and ``i+1``."""
    if not 1 <= i < n:
        raise ValueError(f"transposition index {i} out of range for arity {n}")
    p = list(range(n))
    p[i - 1], p[i] = p[i], p[i - 1]
    return tuple(p)


def adjacent_word(p: Sequence[int]) -> list[int]:
    """1-based transposition indices ``[i1, ..., ik]`` in application order.

    Applying ``t_{i1}*`` first, then ``t_{i2}*`` and so on yields ``p*``.
    The word comes from bubble sort, so it is fixed for each ``p``.
    """
    cur = list(p)
    swaps = []
    # right-multiplying by t_j swaps positions j, j+1; sort cur to identity
    n = len(cur)
    for end in range(n - 1, 0, -1):
        for j in range(end):
            if cur[j] > cur[j + 1]:
                cur[j], cur[j + 1] = cur[j + 1], cur[j]
                swaps.append(j + 1)
    # p ∘ t_{a1} ∘ ... ∘ t_{ak} = id, so p = t_{ak} ∘ ... ∘ t_{a1};
    # the leftmost factor of a composite acts first.
    return swaps[::-1]


def all_words(p: Sequence[int], max_len: int | None = None) -> list[list[int]]:
    """Every adjacent-transposition word for ``p`` up to ``max_len`` letters.

    Brute force; used to cross-check that the action does not depend on the
    chosen decomposition.
    """
    n = len(p)
    target = tuple(p)
    if max_len is None:
        max_len = n * (n - 1) // 2 + 2
    found = []
    frontier = [([], identity(n))]
    for _ in range(max_len + 1):
        nxt = []
        for word, q in frontier:
            if q == target:
                found.append(word)
            for i in range(1, n):
                nxt.append((word + [i], compose(q, transposition(n, i))))
        frontier = nxt
    return found


def block_permutation(sigma: Sequence[int], sizes: Sequence[int]) -> Perm:
    """Permutation moving whole blocks.

    With ``sizes[k]`` the arity of the k-th inner, this is the ``beta`` with
    ``γ(sigma* ψ; φ_{σ(1)}, ..., φ_{σ(n)}) = beta* γ(ψ; φ_1, ..., φ_n)``.
    """
    starts = []
    acc = 0
    for s in sizes:
        starts.append(acc)
        acc += s
    out = []
    for k in sigma:
        out.extend(range(starts[k], starts[k] + sizes[k]))
    return tuple(out)


def block_sum(perms: Sequence[Sequence[int]]) -> Perm:
    """Direct sum: each permutation acts inside its own block."""
    out = []
    acc = 0
    for p in perms:
        out.extend(acc + x for x in p)
        acc += len(p)
    return tuple(out)


def interchange(m: int, n: int) -> Perm:
    """The interchange permutation for ``n`` blocks of size ``m``.

    Position ``i*m + j`` (block i, slot j) goes to ``j*n + i``.  So
    ``compose(interchange(n, m), interchange(m, n))`` is the identity.
    """
    out = [0] * (m * n)
    for i in range(n):
        for j in range(m):
            out[i * m + j] = j * n + i
    return tuple(out)


def all_permutations(n: int) -> list[Perm]:
    return [tuple(p) for p in _itperms(range(n))]
