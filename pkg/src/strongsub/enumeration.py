"""Isomorphism-reduced enumeration of small digraphs.

For ``n <= 5`` every labelled digraph is canonicalised at once: arcs are
numbered lexicographically, each vertex permutation becomes a set of lookup
tables over 5-bit chunks of the arc mask, and the canonical mask is the
minimum image over all permutations. Larger orders go through
:func:`degree_bounded_arc_sets`, which enumerates only arc sets meeting
per-vertex degree bounds.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Iterator

import numpy as np

from .digraph import Arc, Digraph, canonical_form

FULL_ENUMERATION_MAX_ORDER = 5
_CHUNK = 5


def arc_index(n: int) -> list[Arc]:
    return [(u, v) for u in range(n) for v in range(n) if u != v]


def digraph_from_index_mask(n: int, mask: int) -> Digraph:
    arcs = arc_index(n)
    return Digraph.from_arc_list(n, [arcs[i] for i in range(len(arcs)) if mask >> i & 1])


@lru_cache(maxsize=None)
def all_digraph_classes(n: int) -> tuple[int, ...]:
    """Canonical arc-index masks of all digraphs of order ``n``, one per class."""
    if n > FULL_ENUMERATION_MAX_ORDER:
        raise ValueError(f"full enumeration is limited to n <= {FULL_ENUMERATION_MAX_ORDER}")
    arcs = arc_index(n)
    pos = {a: i for i, a in enumerate(arcs)}
    m = len(arcs)
    masks = np.arange(1 << m, dtype=np.int64)
    chunks = [(masks >> (c * _CHUNK)) & ((1 << _CHUNK) - 1) for c in range(-(-m // _CHUNK))]
    best = masks.copy()
    for perm in itertools.permutations(range(n)):
        image = np.zeros_like(masks)
        for c, chunk in enumerate(chunks):
            table = np.zeros(1 << _CHUNK, dtype=np.int64)
            for value in range(1 << _CHUNK):
                out = 0
                for b in range(_CHUNK):
                    i = c * _CHUNK + b
                    if i < m and value >> b & 1:
                        u, v = arcs[i]
                        out |= 1 << pos[(perm[u], perm[v])]
                table[value] = out
            image |= table[chunk]
        np.minimum(best, image, out=best)
    return tuple(int(x) for x in np.unique(best))


def degree_bounded_arc_sets(
    n: int, size: int, max_deg: int, min_deg: int = 0
) -> Iterator[tuple[Arc, ...]]:
    """Arc sets of ``size`` arcs with every in/out-degree in ``[min_deg, max_deg]``."""
    arcs = arc_index(n)
    m = len(arcs)
    outd = [0] * n
    ind = [0] * n
    chosen: list[Arc] = []
    # Arcs still undecided at each vertex, per direction, to bound minimum degrees.
    rem_out = [n - 1] * n
    rem_in = [n - 1] * n

    def rec(i: int) -> Iterator[tuple[Arc, ...]]:
        if len(chosen) == size:
            if all(outd[v] >= min_deg and ind[v] >= min_deg for v in range(n)):
                yield tuple(chosen)
            return
        if m - i < size - len(chosen):
            return
        if min_deg:
            for v in range(n):
                if outd[v] + rem_out[v] < min_deg or ind[v] + rem_in[v] < min_deg:
                    return
        u, v = arcs[i]
        rem_out[u] -= 1
        rem_in[v] -= 1
        if outd[u] < max_deg and ind[v] < max_deg:
            outd[u] += 1
            ind[v] += 1
            chosen.append((u, v))
            yield from rec(i + 1)
            chosen.pop()
            outd[u] -= 1
            ind[v] -= 1
        yield from rec(i + 1)
        rem_out[u] += 1
        rem_in[v] += 1

    yield from rec(0)


def classes_with_degrees(n: int, size: int, min_deg: int) -> list[Digraph]:
    """One digraph per isomorphism class with ``size`` arcs and min in/out-degree >= ``min_deg``.

    Representatives are canonical forms. When the complement is the
    smaller side it is enumerated instead (max degree ``n - 1 - min_deg``).
    """
    total = n * (n - 1)
    if not 0 <= size <= total:
        return []
    if n <= FULL_ENUMERATION_MAX_ORDER:
        found = []
        for mask in all_digraph_classes(n):
            if mask.bit_count() != size:
                continue
            d = digraph_from_index_mask(n, mask)
            if min(d.min_degrees()) >= min_deg:
                found.append(d)
        return [Digraph.from_arc_list(n, f) for f in sorted({canonical_form(d) for d in found})]
    complete = set(arc_index(n))
    forms = set()
    if size <= total - size:
        for arcs in degree_bounded_arc_sets(n, size, n - 1, min_deg):
            forms.add(canonical_form(Digraph.from_arc_list(n, arcs)))
        return [Digraph.from_arc_list(n, f) for f in sorted(forms)]
    for removed in degree_bounded_arc_sets(n, total - size, n - 1 - min_deg):
        forms.add(canonical_form(Digraph.from_arc_list(n, removed)))
    return [Digraph.from_arc_list(n, sorted(complete - set(f))) for f in sorted(forms)]
