"""Immutable simple digraphs on vertices ``0..n-1``.

Adjacency is kept as two tuples of bitmasks (out- and in-neighbourhoods), so
neighbourhood queries and set intersections are single integer operations.
Arc sets elsewhere in the package are encoded as integers with bit ``u*n + v``
standing for the arc ``(u, v)``.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Iterator, Sequence

from .errors import (
    ArcNotFoundError,
    DuplicateArcError,
    LoopError,
    ParseError,
    VertexRangeError,
)

Arc = tuple[int, int]

MAX_ORDER = 64


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


class Digraph:
    """A simple digraph (no loops, no parallel arcs) with value semantics."""

    __slots__ = ("n", "out", "inn", "_arcs")

    def __init__(self, n: int, out: Sequence[int]):
        # Trusted constructor; use from_arc_list for validated input.
        self.n = n
        self.out = tuple(out)
        inn = [0] * n
        for u in range(n):
            for v in bits(self.out[u]):
                inn[v] |= 1 << u
        self.inn = tuple(inn)
        self._arcs: tuple[Arc, ...] | None = None

    # -- construction -----------------------------------------------------

    @classmethod
    def from_arc_list(cls, n: int, arcs: Iterable[Arc]) -> Digraph:
        if not isinstance(n, int) or n < 1:
            raise VertexRangeError(f"order must be a positive integer, got {n!r}")
        if n > MAX_ORDER:
            raise VertexRangeError(f"order {n} exceeds the supported maximum {MAX_ORDER}")
        out = [0] * n
        for arc in arcs:
            u, v = arc
            if not (0 <= u < n and 0 <= v < n):
                raise VertexRangeError(f"arc ({u}, {v}) has an endpoint outside 0..{n - 1}")
            if u == v:
                raise LoopError(f"loop at vertex {u}")
            if out[u] >> v & 1:
                raise DuplicateArcError(f"duplicate arc ({u}, {v})")
            out[u] |= 1 << v
        return cls(n, out)

    @classmethod
    def from_arc_mask(cls, n: int, mask: int) -> Digraph:
        full = (1 << n) - 1
        out = [(mask >> (u * n)) & full for u in range(n)]
        for u in range(n):
            if out[u] >> u & 1:
                raise LoopError(f"loop at vertex {u}")
        return cls(n, out)

    # -- basic queries ----------------------------------------------------

    @property
    def arcs(self) -> tuple[Arc, ...]:
        """Arcs in lexicographic order."""
        if self._arcs is None:
            self._arcs = tuple((u, v) for u in range(self.n) for v in bits(self.out[u]))
        return self._arcs

    @property
    def arc_mask(self) -> int:
        n = self.n
        m = 0
        for u in range(n):
            m |= self.out[u] << (u * n)
        return m

    @property
    def size(self) -> int:
        return sum(o.bit_count() for o in self.out)

    def has_arc(self, u: int, v: int) -> bool:
        return bool(self.out[u] >> v & 1)

    def out_degree(self, v: int) -> int:
        return self.out[v].bit_count()

    def in_degree(self, v: int) -> int:
        return self.inn[v].bit_count()

    def min_degrees(self) -> tuple[int, int]:
        """Return ``(min out-degree, min in-degree)``."""
        return (
            min(o.bit_count() for o in self.out),
            min(i.bit_count() for i in self.inn),
        )

    def is_symmetric(self) -> bool:
        return self.out == self.inn

    def is_complete(self) -> bool:
        full = (1 << self.n) - 1
        return all(self.out[u] == full ^ (1 << u) for u in range(self.n))

    def underlying_graph(self) -> frozenset[tuple[int, int]]:
        """Undirected edges ``(u, v)`` with ``u < v`` joined by an arc either way."""
        return frozenset(
            (u, v)
            for u in range(self.n)
            for v in bits((self.out[u] | self.inn[u]) >> (u + 1) << (u + 1))
        )

    # -- editing (always returns a new value) -----------------------------

    def delete_arcs(self, arcs: Iterable[Arc]) -> Digraph:
        out = list(self.out)
        for u, v in arcs:
            if not (0 <= u < self.n and 0 <= v < self.n) or not out[u] >> v & 1:
                raise ArcNotFoundError(f"arc ({u}, {v}) is not in the digraph")
            out[u] &= ~(1 << v)
        return Digraph(self.n, out)

    def add_arcs(self, arcs: Iterable[Arc]) -> Digraph:
        return Digraph.from_arc_list(self.n, itertools.chain(self.arcs, arcs))

    def delete_vertices(self, vertices: Iterable[int]) -> Digraph:
        """Remove the arcs at ``vertices`` but keep the labels (they become isolated)."""
        drop = mask_of(vertices)
        keep = ~drop
        return Digraph(self.n, [0 if drop >> u & 1 else o & keep for u, o in enumerate(self.out)])

    def induced_subgraph(self, vertices: Iterable[int]) -> tuple[Digraph, dict[int, int]]:
        """Subdigraph induced by ``vertices``, relabelled to ``0..|W|-1``.

        Returns the digraph and the map from old to new labels.
        """
        members = sorted(set(vertices))
        if not members:
            raise VertexRangeError("induced subgraph needs at least one vertex")
        for v in members:
            if not 0 <= v < self.n:
                raise VertexRangeError(f"vertex {v} is not in 0..{self.n - 1}")
        relabel = {v: i for i, v in enumerate(members)}
        arcs = [(relabel[u], relabel[v]) for u, v in self.arcs if u in relabel and v in relabel]
        return Digraph.from_arc_list(len(members), arcs), relabel

    def arc_induced_subgraph(self, arcs: Iterable[Arc]) -> tuple[Digraph, dict[int, int]]:
        """The arcs themselves plus their endpoints, relabelled to ``0..m-1``."""
        arcs = sorted(set(arcs))
        for u, v in arcs:
            if not self.has_arc(u, v):
                raise ArcNotFoundError(f"arc ({u}, {v}) is not in the digraph")
        members = sorted({x for a in arcs for x in a})
        relabel = {v: i for i, v in enumerate(members)}
        if not members:
            raise VertexRangeError("arc-induced subgraph of an empty arc set")
        return (
            Digraph.from_arc_list(len(members), [(relabel[u], relabel[v]) for u, v in arcs]),
            relabel,
        )

    def relabel(self, perm: Sequence[int]) -> Digraph:
        """Apply the vertex bijection ``v -> perm[v]``."""
        out = [0] * self.n
        for u, v in self.arcs:
            out[perm[u]] |= 1 << perm[v]
        return Digraph(self.n, out)

    # -- dunder -----------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Digraph):
            return NotImplemented
        return self.n == other.n and self.out == other.out

    def __hash__(self) -> int:
        return hash((self.n, self.out))

    def __repr__(self) -> str:
        return f"Digraph(n={self.n}, arcs={list(self.arcs)})"

    # -- serialisation ----------------------------------------------------

    def to_dg(self) -> str:
        lines = [str(self.n)]
        lines.extend(f"{u} {v}" for u, v in self.arcs)
        return "\n".join(lines) + "\n"

    def to_dot(self, name: str = "D") -> str:
        lines = [f"digraph {name} {{"]
        lines.extend(f"  {v};" for v in range(self.n))
        lines.extend(f"  {u} -> {v};" for u, v in self.arcs)
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {"n": self.n, "arcs": [list(a) for a in self.arcs]}

    @classmethod
    def from_json(cls, data: dict) -> Digraph:
        try:
            n = int(data["n"])
            arcs = [(int(a[0]), int(a[1])) for a in data["arcs"]]
        except (KeyError, IndexError, TypeError, ValueError) as exc:
            raise ParseError(f"malformed digraph JSON: {exc}") from exc
        return cls.from_arc_list(n, arcs)


def parse_dg(text: str) -> Digraph:
    """Parse the ``.dg`` text format: order on the first line, then one arc per line."""
    n = None
    arcs = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        try:
            values = [int(f) for f in fields]
        except ValueError:
            raise ParseError(f"line {lineno}: expected integers, got {line!r}") from None
        if n is None:
            if len(values) != 1:
                raise ParseError(f"line {lineno}: expected the vertex count")
            n = values[0]
        else:
            if len(values) != 2:
                raise ParseError(f"line {lineno}: expected 'u v', got {line!r}")
            arcs.append((values[0], values[1]))
    if n is None:
        raise ParseError("empty digraph file")
    return Digraph.from_arc_list(n, arcs)


def from_arc_list(n: int, arcs: Iterable[Arc]) -> Digraph:
    return Digraph.from_arc_list(n, arcs)


def delete_arcs(d: Digraph, arcs: Iterable[Arc]) -> Digraph:
    return d.delete_arcs(arcs)


def biorientation(n: int, edges: Iterable[tuple[int, int]]) -> Digraph:
    """Replace every undirected edge ``{u, v}`` by the arcs ``(u, v)`` and ``(v, u)``."""
    arcs = []
    for u, v in edges:
        arcs.append((u, v))
        arcs.append((v, u))
    return Digraph.from_arc_list(n, arcs)


def min_degrees(d: Digraph) -> tuple[int, int]:
    return d.min_degrees()


def underlying_graph(d: Digraph) -> frozenset[tuple[int, int]]:
    return d.underlying_graph()


# -- isomorphism ----------------------------------------------------------


def _vertex_invariants(d: Digraph) -> list[tuple]:
    """Colour refinement on (out-degree, in-degree, symmetric-degree)."""
    n = d.n
    colour = [(d.out_degree(v), d.in_degree(v), (d.out[v] & d.inn[v]).bit_count()) for v in range(n)]
    for _ in range(n):
        signature = [
            (
                colour[v],
                tuple(sorted(colour[w] for w in bits(d.out[v]))),
                tuple(sorted(colour[w] for w in bits(d.inn[v]))),
            )
            for v in range(n)
        ]
        ranks = {s: i for i, s in enumerate(sorted(set(signature)))}
        refined = [(ranks[s],) for s in signature]
        if len(set(refined)) == len(set(colour)):
            colour = refined
            break
        colour = refined
    return colour


def is_isomorphic(d1: Digraph, d2: Digraph) -> list[int] | None:
    """Return a bijection ``p`` with ``d1.relabel(p) == d2``, or ``None``.

    Backtracking over vertex images, pruned by degree pairs and by arc
    consistency with the vertices already mapped. Intended for small orders.
    """
    n = d1.n
    if d2.n != n or d1.size != d2.size:
        return None
    deg1 = [(d1.out_degree(v), d1.in_degree(v)) for v in range(n)]
    deg2 = [(d2.out_degree(v), d2.in_degree(v)) for v in range(n)]
    if sorted(deg1) != sorted(deg2):
        return None
    order = sorted(range(n), key=lambda v: (sum(deg1[x] == deg1[v] for x in range(n)), v))
    image = [-1] * n
    used = 0

    def extend(i: int) -> bool:
        nonlocal used
        if i == n:
            return True
        u = order[i]
        for w in range(n):
            if used >> w & 1 or deg2[w] != deg1[u]:
                continue
            ok = True
            for j in range(i):
                x = order[j]
                y = image[x]
                if d1.has_arc(u, x) != d2.has_arc(w, y) or d1.has_arc(x, u) != d2.has_arc(y, w):
                    ok = False
                    break
            if ok:
                image[u] = w
                used |= 1 << w
                if extend(i + 1):
                    return True
                used &= ~(1 << w)
        image[u] = -1
        return False

    return list(image) if extend(0) else None


def canonical_form(d: Digraph) -> tuple[Arc, ...]:
    """Lexicographically least relabelled arc tuple over invariant-respecting orderings.

    Vertices are first grouped by refined colour; only permutations that
    respect the colour order are tried, so the result is an isomorphism
    invariant and equal forms mean isomorphic digraphs.
    """
    n = d.n
    colour = _vertex_invariants(d)
    cells: dict[tuple, list[int]] = {}
    for v in range(n):
        cells.setdefault(colour[v], []).append(v)
    cell_list = [cells[c] for c in sorted(cells)]
    best = None
    for choice in itertools.product(*(itertools.permutations(c) for c in cell_list)):
        perm = [0] * n
        pos = 0
        for block in choice:
            for v in block:
                perm[v] = pos
                pos += 1
        form = tuple(sorted((perm[u], perm[v]) for u, v in d.arcs))
        if best is None or form < best:
            best = form
    return best if best is not None else ()


def canonical_digraph(d: Digraph) -> Digraph:
    return Digraph.from_arc_list(d.n, canonical_form(d))
