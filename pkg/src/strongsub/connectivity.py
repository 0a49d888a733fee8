"""Strong components, strong connectivity and minimal strong spanning subgraphs."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .digraph import Digraph, bits, mask_of
from .errors import NotStrongError, VertexRangeError


def forward_reach(out: Sequence[int], source: int, allowed: int) -> int:
    """Vertices of ``allowed`` reachable from ``source`` using only ``allowed`` vertices."""
    seen = 1 << source
    frontier = seen
    while frontier:
        nxt = 0
        for v in bits(frontier):
            nxt |= out[v]
        nxt &= allowed & ~seen
        seen |= nxt
        frontier = nxt
    return seen


def is_strong_on(out: Sequence[int], inn: Sequence[int], vertices: int) -> bool:
    """True when the subdigraph induced by the vertex mask ``vertices`` is strong."""
    if not vertices:
        return False
    root = (vertices & -vertices).bit_length() - 1
    return (
        forward_reach(out, root, vertices) == vertices
        and forward_reach(inn, root, vertices) == vertices
    )


def strong_components(d: Digraph) -> list[list[int]]:
    """Strong components in topological order of the condensation.

    Iterative Tarjan; each component is returned as a sorted vertex list.
    """
    n = d.n
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    found: list[list[int]] = []
    counter = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, iter(bits(d.out[root])))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, iter(bits(d.out[w]))))
                    advanced = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                found.append(sorted(comp))
    # Tarjan emits sink components first.
    found.reverse()
    return found


def is_strong(d: Digraph) -> bool:
    return is_strong_on(d.out, d.inn, (1 << d.n) - 1)


def has_path(d: Digraph, x: int, y: int, avoid: int = 0) -> bool:
    allowed = ((1 << d.n) - 1) & ~avoid | (1 << x) | (1 << y)
    return bool(forward_reach(d.out, x, allowed) >> y & 1)


def _max_disjoint_paths(d: Digraph, x: int, y: int) -> tuple[int, int]:
    """Max internally disjoint x->y paths and the source side of a min cut.

    Unit-capacity flow on the split digraph: vertex ``v`` becomes ``v_in = 2v``
    and ``v_out = 2v+1`` joined by a capacity-one arc (infinite for x and y).
    Returns ``(value, source_side)`` where ``source_side`` is the set of split
    nodes reachable from ``x_out`` in the final residual network.
    """
    n = d.n
    big = n + 1
    cap: dict[tuple[int, int], int] = {}
    adj: list[list[int]] = [[] for _ in range(2 * n)]

    def add(a: int, b: int, c: int) -> None:
        if (a, b) not in cap:
            adj[a].append(b)
            adj[b].append(a)
            cap[(a, b)] = 0
            cap.setdefault((b, a), 0)
        cap[(a, b)] += c

    for v in range(n):
        add(2 * v, 2 * v + 1, big if v in (x, y) else 1)
    for u, v in d.arcs:
        add(2 * u + 1, 2 * v, big)
    source, sink = 2 * x + 1, 2 * y
    flow = 0
    while True:
        parent = {source: -1}
        queue = deque([source])
        while queue and sink not in parent:
            a = queue.popleft()
            for b in adj[a]:
                if b not in parent and cap[(a, b)] > 0:
                    parent[b] = a
                    queue.append(b)
        if sink not in parent:
            return flow, set(parent)
        b = sink
        while parent[b] != -1:
            a = parent[b]
            cap[(a, b)] -= 1
            cap[(b, a)] += 1
            b = a
        flow += 1
        if flow >= big:
            return flow, set(parent)


def local_vertex_connectivity(d: Digraph, x: int, y: int) -> int:
    """Maximum number of internally disjoint directed x->y paths."""
    if x == y:
        raise VertexRangeError("local connectivity needs two distinct vertices")
    for v in (x, y):
        if not 0 <= v < d.n:
            raise VertexRangeError(f"vertex {v} is not in 0..{d.n - 1}")
    return _max_disjoint_paths(d, x, y)[0]


@dataclass(frozen=True)
class CutCertificate:
    kind: str  # "vertex-cut" or "complete"
    cut: tuple[int, ...]
    separated_pair: tuple[int, int] | None = None

    def verify(self, d: Digraph) -> bool:
        if self.kind == "complete":
            return d.is_complete()
        u, v = self.separated_pair
        return u not in self.cut and v not in self.cut and not has_path(d, u, v, mask_of(self.cut))

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "cut": list(self.cut),
            "separated_pair": list(self.separated_pair) if self.separated_pair else None,
        }


def vertex_connectivity(d: Digraph) -> tuple[int, CutCertificate]:
    """Strong connectivity with a minimum separating vertex set.

    The minimum of Menger values over ordered pairs ``(x, y)`` with no arc
    ``x -> y``; ties are broken by the lexicographically least pair.
    ``K_n`` in both directions gets ``n - 1`` by convention.
    """
    n = d.n
    if d.is_complete():
        return n - 1, CutCertificate("complete", ())
    best = None
    for x in range(n):
        for y in range(n):
            if x == y or d.has_arc(x, y):
                continue
            value, side = _max_disjoint_paths(d, x, y)
            if best is None or value < best[0]:
                best = (value, x, y, side)
                if value == 0:
                    break
        if best is not None and best[0] == 0:
            break
    value, x, y, side = best
    cut = tuple(v for v in range(n) if 2 * v in side and 2 * v + 1 not in side)
    return value, CutCertificate("vertex-cut", cut, (x, y))


def is_minimally_strong(d: Digraph) -> bool:
    if not is_strong(d):
        return False
    for u, v in d.arcs:
        if has_path(d.delete_arcs([(u, v)]), u, v):
            return False
    return True


def minimal_strong_spanning_subgraph(d: Digraph) -> Digraph:
    """Greedy lexicographic arc removal while the digraph stays strong.

    A single pass suffices: an arc kept because its removal broke strongness
    stays necessary in every later, smaller subgraph.
    """
    if not is_strong(d):
        raise NotStrongError("digraph is not strong")
    current = d
    for u, v in d.arcs:
        trial = current.delete_arcs([(u, v)])
        if has_path(trial, u, v):
            current = trial
    return current
