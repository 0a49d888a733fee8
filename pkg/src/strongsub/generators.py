"""Digraph families used throughout the package, and Hamiltonian decompositions."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import lru_cache

from .connectivity import is_strong
from .digraph import Arc, Digraph, biorientation
from .errors import StrongSubError, UnsupportedFamilyError, VertexRangeError
from .packing import Packing, Subgraph, verify_packing

HAM_DECOMPOSITION_CAP = 8
RANDOM_STRONG_ATTEMPTS = 10_000


def complete_digraph(n: int) -> Digraph:
    return Digraph.from_arc_list(n, [(u, v) for u in range(n) for v in range(n) if u != v])


def directed_cycle(n: int) -> Digraph:
    if n < 2:
        raise VertexRangeError("a directed cycle needs at least two vertices")
    return Digraph.from_arc_list(n, [(i, (i + 1) % n) for i in range(n)])


def complete_minus_3cycle(n: int) -> Digraph:
    """Complete digraph without the arcs 0->1, 1->2, 2->0."""
    if n < 4:
        raise VertexRangeError("complete_minus_3cycle needs n >= 4")
    return complete_digraph(n).delete_arcs([(0, 1), (1, 2), (2, 0)])


def two_cycle_matching(n: int) -> list[Arc]:
    return [a for i in range(n // 2) for a in ((2 * i, 2 * i + 1), (2 * i + 1, 2 * i))]


def complete_minus_2cycle_matching(n: int) -> Digraph:
    """Complete digraph without the 2-cycles on {0,1}, {2,3}, ..."""
    if n < 4:
        raise VertexRangeError("complete_minus_2cycle_matching needs n >= 4")
    return complete_digraph(n).delete_arcs(two_cycle_matching(n))


def symmetric_join(k: int, n: int) -> Digraph:
    """Both orientations of K_k joined to an independent set of n - k vertices.

    Vertices ``0..k-1`` form the clique, ``k..n-1`` the independent side.
    """
    if k < 2:
        raise VertexRangeError("symmetric_join needs k >= 2")
    if n < 3 * k:
        raise VertexRangeError(f"symmetric_join needs n >= 3k, got k={k}, n={n}")
    edges = [(i, j) for i in range(k) for j in range(i + 1, k)]
    edges += [(i, j) for i in range(k) for j in range(k, n)]
    return biorientation(n, edges)


def join_witness_packing(k: int, n: int, S) -> Packing:
    """``k`` internally disjoint bioriented trees containing ``S`` in ``symmetric_join(k, n)``.

    ``S`` is first brought to normal form: its clique vertices become
    ``w_1..w_{k-s}`` and its independent vertices ``u_1..u_s``. Then for
    ``i <= k-s`` part ``i`` joins ``w_i`` to every ``u_j`` in S and the spare
    vertex ``u_{k+i}`` to every ``w`` in S; for ``j > k-s`` part ``j`` is the
    star at ``w_j`` over all of S.
    """
    S = tuple(sorted(set(S)))
    if len(S) != k:
        raise VertexRangeError(f"S must have exactly k={k} vertices")
    d = symmetric_join(k, n)
    for v in S:
        if not 0 <= v < n:
            raise VertexRangeError(f"vertex {v} is not in 0..{n - 1}")
    clique = range(k)
    spare = range(k, n)
    in_s = set(S)
    w = [v for v in clique if v in in_s] + [v for v in clique if v not in in_s]
    u = [v for v in spare if v in in_s] + [v for v in spare if v not in in_s]
    s = sum(1 for v in S if v >= k)

    def W(i: int) -> int:  # 1-based, as in the construction
        return w[i - 1]

    def U(j: int) -> int:
        return u[j - 1]

    parts = []
    for i in range(1, k - s + 1):
        edges = [(W(i), U(j)) for j in range(1, s + 1)]
        edges += [(U(k + i), W(j)) for j in range(1, k - s + 1)]
        parts.append(_bioriented_part(edges))
    for j in range(k - s + 1, k + 1):
        edges = [(W(j), U(t)) for t in range(1, s + 1)]
        edges += [(W(j), W(t)) for t in range(1, k - s + 1)]
        parts.append(_bioriented_part(edges))
    packing = Packing(S, tuple(parts)).canonical()
    check = verify_packing(d, packing)
    if not check:
        raise AssertionError(f"join witness failed verification: {check.reason}")
    return packing


def _bioriented_part(edges) -> Subgraph:
    arcs = set()
    for a, b in edges:
        arcs.add((a, b))
        arcs.add((b, a))
    return Subgraph.of({x for e in edges for x in e}, arcs)


# -- Hamiltonian decompositions ------------------------------------------------


@dataclass(frozen=True)
class HamDecomposition:
    n: int
    cycles: tuple[tuple[int, ...], ...]  # vertex sequences, each starting at 0

    def cycle_arcs(self) -> list[list[Arc]]:
        return [[(c[i], c[(i + 1) % len(c)]) for i in range(len(c))] for c in self.cycles]

    def verify(self) -> bool:
        n = self.n
        if len(self.cycles) != n - 1:
            return False
        seen: set[Arc] = set()
        for cyc in self.cycles:
            if sorted(cyc) != list(range(n)):
                return False
            for a in ((cyc[i], cyc[(i + 1) % n]) for i in range(n)):
                if a in seen:
                    return False
                seen.add(a)
        return seen == set(complete_digraph(n).arcs)

    def to_json(self) -> dict:
        return {"n": self.n, "cycles": [list(c) for c in self.cycles]}


def _exact_cover(columns: dict, rows: dict, partial: list):
    """Algorithm X over dict-of-sets; yields the first exact cover found."""
    if not columns:
        yield list(partial)
        return
    col = min(columns, key=lambda c: (len(columns[c]), c))
    for r in sorted(columns[col]):
        partial.append(r)
        removed = _select(columns, rows, r)
        yield from _exact_cover(columns, rows, partial)
        _deselect(columns, rows, r, removed)
        partial.pop()


def _select(columns, rows, r):
    removed = []
    for j in rows[r]:
        for i in columns[j]:
            for k in rows[i]:
                if k != j:
                    columns[k].discard(i)
        removed.append(columns.pop(j))
    return removed


def _deselect(columns, rows, r, removed):
    for j in reversed(rows[r]):
        columns[j] = removed.pop()
        for i in columns[j]:
            for k in rows[i]:
                if k != j:
                    columns[k].add(i)


@lru_cache(maxsize=None)
def hamiltonian_decomposition(n: int, cap: int = HAM_DECOMPOSITION_CAP) -> HamDecomposition | None:
    """Split the arcs of the complete digraph on n vertices into n - 1 Hamiltonian cycles.

    Exact cover over all Hamiltonian cycles (written from vertex 0). Any
    decomposition can be relabelled so that it contains 0 -> 1 -> ... -> n-1
    -> 0, so that cycle is fixed first; ``None`` is then a proof by
    exhaustion that no decomposition exists.
    """
    if n < 2:
        raise VertexRangeError("n must be at least 2")
    if n > cap:
        raise StrongSubError(f"n={n} exceeds the decomposition cap {cap}")
    if n == 2:
        return HamDecomposition(2, ((0, 1),))
    cycles = [(0,) + p for p in itertools.permutations(range(1, n))]
    rows = {
        idx: [(c[i], c[(i + 1) % n]) for i in range(n)] for idx, c in enumerate(cycles)
    }
    columns: dict[Arc, set[int]] = {a: set() for a in complete_digraph(n).arcs}
    for idx, arcs in rows.items():
        for a in arcs:
            columns[a].add(idx)
    first = cycles.index(tuple(range(n)))
    _select(columns, rows, first)
    for cover in _exact_cover(columns, rows, [first]):
        dec = HamDecomposition(n, tuple(cycles[i] for i in sorted(cover)))
        assert dec.verify()
        return dec
    return None


def union_of_ham_cycles(n: int, ell: int) -> Digraph:
    """The spanning digraph formed by the first ``ell`` cycles of a decomposition."""
    if n in (4, 6):
        raise UnsupportedFamilyError(f"no Hamiltonian decomposition exists for n={n}")
    if not 1 <= ell <= n - 1:
        raise VertexRangeError(f"ell must be in 1..{n - 1}")
    dec = hamiltonian_decomposition(n)
    arcs = [a for cyc in dec.cycle_arcs()[:ell] for a in cyc]
    return Digraph.from_arc_list(n, arcs)


# -- trees and random digraphs -----------------------------------------------


def symmetric_tree(n: int, shape: str = "path", seed: int | None = None) -> Digraph:
    """Biorientation of a path, a star, or a uniformly random labelled tree."""
    if n < 2:
        raise VertexRangeError("a tree here needs at least two vertices")
    if shape == "path":
        edges = [(i, i + 1) for i in range(n - 1)]
    elif shape == "star":
        edges = [(0, i) for i in range(1, n)]
    elif shape == "random":
        edges = _prufer_tree(n, random.Random(seed))
    else:
        raise UnsupportedFamilyError(f"unknown tree shape {shape!r}")
    return biorientation(n, edges)


def _prufer_tree(n: int, rng: random.Random) -> list[tuple[int, int]]:
    if n == 2:
        return [(0, 1)]
    seq = [rng.randrange(n) for _ in range(n - 2)]
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    edges = []
    for x in seq:
        leaf = min(v for v in range(n) if degree[v] == 1)
        edges.append((min(leaf, x), max(leaf, x)))
        degree[leaf] -= 1
        degree[x] -= 1
    a, b = [v for v in range(n) if degree[v] == 1]
    edges.append((a, b))
    return edges


def random_digraph(n: int, p: float, rng: random.Random) -> Digraph:
    arcs = [(u, v) for u in range(n) for v in range(n) if u != v and rng.random() < p]
    return Digraph.from_arc_list(n, arcs)


def random_strong_digraph(
    n: int, p: float, seed: int | None = None, attempts: int = RANDOM_STRONG_ATTEMPTS
) -> Digraph:
    """Sample ``G(n, p)`` digraphs until one is strong."""
    if n < 2:
        raise VertexRangeError("n must be at least 2")
    if not 0 < p <= 1:
        raise ValueError("arc probability must lie in (0, 1]")
    rng = random.Random(seed)
    for _ in range(attempts):
        d = random_digraph(n, p, rng)
        if is_strong(d):
            return d
    raise StrongSubError(f"no strong digraph after {attempts} samples (n={n}, p={p})")


# -- family registry (CLI) ------------------------------------------------------

FAMILIES = (
    "complete",
    "cycle",
    "complete-minus-3cycle",
    "complete-minus-2cycle-matching",
    "symmetric-join",
    "union-ham-cycles",
    "symmetric-tree",
    "random-strong",
)


@dataclass(frozen=True)
class FamilySpec:
    family: str
    n: int
    k: int | None = None
    ell: int | None = None
    seed: int | None = None
    shape: str = "path"
    p: float = 0.5

    def build(self) -> Digraph:
        f = self.family
        if f == "complete":
            return complete_digraph(self.n)
        if f == "cycle":
            return directed_cycle(self.n)
        if f == "complete-minus-3cycle":
            return complete_minus_3cycle(self.n)
        if f == "complete-minus-2cycle-matching":
            return complete_minus_2cycle_matching(self.n)
        if f == "symmetric-join":
            return symmetric_join(self._need("k"), self.n)
        if f == "union-ham-cycles":
            return union_of_ham_cycles(self.n, self._need("ell"))
        if f == "symmetric-tree":
            return symmetric_tree(self.n, self.shape, self.seed)
        if f == "random-strong":
            return random_strong_digraph(self.n, self.p, self.seed)
        raise UnsupportedFamilyError(f"unknown family {f!r}; choose from {', '.join(FAMILIES)}")

    def _need(self, name: str) -> int:
        value = getattr(self, name)
        if value is None:
            raise UnsupportedFamilyError(f"family {self.family!r} needs --{name}")
        return value
