"""Exact computation of kappa_S(D) and kappa_k(D) with witness packings.

A packing for a vertex set ``S`` is a family of strong subgraphs, each
containing ``S``, that pairwise share exactly the vertices of ``S`` and no
arcs. Two exact decision procedures are provided:

``assign``
    Branch over the *resources* a packing distributes: every vertex outside
    ``S`` goes to one part or to none, every arc with both ends in ``S`` goes
    to one part. Given that choice a part may as well take every arc of ``D``
    among its vertices, since extra arcs on a fixed vertex set never break
    strongness. Parts are interchangeable, so a resource may only open the
    first still-empty part.

``candidates``
    Enumerate every inclusion-minimal strong subgraph containing ``S`` and
    search for pairwise compatible ones. Shrinking a part of a packing to a
    minimal one keeps all disjointness conditions, so nothing is lost.

Both are cross-checked against :func:`kappa_S_bruteforce`, which filters
every arc subset and assumes nothing about minimality.
"""

from __future__ import annotations

import itertools
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

from .connectivity import forward_reach, is_strong_on, strong_components
from .digraph import Arc, Digraph, bits, mask_of
from .errors import SearchLimitError, VertexRangeError

DEFAULT_CANDIDATE_CAP = 200_000
BRUTEFORCE_MAX_ORDER = 5
BRUTEFORCE_MAX_ARCS = 16


@dataclass(frozen=True)
class Subgraph:
    vertices: tuple[int, ...]
    arcs: tuple[Arc, ...]

    @classmethod
    def of(cls, vertices: Iterable[int], arcs: Iterable[Arc]) -> Subgraph:
        return cls(tuple(sorted(set(vertices))), tuple(sorted(set(arcs))))

    def sort_key(self):
        return (len(self.vertices), self.vertices, self.arcs)

    def to_json(self) -> dict:
        return {"vertices": list(self.vertices), "arcs": [list(a) for a in self.arcs]}


@dataclass(frozen=True)
class Packing:
    S: tuple[int, ...]
    parts: tuple[Subgraph, ...]

    def __len__(self) -> int:
        return len(self.parts)

    def canonical(self) -> Packing:
        return Packing(self.S, tuple(sorted(self.parts, key=Subgraph.sort_key)))


@dataclass(frozen=True)
class KappaResult:
    value: int
    argmin_set: tuple[int, ...]
    witness: Packing
    refuted_level: int

    def to_json(self) -> dict:
        return {
            "value": self.value,
            "argmin_set": list(self.argmin_set),
            "witness": [p.to_json() for p in self.witness.parts],
            "refuted_level": self.refuted_level,
        }


@dataclass
class SearchLimits:
    """Budget for one top-level computation; ``None`` means unlimited."""

    node_limit: int | None = None
    timeout_ms: int | None = None
    candidate_cap: int = DEFAULT_CANDIDATE_CAP
    _deadline: float | None = field(default=None, repr=False)
    _nodes: int = field(default=0, repr=False)
    _started: bool = field(default=False, repr=False)

    def start(self) -> SearchLimits:
        """A running copy of this budget; already running budgets are returned as is."""
        if self._started:
            return self
        fresh = SearchLimits(self.node_limit, self.timeout_ms, self.candidate_cap)
        fresh._started = True
        if self.timeout_ms is not None:
            fresh._deadline = time.monotonic() + self.timeout_ms / 1000
        return fresh

    def tick(self) -> None:
        self._nodes += 1
        if self.node_limit is not None and self._nodes > self.node_limit:
            raise SearchLimitError(f"node limit {self.node_limit} reached")
        if self._deadline is not None and not self._nodes & 255 and time.monotonic() > self._deadline:
            raise SearchLimitError(f"timeout of {self.timeout_ms} ms reached")


class PackingCheck(NamedTuple):
    ok: bool
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.ok


# -- helpers ---------------------------------------------------------------


def _as_vertex_set(d: Digraph, S: Iterable[int]) -> tuple[int, ...]:
    members = tuple(sorted(set(S)))
    if len(members) < 2:
        raise VertexRangeError("S must contain at least two vertices")
    for v in members:
        if not 0 <= v < d.n:
            raise VertexRangeError(f"vertex {v} is not in 0..{d.n - 1}")
    return members


def _subgraph_is_strong(vertices: Sequence[int], arcs: Iterable[Arc], n: int) -> bool:
    out = [0] * n
    inn = [0] * n
    for u, v in arcs:
        out[u] |= 1 << v
        inn[v] |= 1 << u
    return is_strong_on(out, inn, mask_of(vertices))


def degree_upper_bound(d: Digraph, S: Iterable[int]) -> int:
    """``min over s in S of min(d+(s), d-(s))``: each part needs its own arc at every s."""
    return min(min(d.out_degree(s), d.in_degree(s)) for s in S)


def _strong_component_of(d: Digraph, smask: int) -> int:
    """Vertex mask of the strong component containing all of S, or 0."""
    for comp in strong_components(d):
        cm = mask_of(comp)
        if smask & cm:
            return cm if smask & cm == smask else 0
    return 0


def minimize_part(n: int, smask: int, vertices: int, arcs: Sequence[Arc]) -> Subgraph:
    """Shrink a strong part containing S to an inclusion-minimal one.

    Outside vertices are dropped first (lowest label first), then arcs in
    lexicographic order, so the result is deterministic.
    """
    arcs = sorted(arcs)

    def strong(vmask: int, arc_list: Sequence[Arc]) -> bool:
        out = [0] * n
        inn = [0] * n
        for u, v in arc_list:
            if vmask >> u & 1 and vmask >> v & 1:
                out[u] |= 1 << v
                inn[v] |= 1 << u
        return is_strong_on(out, inn, vmask)

    for x in bits(vertices & ~smask):
        trial = vertices & ~(1 << x)
        if strong(trial, arcs):
            vertices = trial
    arcs = [a for a in arcs if vertices >> a[0] & 1 and vertices >> a[1] & 1]
    i = 0
    while i < len(arcs):
        trial = arcs[:i] + arcs[i + 1 :]
        touched = smask
        for u, v in trial:
            touched |= (1 << u) | (1 << v)
        if strong(touched, trial):
            arcs = trial
            vertices = touched
        else:
            i += 1
    return Subgraph.of(bits(vertices), arcs)


# -- verification ------------------------------------------------------------


def verify_packing(d: Digraph, packing: Packing) -> PackingCheck:
    """Check every packing condition; report the first violation found."""
    S = set(packing.S)
    if len(S) != len(packing.S) or len(S) < 2:
        return PackingCheck(False, "S must be a set of at least two vertices")
    for i, part in enumerate(packing.parts):
        verts = set(part.vertices)
        if not S <= verts:
            return PackingCheck(False, f"part {i} does not contain S")
        for v in verts:
            if not 0 <= v < d.n:
                return PackingCheck(False, f"part {i} uses vertex {v} outside the digraph")
        for u, v in part.arcs:
            if u not in verts or v not in verts:
                return PackingCheck(False, f"part {i} has arc ({u}, {v}) leaving its vertex set")
            if not (0 <= u < d.n and 0 <= v < d.n) or not d.has_arc(u, v):
                return PackingCheck(False, f"part {i} uses arc ({u}, {v}) not in the digraph")
        if len(set(part.arcs)) != len(part.arcs):
            return PackingCheck(False, f"part {i} repeats an arc")
        if not _subgraph_is_strong(part.vertices, part.arcs, d.n):
            return PackingCheck(False, f"part {i} is not strong")
    for i, j in itertools.combinations(range(len(packing.parts)), 2):
        a, b = packing.parts[i], packing.parts[j]
        if set(a.vertices) & set(b.vertices) != S:
            return PackingCheck(False, f"parts {i} and {j} share a vertex outside S")
        if set(a.arcs) & set(b.arcs):
            return PackingCheck(False, f"parts {i} and {j} share an arc")
    return PackingCheck(True)


# -- assignment search -------------------------------------------------------


class _AssignSearch:
    """Decide whether ``ell`` internally disjoint strong parts containing S exist."""

    def __init__(self, d: Digraph, smask: int, ell: int, limits: SearchLimits):
        self.d = d
        self.n = d.n
        self.S = smask
        self.ell = ell
        self.limits = limits
        self.slist = list(bits(smask))
        self.s0 = self.slist[0]
        self.home = _strong_component_of(d, smask)
        out, inn = d.out, d.inn
        # S-internal adjacency still up for grabs.
        self.sund_out = [out[v] & smask if smask >> v & 1 else 0 for v in range(self.n)]
        self.sund_in = [inn[v] & smask if smask >> v & 1 else 0 for v in range(self.n)]
        self.sown_out = [[0] * self.n for _ in range(ell)]
        self.sown_in = [[0] * self.n for _ in range(ell)]
        self.P = [0] * ell
        self.U = self.home & ~smask
        self.opened = 0

    # reachability inside one part ---------------------------------------

    def _reach(self, W: int, sadj: list[int], forward: bool) -> int:
        adj = self.d.out if forward else self.d.inn
        S = self.S
        nonS = W & ~S
        seen = 1 << self.s0
        frontier = seen
        while frontier:
            nxt = 0
            for v in bits(frontier):
                if S >> v & 1:
                    nxt |= (adj[v] & nonS) | sadj[v]
                else:
                    nxt |= adj[v] & W
            nxt &= ~seen
            seen |= nxt
            frontier = nxt
        return seen

    def _optimistic_ok(self, i: int) -> bool:
        W = self.S | self.P[i] | self.U
        need = self.S | self.P[i]
        so, si = self.sown_out[i], self.sown_in[i]
        fwd_adj = [so[v] | self.sund_out[v] for v in range(self.n)]
        if self._reach(W, fwd_adj, True) & need != need:
            return False
        bwd_adj = [si[v] | self.sund_in[v] for v in range(self.n)]
        return self._reach(W, bwd_adj, False) & need == need

    def _committed_strong(self, i: int) -> bool:
        W = self.S | self.P[i]
        return (
            self._reach(W, self.sown_out[i], True) == W
            and self._reach(W, self.sown_in[i], False) == W
        )

    def _slacks(self):
        """Per (s, direction): lacking parts and available resources."""
        d, U = self.d, self.U
        result = []
        for s in self.slist:
            for direction in (0, 1):
                adj = d.out[s] if direction == 0 else d.inn[s]
                sund = self.sund_out[s] if direction == 0 else self.sund_in[s]
                sown = self.sown_out if direction == 0 else self.sown_in
                lacking = [i for i in range(self.ell) if not (adj & self.P[i]) | sown[i][s]]
                avail = (adj & U).bit_count() + sund.bit_count()
                if len(lacking) > avail:
                    return None
                result.append((avail - len(lacking), s, direction, lacking))
        return result

    def _consistent(self) -> bool:
        for i in range(min(self.opened + 1, self.ell)):
            if not self._optimistic_ok(i):
                return False
        return True

    # search ------------------------------------------------------------

    def run(self) -> list[tuple[int, list[Arc]]] | None:
        if self.ell == 0:
            return []
        if not self.home:
            return None
        if self.ell > degree_upper_bound(self.d, self.slist):
            return None
        if not self._consistent():
            return None
        if self._search():
            return self._extract()
        return None

    def _extract(self) -> list[tuple[int, list[Arc]]]:
        parts = []
        S = self.S
        for i in range(self.ell):
            W = S | self.P[i]
            arcs = []
            for u in bits(W):
                if S >> u & 1:
                    targets = (self.d.out[u] & W & ~S) | self.sown_out[i][u]
                else:
                    targets = self.d.out[u] & W
                arcs.extend((u, v) for v in bits(targets))
            parts.append((W, arcs))
        return parts

    def _search(self) -> bool:
        self.limits.tick()
        if all(self._committed_strong(i) for i in range(self.ell)):
            return True
        slacks = self._slacks()
        if slacks is None:
            return False
        pending = [t for t in slacks if t[3] and t[0] >= 0]
        if pending:
            _, s, direction, lacking = min(pending, key=lambda t: (t[0], t[1], t[2]))
            adj = self.d.out[s] if direction == 0 else self.d.inn[s]
            cand_v = adj & self.U
            if cand_v:
                return self._branch_vertex((cand_v & -cand_v).bit_length() - 1, lacking)
            sund = self.sund_out[s] if direction == 0 else self.sund_in[s]
            t = (sund & -sund).bit_length() - 1
            arc = (s, t) if direction == 0 else (t, s)
            return self._branch_sarc(arc, lacking)
        if self.U:
            return self._branch_vertex((self.U & -self.U).bit_length() - 1, [])
        for u in self.slist:
            if self.sund_out[u]:
                t = (self.sund_out[u] & -self.sund_out[u]).bit_length() - 1
                return self._branch_sarc((u, t), [])
        return False

    def _part_order(self, lacking: list[int]) -> list[int]:
        usable = list(range(min(self.opened + 1, self.ell)))
        first = [i for i in usable if i in lacking]
        return first + [i for i in usable if i not in lacking]

    def _branch_vertex(self, x: int, lacking: list[int]) -> bool:
        bit = 1 << x
        self.U &= ~bit
        opened = self.opened
        for i in self._part_order(lacking):
            self.P[i] |= bit
            if i == opened:
                self.opened = opened + 1
            if self._consistent() and self._search():
                return True
            self.P[i] &= ~bit
            self.opened = opened
        if self._consistent() and self._search():
            return True
        self.U |= bit
        return False

    def _branch_sarc(self, arc: Arc, lacking: list[int]) -> bool:
        u, v = arc
        self.sund_out[u] &= ~(1 << v)
        self.sund_in[v] &= ~(1 << u)
        opened = self.opened
        for i in self._part_order(lacking):
            self.sown_out[i][u] |= 1 << v
            self.sown_in[i][v] |= 1 << u
            if i == opened:
                self.opened = opened + 1
            if self._consistent() and self._search():
                return True
            self.sown_out[i][u] &= ~(1 << v)
            self.sown_in[i][v] &= ~(1 << u)
            self.opened = opened
        self.sund_out[u] |= 1 << v
        self.sund_in[v] |= 1 << u
        return False


# -- candidate enumeration ----------------------------------------------------


def _minimal_strong_spanning(
    n: int, W: int, arcs: Sequence[Arc], limits: SearchLimits
) -> list[tuple[Arc, ...]]:
    """All minimally strong spanning subgraphs of the digraph ``(W, arcs)``.

    Arcs are decided in order. An arc may be left out only while the chosen
    plus undecided arcs still span a strong digraph; a chosen arc ``(u, v)``
    is fatal once the other chosen arcs already give a ``u -> v`` path,
    because that path survives in every completion.
    """
    if W.bit_count() == 1:
        return [()]
    m = len(arcs)
    out = [0] * n
    inn = [0] * n
    rest_out = [0] * n
    rest_in = [0] * n
    for u, v in arcs:
        rest_out[u] |= 1 << v
        rest_in[v] |= 1 << u
    chosen: list[Arc] = []
    found: list[tuple[Arc, ...]] = []

    def redundant() -> bool:
        for u, v in chosen:
            out[u] &= ~(1 << v)
            hit = forward_reach(out, u, W) >> v & 1
            out[u] |= 1 << v
            if hit:
                return True
        return False

    def rec(idx: int) -> None:
        limits.tick()
        if is_strong_on(out, inn, W):
            found.append(tuple(chosen))
            if len(found) > limits.candidate_cap:
                raise SearchLimitError(
                    f"more than {limits.candidate_cap} candidates; use the assignment solver"
                )
            return
        if idx == m:
            return
        u, v = arcs[idx]
        rest_out[u] &= ~(1 << v)
        rest_in[v] &= ~(1 << u)
        # include
        out[u] |= 1 << v
        inn[v] |= 1 << u
        chosen.append((u, v))
        if not redundant():
            rec(idx + 1)
        chosen.pop()
        out[u] &= ~(1 << v)
        inn[v] &= ~(1 << u)
        # exclude
        opt_out = [a | b for a, b in zip(out, rest_out)]
        opt_in = [a | b for a, b in zip(inn, rest_in)]
        if is_strong_on(opt_out, opt_in, W):
            rec(idx + 1)
        rest_out[u] |= 1 << v
        rest_in[v] |= 1 << u

    rec(0)
    return found


def enumerate_candidates(
    d: Digraph, S: Iterable[int], limits: SearchLimits | None = None
) -> list[Subgraph]:
    """All inclusion-minimal strong subgraphs of ``d`` that contain ``S``.

    For each vertex set ``W`` containing S, take the minimally strong
    spanning subgraphs of ``d[W]`` and drop those that still contain a strong
    subgraph through S after deleting some vertex of ``W - S``.
    """
    S = _as_vertex_set(d, S)
    limits = (limits or SearchLimits()).start()
    smask = mask_of(S)
    home = _strong_component_of(d, smask)
    if not home:
        return []
    outside = list(bits(home & ~smask))
    result: list[Subgraph] = []
    for r in range(len(outside) + 1):
        for extra in itertools.combinations(outside, r):
            W = smask | mask_of(extra)
            arcs = [(u, v) for u in bits(W) for v in bits(d.out[u] & W)]
            for chosen in _minimal_strong_spanning(d.n, W, arcs, limits):
                out = [0] * d.n
                inn = [0] * d.n
                for u, v in chosen:
                    out[u] |= 1 << v
                    inn[v] |= 1 << u
                shrinkable = False
                for x in extra:
                    reach = W & ~(1 << x)
                    s0 = S[0]
                    if (
                        forward_reach(out, s0, reach) & smask == smask
                        and forward_reach(inn, s0, reach) & smask == smask
                    ):
                        shrinkable = True
                        break
                if not shrinkable:
                    result.append(Subgraph.of(bits(W), chosen))
            if len(result) > limits.candidate_cap:
                raise SearchLimitError(
                    f"more than {limits.candidate_cap} candidates; use the assignment solver"
                )
    result.sort(key=Subgraph.sort_key)
    return result


class _CandidateSearch:
    """Branch and bound over pairwise compatible candidates.

    Each candidate becomes one integer mask holding its arcs (shifted past
    the vertex bits) and its vertices outside S, so a compatibility test is
    a single AND. Branching follows the scarcest arc at a vertex of S: some
    chosen part uses it, or none does.
    """

    def __init__(self, d: Digraph, S: tuple[int, ...], cands: list[Subgraph], limits):
        n = d.n
        self.n = n
        self.limits = limits
        smask = mask_of(S)
        self.S = S
        self.cands = cands
        self.masks = []
        for c in cands:
            m = mask_of(c.vertices) & ~smask
            for u, v in c.arcs:
                m |= 1 << (n + u * n + v)
            self.masks.append(m)
        # Arc masks (already shifted) incident to each s, per direction.
        self.s_arcs = []
        for s in S:
            o = 0
            i = 0
            for v in range(n):
                o |= 1 << (n + s * n + v)
                i |= 1 << (n + v * n + s)
            self.s_arcs.append((o, i))

    def run(self, ell: int) -> list[Subgraph] | None:
        chosen: list[int] = []
        alive = list(range(len(self.cands)))
        if self._rec(alive, 0, ell, chosen):
            return [self.cands[i] for i in chosen]
        return None

    def _rec(self, alive: list[int], used: int, need: int, chosen: list[int]) -> bool:
        if need == 0:
            return True
        self.limits.tick()
        if len(alive) < need:
            return False
        masks = self.masks
        cover = 0
        for i in alive:
            cover |= masks[i]
        best = None
        for o, inn in self.s_arcs:
            for group in (o, inn):
                avail = cover & group
                c = avail.bit_count()
                if c < need:
                    return False
                if best is None or c < best[0]:
                    best = (c, avail)
        arc_bit = best[1] & -best[1]
        with_arc = [i for i in alive if masks[i] & arc_bit]
        # some chosen part uses the arc
        for i in with_arc:
            mi = masks[i]
            rest = [j for j in alive if not masks[j] & mi]
            chosen.append(i)
            if self._rec(rest, used | mi, need - 1, chosen):
                return True
            chosen.pop()
        # no chosen part uses it
        rest = [j for j in alive if not masks[j] & arc_bit]
        return self._rec(rest, used, need, chosen)


# -- public solver API -------------------------------------------------------

METHODS = ("assign", "candidates")


def kappa_S_decision(
    d: Digraph,
    S: Iterable[int],
    ell: int,
    *,
    method: str = "assign",
    limits: SearchLimits | None = None,
) -> Packing | None:
    """A packing with ``ell`` parts if one exists, else ``None`` (exhaustive)."""
    S = _as_vertex_set(d, S)
    if ell < 0:
        raise ValueError("ell must be non-negative")
    limits = (limits or SearchLimits()).start()
    return _decide(d, S, ell, method, limits)


def _decide(d: Digraph, S: tuple[int, ...], ell: int, method: str, limits: SearchLimits):
    smask = mask_of(S)
    if ell == 0:
        return Packing(S, ())
    if ell > degree_upper_bound(d, S) or not _strong_component_of(d, smask):
        return None
    if method == "assign":
        found = _AssignSearch(d, smask, ell, limits).run()
        if found is None:
            return None
        parts = [minimize_part(d.n, smask, W, arcs) for W, arcs in found]
    elif method == "candidates":
        cands = enumerate_candidates(d, S, limits)
        parts = _CandidateSearch(d, S, cands, limits).run(ell)
        if parts is None:
            return None
    else:
        raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")
    packing = Packing(S, tuple(parts)).canonical()
    check = verify_packing(d, packing)
    if not check:
        raise AssertionError(f"solver produced an invalid packing: {check.reason}")
    return packing


def kappa_S(
    d: Digraph,
    S: Iterable[int],
    *,
    method: str = "assign",
    limits: SearchLimits | None = None,
    start: int | None = None,
) -> KappaResult:
    """Exact kappa_S(D) with a witness packing and the refuted next level.

    Levels are tried downward from the degree bound (or from ``start`` when
    the caller already knows that every higher level fails).
    """
    S = _as_vertex_set(d, S)
    limits = (limits or SearchLimits()).start()
    top = degree_upper_bound(d, S)
    if start is not None:
        top = min(top, start)
    for level in range(top, 0, -1):
        try:
            packing = _decide(d, S, level, method, limits)
        except SearchLimitError as exc:
            lower = 1 if _strong_component_of(d, mask_of(S)) else 0
            raise SearchLimitError(str(exc), lower=lower, upper=level, subset=S) from None
        if packing is not None:
            return KappaResult(level, S, packing, level + 1)
    return KappaResult(0, S, Packing(S, ()), 1)


def _kappa_S_job(args):
    d, S, method, limits = args
    return kappa_S(d, S, method=method, limits=limits)


def kappa_k(
    d: Digraph,
    k: int,
    *,
    jobs: int = 1,
    method: str = "assign",
    limits: SearchLimits | None = None,
    lower_bound: int | None = None,
) -> KappaResult:
    """kappa_k(D): the minimum of kappa_S(D) over all k-subsets S.

    The reported argmin is the lexicographically least minimising S. With
    ``lower_bound`` (a value the caller has proved), the scan stops at the
    first S attaining it. Results do not depend on ``jobs``.
    """
    n = d.n
    if not 2 <= k <= n:
        raise VertexRangeError(f"k must satisfy 2 <= k <= n = {n}, got {k}")
    comps = [mask_of(c) for c in strong_components(d)]
    if len(comps) > 1:
        # Lexicographically least k-subset not inside one strong component.
        for S in itertools.combinations(range(n), k):
            sm = mask_of(S)
            if not any(sm & c == sm for c in comps):
                return KappaResult(0, S, Packing(S, ()), 1)
    subsets = list(itertools.combinations(range(n), k))
    if jobs > 1 and len(subsets) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_kappa_S_job, [(d, S, method, limits) for S in subsets]))
        return min(results, key=lambda r: (r.value, r.argmin_set))
    limits = (limits or SearchLimits()).start()
    best: KappaResult | None = None
    for S in subsets:
        if best is not None and lower_bound is not None and best.value <= lower_bound:
            break
        try:
            if best is None:
                res = kappa_S(d, S, method=method, limits=limits)
            else:
                if degree_upper_bound(d, S) >= best.value:
                    if _decide(d, S, best.value, method, limits) is not None:
                        continue
                res = kappa_S(d, S, method=method, limits=limits, start=best.value - 1)
        except SearchLimitError as exc:
            upper = best.value if best is not None else exc.upper
            raise SearchLimitError(
                f"search limit while solving S={S}: {exc}",
                lower=1,
                upper=upper,
                subset=S,
                witness=best,
            ) from None
        if best is None or res.value < best.value:
            best = res
    return best


def kappa_k_after_deletions(
    d: Digraph, k: int, *, jobs: int = 1, method: str = "assign", limits=None
) -> dict[Arc, int]:
    """``{e: kappa_k(D - e)}`` for every arc, each solved from scratch."""
    return {
        e: kappa_k(d.delete_arcs([e]), k, jobs=jobs, method=method, limits=limits).value
        for e in d.arcs
    }


# -- brute-force oracle --------------------------------------------------------


def _closure_strong(vertex_list: list[int], arcs: list[Arc]) -> bool:
    """Strongness by transitive closure on Python sets (kept separate on purpose)."""
    reach = {v: {v} for v in vertex_list}
    for u, v in arcs:
        reach[u].add(v)
    changed = True
    while changed:
        changed = False
        for v in vertex_list:
            grown = set().union(*(reach[w] for w in reach[v]))
            if len(grown) > len(reach[v]):
                reach[v] = grown
                changed = True
    everyone = set(vertex_list)
    return all(reach[v] == everyone for v in vertex_list)


def kappa_S_bruteforce(d: Digraph, S: Iterable[int]) -> int:
    """Largest packing found by filtering all arc subsets, then exhaustive search.

    No minimality or degree argument is used when collecting parts; the
    family search prunes only by counting parts still compatible.
    """
    S = _as_vertex_set(d, S)
    if d.n > BRUTEFORCE_MAX_ORDER:
        raise SearchLimitError(f"brute force needs n <= {BRUTEFORCE_MAX_ORDER}")
    arcs = list(d.arcs)
    if len(arcs) > BRUTEFORCE_MAX_ARCS:
        raise SearchLimitError(f"brute force needs at most {BRUTEFORCE_MAX_ARCS} arcs")
    s_set = set(S)
    parts: list[tuple[frozenset, frozenset]] = []
    for r in range(1, len(arcs) + 1):
        for sub in itertools.combinations(arcs, r):
            verts = set(s_set)
            for u, v in sub:
                verts.add(u)
                verts.add(v)
            if _closure_strong(sorted(verts), list(sub)):
                parts.append((frozenset(verts - s_set), frozenset(sub)))

    def compatible(a, b) -> bool:
        return not (a[0] & b[0]) and not (a[1] & b[1])

    best = 0

    def grow(pool: list, size: int) -> None:
        nonlocal best
        if size > best:
            best = size
        for idx, p in enumerate(pool):
            if size + len(pool) - idx <= best:
                return
            grow([q for q in pool[idx + 1 :] if compatible(p, q)], size + 1)

    grow(parts, 0)
    return best
