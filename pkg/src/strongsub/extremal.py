"""Minimality testing, the (2, n-2) characterization, and f/F tables."""

from __future__ import annotations

import itertools
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .connectivity import is_strong, strong_components
from .digraph import Arc, Digraph, canonical_form, mask_of
from .enumeration import (
    FULL_ENUMERATION_MAX_ORDER,
    all_digraph_classes,
    classes_with_degrees,
    degree_bounded_arc_sets,
    digraph_from_index_mask,
)
from .errors import StrongSubError
from .generators import complete_digraph
from .packing import SearchLimits, _decide, degree_upper_bound, kappa_k

MINIMAL = "minimal"
KAPPA_TOO_LOW = "kappa-too-low"
ARC_KEEPS_KAPPA = "some-arc-keeps-kappa"


def pmap(fn: Callable, items: Sequence, jobs: int = 1) -> list:
    """Ordered map, optionally over worker processes; output order never depends on jobs."""
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * jobs))))


# -- minimality ---------------------------------------------------------------


@dataclass(frozen=True)
class MinimalityReport:
    k: int
    ell: int
    kappa_k_value: int
    per_arc: dict[Arc, int]
    verdict: str

    @property
    def minimal(self) -> bool:
        return self.verdict == MINIMAL

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "ell": self.ell,
            "kappa_k": self.kappa_k_value,
            "per_arc": [[u, v, val] for (u, v), val in sorted(self.per_arc.items())],
            "verdict": self.verdict,
        }


def _min_degree(d: Digraph) -> int:
    return min(d.min_degrees())


def is_minimally_connected(
    d: Digraph, k: int, ell: int, *, limits: SearchLimits | None = None
) -> MinimalityReport:
    """Full minimality report with the exact kappa_k(D - e) for every arc.

    Each per-arc value is pinned between ``kappa_k(D) - 1`` (drop the part
    holding the arc from an optimal packing) and ``min(kappa_k(D),
    min degree of D - e)``; the solver runs only when that window is open.
    Both the definition (kappa >= ell and every deletion <= ell - 1) and the
    equality form (kappa == ell and every deletion == ell - 1) are evaluated
    and must agree.
    """
    if ell < 1:
        raise ValueError("ell must be at least 1")
    base = kappa_k(d, k, limits=limits).value
    per_arc: dict[Arc, int] = {}
    for e in d.arcs:
        de = d.delete_arcs([e])
        lo = max(0, base - 1)
        hi = min(base, _min_degree(de))
        if not is_strong(de):
            hi = 0
        if lo >= hi:
            per_arc[e] = hi
        else:
            per_arc[e] = kappa_k(de, k, limits=limits, lower_bound=lo).value
    by_definition = base >= ell and all(v <= ell - 1 for v in per_arc.values())
    by_equality = base == ell and all(v == ell - 1 for v in per_arc.values())
    if by_definition != by_equality:
        raise AssertionError(
            f"definition form ({by_definition}) and equality form ({by_equality}) disagree"
        )
    if by_definition:
        verdict = MINIMAL
    elif base < ell:
        verdict = KAPPA_TOO_LOW
    else:
        verdict = ARC_KEEPS_KAPPA
    return MinimalityReport(k, ell, base, per_arc, verdict)


def kappa_k_at_least(d: Digraph, k: int, ell: int, limits: SearchLimits | None = None) -> bool:
    """Decide kappa_k(D) >= ell by one decision search per k-subset."""
    if ell <= 0:
        return True
    if _min_degree(d) < ell or not is_strong(d):
        return False
    if ell == 1:
        # D itself is a strong subgraph containing every S.
        return True
    limits = (limits or SearchLimits()).start()
    for S in itertools.combinations(range(d.n), k):
        if degree_upper_bound(d, S) < ell or _decide(d, S, ell, "assign", limits) is None:
            return False
    return True


def is_minimal(d: Digraph, k: int, ell: int, limits: SearchLimits | None = None) -> bool:
    """Boolean minimality test for sweeps; stops at the first failing condition."""
    if not kappa_k_at_least(d, k, ell, limits):
        return False
    arcs = sorted(d.arcs, key=lambda e: (_min_degree(d.delete_arcs([e])) < ell, e))
    for e in arcs:
        if kappa_k_at_least(d.delete_arcs([e]), k, ell, limits):
            return False
    return True


# -- the (2, n-2) characterization ---------------------------------------------


def _arc_set(n: int, M: Iterable[Arc]) -> Digraph:
    return Digraph.from_arc_list(n, M)


def characterization_predicate(n: int, M: Iterable[Arc]) -> bool:
    """Is the deleted set a directed 3-cycle, or exactly floor(n/2) disjoint 2-cycles?"""
    m = _arc_set(n, M)
    arcs = set(m.arcs)
    if len(arcs) == 3:
        (a, b), = [x for x in arcs if x[0] == min(u for u, _ in arcs)]
        c = next((y for x, y in arcs if x == b), None)
        if c is not None and (c, a) in arcs and len({a, b, c}) == 3:
            return True
    pairs = n // 2
    if len(arcs) != 2 * pairs:
        return False
    if any((v, u) not in arcs for u, v in arcs):
        return False
    return all(m.out_degree(v) <= 1 for v in range(n))


def describe_arc_set(n: int, M: Iterable[Arc]) -> str:
    """Name the weak components of an arc set with in/out-degrees at most one."""
    m = _arc_set(n, M)
    names = []
    seen = 0
    for v in range(n):
        if seen >> v & 1 or not (m.out[v] | m.inn[v]):
            continue
        comp = 1 << v
        frontier = comp
        while frontier:
            nxt = 0
            for x in range(n):
                if frontier >> x & 1:
                    nxt |= m.out[x] | m.inn[x]
            nxt &= ~comp
            comp |= nxt
            frontier = nxt
        seen |= comp
        size = comp.bit_count()
        arcs = sum(m.out[x].bit_count() for x in range(n) if comp >> x & 1)
        if arcs == size:
            names.append(f"{size}-cycle")
        elif arcs == size - 1 and all(m.out[x].bit_count() <= 1 and m.inn[x].bit_count() <= 1 for x in range(n) if comp >> x & 1):
            names.append(f"path({arcs})")
        else:
            names.append(f"component({size}v,{arcs}a)")
    return " + ".join(sorted(names, key=lambda s: (-len(s), s))) or "empty"


def deletion_sets_max_degree_one(n: int) -> list[tuple[Arc, ...]]:
    """Every arc set of the complete digraph with all in- and out-degrees at most one."""
    found = []
    succ: list[int] = [-1] * n
    used_heads = [False] * n

    def rec(u: int) -> None:
        if u == n:
            found.append(tuple((x, succ[x]) for x in range(n) if succ[x] >= 0))
            return
        rec(u + 1)
        for v in range(n):
            if v != u and not used_heads[v]:
                used_heads[v] = True
                succ[u] = v
                rec(u + 1)
                succ[u] = -1
                used_heads[v] = False

    rec(0)
    return sorted(found, key=lambda M: (len(M), M))


@dataclass
class ClassRecord:
    M: tuple[Arc, ...]
    shape: str
    members: int
    kappa_2: int
    minimal: bool
    predicate: bool

    @property
    def agrees(self) -> bool:
        return self.minimal == self.predicate

    def to_json(self) -> dict:
        return {
            "M": [list(a) for a in self.M],
            "shape": self.shape,
            "members": self.members,
            "kappa_2": self.kappa_2,
            "minimal": self.minimal,
            "predicate": self.predicate,
            "agrees": self.agrees,
        }


@dataclass
class CharacterizationReport:
    n: int
    deletion_sets: int
    classes: list[ClassRecord]
    discrepancies: list[tuple[Arc, ...]] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return not self.discrepancies

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "deletion_sets": self.deletion_sets,
            "classes": [c.to_json() for c in self.classes],
            "discrepancies": [[list(a) for a in M] for M in self.discrepancies],
            "holds": self.holds,
        }


def _class_job(args) -> tuple[int, bool]:
    n, M = args
    report = is_minimally_connected(complete_digraph(n).delete_arcs(M), 2, n - 2)
    return report.kappa_k_value, report.minimal


def verify_characterization(n: int, *, jobs: int = 1) -> CharacterizationReport:
    """Check the (2, n-2) characterization against exact minimality tests.

    Only deletion sets with in/out-degrees at most one can leave minimum
    degree n - 2, so those are all the candidates. Each isomorphism class is
    solved once; the predicate is evaluated on every labelled set.
    """
    if not 4 <= n <= 6:
        raise StrongSubError("verify_characterization is sized for 4 <= n <= 6")
    all_sets = deletion_sets_max_degree_one(n)
    by_class: dict[tuple, list[tuple[Arc, ...]]] = {}
    for M in all_sets:
        by_class.setdefault(canonical_form(_arc_set(n, M)), []).append(M)
    forms = sorted(by_class, key=lambda f: (len(f), f))
    solved = pmap(_class_job, [(n, f) for f in forms], jobs)
    classes = []
    discrepancies = []
    for form, (kappa, minimal) in zip(forms, solved):
        preds = {M: characterization_predicate(n, M) for M in by_class[form]}
        for M, p in preds.items():
            if p != minimal:
                discrepancies.append(M)
        classes.append(
            ClassRecord(
                M=form,
                shape=describe_arc_set(n, form),
                members=len(by_class[form]),
                kappa_2=kappa,
                minimal=minimal,
                predicate=characterization_predicate(n, form),
            )
        )
    return CharacterizationReport(n, len(all_sets), classes, sorted(discrepancies))


@dataclass(frozen=True)
class DeletionClass:
    M: tuple[Arc, ...]
    iso_signature: tuple[Arc, ...]
    shape: str
    kappa_2: int
    minimal: bool

    def to_json(self) -> dict:
        return {
            "M": [list(a) for a in self.M],
            "iso_signature": [list(a) for a in self.iso_signature],
            "shape": self.shape,
            "kappa_2": self.kappa_2,
            "minimal": self.minimal,
        }


def classify_three_arc_deletions(n: int, *, jobs: int = 1) -> list[DeletionClass]:
    """All 3-arc deletion sets with no shared head or tail, up to isomorphism."""
    if not 4 <= n <= 6:
        raise StrongSubError("classify_three_arc_deletions is sized for 4 <= n <= 6")
    forms = sorted(
        {canonical_form(_arc_set(n, M)) for M in degree_bounded_arc_sets(n, 3, 1)}
    )
    solved = pmap(_class_job, [(n, f) for f in forms], jobs)
    return [
        DeletionClass(f, f, describe_arc_set(n, f), kappa, minimal)
        for f, (kappa, minimal) in zip(forms, solved)
    ]


# -- f / F tables ---------------------------------------------------------------

ALL_DIGRAPHS = "all-digraphs"
COMPLEMENT_CONSTRAINED = "complement-constrained"


@dataclass
class ExtremalTable:
    n: int
    k: int
    ell: int
    f: int | None
    F: int | None
    ex_members: list[Digraph]
    Ex_members: list[Digraph]
    search_space: str
    checked: int = 0
    levels: dict[int, int] = field(default_factory=dict)

    @property
    def empty(self) -> bool:
        return self.f is None and self.F is None

    CSV_HEADER = "n,k,ell,f,F,|ex|,|Ex|"

    def csv_row(self) -> str:
        def cell(x):
            return "" if x is None else str(x)

        return ",".join(
            [str(self.n), str(self.k), str(self.ell), cell(self.f), cell(self.F),
             str(len(self.ex_members)), str(len(self.Ex_members))]
        )

    def to_json(self) -> dict:
        def member(d: Digraph) -> dict:
            return {"n": d.n, "arcs": [list(a) for a in d.arcs], "dg": d.to_dg()}

        return {
            "n": self.n,
            "k": self.k,
            "ell": self.ell,
            "f": self.f,
            "F": self.F,
            "ex": [member(d) for d in self.ex_members],
            "Ex": [member(d) for d in self.Ex_members],
            "search_space": self.search_space,
            "checked": self.checked,
            "minimal_per_arc_count": {str(m): c for m, c in sorted(self.levels.items())},
            "note": "no minimal digraphs" if self.empty else None,
        }


def _minimal_job(args) -> bool:
    d, k, ell = args
    return is_minimal(d, k, ell)


def _scan(digraphs: list[Digraph], k: int, ell: int, jobs: int) -> list[Digraph]:
    flags = pmap(_minimal_job, [(d, k, ell) for d in digraphs], jobs)
    return [d for d, ok in zip(digraphs, flags) if ok]


def compute_f_F(
    n: int,
    k: int,
    ell: int,
    search_space: str = COMPLEMENT_CONSTRAINED,
    *,
    want: str = "both",
    jobs: int = 1,
) -> ExtremalTable:
    """Exact f(n,k,ell) and F(n,k,ell) with isomorphism-reduced extremal lists.

    ``all-digraphs`` tests every isomorphism class of order n (n <= 5).
    ``complement-constrained`` only visits digraphs with min in/out-degree
    >= ell, which every kappa_k >= ell digraph has; arc counts are scanned
    upward from n*ell for f and downward from n(n-1) for F, stopping at the
    first count that has members. ``want`` picks "f", "F" or "both".
    """
    if not 2 <= k <= n:
        raise StrongSubError("need 2 <= k <= n")
    if ell < 1:
        raise StrongSubError("ell must be at least 1")
    if want not in ("f", "F", "both"):
        raise ValueError("want must be 'f', 'F' or 'both'")
    total = n * (n - 1)
    levels: dict[int, int] = {}
    checked = 0
    if search_space == ALL_DIGRAPHS:
        if n > FULL_ENUMERATION_MAX_ORDER:
            raise StrongSubError(f"all-digraphs search needs n <= {FULL_ENUMERATION_MAX_ORDER}")
        pool = [digraph_from_index_mask(n, m) for m in all_digraph_classes(n)]
        checked = len(pool)
        members = _scan(pool, k, ell, jobs)
        for d in members:
            levels[d.size] = levels.get(d.size, 0) + 1
    elif search_space == COMPLEMENT_CONSTRAINED:
        if n > 6:
            raise StrongSubError("complement-constrained search is sized for n <= 6")
        members = []
        scanned: set[int] = set()

        def level(m: int) -> list[Digraph]:
            nonlocal checked
            scanned.add(m)
            pool = classes_with_degrees(n, m, ell)
            checked += len(pool)
            found = _scan(pool, k, ell, jobs)
            levels[m] = len(found)
            return found

        if want in ("f", "both"):
            for m in range(n * ell, total + 1):
                found = level(m)
                if found:
                    members.extend(found)
                    break
        if want in ("F", "both"):
            for m in range(total, n * ell - 1, -1):
                found = level(m) if m not in scanned else [d for d in members if d.size == m]
                if found:
                    members.extend(d for d in found if d not in members)
                    break
        levels = {m: c for m, c in levels.items() if c}
    else:
        raise StrongSubError(f"unknown search space {search_space!r}")

    members = sorted({canonical_form(d): d for d in members}.items())
    members = [Digraph.from_arc_list(n, form) for form, _ in members]
    sizes = [d.size for d in members]
    f = min(sizes) if sizes and want in ("f", "both") else None
    F = max(sizes) if sizes and want in ("F", "both") else None
    ex = [d for d in members if d.size == f] if f is not None else []
    Ex = [d for d in members if d.size == F] if F is not None else []
    for d in ex + Ex:
        report = is_minimally_connected(d, k, ell)
        if not report.minimal:
            raise AssertionError(f"extremal member failed re-verification: {d}")
    if f is not None and f < n * ell:
        raise AssertionError(f"f = {f} is below n*ell = {n * ell}")
    return ExtremalTable(n, k, ell, f, F, ex, Ex, search_space, checked, levels)


def is_symmetric_tree(d: Digraph) -> bool:
    """Both orientations of every edge, and the underlying graph is a tree."""
    if not d.is_symmetric():
        return False
    edges = d.underlying_graph()
    if len(edges) != d.n - 1:
        return False
    return len(strong_components(d)) == 1


@dataclass
class UpperBoundReport:
    n: int
    ell: int
    k: int
    max_arcs_k_eq_n: int | None
    bound: int
    F_ell1: int | None = None
    Ex_ell1_all_trees: bool | None = None
    Ex_ell1: list[Digraph] = field(default_factory=list)

    @property
    def passes(self) -> bool:
        ok = self.max_arcs_k_eq_n is None or self.max_arcs_k_eq_n <= self.bound
        if self.ell == 1:
            ok = ok and self.F_ell1 == 2 * (self.n - 1) and bool(self.Ex_ell1_all_trees)
        return ok

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "ell": self.ell,
            "k": self.k,
            "max_arcs_minimal_k_eq_n": self.max_arcs_k_eq_n,
            "bound_2ell_n_minus_1": self.bound,
            "F_n_k_1": self.F_ell1,
            "Ex_n_k_1_all_symmetric_trees": self.Ex_ell1_all_trees,
            "Ex_n_k_1": [[list(a) for a in d.arcs] for d in self.Ex_ell1],
            "passes": self.passes,
        }


def check_F_upper_bounds(n: int, ell: int, k: int = 2, *, jobs: int = 1) -> UpperBoundReport:
    """Largest minimally (n, ell)-connected digraph versus 2*ell*(n-1); F(n,k,1) when ell = 1."""
    if n > FULL_ENUMERATION_MAX_ORDER:
        raise StrongSubError(f"check_F_upper_bounds needs n <= {FULL_ENUMERATION_MAX_ORDER}")
    table = compute_f_F(n, n, ell, ALL_DIGRAPHS, jobs=jobs)
    report = UpperBoundReport(n, ell, k, table.F, 2 * ell * (n - 1))
    if ell == 1:
        t1 = table if k == n else compute_f_F(n, k, 1, ALL_DIGRAPHS, jobs=jobs)
        report.F_ell1 = t1.F
        report.Ex_ell1 = t1.Ex_members
        report.Ex_ell1_all_trees = all(is_symmetric_tree(d) for d in t1.Ex_members)
    return report


def count_by(items: Iterable, key: Callable) -> dict:
    return dict(Counter(key(x) for x in items))
