"""Acceptance criteria. Each test carries a ``criterion`` marker; the terminal
summary prints one PASS/FAIL line per criterion.

Run on its own with ``pytest tests/test_acceptance.py -v``.
"""

import itertools
import json
import random
import re
import shlex
from pathlib import Path

import pytest

from strongsub.cli import EXIT_OK, main
from strongsub.connectivity import is_strong, vertex_connectivity
from strongsub.digraph import canonical_form
from strongsub.extremal import (
    ALL_DIGRAPHS,
    COMPLEMENT_CONSTRAINED,
    check_F_upper_bounds,
    classify_three_arc_deletions,
    compute_f_F,
    is_symmetric_tree,
    verify_characterization,
)
from strongsub.generators import (
    complete_digraph,
    directed_cycle,
    hamiltonian_decomposition,
    join_witness_packing,
    random_strong_digraph,
    symmetric_join,
    union_of_ham_cycles,
)
from strongsub.packing import kappa_k, kappa_S, kappa_S_bruteforce, verify_packing
from strongsub.suites import SUITES

from conftest import all_digraphs, seeded_digraphs, subsets

README = Path(__file__).resolve().parent.parent / "README.md"
ORACLE_SEED = 2024
SWEEP_SEED = 20190101


@pytest.mark.criterion(1, "kappa_S equals the brute-force oracle (n=3 exhaustive, 200 seeded n in {4,5})")
def test_oracle_equivalence():
    mismatches = []
    three = list(all_digraphs(3))
    assert len(three) == 64
    for d in three:
        for S in subsets(3):
            if kappa_S(d, S).value != kappa_S_bruteforce(d, S):
                mismatches.append((d.arcs, S))
    corpus = seeded_digraphs(ORACLE_SEED, 200, (4, 5), max_arcs=11)
    assert {d.n for d in corpus} == {4, 5}
    compared = 0
    for d in corpus:
        for S in subsets(d.n):
            compared += 1
            if kappa_S(d, S).value != kappa_S_bruteforce(d, S):
                mismatches.append((d.n, d.arcs, S))
    assert compared > 3000
    assert mismatches == []


def _strong_sweep():
    rng = random.Random(SWEEP_SEED)
    corpus = []
    while len(corpus) < 200:
        n = rng.choice((3, 4, 5))
        corpus.append(random_strong_digraph(n, rng.choice((0.35, 0.5, 0.7)), seed=rng.randrange(2**32)))
    return corpus


@pytest.mark.criterion(2, "degree bound and connectivity bound on 200 random strong digraphs")
def test_degree_and_connectivity_bounds():
    violations = []
    in_hypothesis = 0
    for d in _strong_sweep():
        assert is_strong(d) and d.n <= 5
        kappa, _ = vertex_connectivity(d)
        delta = min(d.min_degrees())
        for k in (2, 3):
            if k > d.n:
                continue
            value = kappa_k(d, k).value
            if value > delta:
                violations.append(("degree", d.arcs, k))
            if d.n >= kappa + k:
                in_hypothesis += 1
                if value > kappa:
                    violations.append(("connectivity", d.arcs, k))
    assert in_hypothesis > 0
    assert violations == []


@pytest.mark.criterion(3, "connectivity bound is sharp on the clique/independent-set join (2, 6)")
def test_join_sharpness():
    d = symmetric_join(2, 6)
    assert kappa_k(d, 2).value == 2
    assert vertex_connectivity(d)[0] == 2
    pairs = list(itertools.combinations(range(6), 2))
    assert len(pairs) == 15
    for S in pairs:
        packing = join_witness_packing(2, 6, S)
        assert len(packing) == 2 and verify_packing(d, packing), S


@pytest.mark.criterion(4, "Hamiltonian decompositions exist for n in {5,7,8}, none for n in {4,6}")
def test_hamiltonian_decompositions():
    for n in (5, 7, 8):
        dec = hamiltonian_decomposition(n)
        assert dec is not None and dec.verify() and len(dec.cycles) == n - 1
    for n in (4, 6):
        assert hamiltonian_decomposition(n) is None


@pytest.mark.criterion(5, "f(4,2,2)=8 and F(4,2,2)=9; characterization holds exhaustively at n=5")
def test_two_level_values():
    n = 4
    t = compute_f_F(n, 2, 2, ALL_DIGRAPHS)
    assert (t.f, t.F) == (8, 9)
    assert t.f == n * (n - 1) - 2 * (n // 2)
    assert t.F == n * (n - 1) - 3
    report = verify_characterization(5)
    assert report.deletion_sets == 780
    assert report.holds, report.discrepancies


@pytest.mark.criterion(6, "3-arc deletions at n=5: one minimal class, two low classes, rest non-minimal")
def test_three_arc_classes():
    classes = classify_three_arc_deletions(5)
    minimal = [c for c in classes if c.minimal]
    assert len(minimal) == 1
    assert minimal[0].kappa_2 == 3 and minimal[0].shape == "3-cycle"
    low = [c for c in classes if c.kappa_2 <= 2]
    assert len(low) == 2
    rest = [c for c in classes if c not in minimal and c not in low]
    assert rest and all(c.kappa_2 == 3 and not c.minimal for c in rest)


MIN_TABLE_CASES = [
    (4, k, ell, ALL_DIGRAPHS) for k in (2, 3, 4) for ell in (1, 2, 3)
] + [
    (5, 2, 1, COMPLEMENT_CONSTRAINED),
    (5, 2, 2, COMPLEMENT_CONSTRAINED),
    (5, 2, 3, COMPLEMENT_CONSTRAINED),
    (5, 5, 2, COMPLEMENT_CONSTRAINED),
    (6, 2, 1, COMPLEMENT_CONSTRAINED),
]


@pytest.mark.criterion(7, "f(n,k,ell) >= n*ell in every table; Hamiltonian unions and cycles reach it")
def test_minimum_arc_counts():
    for n, k, ell, space in MIN_TABLE_CASES:
        t = compute_f_F(n, k, ell, space, want="f")
        assert t.f is None or t.f >= n * ell, (n, k, ell)
    for ell in (2, 3, 4):
        assert kappa_k(union_of_ham_cycles(5, ell), 5).value == ell
    assert compute_f_F(5, 5, 2, COMPLEMENT_CONSTRAINED, want="f").f == 10
    for n in (4, 5, 6):
        t = compute_f_F(n, 2, 1, COMPLEMENT_CONSTRAINED, want="f")
        assert t.f == n
        assert canonical_form(directed_cycle(n)) in {canonical_form(d) for d in t.ex_members}


@pytest.mark.criterion(8, "F(5,2,1)=8 attained only by bioriented trees; (4,2)-minimal at n=4 has <= 12 arcs")
def test_maximum_arc_counts():
    r = check_F_upper_bounds(5, 1)
    assert r.F_ell1 == 8
    # There are exactly three unlabelled trees on five vertices.
    assert len(r.Ex_ell1) == 3 and all(is_symmetric_tree(d) for d in r.Ex_ell1)
    r = check_F_upper_bounds(4, 2, k=4)
    assert r.max_arcs_k_eq_n is not None and r.max_arcs_k_eq_n <= 2 * 2 * (4 - 1) == 12


@pytest.mark.criterion(9, "kappa_2 of complete digraphs is n-1 for n=3,4,5; kappa_4 of K_4 is 2")
def test_complete_digraph_values():
    for n in (3, 4, 5):
        assert kappa_k(complete_digraph(n), 2).value == n - 1
    assert kappa_k(complete_digraph(4), 4).value == 2


def _readme_examples() -> list[list[str]]:
    text = README.read_text()
    examples = []
    for block in re.findall(r"```console\n(.*?)```", text, re.S):
        for line in block.splitlines():
            if line.startswith("$ strongsub "):
                examples.append(shlex.split(line[2:])[1:])
    return examples


def _without_output(args: list[str]) -> list[str]:
    out, skip = [], False
    for a in args:
        if skip:
            skip = False
        elif a == "--output":
            skip = True
        else:
            out.append(a)
    return out


def _json_run(args: list[str], jobs: int, target: Path) -> bytes:
    code = main(["--format", "json", "--jobs", str(jobs), "--output", str(target), *args])
    assert code == EXIT_OK, (args, jobs)
    return target.read_bytes()


@pytest.mark.criterion(10, "verify suites and README CLI examples give byte-identical JSON for --jobs 1 and 4")
def test_determinism(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    examples = _readme_examples()
    assert len(examples) >= 10
    # The documented examples read files written by earlier ones.
    for args in examples:
        if "--output" in args:
            assert main(args) == EXIT_OK
    commands = [_without_output(a) for a in examples]
    commands += [["verify", name] for name in SUITES]
    differing = []
    for i, args in enumerate(commands):
        one = _json_run(args, 1, tmp_path / f"{i}-j1.json")
        four = _json_run(args, 4, tmp_path / f"{i}-j4.json")
        json.loads(one)
        if one != four:
            differing.append(args)
    assert differing == []
