"""``strongsub`` command line: generators, exact solvers, extremal tables and suites.

Exit codes: 0 success, 1 usage error, 2 invalid input, 3 search limit reached
(the proven bounds are still printed), 4 a verification suite failed.
"""

from __future__ import annotations

import functools
import json
import sys
import time
from dataclasses import dataclass, replace
from pathlib import Path

import click

from .connectivity import vertex_connectivity
from .digraph import Digraph, parse_dg
from .errors import ParseError, SearchLimitError, StrongSubError
from .extremal import (
    ALL_DIGRAPHS,
    COMPLEMENT_CONSTRAINED,
    ExtremalTable,
    classify_three_arc_deletions,
    compute_f_F,
    is_minimally_connected,
)
from .generators import FAMILIES, FamilySpec, hamiltonian_decomposition
from .packing import METHODS, SearchLimits, kappa_k, kappa_S
from .suites import DEFAULT_SEED, SUITE_TITLES, SUITES, run_suite

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INPUT = 2
EXIT_LIMIT = 3
EXIT_FAILED = 4
ENV_PREFIX = "STRONGSUB"


@dataclass
class Settings:
    fmt: str
    seed: int
    timeout_ms: int | None
    node_limit: int | None
    jobs: int
    output: Path | None
    timing: bool

    def limits(self) -> SearchLimits:
        return SearchLimits(node_limit=self.node_limit, timeout_ms=self.timeout_ms)


class VerificationFailed(Exception):
    pass


class LimitReached(Exception):
    pass


FORMATS = click.Choice(["text", "json"])

# Global options may also follow the subcommand; a value given there wins.
_LOCAL_OPTIONS = [
    click.option("--format", "fmt", type=FORMATS, default=None, allow_from_autoenv=False,
                 help="Output format (overrides the global option)."),
    click.option("--seed", type=int, default=None, allow_from_autoenv=False, hidden=True),
    click.option("--timeout-ms", type=click.IntRange(min=1), default=None,
                 allow_from_autoenv=False, hidden=True),
    click.option("--node-limit", type=click.IntRange(min=1), default=None,
                 allow_from_autoenv=False, hidden=True),
    click.option("--jobs", type=click.IntRange(min=1), default=None,
                 allow_from_autoenv=False, hidden=True),
    click.option("--output", type=click.Path(dir_okay=False, path_type=Path), default=None,
                 allow_from_autoenv=False, hidden=True),
    click.option("--timing", is_flag=True, default=None, allow_from_autoenv=False, hidden=True),
]


def pass_settings(command):
    """Pass the merged global and per-command settings as the first argument."""

    @functools.wraps(command)
    def wrapper(*args, fmt, seed, timeout_ms, node_limit, jobs, output, timing, **kwargs):
        local = dict(fmt=fmt, seed=seed, timeout_ms=timeout_ms, node_limit=node_limit,
                     jobs=jobs, output=output, timing=timing)
        base = click.get_current_context().find_object(Settings)
        settings = replace(base, **{k: v for k, v in local.items() if v is not None})
        return command(settings, *args, **kwargs)

    for option in reversed(_LOCAL_OPTIONS):
        wrapper = option(wrapper)
    return wrapper


def _emit(settings: Settings, payload: dict, text: str, started: float) -> None:
    if settings.fmt == "json":
        if settings.timing:
            payload = {**payload, "elapsed_ms": round((time.perf_counter() - started) * 1000)}
        body = json.dumps(payload, indent=2) + "\n"
    else:
        body = text if text.endswith("\n") else text + "\n"
        if settings.timing:
            body += f"elapsed: {(time.perf_counter() - started) * 1000:.0f} ms\n"
    if settings.output:
        settings.output.write_text(body)
    else:
        click.echo(body, nl=False)


def load_digraph(source: str) -> Digraph:
    """Read a ``.dg`` file or a JSON ``{"n", "arcs"}`` object; ``-`` reads stdin."""
    if source == "-":
        text = sys.stdin.read()
    else:
        try:
            text = Path(source).read_text()
        except OSError as exc:
            raise click.BadParameter(str(exc), param_hint="GRAPH") from None
    if text.lstrip().startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from None
        return Digraph.from_json(data.get("digraph", data) if isinstance(data, dict) else data)
    return parse_dg(text)


def guarded(command):
    """Turn a search-limit error into proven bounds on the output and exit code 3."""

    @functools.wraps(command)
    def wrapper(settings: Settings, *args, **kwargs):
        started = time.perf_counter()
        try:
            return command(settings, *args, **kwargs)
        except SearchLimitError as exc:
            payload = {
                "error": "search-limit",
                "message": str(exc),
                "lower": exc.lower,
                "upper": exc.upper,
                "subset": list(exc.subset) if exc.subset else None,
            }
            text = f"search limit reached: {exc}\nbounds: [{exc.lower}, {exc.upper}]"
            _emit(settings, payload, text, started)
            raise LimitReached(str(exc)) from None

    return wrapper


def _parse_set(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.replace(",", " ").split())
    except ValueError:
        raise click.BadParameter(f"expected comma-separated integers, got {text!r}") from None


def _packing_text(label: str, result) -> str:
    lines = [f"{label} = {result.value}   argmin S = {list(result.argmin_set)}"]
    for i, part in enumerate(result.witness.parts, 1):
        arcs = " ".join(f"{u}->{v}" for u, v in part.arcs)
        lines.append(f"  part {i}: vertices {list(part.vertices)}  arcs {arcs}")
    lines.append(f"  no packing of size {result.refuted_level} exists")
    return "\n".join(lines)


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.option("--format", "fmt", type=FORMATS, default="text",
              show_default=True, envvar=f"{ENV_PREFIX}_FORMAT", help="Output format.")
@click.option("--seed", type=int, default=DEFAULT_SEED, show_default=True,
              help="Seed for every random choice.")
@click.option("--timeout-ms", type=click.IntRange(min=1), default=None,
              help="Wall-clock budget per exact search.")
@click.option("--node-limit", type=click.IntRange(min=1), default=None,
              help="Search-node budget per exact search.")
@click.option("--jobs", type=click.IntRange(min=1), default=1, show_default=True,
              help="Worker processes; results never depend on it.")
@click.option("--output", type=click.Path(dir_okay=False, path_type=Path), default=None,
              help="Write the result here instead of stdout.")
@click.option("--timing", is_flag=True, help="Add elapsed time to the output.")
@click.version_option(package_name="artifact", prog_name="strongsub")
@click.pass_context
def cli(ctx, fmt, seed, timeout_ms, node_limit, jobs, output, timing):
    """Exact strong subgraph k-connectivity of small digraphs.

    GRAPH arguments accept the .dg text format (vertex count, then one
    "u v" arc per line, '#' comments) or JSON {"n": .., "arcs": [[u, v], ..]}.
    Every global option can also be set through STRONGSUB_<OPTION>.
    """
    ctx.obj = Settings(fmt, seed, timeout_ms, node_limit, jobs, output, timing)


@cli.command()
@click.argument("family", type=click.Choice(FAMILIES))
@click.option("--n", "n", type=int, required=True, help="Number of vertices.")
@click.option("--k", "k", type=int, default=None, help="Clique size for symmetric-join.")
@click.option("--ell", type=int, default=None, help="Cycle count for union-ham-cycles.")
@click.option("--shape", type=click.Choice(["path", "star", "random"]), default="path",
              show_default=True, help="Tree shape for symmetric-tree.")
@click.option("--p", "p", type=float, default=0.5, show_default=True,
              help="Arc probability for random-strong.")
@click.option("--dot", is_flag=True, help="Emit Graphviz DOT instead of .dg.")
@pass_settings
def gen(settings: Settings, family, n, k, ell, shape, p, dot):
    """Build a digraph from a named family."""
    started = time.perf_counter()
    d = FamilySpec(family, n, k=k, ell=ell, seed=settings.seed, shape=shape, p=p).build()
    text = d.to_dot(family.replace("-", "_")) if dot else d.to_dg()
    payload = {"family": family, "digraph": d.to_json()}
    if dot:
        payload["dot"] = text
    _emit(settings, payload, text, started)


@cli.command()
@click.argument("graph")
@pass_settings
def kappa(settings: Settings, graph):
    """Strong vertex connectivity kappa(D) with a separating set."""
    started = time.perf_counter()
    d = load_digraph(graph)
    value, cert = vertex_connectivity(d)
    if cert.kind == "complete":
        text = f"kappa = {value}   (complete digraph)"
    else:
        x, y = cert.separated_pair
        text = f"kappa = {value}   removing {list(cert.cut)} leaves no path {x} -> {y}"
    _emit(settings, {"value": value, "certificate": cert.to_json(), "digraph": d.to_json()},
          text, started)


@cli.command("kappa-s")
@click.argument("graph")
@click.option("--set", "S", required=True, help="Vertex set, e.g. 0,2,3.")
@click.option("--method", type=click.Choice(METHODS), default="assign", show_default=True)
@pass_settings
@guarded
def kappa_s_cmd(settings: Settings, graph, S, method):
    """kappa_S(D) for one vertex set, with a witness packing."""
    started = time.perf_counter()
    d = load_digraph(graph)
    result = kappa_S(d, _parse_set(S), method=method, limits=settings.limits())
    _emit(settings, {**result.to_json(), "digraph": d.to_json()},
          _packing_text("kappa_S", result), started)


@cli.command("kappa-k")
@click.argument("graph")
@click.option("--k", "k", type=int, required=True, help="Size of the vertex sets.")
@click.option("--method", type=click.Choice(METHODS), default="assign", show_default=True)
@pass_settings
@guarded
def kappa_k_cmd(settings: Settings, graph, k, method):
    """kappa_k(D): the minimum of kappa_S(D) over all k-sets S."""
    started = time.perf_counter()
    d = load_digraph(graph)
    result = kappa_k(d, k, jobs=settings.jobs, method=method, limits=settings.limits())
    _emit(settings, {**result.to_json(), "digraph": d.to_json()},
          _packing_text(f"kappa_{k}", result), started)


@cli.command("min-check")
@click.argument("graph")
@click.option("--k", "k", type=int, required=True)
@click.option("--ell", type=click.IntRange(min=1), required=True)
@pass_settings
@guarded
def min_check(settings: Settings, graph, k, ell):
    """Is D minimally strong subgraph (k, ell)-connected? Lists kappa_k(D - e) per arc."""
    started = time.perf_counter()
    d = load_digraph(graph)
    report = is_minimally_connected(d, k, ell, limits=settings.limits())
    lines = [f"kappa_{k} = {report.kappa_k_value}   verdict: {report.verdict}"]
    lines += [f"  without {u}->{v}: {val}" for (u, v), val in sorted(report.per_arc.items())]
    _emit(settings, {**report.to_json(), "digraph": d.to_json()}, "\n".join(lines), started)


@cli.command("ham-decomp")
@click.argument("n", type=click.IntRange(min=2))
@pass_settings
def ham_decomp(settings: Settings, n):
    """Split the complete digraph on N vertices into N - 1 Hamiltonian cycles."""
    started = time.perf_counter()
    dec = hamiltonian_decomposition(n)
    if dec is None:
        payload = {"n": n, "cycles": None, "exists": False}
        text = f"n={n}: no decomposition (exhaustive)"
    else:
        payload = {**dec.to_json(), "exists": True}
        text = "\n".join([f"n={n}: {n - 1} cycles"] + [
            "  " + " -> ".join(map(str, c + (c[0],))) for c in dec.cycles
        ])
    _emit(settings, payload, text, started)


@cli.command()
@click.option("--n", "n", type=int, required=True)
@click.option("--k", "k", type=int, required=True)
@click.option("--ell", type=click.IntRange(min=1), required=True)
@click.option("--space", type=click.Choice([ALL_DIGRAPHS, COMPLEMENT_CONSTRAINED]),
              default=COMPLEMENT_CONSTRAINED, show_default=True, help="Search space.")
@click.option("--want", type=click.Choice(["f", "F", "both"]), default="both", show_default=True)
@pass_settings
@guarded
def extremal(settings: Settings, n, k, ell, space, want):
    """Exact f(n,k,ell) and F(n,k,ell) with extremal digraphs; text output is CSV."""
    started = time.perf_counter()
    table = compute_f_F(n, k, ell, space, want=want, jobs=settings.jobs)
    _emit(settings, table.to_json(), f"{ExtremalTable.CSV_HEADER}\n{table.csv_row()}", started)


@cli.command()
@click.option("--n", "n", type=click.IntRange(4, 6), required=True)
@pass_settings
@guarded
def classify(settings: Settings, n):
    """Classify 3-arc deletion sets of K_n (no shared head or tail) up to isomorphism."""
    started = time.perf_counter()
    classes = classify_three_arc_deletions(n, jobs=settings.jobs)
    lines = [f"{'shape':<28} {'kappa_2':>7}  minimal  M"]
    for c in classes:
        arcs = " ".join(f"{u}->{v}" for u, v in c.M)
        lines.append(f"{c.shape:<28} {c.kappa_2:>7}  {'yes' if c.minimal else 'no':<7}  {arcs}")
    _emit(settings, {"n": n, "classes": [c.to_json() for c in classes]}, "\n".join(lines), started)


@cli.command()
@click.argument("suite", type=click.Choice(list(SUITES)))
@click.option("--n", "n", type=click.IntRange(4, 6), default=None,
              help="Order for the thme suite (default: 4 and 5).")
@pass_settings
@guarded
def verify(settings: Settings, suite, n):
    """Run a verification suite; exits 4 if any check fails."""
    started = time.perf_counter()
    report = run_suite(suite, seed=settings.seed, jobs=settings.jobs, n=n)
    _emit(settings, report.to_json(), report.to_text(), started)
    if not report.passed:
        raise VerificationFailed(suite)


verify.help += "\n\n\b\nSuites:\n" + "\n".join(f"  {name:<8} {title}" for name, title in SUITE_TITLES.items())


def main(argv: list[str] | None = None) -> int:
    try:
        cli.main(args=argv, prog_name="strongsub", standalone_mode=False,
                 auto_envvar_prefix=ENV_PREFIX)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.exceptions.Abort:
        click.echo("aborted", err=True)
        return EXIT_USAGE
    except click.MissingParameter as exc:
        exc.show()
        return EXIT_USAGE
    except click.BadParameter as exc:
        exc.show()
        return EXIT_INPUT
    except click.UsageError as exc:
        exc.show()
        return EXIT_USAGE
    except LimitReached as exc:
        click.echo(f"error: {exc}", err=True)
        return EXIT_LIMIT
    except VerificationFailed as exc:
        click.echo(f"verification failed: {exc}", err=True)
        return EXIT_FAILED
    except (StrongSubError, ValueError) as exc:
        click.echo(f"error: {exc}", err=True)
        return EXIT_INPUT
    return EXIT_OK


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
