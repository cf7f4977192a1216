"""Command-line front end.

Every command prints plain text with a stable field order (``--structured``
switches to one key=value per line), and a run is a pure function of its
arguments plus the seed, so identical invocations produce byte-identical
output.  Refusals and invalid inputs exit nonzero after a single line
starting with ``ERROR:`` on stderr.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from fractions import Fraction

import click

from .bitset import elements
from .errors import MatroidError
from .hamilton import hamiltonian_count_identity
from .ioformats import read_graph_file, read_matroid_file, write_family_file
from .matroid import ExplicitMatroid
from .paving import DEFAULT_MINOR_LIMIT, bases_from_circuits, is_balanced, validate_paving
from .steiner import (
    build_counterexample,
    save_steiner,
    steiner_system_cached,
    verify_counterexample,
)
from .walk import (
    DEFAULT_EXPANSION_LIMIT,
    DEFAULT_GRAPH_BUDGET,
    approx_count,
    build_exchange_graph,
    edge_expansion,
    sample_bases,
)


@dataclass(frozen=True)
class RunConfig:
    """Validated knobs shared by the walk-driven commands."""

    seed: int = 0
    steps: int | None = None
    samples: int | None = None
    epsilon: float = 0.05
    expansion_limit: int = DEFAULT_EXPANSION_LIMIT
    graph_budget: int = DEFAULT_GRAPH_BUDGET
    minor_limit: int = DEFAULT_MINOR_LIMIT

    def __post_init__(self):
        if not 0 < self.epsilon < 1:
            raise MatroidError(f"epsilon must be in (0, 1), got {self.epsilon}")
        for name in ("steps", "samples"):
            value = getattr(self, name)
            if value is not None and value < 0:
                raise MatroidError(f"{name} must be non-negative, got {value}")
        for name in ("expansion_limit", "graph_budget", "minor_limit"):
            if getattr(self, name) <= 0:
                raise MatroidError(f"{name} must be positive")


def _fail(message: str):
    click.echo(f"ERROR: {message}", err=True)
    sys.exit(1)


def _guard(fn):
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except MatroidError as exc:
            _fail(str(exc))
        except OSError as exc:
            _fail(str(exc))

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


def _load_matroid(path) -> ExplicitMatroid:
    mf = read_matroid_file(path)
    if mf.kind == "bases":
        return ExplicitMatroid(mf.m, mf.r, mf.sets)
    fam = mf.to_family()
    if not validate_paving(fam):
        _fail("circuit file does not define a paving matroid")
    return bases_from_circuits(fam)


def _emit(pairs, structured):
    """pairs: list of (key, value) preserving field order."""
    if structured:
        for k, v in pairs:
            click.echo(f"{k}={v}")
    else:
        click.echo(" ".join(f"{k}={v}" for k, v in pairs))


@click.group()
def main():
    """Paving matroids, balance checking, and bases-exchange walk counting."""


@main.command("verify-counterexample")
@click.option("--pair", nargs=2, type=int, default=(0, 1), show_default=True,
              help="Distinguished point pair e f.")
@click.option("--structured", is_flag=True, help="Emit one key=value per line.")
@_guard
def cmd_verify_counterexample(pair, structured):
    """Rebuild the 24-point rank-6 example and check every count exactly."""
    e, f = pair
    system = steiner_system_cached()
    report = verify_counterexample(system, e, f)
    rows = [
        ("pair_e", report.e),
        ("pair_f", report.f),
        ("blocks_with_e", report.block_counts[0]),
        ("blocks_with_e_and_f", report.block_counts[1]),
        ("blocks_with_e_not_f", report.block_counts[2]),
        ("circuits_e_only", report.circuit_counts[0]),
        ("circuits_f_only", report.circuit_counts[1]),
        ("circuits_neither", report.circuit_counts[2]),
        ("bases_ef", report.n_ef),
        ("bases_e_only", report.n_e_not_f),
        ("bases_f_only", report.n_f_not_e),
        ("bases_neither", report.n_neither),
        ("bases_total", report.total_bases),
        ("ratio", f"{report.ratio.numerator}/{report.ratio.denominator}"),
        ("positively_correlated", str(report.positively_correlated).lower()),
    ]
    if structured:
        _emit(rows, True)
    else:
        click.echo(f"pair: e={report.e} f={report.f}")
        click.echo(
            "blocks: with_e={} with_e_and_f={} with_e_not_f={}".format(*report.block_counts)
        )
        click.echo(
            "circuits: e_only={} f_only={} neither={}".format(*report.circuit_counts)
        )
        click.echo(
            f"bases: ef={report.n_ef} e_only={report.n_e_not_f} "
            f"f_only={report.n_f_not_e} neither={report.n_neither} total={report.total_bases}"
        )
        click.echo(f"ratio={report.ratio.numerator}/{report.ratio.denominator}")
        click.echo("positively_correlated=true")


@main.command("ham")
@click.argument("graph_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--structured", is_flag=True)
@_guard
def cmd_ham(graph_file, structured):
    """Count Hamiltonian cycles of a graph via the circuit/basis identity."""
    g = read_graph_file(graph_file)
    cycles, complement, ok = hamiltonian_count_identity(g)
    m, r = len(g.edges), g.n
    from math import comb

    total = comb(m, r)
    bases = total - complement  # the enumerated basis count
    if m == r:
        click.echo(
            "warning: graph has as many edges as vertices; the cycle family "
            "leaves no bases (degenerate case)",
            err=True,
        )
    rows = [
        ("cycles", cycles),
        ("bases", bases),
        ("total", total),
        ("identity", "ok" if ok else "mismatch"),
    ]
    _emit(rows, structured)


@main.command("count")
@click.argument("matroid_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--epsilon", type=float, default=0.05, show_default=True)
@click.option("--seed", type=int, required=True)
@click.option("--steps", type=int, default=None, help="Walk length per stage (default: heuristic).")
@click.option("--samples", type=int, default=None, help="Samples per stage (default: 75/eps^2).")
@click.option("--structured", is_flag=True)
@_guard
def cmd_count(matroid_file, epsilon, seed, steps, samples, structured):
    """Approximate the number of bases of a paving matroid given by circuits."""
    cfg = RunConfig(seed=seed, steps=steps, samples=samples, epsilon=epsilon)
    mf = read_matroid_file(matroid_file)
    fam = mf.to_family()
    if not validate_paving(fam):
        _fail("circuit file does not define a paving matroid")
    result = approx_count(fam, cfg.epsilon, cfg.seed, samples=cfg.samples, steps=cfg.steps)
    from math import comb

    exact = comb(fam.m, fam.r) - len(fam.circuits)
    rows = [
        ("epsilon", epsilon),
        ("seed", seed),
        ("samples_per_stage", result.samples_per_stage),
        ("base_count", result.base_count),
    ]
    _emit(rows, structured)
    for i, rec in enumerate(result.chain):
        _emit(
            [
                ("stage", i),
                ("element", rec.element),
                ("branch", rec.branch),
                ("ratio", f"{rec.ratio.numerator}/{rec.ratio.denominator}"),
                ("steps", rec.steps),
            ],
            structured,
        )
    est = result.estimate
    rel = abs(est - exact) / exact if exact else Fraction(0)
    _emit(
        [
            ("estimate", float(est)),
            ("estimate_fraction", f"{est.numerator}/{est.denominator}"),
            ("exact", exact),
            ("relative_error", float(rel)),
        ],
        structured,
    )


@main.command("expansion")
@click.argument("matroid_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--expansion-limit", type=int, default=DEFAULT_EXPANSION_LIMIT, show_default=True)
@click.option("--graph-budget", type=int, default=DEFAULT_GRAPH_BUDGET, show_default=True)
@click.option("--structured", is_flag=True)
@_guard
def cmd_expansion(matroid_file, expansion_limit, graph_budget, structured):
    """Exact edge expansion of the bases-exchange graph (exhaustive cuts)."""
    cfg = RunConfig(expansion_limit=expansion_limit, graph_budget=graph_budget)
    matroid = _load_matroid(matroid_file)
    g = build_exchange_graph(matroid, cfg.graph_budget)
    alpha = edge_expansion(g, cfg.expansion_limit)
    _emit([("alpha", f"{alpha.numerator}/{alpha.denominator}")], structured)


@main.command("balance")
@click.argument("matroid_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--minor-limit", type=int, default=DEFAULT_MINOR_LIMIT, show_default=True)
@click.option("--structured", is_flag=True)
@_guard
def cmd_balance(matroid_file, minor_limit, structured):
    """Scan all minors for a positively correlated element pair."""
    cfg = RunConfig(minor_limit=minor_limit)
    matroid = _load_matroid(matroid_file)
    result = is_balanced(matroid, cfg.minor_limit)
    if result.balanced:
        _emit([("balanced", "true"), ("minors_checked", result.minors_checked)], structured)
    else:
        v = result.violation
        rows = [
            ("balanced", "false"),
            ("violation_deleted", ",".join(str(i) for i in elements(v.deleted))),
            ("violation_contracted", ",".join(str(i) for i in elements(v.contracted))),
            ("violation_e", v.e),
            ("violation_f", v.f),
            ("lhs", v.report.lhs),
            ("rhs", v.report.rhs),
        ]
        if structured:
            _emit(rows, True)
        else:
            click.echo("balanced=false")
            click.echo(
                "violation: deleted={{{}}} contracted={{{}}} e={} f={} lhs={} rhs={}".format(
                    rows[1][1], rows[2][1], v.e, v.f, v.report.lhs, v.report.rhs
                )
            )


@main.command("sample")
@click.argument("matroid_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--steps", type=int, required=True)
@click.option("--seed", type=int, required=True)
@click.option("--count", "n_samples", type=int, default=1, show_default=True)
@click.option("--graph-budget", type=int, default=DEFAULT_GRAPH_BUDGET, show_default=True)
@click.option("--structured", is_flag=True)
@_guard
def cmd_sample(matroid_file, steps, seed, n_samples, graph_budget, structured):
    """Sample bases via independent walks from the lexicographically least basis."""
    if n_samples < 1:
        _fail("count must be at least 1")
    cfg = RunConfig(seed=seed, steps=steps, graph_budget=graph_budget)
    matroid = _load_matroid(matroid_file)
    masks = sample_bases(matroid, steps, seed, n_samples)
    if structured:
        for i, mask in enumerate(masks):
            click.echo(f"sample_{i}={','.join(str(e) for e in elements(mask))}")
    else:
        for mask in masks:
            click.echo(" ".join(str(e) for e in elements(mask)))


@main.group()
def steiner():
    """Steiner system S(5,8,24) utilities."""


@steiner.command("export")
@click.argument("path", type=click.Path(dir_okay=False, writable=True))
@_guard
def cmd_steiner_export(path):
    """Write the 759 octads: a point-count line, then one block per line."""
    system = steiner_system_cached()
    save_steiner(system, path)
    click.echo(f"blocks=759 written={path}")


@main.group()
def counterexample():
    """The non-balanced rank-6 paving matroid on 24 points."""


@counterexample.command("export")
@click.argument("path", type=click.Path(dir_okay=False, writable=True))
@click.option("--pair", nargs=2, type=int, default=(0, 1), show_default=True)
@_guard
def cmd_counterexample_export(path, pair):
    """Write the full circuit family in the matroid text format."""
    e, f = pair
    system = steiner_system_cached()
    fam = build_counterexample(system, e, f)
    write_family_file(path, fam)
    click.echo(f"circuits={len(fam.circuits)} written={path}")


if __name__ == "__main__":
    main()
