#!/usr/bin/env python3
"""
Hamuni CLI - Main entry point
Universality checks for two-qubit Hamiltonians
"""

import json
import logging
from pathlib import Path

import click
import numpy as np
from rich.console import Console
from rich.logging import RichHandler
from rich.table import Table

from core.config import CONFIG_FILE, SEED_ENV_VAR, Settings, load_settings, save_settings
from core.document import HamiltonianDocument, load_document, save_document
from core.exceptions import DocumentError, HamuniError, PreconditionError
from core.lie import universality_dimension
from core.tridiagonal import PARAMETER_NAMES, tridiagonalize
from plugins.classification.certificate import SCHEMES, certify
from plugins.classification.three_qubit import classify3
from plugins.classification.two_qubit import classify
from plugins.dynamics.evolve import positive_time_replacement, replacement_error
from plugins.sampling.families import FAMILIES, sample_family
from plugins.sampling.survey import survey_cli

console = Console()
err_console = Console(stderr=True)

EXIT_UNIVERSAL = 0
EXIT_FAILURE = 1
EXIT_PARSE_ERROR = 2
EXIT_NON_UNIVERSAL = 10


def _setup_logging(verbose: bool) -> None:
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(message)s",
        handlers=[RichHandler(console=err_console, show_path=False)],
        force=True,
    )


def _load(ctx, input_path) -> np.ndarray:
    """Read a Hamiltonian document or exit with code 2."""
    try:
        return load_document(input_path).to_matrix()
    except DocumentError as e:
        err_console.print(f"❌ [red]{input_path}: {e}[/red]")
        ctx.exit(EXIT_PARSE_ERROR)


def _emit_json(payload) -> None:
    click.echo(json.dumps(payload, indent=2))


def _format_matrix(M) -> str:
    return np.array2string(np.asarray(M), precision=6, suppress_small=True, max_line_width=120)


@click.group()
@click.version_option(version="1.0.0")
@click.option("--json", "as_json", is_flag=True, help="Machine-readable JSON output")
@click.option("--tol", type=float, default=None, help="Override the decision tolerance")
@click.option("--config", "config_path", type=click.Path(path_type=Path), default=None,
              help=f"Settings file (default {CONFIG_FILE})")
@click.option("-v", "--verbose", is_flag=True, help="Debug logging")
@click.pass_context
def cli(ctx, as_json, tol, config_path, verbose):
    """🧮 Hamuni - universality of two-qubit Hamiltonians"""
    _setup_logging(verbose)
    ctx.ensure_object(dict)
    try:
        settings = load_settings(config_path)
    except (ValueError, OSError) as e:
        err_console.print(f"❌ [red]Could not load settings: {e}[/red]")
        ctx.exit(EXIT_FAILURE)
    ctx.obj["settings"] = settings.with_overrides(tol=tol)
    ctx.obj["json"] = as_json
    ctx.obj["config_path"] = config_path or CONFIG_FILE


@cli.group()
def config():
    """Configuration management"""
    pass


@config.command("init")
@click.option("--force", is_flag=True, help="Overwrite an existing file")
@click.pass_context
def config_init(ctx, force):
    """Write the default settings file"""
    path = ctx.obj["config_path"]
    if path.exists() and not force:
        console.print(f"⚠️  {path} already exists (use --force to overwrite)")
        return
    save_settings(Settings(), path)
    console.print(f"✅ Settings written to [bold]{path}[/bold]")


@config.command("show")
@click.pass_context
def config_show(ctx):
    """Show the active settings"""
    settings = ctx.obj["settings"]
    if ctx.obj["json"]:
        _emit_json(settings.to_dict())
        return
    table = Table(title="🧮 Hamuni Settings")
    table.add_column("Key", style="cyan")
    table.add_column("Value", style="green")
    for key, value in settings.to_dict()["tolerances"].items():
        table.add_row(f"tolerances.{key}", str(value))
    table.add_row("seed", str(settings.seed))
    table.add_row("n_max", str(settings.n_max))
    console.print(table)


@cli.command("classify")
@click.argument("input_path", type=click.Path())
@click.pass_context
def cmd_classify(ctx, input_path):
    """Classify a two-qubit Hamiltonian (exit 0 universal, 10 not)"""
    H = _load(ctx, input_path)
    tolerances = ctx.obj["settings"].tolerances
    report = classify(H, tol=tolerances.condition_tol, zero_tol=tolerances.zero_tol)

    if ctx.obj["json"]:
        _emit_json(report.to_dict())
    else:
        table = Table(title=f"🔬 Classification: {input_path}")
        table.add_column("Condition", style="cyan")
        table.add_column("Holds", style="yellow")
        table.add_row("T-similar to local", str(report.cond_t_similar_local))
        table.add_row("Shares eigenvector with T", str(report.cond_shared_eigvec))
        table.add_row("Traceless", str(report.cond_traceless))
        console.print(table)
        xi = report.tridiagonal
        console.print("Ξ = " + ", ".join(f"{k}={v:.6g}" for k, v in zip(PARAMETER_NAMES, xi.params))
                      + f" (type {xi.form_type})")
        if report.is_borderline:
            console.print(f"⚠️  Borderline quantities: {[k for k, v in report.borderline.items() if v]}")
        if report.is_universal:
            console.print("✅ [green]Universal[/green]")
        else:
            console.print("❌ [red]Not universal[/red]")

    ctx.exit(EXIT_UNIVERSAL if report.is_universal else EXIT_NON_UNIVERSAL)


@cli.command("tridiag")
@click.argument("input_path", type=click.Path())
@click.pass_context
def cmd_tridiag(ctx, input_path):
    """Show the tridiagonal normal form and its conjugator"""
    H = _load(ctx, input_path)
    xi = tridiagonalize(H, zero_tol=ctx.obj["settings"].tolerances.zero_tol)
    if ctx.obj["json"]:
        payload = xi.to_dict()
        payload["conjugator"] = [[[float(z.real), float(z.imag)] for z in row] for row in xi.conjugator]
        _emit_json(payload)
        return
    table = Table(title="📐 Tridiagonal form")
    for name in PARAMETER_NAMES:
        table.add_column(name, style="cyan")
    table.add_row(*(f"{v:.10g}" for v in xi.params))
    console.print(table)
    console.print(f"Type: [bold]{xi.form_type}[/bold]")
    console.print("Conjugator P (P H P† = Ξ):")
    console.print(_format_matrix(xi.conjugator))


@cli.command("lie-dim")
@click.argument("input_path", type=click.Path())
@click.option("--qubits", type=click.Choice(["2", "3"]), default="2", help="Register size")
@click.option("--rank-tol", type=float, default=None, help="Residual threshold for new closure elements")
@click.pass_context
def cmd_lie_dim(ctx, input_path, qubits, rank_tol):
    """Dimension of the Lie closure of H on all qubit pairs"""
    H = _load(ctx, input_path)
    n = int(qubits)
    rank_tol = ctx.obj["settings"].tolerances.rank_tol if rank_tol is None else rank_tol
    dim = universality_dimension(H, n, rank_tol=rank_tol)
    full = 4 ** n
    if ctx.obj["json"]:
        _emit_json({"qubits": n, "dimension": dim, "full": full, "universal": dim == full})
        return
    marker = "✅" if dim == full else "❌"
    console.print(f"{marker} dim 𝓛 = [bold]{dim}[/bold] of {full} on {n} qubits")


@cli.command("certify")
@click.argument("input_path", type=click.Path())
@click.option("--scheme", type=click.Choice(SCHEMES), default="paper", help="Certificate construction")
@click.pass_context
def cmd_certify(ctx, input_path, scheme):
    """Build a universality certificate (exit 0 iff independent)"""
    H = _load(ctx, input_path)
    tolerances = ctx.obj["settings"].tolerances
    try:
        if scheme == "paper":
            certificate = certify(H, scheme, tol=tolerances.condition_tol)
        else:
            certificate = certify(H, scheme, rank_tol=tolerances.dbe_rank_tol)
    except PreconditionError as e:
        if ctx.obj["json"]:
            _emit_json({"scheme": scheme, "independent": False, "error": str(e)})
        else:
            console.print(f"❌ [red]No certificate: {e}[/red]")
        ctx.exit(EXIT_FAILURE)

    if ctx.obj["json"]:
        _emit_json(certificate.to_dict())
    else:
        table = Table(title=f"📜 Certificate ({scheme} scheme, {certificate.basis} basis)")
        table.add_column("Element", style="cyan")
        table.add_column("Construction", style="green")
        table.add_column("Residual", style="yellow")
        for el in certificate.elements:
            residual = "-" if el.canonical_residual is None else f"{el.canonical_residual:.2e}"
            table.add_row(el.label, el.formula, residual)
        console.print(table)
        marker = "✅" if certificate.independent else "❌"
        console.print(f"{marker} rank {certificate.rank}/16")
    ctx.exit(EXIT_UNIVERSAL if certificate.independent else EXIT_FAILURE)


@cli.command("classify3")
@click.argument("input_path", type=click.Path())
@click.pass_context
def cmd_classify3(ctx, input_path):
    """Three-qubit universality report (exit 0 universal, 10 not)"""
    H = _load(ctx, input_path)
    tolerances = ctx.obj["settings"].tolerances
    report = classify3(H, tol=tolerances.condition_tol, rank_tol=tolerances.rank_tol)
    if ctx.obj["json"]:
        _emit_json(report.to_dict())
    else:
        table = Table(title=f"🔬 Three-qubit report: {input_path}")
        table.add_column("Condition", style="cyan")
        table.add_column("Holds", style="yellow")
        for name, hit in report.hits.items():
            table.add_row(name, str(hit))
        console.print(table)
        console.print(f"dim 𝓛 on three qubits: [bold]{report.closure_dimension}[/bold]")
        console.print(f"Verdict: [bold]{report.verdict.value}[/bold]")
    ctx.exit(EXIT_UNIVERSAL if report.verdict.value == "universal" else EXIT_NON_UNIVERSAL)


@cli.command("replace-time")
@click.argument("input_path", type=click.Path())
@click.option("--tau", type=float, required=True, help="Negative evolution time to replace")
@click.option("--epsilon", type=float, default=1e-3, help="Allowed operator-norm error")
@click.option("--t-max", type=float, default=None, help="Largest acceptable positive time")
@click.pass_context
def cmd_replace_time(ctx, input_path, tau, epsilon, t_max):
    """Replace e^{iHτ}, τ < 0, by e^{iHt} with t > 0"""
    H = _load(ctx, input_path)
    try:
        result = positive_time_replacement(H, tau, epsilon, t_max=t_max, n_max=ctx.obj["settings"].n_max)
    except ValueError as e:
        err_console.print(f"❌ [red]{e}[/red]")
        ctx.exit(EXIT_FAILURE)
    if result is None:
        if ctx.obj["json"]:
            _emit_json({"found": False})
        else:
            console.print("❌ [red]No replacement within the search range[/red]")
        ctx.exit(EXIT_FAILURE)
    check = replacement_error(H, tau, result.t)
    if ctx.obj["json"]:
        _emit_json({"found": True, "n": result.n, "t": result.t, "error": result.error, "verified_error": check})
    else:
        console.print(f"✅ n = [bold]{result.n}[/bold], t = {result.t:.12g}, ‖e^(iHτ) − e^(iHt)‖ = {check:.3e}")


@cli.command("sample")
@click.option("--family", type=click.Choice(sorted(FAMILIES)), default="generic", help="Hamiltonian family")
@click.option("--count", type=int, default=None, help="Number of samples")
@click.option("--seed", type=int, default=None, envvar=SEED_ENV_VAR, help="Base seed")
@click.option("--output-dir", type=click.Path(path_type=Path), default=None,
              help="Write each sample as a document file")
@click.pass_context
def cmd_sample(ctx, family, count, seed, output_dir):
    """Draw verified samples from a Hamiltonian family"""
    settings = ctx.obj["settings"]
    count = settings.sample_count if count is None else count
    seed = settings.seed if seed is None else seed
    tolerances = settings.tolerances

    table = Table(title=f"🎲 {family} samples (seed {seed})")
    table.add_column("#", style="cyan")
    table.add_column("Verdict", style="yellow")
    table.add_column("Trace", style="green")

    try:
        for sample in sample_family(family, count, seed):
            report = classify(sample.matrix, tol=tolerances.condition_tol, zero_tol=tolerances.zero_tol)
            doc = HamiltonianDocument.from_matrix(sample.matrix, name=f"{family}-{sample.index:04d}", seed=seed)
            if output_dir is not None:
                save_document(doc, Path(output_dir) / f"{doc.name}.json")
            if ctx.obj["json"]:
                click.echo(json.dumps({"index": sample.index, "family": family, "verdict": report.verdict.value,
                                       "document": doc.to_dict()}))
            else:
                table.add_row(str(sample.index), report.verdict.value, f"{report.trace:.3e}")
    except HamuniError as e:
        err_console.print(f"❌ [red]{e}[/red]")
        ctx.exit(EXIT_FAILURE)

    if not ctx.obj["json"]:
        console.print(table)
        if output_dir is not None:
            console.print(f"📁 Documents written to [bold]{output_dir}[/bold]")


@cli.command("survey")
@click.option("--family", "families", multiple=True, type=click.Choice(sorted(FAMILIES)),
              help="Families to include (default all)")
@click.option("--count", type=int, default=None, help="Samples per family")
@click.option("--seed", type=int, default=None, envvar=SEED_ENV_VAR, help="Base seed")
@click.option("--qubits", type=click.Choice(["2", "3"]), multiple=True, default=["2"], help="Register sizes")
@click.option("--output", type=click.Path(path_type=Path), default=None, help="CSV summary file")
@click.pass_context
def cmd_survey(ctx, families, count, seed, qubits, output):
    """Largest Lie-closure dimension per family"""
    settings = ctx.obj["settings"]
    summary = survey_cli(
        families=list(families) or None,
        count=settings.sample_count if count is None else count,
        seed=settings.seed if seed is None else seed,
        qubits=[int(q) for q in qubits],
        output=output,
    )
    if ctx.obj["json"]:
        _emit_json(json.loads(summary.to_json(orient="records")))
        return
    table = Table(title="📊 Closure dimensions by family")
    for column in summary.columns:
        table.add_column(str(column), style="cyan" if column == "family" else "green")
    for row in summary.itertuples(index=False):
        table.add_row(*(str(v) for v in row))
    console.print(table)
    if output is not None:
        console.print(f"💾 Summary saved to [bold]{output}[/bold]")


def main():
    cli(obj={})


if __name__ == "__main__":
    main()
