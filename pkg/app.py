import functools
import logging
import sys
from typing import Dict, List, Optional

import click
from sympy import Symbol

from config.settings import Settings
from core import catalog
from core.classical import (
    SchubertVector, betti_numbers, chevalley_matrix, cup_with_h, degree_Y, dual_class, hyperplane_class,
    middle_basis, middle_matrices, pairing_matrix, product,
)
from core.errors import HypersectError, UnsupportedContextError
from core.export.report_exporter import ReportExporter
from core.gkm import class_table, classical_structure_constants
from core.poset import VarietyContext, context_for, hasse_graph_Y
from core.quantum import (
    build_EX, build_EY, build_typeA_operators, quantum_hyperplane_operator, sigma_lambda0, spectral_report,
)
from core.utils import expr_str, fraction_str, parse_root_label, root_label
from core.workflow.verify_orchestrator import VerifyOrchestrator

logger = logging.getLogger(__name__)


def configure_logging(verbose: bool, log_file: Optional[str]) -> None:
    handlers: List[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    if log_file:
        handlers.append(logging.FileHandler(log_file))
    logging.basicConfig(
        level=logging.DEBUG if verbose else getattr(logging, Settings.LOG_LEVEL.upper()),
        format=Settings.LOG_FORMAT,
        handlers=handlers,
        force=True,
    )


def handle_errors(command):
    """Report HypersectError as a single stderr line with exit status 2"""
    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except HypersectError as e:
            logger.debug("Command failed", exc_info=True)
            click.echo(f"error: {type(e).__name__}: {e}", err=True)
            sys.exit(2)
    return wrapper


def context_options(command):
    command = click.option("--allow-large", is_flag=True, help="Allow E6, E7 and E8 contexts.")(command)
    command = click.option("--variant", default="adjoint", show_default=True,
                           help="adjoint or quasi-minuscule.")(command)
    command = click.option("--rank", "rank", type=int, required=True, help="Rank of the root system.")(command)
    command = click.option("--type", "dynkin_type", required=True, help="Dynkin type A-G.")(command)
    return command


def output_options(*formats: str, default: str = "json"):
    def decorate(command):
        command = click.option("--output", "-o", type=click.Path(dir_okay=False),
                               help="Write to this file (relative to the output directory) instead of stdout.")(command)
        command = click.option("--format", "fmt", type=click.Choice(formats), default=default,
                               show_default=True)(command)
        return command
    return decorate


def load_context(dynkin_type: str, rank: int, variant: str, allow_large: bool) -> VarietyContext:
    dynkin_type = dynkin_type.upper()
    if dynkin_type in Settings.LARGE_TYPES and not allow_large:
        raise UnsupportedContextError(f"type {dynkin_type} contexts are large; pass --allow-large")
    return context_for(dynkin_type, rank, variant)


def emit(content: str, output: Optional[str]) -> None:
    if output:
        path = ReportExporter().write(content, output)
        click.echo(path, err=True)
    else:
        click.echo(content, nl=False)


def parse_roots(ctx: VarietyContext, labels) -> List[tuple]:
    roots = []
    for label in labels:
        try:
            root = parse_root_label(label, ctx.datum.rank)
        except ValueError as e:
            raise UnsupportedContextError(str(e))
        if root not in ctx:
            raise UnsupportedContextError(f"{label} is not a fixed point of {ctx.label}")
        roots.append(root)
    return roots


def parse_q_values(values) -> Dict[str, str]:
    """'2' sets every parameter, 'q1=2' sets one"""
    assignment = {}
    for value in values:
        name, _, number = value.rpartition("=")
        assignment[name or "*"] = number
    return assignment


def text_lines(data: Dict) -> str:
    return "".join(f"{key}: {value}\n" for key, value in data.items())


def matrix_rows(matrix) -> List[List[str]]:
    return [[expr_str(matrix[i, j]) for j in range(matrix.cols)] for i in range(matrix.rows)]


@click.group()
@click.option("--verbose", "-v", is_flag=True, help="Log at DEBUG level.")
@click.option("--log-file", type=click.Path(dir_okay=False), help="Also write logs to this file.")
def cli(verbose: bool, log_file: Optional[str]):
    """Classical, equivariant and quantum cohomology of hyperplane sections of adjoint and
    quasi-minuscule varieties."""
    configure_logging(verbose, log_file)
    try:
        Settings.validate()
    except ValueError as e:
        click.echo(f"error: ConfigurationError: {e}", err=True)
        sys.exit(2)


@cli.command()
@context_options
@output_options("json", "text")
@handle_errors
def info(dynkin_type, rank, variant, allow_large, fmt, output):
    """Catalog record and dimensions."""
    ctx = load_context(dynkin_type, rank, variant, allow_large)
    record = catalog.lookup(ctx.datum.dynkin_type, rank, ctx.variant)
    data = {
        **record.model_dump(),
        "dim_Y": ctx.dim_Y,
        "c1_Y": ctx.c1_Y,
        "fixed_points": len(ctx.aleph),
        "phi_aleph": [root_label(a) for a in ctx.phi_aleph],
        "aleph1": [root_label(a) for a in ctx.aleph1],
        "picard_rank": ctx.picard_rank,
        "betti": betti_numbers(ctx),
        "degree_Y": degree_Y(ctx),
    }
    exporter = ReportExporter()
    emit(exporter.render_json(data) if fmt == "json" else text_lines(data), output)


@cli.command(name="catalog")
@click.option("--max-rank", type=int, default=4, show_default=True)
@output_options("json")
@handle_errors
def catalog_dump(max_rank, fmt, output):
    """Every catalog record up to the given rank, plus the Jordan-algebra table."""
    emit(ReportExporter().render_json(catalog.catalog_document(max_rank)), output)


@cli.command()
@context_options
@output_options("dot", "json", default="dot")
@handle_errors
def hasse(dynkin_type, rank, variant, allow_large, fmt, output):
    """Hasse diagram of Y; edges new in Y are red."""
    ctx = load_context(dynkin_type, rank, variant, allow_large)
    graph = hasse_graph_Y(ctx)
    exporter = ReportExporter()
    if fmt == "dot":
        emit(exporter.render_dot(graph), output)
    else:
        emit(exporter.render_json({"context": ctx.label, **graph.to_dict()}), output)


@cli.command()
@context_options
@output_options("json", "tsv")
@handle_errors
def chevalley(dynkin_type, rank, variant, allow_large, fmt, output):
    """Classical products h . sigma_alpha."""
    ctx = load_context(dynkin_type, rank, variant, allow_large)
    exporter = ReportExporter()
    labels = [root_label(a) for a in ctx.aleph]
    if fmt == "tsv":
        matrix = chevalley_matrix(ctx)
        emit(exporter.render_tsv(matrix.tolist(), labels, labels, corner="h."), output)
        return
    data = {
        "context": ctx.label,
        "h": hyperplane_class(ctx).to_dict(),
        "products": {root_label(a): cup_with_h(ctx, a).to_dict() for a in ctx.aleph},
    }
    emit(exporter.render_json(data), output)


@cli.command()
@context_options
@click.option("--alpha", "alphas", multiple=True, help="Root label, e.g. 3a1+a2; repeatable. Default: all.")
@output_options("json")
@handle_errors
def equivariant(dynkin_type, rank, variant, allow_large, alphas, fmt, output):
    """Localized Schubert classes f_alpha of Y."""
    ctx = load_context(dynkin_type, rank, variant, allow_large)
    table = class_table(ctx)
    roots = parse_roots(ctx, alphas) if alphas else list(ctx.aleph)
    data = {"context": ctx.label, "classes": {root_label(a): table.get(a).to_dict() for a in roots}}
    emit(ReportExporter().render_json(data), output)


@cli.command()
@context_options
@click.option("--alpha", help="First factor; with --beta gives a single product.")
@click.option("--beta", help="Second factor.")
@click.option("--space", type=click.Choice(["X", "Y"]), default="Y", show_default=True)
@output_options("json", "text")
@handle_errors
def cup(dynkin_type, rank, variant, allow_large, alpha, beta, space, fmt, output):
    """Classical structure constants of Y (or X)."""
    ctx = load_context(dynkin_type, rank, variant, allow_large)
    if (alpha is None) != (beta is None):
        raise UnsupportedContextError("--alpha and --beta go together")
    if alpha is not None:
        a, b = parse_roots(ctx, [alpha, beta])
        if space == "Y":
            result = product(ctx, SchubertVector.basis(a), SchubertVector.basis(b)).to_dict()
        else:
            result = {root_label(g): fraction_str(c)
                      for (_, _, g), c in classical_structure_constants(ctx, "X", [(a, b)]).items()}
        data = {"context": ctx.label, "space": space, "alpha": alpha, "beta": beta, "product": result}
    else:
        constants = classical_structure_constants(ctx, space)
        data = {
            "context": ctx.label,
            "space": space,
            "constants": [
                {"alpha": root_label(a), "beta": root_label(b), "gamma": root_label(g), "coeff": fraction_str(c)}
                for (a, b, g), c in constants.items()
            ],
        }
    emit(ReportExporter().render_json(data) if fmt == "json" else text_lines(data), output)


@cli.command()
@context_options
@output_options("json", "tsv")
@handle_errors
def middle(dynkin_type, rank, variant, allow_large, fmt, output):
    """Matrices of the middle cohomology."""
    ctx = load_context(dynkin_type, rank, variant, allow_large)
    matrices = middle_matrices(ctx)
    exporter = ReportExporter()
    if fmt == "tsv":
        labels = [root_label(a) for a in middle_basis(ctx)]
        emit(exporter.render_tsv(matrices.intersection_blocks.tolist(), labels, labels), output)
        return
    emit(exporter.render_json({"context": ctx.label, **matrices.to_dict()}), output)


@cli.command()
@context_options
@click.option("--degree", type=int, help="Single degree; default all degrees (json only).")
@output_options("json", "tsv")
@handle_errors
def pairing(dynkin_type, rank, variant, allow_large, degree, fmt, output):
    """Poincare pairing matrices and dual classes."""
    ctx = load_context(dynkin_type, rank, variant, allow_large)
    exporter = ReportExporter()
    degrees = [degree] if degree is not None else list(range(ctx.dim_Y + 1))
    if fmt == "tsv":
        if degree is None:
            raise UnsupportedContextError("TSV output needs --degree")
        rows = [root_label(a) for a in ctx.basis_of_degree(degree)]
        cols = [root_label(a) for a in ctx.basis_of_degree(ctx.dim_Y - degree)]
        emit(exporter.render_tsv(pairing_matrix(ctx, degree).tolist(), rows, cols), output)
        return
    data = {"context": ctx.label, "degrees": {}}
    for d in degrees:
        data["degrees"][str(d)] = {
            "rows": [root_label(a) for a in ctx.basis_of_degree(d)],
            "columns": [root_label(a) for a in ctx.basis_of_degree(ctx.dim_Y - d)],
            "matrix": matrix_rows(pairing_matrix(ctx, d)),
            "duals": {root_label(a): dual_class(ctx, a).to_dict() for a in ctx.basis_of_degree(d)},
        }
    emit(exporter.render_json(data), output)


def select_operator(ctx: VarietyContext, name: str):
    if name == "EX":
        return build_EX(ctx)
    if name in ("h1", "h2"):
        return build_typeA_operators(ctx)[0 if name == "h1" else 1]
    return quantum_hyperplane_operator(ctx) if ctx.datum.dynkin_type == "A" else build_EY(ctx)


@cli.command()
@context_options
@click.option("--operator", type=click.Choice(["EY", "EX", "h1", "h2"]), default="EY", show_default=True)
@output_options("json", "tsv")
@handle_errors
def quantum(dynkin_type, rank, variant, allow_large, operator, fmt, output):
    """Quantum multiplication by the hyperplane class."""
    ctx = load_context(dynkin_type, rank, variant, allow_large)
    op = select_operator(ctx, operator)
    exporter = ReportExporter()
    if fmt == "tsv":
        labels = [root_label(a) for a in op.basis]
        emit(exporter.render_tsv(op.matrix.tolist(), labels, labels, corner=op.name), output)
        return
    emit(exporter.render_json(op.to_dict()), output)


@cli.command()
@context_options
@click.option("--operator", type=click.Choice(["EY", "EX", "h1", "h2"]), default="EY", show_default=True)
@click.option("--q", "q_values", multiple=True,
              help="Nonzero rational for the quantum parameters ('2'), or one of them ('q1=2').")
@output_options("json", "text")
@handle_errors
def spectrum(dynkin_type, rank, variant, allow_large, operator, q_values, fmt, output):
    """Exact characteristic and minimal polynomials of a quantum operator."""
    ctx = load_context(dynkin_type, rank, variant, allow_large)
    op = select_operator(ctx, operator)
    assignment = parse_q_values(q_values)
    values = {}
    for p in op.parameters:
        if str(p) in assignment or "*" in assignment:
            values[p] = assignment.get(str(p), assignment.get("*"))
    unknown = set(assignment) - {str(p) for p in op.parameters} - {"*"}
    if unknown:
        raise UnsupportedContextError(f"{op.name} has no quantum parameter {', '.join(sorted(unknown))}")
    try:
        report = spectral_report(op, {Symbol(str(p)): v for p, v in values.items()})
    except (ValueError, TypeError) as e:
        raise UnsupportedContextError(f"Bad --q value: {e}")
    data = report.model_dump()
    emit(ReportExporter().render_json(data) if fmt == "json" else text_lines(data), output)


@cli.command()
@context_options
@output_options("json", "text")
@handle_errors
def sigma(dynkin_type, rank, variant, allow_large, fmt, output):
    """The element of the h-subalgebra killed by h, and lambda_0, at q = 1."""
    ctx = load_context(dynkin_type, rank, variant, allow_large)
    element, lambda0, coefficients = sigma_lambda0(ctx)
    data = {
        "context": ctx.label,
        "sigma": element.to_dict(),
        "lambda0": fraction_str(lambda0),
        "h_coefficients": [fraction_str(c) for c in coefficients],
    }
    emit(ReportExporter().render_json(data) if fmt == "json" else text_lines(data), output)


@cli.command()
@context_options
@output_options("json", "text", default="text")
@handle_errors
def verify(dynkin_type, rank, variant, allow_large, fmt, output):
    """Run the full property suite; exit status 1 when a check fails."""
    ctx = load_context(dynkin_type, rank, variant, allow_large)
    report = VerifyOrchestrator().verify(ctx)
    if fmt == "json":
        content = ReportExporter().render_json(report.model_dump(exclude={"checks": {"__all__": {"duration"}}}))
    else:
        lines = [f"{ctx.label}: {'PASS' if report.success else 'FAIL'}"]
        for check in report.checks:
            suffix = f" ({check.error_message or check.details.get('reason', '')})" \
                if check.status in ("failed", "skipped") else ""
            lines.append(f"  {check.status:<7} {check.name}{suffix}")
        content = "\n".join(lines) + "\n"
    emit(content, output)
    if not report.success:
        sys.exit(1)


if __name__ == "__main__":
    cli()
