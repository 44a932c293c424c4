import logging
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Any, Callable, Optional

import typer
from rich.console import Console
from rich.logging import RichHandler
from rich.traceback import install as install_rich_traceback_handler

from . import checks
from .bounds import bound_catalog
from .certificates import (
    certificate_from_json,
    certificate_to_json,
    charging_certificate,
    embedding_certificate,
    engine_certificate,
    hierarchy_certificate,
    layout_certificate,
    model_certificate,
    order_certificate,
    td_certificate,
    verify_certificate,
)
from .colourings import col_shallow_order, exact_col, verify_nonrepetitive, verify_p_centred
from .core import Core
from .decompositions import normalise
from .dependencies import Dependencies, OracleLimits
from .discovery import discover_sections, list_checks
from .engine import EngineInput, gpst_shallow, quotient_engine
from .enums import Gadget, GraphClass, LogLevel, ProductKind, ReachMode
from .errors import CheckerError, InputError, ResourceError
from .gadgets import (
    cluster_embed,
    fanbundle_model,
    ic_planar_clusters,
    kplanar_model,
    shortcut_gap_charging,
    string_model,
)
from .layouts import exact_queue_number, queue_shallow, strong_product_queue_claim, verify_layout
from .lower_bounds import build_grid_hierarchy, check_hierarchy
from .minors import clique_lift_model, contraction_model, power_model, shortcut_to_model
from .planarise import exhaustive_gap_charging, friend_assignment, gap_charging, planarize
from .products import lex_product, strong_product
from .schema import SCHEMA_VERSION, Certificate, Claim, Verdict
from .serialise import (
    bundles_from_json,
    clique_lift_from_json,
    clusters_from_json,
    colouring_from_json,
    curves_from_json,
    drawing_from_json,
    graph_from_json,
    graph_to_json,
    layout_from_json,
    model_from_json,
    order_from_json,
    partition_from_json,
    shortcuts_from_json,
    td_from_json,
)
from .template import template
from .treewidth import exact_treewidth
from .util import decoding, load_json, write_json

EXIT_ACCEPT, EXIT_REJECT, EXIT_INPUT, EXIT_RESOURCE = 0, 1, 2, 3

app = typer.Typer(help="Certificates for product structure and shallow minors.")
engine_app = typer.Typer(help="Quotient engine over an (H,L)-partition.")
app.add_typer(engine_app, name="engine")
lowerbound_app = typer.Typer(help="The 1-gap-planar grid hierarchy.")
app.add_typer(lowerbound_app, name="lowerbound")


@dataclass
class Settings:
    seed: int
    instances: int
    jobs: int
    limits: OracleLimits
    show_locals: bool
    console: Console


def install_rich_handlers(level: str, show_locals: bool, console: Console):
    install_rich_traceback_handler(show_locals=show_locals, console=console)
    logging.basicConfig(
        level=logging._nameToLevel[level.upper()],
        format="%(message)s",
        datefmt="[%X]",
        handlers=[
            RichHandler(rich_tracebacks=True, tracebacks_show_locals=show_locals, console=console)
        ],
        force=True,
    )


INPUT = typer.Option(..., "--input", "-i", help="JSON input file")
OUTPUT = typer.Option(None, "--output", "-o", help="Write JSON here instead of standard output")


@app.callback()
def main(
    ctx: typer.Context,
    seed: int = typer.Option(0, envvar="PSC_SEED", help="Seed for every randomised step"),
    budget: Optional[int] = typer.Option(
        None,
        envvar="PSC_BUDGET",
        help="Vertex budget of the exact treewidth, queue-number and colouring oracles",
    ),
    instances: int = typer.Option(
        100, envvar="PSC_INSTANCES", help="Random instances per property check"
    ),
    jobs: int = typer.Option(1, envvar="PSC_JOBS", help="Worker processes for exact oracles"),
    treewidth_limit: Optional[int] = typer.Option(
        None,
        envvar="PSC_TREEWIDTH_LIMIT",
        help=f"Treewidth oracle vertex limit [default: --budget or {OracleLimits.treewidth}]",
    ),
    queue_limit: Optional[int] = typer.Option(
        None,
        envvar="PSC_QUEUE_LIMIT",
        help=f"Queue-number oracle vertex limit [default: --budget or {OracleLimits.queue}]",
    ),
    col_limit: Optional[int] = typer.Option(
        None,
        envvar="PSC_COL_LIMIT",
        help=f"Colouring oracle vertex limit [default: --budget or {OracleLimits.colouring}]",
    ),
    centred_limit: int = typer.Option(
        OracleLimits.centred, envvar="PSC_CENTRED_LIMIT", help="Centred-colouring vertex limit"
    ),
    log_level: LogLevel = typer.Option(
        LogLevel.INFO.value,
        envvar="PSC_LOG_LEVEL",
        help="Log level threshold",
    ),
    show_locals: bool = typer.Option(
        False,
        help="Show local variables in error tracebacks",
    ),
):
    console = Console(stderr=True, record=True)
    install_rich_handlers(log_level, show_locals, console)
    ctx.obj = Settings(
        seed=seed,
        instances=instances,
        jobs=max(jobs, 1),
        limits=OracleLimits.resolve(
            budget,
            treewidth=treewidth_limit,
            queue=queue_limit,
            colouring=col_limit,
            centred=centred_limit,
        ),
        show_locals=show_locals,
        console=console,
    )


def _emit(document: dict[str, Any], output: Optional[Path]):
    text = write_json(document, output)
    if output is None:
        typer.echo(text, nl=False)


def _verdict_document(verdict: Verdict) -> dict[str, Any]:
    return {"schema": SCHEMA_VERSION, **asdict(verdict)}


def _run(ctx: typer.Context, action: Callable[[], tuple[dict[str, Any], int]], output):
    """Run a command body, map the error hierarchy onto exit codes and emit its document."""
    settings: Settings = ctx.obj
    try:
        document, code = action()
    except InputError as ex:
        logging.error(f"[bold red]Input error:[/] {ex}", extra={"markup": True})
        raise typer.Exit(EXIT_INPUT)
    except ResourceError as ex:
        logging.error(f"[bold red]Over budget:[/] {ex}", extra={"markup": True})
        raise typer.Exit(EXIT_RESOURCE)
    except CheckerError:
        settings.console.print_exception(show_locals=settings.show_locals)
        raise typer.Exit(EXIT_REJECT)
    _emit(document, output)
    raise typer.Exit(code)


def _certified(cert: Certificate) -> tuple[dict[str, Any], int]:
    """Emit a certificate once it re-verifies from its own payload."""
    verdict = verify_certificate(cert)
    if not verdict:
        logging.error(f"Certificate rejected: {verdict.clause} {verdict.witness}")
        return certificate_to_json(cert), EXIT_REJECT
    return certificate_to_json(cert), EXIT_ACCEPT


def _field(document: dict[str, Any], name: str) -> Any:
    with decoding("input"):
        return document[name]


@app.command()
def product(
    ctx: typer.Context,
    input: Path = INPUT,
    output: Optional[Path] = OUTPUT,
    kind: ProductKind = typer.Option(ProductKind.STRONG.value, help="Product to build"),
):
    """Strong or lexicographic product of the graphs "g" and "h"."""

    def action():
        document = load_json(input)
        g = graph_from_json(_field(document, "g"))
        h = graph_from_json(_field(document, "h"))
        build = strong_product if kind == ProductKind.STRONG else lex_product
        return {"schema": SCHEMA_VERSION, "graph": graph_to_json(build(g, h))}, EXIT_ACCEPT

    _run(ctx, action, output)


@app.command()
def power(
    ctx: typer.Context,
    input: Path = INPUT,
    output: Optional[Path] = OUTPUT,
    k: int = typer.Option(..., "--k", help="Exponent of the power"),
):
    """Shallow model of G^k in G ∘ edgeless(d+1)."""

    def action():
        model = power_model(graph_from_json(load_json(input)), k)
        claim = Claim("radius", k // 2, model.depth, parameters={"k": k})
        return _certified(model_certificate(model, k // 2, claims=[claim]))

    _run(ctx, action, output)


@app.command()
def decompose(ctx: typer.Context, input: Path = INPUT, output: Optional[Path] = OUTPUT):
    """Normalise the tree-decomposition "td" of "graph" (an optimal one when absent)."""

    def action():
        document = load_json(input)
        g = graph_from_json(_field(document, "graph"))
        if "td" in document:
            td = td_from_json(document["td"])
        else:
            _, td = exact_treewidth(g, limit=ctx.obj.limits.treewidth)
        ntd = normalise(td, g)
        claim = Claim("width", td.width, ntd.width, "==")
        return _certified(td_certificate(g, ntd, claims=[claim], notes=["normalised"]))

    _run(ctx, action, output)


@app.command()
def treewidth(ctx: typer.Context, input: Path = INPUT, output: Optional[Path] = OUTPUT):
    """Exact treewidth with a decomposition of that width."""

    def action():
        g = graph_from_json(load_json(input))
        value, td = exact_treewidth(g, limit=ctx.obj.limits.treewidth)
        claim = Claim("treewidth", value, td.width, "==")
        return _certified(td_certificate(g, td, claims=[claim]))

    _run(ctx, action, output)


def _gadget(gadget: Gadget, document: dict[str, Any], k: Optional[int], delta: Optional[int]):
    def required(name: str, value: Optional[int]) -> int:
        if value is None:
            raise InputError(f"Gadget {gadget.value} needs --{name}")
        return value

    if gadget == Gadget.CONTRACTION:
        host = graph_from_json(_field(document, "host"))
        groups = _field(document, "groups")
        return model_certificate(contraction_model(host, groups))
    if gadget == Gadget.KPLANAR:
        k = required("k", k)
        return model_certificate(kplanar_model(drawing_from_json(document), k))
    if gadget == Gadget.STRING:
        delta = required("delta", delta)
        return model_certificate(string_model(curves_from_json(document), delta))
    if gadget == Gadget.FANBUNDLE:
        k = required("k", k)
        return model_certificate(fanbundle_model(bundles_from_json(document), k))
    if gadget == Gadget.IC_PLANAR:
        clusters = ic_planar_clusters(drawing_from_json(document))
    else:
        clusters = clusters_from_json(document)
    return embedding_certificate(clusters.g, cluster_embed(clusters))


@app.command()
def model(
    ctx: typer.Context,
    input: Path = INPUT,
    output: Optional[Path] = OUTPUT,
    gadget: Optional[Gadget] = typer.Option(
        None, help="Build a model with this gadget instead of checking a given one"
    ),
    k: Optional[int] = typer.Option(None, "--k", help="Crossing or bundle parameter"),
    delta: Optional[int] = typer.Option(None, "--delta", help="Events per curve"),
):
    """Check the minor model under "model" at depth "r", or build one with a gadget."""

    def action():
        document = load_json(input)
        if gadget is not None:
            return _certified(_gadget(gadget, document, k, delta))
        m = model_from_json(_field(document, "model"))
        return _certified(model_certificate(m, document.get("r")))

    _run(ctx, action, output)


@app.command()
def shortcut(
    ctx: typer.Context,
    input: Path = INPUT,
    output: Optional[Path] = OUTPUT,
    gap: bool = typer.Option(False, help="Emit the gap charging of its drawing instead"),
):
    """Topological model (or gap charging) of G^P for a (k,d)-shortcut system."""

    def action():
        system = shortcuts_from_json(load_json(input))
        if gap:
            drawing, charging = shortcut_gap_charging(system)
            claim = Claim("gap", charging.k, max(charging.load().values(), default=0))
            return _certified(charging_certificate(drawing, charging, claims=[claim]))
        return _certified(model_certificate(shortcut_to_model(system)))

    _run(ctx, action, output)


@app.command()
def cliquelift(ctx: typer.Context, input: Path = INPUT, output: Optional[Path] = OUTPUT):
    """1-shallow model of a d-clique lift."""

    def action():
        lift = clique_lift_from_json(load_json(input))
        return _certified(model_certificate(clique_lift_model(lift), 1))

    _run(ctx, action, output)


def _engine_input(
    document: dict[str, Any], normalise_td: bool, r: Optional[int] = None
) -> EngineInput:
    partition = partition_from_json(_field(document, "partition"))
    h_td = td_from_json(_field(document, "h_td"))
    if normalise_td:
        h_td = normalise(h_td, partition.quotient_h)
    if r is None:
        with decoding("engine input"):
            r = int(document["r"])
    return EngineInput(
        g=graph_from_json(_field(document, "g")),
        partition=partition,
        h_td=h_td,
        model=model_from_json(_field(document, "model")),
        r=r,
    )


@engine_app.command("run")
def engine_run(
    ctx: typer.Context,
    input: Path = INPUT,
    output: Optional[Path] = OUTPUT,
    normalise_td: bool = typer.Option(
        False, "--normalise", help="Normalise h_td before running the engine"
    ),
    r: Optional[int] = typer.Option(None, "--r", help='Model depth, overrides "r" of the input'),
):
    """Run the quotient engine and emit an engine bundle."""

    def action():
        inp = _engine_input(load_json(input), normalise_td, r)
        return _certified(engine_certificate(inp, quotient_engine(inp)))

    _run(ctx, action, output)


@app.command()
def gpst(ctx: typer.Context, input: Path = INPUT, output: Optional[Path] = OUTPUT):
    """Embed an r-shallow minor of H ⊠ P ⊠ K_ℓ into J ⊠ P ⊠ K_(ℓ(2r+1)²)."""

    def action():
        document = load_json(input)
        h = graph_from_json(_field(document, "h"))
        m = model_from_json(_field(document, "model"))
        with decoding("gpst input"):
            ell, r = int(document["l"]), int(document["r"])
        result = gpst_shallow(
            m,
            h,
            graph_from_json(_field(document, "p")),
            ell,
            normalise(td_from_json(_field(document, "h_td")), h),
            r,
        )
        logging.debug(f"J has {result.engine.j.number_of_nodes()} nodes")
        return _certified(
            embedding_certificate(
                m.guest, result.witness, claims=result.claims, notes=result.engine.notes
            )
        )

    _run(ctx, action, output)


@app.command()
def planarise(ctx: typer.Context, input: Path = INPUT, output: Optional[Path] = OUTPUT):
    """Replace every crossing of the drawing by a dummy vertex."""

    def action():
        result = planarize(drawing_from_json(load_json(input)))
        document = {
            "schema": SCHEMA_VERSION,
            "plane": graph_to_json(result.plane),
            "dummies": {str(i): v for i, v in result.dummies.items()},
            "paths": [[*e, list(route)] for e, route in sorted(result.paths.items())],
        }
        return document, EXIT_ACCEPT

    _run(ctx, action, output)


@app.command()
def gap(
    ctx: typer.Context,
    input: Path = INPUT,
    output: Optional[Path] = OUTPUT,
    k: int = typer.Option(..., "--k", help="Charges allowed per edge"),
    exhaustive: bool = typer.Option(False, help="Cross-check with the brute-force oracle"),
):
    """Find a k-gap charging of the drawing; exit 1 when none exists."""

    def action():
        drawing = drawing_from_json(load_json(input))
        charging = gap_charging(drawing, k)
        if exhaustive:
            brute = exhaustive_gap_charging(drawing, k, limit=ctx.obj.limits.gap)
            if (brute is None) != (charging is None):
                logging.error("Flow and exhaustive gap-charging oracles disagree")
                return _verdict_document(Verdict.reject("oracle-agreement")), EXIT_REJECT
        if charging is None:
            return _verdict_document(Verdict.reject("infeasible", measured=k)), EXIT_REJECT
        claim = Claim("gap", k, max(charging.load().values(), default=0))
        return _certified(charging_certificate(drawing, charging, claims=[claim]))

    _run(ctx, action, output)


@app.command()
def friend(ctx: typer.Context, input: Path = INPUT, output: Optional[Path] = OUTPUT):
    """Well-behaved friend assignment of a simple fan-planar drawing."""

    def action():
        assignment = friend_assignment(drawing_from_json(load_json(input)))
        document = {
            "schema": SCHEMA_VERSION,
            "friend": [[*e, w] for e, w in sorted(assignment.friend.items())],
            "split": [[*e, i] for e, i in sorted(assignment.split.items())],
        }
        return document, EXIT_ACCEPT

    _run(ctx, action, output)


@app.command()
def layout(ctx: typer.Context, input: Path = INPUT, output: Optional[Path] = OUTPUT):
    """Queue layout of the guest of "model" from the host "layout"."""

    def action():
        document = load_json(input)
        m = model_from_json(_field(document, "model"))
        result = queue_shallow(m, layout_from_json(_field(document, "layout")), document.get("r"))
        notes = result.notes + [f"keyed layout uses {result.layout.queue_count} queues"]
        return _certified(
            layout_certificate(m.guest, result.compacted, claims=result.claims, notes=notes)
        )

    _run(ctx, action, output)


@app.command()
def qn(
    ctx: typer.Context,
    input: Path = INPUT,
    output: Optional[Path] = OUTPUT,
    product: int = typer.Option(
        0, "--product", help="Also check the strong product with K_l for this l"
    ),
):
    """Exact queue-number with an optimal layout."""

    def action():
        g = graph_from_json(load_json(input))
        limits = ctx.obj.limits
        value, optimal = exact_queue_number(g, limit=limits.queue, jobs=ctx.obj.jobs)
        claims = [Claim("queue-number", value, verify_layout(g, optimal).measured, "==")]
        if product:
            claims.append(strong_product_queue_claim(g, product, limit=limits.queue))
        return _certified(layout_certificate(g, optimal, claims=claims))

    _run(ctx, action, output)


@app.command()
def colnum(
    ctx: typer.Context,
    input: Path = INPUT,
    output: Optional[Path] = OUTPUT,
    s: int = typer.Option(1, "--s", help="Reach radius"),
    mode: ReachMode = typer.Option(ReachMode.STRONG.value, help="Strong or weak reachability"),
):
    """Exact strong or weak s-colouring number with an optimal order."""

    def action():
        g = graph_from_json(load_json(input))
        value, order = exact_col(g, s, mode, limit=ctx.obj.limits.colouring, jobs=ctx.obj.jobs)
        claim = Claim(f"{mode.value}-col", value, value, "==", parameters={"s": s})
        return _certified(order_certificate(g, order, s, mode, claims=[claim]))

    _run(ctx, action, output)


@app.command()
def colorder(
    ctx: typer.Context,
    input: Path = INPUT,
    output: Optional[Path] = OUTPUT,
    s: int = typer.Option(1, "--s", help="Reach radius"),
    mode: ReachMode = typer.Option(ReachMode.STRONG.value, help="Strong or weak reachability"),
):
    """Guest order of an r-shallow minor from the host "order"."""

    def action():
        document = load_json(input)
        m = model_from_json(_field(document, "model"))
        transfer = col_shallow_order(m, order_from_json(document), s, mode)
        return _certified(
            order_certificate(m.guest, transfer.order, s, mode, claims=[transfer.claim])
        )

    _run(ctx, action, output)


@app.command()
def nonrep(
    ctx: typer.Context,
    input: Path = INPUT,
    output: Optional[Path] = OUTPUT,
    max_half: int = typer.Option(3, "--max-half", help="Longest half-path to inspect"),
):
    """Check that "colouring" has no repetitive path on "graph"."""

    def action():
        document = load_json(input)
        verdict = verify_nonrepetitive(
            graph_from_json(_field(document, "graph")), colouring_from_json(document), max_half
        )
        return _verdict_document(verdict), EXIT_ACCEPT if verdict else EXIT_REJECT

    _run(ctx, action, output)


@app.command()
def centred(
    ctx: typer.Context,
    input: Path = INPUT,
    output: Optional[Path] = OUTPUT,
    p: int = typer.Option(..., "--p", help="Centring parameter"),
):
    """Check that "colouring" is p-centred on "graph"."""

    def action():
        document = load_json(input)
        verdict = verify_p_centred(
            graph_from_json(_field(document, "graph")),
            colouring_from_json(document),
            p,
            limit=ctx.obj.limits.centred,
        )
        return _verdict_document(verdict), EXIT_ACCEPT if verdict else EXIT_REJECT

    _run(ctx, action, output)


@lowerbound_app.command("build")
def lowerbound_build(
    ctx: typer.Context,
    output: Optional[Path] = OUTPUT,
    n: int = typer.Option(2, "--n", help="Grid scale"),
    k: int = typer.Option(1, "--k", help="Number of levels above the base grid"),
    check: bool = typer.Option(
        False, "--check", help="Check the hierarchy and emit its report instead of the drawing"
    ),
):
    """Build the grid hierarchy as a drawing with its k-gap charging."""

    def action():
        limits = ctx.obj.limits
        hierarchy = build_grid_hierarchy(n, k, vertex_budget=limits.hierarchy)
        if not check:
            charging = hierarchy.charging
            claim = Claim("gap", k, max(charging.load().values(), default=0))
            return _certified(charging_certificate(hierarchy.embedded, charging, claims=[claim]))
        report = check_hierarchy(hierarchy, tw_limit=limits.treewidth)
        document, code = _certified(hierarchy_certificate(hierarchy, report))
        return document, code if report.accepted else EXIT_REJECT

    _run(ctx, action, output)


@app.command()
def verify(
    ctx: typer.Context,
    certificate: Path = typer.Argument(...),
    output: Optional[Path] = OUTPUT,
):
    """Re-check a certificate from its payload alone."""

    def action():
        verdict = verify_certificate(certificate_from_json(load_json(certificate)))
        if not verdict:
            logging.info(f"[bold red]REJECTED[/] {verdict.clause}", extra={"markup": True})
        return _verdict_document(verdict), EXIT_ACCEPT if verdict else EXIT_REJECT

    _run(ctx, action, output)


def _parameters(values: list[str]) -> dict[str, int]:
    parameters = {}
    for value in values:
        name, _, number = value.partition("=")
        if not name or not number.isdigit():
            raise InputError(f'Parameter "{value}" is not of the form name=integer')
        parameters[name] = int(number)
    return parameters


@app.command()
def bounds(
    ctx: typer.Context,
    output: Optional[Path] = OUTPUT,
    graph_class: GraphClass = typer.Option(..., "--class", help="Graph class"),
    parameter: list[str] = typer.Option(
        [], "--param", "-p", help='Class parameter "name=value", may be repeated'
    ),
):
    """Closed-form bounds for a graph class."""

    def action():
        table = bound_catalog(graph_class, **_parameters(parameter))
        return table.to_json(), EXIT_ACCEPT

    _run(ctx, action, output)


@app.command()
def suite(
    ctx: typer.Context,
    output: Optional[Path] = OUTPUT,
    checks_to_run: list[str] = typer.Option(
        [],
        "--check",
        help=(
            'Specify check "section_file_name.check_class_name" '
            'or section "section_file_name" to run. '
            "Can be used multiple times to specify multiple checks or sections."
        ),
    ),
    report_path: Optional[Path] = typer.Option(
        None, "--report", help="Write an HTML report here, with a JSON copy next to it"
    ),
    list_only: bool = typer.Option(False, "--list", help="Print the selectable checks and exit"),
):
    """Run the randomised property suites."""
    settings: Settings = ctx.obj
    if list_only:
        for selector in list_checks(checks):
            typer.echo(selector)
        raise typer.Exit(EXIT_ACCEPT)
    dependencies = Dependencies(
        seed=settings.seed,
        jobs=settings.jobs,
        instances=settings.instances,
        limits=settings.limits,
    )
    try:
        sections = discover_sections(checks, list(checks_to_run))
    except InputError as ex:
        logging.error(f"[bold red]Input error:[/] {ex}", extra={"markup": True})
        raise typer.Exit(EXIT_INPUT)
    core = Core(sections=sections, console=settings.console, dependencies=dependencies)
    report = core.generate_report()
    document = {"schema": SCHEMA_VERSION, **asdict(report)}
    if report_path is not None:
        report_path.parent.mkdir(parents=True, exist_ok=True)
        report_path.write_text(template(data=asdict(report)), encoding="utf-8")
        write_json(document, report_path.with_suffix(".json"))
    _emit(document, output)
    raise typer.Exit(EXIT_ACCEPT if report.result else EXIT_REJECT)


def entrypoint():
    app()


if __name__ == "__main__":
    entrypoint()
