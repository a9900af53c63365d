"""This file contains the `kloos` command line interface."""

import io
import json
import logging
import pathlib
import sys

import click

from kloos.cli.acceptance import run_acceptance
from kloos.cli.consts import EXIT_ACCEPTANCE, EXIT_CAPACITY, EXIT_USAGE, SCHEMA_VERSION
from kloos.cli.exceptions import AcceptanceFailure
from kloos.cli.exports import format_number, write_rows
from kloos.cli.providers import ChainConfigProvider, EnvConfigProvider, FileConfigProvider, load_experiment_config
from kloos.cli.settings import ExperimentConfig
from kloos.core import (
    Box,
    CapacityError,
    ConvexPolygon,
    Disc,
    KloosException,
    KloostermanQuery,
    PointCloud,
    PreconditionError,
    ball_discrepancy_search,
    bmv_error,
    bound_ratio_report,
    box_discrepancy,
    complete_sum_series,
    convex_count,
    generate,
    harman_error,
    hyperbola_convex_lower_bound,
    kloosterman_sum,
    koksma_szusz_bound,
    oracles,
    random_baseline,
)
from kloos.core._types import JSON
from kloos.core.aggregate import series_rows
from kloos.core.backends import BACKENDS
from kloos.core.discrepancy.functionals import (
    ball_envelope,
    decay_envelope,
    harman_parameter,
    lil_baseline,
    small_box_envelope,
    small_box_parameters,
)
from kloos.core.pointset import export_csv, export_svg

logger = logging.getLogger("kloos")

SCAN_KINDS = ("sum", "triple", "moment2", "moment2n", "linnik")
DISC_KINDS = ("box", "ball", "convex", "hyperbola", "ks-bound", "bmv", "harman")

# above this many points `disc --check` skips the brute force comparison of that kind
ORACLE_POINT_LIMITS = {"box": 200, "convex": 20_000}


def exit_code(error: KloosException) -> int:
    """Map a library exception to the process exit code."""
    if isinstance(error, AcceptanceFailure):
        return EXIT_ACCEPTANCE
    if isinstance(error, CapacityError):
        return EXIT_CAPACITY
    return EXIT_USAGE


class KloosGroup(click.Group):
    """Click group that turns library exceptions and usage errors into the documented exit codes."""

    def make_context(self, *args, **kwargs) -> click.Context:
        try:
            return super().make_context(*args, **kwargs)
        except click.UsageError as error:
            error.exit_code = EXIT_USAGE
            raise

    def invoke(self, ctx: click.Context):
        try:
            return super().invoke(ctx)
        except click.UsageError as error:
            error.exit_code = EXIT_USAGE
            raise
        except KloosException as error:
            click.echo(f"Error: {error}", err=True)
            ctx.exit(exit_code(error))


def configure_logging(verbose: int) -> None:
    if verbose:
        logging.basicConfig(
            level=logging.DEBUG if verbose > 1 else logging.INFO,
            stream=sys.stderr,
            format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        )


def parse_json_option(value: str | None, name: str) -> JSON:
    """Decode a JSON valued option, None when it was not given."""
    if value is None:
        return None
    try:
        return json.loads(value)
    except json.JSONDecodeError as error:
        raise click.BadParameter(f"not valid JSON: {error.msg}", param_hint=f"--{name}") from None


def parse_shape(parser, value: str | None, name: str, default: JSON = None):
    """Parse a JSON valued option into a box, disc or polygon."""
    raw = parse_json_option(value, name)
    if raw is None:
        if default is None:
            raise click.UsageError(f"--{name} is required")
        raw = default
    try:
        return parser(raw)
    except (TypeError, KeyError) as error:
        raise click.BadParameter(str(error), param_hint=f"--{name}") from None


def emit(config: ExperimentConfig, document: JSON, out: str | None) -> None:
    """Write a JSON document to stdout or to a file below the output directory."""
    text = config.dumps(document)
    if out is None:
        click.echo(text)
        return
    path = config.output_path(out)
    path.write_text(text + "\n", encoding="utf-8")
    logger.info(f"Wrote {path}")


@click.group(cls=KloosGroup)
@click.option(
    "--config",
    "config_path",
    type=click.Path(dir_okay=False, path_type=pathlib.Path),
    help="Experiment config file with `key = value` lines.",
)
@click.option("--threads", type=click.IntRange(min=1), help="Worker threads, overrides the config and KLOOS_THREADS.")
@click.option("--seed", type=click.IntRange(min=0), help="Seed for every random choice.")
@click.option(
    "--output-dir",
    type=click.Path(file_okay=False, path_type=pathlib.Path),
    help="Directory for output files.",
)
@click.option("-v", "--verbose", count=True, help="Log to stderr, repeat for debug output.")
@click.version_option(package_name="kloos")
@click.pass_context
def main(ctx: click.Context, config_path, threads, seed, output_dir, verbose):
    """Kloosterman sums, modular inverse point sets and their discrepancy."""
    configure_logging(verbose)
    providers = [FileConfigProvider(config_path)] if config_path is not None else []
    provider = ChainConfigProvider(*providers, EnvConfigProvider())
    ctx.obj = load_experiment_config(provider, threads=threads, seed=seed, output_dir=output_dir)


@main.command("eval")
@click.option("--m", "m", type=int, required=True, help="First argument.")
@click.option("--n", "n", type=int, required=True, help="Second argument.")
@click.option("--c", "c", type=click.IntRange(min=1), required=True, help="Modulus.")
@click.option("--method", type=click.Choice(sorted(BACKENDS)), default="direct", show_default=True)
@click.option("--json", "as_json", is_flag=True, help="Print the full result as JSON.")
@click.pass_obj
def eval_command(config: ExperimentConfig, m: int, n: int, c: int, method: str, as_json: bool):
    """Evaluate the Kloosterman sum S(m, n; c)."""
    value = kloosterman_sum(KloostermanQuery(m, n, c), method, config)
    if as_json:
        click.echo(config.dumps(value.to_json()))
    else:
        click.echo(format_number(value.value))


@main.command("scan")
@click.argument("kind", type=click.Choice(SCAN_KINDS))
@click.option("--m", "m", type=int, default=1, show_default=True, help="First argument of `sum`.")
@click.option("--n", "n", type=int, default=1, show_default=True, help="Second argument of `sum`.")
@click.option("--M", "M", type=click.IntRange(min=1), default=1, show_default=True, help="Dyadic base of m.")
@click.option("--N", "N", type=click.IntRange(min=1), default=1, show_default=True, help="Dyadic base of n.")
@click.option("--X", "X", type=click.IntRange(min=1), required=True, help="Modulus limit.")
@click.option("--method", type=click.Choice(sorted(BACKENDS)), default="direct", show_default=True)
@click.option("--out", help="CSV file below the output directory, stdout when omitted.")
@click.pass_obj
def scan_command(config: ExperimentConfig, kind: str, m: int, n: int, M: int, N: int, X: int, method: str, out):
    """Measure an aggregate of Kloosterman sums next to its envelope as CSV."""
    if kind == "sum":
        rows = series_rows(complete_sum_series(m, n, X, config, method))
    else:
        rows = bound_ratio_report([(M, N, X)], (kind,), config, method)
    if out is None:
        buffer = io.StringIO()
        write_rows(rows, buffer)
        click.echo(buffer.getvalue(), nl=False)
        return
    path = config.output_path(out)
    with path.open("w", encoding="utf-8", newline="") as handle:
        write_rows(rows, handle)
    logger.info(f"Wrote {path}")


@main.command("points")
@click.option("--X", "X", type=click.IntRange(min=1), required=True, help="Modulus limit.")
@click.option("--csv", "write_csv", is_flag=True, help="Write points-X.csv with the columns a,b,c.")
@click.option("--svg", "write_svg", is_flag=True, help="Write the scatter plot points-X.svg.")
@click.pass_obj
def points_command(config: ExperimentConfig, X: int, write_csv: bool, write_svg: bool):
    """Generate the modular inverse point set S(X)."""
    ps = generate(X, config)
    document: dict[str, JSON] = {"X": X, "count": ps.count}
    if write_csv:
        path = config.output_path(f"points-{X}.csv")
        document["csv"] = str(path)
        document["rows"] = export_csv(ps, path)
    if write_svg:
        path = config.output_path(f"points-{X}.svg")
        document["svg"] = str(path)
        export_svg(ps, path)
    click.echo(config.dumps(document))


def _cloud(config: ExperimentConfig, X: int | None, random: int | None) -> PointCloud:
    if random is not None:
        return random_baseline(random, config.seed)
    if X is None:
        raise PreconditionError("Either --X or --random is required")
    return generate(X, config)


def _checked(cloud: PointCloud, check: bool, kind: str) -> bool:
    if not check:
        return False
    if cloud.count > ORACLE_POINT_LIMITS[kind]:
        logger.warning(f"Skipping the brute force {kind} check for {cloud.count} points")
        return False
    return True


def _reference_size(cloud: PointCloud, X: int | None) -> int:
    # the envelopes are stated in terms of X; a random cloud of N points is compared at X = sqrt(N)
    return X if X is not None else max(1, round(cloud.count**0.5))


@main.command("disc")
@click.argument("kind", type=click.Choice(DISC_KINDS))
@click.option("--X", "X", type=click.IntRange(min=1), help="Use the inverse point set S(X).")
@click.option("--random", type=click.IntRange(min=1), help="Use this many uniform random points instead.")
@click.option("--mode", type=click.Choice(["auto", "exact-small", "search"]), default="auto", show_default=True)
@click.option("--seeds", type=click.IntRange(min=1), default=8, show_default=True, help="Grid size of the disc search.")
@click.option("--polygon", help="Convex polygon as a JSON list of [x, y] vertices.")
@click.option("--depth", type=click.IntRange(min=1), help="Dyadic cover depth of `convex`.")
@click.option("--M", "M", type=click.IntRange(min=1), default=8, show_default=True, help="Cut off of `ks-bound`.")
@click.option("--box", help="Box as JSON [xi, zeta, alpha, beta] or an object with those keys.")
@click.option("--L1", "L1", type=click.IntRange(min=1), help="First frequency cut off of `bmv`.")
@click.option("--L2", "L2", type=click.IntRange(min=1), help="Second frequency cut off of `bmv`.")
@click.option("--disc", "disc_json", help='Disc as JSON {"center": [x, y], "R": r}.')
@click.option("--L", "L", type=float, help="Frequency radius of `harman`.")
@click.option("--check", is_flag=True, help="Compare with the brute force reference on small inputs.")
@click.option("--out", help="JSON file below the output directory, stdout when omitted.")
@click.pass_obj
def disc_command(
    config: ExperimentConfig,
    kind: str,
    X: int | None,
    random: int | None,
    mode: str,
    seeds: int,
    polygon: str | None,
    depth: int | None,
    M: int,
    box: str | None,
    L1: int | None,
    L2: int | None,
    disc_json: str | None,
    L: float | None,
    check: bool,
    out: str | None,
):
    """Measure a discrepancy or evaluate a discrepancy functional as JSON."""
    cloud = _cloud(config, X, random)
    params: dict[str, JSON] = {"X": X, "random": random, "points": cloud.count}
    witness: JSON = None
    oracle_checked = False
    extra: dict[str, JSON] = {}
    if kind == "box":
        result = box_discrepancy(cloud, mode, config)
        value, witness = result.value, result.witness.to_json()
        params["mode"] = result.mode
        extra = {"result": result.to_json(), "envelope": decay_envelope("box", _reference_size(cloud, X))}
        if _checked(cloud, check, "box"):
            expected = oracles.box_discrepancy(cloud)
            if result.lower_bound:
                oracle_checked = value <= expected + 1e-12
            else:
                oracle_checked = abs(value - expected) <= 1e-12
            extra["oracle"] = expected
    elif kind == "ball":
        result = ball_discrepancy_search(cloud, seeds, config)
        value, witness = result.value, result.witness.to_json()
        params["seeds"] = seeds
        extra = {"result": result.to_json(), "envelope": decay_envelope("ball", _reference_size(cloud, X))}
    elif kind == "convex":
        region = parse_shape(ConvexPolygon.parse, polygon, "polygon")
        counted = convex_count(cloud, region, depth)
        value = abs(counted.exact / cloud.count - region.area)
        witness = region.to_json()
        params["depth"] = counted.cover.depth
        extra = {"result": counted.to_json(), "area": region.area}
        if _checked(cloud, check, "convex"):
            oracle_checked = oracles.convex_count(cloud, region) == counted.exact
    elif kind == "hyperbola":
        if X is None or random is not None:
            raise PreconditionError("hyperbola needs --X and no --random")
        bound = hyperbola_convex_lower_bound(cloud)
        value = bound.measured
        extra = {"result": bound.to_json()}
    elif kind == "ks-bound":
        value = koksma_szusz_bound(cloud, M)
        params["M"] = M
    elif kind == "bmv":
        test_box = parse_shape(Box.parse, box, "box", default=[0, 0, "1/2", "1/2"])
        size = _reference_size(cloud, X)
        if L1 is None or L2 is None:
            chosen = small_box_parameters(test_box, size)
            L1, L2 = L1 or chosen.L1, L2 or chosen.L2
        estimate = bmv_error(cloud, test_box, L1, L2)
        value, witness = estimate.E, test_box.to_json()
        params.update({"L1": L1, "L2": L2})
        extra = {"result": estimate.to_json(), "envelope": small_box_envelope(test_box, size)}
    else:
        test_disc = parse_shape(Disc.parse, disc_json, "disc", default={"center": [0.5, 0.5], "R": 0.25})
        size = _reference_size(cloud, X)
        L = harman_parameter(size, test_disc.R) if L is None else L
        estimate = harman_error(cloud, test_disc, L)
        value, witness = estimate.E, test_disc.to_json()
        params["L"] = L
        extra = {"result": estimate.to_json(), "envelope": ball_envelope(size, test_disc.R)}
    if random is not None and cloud.count >= 3:
        extra["lil"] = lil_baseline(cloud.count)
    document = {
        "schema_version": SCHEMA_VERSION,
        "operation": kind,
        "params": params,
        "value": value,
        "witness": witness,
        "oracle_checked": oracle_checked,
        **extra,
    }
    emit(config, document, out)


@main.command("report")
@click.option("--quick", is_flag=True, help="Run reduced parameter grids.")
@click.option("--out", help="JSON file below the output directory, stdout when omitted.")
@click.pass_obj
def report_command(config: ExperimentConfig, quick: bool, out):
    """Run every acceptance check and print the pass/fail report."""
    document = run_acceptance(config, quick)
    emit(config, document, out)
    if not document["passed"]:
        failed = [check["name"] for check in document["checks"] if not check["passed"]]
        raise AcceptanceFailure(failed)
