"""
Interface en ligne de commande de NFILAB.

Chaque commande écrit ses enregistrements sur la sortie standard (une ligne
JSON par enregistrement, ou un texte lisible avec --format text) ; les
erreurs deviennent un enregistrement {"error": ...} et un code de sortie non nul.
"""

import logging
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from functools import wraps

import click
import pandas as pd

from nfilab import __version__
from nfilab.config import get_config
from nfilab.exceptions import MalformedInputError, NfiLabError, SizeGuardError
from nfilab.models.dks import DksInstance
from nfilab.models.instance import NfiInstance
from nfilab.services.dks import (
    aux_cut_solution_oracle,
    dks_approx_pipeline,
    dks_to_nfi,
)
from nfilab.services.gomory_hu import gomory_hu
from nfilab.services.interdiction import nfi_approx
from nfilab.services.oracles import bmstc_exact, nfi_exact, nfi_exact_cutwise
from nfilab.services.reductions import bmstc_to_nfi, bmstc_via_nfi
from nfilab.utils.generators import generate, random_suite
from nfilab.utils.instance_io import digest, read_instance, serialize_instance
from nfilab.utils.reports import (
    DksReport,
    SolveReport,
    dumps,
    error_record,
    load_report,
    verify_report,
    within_bound,
)

logger = logging.getLogger(__name__)

FORMATS = click.Choice(["text", "records"])


def handle_errors(f):
    """Convertit les NfiLabError en enregistrement d'erreur et code de sortie."""

    @wraps(f)
    def decorated_function(*args, **kwargs):
        try:
            return f(*args, **kwargs)
        except NfiLabError as e:
            logger.debug("commande interrompue: %s", e)
            click.echo(dumps(error_record(e)))
            sys.exit(e.exit_code)

    return decorated_function


def _emit(record: dict, output_format: str, text: str) -> None:
    click.echo(text if output_format == "text" else dumps(record))


def _load(path: str, *kinds):
    instance = read_instance(path)
    kind = "dks" if isinstance(instance, DksInstance) else instance.problem
    if kinds and kind not in kinds:
        raise MalformedInputError(
            f"{path}: instance {kind} non prise en charge par cette commande ({'/'.join(kinds)})"
        )
    return instance


def _solve_text(report: SolveReport) -> str:
    return (
        f"{report.solver}: résiduel {report.residual}, coût {report.cost}/{report.budget}, "
        f"retirées {report.removed}"
    )


@click.group()
@click.version_option(__version__, prog_name="nfilab")
@click.option("--verbose", is_flag=True, help="Journalisation détaillée (DEBUG).")
def cli(verbose):
    """Interdiction de flot, coupe s-t budgétée et Densest-k-Subgraph."""
    if verbose:
        logging.getLogger("nfilab").setLevel(logging.DEBUG)


# ----------------------------------------------------------------------
# Résolution
# ----------------------------------------------------------------------
@cli.command()
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.option("--k", "k", default=1, show_default=True, type=click.IntRange(min=1))
@click.option("--guard-override", is_flag=True, help="Lève la garde sur les ensembles devinés.")
@click.option("--format", "output_format", type=FORMATS, default="records", show_default=True)
@handle_errors
def solve(path, k, guard_override, output_format):
    """Approximation (1 + 1/k)(n - 1) ; une instance bmstc passe par la réduction vers NFI."""
    instance = _load(path, "nfi", "bmstc")
    started = time.perf_counter()
    params = {"k": k}
    if instance.problem == "bmstc":
        cut = bmstc_via_nfi(
            instance, lambda x: nfi_approx(x, k, guard_override=guard_override)
        )
        report = SolveReport.from_cut(
            instance, cut, "bmstc_via_nfi", params, time.perf_counter() - started
        )
    else:
        solution = nfi_approx(instance, k, guard_override=guard_override)
        report = SolveReport.from_solution(
            instance, solution, "nfi_approx", params, time.perf_counter() - started
        )
    _emit(report.to_record(), output_format, _solve_text(report))


@cli.command()
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.option("--guard-override", is_flag=True, help="Refusé : les oracles ne tronquent jamais.")
@click.option("--format", "output_format", type=FORMATS, default="records", show_default=True)
@handle_errors
def exact(path, guard_override, output_format):
    """Optimum exact (les deux oracles doivent s'accorder)."""
    if guard_override:
        raise SizeGuardError("--guard-override est refusé par les oracles exacts")
    instance = _load(path, "nfi", "bmstc")
    started = time.perf_counter()
    if instance.problem == "bmstc":
        cut = bmstc_exact(instance)
        report = SolveReport.from_cut(
            instance, cut, "bmstc_exact", {}, time.perf_counter() - started, optimal=True
        )
    else:
        solution, oracles = nfi_exact(instance)
        report = SolveReport.from_solution(
            instance, solution, "nfi_exact", {"oracles": oracles},
            time.perf_counter() - started, optimal=True,
        )
    _emit(report.to_record(), output_format, _solve_text(report))


# ----------------------------------------------------------------------
# Réductions
# ----------------------------------------------------------------------
@cli.command("reduce-bmstc")
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@handle_errors
def reduce_bmstc(path):
    """Écrit l'instance NFI à 2m arêtes équivalente à une instance BMstC."""
    instance = _load(path, "bmstc")
    click.echo(serialize_instance(bmstc_to_nfi(instance)), nl=False)


@cli.command("reduce-dks")
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.option("--budget", default=0, show_default=True, type=click.IntRange(min=0))
@handle_errors
def reduce_dks(path, budget):
    """Écrit l'instance NFI du graphe auxiliaire d'une instance DkS."""
    dks = _load(path, "dks")
    click.echo(serialize_instance(dks_to_nfi(dks).instance(budget)), nl=False)


@cli.command()
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.option(
    "--solver", type=click.Choice(["exact", "cutwise", "approx"]), default="exact",
    show_default=True,
)
@click.option("--k", "k", default=1, show_default=True, type=click.IntRange(min=1),
              help="Ensembles devinés du solveur approx.")
@click.option("--format", "output_format", type=FORMATS, default="records", show_default=True)
@handle_errors
def dks(path, solver, k, output_format):
    """Estimation Densest-k-Subgraph via le graphe auxiliaire."""
    instance = _load(path, "dks")
    started = time.perf_counter()
    aux = dks_to_nfi(instance)
    solvers = {
        "exact": lambda: aux_cut_solution_oracle(aux),
        "cutwise": lambda: nfi_exact_cutwise,
        "approx": lambda: (lambda x: nfi_approx(x, k)),
    }
    estimate, witness = dks_approx_pipeline(instance, solvers[solver]())
    params = {"k": instance.k}
    if solver == "approx":
        params["guesses"] = k
    report = DksReport(
        digest=digest(instance),
        solver=solver,
        params=params,
        estimate=estimate,
        witness=sorted(witness),
        witness_edges=instance.edges_within(witness),
        wall_time=time.perf_counter() - started,
    )
    _emit(
        report.to_record(), output_format,
        f"dks ({solver}): estimation {estimate}, témoin {report.witness} "
        f"({report.witness_edges} arêtes)",
    )


@cli.command()
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.option("--format", "output_format", type=FORMATS, default="records", show_default=True)
@handle_errors
def ghtree(path, output_format):
    """Arbre de Gomory-Hu (capacités) : une arête par ligne avec son kappa."""
    instance = _load(path, "nfi", "bmstc")
    tree = gomory_hu(instance.graph, instance.capacities)
    for a, b, kappa in tree.tree_edges:
        _emit({"a": a, "b": b, "kappa": kappa.to_json()}, output_format, f"{a} {b} {kappa}")


@cli.command()
@click.argument("instance_path", type=click.Path(exists=True, dir_okay=False))
@click.argument("report_path", type=click.Path(exists=True, dir_okay=False))
@handle_errors
def verify(instance_path, report_path):
    """Réévalue chaque rapport d'un fichier contre son instance."""
    instance = read_instance(instance_path)
    with open(report_path, "r", encoding="utf-8") as f:
        lines = [line for line in f.read().splitlines() if line.strip()]
    if not lines:
        raise MalformedInputError(f"{report_path}: aucun rapport")
    for line in lines:
        verify_report(instance, load_report(line))
    click.echo(dumps({"verified": True, "records": len(lines)}))


# ----------------------------------------------------------------------
# Banc d'essai et génération
# ----------------------------------------------------------------------
def _bench_row(index: int, instance: NfiInstance, k: int) -> dict:
    approx = nfi_approx(instance, k)
    optimum, _ = nfi_exact(instance)
    if optimum.residual == 0 or optimum.residual.is_inf:
        ratio = 1.0 if approx.residual == optimum.residual else None
    else:
        ratio = approx.residual.value / optimum.residual.value
    # bound et ratio servent à l'affichage ; within_bound est exact
    bound = (1 + 1 / k) * (instance.n - 1)
    return {
        "index": index,
        "digest": digest(instance),
        "n": instance.n,
        "m": instance.m,
        "budget": instance.budget,
        "approx": approx.residual.to_json(),
        "exact": optimum.residual.to_json(),
        "ratio": ratio,
        "bound": bound,
        "within_bound": within_bound(approx.residual, optimum.residual, instance.n, k),
    }


@cli.command()
@click.option("--count", default=50, show_default=True, type=click.IntRange(min=1))
@click.option("--seed", default=0, show_default=True, type=int)
@click.option("--k", "k", default=1, show_default=True, type=click.IntRange(min=1))
@click.option("--max-n", default=6, show_default=True, type=click.IntRange(min=2))
@click.option("--max-m", default=8, show_default=True, type=click.IntRange(min=0))
@click.option("--format", "output_format", type=FORMATS, default="records", show_default=True)
@handle_errors
def bench(count, seed, k, max_n, max_m, output_format):
    """Rapport approximation / optimum sur une suite générée."""
    suite = random_suite(count, seed=seed, max_n=max_n, max_m=max_m)
    threads = get_config().threads
    with ThreadPoolExecutor(max_workers=threads) as executor:
        rows = list(executor.map(lambda pair: _bench_row(pair[0], pair[1], k), enumerate(suite)))

    if output_format == "text":
        frame = pd.DataFrame(rows).drop(columns=["digest"])
        click.echo(frame.to_string(index=False))
        worst = frame["ratio"].dropna()
        click.echo(
            f"ratio max: {worst.max() if len(worst) else 'n/a'} ; "
            f"hors borne: {int((~frame['within_bound']).sum())}"
        )
    else:
        for row in rows:
            click.echo(dumps(row))


@cli.command("generate")
@click.argument("kind", type=click.Choice(["nfi", "bmstc", "dks"]))
@click.option("--n", "n", required=True, type=int)
@click.option("--m", "m", required=True, type=int)
@click.option("--max-u", default=5, show_default=True, type=int)
@click.option("--max-c", default=5, show_default=True, type=int)
@click.option("--budget-rule", default="abs:0", show_default=True,
              help="abs:B (budget absolu) ou frac:x (fraction de la coupe de coût minimal).")
@click.option("--seed", default=0, show_default=True, type=int)
@click.option("--k", "k", default=None, type=int, help="Taille cible (dks).")
@handle_errors
def generate_command(kind, n, m, max_u, max_c, budget_rule, seed, k):
    """Génère une instance reproductible et l'écrit sous forme canonique."""
    instance = generate(kind, n, m, max_u, max_c, budget_rule, seed, k)
    click.echo(serialize_instance(instance), nl=False)
