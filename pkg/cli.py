#!/usr/bin/env python3
"""
Command-line interface for the Frattini toolkit

Usage:
    python cli.py verify --group S4 --subgroup "(1 2 3); (1 2)(3 4)"
    python cli.py certify --group S4 --subgroup "(1 2 3); (1 2)(3 4)" --x "(1 2)(3 4)" --g "(1 2 3 4)" --out cert.json
    python cli.py check-cert cert.json --group S4 --subgroup "..."
    python cli.py sylow --group S4 --subgroup "(1 2 3 4); (1 2)" --prime 2
    python cli.py normalizer --group S4 --subgroup "(1 2 3)"
    python cli.py sweep --max-order 48 --threads 4 --audit --record

Exit codes: 0 all consistent, 1 usage/parse error, 2 counterexample or
verification failure.
"""

import json
import logging
import sys

import click
from sympy import isprime

from catalog import resolve_group
from config import Config, get_config, get_script_config
from errors import EngineInvariantError, FrattiniError
from frattini import (SYLOW_MODES, build_certificate, certificate_to_dict, check_certificate, converse_verdict,
                      dump_certificate, load_certificate)
from perm_core import format_cycles, parse_cycles, parse_generators
from reports import render_normalizer, render_runs, render_sweep, render_sylow, render_verdict
from subgroup_ops import as_subgroup, generated_subgroup, normalizer
from sweep import sweep as run_sweep
from sylow import sylow_classes

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_FAILURE = 2

group_option = click.option('--group', 'group_spec', required=True,
                            help="Builtin name (S4, A4, C6, D5, Q8, S3xC2) or a group file path.")
subgroup_option = click.option('--subgroup', 'subgroup_spec', default='', show_default=False,
                               help="Subgroup generators in cycle notation separated by ';'.")
mode_option = click.option('--mode', type=click.Choice(SYLOW_MODES), default=None,
                           help="Check every Sylow subgroup (all) or one per prime (representative).")


def _load(group_spec, subgroup_spec):
    G = resolve_group(group_spec)
    K = generated_subgroup(G, parse_generators(subgroup_spec, G.degree))
    return G, K


@click.group()
@click.option('-v', '--verbose', count=True, help="-v for INFO, -vv for DEBUG logging.")
def cli(verbose):
    """Frattini lemma and its converse on finite permutation groups."""
    level = {0: None, 1: 'INFO'}.get(verbose, 'DEBUG')
    get_script_config().init_logging(level)


@cli.command()
@group_option
@subgroup_option
@mode_option
def verify(group_spec, subgroup_spec, mode):
    """Frattini condition and normality for one subgroup."""
    G, K = _load(group_spec, subgroup_spec)
    verdict = converse_verdict(G, K, mode=mode)
    click.echo(render_verdict(G, K, verdict), nl=False)
    if not verdict.consistent:
        click.echo("❌ Counterexample: the Frattini condition and normality disagree.", err=True)
        return EXIT_FAILURE


@cli.command()
@group_option
@subgroup_option
@click.option('--x', 'x_text', required=True, help="Element of K in cycle notation.")
@click.option('--g', 'g_text', required=True, help="Element of G in cycle notation.")
@click.option('--out', type=click.Path(dir_okay=False, writable=True), default=None,
              help="Write the certificate here instead of standard output.")
def certify(group_spec, subgroup_spec, x_text, g_text, out):
    """Build a normality certificate showing x^g lies in K."""
    G, K = _load(group_spec, subgroup_spec)
    x = parse_cycles(x_text, G.degree)
    g = parse_cycles(g_text, G.degree)
    certificate = build_certificate(G, K, x, g)
    if out:
        dump_certificate(certificate, out)
        click.echo(f"✅ Certificate written to {out}: x^g = {format_cycles(certificate.result)}")
    else:
        click.echo(json.dumps(certificate_to_dict(certificate), indent=2))


@cli.command('check-cert')
@click.argument('path', type=click.Path(exists=True, dir_okay=False))
@group_option
@subgroup_option
def check_cert(path, group_spec, subgroup_spec):
    """Independently replay a certificate file."""
    G, K = _load(group_spec, subgroup_spec)
    result = check_certificate(load_certificate(path), G, K)
    if result:
        click.echo("✅ accepted")
        return EXIT_OK
    click.echo(f"❌ rejected: {result.reason} {result.detail}".rstrip())
    return EXIT_FAILURE


@cli.command()
@group_option
@subgroup_option
@click.option('--prime', type=int, default=None, help="Only list this prime's Sylow subgroups.")
def sylow(group_spec, subgroup_spec, prime):
    """List every Sylow subgroup of K, or of G when --subgroup is omitted."""
    G, K = _load(group_spec, subgroup_spec)
    if not subgroup_spec.strip():
        K = as_subgroup(G)
    classes = sylow_classes(K)
    if prime is not None and (not isprime(prime) or K.order % prime):
        raise click.BadParameter(f"{prime} is not a prime dividing |K| = {K.order}", param_hint='--prime')
    click.echo(render_sylow(K, classes, prime), nl=False)


@cli.command('normalizer')
@group_option
@subgroup_option
def normalizer_command(group_spec, subgroup_spec):
    """Normalizer of K in G."""
    G, K = _load(group_spec, subgroup_spec)
    click.echo(render_normalizer(G, K, normalizer(G, K)), nl=False)


@cli.command()
@click.option('--max-order', type=int, default=Config.SWEEP_MAX_ORDER, show_default=True)
@click.option('--threads', type=click.IntRange(min=1), default=Config.SWEEP_THREADS, show_default=True)
@click.option('--group', 'groups', multiple=True, help="Sweep these groups instead of the default catalog.")
@mode_option
@click.option('--audit', is_flag=True, help="Also check reduction, two-sided product, generation, forward lemma.")
@click.option('--record', is_flag=True, help="Store the run in the sweep ledger database.")
@click.option('--no-runtime', is_flag=True, help="Omit the runtime line (byte-stable output).")
def sweep(max_order, threads, groups, mode, audit, record, no_runtime):
    """Exhaustively test the converse over a catalog."""
    report = run_sweep(list(groups) or None, max_order=max_order, threads=threads, mode=mode, audit=audit)
    click.echo(render_sweep(report, show_runtime=not no_runtime), nl=False)
    if record:
        from app import create_app
        from models import record_sweep

        app = create_app(get_script_config())
        with app.app_context():
            run = record_sweep(report, mode or Config.SYLOW_MODE)
            click.echo(f"Recorded sweep run #{run.id}")
    if not report.passed:
        for case in report.counterexamples:
            click.echo(f"❌ counterexample: {case.group_name} subgroup {case.fingerprint} "
                       f"(order {case.subgroup_order})", err=True)
        return EXIT_FAILURE


@cli.command()
@click.option('--limit', type=int, default=20, show_default=True)
def runs(limit):
    """Show recorded sweep runs."""
    from app import create_app
    from models import recent_runs

    app = create_app(get_script_config())
    with app.app_context():
        click.echo(render_runs(recent_runs(limit)), nl=False)


@cli.command()
@click.option('--host', default='127.0.0.1', show_default=True)
@click.option('--port', type=int, default=5000, show_default=True)
def serve(host, port):
    """Run the JSON API."""
    from app import create_app

    create_app(get_config()).run(host=host, port=port)


def main(argv=None):
    """
    Run the CLI and translate outcomes into exit codes.

    Args:
        argv (list): arguments without the program name; defaults to sys.argv[1:]

    Returns:
        int: 0 success, 1 usage or input error, 2 counterexample or verification failure
    """
    try:
        code = cli.main(args=argv, prog_name='frattini', standalone_mode=False)
    except click.ClickException as exc:
        exc.show()
        return EXIT_USAGE
    except click.Abort:
        return EXIT_USAGE
    except EngineInvariantError as exc:
        logger.error(f"Engine invariant failed: {exc}")
        click.echo(f"❌ internal verification failure: {exc}", err=True)
        return EXIT_FAILURE
    except FrattiniError as exc:
        click.echo(f"❌ {exc}", err=True)
        return EXIT_USAGE
    return code if isinstance(code, int) else EXIT_OK


if __name__ == '__main__':
    sys.exit(main())
