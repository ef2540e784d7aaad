"""
Text and JSON renderings of reports.

Text reports use the Jinja2 templates under templates/reports in a fixed
tabular layout; the JSON shapes are shared by the API.
"""

from __future__ import annotations

from typing import Optional, Sequence

from jinja2 import Environment, FileSystemLoader, StrictUndefined

from config import basedir
from frattini import FrattiniReport, Verdict
from group_engine import Group
from perm_core import format_cycles
from sweep import SweepReport
from sylow import SylowClass


def _yesno(value):
    if value is None:
        return 'n/a'
    return 'yes' if value else 'no'


def _gens(group):
    return group.describe_generators()


env = Environment(
    loader=FileSystemLoader(str(basedir / 'templates' / 'reports')),
    trim_blocks=True,
    lstrip_blocks=True,
    keep_trailing_newline=True,
    undefined=StrictUndefined,
)
env.filters['yesno'] = _yesno
env.filters['gens'] = _gens
env.filters['cycles'] = format_cycles


def _label(group: Group) -> str:
    return group.name or f"<{group.describe_generators()}>"


def render_verdict(G: Group, K: Group, verdict: Verdict) -> str:
    return env.get_template('verify.txt').render(
        group_label=_label(G), subgroup=K, report=verdict.report, verdict=verdict)


def render_sylow(K: Group, classes: Sequence[SylowClass], prime: Optional[int] = None) -> str:
    """List Sylow subgroups with their global indices P_1..P_n; ``prime`` filters the listing."""
    indexed = []
    offset = 0
    for cls in classes:
        members = list(enumerate(cls.conjugates, start=offset + 1))
        offset += cls.count
        if prime is None or cls.prime == prime:
            indexed.append((cls, members))
    return env.get_template('sylow.txt').render(subgroup=K, classes=indexed)


def render_normalizer(G: Group, K: Group, N: Group) -> str:
    return env.get_template('normalizer.txt').render(
        group_label=_label(G), group=G, subgroup=K, normalizer=N)


def render_sweep(report: SweepReport, show_runtime: bool = True) -> str:
    return env.get_template('sweep.txt').render(report=report, show_runtime=show_runtime)


def render_runs(runs) -> str:
    return env.get_template('runs.txt').render(runs=runs)


def report_to_dict(report: FrattiniReport) -> dict:
    return {
        'group_order': report.group_order,
        'subgroup_order': report.subgroup_order,
        'mode': report.mode,
        'side': report.side,
        'vacuous': report.vacuous,
        'condition_holds': report.condition_holds,
        'entries': [{
            'sylow_index': e.sylow_index,
            'prime': e.prime,
            'sylow_order': e.sylow.order,
            'sylow_generators': [format_cycles(p) for p in e.sylow.generators],
            'normalizer_order': e.normalizer_order,
            'intersection_order': e.intersection_order,
            'product_size': e.product_size,
            'holds': e.holds,
        } for e in report.entries],
    }


def verdict_to_dict(verdict: Verdict) -> dict:
    return {
        'condition_holds': verdict.condition_holds,
        'normal': verdict.normal,
        'consistent': verdict.consistent,
        'report': report_to_dict(verdict.report),
    }
