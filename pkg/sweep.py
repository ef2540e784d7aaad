"""
Exhaustive sweep: every subgroup of every catalog group against the converse.

For each group G and each K in all_subgroups(G) the sweep records the
Frattini condition, normality and whether they agree. Audit mode also checks
the one-per-prime reduction, the two-sided product, Sylow generation, Sylow
conjugacy and, for normal K, the forward lemma.
"""

from __future__ import annotations

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from catalog import default_catalog, resolve_group
from config import Config
from errors import EngineInvariantError, SweepError
from frattini import converse_verdict, frattini_condition, frattini_forward
from group_engine import Group
from subgroup_ops import Subgroup, all_subgroups
from sylow import sylow_classes, sylow_conjugator, sylow_generation_check

logger = logging.getLogger(__name__)

Source = Union[str, Group, Tuple[str, Group]]


@dataclass(frozen=True)
class SweepCase:
    group_name: str
    group_order: int
    fingerprint: str
    subgroup_order: int
    condition_holds: bool
    normal: bool
    reduction_agrees: Optional[bool] = None
    two_sided_agrees: Optional[bool] = None
    generation_holds: Optional[bool] = None
    forward_holds: Optional[bool] = None
    conjugacy_holds: Optional[bool] = None

    @property
    def consistent(self) -> bool:
        return self.condition_holds == self.normal

    @property
    def audit_ok(self) -> bool:
        checks = (self.reduction_agrees, self.two_sided_agrees, self.generation_holds, self.forward_holds,
                  self.conjugacy_holds)
        return all(c is not False for c in checks)

    @property
    def sort_key(self):
        return (self.group_name, self.subgroup_order, self.fingerprint)


@dataclass(frozen=True)
class SweepReport:
    cases: Tuple[SweepCase, ...]
    group_count: int
    runtime: float
    max_order: int
    audited: bool = False

    @property
    def subgroup_count(self) -> int:
        return len(self.cases)

    @property
    def inconsistencies(self) -> int:
        return sum(1 for c in self.cases if not c.consistent)

    @property
    def audit_failures(self) -> int:
        return sum(1 for c in self.cases if not c.audit_ok)

    @property
    def counterexamples(self) -> List[SweepCase]:
        return [c for c in self.cases if not c.consistent]

    @property
    def totals(self) -> Tuple[int, int, int]:
        return self.group_count, self.subgroup_count, self.inconsistencies

    @property
    def passed(self) -> bool:
        return self.inconsistencies == 0 and self.audit_failures == 0


def _resolve_sources(sources: Optional[Iterable[Source]], max_order: int) -> List[Tuple[str, Group]]:
    if sources is None:
        return default_catalog(max_order)
    resolved = []
    for source in sources:
        if isinstance(source, tuple):
            name, group = source
        elif isinstance(source, Group):
            name, group = source.name or repr(source), source
        else:
            name, group = source, resolve_group(source)
        if group.order > max_order:
            raise SweepError(f"{name} has order {group.order}, above the sweep limit of {max_order}")
        resolved.append((name, group))
    return resolved


def evaluate_case(name: str, G: Group, K: Subgroup, mode: Optional[str] = None, audit: bool = False) -> SweepCase:
    """Run the converse (and optionally the audit checks) for one pair (G, K)."""
    classes = sylow_classes(K)
    verdict = converse_verdict(G, K, mode=mode, classes=classes)
    extra = {}
    if audit:
        everything = frattini_condition(G, K, mode='all', classes=classes)
        one_per_prime = frattini_condition(G, K, mode='representative', classes=classes)
        other_side = frattini_condition(G, K, mode='all', side='NK', classes=classes)
        extra['reduction_agrees'] = one_per_prime.condition_holds == everything.condition_holds
        extra['two_sided_agrees'] = other_side.condition_holds == everything.condition_holds
        extra['generation_holds'] = sylow_generation_check(K, classes)
        extra['conjugacy_holds'] = all(sylow_conjugator(K, cls.representative, Q) is not None
                                        for cls in classes for Q in cls.conjugates)
        if verdict.normal:
            try:
                extra['forward_holds'] = frattini_forward(G, K, classes).condition_holds
            except EngineInvariantError as exc:
                logger.error(f"Forward Frattini check failed in {name}: {exc}")
                extra['forward_holds'] = False
    case = SweepCase(name, G.order, K.fingerprint[:12], K.order,
                     verdict.condition_holds, verdict.normal, **extra)
    logger.debug(f"{name} |K|={K.order} {K.fingerprint[:12]}: condition={case.condition_holds} normal={case.normal}")
    return case


def sweep(sources: Optional[Sequence[Source]] = None, max_order: Optional[int] = None,
          threads: Optional[int] = None, mode: Optional[str] = None, audit: bool = False) -> SweepReport:
    """
    Check the converse on every subgroup of every selected group.

    Args:
        sources: builtin names, file paths or groups; None selects the default catalog
        max_order (int): largest group order allowed
        threads (int): worker threads for independent cases
        mode (str): Sylow mode passed to the Frattini condition
        audit (bool): also verify the reduction, two-sided and forward properties

    Returns:
        SweepReport: cases sorted by (group name, subgroup order, fingerprint)

    Raises:
        SweepError: an explicitly selected group is larger than max_order
        EnumerationCapError: subgroup enumeration exceeds its cap
    """
    max_order = Config.SWEEP_MAX_ORDER if max_order is None else max_order
    threads = Config.SWEEP_THREADS if threads is None else max(1, threads)
    started = time.perf_counter()

    groups = _resolve_sources(sources, max_order)
    logger.info(f"Sweeping {len(groups)} groups (max order {max_order}, {threads} threads)")
    tasks = [(name, G, K) for name, G in groups for K in all_subgroups(G)]

    def run(task):
        name, G, K = task
        return evaluate_case(name, G, K, mode=mode, audit=audit)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            cases = list(pool.map(run, tasks))
    else:
        cases = [run(task) for task in tasks]

    report = SweepReport(tuple(sorted(cases, key=lambda c: c.sort_key)), len(groups),
                         time.perf_counter() - started, max_order, audit)
    if report.inconsistencies:
        logger.error(f"Sweep found {report.inconsistencies} counterexamples")
    logger.info(f"Sweep finished: {report.group_count} groups, {report.subgroup_count} subgroups, "
                f"{report.inconsistencies} inconsistencies in {report.runtime:.2f}s")
    return report
