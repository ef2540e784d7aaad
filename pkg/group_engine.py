"""
Finite permutation groups by breadth-first closure.

A Group keeps its full element table in canonical (lexicographic image)
order plus a hash index for membership. At desk scale the table is both the
data structure and the oracle for everything built on top of it.
"""

from __future__ import annotations

import logging
from collections import deque
from typing import Iterable, Optional, Sequence, Tuple

from config import Config
from errors import DegreeMismatchError, EnumerationCapError
from perm_core import Permutation, compose, format_cycles, identity

logger = logging.getLogger(__name__)


class Group:
    """
    A generated finite permutation group with its canonical element table.

    Instances are immutable after construction; build them with build_group().
    """

    def __init__(self, degree: int, generators: Sequence[Permutation],
                 elements: Iterable[Permutation], name: Optional[str] = None):
        self.degree = degree
        self.generators = tuple(generators)
        self._elements = tuple(sorted(elements))
        self._members = frozenset(self._elements)
        self.name = name

    @property
    def order(self) -> int:
        return len(self._elements)

    @property
    def elements(self) -> Tuple[Permutation, ...]:
        return self._elements

    @property
    def members(self) -> frozenset:
        return self._members

    @property
    def identity(self) -> Permutation:
        return self._elements[0]

    def is_trivial(self) -> bool:
        return self.order == 1

    def __contains__(self, p: Permutation) -> bool:
        return contains(self, p)

    def __len__(self):
        return self.order

    def __iter__(self):
        return iter(self._elements)

    def __eq__(self, other):
        if not isinstance(other, Group):
            return NotImplemented
        return self.degree == other.degree and self._members == other._members

    def __hash__(self):
        return hash((self.degree, self._members))

    def describe_generators(self) -> str:
        return '; '.join(format_cycles(g) for g in self.generators) or '()'

    def __repr__(self):
        label = self.name or f"<{self.describe_generators()}>"
        return f"<Group {label} degree={self.degree} order={self.order}>"


def closure(degree: int, gens: Sequence[Permutation], cap: Optional[int] = None) -> Tuple[Permutation, ...]:
    """
    Close a generating set under right multiplication by the generators.

    Args:
        degree (int): number of points
        gens (sequence): generators, all of the given degree
        cap (int): maximum number of elements before giving up

    Returns:
        tuple: every element of <gens>, canonically sorted

    Raises:
        EnumerationCapError: the closure exceeds ``cap``
    """
    cap = Config.ENUMERATION_CAP if cap is None else cap
    gens = [g for g in dict.fromkeys(gens) if not g.is_identity()]
    start = identity(degree)
    seen = {start}
    queue = deque([start])
    while queue:
        current = queue.popleft()
        for g in gens:
            nxt = compose(current, g)
            if nxt not in seen:
                seen.add(nxt)
                if len(seen) > cap:
                    raise EnumerationCapError(
                        f"closure on {degree} points exceeds the enumeration cap of {cap} elements")
                queue.append(nxt)
    return tuple(sorted(seen))


def _check_generator_degrees(degree: int, gens: Sequence[Permutation]):
    for g in gens:
        if g.degree != degree:
            raise DegreeMismatchError(
                f"generator {format_cycles(g)} has degree {g.degree}, expected {degree}")


def build_group(degree: int, gens: Sequence[Permutation], cap: Optional[int] = None,
                name: Optional[str] = None) -> Group:
    """Build <gens> on ``degree`` points; no generators gives the trivial group."""
    gens = tuple(gens)
    _check_generator_degrees(degree, gens)
    group = Group(degree, gens, closure(degree, gens, cap), name=name)
    logger.debug(f"Built {group!r} from {len(gens)} generators")
    return group


def contains(G: Group, p: Permutation) -> bool:
    if p.degree != G.degree:
        raise DegreeMismatchError(f"permutation of degree {p.degree} tested against a group of degree {G.degree}")
    return p in G.members


def elements(G: Group) -> Tuple[Permutation, ...]:
    return G.elements


def is_subgroup_of(H: Group, G: Group) -> bool:
    """True iff every generator of H lies in G."""
    if H.degree != G.degree:
        raise DegreeMismatchError(f"degree {H.degree} does not match degree {G.degree}")
    return all(g in G.members for g in H.generators)
