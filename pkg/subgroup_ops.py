"""
Subgroups of an enumerated permutation group.

Subgroup construction, normalizers, product sets, normality, conjugate
subgroups and exhaustive subgroup enumeration. Every operation works on full
element tables; nothing here needs a stabilizer chain.
"""

from __future__ import annotations

import hashlib
import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence

from config import Config
from errors import DegreeMismatchError, EngineInvariantError, EnumerationCapError, NotASubgroupError
from group_engine import Group, closure, is_subgroup_of
from perm_core import Permutation, compose, conjugate, format_cycles

logger = logging.getLogger(__name__)


class Subgroup(Group):
    """A Group that remembers the parent it was carved out of."""

    def __init__(self, parent: Group, generators: Sequence[Permutation],
                 elements: Iterable[Permutation], name: Optional[str] = None):
        super().__init__(parent.degree, generators, elements, name=name)
        self.parent = parent
        self._fingerprint = None

    @property
    def fingerprint(self) -> str:
        if self._fingerprint is None:
            self._fingerprint = fingerprint(self)
        return self._fingerprint

    def __repr__(self):
        return f"<Subgroup <{self.describe_generators()}> order={self.order} of {self.parent!r}>"


def fingerprint(H: Group) -> str:
    """Hex digest of the canonical element table."""
    digest = hashlib.sha1()
    for e in H.elements:
        digest.update(bytes(e.images) if H.degree < 256 else repr(e.images).encode())
        digest.update(b';')
    return digest.hexdigest()


def _require_subgroup(H: Group, G: Group):
    if not is_subgroup_of(H, G):
        raise NotASubgroupError(f"<{H.describe_generators()}> is not a subgroup of {G!r}")


def as_subgroup(G: Group) -> Subgroup:
    """View G as a subgroup of itself."""
    return Subgroup(G, G.generators, G.elements, name=G.name)


def generated_subgroup(G: Group, gens: Sequence[Permutation], cap: Optional[int] = None) -> Subgroup:
    """
    Build <gens> as a Subgroup of G.

    Raises:
        NotASubgroupError: a generator lies outside G
    """
    gens = tuple(gens)
    for g in gens:
        if g.degree != G.degree:
            raise DegreeMismatchError(f"generator of degree {g.degree} for a group of degree {G.degree}")
        if g not in G.members:
            raise NotASubgroupError(f"generator {format_cycles(g)} is not an element of {G!r}")
    return Subgroup(G, gens, closure(G.degree, gens, cap))


def subgroup_from_elements(parent: Group, members: Iterable[Permutation]) -> Subgroup:
    """Wrap a closed element set, choosing generators greedily in canonical order."""
    members = frozenset(members)
    gens: List[Permutation] = []
    current = {parent.identity}
    for e in sorted(members):
        if e not in current:
            gens.append(e)
            current = set(closure(parent.degree, gens))
    if current != members:
        raise EngineInvariantError("element set passed as a subgroup is not closed")
    return Subgroup(parent, gens, members)


def intersection(A: Subgroup, B: Subgroup) -> Subgroup:
    small, large = (A, B) if A.order <= B.order else (B, A)
    return subgroup_from_elements(A.parent, (e for e in small.elements if e in large.members))


def normalizer(G: Group, H: Group) -> Subgroup:
    """
    N_G(H) by scanning G: g normalizes H iff it conjugates every generator into H.

    Raises:
        NotASubgroupError: H is not contained in G
    """
    _require_subgroup(H, G)
    members = H.members
    found = [g for g in G.elements
             if all(conjugate(h, g) in members for h in H.generators)]
    logger.debug(f"Normalizer of order {len(found)} for subgroup of order {H.order}")
    return subgroup_from_elements(G, found)


@dataclass(frozen=True)
class ProductSet:
    """The set A*B with its size and whether it exhausts the parent."""

    elements: frozenset
    intersection_order: int
    parent_order: int

    @property
    def size(self) -> int:
        return len(self.elements)

    @property
    def covers_parent(self) -> bool:
        return self.size == self.parent_order


def product_set(A: Subgroup, B: Subgroup) -> ProductSet:
    """
    {a*b : a in A, b in B}.

    Raises:
        NotASubgroupError: A and B have different parents
    """
    if A.parent != B.parent:
        raise NotASubgroupError("product set of subgroups with different parents")
    common = intersection(A, B).order
    elements = frozenset(compose(a, b) for a in A.elements for b in B.elements)
    if len(elements) * common != A.order * B.order:
        raise EngineInvariantError(
            f"|AB| = {len(elements)} violates |A||B|/|A&B| = {A.order}*{B.order}/{common}")
    return ProductSet(elements, common, A.parent.order)


def is_normal(G: Group, K: Group) -> bool:
    """True iff every generator of K, conjugated by every generator of G, stays in K."""
    _require_subgroup(K, G)
    return all(conjugate(k, g) in K.members for g in G.generators for k in K.generators)


def conjugate_subgroup(H: Subgroup, g: Permutation) -> Subgroup:
    """
    H^g, carried in the same parent.

    Raises:
        NotASubgroupError: g lies outside H's parent
    """
    if g not in H.parent:
        raise NotASubgroupError(f"conjugating element {format_cycles(g)} is outside the parent group")
    gens = [conjugate(h, g) for h in H.generators]
    return Subgroup(H.parent, gens, (conjugate(h, g) for h in H.elements))


def all_subgroups(G: Group, cap: Optional[int] = None) -> List[Subgroup]:
    """
    Every subgroup of G once, sorted by (order, fingerprint).

    Starts from the cyclic subgroups and repeatedly extends each new subgroup
    by one more element of G until nothing new appears.

    Raises:
        EnumerationCapError: |G| exceeds the sweep cap
    """
    cap = Config.SUBGROUP_SWEEP_CAP if cap is None else cap
    if G.order > cap:
        raise EnumerationCapError(f"subgroup enumeration of a group of order {G.order} exceeds the sweep cap of {cap}")

    found: Dict[frozenset, Subgroup] = {}

    def _register(gens):
        members = frozenset(closure(G.degree, gens))
        if members in found:
            return None
        H = Subgroup(G, [g for g in gens if not g.is_identity()], members)
        found[members] = H
        return H

    frontier = [H for H in (_register([x]) for x in G.elements) if H is not None]
    while frontier:
        extended = []
        for H in frontier:
            for x in G.elements:
                if x in H.members:
                    continue
                K = _register(H.generators + (x,))
                if K is not None:
                    extended.append(K)
        frontier = extended

    result = sorted(found.values(), key=lambda H: (H.order, H.fingerprint))
    logger.debug(f"{G!r} has {len(result)} subgroups")
    return result
