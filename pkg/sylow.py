"""
Sylow subgroups by Cauchy element and normalizer climb.

A Sylow p-subgroup of K is grown from a cyclic p-subgroup: while P is too
small, some p-element of N_K(P) outside P has its p-th power in P, and
adjoining it multiplies |P| by p. All choices are the canonically smallest
candidates so results are reproducible.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from sympy import isprime, primefactors

from errors import EngineInvariantError, SylowError
from group_engine import Group, closure
from perm_core import Permutation, conjugate, element_order, power
from subgroup_ops import Subgroup, conjugate_subgroup, generated_subgroup, normalizer

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SylowClass:
    """One prime's Sylow data inside K."""

    prime: int
    exponent: int
    representative: Subgroup
    conjugates: Tuple[Subgroup, ...]

    @property
    def count(self) -> int:
        return len(self.conjugates)

    @property
    def sylow_order(self) -> int:
        return self.prime ** self.exponent


def _require_prime(p: int):
    if not isprime(p):
        raise SylowError(f"{p} is not prime")


def p_part(n: int, p: int) -> int:
    """Largest power of p dividing n."""
    _require_prime(p)
    if n < 1:
        raise SylowError(f"p_part needs a positive integer, got {n}")
    part = 1
    while n % p == 0:
        n //= p
        part *= p
    return part


def p_component(x: Permutation, p: int) -> Permutation:
    """The p-part of x: the power of x whose order is the p-part of |x|."""
    order = element_order(x)
    return power(x, order // p_part(order, p))


def _cauchy_start(K: Group, p: int) -> Permutation:
    for x in K.elements:
        if element_order(x) % p == 0:
            return p_component(x, p)
    raise EngineInvariantError(f"no element of order divisible by {p} in a group of order {K.order}")


def sylow_subgroup(K: Group, p: int) -> Subgroup:
    """
    A Sylow p-subgroup of K.

    Args:
        K (Group): usually a Subgroup; the result is carried with K as parent
        p (int): a prime dividing |K|

    Returns:
        Subgroup: P <= K with |P| = p_part(|K|, p)

    Raises:
        SylowError: p is not prime or does not divide |K|
        EngineInvariantError: the climb made no progress
    """
    _require_prime(p)
    if K.order % p:
        raise SylowError(f"{p} does not divide |K| = {K.order}")
    target = p_part(K.order, p)

    P = generated_subgroup(K, [_cauchy_start(K, p)])
    while P.order < target:
        N = normalizer(K, P)
        climber = None
        for y in N.elements:
            if y in P.members:
                continue
            z = p_component(y, p)
            if z in P.members:
                continue
            while power(z, p) not in P.members:
                z = power(z, p)
            climber = z
            break
        if climber is None:
            raise EngineInvariantError(
                f"no p-element of N_K(P) \\ P for p={p}, |P|={P.order}, |N|={N.order}")
        grown = generated_subgroup(K, P.generators + (climber,))
        if grown.order != P.order * p:
            raise EngineInvariantError(f"climb from order {P.order} reached {grown.order}, expected {P.order * p}")
        P = grown
    return P


def all_sylow(K: Group, p: int, representative: Optional[Subgroup] = None) -> List[Subgroup]:
    """
    Every Sylow p-subgroup of K: the K-conjugation orbit of one of them.

    The representative comes first; the rest follow in canonical element order.
    """
    P = representative if representative is not None else sylow_subgroup(K, p)
    seen = {P.members: P}
    frontier = [P]
    while frontier:
        nxt = []
        for Q in frontier:
            for k in K.generators:
                R = conjugate_subgroup(Q, k)
                if R.members not in seen:
                    seen[R.members] = R
                    nxt.append(R)
        frontier = nxt
    others = sorted((Q for Q in seen.values() if Q is not P), key=lambda Q: Q.elements)
    return [P] + others


def sylow_classes(K: Group) -> List[SylowClass]:
    """One SylowClass per prime dividing |K|, primes ascending; empty for |K| = 1."""
    classes = []
    for p in primefactors(K.order):
        p = int(p)
        P = sylow_subgroup(K, p)
        members = all_sylow(K, p, representative=P)
        exponent = 0
        while p ** (exponent + 1) <= P.order:
            exponent += 1
        classes.append(SylowClass(p, exponent, P, tuple(members)))
        logger.debug(f"n_{p} = {len(members)} in a group of order {K.order}")
    return classes


def flatten_sylows(classes: Sequence[SylowClass]) -> List[Subgroup]:
    """P_1, ..., P_n: every Sylow subgroup across all primes, in class order."""
    return [P for cls in classes for P in cls.conjugates]


def sylow_generation_check(K: Group, classes: Optional[Sequence[SylowClass]] = None) -> bool:
    """True iff the Sylow subgroups of K together generate K."""
    classes = sylow_classes(K) if classes is None else classes
    gens = [g for P in flatten_sylows(classes) for g in P.generators]
    return frozenset(closure(K.degree, gens)) == K.members


def sylow_conjugator(K: Group, P: Group, Q: Group) -> Optional[Permutation]:
    """Smallest k in K with P^k = Q, or None."""
    if P.order != Q.order:
        return None
    for k in K.elements:
        if all(conjugate(x, k) in Q.members for x in P.generators):
            return k
    return None
