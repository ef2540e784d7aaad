"""
The Frattini lemma, its converse, and normality certificates.

Forward: K normal in G implies G = K N_G(P) for every Sylow subgroup P of K.
Converse: if G = K N_G(P) for every Sylow subgroup P of K, then K is normal.

A NormalityCertificate replays the converse for one pair (x, g): write x as a
word in Sylow elements, factor g = a_i b with a_i normalizing P_i and b in K,
and observe that each letter conjugated by g lands in P_i^b, which lies in K.
check_certificate re-verifies such a transcript from scratch.
"""

from __future__ import annotations

import json
import logging
from collections import deque
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from sympy import primefactors

from config import Config
from errors import (CertificateError, CycleNotationError, DecompositionError, DegreeMismatchError,
                    EngineInvariantError, EnumerationCapError, FrattiniError, NotASubgroupError, NotNormalError,
                    SylowError)
from group_engine import Group, build_group, is_subgroup_of
from perm_core import Permutation, compose, conjugate, format_cycles, inverse, parse_cycles, product
from subgroup_ops import Subgroup, conjugate_subgroup, is_normal, normalizer, product_set
from sylow import SylowClass, flatten_sylows, p_part, sylow_classes

logger = logging.getLogger(__name__)

SYLOW_MODES = ('all', 'representative')
PRODUCT_SIDES = ('KN', 'NK')


@dataclass(frozen=True)
class FrattiniEntry:
    """One Sylow subgroup P_i of K and the size of K N_G(P_i)."""

    prime: int
    sylow_index: int
    sylow: Subgroup
    normalizer_order: int
    intersection_order: int
    product_size: int
    group_order: int

    @property
    def holds(self) -> bool:
        return self.product_size == self.group_order


@dataclass(frozen=True)
class FrattiniReport:
    entries: Tuple[FrattiniEntry, ...]
    group_order: int
    subgroup_order: int
    mode: str = 'all'
    side: str = 'KN'

    @property
    def condition_holds(self) -> bool:
        return all(e.holds for e in self.entries)

    @property
    def vacuous(self) -> bool:
        """True when K is trivial and the condition holds with no Sylow subgroups to check."""
        return not self.entries


@dataclass(frozen=True)
class Verdict:
    condition_holds: bool
    normal: bool
    report: FrattiniReport = field(repr=False)

    @property
    def consistent(self) -> bool:
        return self.condition_holds == self.normal

    def describe(self) -> str:
        failing = [e for e in self.report.entries if not e.holds]
        lines = [f"condition_holds={self.condition_holds} normal={self.normal} consistent={self.consistent}"]
        for e in failing:
            lines.append(f"  P_{e.sylow_index} (p={e.prime}, |P|={e.sylow.order}): "
                         f"|N_G(P)|={e.normalizer_order} |K N_G(P)|={e.product_size} != |G|={e.group_order}")
        return '\n'.join(lines)


def _in_parent(G: Group, K: Group) -> Subgroup:
    if not is_subgroup_of(K, G):
        raise NotASubgroupError(f"<{K.describe_generators()}> is not a subgroup of {G!r}")
    if isinstance(K, Subgroup) and K.parent == G:
        return K
    return Subgroup(G, K.generators, K.elements, name=K.name)


def frattini_condition(G: Group, K: Group, mode: Optional[str] = None, side: str = 'KN',
                       classes: Optional[Sequence[SylowClass]] = None) -> FrattiniReport:
    """
    Test G = K N_G(P) for the Sylow subgroups of K.

    Args:
        G (Group): ambient group
        K (Group): subgroup of G; normality is not assumed
        mode (str): 'all' checks every Sylow subgroup, 'representative' one per prime
        side (str): 'KN' tests K*N_G(P), 'NK' tests N_G(P)*K
        classes (sequence): precomputed sylow_classes(K)

    Returns:
        FrattiniReport: one entry per Sylow subgroup checked, indexed P_1..P_n

    Raises:
        NotASubgroupError: K is not contained in G
    """
    mode = mode or Config.SYLOW_MODE
    if mode not in SYLOW_MODES:
        raise SylowError(f"unknown Sylow mode {mode!r}; expected one of {SYLOW_MODES}")
    if side not in PRODUCT_SIDES:
        raise SylowError(f"unknown product side {side!r}; expected one of {PRODUCT_SIDES}")
    K = _in_parent(G, K)
    classes = sylow_classes(K) if classes is None else classes

    entries = []
    offset = 0
    for cls in classes:
        members = cls.conjugates if mode == 'all' else cls.conjugates[:1]
        for i, P in enumerate(members, start=offset + 1):
            N = normalizer(G, P)
            prod = product_set(K, N) if side == 'KN' else product_set(N, K)
            entries.append(FrattiniEntry(cls.prime, i, P, N.order, prod.intersection_order, prod.size, G.order))
        offset += cls.count
    return FrattiniReport(tuple(entries), G.order, K.order, mode, side)


def frattini_forward(G: Group, K: Group, classes: Optional[Sequence[SylowClass]] = None) -> FrattiniReport:
    """
    The classical Frattini argument, checked over every Sylow subgroup of K.

    Raises:
        NotNormalError: K is not normal in G
        EngineInvariantError: some K N_G(P) misses G, which the lemma rules out
    """
    K = _in_parent(G, K)
    if not is_normal(G, K):
        raise NotNormalError(f"<{K.describe_generators()}> is not normal in {G!r}")
    report = frattini_condition(G, K, mode='all', classes=classes)
    if not report.condition_holds:
        raise EngineInvariantError(f"Frattini argument failed for a normal subgroup of order {K.order}")
    return report


def converse_verdict(G: Group, K: Group, mode: Optional[str] = None,
                     classes: Optional[Sequence[SylowClass]] = None) -> Verdict:
    """Compare the Frattini condition with normality; any disagreement is a counterexample."""
    K = _in_parent(G, K)
    report = frattini_condition(G, K, mode=mode, classes=classes)
    verdict = Verdict(report.condition_holds, is_normal(G, K), report)
    if not verdict.consistent:
        logger.error(f"Counterexample in {G!r} for <{K.describe_generators()}>:\n{verdict.describe()}")
    return verdict


def decompose_in_product(G: Group, K: Group, N: Group, g: Permutation) -> Tuple[Permutation, Permutation]:
    """
    Factor g = a*b with a in N and b in K, taking the smallest valid a.

    Raises:
        DecompositionError: no factorisation exists, so N*K does not cover G
    """
    if g not in G:
        raise NotASubgroupError(f"{format_cycles(g)} is not an element of {G!r}")
    for a in N.elements:
        b = compose(inverse(a), g)
        if b in K.members:
            return a, b
    raise DecompositionError(f"{format_cycles(g)} is not in N*K (|N|={N.order}, |K|={K.order})")


@dataclass(frozen=True, order=True)
class Letter:
    """A word letter: a Sylow element and the index i of the P_i it is drawn from."""

    element: Permutation
    sylow_index: int


def _alphabet(classes: Sequence[SylowClass]) -> List[Letter]:
    assigned: Dict[Permutation, int] = {}
    for i, P in enumerate(flatten_sylows(classes), start=1):
        for e in P.elements:
            if not e.is_identity() and e not in assigned:
                assigned[e] = i
    return sorted(Letter(e, i) for e, i in assigned.items())


def word_table(K: Group, classes: Optional[Sequence[SylowClass]] = None) -> Dict[Permutation, Tuple[Letter, ...]]:
    """Shortest Sylow words for every element of K, by breadth-first search of the Cayley graph."""
    classes = sylow_classes(K) if classes is None else classes
    alphabet = _alphabet(classes)
    words = {K.identity: ()}
    queue = deque([K.identity])
    while queue:
        current = queue.popleft()
        for letter in alphabet:
            nxt = compose(current, letter.element)
            if nxt not in words:
                words[nxt] = words[current] + (letter,)
                queue.append(nxt)
    return words


def sylow_word(K: Group, x: Permutation, classes: Optional[Sequence[SylowClass]] = None,
               table: Optional[Dict[Permutation, Tuple[Letter, ...]]] = None) -> Tuple[Letter, ...]:
    """
    A shortest word in the Sylow elements of K whose product is x.

    Raises:
        NotASubgroupError: x is not in K
    """
    if x not in K:
        raise NotASubgroupError(f"{format_cycles(x)} is not an element of K")
    table = word_table(K, classes) if table is None else table
    try:
        return table[x]
    except KeyError:
        raise EngineInvariantError(f"Sylow subgroups do not generate K: no word for {format_cycles(x)}")


@dataclass(frozen=True)
class Decomposition:
    sylow_index: int
    a: Permutation
    b: Permutation


@dataclass(frozen=True)
class ConjugatedLetter:
    """letter^g, with generators of the subgroup P_i^b it lands in."""

    element: Permutation
    sylow_index: int
    landing: Tuple[Permutation, ...]


@dataclass(frozen=True)
class NormalityCertificate:
    degree: int
    group_generators: Tuple[Permutation, ...]
    subgroup_generators: Tuple[Permutation, ...]
    x: Permutation
    g: Permutation
    sylow_subgroups: Tuple[Tuple[int, Tuple[Permutation, ...]], ...]
    word: Tuple[Letter, ...]
    decompositions: Tuple[Decomposition, ...]
    conjugated_letters: Tuple[ConjugatedLetter, ...]
    result: Permutation

    def sylow_generators(self) -> Dict[int, Tuple[Permutation, ...]]:
        return dict(self.sylow_subgroups)


def build_certificate(G: Group, K: Group, x: Permutation, g: Permutation,
                      classes: Optional[Sequence[SylowClass]] = None,
                      table: Optional[Dict[Permutation, Tuple[Letter, ...]]] = None) -> NormalityCertificate:
    """
    Replay the converse's proof for one (x, g).

    Raises:
        CertificateError: the Frattini condition fails for (G, K)
        NotASubgroupError: x not in K, g not in G, or K not in G
        EngineInvariantError: the assembled transcript does not verify
    """
    K = _in_parent(G, K)
    if x not in K:
        raise NotASubgroupError(f"x = {format_cycles(x)} is not an element of K")
    if g not in G:
        raise NotASubgroupError(f"g = {format_cycles(g)} is not an element of G")
    classes = sylow_classes(K) if classes is None else classes
    if not frattini_condition(G, K, mode='all', classes=classes).condition_holds:
        raise CertificateError("G != K N_G(P) for some Sylow subgroup P of K; no certificate exists")

    sylows = flatten_sylows(classes)
    word = sylow_word(K, x, classes, table)
    used = sorted({letter.sylow_index for letter in word})

    decompositions = {}
    for i in used:
        a, b = decompose_in_product(G, K, normalizer(G, sylows[i - 1]), g)
        decompositions[i] = Decomposition(i, a, b)

    conjugated = []
    for letter in word:
        landing = conjugate_subgroup(sylows[letter.sylow_index - 1], decompositions[letter.sylow_index].b)
        image = conjugate(letter.element, g)
        if image not in landing.members or not landing.members <= K.members:
            raise EngineInvariantError(f"letter {format_cycles(letter.element)}^g escaped P_{letter.sylow_index}^b")
        conjugated.append(ConjugatedLetter(image, letter.sylow_index, landing.generators))

    result = product((c.element for c in conjugated), G.degree)
    if result != conjugate(x, g) or result not in K.members:
        raise EngineInvariantError(f"certificate product {format_cycles(result)} does not match x^g")

    logger.info(f"Certificate for x={format_cycles(x)}, g={format_cycles(g)}: "
                f"{len(word)} letters over {len(used)} Sylow subgroups")
    return NormalityCertificate(
        degree=G.degree,
        group_generators=G.generators,
        subgroup_generators=K.generators,
        x=x,
        g=g,
        sylow_subgroups=tuple((i, sylows[i - 1].generators) for i in used),
        word=word,
        decompositions=tuple(decompositions[i] for i in used),
        conjugated_letters=tuple(conjugated),
        result=result,
    )


@dataclass(frozen=True)
class CertificateCheck:
    """Outcome of check_certificate; truthy iff the certificate was accepted."""

    ok: bool
    reason: str = 'ok'
    detail: str = ''

    def __bool__(self):
        return self.ok


def _reject(reason: str, detail: str = '') -> CertificateCheck:
    logger.info(f"Certificate rejected: {reason} {detail}".rstrip())
    return CertificateCheck(False, reason, detail)


def check_certificate(C: NormalityCertificate, G: Group, K: Group) -> CertificateCheck:
    """
    Independently re-verify a certificate against G and K.

    Only composition, inversion, conjugation and element-table membership are
    used; none of the builder's intermediate objects are consulted.
    """
    try:
        return _check(C, G, K)
    except (DegreeMismatchError, CycleNotationError, EnumerationCapError) as exc:
        return _reject('malformed', str(exc))


def _inside(gens: Sequence[Permutation], H: Group) -> bool:
    return all(p in H.members for p in gens)


def _check(C: NormalityCertificate, G: Group, K: Group) -> CertificateCheck:
    if (C.degree != G.degree or not _inside(C.group_generators, G)
            or build_group(C.degree, C.group_generators).members != G.members):
        return _reject('bad-group')
    if (not K.members <= G.members or not _inside(C.subgroup_generators, K)
            or build_group(C.degree, C.subgroup_generators).members != K.members):
        return _reject('bad-subgroup')
    if C.x not in K.members:
        return _reject('x-not-in-K', format_cycles(C.x))
    if C.g not in G.members:
        return _reject('g-not-in-G', format_cycles(C.g))

    sylows = {}
    for i, gens in C.sylow_subgroups:
        if not _inside(gens, K):
            return _reject('bad-sylow', f"P_{i}")
        P = build_group(C.degree, gens)
        primes = primefactors(P.order)
        if (len(primes) != 1 or not P.members <= K.members
                or p_part(K.order, int(primes[0])) != P.order):
            return _reject('bad-sylow', f"P_{i}")
        sylows[i] = P

    for letter in C.word:
        P = sylows.get(letter.sylow_index)
        if P is None or letter.element not in P.members:
            return _reject('letter-not-in-sylow', format_cycles(letter.element))
    if product((letter.element for letter in C.word), C.degree) != C.x:
        return _reject('word-product')

    decompositions = {d.sylow_index: d for d in C.decompositions}
    if len(decompositions) != len(C.decompositions) or set(decompositions) != set(sylows):
        return _reject('bad-decomposition', 'decompositions do not match the cited Sylow subgroups')
    for i, d in decompositions.items():
        if compose(d.a, d.b) != C.g:
            return _reject('bad-decomposition', f"a*b != g for P_{i}")
        if d.a not in G.members or any(conjugate(y, d.a) not in sylows[i].members for y in sylows[i].elements):
            return _reject('a-not-in-normalizer', f"P_{i}")
        if d.b not in K.members:
            return _reject('b-not-in-K', f"P_{i}")

    if len(C.conjugated_letters) != len(C.word):
        return _reject('conjugate-mismatch', 'conjugated letters do not match the word')
    for letter, image in zip(C.word, C.conjugated_letters):
        if image.sylow_index != letter.sylow_index or image.element != conjugate(letter.element, C.g):
            return _reject('conjugate-mismatch', format_cycles(image.element))
        b = decompositions[letter.sylow_index].b
        if not _inside(image.landing, K):
            return _reject('landing-not-in-K', format_cycles(image.element))
        landing = build_group(C.degree, image.landing)
        expected = frozenset(conjugate(y, b) for y in sylows[letter.sylow_index].elements)
        if landing.members != expected or image.element not in landing.members:
            return _reject('landing-mismatch', format_cycles(image.element))
        if not landing.members <= K.members:
            return _reject('landing-not-in-K', format_cycles(image.element))

    if C.result != product((c.element for c in C.conjugated_letters), C.degree) or C.result != conjugate(C.x, C.g):
        return _reject('result-mismatch', format_cycles(C.result))
    if C.result not in K.members:
        return _reject('result-not-in-K', format_cycles(C.result))
    return CertificateCheck(True)


def certificate_to_dict(C: NormalityCertificate) -> dict:
    """Serialise with permutations in cycle notation and stable field names."""
    return {
        'degree': C.degree,
        'group_generators': [format_cycles(p) for p in C.group_generators],
        'subgroup_generators': [format_cycles(p) for p in C.subgroup_generators],
        'x': format_cycles(C.x),
        'g': format_cycles(C.g),
        'sylow_subgroups': {str(i): [format_cycles(p) for p in gens] for i, gens in C.sylow_subgroups},
        'word': [{'element': format_cycles(l.element), 'sylow_index': l.sylow_index} for l in C.word],
        'decompositions': [{'sylow_index': d.sylow_index, 'a': format_cycles(d.a), 'b': format_cycles(d.b)}
                           for d in C.decompositions],
        'conjugated_letters': [{'element': format_cycles(c.element), 'sylow_index': c.sylow_index,
                                'landing': [format_cycles(p) for p in c.landing]}
                               for c in C.conjugated_letters],
        'result': format_cycles(C.result),
    }


def certificate_from_dict(data: dict) -> NormalityCertificate:
    """
    Parse the serialised form.

    Raises:
        CertificateError: missing fields or invalid cycle notation
    """
    try:
        n = int(data['degree'])

        def perm(text):
            return parse_cycles(text, n)

        def perms(texts):
            return tuple(perm(t) for t in texts)

        return NormalityCertificate(
            degree=n,
            group_generators=perms(data['group_generators']),
            subgroup_generators=perms(data['subgroup_generators']),
            x=perm(data['x']),
            g=perm(data['g']),
            sylow_subgroups=tuple(sorted((int(i), perms(gens)) for i, gens in data['sylow_subgroups'].items())),
            word=tuple(Letter(perm(l['element']), int(l['sylow_index'])) for l in data['word']),
            decompositions=tuple(Decomposition(int(d['sylow_index']), perm(d['a']), perm(d['b']))
                                 for d in data['decompositions']),
            conjugated_letters=tuple(ConjugatedLetter(perm(c['element']), int(c['sylow_index']), perms(c['landing']))
                                     for c in data['conjugated_letters']),
            result=perm(data['result']),
        )
    except (KeyError, TypeError, AttributeError, ValueError) as exc:
        if isinstance(exc, FrattiniError):
            raise CertificateError(f"invalid certificate: {exc}") from exc
        raise CertificateError(f"malformed certificate document: {exc!r}") from exc


def dump_certificate(C: NormalityCertificate, path) -> None:
    Path(path).write_text(json.dumps(certificate_to_dict(C), indent=2) + '\n')
    logger.info(f"Wrote certificate to {path}")


def load_certificate(path) -> NormalityCertificate:
    try:
        data = json.loads(Path(path).read_text(encoding='utf-8'))
    except UnicodeDecodeError as exc:
        raise CertificateError(f"{path} is not UTF-8 text: {exc.reason} at byte {exc.start}") from exc
    except json.JSONDecodeError as exc:
        raise CertificateError(f"{path} is not a certificate document: {exc}") from exc
    return certificate_from_dict(data)
