"""
Permutation arithmetic and cycle notation.

Points are 1..n in text and 0..n-1 in storage. Products read left to right:
``compose(p, q)`` applies p first, then q, so the word ``x1 x2 ... xk`` is
``compose(compose(x1, x2), ...)``. Conjugation is ``x^g = g^-1 x g`` under
the same convention.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple

from errors import CycleNotationError, DegreeMismatchError

_TOKEN = re.compile(r'\s*(?:(\()|(\))|(\d+)|(\S))')


@dataclass(frozen=True, order=True)
class Permutation:
    """
    Immutable bijection of {0..n-1}, ordered lexicographically by images.

    ``images[i]`` is the 0-based image of the 0-based point i.
    """

    images: Tuple[int, ...]

    def __post_init__(self):
        if not self.images:
            raise CycleNotationError("permutation degree must be positive")
        if sorted(self.images) != list(range(len(self.images))):
            raise CycleNotationError(f"images {self.images} are not a bijection")

    @property
    def degree(self) -> int:
        return len(self.images)

    def is_identity(self) -> bool:
        return all(i == t for i, t in enumerate(self.images))

    def __call__(self, point: int) -> int:
        """Image of a 1-based point."""
        return self.images[point - 1] + 1

    def __mul__(self, other: 'Permutation') -> 'Permutation':
        return compose(self, other)

    def __str__(self):
        return format_cycles(self)

    def __repr__(self):
        return f"Permutation('{format_cycles(self)}', degree={self.degree})"


def identity(degree: int) -> Permutation:
    return Permutation(tuple(range(degree)))


def from_images(images: Sequence[int], one_based: bool = True) -> Permutation:
    """Build a permutation from an image list (1-based by default)."""
    shift = 1 if one_based else 0
    return Permutation(tuple(int(i) - shift for i in images))


def _check_degrees(p: Permutation, q: Permutation):
    if p.degree != q.degree:
        raise DegreeMismatchError(f"degree {p.degree} does not match degree {q.degree}")


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Apply p first, then q."""
    _check_degrees(p, q)
    qi = q.images
    return Permutation(tuple(qi[t] for t in p.images))


def inverse(p: Permutation) -> Permutation:
    result = [0] * p.degree
    for i, t in enumerate(p.images):
        result[t] = i
    return Permutation(tuple(result))


def conjugate(x: Permutation, g: Permutation) -> Permutation:
    """Return x^g = g^-1 x g, i.e. x with its cycles relabelled by g."""
    _check_degrees(x, g)
    gi = g.images
    result = [0] * x.degree
    for i, t in enumerate(x.images):
        result[gi[i]] = gi[t]
    return Permutation(tuple(result))


def power(p: Permutation, k: int) -> Permutation:
    """p^k by repeated squaring; negative k uses the inverse."""
    if k < 0:
        p, k = inverse(p), -k
    result = identity(p.degree)
    base = p
    while k:
        if k & 1:
            result = compose(result, base)
        base = compose(base, base)
        k >>= 1
    return result


def cycles(p: Permutation) -> List[Tuple[int, ...]]:
    """Nontrivial cycles as 1-based tuples, each led by its smallest point."""
    seen = [False] * p.degree
    result = []
    for start in range(p.degree):
        if seen[start]:
            continue
        cycle = []
        point = start
        while not seen[point]:
            seen[point] = True
            cycle.append(point + 1)
            point = p.images[point]
        if len(cycle) > 1:
            result.append(tuple(cycle))
    return result


def cycle_type(p: Permutation) -> Tuple[int, ...]:
    """Sorted lengths of the nontrivial cycles."""
    return tuple(sorted(len(c) for c in cycles(p)))


def element_order(p: Permutation) -> int:
    return math.lcm(1, *cycle_type(p))


def format_cycles(p: Permutation) -> str:
    parts = cycles(p)
    if not parts:
        return '()'
    return ''.join('(' + ' '.join(str(t) for t in c) + ')' for c in parts)


def parse_cycles(text: str, degree: int) -> Permutation:
    """
    Parse a product of disjoint cycles such as ``"(1 2)(3 4)"``.

    Args:
        text (str): cycle notation; ``"()"`` is the identity
        degree (int): number of points

    Returns:
        Permutation: the permutation on ``degree`` points

    Raises:
        CycleNotationError: malformed parentheses, out-of-range or repeated points
    """
    if degree < 1:
        raise CycleNotationError(f"degree must be positive, got {degree}")
    images = list(range(degree))
    used = set()
    current = None
    saw_cycle = False
    for match in _TOKEN.finditer(text):
        opening, closing, number, other = match.groups()
        if other is not None:
            raise CycleNotationError(f"unexpected character {other!r} in {text!r}")
        if opening:
            if current is not None:
                raise CycleNotationError(f"nested '(' in {text!r}")
            current = []
        elif closing:
            if current is None:
                raise CycleNotationError(f"unbalanced ')' in {text!r}")
            for i, point in enumerate(current):
                images[point - 1] = current[(i + 1) % len(current)] - 1
            current = None
            saw_cycle = True
        elif number is not None:
            if current is None:
                raise CycleNotationError(f"point {number} outside a cycle in {text!r}")
            point = int(number)
            if not 1 <= point <= degree:
                raise CycleNotationError(f"point {point} out of range 1..{degree}")
            if point in used:
                raise CycleNotationError(f"point {point} repeated in {text!r}")
            used.add(point)
            current.append(point)
    if current is not None:
        raise CycleNotationError(f"unclosed '(' in {text!r}")
    if not saw_cycle:
        raise CycleNotationError(f"no cycles in {text!r}; use '()' for the identity")
    return Permutation(tuple(images))


def parse_generators(text: str, degree: int) -> List[Permutation]:
    """Parse a ';'-separated generator list; blank entries are skipped."""
    return [parse_cycles(word, degree) for word in text.split(';') if word.strip()]


def product(perms: Iterable[Permutation], degree: int) -> Permutation:
    """Left-to-right product of a word; the empty word is the identity."""
    result = identity(degree)
    for p in perms:
        result = compose(result, p)
    return result
