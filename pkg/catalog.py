"""
Builtin groups, direct products and group files.

Group-file format: the first meaningful line is ``degree n``; every later
nonblank line is one generator in cycle notation; ``#`` starts a comment.
"""

from __future__ import annotations

import logging
from pathlib import Path
from typing import List, Optional, Tuple

from config import CatalogConfig, Config
from errors import CatalogError, CycleNotationError, GroupFileError
from group_engine import Group, build_group
from perm_core import Permutation, format_cycles, from_images, parse_cycles

logger = logging.getLogger(__name__)


def _from_cycles(degree: int, *cycle_list) -> Permutation:
    images = list(range(1, degree + 1))
    for c in cycle_list:
        for i, point in enumerate(c):
            images[point - 1] = c[(i + 1) % len(c)]
    return from_images(images)


def make_symmetric(n: int, cap: Optional[int] = None, name: Optional[str] = None) -> Group:
    if n < 1:
        raise CatalogError(f"S_n needs n >= 1, got {n}")
    gens = [] if n == 1 else [_from_cycles(n, range(1, n + 1)), _from_cycles(n, (1, 2))]
    return build_group(n, gens, cap, name=name or f'S{n}')


def make_alternating(n: int, cap: Optional[int] = None, name: Optional[str] = None) -> Group:
    """A_n from the 3-cycles (1 2 k); A_1 and A_2 are trivial."""
    if n < 1:
        raise CatalogError(f"A_n needs n >= 1, got {n}")
    gens = [_from_cycles(n, (1, 2, k)) for k in range(3, n + 1)]
    return build_group(n, gens, cap, name=name or f'A{n}')


def make_cyclic(n: int, cap: Optional[int] = None, name: Optional[str] = None) -> Group:
    if n < 1:
        raise CatalogError(f"C_n needs n >= 1, got {n}")
    gens = [] if n == 1 else [_from_cycles(n, range(1, n + 1))]
    return build_group(n, gens, cap, name=name or f'C{n}')


def make_dihedral(n: int, cap: Optional[int] = None, name: Optional[str] = None) -> Group:
    """D_n of order 2n, acting on the vertices of an n-gon (n >= 3)."""
    if n < 3:
        raise CatalogError(f"D_n is built on an n-gon and needs n >= 3, got {n}")
    rotation = _from_cycles(n, range(1, n + 1))
    reflection = _from_cycles(n, *[(i, n + 1 - i) for i in range(1, n // 2 + 1)])
    return build_group(n, [rotation, reflection], cap, name=name or f'D{n}')


# Q8 = {1, i, j, k, -1, -i, -j, -k}, labelled 1..8 in that order
_UNITS = '1ijk'
_UNIT_PRODUCTS = {
    ('1', '1'): (1, '1'), ('1', 'i'): (1, 'i'), ('1', 'j'): (1, 'j'), ('1', 'k'): (1, 'k'),
    ('i', '1'): (1, 'i'), ('i', 'i'): (-1, '1'), ('i', 'j'): (1, 'k'), ('i', 'k'): (-1, 'j'),
    ('j', '1'): (1, 'j'), ('j', 'i'): (-1, 'k'), ('j', 'j'): (-1, '1'), ('j', 'k'): (1, 'i'),
    ('k', '1'): (1, 'k'), ('k', 'i'): (1, 'j'), ('k', 'j'): (-1, 'i'), ('k', 'k'): (-1, '1'),
}


def _quaternion_label(sign: int, unit: str) -> int:
    return _UNITS.index(unit) + (1 if sign > 0 else 5)


def _right_multiplication(unit: str) -> Permutation:
    images = []
    for label in range(1, 9):
        sign = 1 if label <= 4 else -1
        own = _UNITS[(label - 1) % 4]
        s, u = _UNIT_PRODUCTS[(own, unit)]
        images.append(_quaternion_label(sign * s, u))
    return from_images(images)


def make_quaternion(cap: Optional[int] = None, name: Optional[str] = None) -> Group:
    """Q8 in its right regular representation on 8 points."""
    return build_group(8, [_right_multiplication('i'), _right_multiplication('j')], cap, name=name or 'Q8')


def direct_product(G: Group, H: Group, cap: Optional[int] = None, name: Optional[str] = None) -> Group:
    """G x H acting on deg(G) + deg(H) points, G on the first block."""
    m, n = G.degree, H.degree
    gens = [Permutation(g.images + tuple(range(m, m + n))) for g in G.generators]
    gens += [Permutation(tuple(range(m)) + tuple(t + m for t in h.images)) for h in H.generators]
    if name is None and G.name and H.name:
        name = f'{G.name}x{H.name}'
    product = build_group(m + n, gens, cap, name=name)
    if product.order != G.order * H.order:
        raise CatalogError(f"direct product has order {product.order}, expected {G.order * H.order}")
    return product


_CONSTRUCTORS = {
    'S': make_symmetric,
    'A': make_alternating,
    'C': make_cyclic,
    'D': make_dihedral,
}


def make_builtin(name: str, cap: Optional[int] = None) -> Group:
    """
    Build a builtin group by name.

    Args:
        name (str): 'S4', 'A5', 'C12', 'D6', 'Q8', or a product such as 'S3xC2'

    Returns:
        Group: the named group

    Raises:
        CatalogError: the name is not a builtin
    """
    if not CatalogConfig.validate_name(name):
        raise CatalogError(f"unknown builtin group {name!r}")
    factors = name.split('x')
    groups = []
    for factor in factors:
        family, size, quaternion = CatalogConfig.BUILTIN_PATTERN.match(factor).groups()
        label = name if len(factors) == 1 else None
        groups.append(make_quaternion(cap, label) if quaternion else _CONSTRUCTORS[family](int(size), cap, label))
    group = groups[0]
    for i, other in enumerate(groups[1:], start=2):
        group = direct_product(group, other, cap, name=name if i == len(groups) else None)
    return group


def parse_group_text(text: str, cap: Optional[int] = None, name: Optional[str] = None) -> Group:
    """Parse the group-file format; errors carry 1-based line numbers."""
    degree = None
    gens = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue
        if degree is None:
            parts = line.split()
            if len(parts) != 2 or parts[0] != 'degree':
                raise GroupFileError(f"expected 'degree n', got {line!r}", lineno)
            try:
                degree = int(parts[1])
            except ValueError:
                raise GroupFileError(f"degree {parts[1]!r} is not an integer", lineno)
            if degree < 1:
                raise GroupFileError(f"degree must be positive, got {degree}", lineno)
            continue
        try:
            gens.append(parse_cycles(line, degree))
        except CycleNotationError as exc:
            raise GroupFileError(str(exc), lineno) from exc
    if degree is None:
        raise GroupFileError("missing 'degree n' line")
    return build_group(degree, gens, cap, name=name)


def load_group_file(path, cap: Optional[int] = None) -> Group:
    path = Path(path)
    try:
        text = path.read_text(encoding='utf-8')
    except UnicodeDecodeError as exc:
        line = exc.object[:exc.start].count(b'\n') + 1
        raise GroupFileError(f"{path} is not UTF-8 text: {exc.reason}", line) from exc
    except OSError as exc:
        raise GroupFileError(f"cannot read {path}: {exc.strerror}") from exc
    group = parse_group_text(text, cap, name=path.stem)
    logger.info(f"Loaded {group!r} from {path}")
    return group


def save_group_file(G: Group, path) -> None:
    lines = [f"degree {G.degree}"]
    if G.name:
        lines.insert(0, f"# {G.name}, order {G.order}")
    lines += [format_cycles(g) for g in G.generators]
    Path(path).write_text('\n'.join(lines) + '\n')


def resolve_group(spec: str, cap: Optional[int] = None) -> Group:
    """A builtin name if it is one, otherwise a group-file path."""
    if CatalogConfig.validate_name(spec):
        return make_builtin(spec, cap)
    if Path(spec).exists():
        return load_group_file(spec, cap)
    raise CatalogError(f"{spec!r} is neither a builtin group name nor an existing group file")


def default_catalog(max_order: Optional[int] = None) -> List[Tuple[str, Group]]:
    """The default sweep catalog in declaration order, keeping groups of order <= max_order."""
    max_order = Config.SWEEP_MAX_ORDER if max_order is None else max_order
    selected = []
    for name in CatalogConfig.DEFAULT_CATALOG:
        group = make_builtin(name)
        if group.order > max_order:
            logger.warning(f"Skipping {name} (order {group.order} > {max_order})")
            continue
        selected.append((name, group))
    return selected


__all__ = ['make_symmetric', 'make_alternating', 'make_cyclic', 'make_dihedral', 'make_quaternion',
           'direct_product', 'make_builtin', 'parse_group_text', 'load_group_file', 'save_group_file',
           'resolve_group', 'default_catalog']
