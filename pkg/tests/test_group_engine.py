"""
Tests for group construction by closure, membership and enumeration.
"""

import math
import sys
from pathlib import Path

import pytest

# Add the project directory to Python path
project_dir = Path(__file__).parent.parent
sys.path.insert(0, str(project_dir))

from errors import DegreeMismatchError, EnumerationCapError
from group_engine import build_group, closure, contains, elements, is_subgroup_of
from perm_core import compose, identity, inverse, parse_cycles


def cyc(text, degree):
    return parse_cycles(text, degree)


def brute_closure(degree, gens):
    """Square the set until it stops growing."""
    found = {identity(degree)} | set(gens)
    while True:
        grown = found | {compose(a, b) for a in found for b in found}
        if grown == found:
            return found
        found = grown


def symmetric_gens(n):
    return [cyc('(' + ' '.join(map(str, range(1, n + 1))) + ')', n), cyc('(1 2)', n)]


def alternating_gens(n):
    return [cyc(f'(1 2 {k})', n) for k in range(3, n + 1)]


def dihedral_gens(n):
    reflection = ''.join(f'({i} {n + 1 - i})' for i in range(1, n // 2 + 1))
    return [cyc('(' + ' '.join(map(str, range(1, n + 1))) + ')', n), cyc(reflection, n)]


STANDARD_GROUPS = (
    [(f'S{n}', n, symmetric_gens(n), math.factorial(n)) for n in range(2, 6)]
    + [(f'A{n}', n, alternating_gens(n), math.factorial(n) // 2) for n in range(3, 6)]
    + [(f'C{n}', n, [cyc('(' + ' '.join(map(str, range(1, n + 1))) + ')', n)], n) for n in range(2, 9)]
    + [(f'D{n}', n, dihedral_gens(n), 2 * n) for n in range(3, 9)]
)


class TestBuildGroup:
    """Test group construction."""

    def test_s3(self):
        G = build_group(3, [cyc('(1 2)', 3), cyc('(1 2 3)', 3)])
        assert G.order == 6

    def test_empty_generators(self):
        G = build_group(4, [])
        assert G.order == 1
        assert G.elements == (identity(4),)
        assert G.is_trivial()

    def test_s4(self):
        assert build_group(4, [cyc('(1 2 3 4)', 4), cyc('(1 2)', 4)]).order == 24

    @pytest.mark.parametrize('name,degree,gens,order', STANDARD_GROUPS, ids=[g[0] for g in STANDARD_GROUPS])
    def test_standard_orders(self, name, degree, gens, order):
        G = build_group(degree, gens, name=name)
        assert G.order == order
        assert math.factorial(degree) % G.order == 0

    @pytest.mark.parametrize('name,degree,gens,order', STANDARD_GROUPS, ids=[g[0] for g in STANDARD_GROUPS])
    def test_closure_oracle(self, name, degree, gens, order):
        assert set(build_group(degree, gens).elements) == brute_closure(degree, gens)

    def test_closed_under_product_and_inverse(self):
        G = build_group(4, [cyc('(1 2 3)', 4), cyc('(1 2)(3 4)', 4)])
        for a in G.elements:
            assert inverse(a) in G
            for b in G.elements:
                assert compose(a, b) in G

    def test_generators_are_members(self):
        gens = dihedral_gens(6)
        G = build_group(6, gens)
        assert all(contains(G, g) for g in gens)

    def test_deterministic(self):
        gens = symmetric_gens(5)
        assert build_group(5, gens).elements == build_group(5, gens).elements

    def test_degree_mismatch(self):
        with pytest.raises(DegreeMismatchError):
            build_group(4, [cyc('(1 2)', 3)])

    def test_cap_exceeded(self):
        with pytest.raises(EnumerationCapError):
            build_group(5, symmetric_gens(5), cap=50)

    def test_closure_ignores_duplicates_and_identity(self):
        gens = [cyc('(1 2 3)', 3), cyc('(1 2 3)', 3), identity(3)]
        assert len(closure(3, gens)) == 3


class TestMembership:
    """Test contains, elements and is_subgroup_of."""

    def test_identity_is_member(self):
        G = build_group(4, symmetric_gens(4))
        assert contains(G, identity(4))

    def test_cyclic_membership(self):
        C3 = build_group(3, [cyc('(1 2 3)', 3)])
        assert not contains(C3, cyc('(1 3)', 3))
        assert len(elements(C3)) == 3

    def test_membership_wrong_degree(self):
        G = build_group(3, [cyc('(1 2 3)', 3)])
        with pytest.raises(DegreeMismatchError):
            contains(G, identity(4))

    def test_elements_canonical_order(self):
        G = build_group(2, [cyc('(1 2)', 2)])
        assert elements(G) == (identity(2), cyc('(1 2)', 2))
        S3 = build_group(3, symmetric_gens(3))
        assert len(elements(S3)) == 6
        assert list(elements(S3)) == sorted(elements(S3))

    def test_is_subgroup_of(self):
        S3 = build_group(3, symmetric_gens(3))
        A3 = build_group(3, [cyc('(1 2 3)', 3)])
        assert is_subgroup_of(A3, S3)
        assert not is_subgroup_of(S3, A3)
        assert is_subgroup_of(S3, S3)

    def test_is_subgroup_of_degree_mismatch(self):
        with pytest.raises(DegreeMismatchError):
            is_subgroup_of(build_group(3, []), build_group(4, []))

    def test_group_equality_by_elements(self):
        a = build_group(4, [cyc('(1 2 3 4)', 4), cyc('(1 2)', 4)])
        b = build_group(4, [cyc('(1 2)', 4), cyc('(2 3)', 4), cyc('(3 4)', 4)])
        assert a == b
        assert hash(a) == hash(b)


if __name__ == '__main__':
    pytest.main([__file__])
