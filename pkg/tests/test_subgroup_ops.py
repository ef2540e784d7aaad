"""
Tests for subgroups, normalizers, product sets and subgroup enumeration.
"""

import sys
from pathlib import Path

import pytest
from sympy import divisor_count

# Add the project directory to Python path
project_dir = Path(__file__).parent.parent
sys.path.insert(0, str(project_dir))

from catalog import make_builtin
from errors import DegreeMismatchError, EngineInvariantError, EnumerationCapError, NotASubgroupError
from group_engine import closure
from perm_core import conjugate, identity, parse_cycles
from subgroup_ops import (all_subgroups, as_subgroup, conjugate_subgroup, fingerprint, generated_subgroup,
                          intersection, is_normal, normalizer, product_set, subgroup_from_elements)


def cyc(text, degree):
    return parse_cycles(text, degree)


def sub(G, *texts):
    return generated_subgroup(G, [cyc(t, G.degree) for t in texts])


def brute_normalizer(G, H):
    return {g for g in G.elements if frozenset(conjugate(h, g) for h in H.elements) == H.members}


def brute_two_generated(G):
    """Every subgroup generated by at most two elements."""
    return {frozenset(closure(G.degree, [a, b])) for a in G.elements for b in G.elements}


@pytest.fixture(scope='module')
def s3():
    return make_builtin('S3')


@pytest.fixture(scope='module')
def s4():
    return make_builtin('S4')


SMALL_GROUPS = ['S3', 'S4', 'A4', 'D4', 'D5', 'D6', 'Q8', 'C6', 'C2xC2xC2', 'S3xC2']


class TestGeneratedSubgroup:
    """Test generated_subgroup and subgroup_from_elements."""

    def test_klein_four(self, s4):
        V = sub(s4, '(1 2)(3 4)', '(1 3)(2 4)')
        assert V.order == 4
        assert V.parent == s4

    def test_trivial(self, s4):
        T = generated_subgroup(s4, [])
        assert T.order == 1
        assert T.elements == (identity(4),)

    def test_generator_outside_parent(self):
        A4 = make_builtin('A4')
        with pytest.raises(NotASubgroupError):
            sub(A4, '(1 2)')

    def test_degree_mismatch(self, s3):
        with pytest.raises(DegreeMismatchError):
            generated_subgroup(s3, [cyc('(1 2)', 4)])

    def test_from_elements(self, s4):
        V = sub(s4, '(1 2)(3 4)', '(1 3)(2 4)')
        rebuilt = subgroup_from_elements(s4, V.elements)
        assert rebuilt == V
        assert rebuilt.members == frozenset(closure(4, rebuilt.generators))

    def test_from_elements_not_closed(self, s3):
        with pytest.raises(EngineInvariantError):
            subgroup_from_elements(s3, [identity(3), cyc('(1 2)', 3), cyc('(1 3)', 3)])

    def test_whole_group(self, s4):
        whole = generated_subgroup(s4, s4.generators)
        assert whole.parent == s4
        assert whole == s4

    def test_fingerprint_depends_on_elements_only(self, s4):
        a = sub(s4, '(1 2 3 4)')
        b = sub(s4, '(1 4 3 2)')
        assert a.fingerprint == b.fingerprint == fingerprint(a)
        assert a.fingerprint != sub(s4, '(1 2)').fingerprint


class TestNormalizer:
    """Test normalizers and normality."""

    def test_three_cycle_in_s4(self, s4):
        N = normalizer(s4, sub(s4, '(1 2 3)'))
        assert N.order == 6
        assert N.members == brute_normalizer(s4, sub(s4, '(1 2 3)'))

    def test_transposition_in_s4(self, s4):
        N = normalizer(s4, sub(s4, '(1 2)'))
        assert N.order == 4
        assert cyc('(3 4)', 4) in N

    def test_normal_subgroups(self, s4, s3):
        assert is_normal(s4, make_builtin('A4'))
        assert is_normal(s4, sub(s4, '(1 2)(3 4)', '(1 3)(2 4)'))
        assert is_normal(s3, sub(s3, '(1 2 3)'))
        assert not is_normal(s3, sub(s3, '(1 2)'))
        assert not is_normal(s4, sub(s4, '(1 2 3 4)', '(1 3)'))

    def test_trivial_and_whole_group_are_normal(self, s4):
        assert is_normal(s4, generated_subgroup(s4, []))
        assert is_normal(s4, generated_subgroup(s4, s4.generators))

    def test_not_a_subgroup(self, s4):
        with pytest.raises(NotASubgroupError):
            is_normal(make_builtin('A4'), s4)
        with pytest.raises(NotASubgroupError):
            normalizer(make_builtin('A4'), sub(s4, '(1 2)'))

    @pytest.mark.parametrize('name', SMALL_GROUPS)
    def test_normalizer_oracle(self, name):
        G = make_builtin(name)
        for H in all_subgroups(G):
            N = normalizer(G, H)
            assert N.members == brute_normalizer(G, H)
            assert H.members <= N.members
            assert is_normal(G, H) == (N.order == G.order)

    @pytest.mark.parametrize('name', SMALL_GROUPS)
    def test_is_normal_oracle(self, name):
        G = make_builtin(name)
        for H in all_subgroups(G):
            expected = all(conjugate(h, g) in H.members for g in G.elements for h in H.elements)
            assert is_normal(G, H) == expected


class TestProductSet:
    """Test product sets, intersections and conjugate subgroups."""

    def test_two_transpositions(self, s3):
        P = product_set(sub(s3, '(1 2)'), sub(s3, '(1 3)'))
        assert P.size == 4
        assert P.intersection_order == 1
        assert not P.covers_parent

    def test_a4_times_normalizer_covers_s4(self, s4):
        K = make_builtin('A4')
        K = generated_subgroup(s4, K.generators)
        N = normalizer(s4, sub(s4, '(1 2 3)'))
        P = product_set(K, N)
        assert (P.size, P.intersection_order) == (24, 3)
        assert P.covers_parent
        assert product_set(N, K).size == 24

    def test_different_parents(self, s3):
        A3 = make_builtin('A3')
        with pytest.raises(NotASubgroupError):
            product_set(sub(s3, '(1 2)'), sub(A3, '(1 2 3)'))

    def test_size_law_over_all_pairs(self):
        D4 = make_builtin('D4')
        subgroups = all_subgroups(D4)
        for A in subgroups:
            for B in subgroups:
                P = product_set(A, B)
                assert P.size * intersection(A, B).order == A.order * B.order
                assert P.size == product_set(B, A).size

    def test_two_sided_sizes_agree_in_s4(self, s4):
        subgroups = all_subgroups(s4)
        for A in subgroups[::3]:
            for B in subgroups[::2]:
                assert product_set(A, B).size == product_set(B, A).size

    def test_intersection(self, s4):
        A4 = generated_subgroup(s4, make_builtin('A4').generators)
        D4 = sub(s4, '(1 2 3 4)', '(1 3)')
        meet = intersection(A4, D4)
        assert meet == sub(s4, '(1 2)(3 4)', '(1 3)(2 4)')

    def test_conjugate_subgroup(self, s3):
        H = sub(s3, '(1 2)')
        assert conjugate_subgroup(H, cyc('(2 3)', 3)) == sub(s3, '(1 3)')
        assert conjugate_subgroup(H, cyc('(1 2)', 3)) == H

    def test_conjugate_subgroup_outside_parent(self):
        A3 = make_builtin('A3')
        with pytest.raises(NotASubgroupError):
            conjugate_subgroup(sub(A3, '(1 2 3)'), cyc('(1 2)', 3))


class TestAllSubgroups:
    """Test exhaustive subgroup enumeration."""

    @pytest.mark.parametrize('name,count', [
        ('C2', 2), ('C5', 2), ('C7', 2), ('S3', 6), ('S4', 30), ('A4', 10), ('D4', 10), ('Q8', 6),
        ('C2xC2xC2', 16), ('D6', 16),
    ])
    def test_counts(self, name, count):
        assert len(all_subgroups(make_builtin(name))) == count

    @pytest.mark.parametrize('n', range(1, 25))
    def test_cyclic_counts(self, n):
        assert len(all_subgroups(make_builtin(f'C{n}'))) == divisor_count(n)

    @pytest.mark.parametrize('name', ['S3', 'S4', 'D4', 'D5', 'Q8', 'A4'])
    def test_matches_two_generator_oracle(self, name):
        G = make_builtin(name)
        assert {H.members for H in all_subgroups(G)} == brute_two_generated(G)

    def test_sorted_and_bounded(self, s4):
        subgroups = all_subgroups(s4)
        keys = [(H.order, H.fingerprint) for H in subgroups]
        assert keys == sorted(keys)
        assert subgroups[0].order == 1
        assert subgroups[-1] == s4
        assert all(s4.order % H.order == 0 for H in subgroups)

    def test_deterministic(self, s4):
        assert [H.elements for H in all_subgroups(s4)] == [H.elements for H in all_subgroups(s4)]

    def test_cap(self, s4):
        with pytest.raises(EnumerationCapError):
            all_subgroups(s4, cap=10)


if __name__ == '__main__':
    pytest.main([__file__])
