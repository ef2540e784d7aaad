"""
Tests for normality certificates: construction, independent checking,
tamper detection and the JSON document format.
"""

import json
import random
import sys
from dataclasses import replace
from pathlib import Path

import pytest

# Add the project directory to Python path
project_dir = Path(__file__).parent.parent
sys.path.insert(0, str(project_dir))

from catalog import make_builtin
from config import Config
from errors import CertificateError, NotASubgroupError
from frattini import (ConjugatedLetter, Decomposition, Letter, NormalityCertificate, build_certificate,
                      certificate_from_dict, certificate_to_dict, check_certificate, dump_certificate,
                      load_certificate, word_table)
from group_engine import build_group
from perm_core import compose, conjugate, identity, inverse, parse_cycles
from subgroup_ops import all_subgroups, generated_subgroup, is_normal, normalizer
from sylow import sylow_classes


def cyc(text, degree):
    return parse_cycles(text, degree)


def sub(G, *texts):
    return generated_subgroup(G, [cyc(t, G.degree) for t in texts])


@pytest.fixture(scope='module')
def s4():
    return make_builtin('S4')


@pytest.fixture(scope='module')
def a4_in_s4(s4):
    return sub(s4, '(1 2 3)', '(1 2)(3 4)')


@pytest.fixture(scope='module')
def klein_certificate(s4, a4_in_s4):
    return build_certificate(s4, a4_in_s4, cyc('(1 2)(3 4)', 4), cyc('(1 2 3 4)', 4))


@pytest.fixture(scope='module')
def three_cycle_certificate(s4, a4_in_s4):
    return build_certificate(s4, a4_in_s4, cyc('(1 2 3)', 4), cyc('(1 2 3 4)', 4))


class TestBuildCertificate:
    """Test certificate construction on known cases."""

    def test_identity(self, s4, a4_in_s4):
        C = build_certificate(s4, a4_in_s4, identity(4), cyc('(1 2)', 4))
        assert C.word == ()
        assert C.decompositions == ()
        assert C.result == identity(4)
        assert check_certificate(C, s4, a4_in_s4)

    def test_s3_rotation(self):
        S3 = make_builtin('S3')
        A3 = sub(S3, '(1 2 3)')
        C = build_certificate(S3, A3, cyc('(1 2 3)', 3), cyc('(1 2)', 3))
        assert C.result == cyc('(1 3 2)', 3)
        assert check_certificate(C, S3, A3)

    def test_klein_in_a4(self, s4, a4_in_s4, klein_certificate):
        assert klein_certificate.result == cyc('(1 4)(2 3)', 4)
        assert len(klein_certificate.word) == 1
        assert check_certificate(klein_certificate, s4, a4_in_s4)

    def test_decompositions_are_valid(self, s4, a4_in_s4, three_cycle_certificate):
        C = three_cycle_certificate
        sylows = C.sylow_generators()
        for d in C.decompositions:
            assert compose(d.a, d.b) == C.g
            assert d.b in a4_in_s4
            P = build_group(4, sylows[d.sylow_index])
            assert d.a in normalizer(s4, generated_subgroup(s4, P.generators))

    def test_landings_lie_in_k(self, a4_in_s4, three_cycle_certificate):
        for letter in three_cycle_certificate.conjugated_letters:
            landing = build_group(4, letter.landing)
            assert letter.element in landing
            assert landing.members <= a4_in_s4.members

    def test_requires_the_condition(self):
        S3 = make_builtin('S3')
        with pytest.raises(CertificateError):
            build_certificate(S3, sub(S3, '(1 2)'), cyc('(1 2)', 3), cyc('(1 3)', 3))

    def test_x_outside_k(self, s4, a4_in_s4):
        with pytest.raises(NotASubgroupError):
            build_certificate(s4, a4_in_s4, cyc('(1 2)', 4), identity(4))

    def test_g_outside_g(self):
        A4 = make_builtin('A4')
        K = sub(A4, '(1 2)(3 4)', '(1 3)(2 4)')
        with pytest.raises(NotASubgroupError):
            build_certificate(A4, K, cyc('(1 2)(3 4)', 4), cyc('(1 2)', 4))


class TestSampledCertificates:
    """Every certificate the builder emits must pass the independent checker."""

    def test_random_instances(self):
        rng = random.Random(2024)
        cases = []
        for name in ['S3', 'S4', 'A4', 'D4', 'D6', 'Q8', 'S3xC2', 'C12']:
            G = make_builtin(name)
            for K in all_subgroups(G):
                if is_normal(G, K) and not K.is_trivial():
                    classes = sylow_classes(K)
                    cases.append((G, K, classes, word_table(K, classes)))
        checked = 0
        while checked < 120:
            G, K, classes, table = rng.choice(cases)
            x = rng.choice(K.elements)
            g = rng.choice(G.elements)
            C = build_certificate(G, K, x, g, classes=classes, table=table)
            assert C.result == conjugate(x, g)
            result = check_certificate(C, G, K)
            assert result, result.reason
            checked += 1


class TestTamperedCertificates:
    """The checker rejects every single-field corruption with a specific reason."""

    @pytest.mark.parametrize('changes,reason', [
        ({'x': '(1 2 3)'}, 'word-product'),
        ({'x': '(1 2)'}, 'x-not-in-K'),
        ({'result': '(1 3)(2 4)'}, 'result-mismatch'),
        ({'group_generators': ['(1 2 3)', '(1 2)(3 4)']}, 'bad-group'),
        ({'subgroup_generators': ['(1 2)(3 4)', '(1 3)(2 4)']}, 'bad-subgroup'),
    ])
    def test_field_changes(self, s4, a4_in_s4, klein_certificate, changes, reason):
        fields = {}
        for key, value in changes.items():
            if isinstance(value, list):
                fields[key] = tuple(cyc(v, 4) for v in value)
            else:
                fields[key] = cyc(value, 4)
        result = check_certificate(replace(klein_certificate, **fields), s4, a4_in_s4)
        assert not result
        assert result.reason == reason

    def test_letter_outside_its_sylow(self, s4, a4_in_s4, klein_certificate):
        forged = replace(klein_certificate, word=(Letter(cyc('(1 2 3)', 4), 1),))
        assert check_certificate(forged, s4, a4_in_s4).reason == 'letter-not-in-sylow'

    def test_cited_subgroup_not_sylow(self, s4, a4_in_s4, klein_certificate):
        forged = replace(klein_certificate, sylow_subgroups=((1, (cyc('(1 2)(3 4)', 4),)),))
        assert check_certificate(forged, s4, a4_in_s4).reason == 'bad-sylow'

    def test_missing_decomposition(self, s4, a4_in_s4, klein_certificate):
        forged = replace(klein_certificate, decompositions=())
        assert check_certificate(forged, s4, a4_in_s4).reason == 'bad-decomposition'

    def test_factors_do_not_multiply_to_g(self, s4, a4_in_s4, klein_certificate):
        d = klein_certificate.decompositions[0]
        forged = replace(klein_certificate, decompositions=(replace(d, b=compose(d.b, cyc('(1 2 3)', 4))),))
        assert check_certificate(forged, s4, a4_in_s4).reason == 'bad-decomposition'

    def test_b_outside_k(self, s4, a4_in_s4, klein_certificate):
        forged = replace(klein_certificate,
                         decompositions=(Decomposition(1, identity(4), klein_certificate.g),))
        assert check_certificate(forged, s4, a4_in_s4).reason == 'b-not-in-K'

    def test_a_outside_normalizer(self, s4, a4_in_s4, three_cycle_certificate):
        C = three_cycle_certificate
        d = C.decompositions[0]
        P = generated_subgroup(s4, C.sylow_generators()[d.sylow_index])
        N = normalizer(s4, P)
        a = next(e for e in s4.elements if e not in N)
        b = compose(inverse(a), C.g)
        forged = replace(C, decompositions=(Decomposition(d.sylow_index, a, b),) + C.decompositions[1:])
        assert check_certificate(forged, s4, a4_in_s4).reason == 'a-not-in-normalizer'

    def test_conjugated_letter_changed(self, s4, a4_in_s4, klein_certificate):
        c = klein_certificate.conjugated_letters[0]
        forged = replace(klein_certificate,
                         conjugated_letters=(replace(c, element=cyc('(1 2)(3 4)', 4)),))
        assert check_certificate(forged, s4, a4_in_s4).reason == 'conjugate-mismatch'

    def test_landing_changed(self, s4, a4_in_s4, three_cycle_certificate):
        C = three_cycle_certificate
        c = C.conjugated_letters[0]
        wrong = next(p for p in a4_in_s4.elements if not p.is_identity() and p not in build_group(4, c.landing))
        forged = replace(C, conjugated_letters=(replace(c, landing=(wrong,)),) + C.conjugated_letters[1:])
        assert check_certificate(forged, s4, a4_in_s4).reason == 'landing-mismatch'

    def test_forged_certificate_for_non_normal_subgroup(self):
        S3 = make_builtin('S3')
        K = sub(S3, '(1 2)')
        x, g = cyc('(1 2)', 3), cyc('(1 3)', 3)
        for a, b in [(identity(3), g), (g, identity(3))]:
            forged = NormalityCertificate(
                degree=3,
                group_generators=S3.generators,
                subgroup_generators=K.generators,
                x=x,
                g=g,
                sylow_subgroups=((1, K.generators),),
                word=(Letter(x, 1),),
                decompositions=(Decomposition(1, a, b),),
                conjugated_letters=(ConjugatedLetter(conjugate(x, g), 1, (conjugate(x, b),)),),
                result=conjugate(x, g),
            )
            assert not check_certificate(forged, S3, K)

    def test_generators_of_a_larger_group(self, monkeypatch):
        C6 = make_builtin('C6')
        C = build_certificate(C6, C6, cyc('(1 2 3 4 5 6)', 6), identity(6))
        S6 = make_builtin('S6')
        monkeypatch.setattr(Config, 'ENUMERATION_CAP', 100)
        result = check_certificate(replace(C, group_generators=S6.generators), C6, C6)
        assert not result
        assert result.reason == 'bad-group'

    def test_landing_outside_k(self, s4, a4_in_s4, three_cycle_certificate):
        C = three_cycle_certificate
        c = C.conjugated_letters[0]
        forged = replace(C, conjugated_letters=(replace(c, landing=(cyc('(1 2)', 4),)),) + C.conjugated_letters[1:])
        assert check_certificate(forged, s4, a4_in_s4).reason == 'landing-not-in-K'

    def test_closure_past_the_cap(self, monkeypatch):
        S5 = make_builtin('S5')
        C = build_certificate(S5, S5, cyc('(1 2)', 5), cyc('(1 2 3)', 5))
        monkeypatch.setattr(Config, 'ENUMERATION_CAP', 100)
        result = check_certificate(C, S5, S5)
        assert not result
        assert result.reason == 'malformed'
        assert 'enumeration cap' in result.detail

    def test_factor_of_another_degree(self, s4, a4_in_s4, klein_certificate):
        d = klein_certificate.decompositions[0]
        forged = replace(klein_certificate,
                         decompositions=(replace(d, a=identity(3)),) + klein_certificate.decompositions[1:])
        result = check_certificate(forged, s4, a4_in_s4)
        assert not result
        assert result.reason == 'malformed'


class TestCertificateDocuments:
    """Test the JSON form of certificates."""

    def test_round_trip(self, three_cycle_certificate):
        data = certificate_to_dict(three_cycle_certificate)
        assert certificate_from_dict(json.loads(json.dumps(data))) == three_cycle_certificate

    def test_document_fields(self, klein_certificate):
        data = certificate_to_dict(klein_certificate)
        assert data['x'] == '(1 2)(3 4)'
        assert data['g'] == '(1 2 3 4)'
        assert data['result'] == '(1 4)(2 3)'
        assert set(data) == {'degree', 'group_generators', 'subgroup_generators', 'x', 'g', 'sylow_subgroups',
                             'word', 'decompositions', 'conjugated_letters', 'result'}

    def test_dump_and_load(self, tmp_path, s4, a4_in_s4, klein_certificate):
        path = tmp_path / 'cert.json'
        dump_certificate(klein_certificate, path)
        loaded = load_certificate(path)
        assert loaded == klein_certificate
        assert check_certificate(loaded, s4, a4_in_s4)

    def test_missing_fields(self):
        with pytest.raises(CertificateError):
            certificate_from_dict({'degree': 3})

    def test_bad_cycle_notation(self, klein_certificate):
        data = certificate_to_dict(klein_certificate)
        data['x'] = '(1 9)'
        with pytest.raises(CertificateError):
            certificate_from_dict(data)

    def test_not_json(self, tmp_path):
        path = tmp_path / 'cert.json'
        path.write_text('not a certificate')
        with pytest.raises(CertificateError):
            load_certificate(path)

    def test_not_utf8(self, tmp_path):
        path = tmp_path / 'cert.json'
        path.write_bytes(b'{"degree": 3} \xff\xfe\n')
        with pytest.raises(CertificateError, match='not UTF-8'):
            load_certificate(path)


if __name__ == '__main__':
    pytest.main([__file__])
