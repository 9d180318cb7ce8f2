import itertools
import random

import pytest

from btgrowth import pingpong
from btgrowth.bt_tree import act, bridge, distance, translation_length
from btgrowth.matgroup import Mat2, word_key
from btgrowth.pingpong import (Certificate, LemmaViolation, lemma_pp_select,
                               oracle_free_semigroup, orient_for_disjoint_axes, positive_words)
from btgrowth.valued_field import PAdic

from conftest import M, random_matrix
from test_bt_tree import with_fixed_points

V2, V3 = PAdic(2), PAdic(3)


def test_positive_words_order():
    assert list(positive_words(2)) == ["a", "b", "aa", "ab", "ba", "bb"]
    assert sum(1 for _ in positive_words(10)) == 2046


def test_oracle_equal_generators():
    a = M([[2, 0], [0, 1]])
    assert oracle_free_semigroup(a, a, 3) == ("a", "b")


def test_oracle_commuting_powers():
    a = M([[2, 0], [0, 1]])
    # scan order a, b, aa: "aa" already equals "b"
    assert oracle_free_semigroup(a, a * a, 6) == ("b", "aa")


def test_oracle_affine_maps_free():
    a, b = M([[2, 0], [0, 1]]), M([[2, 1], [0, 1]])
    assert oracle_free_semigroup(a, b, 10) is None


def test_oracle_gl_vs_pgl():
    a, b = M([[2, 0], [0, 2]]), M([[3, 0], [0, 3]])
    assert oracle_free_semigroup(a, b, 3) == ("a", "b")
    assert oracle_free_semigroup(a, b, 3, projective=False) == ("ab", "ba")


def test_oracle_symmetric():
    rng = random.Random(30)
    for _ in range(30):
        a = M([[rng.randint(-3, 3) or 1, rng.randint(-3, 3)], [0, 1]])
        b = M([[rng.randint(-3, 3) or 1, rng.randint(-3, 3)], [0, 1]])
        assert (oracle_free_semigroup(a, b, 6) is None) == (oracle_free_semigroup(b, a, 6) is None)


def test_orientation_both_directions_leave_the_bridge():
    g = with_fixed_points(0, None, 2)
    h = with_fixed_points(1, -1, 2)
    br = bridge(g, h, V2)
    for elt, foot, other in ((g, br.on_g, br.on_h), (h, br.on_h, br.on_g)):
        ell = translation_length(elt, V2)
        for s in (elt, elt.inv()):
            assert distance(act(s, foot), other) == br.separation + ell
    assert orient_for_disjoint_axes(g, h, V2) == (1, 1)


def test_orientation_rejects_crossing_axes():
    with pytest.raises(ValueError):
        orient_for_disjoint_axes(M([[2, 0], [0, 1]]), M([[2, -1], [0, 1]]), V2)


def test_disjoint_axes_geometric_certificate():
    g = with_fixed_points(0, None, 2)
    for k in (1, 2, 3):
        h = with_fixed_points(1, 1 + 2 ** k, 2)
        eps, delta, cert = lemma_pp_select(g, h, V2)
        assert cert.kind == "geometric" and cert.separation == k
        assert cert.words_checked == 8190
        # every sign pair plays ping-pong when the axes are disjoint
        for se, sd in itertools.product((1, -1), repeat=2):
            assert oracle_free_semigroup(g ** se, h ** sd, 8) is None


def test_shared_end_pair_is_empirical():
    g, h = M([[2, 0], [0, 1]]), M([[2, -1], [0, 1]])
    eps, delta, cert = lemma_pp_select(g, h, V2, 12)
    assert cert.kind == "empirical"
    assert oracle_free_semigroup(g ** eps, h ** delta, 12) is None


def test_crossing_axes_empirical():
    g = with_fixed_points(0, None, 3)
    h = with_fixed_points(1, -1, 3)
    eps, delta, cert = lemma_pp_select(g, h, V3, 10)
    assert cert.kind == "empirical" and cert.separation == 0
    assert (eps, delta) in pingpong.SIGN_ORDER


def test_certificate_invariants():
    with pytest.raises(ValueError):
        Certificate("geometric", 12, 8190, separation=0)
    with pytest.raises(ValueError):
        Certificate("empirical", 0, 0)


def test_lemma_violation_is_reported(monkeypatch):
    monkeypatch.setattr(pingpong, "oracle_free_semigroup", lambda a, b, depth: ("a", "b"))
    with pytest.raises(LemmaViolation):
        lemma_pp_select(M([[2, 0], [0, 1]]), M([[2, -1], [0, 1]]), V2, 4)


def test_geometric_certificates_on_conjugated_pairs():
    rng = random.Random(31)
    g0 = with_fixed_points(0, None, 3)
    h0 = with_fixed_points(1, 1 + 9, 3)
    for _ in range(5):
        k = random_matrix(rng, 8)
        g, h = k * g0 * k.inv(), k * h0 * k.inv()
        assert bridge(g, h, V3).separation == 2
        eps, delta, cert = lemma_pp_select(g, h, V3, 12)
        assert cert.kind == "geometric"


def test_certified_pair_word_values_distinct():
    g = with_fixed_points(0, None, 2)
    h = with_fixed_points(1, 3, 2)
    eps, delta, _ = lemma_pp_select(g, h, V2, 8)
    a, b = g ** eps, h ** delta
    values = {}
    level = [Mat2.identity()]
    for k in range(1, 9):
        level = [m * x for m in level for x in (a, b)]
        for m in level:
            values[word_key(m)] = True
        assert len(values) == 2 ** (k + 1) - 2
