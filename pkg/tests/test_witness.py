import itertools
import random

import pytest

from btgrowth.bt_tree import axis_equal, is_hyperbolic
from btgrowth.growth import ball_elements
from btgrowth.matgroup import GeneratorSet, Mat2, evaluate_word
from btgrowth.pingpong import oracle_free_semigroup
from btgrowth.valued_field import DegreeAtInfinity, PAdic, PolyAdic
from btgrowth.witness import (ALL_ELLIPTIC, COMMON_AXIS, INTEGRAL_CASE, MAX_WITNESS_LENGTH,
                              WITNESS, candidate_valuations, classify, classify_all,
                              element_table, find_axis_mover, find_hyperbolic, find_witness,
                              short_words, trace_diagnostics, uf_witness)

from conftest import A, F2, M, T, TT, random_matrix

V2 = PAdic(2)


def gens(*ms):
    return GeneratorSet(list(ms))


def check_witness_sound(S, report, depth=12):
    g = evaluate_word(S, report.g_word)
    s = evaluate_word(S, report.s_word)
    h = evaluate_word(S, report.h_word)
    assert h == s * g * s.inv()
    assert is_hyperbolic(g, report.valuation)
    assert not axis_equal(g, h, report.valuation)
    assert report.max_length <= MAX_WITNESS_LENGTH
    wa, wb = report.words
    assert oracle_free_semigroup(evaluate_word(S, wa), evaluate_word(S, wb), depth) is None


def test_short_words_order(bs12):
    assert [bs12.render(w) for w in short_words(bs12)] == ["a", "t", "a a", "a t", "t a", "t t"]


def test_candidate_valuations():
    assert candidate_valuations(gens(M([[1, 2], [0, 1]]), M([[1, 0], [2, 1]]))) == []
    assert candidate_valuations(gens(TT, A)) == [PAdic(2)]
    assert candidate_valuations(gens(M([[1, "1/6"], [0, 5]]))) == [PAdic(2), PAdic(3), PAdic(5)]
    ff = gens(M([[1, T], [0, 1]], F2), M([[1, 0], [T, 1]], F2))
    assert candidate_valuations(ff) == [DegreeAtInfinity(2)]
    ff2 = gens(M([[T, 0], [0, 1]], F2), M([[1, 1 / (T + 1)], [0, 1]], F2))
    assert candidate_valuations(ff2) == [PolyAdic(2, (0, 1)), PolyAdic(2, (1, 1)),
                                         DegreeAtInfinity(2)]


def test_find_hyperbolic(bs12):
    assert bs12.render(find_hyperbolic(bs12, V2)) == "t"
    assert find_hyperbolic(gens(M([[0, -1], [1, 0]]), A), V2) is None


def test_find_axis_mover():
    g = TT
    S = gens(TT, M([[4, 0], [0, 1]]))
    assert find_axis_mover(S, g, V2) is None
    S3 = gens(TT, M([[3, 0], [0, 1]]))
    assert find_axis_mover(S3, g, V2) is None


def test_element_table(bs12):
    rows = element_table(bs12, V2)
    assert [r.name for r in rows] == ["a", "t", "a a", "a t", "t a", "t t"]
    kinds = {r.name: (r.translation_length, r.kind) for r in rows}
    assert kinds["a"][0] == 0 and kinds["t"] == (1, "hyperbolic")
    assert kinds["t t"][0] == 2


def test_bs12_witness(bs12):
    report = uf_witness(bs12, V2)
    assert [bs12.render(w) for w in (report.g_word, report.h_word)] == ["t", "a t a^-1"]
    assert (len(report.g_word), len(report.h_word)) == (1, 3)
    check_witness_sound(bs12, report)


def test_function_field_witness(affine_f2t):
    report = find_witness(affine_f2t)
    assert report is not None and report.valuation == PolyAdic(2, (0, 1))
    check_witness_sound(affine_f2t, report)


def test_outcomes():
    assert classify(gens(M([[0, -1], [1, 0]]), A), V2).outcome == ALL_ELLIPTIC
    common = classify(gens(TT, M([[8, 0], [0, 1]])), V2)
    assert common.outcome == COMMON_AXIS and common.witness is None
    assert classify(gens(A, TT), V2).outcome == WITNESS


def test_common_axis_sound():
    # every hyperbolic element of a small ball shares the axis of the first one
    S = gens(TT, M([[8, 0], [0, 1]]), M([[3, 0], [0, 5]]))
    rep = classify(S, V2)
    assert rep.outcome == COMMON_AXIS
    g = evaluate_word(S, rep.hyperbolic_word)
    for layer in ball_elements(S, 3):
        for x in layer:
            if is_hyperbolic(x, V2):
                assert axis_equal(g, x, V2)


def test_integral_diagnostic(free2):
    res = classify_all(free2)
    assert res.reports == [] and res.diagnostics == [INTEGRAL_CASE]
    assert res.witness is None and find_witness(free2) is None


def test_function_field_no_integral_diagnostic():
    ff = gens(M([[1, 1], [0, 1]], F2))
    res = classify_all(ff)
    assert res.diagnostics == []
    assert [r.outcome for r in res.reports] == [ALL_ELLIPTIC]


def test_deterministic(bs12):
    assert uf_witness(bs12, V2) == uf_witness(bs12, V2)
    assert classify_all(bs12).reports == classify_all(bs12).reports


@pytest.mark.parametrize("seed", range(4))
def test_conjugated_and_permuted_bs12(seed):
    rng = random.Random(40 + seed)
    k = random_matrix(rng, 5)
    mats = [k * A * k.inv(), k * TT * k.inv()]
    if seed % 2:
        mats.reverse()
    S = gens(*mats)
    report = find_witness(S)
    assert report is not None
    check_witness_sound(S, report)


def test_random_sets_are_sound():
    rng = random.Random(41)
    found = 0
    for _ in range(15):
        S = gens(random_matrix(rng, 6), random_matrix(rng, 6))
        report = find_witness(S, depth=10)
        if report is not None:
            check_witness_sound(S, report, depth=10)
            found += 1
    assert found >= 5


def test_trace_diagnostics_brute_force(free2):
    diag = trace_diagnostics(free2, 3)
    x, y = free2.matrices
    letters = [x, y, x.inv(), y.inv()]
    expected = set()
    for n in range(4):
        for w in itertools.product(letters, repeat=n):
            m = Mat2.identity()
            for z in w:
                m = m * z
            expected.add(m.trace())
    assert diag.traces == expected
    assert diag.min_trace_val == {} and diag.stabilized is None
    with pytest.raises(ValueError):
        trace_diagnostics(free2, 7)


def test_trace_diagnostics_function_field(affine_f2t):
    finite = gens(M([[1, 1], [0, 1]], F2))
    assert trace_diagnostics(finite, 3).stabilized is True
    diag = trace_diagnostics(affine_f2t, 3)
    assert diag.stabilized is False
    assert diag.min_trace_val[DegreeAtInfinity(2)] == -3
