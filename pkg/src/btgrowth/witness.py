"""Per-valuation classification of a generating set and extraction of two
words of length at most 6 generating a free semigroup."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from sympy import factorint

from .bt_tree import axis_equal, classify_isometry, is_hyperbolic, translation_length
from .matgroup import GeneratorSet, GroupWord, Mat2, evaluate_word
from .pingpong import DEFAULT_DEPTH, Certificate, lemma_pp_select
from .valued_field import (QQ, DegreeAtInfinity, PAdic, PolyAdic, Valuation, poly_factors,
                           val)

INTEGRAL_CASE = ("integral case: possibly conjugate to a subgroup of GL_2(O); "
                 "UF undecided by this tool")
MAX_WITNESS_LENGTH = 6

ALL_ELLIPTIC = "all-elliptic"
COMMON_AXIS = "common-axis"
WITNESS = "witness"


@dataclass(frozen=True)
class WitnessReport:
    valuation: Valuation
    g_word: GroupWord
    s_word: GroupWord
    h_word: GroupWord
    signs: tuple[int, int]
    certificate: Certificate

    @property
    def words(self) -> tuple[GroupWord, GroupWord]:
        """The certified pair ``(g^eps, h^delta)`` as words over S."""
        eps, delta = self.signs
        a = self.g_word if eps == 1 else self.g_word.inverse()
        b = self.h_word if delta == 1 else self.h_word.inverse()
        return a, b

    @property
    def max_length(self) -> int:
        return max(len(self.g_word), len(self.h_word))

    @property
    def lower_bound_exponent(self) -> Fraction:
        return Fraction(1, self.max_length)


@dataclass(frozen=True)
class ElementRow:
    name: str
    word: GroupWord
    trace_val: object
    det_val: object
    translation_length: int
    kind: str


@dataclass(frozen=True)
class ClassificationReport:
    valuation: Valuation
    outcome: str
    table: tuple[ElementRow, ...]
    witness: WitnessReport | None = None
    hyperbolic_word: GroupWord | None = None


@dataclass
class ClassifyAllResult:
    reports: list[ClassificationReport]
    diagnostics: list[str] = field(default_factory=list)

    @property
    def witness(self) -> WitnessReport | None:
        return next((r.witness for r in self.reports if r.witness is not None), None)


def short_words(S: GeneratorSet) -> list[GroupWord]:
    """S then S^2 in row-major order; the fixed scan order of the search."""
    n = len(S)
    out = [GroupWord.gen(i) for i in range(n)]
    out += [GroupWord(((i, 1), (j, 1))) for i in range(n) for j in range(n)]
    return out


def _denominators_and_dets(S: GeneratorSet):
    for m in S.matrices:
        for x in m.entries() + m.inv().entries():
            yield x, "entry"
        yield m.det(), "det"


def candidate_valuations(S: GeneratorSet) -> list[Valuation]:
    """Places where some generator can act unboundedly.

    At every other finite place all generators lie in GL_2(A_v) and fix the
    base vertex.
    """
    if S.field == QQ:
        primes = set()
        for x, kind in _denominators_and_dets(S):
            primes.update(factorint(x.denominator))
            if kind == "det":
                primes.update(factorint(abs(x.numerator)))
        primes.discard(1)
        return [PAdic(p) for p in sorted(primes)]
    p = S.field.p
    factors = set()
    for x, kind in _denominators_and_dets(S):
        factors.update(poly_factors(x.den, p))
        if kind == "det":
            factors.update(poly_factors(x.num, p))
    ordered = sorted(factors, key=lambda f: (len(f), f))
    return [PolyAdic(p, f) for f in ordered] + [DegreeAtInfinity(p)]


def find_hyperbolic(S: GeneratorSet, v: Valuation) -> GroupWord | None:
    for w in short_words(S):
        if is_hyperbolic(evaluate_word(S, w), v):
            return w
    return None


def _conjugate(s: Mat2, g: Mat2) -> Mat2:
    return s * g * s.inv()


def find_axis_mover(S: GeneratorSet, g: Mat2, v: Valuation) -> GroupWord | None:
    for w in short_words(S):
        if not axis_equal(g, _conjugate(evaluate_word(S, w), g), v):
            return w
    return None


def element_table(S: GeneratorSet, v: Valuation) -> tuple[ElementRow, ...]:
    rows = []
    for w in short_words(S):
        m = evaluate_word(S, w)
        rows.append(ElementRow(name=S.render(w), word=w, trace_val=val(m.trace(), v),
                               det_val=val(m.det(), v),
                               translation_length=translation_length(m, v),
                               kind=classify_isometry(m, v)))
    return tuple(rows)


def _search(S: GeneratorSet, v: Valuation, depth: int):
    g_word = find_hyperbolic(S, v)
    if g_word is None:
        return ALL_ELLIPTIC, None, None
    g = evaluate_word(S, g_word)
    s_word = find_axis_mover(S, g, v)
    if s_word is None:
        return COMMON_AXIS, None, g_word
    h_word = s_word + g_word + s_word.inverse()
    h = evaluate_word(S, h_word)
    eps, delta, cert = lemma_pp_select(g, h, v, depth)
    report = WitnessReport(v, g_word, s_word, h_word, (eps, delta), cert)
    assert report.max_length <= MAX_WITNESS_LENGTH
    return WITNESS, report, g_word


def uf_witness(S: GeneratorSet, v: Valuation, depth: int = DEFAULT_DEPTH) -> WitnessReport | None:
    return _search(S, v, depth)[1]


def classify(S: GeneratorSet, v: Valuation, depth: int = DEFAULT_DEPTH) -> ClassificationReport:
    outcome, report, g_word = _search(S, v, depth)
    return ClassificationReport(v, outcome, element_table(S, v), report, g_word)


def classify_all(S: GeneratorSet, depth: int = DEFAULT_DEPTH) -> ClassifyAllResult:
    vals = candidate_valuations(S)
    reports = [classify(S, v, depth) for v in vals]
    diagnostics = []
    if S.field == QQ and all(r.outcome == ALL_ELLIPTIC for r in reports):
        diagnostics.append(INTEGRAL_CASE)
    return ClassifyAllResult(reports, diagnostics)


def find_witness(S: GeneratorSet, valuation: Valuation | None = None,
                 depth: int = DEFAULT_DEPTH) -> WitnessReport | None:
    """First witness over the candidate places (or the given one)."""
    vals = [valuation] if valuation is not None else candidate_valuations(S)
    for v in vals:
        w = uf_witness(S, v, depth)
        if w is not None:
            return w
    return None


@dataclass(frozen=True)
class TraceDiagnostics:
    radius: int
    traces: frozenset
    min_trace_val: dict
    stabilized: bool | None


def trace_diagnostics(S: GeneratorSet, radius: int,
                      valuations: list[Valuation] | None = None) -> TraceDiagnostics:
    """Traces of all elements of the ball of the given radius.

    Over F_p(t), ``stabilized`` records whether radius ``R - 1`` already
    produced every trace, a heuristic sign that the trace set is finite.
    """
    from .growth import ball_elements
    if radius > 6:
        raise ValueError("trace diagnostics are limited to radius 6")
    if valuations is None:
        valuations = candidate_valuations(S)
    layers = ball_elements(S, radius)
    traces_by_radius = []
    acc: set = set()
    for layer in layers:
        acc |= {m.trace() for m in layer}
        traces_by_radius.append(frozenset(acc))
    traces = traces_by_radius[-1]
    min_val = {v: min(val(t, v) for t in traces) for v in valuations}
    stabilized = None
    if S.field != QQ and radius >= 1:
        stabilized = traces_by_radius[-2] == traces
    return TraceDiagnostics(radius, traces, min_val, stabilized)
