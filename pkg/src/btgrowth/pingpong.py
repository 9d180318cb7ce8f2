"""Ping-pong for two hyperbolic tree isometries and a brute-force check
that two matrices generate a free semigroup."""
from __future__ import annotations

from dataclasses import dataclass, field

from .bt_tree import (Vertex, act, axis_equal, bridge, distance, is_hyperbolic,
                      translation_length)
from .matgroup import Mat2, word_key
from .valued_field import Valuation

DEFAULT_DEPTH = 12
SIGN_ORDER = ((1, 1), (1, -1), (-1, 1), (-1, -1))


class LemmaViolation(RuntimeError):
    """No sign choice passed the oracle although the axes are distinct."""


@dataclass(frozen=True)
class Certificate:
    kind: str  # "geometric" | "empirical"
    depth: int
    words_checked: int
    bridge_ends: tuple[Vertex, Vertex] | None = None
    separation: int = 0
    translation_lengths: tuple[int, int] = (0, 0)
    signs: tuple[int, int] = (1, 1)
    rejected_signs: tuple = field(default_factory=tuple)

    def __post_init__(self):
        if self.kind == "geometric" and self.separation < 1:
            raise ValueError("geometric certificate needs disjoint axes")
        if self.kind == "empirical" and self.depth < 1:
            raise ValueError("empirical certificate needs depth >= 1")


def positive_words(depth: int):
    """Nonempty words over ``"ab"`` up to ``depth``, ordered by length then lexicographically."""
    level = [""]
    for _ in range(depth):
        level = [w + c for w in level for c in "ab"]
        yield from level


def oracle_free_semigroup(a: Mat2, b: Mat2, depth: int = DEFAULT_DEPTH,
                          projective: bool = True) -> tuple[str, str] | None:
    """First pair of distinct positive words with equal value, or ``None``.

    All ``2^(depth+1) - 2`` words are evaluated.  Values are compared modulo
    scalars by default, which is the stronger statement.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    gens = {"a": a, "b": b}
    seen: dict[tuple, str] = {}
    level = [("", Mat2.identity(a.field))]
    for _ in range(depth):
        nxt = []
        for w, m in level:
            for c in "ab":
                wc, mc = w + c, m * gens[c]
                key = word_key(mc, projective)
                if key in seen:
                    return seen[key], wc
                seen[key] = wc
                nxt.append((wc, mc))
        level = nxt
    return None


def words_checked(depth: int) -> int:
    return 2 ** (depth + 1) - 2


def orient_for_disjoint_axes(g: Mat2, h: Mat2, v: Valuation) -> tuple[int, int]:
    """Signs ``(eps, delta)`` for which ``g^eps`` and ``h^delta`` push their
    bridge feet away from the other axis.

    The bridge meets each axis in one vertex, so both translation directions
    move away from it; each sign is checked and the positive one returned.
    """
    br = bridge(g, h, v)
    if br.separation < 1:
        raise ValueError("axes intersect; no bridge orientation")
    out = []
    for elt, foot, other in ((g, br.on_g, br.on_h), (h, br.on_h, br.on_g)):
        ell = translation_length(elt, v)
        ok = [s for s in (1, -1)
              if distance(act(elt if s == 1 else elt.inv(), foot), other) == br.separation + ell]
        if not ok:
            raise LemmaViolation("translation does not leave the bridge foot")
        out.append(ok[0])
    return out[0], out[1]


def _power(m: Mat2, s: int) -> Mat2:
    return m if s == 1 else m.inv()


def lemma_pp_select(g: Mat2, h: Mat2, v: Valuation,
                    depth: int = DEFAULT_DEPTH) -> tuple[int, int, Certificate]:
    """Pick ``(eps, delta)`` so that ``g^eps, h^delta`` generate a free semigroup."""
    if not (is_hyperbolic(g, v) and is_hyperbolic(h, v)):
        raise ValueError("both elements must be hyperbolic")
    if axis_equal(g, h, v):
        raise ValueError("axes coincide")
    br = bridge(g, h, v)
    lengths = (translation_length(g, v), translation_length(h, v))
    if br.separation >= 1:
        eps, delta = orient_for_disjoint_axes(g, h, v)
        hit = oracle_free_semigroup(_power(g, eps), _power(h, delta), depth)
        if hit is not None:
            raise LemmaViolation(f"disjoint axes but words {hit} collide")
        cert = Certificate("geometric", depth, words_checked(depth),
                           bridge_ends=(br.on_g, br.on_h), separation=br.separation,
                           translation_lengths=lengths, signs=(eps, delta))
        return eps, delta, cert
    rejected = []
    for eps, delta in SIGN_ORDER:
        hit = oracle_free_semigroup(_power(g, eps), _power(h, delta), depth)
        if hit is None:
            cert = Certificate("empirical", depth, words_checked(depth),
                               bridge_ends=(br.on_g, br.on_h), separation=0,
                               translation_lengths=lengths, signs=(eps, delta),
                               rejected_signs=tuple(rejected))
            return eps, delta, cert
        rejected.append(((eps, delta), hit))
    raise LemmaViolation(f"all four sign pairs collide at depth {depth}: {rejected}")
