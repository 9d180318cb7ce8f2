"""Exact Cayley balls, growth-rate estimates, the lower bound coming from a
free-semigroup witness, and generators for finite-index subgroups."""
from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

from .matgroup import GeneratorSet, GroupWord, Mat2, evaluate_word, word_key
from .pingpong import positive_words

DEFAULT_MAX_RADIUS = 10
DEFAULT_MAX_BALL = 10 ** 7


class BallTooLarge(RuntimeError):
    pass


def max_ball() -> int:
    return int(os.environ.get("BTG_MAX_BALL", DEFAULT_MAX_BALL))


def ball_elements(S: GeneratorSet, radius: int, projective: bool = False,
                  max_elements: int | None = None) -> list[list[Mat2]]:
    """Spheres 0..radius of the Cayley ball over S and S^-1 (one list per radius)."""
    return [[m for m, _ in layer] for layer in ball_words(S, radius, projective, max_elements)]


def ball_words(S: GeneratorSet, radius: int, projective: bool = False,
               max_elements: int | None = None) -> list[list[tuple[Mat2, GroupWord]]]:
    """Like :func:`ball_elements` but each element carries a shortest word.

    Each sphere is ordered by discovery, scanning the previous sphere in order
    and appending letters in the order of ``S.letters()``, so results are
    deterministic.
    """
    cap = max_ball() if max_elements is None else max_elements
    ident = Mat2.identity(S.field)
    seen = {word_key(ident, projective)}
    layers = [[(ident, GroupWord())]]
    letters = [(GroupWord.gen(i, e), S.letter(i, e)) for i, e in S.letters()]
    for _ in range(radius):
        nxt = []
        for m, w in layers[-1]:
            for lw, lm in letters:
                x = m * lm
                k = word_key(x, projective)
                if k not in seen:
                    seen.add(k)
                    nxt.append((x, w + lw))
                    if len(seen) > cap:
                        raise BallTooLarge(f"ball exceeds {cap} elements")
        layers.append(nxt)
    return layers


@dataclass(frozen=True)
class BallStats:
    mode: str
    sizes: tuple[int, ...]

    @property
    def radii(self) -> range:
        return range(len(self.sizes))

    @property
    def rate_estimates(self) -> tuple[str, ...]:
        """``beta_n^(1/n)`` for n >= 1, six decimal places."""
        return tuple(f"{s ** (1.0 / n):.6f}" for n, s in enumerate(self.sizes) if n >= 1)


def ball_sizes(S: GeneratorSet, N: int, mode: str = "GL",
               max_radius: int = DEFAULT_MAX_RADIUS,
               max_elements: int | None = None) -> BallStats:
    if mode not in ("GL", "PGL"):
        raise ValueError(f"mode must be GL or PGL, got {mode!r}")
    if N > max_radius:
        raise BallTooLarge(f"radius {N} exceeds the cap {max_radius}")
    layers = ball_elements(S, N, mode == "PGL", max_elements)
    sizes, total = [], 0
    for layer in layers:
        total += len(layer)
        sizes.append(total)
    return BallStats(mode, tuple(sizes))


def growth_lower_bound_from_witness(witness) -> float:
    """``2^(1/m)`` for a witness whose longer word has length ``m``."""
    return 2.0 ** (1.0 / witness.max_length)


@dataclass(frozen=True)
class UFCheck:
    k: int
    radius: int
    ball_size: int
    semigroup_elements: int
    bound: int

    @property
    def ok(self) -> bool:
        return self.semigroup_elements >= self.bound and self.ball_size >= self.bound


def uf_inequality_table(S: GeneratorSet, witness, k_max: int,
                        max_elements: int | None = None) -> list[UFCheck]:
    """For each k <= k_max: the ball of radius k*m and how many of its elements
    are positive words of length <= k in the witness pair."""
    m = witness.max_length
    wa, wb = witness.words
    a, b = evaluate_word(S, wa), evaluate_word(S, wb)
    layers = ball_elements(S, k_max * m, max_elements=max_elements)
    out = []
    for k in range(1, k_max + 1):
        ball_keys = {word_key(x) for layer in layers[:k * m + 1] for x in layer}
        values = set()
        for w in positive_words(k):
            x = Mat2.identity(S.field)
            for c in w:
                x = x * (a if c == "a" else b)
            key = word_key(x)
            if key in ball_keys:
                values.add(key)
        out.append(UFCheck(k, k * m, len(ball_keys), len(values), 2 ** (k + 1) - 2))
    return out


def verify_uf_inequality(S: GeneratorSet, witness, k_max: int) -> bool:
    return all(c.ok for c in uf_inequality_table(S, witness, k_max))


# ---------------------------------------------------------------------------
# finite-index subgroups through a finite quotient mod q

ModMat = tuple  # (a, b, c, d) with entries in range(q)


@dataclass(frozen=True)
class FiniteImageSpec:
    """Reduction mod ``q`` and a subgroup of the image: ``"kernel"`` (scalar
    image) or an explicit list of matrices mod q."""

    q: int
    target: object = "kernel"


def reduce_mod(m: Mat2, q: int) -> ModMat:
    out = []
    for x in m.entries():
        if gcd(x.denominator, q) != 1:
            raise ValueError(f"modulus {q} is not coprime to the denominator of {x}")
        out.append(x.numerator * pow(x.denominator, -1, q) % q)
    return tuple(out)


def _mmul(x: ModMat, y: ModMat, q: int) -> ModMat:
    a, b, c, d = x
    e, f, g, h = y
    return ((a * e + b * g) % q, (a * f + b * h) % q, (c * e + d * g) % q, (c * f + d * h) % q)


def _closure(gens: Sequence[ModMat], q: int) -> set[ModMat]:
    ident = (1 % q, 0, 0, 1 % q)
    seen = {ident}
    todo = deque([ident])
    while todo:
        x = todo.popleft()
        for g in gens:
            y = _mmul(x, g, q)
            if y not in seen:
                seen.add(y)
                todo.append(y)
    return seen


def _is_scalar_mod(x: ModMat) -> bool:
    return x[1] == 0 and x[2] == 0 and x[0] == x[3]


@dataclass(frozen=True)
class SubgroupGenerators:
    words: tuple[GroupWord, ...]
    index: int
    image_order: int
    method: str

    @property
    def max_word_length(self) -> int:
        return 2 * self.index - 1

    @property
    def exponent(self) -> Fraction:
        """Exponent in ``beta(Gamma) >= beta(K)^(1/(2d-1))``."""
        return Fraction(1, 2 * self.index - 1)


class _Quotient:
    def __init__(self, S: GeneratorSet, spec: FiniteImageSpec):
        if S.field.characteristic != 0:
            raise ValueError("finite images mod q are only supported over Q")
        q = spec.q
        if q < 2:
            raise ValueError("modulus must be >= 2")
        self.q = q
        self.letter_images = {(i, e): reduce_mod(S.letter(i, e), q) for i, e in S.letters()}
        self.image = _closure([self.letter_images[(i, 1)] for i in range(len(S))], q)
        if spec.target == "kernel":
            self.target = {x for x in self.image if _is_scalar_mod(x)}
        else:
            listed = {reduce_mod(m, q) if isinstance(m, Mat2) else tuple(x % q for x in m)
                      for m in spec.target}
            closed = _closure(list(listed), q) if listed else {(1 % q, 0, 0, 1 % q)}
            if closed != listed | {(1 % q, 0, 0, 1 % q)}:
                raise ValueError("target elements do not form a subgroup")
            self.target = closed & self.image
        self.index = len(self.image) // len(self.target)

    def image_of(self, w: GroupWord) -> ModMat:
        x = (1 % self.q, 0, 0, 1 % self.q)
        for letter in w.letters:
            x = _mmul(x, self.letter_images[letter], self.q)
        return x

    def coset(self, x: ModMat) -> ModMat:
        return min(_mmul(t, x, self.q) for t in self.target)


def free_reduce(w: GroupWord) -> GroupWord:
    out: list = []
    for i, e in w.letters:
        if out and out[-1] == (i, -e):
            out.pop()
        else:
            out.append((i, e))
    return GroupWord(tuple(out))


def _reduced_word_count(k: int, n: int) -> int:
    return 1 + sum(2 * k * (2 * k - 1) ** (i - 1) for i in range(1, n + 1))


def subgroup_generators(S: GeneratorSet, spec: FiniteImageSpec, method: str = "auto",
                        max_elements: int | None = None) -> SubgroupGenerators:
    """Words of length at most ``2d - 1`` lying in the finite-index subgroup
    ``K`` (preimage of the target) and generating it.

    ``"enumerate"`` scans the whole Cayley ball of radius ``2d - 1``;
    ``"schreier"`` builds a coset spanning tree (representatives of length
    ``<= d - 1``) and returns its Schreier generators.  ``"auto"`` enumerates
    when the ball is guaranteed to fit under the cap.
    """
    quo = _Quotient(S, spec)
    d = quo.index
    cap = max_ball() if max_elements is None else max_elements
    if method == "auto":
        method = "enumerate" if _reduced_word_count(len(S), 2 * d - 1) <= cap else "schreier"
    seen = {word_key(Mat2.identity(S.field))}
    words = []
    if method == "enumerate":
        for layer in ball_words(S, 2 * d - 1, max_elements=cap):
            for m, w in layer:
                if w.letters and quo.image_of(w) in quo.target:
                    words.append(w)
    elif method == "schreier":
        ident_coset = quo.coset((1 % quo.q, 0, 0, 1 % quo.q))
        reps = {ident_coset: GroupWord()}
        todo = deque([ident_coset])
        while todo:
            c = todo.popleft()
            for i, e in S.letters():
                nc = quo.coset(_mmul(quo.image_of(reps[c]), quo.letter_images[(i, e)], quo.q))
                if nc not in reps:
                    reps[nc] = reps[c] + GroupWord.gen(i, e)
                    todo.append(nc)
        for c, r in reps.items():
            for i, e in S.letters():
                x = GroupWord.gen(i, e)
                nc = quo.coset(_mmul(quo.image_of(r), quo.letter_images[(i, e)], quo.q))
                w = free_reduce(r + x + reps[nc].inverse())
                key = word_key(evaluate_word(S, w))
                if key not in seen:
                    seen.add(key)
                    words.append(w)
    else:
        raise ValueError(f"unknown method {method!r}")
    return SubgroupGenerators(tuple(words), d, len(quo.image), method)


@dataclass(frozen=True)
class ContainmentCheck:
    radius: int
    subgroup_ball_size: int
    in_target_and_short: bool
    in_gamma_ball: bool | None
    kernel_elements_covered: bool
    kernel_elements_in_gamma_ball: int


def check_subgroup_generators(S: GeneratorSet, spec: FiniteImageSpec,
                              result: SubgroupGenerators, r: int) -> ContainmentCheck:
    """Compare the radius-``r`` ball of the returned generators with Gamma.

    Every element of that ball must map into the target and be a product of
    ``r`` words of length ``<= 2d - 1`` (so it lies in the Gamma-ball of radius
    ``r (2d - 1)``, which is enumerated too when it fits under the cap), and
    every element of the Gamma-ball of radius ``r`` lying in K must occur in it.
    """
    quo = _Quotient(S, spec)
    gens = [(w, evaluate_word(S, w)) for w in result.words]
    gens += [(w.inverse(), m.inv()) for w, m in gens]
    ident = Mat2.identity(S.field)
    sub = {word_key(ident): GroupWord()}
    frontier = [(ident, GroupWord())]
    for _ in range(r):
        nxt = []
        for m, w in frontier:
            for gw, gm in gens:
                x = m * gm
                k = word_key(x)
                if k not in sub:
                    sub[k] = w + gw
                    nxt.append((x, w + gw))
        frontier = nxt
    bound = r * result.max_word_length
    in_target = all(quo.image_of(w) in quo.target and len(w) <= bound for w in sub.values())
    in_ball = None
    if _reduced_word_count(len(S), bound) <= max_ball():
        big = {word_key(m) for layer in ball_elements(S, bound) for m in layer}
        in_ball = set(sub) <= big
    kernel = [word_key(m) for layer in ball_words(S, r) for m, w in layer
              if quo.image_of(w) in quo.target]
    covered = all(k in sub for k in kernel)
    return ContainmentCheck(r, len(sub), in_target, in_ball, covered, len(kernel))
