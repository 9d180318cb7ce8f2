import random
import sys
from fractions import Fraction

import pytest

from btgrowth.matgroup import GeneratorSet, Mat2
from btgrowth.valued_field import FunctionField, RatFunc


def M(rows, field=None):
    return Mat2.of(rows) if field is None else Mat2.of(rows, field)


F2 = FunctionField(2)
T = F2.t

A = M([[1, 1], [0, 1]])
TT = M([[2, 0], [0, 1]])


@pytest.fixture
def bs12():
    return GeneratorSet([A, TT], ["a", "t"])


@pytest.fixture
def free2():
    return GeneratorSet([M([[1, 2], [0, 1]]), M([[1, 0], [2, 1]])], ["x", "y"])


@pytest.fixture
def affine_f2t():
    return GeneratorSet([M([[T, 0], [0, 1]], F2), M([[1, 1], [0, 1]], F2)], ["x", "y"])


def random_rational(rng: random.Random, bound: int = 100, zero_ok: bool = True) -> Fraction:
    while True:
        x = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
        if x or zero_ok:
            return x


def random_matrix(rng: random.Random, bound: int = 100) -> Mat2:
    while True:
        e = [random_rational(rng, bound) for _ in range(4)]
        if e[0] * e[3] - e[1] * e[2]:
            return Mat2(*e)


def random_poly(rng: random.Random, p: int, deg: int):
    return tuple(rng.randrange(p) for _ in range(deg + 1))


def random_ratfunc(rng: random.Random, p: int = 2, deg: int = 3, zero_ok: bool = True) -> RatFunc:
    while True:
        den = random_poly(rng, p, rng.randint(0, deg))
        if not any(den):
            continue
        x = RatFunc(random_poly(rng, p, rng.randint(0, deg)), den, p)
        if x or zero_ok:
            return x


def random_ff_matrix(rng: random.Random, p: int = 2, deg: int = 2) -> Mat2:
    while True:
        e = [random_ratfunc(rng, p, deg) for _ in range(4)]
        if e[0] * e[3] - e[1] * e[2]:
            return Mat2(*e)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(mod.RESULTS):
            terminalreporter.write_line(line)
