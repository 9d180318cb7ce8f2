"""2x2 invertible matrices over Q or F_p(t), words in generators, and the
trace tests for finite order and ellipticity."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from .valued_field import QQ, Field, FieldMismatch, field_of, pdivmod, pgcd, pmul, pscale


class SingularMatrix(ValueError):
    pass


@dataclass(frozen=True)
class Mat2:
    """Row-major ``[[a, b], [c, d]]`` with nonzero determinant."""

    a: object
    b: object
    c: object
    d: object

    def __post_init__(self):
        fields = {field_of(x) for x in (self.a, self.b, self.c, self.d)}
        if len(fields) != 1:
            raise FieldMismatch(f"matrix entries from several fields: {fields}")
        (field,) = fields
        for name in "abcd":
            object.__setattr__(self, name, field(getattr(self, name)))
        if not self.det():
            raise SingularMatrix(f"singular matrix {self}")

    @classmethod
    def of(cls, rows, field: Field = QQ) -> "Mat2":
        (a, b), (c, d) = rows
        return cls(field(a), field(b), field(c), field(d))

    @classmethod
    def identity(cls, field: Field = QQ) -> "Mat2":
        return cls(field.one, field.zero, field.zero, field.one)

    @classmethod
    def scalar(cls, lam) -> "Mat2":
        zero = field_of(lam).zero
        return cls(lam, zero, zero, lam)

    @property
    def field(self) -> Field:
        return field_of(self.a)

    def entries(self) -> tuple:
        return (self.a, self.b, self.c, self.d)

    def rows(self) -> list[list]:
        return [[self.a, self.b], [self.c, self.d]]

    def det(self):
        return self.a * self.d - self.b * self.c

    def trace(self):
        return self.a + self.d

    @classmethod
    def _trusted(cls, a, b, c, d) -> "Mat2":
        # entries already coerced into one field and det != 0
        m = object.__new__(cls)
        object.__setattr__(m, "a", a)
        object.__setattr__(m, "b", b)
        object.__setattr__(m, "c", c)
        object.__setattr__(m, "d", d)
        return m

    def __mul__(self, other):
        if isinstance(other, Mat2):
            if type(self.a) is not type(other.a):
                raise FieldMismatch("product of matrices over different fields")
            return Mat2._trusted(self.a * other.a + self.b * other.c,
                                 self.a * other.b + self.b * other.d,
                                 self.c * other.a + self.d * other.c,
                                 self.c * other.b + self.d * other.d)
        return Mat2(self.a * other, self.b * other, self.c * other, self.d * other)

    def __rmul__(self, lam):
        return self * lam

    def inv(self) -> "Mat2":
        det = self.det()
        return Mat2(self.d / det, -self.b / det, -self.c / det, self.a / det)

    def __pow__(self, n: int) -> "Mat2":
        base = self if n >= 0 else self.inv()
        out = Mat2.identity(self.field)
        for _ in range(abs(n)):
            out = out * base
        return out

    def is_scalar(self) -> bool:
        return not self.b and not self.c and self.a == self.d

    def __str__(self):
        return f"[[{self.a}, {self.b}], [{self.c}, {self.d}]]"


def mul(x: Mat2, y: Mat2) -> Mat2:
    return x * y


def inv(x: Mat2) -> Mat2:
    return x.inv()


def det(x: Mat2):
    return x.det()


def trace(x: Mat2):
    return x.trace()


def commutator(x: Mat2, y: Mat2) -> Mat2:
    """``x y x^-1 y^-1``."""
    return x * y * x.inv() * y.inv()


def projective_canonical(x: Mat2) -> Mat2:
    """Representative of ``x`` modulo scalars: first nonzero entry scaled to 1."""
    lead = next(e for e in x.entries() if e)
    return x * (1 / lead) if lead != 1 else x


@dataclass(frozen=True)
class GroupWord:
    """A word in generators; each letter is ``(index, +1 | -1)``."""

    letters: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple((int(i), int(e)) for i, e in self.letters))
        for i, e in self.letters:
            if e not in (1, -1) or i < 0:
                raise ValueError(f"bad letter {(i, e)}")

    @classmethod
    def gen(cls, i: int, e: int = 1) -> "GroupWord":
        return cls(((i, e),))

    def __len__(self):
        return len(self.letters)

    def __add__(self, other: "GroupWord") -> "GroupWord":
        return GroupWord(self.letters + other.letters)

    def inverse(self) -> "GroupWord":
        return GroupWord(tuple((i, -e) for i, e in reversed(self.letters)))

    def render(self, names: Sequence[str]) -> str:
        if not self.letters:
            return "1"
        return " ".join(names[i] if e == 1 else f"{names[i]}^-1" for i, e in self.letters)


class GeneratorSet:
    """An ordered, named, nonempty list of invertible matrices over one field."""

    def __init__(self, matrices: Iterable[Mat2], names: Sequence[str] | None = None):
        self.matrices = tuple(matrices)
        if not self.matrices:
            raise ValueError("generator set must be nonempty")
        fields = {m.field for m in self.matrices}
        if len(fields) != 1:
            raise FieldMismatch(f"generators over several fields: {fields}")
        if names is None:
            names = [f"s{i}" for i in range(len(self.matrices))]
        self.names = tuple(names)
        if len(self.names) != len(self.matrices):
            raise ValueError("need exactly one name per generator")
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"duplicate generator names: {self.names}")
        self.inverses = tuple(m.inv() for m in self.matrices)

    @property
    def field(self) -> Field:
        return self.matrices[0].field

    def __len__(self):
        return len(self.matrices)

    def __iter__(self):
        return iter(self.matrices)

    def __getitem__(self, i):
        return self.matrices[i]

    def letter(self, i: int, e: int) -> Mat2:
        return self.matrices[i] if e == 1 else self.inverses[i]

    def letters(self):
        """All ``(index, exponent)`` pairs of S and S^-1 in a fixed order."""
        return [(i, e) for i in range(len(self)) for e in (1, -1)]

    def render(self, w: GroupWord) -> str:
        return w.render(self.names)

    def parse_word(self, text: str) -> GroupWord:
        """Parse ``"a t a^-1"`` (or ``"ata^-1"`` when all names are single characters)."""
        tokens = text.replace("*", " ").replace(".", " ").split()
        if len(tokens) == 1 and tokens[0] not in self.names and all(len(n) == 1 for n in self.names):
            tokens = _split_compact(tokens[0])
        letters = []
        for tok in tokens:
            e = 1
            if tok.endswith("^-1"):
                tok, e = tok[:-3], -1
            if tok == "1" and len(tokens) == 1:
                return GroupWord()
            if tok not in self.names:
                raise ValueError(f"unknown generator {tok!r} in word {text!r}")
            letters.append((self.names.index(tok), e))
        return GroupWord(tuple(letters))


def _split_compact(s: str) -> list[str]:
    out = []
    i = 0
    while i < len(s):
        if s.startswith("^-1", i + 1):
            out.append(s[i:i + 4])
            i += 4
        else:
            out.append(s[i])
            i += 1
    return out


def evaluate_word(S: GeneratorSet, w: GroupWord) -> Mat2:
    out = Mat2.identity(S.field)
    for i, e in w.letters:
        if i >= len(S):
            raise IndexError(f"generator index {i} out of range for {len(S)} generators")
        out = out * S.letter(i, e)
    return out


def _require_rational(x: Mat2):
    if x.field != QQ:
        raise FieldMismatch("trace order tests are only available over Q")


def is_finite_order(x: Mat2) -> bool:
    """True iff some power of ``x`` is scalar (finite order in PGL_2(Q)).

    For non-scalar ``x`` the eigenvalue ratio is a root of unity whose
    real part is rational, so ``trace^2 / det`` lies in {0, 1, 2, 3}.
    """
    _require_rational(x)
    if x.is_scalar():
        return True
    return x.trace() ** 2 / x.det() in (0, 1, 2, 3)


def is_elliptic_moebius(x: Mat2) -> bool:
    _require_rational(x)
    d = x.det()
    if d <= 0:
        raise ValueError("ellipticity as a Moebius map needs det > 0")
    return x.trace() ** 2 < 4 * d


def projective_key(m: Mat2) -> tuple:
    """Hashable key equal for two matrices iff they differ by a scalar.

    Cheaper than :func:`projective_canonical`: entries are scaled to a
    primitive integer (or polynomial) vector with a normalized leading entry.
    """
    ents = m.entries()
    if isinstance(m.a, Fraction):
        den = lcm(*(x.denominator for x in ents))
        ints = [x.numerator * (den // x.denominator) for x in ents]
        g = gcd(*ints)
        lead = next(x for x in ints if x)
        if lead < 0:
            g = -g
        return tuple(x // g for x in ints)
    p = m.a.p
    den = ents[0].den
    for x in ents[1:]:
        if x.den != den:
            den = pdivmod(pmul(den, x.den, p), pgcd(den, x.den, p), p)[0]
    polys = [x.num if x.den == den else pmul(x.num, pdivmod(den, x.den, p)[0], p)
             for x in ents]
    g = ()
    for f in polys:
        g = pgcd(g, f, p) if g != (1,) else g
    if g != (1,):
        polys = [pdivmod(f, g, p)[0] for f in polys]
    lead = next(f for f in polys if f)
    inv_lead = pow(lead[-1], -1, p)
    return ("F", p) + tuple(pscale(f, inv_lead, p) for f in polys)


def word_key(m: Mat2, projective: bool = False) -> tuple:
    """Exact hashable key for deduplication in GL_2 or PGL_2."""
    return projective_key(m) if projective else m.entries()

