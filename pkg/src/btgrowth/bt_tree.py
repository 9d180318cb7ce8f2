"""The Bruhat-Tits tree of GL_2 over a discretely valued field.

A vertex is the homothety class of the lattice spanned by the columns of
``[[pi^a, b], [0, 1]]`` where ``b`` is reduced modulo ``pi^a A_v`` by
:func:`residue_representative`.  Every lattice class has exactly one such
form, so vertices compare and hash by ``(a, b)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .matgroup import Mat2, commutator
from .valued_field import (INF, PAdic, PolyAdic, RatFunc, Valuation, residue_representative,
                           uniformizer, val)


class NotHyperbolic(ValueError):
    pass


@dataclass(frozen=True)
class Vertex:
    a: int
    b: object
    v: Valuation

    @property
    def matrix(self) -> Mat2:
        field = self.v.field
        return Mat2(uniformizer(self.v) ** self.a, self.b, field.zero, field.one)


def _check_field(M: Mat2, v: Valuation):
    if M.field != v.field:
        raise ValueError(f"matrix over {M.field} used with {v}")


def base_vertex(v: Valuation) -> Vertex:
    return Vertex(0, v.field.zero, v)


def vertex_from_matrix(M: Mat2, v: Valuation) -> Vertex:
    """Class of the lattice spanned by the columns of ``M``."""
    _check_field(M, v)
    (x, y), (z, w) = M.rows()
    # column ops over A_v: put the bottom entry of least valuation in column 2
    if val(z, v) < val(w, v):
        x, y, z, w = y, x, w, z
    if z:
        k = z / w
        x, z = x - k * y, z - k * w
    # now [[x, y], [0, w]]; rescale so the bottom-right entry is 1
    x, y = x / w, y / w
    a = val(x, v)
    # x = pi^a * unit, and the unit is absorbed by column 1
    b = residue_representative(y, a, v)
    return Vertex(a, b, v)


def _m_between(x: Vertex, y: Vertex) -> Mat2:
    if x.v != y.v:
        raise ValueError("vertices from different trees")
    return x.matrix.inv() * y.matrix


def _lattice_distance(m: Mat2, v: Valuation) -> int:
    return val(m.det(), v) - 2 * min(val(e, v) for e in m.entries())


def distance(x: Vertex, y: Vertex) -> int:
    if x == y:
        return 0
    return _lattice_distance(_m_between(x, y), x.v)


def act(g: Mat2, x: Vertex) -> Vertex:
    _check_field(g, x.v)
    return vertex_from_matrix(g * x.matrix, x.v)


def displacement(g: Mat2, x: Vertex) -> int:
    """``distance(x, g x)`` computed without building ``g x``."""
    _check_field(g, x.v)
    M = x.matrix
    return _lattice_distance(M.inv() * g * M, x.v)


def translation_length(g: Mat2, v: Valuation) -> int:
    _check_field(g, v)
    t = val(g.trace(), v)
    if t == INF:
        return 0
    return max(0, val(g.det(), v) - 2 * t)


def is_hyperbolic(g: Mat2, v: Valuation) -> bool:
    return translation_length(g, v) > 0


def is_inversion(g: Mat2, v: Valuation) -> bool:
    return translation_length(g, v) == 0 and val(g.det(), v) % 2 == 1


def classify_isometry(g: Mat2, v: Valuation) -> str:
    if is_hyperbolic(g, v):
        return "hyperbolic"
    return "inversion" if is_inversion(g, v) else "elliptic"


def _smith_left_factor(m: Mat2, v: Valuation) -> tuple[Mat2, int, int]:
    """Return ``(U, e1, e2)`` with ``m = U diag(pi^e1, pi^e2) V``, ``U, V`` in
    GL_2(A_v) and ``e1 <= e2``."""
    field = m.field
    one, zero = field.one, field.zero
    rows = [[m.a, m.b], [m.c, m.d]]
    U = Mat2.identity(field)
    (i, j) = min(((i, j) for i in range(2) for j in range(2)),
                 key=lambda ij: val(rows[ij[0]][ij[1]], v))
    if i == 1:
        rows.reverse()
        U = U * Mat2(zero, one, one, zero)
    if j == 1:
        for r in rows:
            r.reverse()
    pivot = rows[0][0]
    k = rows[1][0] / pivot
    # row1 -= k row0, so m = U E^-1 m' with E^-1 = [[1, 0], [k, 1]]
    rows[1] = [rows[1][0] - k * rows[0][0], rows[1][1] - k * rows[0][1]]
    U = U * Mat2(one, zero, k, one)
    # the column op clearing rows[0][1] leaves rows[1][1] unchanged
    e1 = val(pivot, v)
    e2 = val(rows[1][1], v)
    return U, e1, e2


def geodesic(x: Vertex, y: Vertex) -> list[Vertex]:
    """Vertices of the geodesic from ``x`` to ``y``, both ends included."""
    if x == y:
        return [x]
    v = x.v
    U, e1, e2 = _smith_left_factor(_m_between(x, y), v)
    start = x.matrix * U
    pi = uniformizer(v)
    field = v.field
    path = [x]
    for j in range(1, e2 - e1 + 1):
        step = Mat2(field.one, field.zero, field.zero, pi ** j)
        path.append(vertex_from_matrix(start * step, v))
    return path


def neighbors(x: Vertex) -> list[Vertex]:
    """The ``q + 1`` vertices adjacent to ``x`` (q = residue field size)."""
    v = x.v
    field = v.field
    pi = uniformizer(v)
    M = x.matrix
    out = [vertex_from_matrix(M * Mat2(field.one, field.zero, field.zero, pi), v)]
    for r in _residue_reps(v):
        out.append(vertex_from_matrix(M * Mat2(pi, r, field.zero, field.one), v))
    return out


def _residue_reps(v: Valuation) -> list:
    """Lifts to A_v of the elements of the residue field."""
    if isinstance(v, PAdic):
        return [Fraction(r) for r in range(v.p)]
    if isinstance(v, PolyAdic):
        n = len(v.pi) - 1
        return [RatFunc(c, (1,), v.p) for c in product(range(v.p), repeat=n)]
    return [RatFunc((r,), (1,), v.p) for r in range(v.p)]


def ball(center: Vertex, radius: int) -> list[Vertex]:
    """All vertices within ``radius`` of ``center`` in breadth-first order."""
    seen = {center}
    out = [center]
    frontier = [center]
    for _ in range(radius):
        nxt = []
        for x in frontier:
            for y in neighbors(x):
                if y not in seen:
                    seen.add(y)
                    out.append(y)
                    nxt.append(y)
        frontier = nxt
    return out


def min_displacement_vertex(g: Mat2, v: Valuation, start: Vertex | None = None) -> Vertex:
    """A vertex where ``g`` moves points least: on the axis when hyperbolic, a
    fixed vertex when elliptic, an endpoint of the flipped edge for an inversion."""
    x = start if start is not None else base_vertex(v)
    gx = act(g, x)
    d = distance(x, gx)
    ell = translation_length(g, v)
    return geodesic(x, gx)[(d - ell) // 2]


def point_on_axis(g: Mat2, v: Valuation) -> Vertex:
    if not is_hyperbolic(g, v):
        raise NotHyperbolic(f"{g} is not hyperbolic at {v}")
    return min_displacement_vertex(g, v)


def project_to_axis(g: Mat2, x: Vertex) -> Vertex:
    """Nearest vertex of the axis of ``g`` to ``x``."""
    if not is_hyperbolic(g, x.v):
        raise NotHyperbolic(f"{g} is not hyperbolic at {x.v}")
    return min_displacement_vertex(g, x.v, x)


def distance_to_axis(g: Mat2, x: Vertex) -> int:
    return (displacement(g, x) - translation_length(g, x.v)) // 2


def on_axis(g: Mat2, x: Vertex) -> bool:
    return displacement(g, x) == translation_length(g, x.v)


def axis_equal(g: Mat2, h: Mat2, v: Valuation) -> bool:
    """Whether two hyperbolic elements have the same axis.

    A hyperbolic element has eigenvalues of different valuations, so two
    distinct eigenlines; these are the ends of its axis.  Two such elements
    share both ends exactly when they commute up to a scalar.
    """
    if not (is_hyperbolic(g, v) and is_hyperbolic(h, v)):
        raise NotHyperbolic("axis comparison needs two hyperbolic elements")
    return commutator(g, h).is_scalar()


@dataclass(frozen=True)
class Bridge:
    on_g: Vertex
    on_h: Vertex
    separation: int


def bridge(g: Mat2, h: Mat2, v: Valuation) -> Bridge:
    """Closest pair of vertices between the axes of ``g`` and ``h``.

    ``separation == 0`` means the axes meet; the returned vertex then lies on both.
    """
    if axis_equal(g, h, v):
        raise ValueError("bridge needs distinct axes")
    a1 = project_to_axis(g, point_on_axis(h, v))
    a2 = project_to_axis(h, a1)
    a1 = project_to_axis(g, a2)
    return Bridge(a1, a2, distance(a1, a2))
