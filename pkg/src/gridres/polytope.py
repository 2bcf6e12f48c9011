"""Lattice polytopes with exact rational certificates.

Vertices are the extreme points of a generating set of integer vectors,
certified by an exact phase-one simplex over Fractions (no orientation
tricks, no floats).  The same LP core supplies point-in-hull membership
and strict supporting directions, which the residue machinery needs.
Facet enumeration is implemented for ambient dimension up to three.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

IntVec = tuple  # tuple[int, ...]


def _pivot(tab, z, row, col, width):
    inv = Fraction(1) / tab[row][col]
    tab[row] = [v * inv for v in tab[row]]
    for i, other in enumerate(tab):
        if i != row and other[col]:
            f = other[col]
            tab[i] = [a - f * b for a, b in zip(other, tab[row])]
    if z[col]:
        f = z[col]
        for j in range(width):
            z[j] -= f * tab[row][j]


def solve_nonnegative(rows: Sequence[Sequence], rhs: Sequence):
    """Exact feasibility: x >= 0 with rows . x == rhs, or None.

    Phase-one simplex with Bland's rule, so termination is guaranteed.
    """
    m = len(rows)
    if m == 0:
        return []
    k = len(rows[0])
    A, b = [], []
    for row, beta in zip(rows, rhs):
        beta = Fraction(beta)
        if beta < 0:
            A.append([-Fraction(v) for v in row])
            b.append(-beta)
        else:
            A.append([Fraction(v) for v in row])
            b.append(beta)
    total = k + m
    width = total + 1
    tab = [A[i] + [Fraction(1 if j == i else 0) for j in range(m)] + [b[i]]
           for i in range(m)]
    basis = list(range(k, k + m))
    # objective: minimize the sum of artificials; z holds reduced costs
    # (subtract the unit cost of each artificial so basic columns start at 0)
    z = [Fraction(0)] * width
    for row in tab:
        for j in range(width):
            z[j] += row[j]
    for i in range(m):
        z[k + i] -= 1
    in_basis = set(basis)
    while True:
        # Bland's rule over structural columns; artificials never re-enter
        enter = next((j for j in range(k) if j not in in_basis and z[j] > 0), None)
        if enter is None:
            break
        leave, best = None, None
        for i in range(m):
            a = tab[i][enter]
            if a > 0:
                ratio = tab[i][total] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            return None
        _pivot(tab, z, leave, enter, width)
        in_basis.discard(basis[leave])
        in_basis.add(enter)
        basis[leave] = enter
    if z[total] != 0:
        return None
    x = [Fraction(0)] * k
    for i, var in enumerate(basis):
        if var < k:
            x[var] = tab[i][total]
    return x


def point_in_hull(point: Sequence[int], generators: Sequence[IntVec]) -> bool:
    """Exact membership of a point in the convex hull of integer vectors."""
    gens = list(generators)
    if not gens:
        return False
    dim = len(point)
    rows = [[Fraction(g[d]) for g in gens] for d in range(dim)]
    rows.append([Fraction(1)] * len(gens))
    rhs = [Fraction(c) for c in point] + [Fraction(1)]
    return solve_nonnegative(rows, rhs) is not None


def extreme_points(points: Iterable[IntVec]) -> list[IntVec]:
    """The extreme points of a finite integer point set, sorted."""
    pts = sorted(set(tuple(int(c) for c in p) for p in points))
    if len(pts) <= 2:
        return pts
    out = []
    for i, p in enumerate(pts):
        others = pts[:i] + pts[i + 1:]
        if not point_in_hull(p, others):
            out.append(p)
    return out


def primitive(vec: Sequence[int]) -> IntVec:
    """Divide out the gcd; zero vectors are rejected."""
    g = 0
    for c in vec:
        g = gcd(g, abs(int(c)))
    if g == 0:
        raise ValueError("zero vector has no primitive form")
    return tuple(int(c) // g for c in vec)


def sign_normalized(vec: Sequence[int]) -> IntVec:
    """Primitive representative whose first nonzero coordinate is positive."""
    v = primitive(vec)
    for c in v:
        if c > 0:
            return v
        if c < 0:
            return tuple(-x for x in v)
    raise ValueError("zero vector")


def _cross3(u, v) -> IntVec:
    return (u[1] * v[2] - u[2] * v[1],
            u[2] * v[0] - u[0] * v[2],
            u[0] * v[1] - u[1] * v[0])


def _rank(vectors: Sequence[IntVec]) -> int:
    rows = [[Fraction(c) for c in v] for v in vectors if any(v)]
    rank = 0
    cols = len(rows[0]) if rows else 0
    for c in range(cols):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = Fraction(1) / rows[rank][c]
        rows[rank] = [v * inv for v in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


class LatticePolytope:
    """Convex hull of integer points; vertices stored sorted."""

    __slots__ = ("dim", "vertices", "points")

    def __init__(self, dim: int, vertices: Sequence[IntVec], points: Sequence[IntVec]):
        self.dim = dim
        self.vertices = tuple(vertices)
        self.points = tuple(points)

    @classmethod
    def from_points(cls, points: Iterable[IntVec]) -> "LatticePolytope":
        pts = sorted(set(tuple(int(c) for c in p) for p in points))
        if not pts:
            raise ValueError("polytope needs at least one point")
        dim = len(pts[0])
        if any(len(p) != dim for p in pts):
            raise ValueError("mixed dimensions in point set")
        return cls(dim, tuple(extreme_points(pts)), tuple(pts))

    def minkowski_sum(self, other: "LatticePolytope") -> "LatticePolytope":
        if self.dim != other.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")
        sums = {tuple(a + b for a, b in zip(p, q))
                for p in self.vertices for q in other.vertices}
        return LatticePolytope.from_points(sums)

    def face_in_direction(self, direction: Sequence[int]) -> "LatticePolytope":
        """Sub-polytope maximizing the inner product with the direction."""
        u = tuple(int(c) for c in direction)
        if len(u) != self.dim:
            raise ValueError("direction dimension mismatch")
        if not any(u):
            raise ValueError("zero direction has no face")
        scores = [sum(a * b for a, b in zip(u, v)) for v in self.vertices]
        top = max(scores)
        face = tuple(v for v, s in zip(self.vertices, scores) if s == top)
        return LatticePolytope(self.dim, face, face)

    def support_value(self, direction: Sequence[int]) -> int:
        return max(sum(a * b for a, b in zip(direction, v)) for v in self.vertices)

    def translate(self, offset: Sequence[int]) -> "LatticePolytope":
        off = tuple(int(c) for c in offset)
        move = lambda p: tuple(a + b for a, b in zip(p, off))
        return LatticePolytope(self.dim, tuple(sorted(map(move, self.vertices))),
                               tuple(sorted(map(move, self.points))))

    def contains(self, point: Sequence[int]) -> bool:
        return point_in_hull(tuple(int(c) for c in point), self.vertices)

    def is_vertex_polytope(self) -> bool:
        return len(self.vertices) == 1

    def affine_dim(self) -> int:
        if len(self.vertices) <= 1:
            return 0
        base = self.vertices[0]
        diffs = [tuple(a - b for a, b in zip(v, base)) for v in self.vertices[1:]]
        return _rank(diffs)

    def edge_difference_vectors(self) -> list[IntVec]:
        """Sign-normalized pairwise vertex differences (a superset of the
        edge directions, which is all the fan machinery needs)."""
        out = set()
        verts = self.vertices
        for i in range(len(verts)):
            for j in range(i + 1, len(verts)):
                d = tuple(a - b for a, b in zip(verts[i], verts[j]))
                out.add(sign_normalized(d))
        return sorted(out)

    def plane_normal(self) -> IntVec:
        """Normal of the affine hull of a 2-dimensional polytope in 3-space."""
        if self.dim != 3 or self.affine_dim() != 2:
            raise ValueError("plane normal needs a 2-dimensional polytope in 3-space")
        base = self.vertices[0]
        diffs = [tuple(a - b for a, b in zip(v, base)) for v in self.vertices[1:]]
        for i in range(len(diffs)):
            for j in range(i + 1, len(diffs)):
                w = _cross3(diffs[i], diffs[j])
                if any(w):
                    return sign_normalized(w)
        raise ValueError("degenerate polytope")

    def facet_normals(self) -> list[IntVec]:
        """Primitive outer normals of all facets (full-dimensional polytopes,
        ambient dimension at most three)."""
        n = self.dim
        if self.affine_dim() != n:
            raise ValueError("facet normals need a full-dimensional polytope")
        if n == 1:
            return [(-1,), (1,)]
        if n == 2:
            hull = _ccw_hull(self.vertices)
            normals = []
            for a, b in zip(hull, hull[1:] + hull[:1]):
                d = (b[0] - a[0], b[1] - a[1])
                normals.append(primitive((d[1], -d[0])))
            return sorted(set(normals))
        if n == 3:
            return self._facet_normals_3d()
        raise ValueError("facet enumeration implemented for dimension <= 3 only")

    def _facet_normals_3d(self) -> list[IntVec]:
        verts = self.vertices
        normals = set()
        for i in range(len(verts)):
            for j in range(i + 1, len(verts)):
                for k in range(j + 1, len(verts)):
                    a, b, c = verts[i], verts[j], verts[k]
                    w = _cross3(tuple(x - y for x, y in zip(b, a)),
                                tuple(x - y for x, y in zip(c, a)))
                    if not any(w):
                        continue
                    level = sum(x * y for x, y in zip(w, a))
                    top = max(sum(x * y for x, y in zip(w, v)) for v in verts)
                    bottom = min(sum(x * y for x, y in zip(w, v)) for v in verts)
                    if top == level:
                        normals.add(primitive(w))
                    if bottom == level:
                        normals.add(primitive(tuple(-x for x in w)))
        return sorted(normals)

    def vertex_facet_count(self, vertex: IntVec) -> int:
        """Number of facets through a vertex of a full-dimensional polytope."""
        n = self.dim
        if n == 1:
            return 1
        if n == 2:
            return 2
        count = 0
        for w in self.facet_normals():
            level = self.support_value(w)
            if sum(a * b for a, b in zip(w, vertex)) == level:
                count += 1
        return count

    def __eq__(self, other) -> bool:
        return (isinstance(other, LatticePolytope)
                and self.dim == other.dim and self.vertices == other.vertices)

    def __ne__(self, other) -> bool:
        return not self.__eq__(other)

    def __hash__(self) -> int:
        return hash((self.dim, self.vertices))

    def __repr__(self) -> str:
        return f"LatticePolytope({list(self.vertices)})"


def _ccw_hull(points: Sequence[IntVec]) -> list[IntVec]:
    """Monotone-chain hull in counterclockwise order, collinear points dropped."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return list(pts)
    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def strict_support_direction(polytope: LatticePolytope, vertex: IntVec,
                             dominated: Sequence[IntVec] = ()) -> IntVec | None:
    """Integer u with <u, vertex> strictly above every other vertex and
    weakly above every dominated point, or None if no such u exists."""
    vertex = tuple(int(c) for c in vertex)
    if vertex not in polytope.vertices:
        raise ValueError(f"{vertex} is not a vertex")
    n = polytope.dim
    strict = [tuple(v - x for v, x in zip(vertex, other))
              for other in polytope.vertices if other != vertex]
    weak = [tuple(v - y for v, y in zip(vertex, p)) for p in dominated]
    if strict:
        return _direction_lp(n, strict, weak)
    # single-vertex polytope: any nonzero member of the weak cone works
    for axis in range(n):
        for sign in (1, -1):
            unit = tuple(sign if i == axis else 0 for i in range(n))
            u = _direction_lp(n, [unit], weak)
            if u is not None:
                return u
    return None


def _direction_lp(n: int, strict: list[IntVec], weak: list[IntVec]) -> IntVec | None:
    """Find integer u with <u, d> >= 1 on strict and >= 0 on weak rows."""
    rows, rhs = [], []
    m = len(strict) + len(weak)
    slack = 0
    for d in strict:
        row = [Fraction(c) for c in d] + [Fraction(-c) for c in d]
        row += [Fraction(-1 if j == slack else 0) for j in range(m)]
        rows.append(row)
        rhs.append(Fraction(1))
        slack += 1
    for d in weak:
        row = [Fraction(c) for c in d] + [Fraction(-c) for c in d]
        row += [Fraction(-1 if j == slack else 0) for j in range(m)]
        rows.append(row)
        rhs.append(Fraction(0))
        slack += 1
    x = solve_nonnegative(rows, rhs)
    if x is None:
        return None
    u = [x[i] - x[n + i] for i in range(n)]
    if not any(u):
        return None
    lcm = 1
    for c in u:
        lcm = lcm * c.denominator // gcd(lcm, c.denominator)
    return primitive(tuple(int(c * lcm) for c in u))
