"""The grid coefficient formula and its nonvanishing witnesses.

The central identity: for node sets A_1..A_n with |A_i| = c_i + 1 and a
polynomial f whose monomials other than the target c all drop below c in
some coordinate, the coefficient of x^c equals

    sum over the grid of  f(a_1..a_n) / (phi_1'(a_1) ... phi_n'(a_n)),

where phi_i is the monic polynomial vanishing on A_i.  Everything here is
exact; the grid sum is evaluated with per-variable weight tables and one
batched inversion per variable.
"""

from __future__ import annotations

from itertools import product
from typing import Iterable, Sequence

from .field import Field, FieldElement, FieldMismatchError, batch_inverse
from .multipoly import MultiPoly


class GridSystem:
    """Product grid of per-variable node sets, nodes sorted and distinct."""

    __slots__ = ("field", "nodes", "sizes")

    def __init__(self, field: Field, node_sets: Sequence[Iterable]):
        if not node_sets:
            raise ValueError("need at least one node set")
        nodes = []
        for i, raw in enumerate(node_sets):
            ns = sorted(field(a) for a in raw)
            if not ns:
                raise ValueError(f"node set {i} is empty")
            if len(set(ns)) != len(ns):
                raise ValueError(f"duplicate node in set {i} (multisets are rejected)")
            nodes.append(tuple(ns))
        self.field = field
        self.nodes = tuple(nodes)
        self.sizes = tuple(len(ns) for ns in nodes)

    @property
    def nvars(self) -> int:
        return len(self.nodes)

    @property
    def target_exponent(self) -> tuple:
        """c with c_i = |A_i| - 1: the exponent the grid formula extracts."""
        return tuple(k - 1 for k in self.sizes)

    def points(self):
        """Grid points in row-major (lexicographic by sorted nodes) order."""
        return product(*self.nodes)

    def __repr__(self) -> str:
        sets = ", ".join("{" + ", ".join(map(str, ns)) + "}" for ns in self.nodes)
        return f"GridSystem({self.field!r}, [{sets}])"


def grid_weights(nodes: Sequence[FieldElement]) -> dict:
    """Map node -> 1/phi'(node) for the monic vanishing polynomial phi."""
    nodes = list(nodes)
    if not nodes:
        raise ValueError("empty node set")
    if len(set(nodes)) != len(nodes):
        raise ValueError("duplicate nodes")
    field = nodes[0].field
    derivs = []
    for i, a in enumerate(nodes):
        acc = field.one
        for j, b in enumerate(nodes):
            if j != i:
                acc = acc * (a - b)
        derivs.append(acc)
    return dict(zip(nodes, batch_inverse(derivs)))


def check_classical_degree(f: MultiPoly, c: Sequence[int]) -> bool:
    """True iff total degree of f is at most sum(c)."""
    return f.total_degree() <= sum(c)


def check_relaxed_support(f: MultiPoly, c: Sequence[int]) -> bool:
    """True iff every monomial other than c drops below c somewhere.

    This is weaker than the classical degree bound and is the actual
    precondition of the grid formula.
    """
    c = tuple(int(e) for e in c)
    if len(c) != f.nvars:
        raise ValueError(f"target exponent arity {len(c)}, expected {f.nvars}")
    for m in f.terms:
        if m == c:
            continue
        if all(d >= ci for d, ci in zip(m, c)):
            return False
    return True


def _raw_mul(field: Field):
    if field.is_prime_field:
        p = field.modulus
        return lambda a, b: a * b % p
    return lambda a, b: a * b


def _power_tables(f: MultiPoly, node_lists, field: Field):
    """tables[i][j] maps exponent -> node_j^exponent as raw values."""
    mul = _raw_mul(field)
    exps = [sorted({m[i] for m in f.terms}) for i in range(f.nvars)]
    tables = []
    for i, nodes in enumerate(node_lists):
        # FieldElement.__pow__ rejects 0 raised to a negative exponent
        tables.append([{e: (a ** e).value for e in exps[i]} for a in nodes])
    return tables, mul


def _weighted_grid_sum(f: MultiPoly, node_lists, weight_lists) -> FieldElement:
    """sum over the grid of f(point) * prod(weights), exact, row-major."""
    field = f.field
    if f.is_zero():
        return field.zero
    tables, mul = _power_tables(f, node_lists, field)
    terms = [(m, c.value) for m, c in f.terms.items()]
    raw_weights = [[w.value for w in ws] for ws in weight_lists]
    prime = field.is_prime_field
    modulus = field.modulus
    total = field.zero.value
    n = f.nvars
    for idx in product(*(range(len(ns)) for ns in node_lists)):
        val = 0
        for m, c in terms:
            v = c
            for i in range(n):
                e = m[i]
                if e:
                    v = mul(v, tables[i][idx[i]][e])
            val += v
        if prime:
            val %= modulus
        if val:
            w = raw_weights[0][idx[0]]
            for i in range(1, n):
                w = mul(w, raw_weights[i][idx[i]])
            total += mul(val, w)
            if prime:
                total %= modulus
    return FieldElement(field, total)


def _require_polynomial(f: MultiPoly):
    if f.is_laurent():
        raise ValueError("grid formula requires nonnegative exponents")


def _require_compatible(f: MultiPoly, grid: GridSystem):
    if f.field != grid.field:
        raise FieldMismatchError(f"polynomial over {f.field}, grid over {grid.field}")
    if f.nvars != grid.nvars:
        raise ValueError(f"arity mismatch: polynomial {f.nvars}, grid {grid.nvars}")


def coefficient_via_grid(f: MultiPoly, grid: GridSystem) -> FieldElement:
    """Extract the coefficient at the grid's target exponent by summation.

    Requires the relaxed support condition for the grid's target; the
    result then equals f.coefficient(target) exactly.
    """
    _require_compatible(f, grid)
    _require_polynomial(f)
    c = grid.target_exponent
    if not check_relaxed_support(f, c):
        raise ValueError(
            f"relaxed support condition violated for target exponent {c}")
    weights = [grid_weights(ns) for ns in grid.nodes]
    weight_lists = [[w[a] for a in ns] for w, ns in zip(weights, grid.nodes)]
    return _weighted_grid_sum(f, grid.nodes, weight_lists)


def find_nonvanishing_witness(f: MultiPoly, grid: GridSystem):
    """First grid point (row-major over sorted nodes) where f is nonzero.

    Returns None when f vanishes on the whole grid.  Whenever the grid
    coefficient is nonzero a witness is guaranteed to exist.
    """
    _require_compatible(f, grid)
    _require_polynomial(f)
    if f.is_zero():
        return None
    field = f.field
    tables, mul = _power_tables(f, grid.nodes, field)
    terms = [(m, c.value) for m, c in f.terms.items()]
    n = f.nvars
    modulus = field.modulus
    for idx in product(*(range(len(ns)) for ns in grid.nodes)):
        val = 0
        for m, c in terms:
            v = c
            for i in range(n):
                e = m[i]
                if e:
                    v = mul(v, tables[i][idx[i]][e])
            val += v
        if (val % modulus) if field.is_prime_field else val:
            return tuple(grid.nodes[i][idx[i]] for i in range(n))
    return None
