"""Sparse multivariate Laurent polynomials over an exact field.

A polynomial is a map from integer exponent vectors to nonzero field
elements.  Exponents are signed (Laurent terms are first-class) and must
fit a signed 32-bit integer; products are overflow-checked.  Canonical
iteration order is graded lexicographic, so printing and reports are
reproducible.  The zero polynomial is the empty map and has total degree
-1 by convention.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

from .field import Field, FieldElement, FieldMismatchError

Monomial = tuple  # tuple[int, ...], length = nvars

MAX_EXPONENT = (1 << 31) - 1
MIN_EXPONENT = -(1 << 31)


def grade_key(m: Monomial):
    """Graded-lex sort key: total degree first, then lexicographic."""
    return (sum(m), m)


def _check_exponent(e: int) -> int:
    if not MIN_EXPONENT <= e <= MAX_EXPONENT:
        raise OverflowError(f"exponent {e} exceeds signed 32-bit range")
    return e


def monomial_product(a: Monomial, b: Monomial) -> Monomial:
    return tuple(_check_exponent(x + y) for x, y in zip(a, b))


class MultiPoly:
    """Immutable sparse polynomial; all ring operations are pure."""

    __slots__ = ("field", "nvars", "terms")

    def __init__(self, field: Field, nvars: int, terms: Mapping[Monomial, FieldElement]):
        # terms are assumed clean (no zero coefficients, correct arity);
        # use the constructors below for unvalidated data
        self.field = field
        self.nvars = nvars
        self.terms = dict(terms)

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, field: Field, nvars: int) -> "MultiPoly":
        return cls(field, nvars, {})

    @classmethod
    def constant(cls, field: Field, nvars: int, value) -> "MultiPoly":
        c = field(value)
        if c.is_zero():
            return cls.zero(field, nvars)
        return cls(field, nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, field: Field, nvars: int, index: int) -> "MultiPoly":
        if not 0 <= index < nvars:
            raise IndexError(f"variable index {index} out of range for {nvars} variables")
        expo = tuple(1 if i == index else 0 for i in range(nvars))
        return cls(field, nvars, {expo: field.one})

    @classmethod
    def from_terms(cls, field: Field, nvars: int,
                   terms: Mapping[Monomial, object]) -> "MultiPoly":
        clean: dict[Monomial, FieldElement] = {}
        for m, c in terms.items():
            m = tuple(int(e) for e in m)
            if len(m) != nvars:
                raise ValueError(f"monomial {m} has arity {len(m)}, expected {nvars}")
            for e in m:
                _check_exponent(e)
            coeff = field(c)
            if not coeff.is_zero():
                clean[m] = coeff
        return cls(field, nvars, clean)

    # -- ring structure ----------------------------------------------------

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.field != self.field:
                raise FieldMismatchError(f"mixed fields: {self.field} and {other.field}")
            if other.nvars != self.nvars:
                raise ValueError(f"arity mismatch: {self.nvars} vs {other.nvars}")
            return other
        if isinstance(other, (int, FieldElement)):
            return MultiPoly.constant(self.field, self.nvars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms = dict(self.terms)
        for m, c in other.terms.items():
            s = terms.get(m)
            s = c if s is None else s + c
            if s.is_zero():
                terms.pop(m, None)
            else:
                terms[m] = s
        return MultiPoly(self.field, self.nvars, terms)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.field, self.nvars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        if isinstance(other, FieldElement) or isinstance(other, int):
            scalar = self.field(other)
            if scalar.is_zero():
                return MultiPoly.zero(self.field, self.nvars)
            return MultiPoly(self.field, self.nvars,
                             {m: c * scalar for m, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms: dict[Monomial, FieldElement] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = monomial_product(m1, m2)
                c = c1 * c2
                s = terms.get(m)
                s = c if s is None else s + c
                if s.is_zero():
                    terms.pop(m, None)
                else:
                    terms[m] = s
        return MultiPoly(self.field, self.nvars, terms)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            if len(self.terms) != 1:
                raise ValueError("negative power of a non-monomial")
            (m, c), = self.terms.items()
            expo = tuple(_check_exponent(x * e) for x in m)
            return MultiPoly(self.field, self.nvars, {expo: c.inv() ** (-e)})
        result = MultiPoly.constant(self.field, self.nvars, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, FieldElement)):
            other = self._coerce(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return (self.field == other.field and self.nvars == other.nvars
                and self.terms == other.terms)

    def __ne__(self, other) -> bool:
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    # -- queries -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_laurent(self) -> bool:
        """True when some exponent is negative."""
        return any(e < 0 for m in self.terms for e in m)

    def coefficient(self, m: Sequence[int]) -> FieldElement:
        """Stored coefficient of the monomial, or zero if absent."""
        m = tuple(int(e) for e in m)
        if len(m) != self.nvars:
            raise ValueError(f"monomial {m} has arity {len(m)}, expected {self.nvars}")
        return self.terms.get(m, self.field.zero)

    def total_degree(self) -> int:
        """Max exponent sum; -1 for the zero polynomial; Laurent input rejected."""
        if self.is_laurent():
            raise ValueError("total degree undefined for Laurent polynomials")
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def support(self) -> list[Monomial]:
        """Exponent vectors in canonical (graded-lex ascending) order."""
        return sorted(self.terms, key=grade_key)

    def evaluate(self, point: Sequence[FieldElement]) -> FieldElement:
        """Exact value at the point; zero coordinates reject negative powers."""
        point = [self.field(x) for x in point]
        if len(point) != self.nvars:
            raise ValueError(f"point has arity {len(point)}, expected {self.nvars}")
        total = self.field.zero
        for m, c in self.terms.items():
            v = c
            for x, e in zip(point, m):
                if e == 0:
                    continue
                if e < 0 and x.is_zero():
                    raise ZeroDivisionError("zero coordinate raised to a negative power")
                v = v * x ** e
            total = total + v
        return total

    def partial_derivative(self, index: int) -> "MultiPoly":
        """Formal derivative in one variable (Laurent terms included)."""
        if not 0 <= index < self.nvars:
            raise IndexError(f"variable index {index} out of range for {self.nvars} variables")
        terms: dict[Monomial, FieldElement] = {}
        for m, c in self.terms.items():
            e = m[index]
            if e == 0:
                continue
            coeff = c * e
            if coeff.is_zero():
                continue
            dm = m[:index] + (e - 1,) + m[index + 1:]
            s = terms.get(dm)
            s = coeff if s is None else s + coeff
            if s.is_zero():
                terms.pop(dm, None)
            else:
                terms[dm] = s
        return MultiPoly(self.field, self.nvars, terms)

    def shift(self, offset: Sequence[int]) -> "MultiPoly":
        """Multiply by the Laurent monomial with the given exponent vector."""
        offset = tuple(int(e) for e in offset)
        if len(offset) != self.nvars:
            raise ValueError("offset arity mismatch")
        return MultiPoly(self.field, self.nvars,
                         {monomial_product(m, offset): c for m, c in self.terms.items()})

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"MultiPoly({self.field!r}, {self.nvars}, {format_poly(self)!r})"


def default_names(nvars: int) -> list[str]:
    if nvars <= 3:
        return ["x", "y", "z"][:nvars]
    return [f"z{i + 1}" for i in range(nvars)]


def format_poly(f: MultiPoly, names: Sequence[str] | None = None) -> str:
    """Canonical text: terms in graded-lex descending order.

    The output reparses (see gridres.expr) to an equal polynomial.
    """
    if names is None:
        names = default_names(f.nvars)
    if len(names) != f.nvars:
        raise ValueError("one name per variable required")
    if f.is_zero():
        return "0"
    pieces = []
    for m in sorted(f.terms, key=grade_key, reverse=True):
        c = f.terms[m]
        sign = "-" if (not f.field.is_prime_field and c.value < 0) else "+"
        mag = -c if sign == "-" else c
        factors = []
        for name, e in zip(names, m):
            if e == 0:
                continue
            factors.append(name if e == 1 else f"{name}^{e}")
        if not factors:
            factors = [str(mag)]
        elif mag != f.field.one:
            factors.insert(0, str(mag))
        pieces.append((sign, "*".join(factors)))
    head_sign, head = pieces[0]
    out = ("-" if head_sign == "-" else "") + head
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


def vanishing_poly_from_nodes(nodes: Iterable[FieldElement]) -> MultiPoly:
    """Monic univariate polynomial with the given pairwise-distinct roots."""
    nodes = list(nodes)
    if not nodes:
        raise ValueError("need at least one node")
    field = nodes[0].field
    seen = set()
    for a in nodes:
        if field(a) in seen:
            raise ValueError(f"duplicate node {a} (multisets are rejected)")
        seen.add(field(a))
    # coefficient list, index = exponent
    coeffs = [field.one]
    for a in nodes:
        a = field(a)
        nxt = [field.zero] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            nxt[i + 1] = nxt[i + 1] + c
            nxt[i] = nxt[i] - c * a
        coeffs = nxt
    return MultiPoly.from_terms(field, 1, {(i,): c for i, c in enumerate(coeffs)})
