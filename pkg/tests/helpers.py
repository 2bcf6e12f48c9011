"""Seeded random generators shared across the test modules."""

from fractions import Fraction
from random import Random

from gridres import Field, MultiPoly


def random_element(rng: Random, field: Field, nonzero: bool = False):
    while True:
        if field.is_prime_field:
            v = field(rng.randrange(field.modulus))
        else:
            v = field(Fraction(rng.randint(-9, 9), rng.randint(1, 9)))
        if not (nonzero and v.is_zero()):
            return v


def random_nodes(rng: Random, field: Field, count: int, avoid_zero: bool = False):
    """count pairwise-distinct field elements."""
    pool: set = set()
    while len(pool) < count:
        pool.add(random_element(rng, field, nonzero=avoid_zero))
    return sorted(pool)


def random_poly(rng: Random, field: Field, nvars: int, max_exp: int,
                max_terms: int) -> MultiPoly:
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        mono = tuple(rng.randint(0, max_exp) for _ in range(nvars))
        terms[mono] = random_element(rng, field)
    return MultiPoly.from_terms(field, nvars, terms)


def random_relaxed_poly(rng: Random, field: Field, target) -> MultiPoly:
    """Random polynomial meeting the relaxed support condition for target.

    Mixes monomials inside the target box with spiked monomials that
    exceed the target in some coordinates while dropping below it in a
    chosen one, so the classical degree bound is regularly violated.
    """
    target = tuple(target)
    n = len(target)
    terms = {}
    droppable = [i for i in range(n) if target[i] >= 1]
    for _ in range(rng.randint(1, 8)):
        if droppable and rng.random() < 0.4:
            j = rng.choice(droppable)
            mono = tuple(
                rng.randint(0, target[i] - 1) if i == j else rng.randint(0, target[i] + 2)
                for i in range(n))
        else:
            mono = tuple(rng.randint(0, c) for c in target)
        terms[mono] = random_element(rng, field)
    if rng.random() < 0.5:
        terms[target] = random_element(rng, field)
    return MultiPoly.from_terms(field, nvars=n, terms=terms)


def random_bounded_poly(rng: Random, field: Field, nvars: int,
                        degree_bound: int, max_terms: int = 8) -> MultiPoly:
    """Random polynomial of total degree at most degree_bound (>= 0)."""
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        while True:
            mono = tuple(rng.randint(0, degree_bound) for _ in range(nvars))
            if sum(mono) <= degree_bound:
                break
        terms[mono] = random_element(rng, field)
    return MultiPoly.from_terms(field, nvars, terms)
