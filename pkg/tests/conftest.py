"""Shared fixtures: the three worked configurations and random instances."""

import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from loopsing.graphs import ChoiceGraph, PowerAssignment
from loopsing.poly import Polynomial

# four-variable tree: branches 1 -> 4, 2 -> 3 -> 4 into the pure-power root 4
TREE4_KAPPA = (4, 3, 4, 4)
TREE4_POWERS = (6, 9, 3, 7)

# three-cycle 1 -> 2 -> 3 -> 1 with branches 5 -> 1, 4 -> 5, 6 -> 1
LOOP6_KAPPA = (2, 3, 1, 5, 1, 1)
LOOP6_POWERS = (3, 2, 4, 3, 2, 4)

# cusp root (loop of length one) with branch leaves 2 and 3; leaf 2 is even
CUSP3_KAPPA = (1, 1, 1)
CUSP3_POWERS = (3, 4, 8)


@pytest.fixture
def tree4():
    return ChoiceGraph(TREE4_KAPPA), PowerAssignment(TREE4_POWERS)


@pytest.fixture
def loop6():
    return ChoiceGraph(LOOP6_KAPPA), PowerAssignment(LOOP6_POWERS)


@pytest.fixture
def cusp3():
    return ChoiceGraph(CUSP3_KAPPA), PowerAssignment(CUSP3_POWERS)


def random_loop_instance(rng: random.Random, max_vertices=7, max_power=5):
    """One loop-with-branches graph with powers, guaranteed weight-solvable.

    The loop takes the first vertices; every later vertex points at an
    earlier one, which keeps the graph connected with a single component.
    """
    n = rng.randint(3, max_vertices)
    loop_len = rng.randint(1, n)
    kappa = [0] * n
    for idx in range(loop_len):
        kappa[idx] = (idx + 1) % loop_len + 1
    for v in range(loop_len + 1, n + 1):
        kappa[v - 1] = rng.randint(1, v - 1)
    powers = tuple(rng.randint(2, max_power) for _ in range(n))
    return ChoiceGraph(kappa), PowerAssignment(powers)


def random_coefficients(rng: random.Random, shape: Polynomial) -> Polynomial:
    """Same support as ``shape`` with fresh coefficients from 1..1000."""
    return Polynomial(
        shape.arity,
        {e: Fraction(rng.randint(1, 1000)) for e in shape.terms},
    )


@st.composite
def polynomials(draw, max_arity=3, max_terms=4, max_exponent=3, arity=None):
    """Small random polynomials with rational coefficients."""
    if arity is None:
        arity = draw(st.integers(1, max_arity))
    n_terms = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n_terms):
        exponent = tuple(
            draw(st.integers(0, max_exponent)) for _ in range(arity)
        )
        coeff = Fraction(draw(st.integers(-6, 6)), draw(st.integers(1, 4)))
        terms[exponent] = terms.get(exponent, 0) + coeff
    return Polynomial(arity, {e: c for e, c in terms.items() if c})
