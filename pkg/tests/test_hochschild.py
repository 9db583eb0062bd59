"""Clifford contraction, difference-derivative tensors, sector algebra."""

from fractions import Fraction
from itertools import chain, combinations

import pytest

from loopsing.errors import ScopeError
from loopsing.graphs import ChoiceGraph, PowerAssignment
from loopsing.hochschild import (
    OrbifoldAlgebra,
    SectorElement,
    ThetaTensor,
    contract_word,
    h_f,
    h_fg,
    upsilon,
    verify_psi,
    _merge_words,
)
from loopsing.orbifold import GroupElement, build_bar_f, build_orbifold_input
from loopsing.poly import Polynomial, parse_polynomial


def P(text, arity=None):
    return parse_polynomial(text, arity)


def subsets(universe):
    return chain.from_iterable(
        combinations(universe, k) for k in range(len(universe) + 1)
    )


# -- independent oracle: normal ordering in the full Clifford algebra ---------
#
# Words mix generators ('t', i) and ('d', i).  Normal order puts every dual
# generator left of every theta, both blocks ascending; the contraction
# module is the quotient by words that still contain a theta.

def normal_order(word, coeff=1):
    result = {}
    stack = [(tuple(word), coeff)]
    while stack:
        w, c = stack.pop()
        for k in range(len(w) - 1):
            (ka, ia), (kb, ib) = w[k], w[k + 1]
            if ka == kb:
                if ia == ib:
                    c = 0
                    break
                if ia > ib:
                    swapped = w[:k] + (w[k + 1], w[k]) + w[k + 2:]
                    stack.append((swapped, -c))
                    c = None
                    break
            elif ka == "t" and kb == "d":
                # theta_i d_j = delta_ij - d_j theta_i
                rest = w[:k] + (w[k + 1], w[k]) + w[k + 2:]
                stack.append((rest, -c))
                if ia == ib:
                    stack.append((w[:k] + w[k + 2:], c))
                c = None
                break
        if c:
            result[w] = result.get(w, 0) + c
        if c == 0:
            continue
    return {w: c for w, c in result.items() if c}


def oracle_contract(theta_word, dual_word):
    word = tuple(("t", i) for i in theta_word) + tuple(("d", i) for i in dual_word)
    projected = {}
    for w, c in normal_order(word).items():
        if any(kind == "t" for kind, _ in w):
            continue
        projected[tuple(i for _, i in w)] = c
    return projected


class TestCliffordOracle:
    def test_contract_word_matches_normal_ordering(self):
        for A in subsets((1, 2, 3)):
            for S in subsets((1, 2, 3)):
                expected = oracle_contract(A, S)
                got = contract_word(A, S)
                if got is None:
                    assert expected == {}
                else:
                    sign, word = got
                    assert expected == {word: sign}

    def test_merge_words_matches_normal_ordering(self):
        for U in subsets((1, 2, 3)):
            for V in subsets((1, 2, 3)):
                word = tuple(("d", i) for i in U + V)
                expected = {
                    tuple(i for _, i in w): c for w, c in normal_order(word).items()
                }
                got = _merge_words(U, V)
                if got is None:
                    assert expected == {}
                else:
                    sign, merged = got
                    assert expected == {merged: sign}


class TestUpsilon:
    def test_single_generator_square(self):
        t = ThetaTensor(1, {((1,), (1,)): Polynomial.one(1)})
        assert upsilon(t, (1,), (1,)) == {(): Polynomial.constant(1, -1)}

    def test_unit_legs_merge_the_duals(self):
        p = P("x1 + x2")
        t = ThetaTensor(2, {((), ()): p})
        out = upsilon(t, (1,), (2,))
        assert out == {(1, 2): p}
        swapped = upsilon(t, (2,), (1,))
        assert swapped == {(1, 2): p.scale(-1)}

    def test_zero_when_index_missing(self):
        t = ThetaTensor(1, {((1,), ()): Polynomial.one(1)})
        assert upsilon(t, (), ()) == {}


class TestDifferenceTensors:
    def test_square_gives_unit_tensor(self):
        H = h_f(P("x1^2", 1), GroupElement((-1,)))
        assert H.terms == {((1,), (1,)): Polynomial.one(1)}

    def test_worked_diagonal_entries(self, cusp3):
        graph, powers = cusp3
        inp = build_orbifold_input(graph, powers, t=2)
        H = h_f(inp.f, inp.group)
        assert H.coefficient((2,), (2,)) == P("2*x2^2*x1 + 2*x2^2*x3^4", 4)
        assert H.coefficient((4,), (4,)) == Polynomial.one(4)

    def test_mixed_tensor_vanishes_without_joint_monomials(self, cusp3):
        graph, powers = cusp3
        inp = build_orbifold_input(graph, powers, t=2)
        assert h_fg(inp.f, inp.group).is_zero()
        # the shifted copy used on the second leg vanishes as well
        shifted = h_fg(inp.f, inp.group).map_coefficients(
            lambda p: p.apply_signs(inp.group.signs)
        )
        assert shifted.is_zero()

    def test_mixed_tensor_on_a_joint_monomial(self):
        f = P("x1*x2")
        g = GroupElement((-1, -1))
        H = h_fg(f, g)
        assert H.terms == {((1, 2), ()): Polynomial.constant(2, Fraction(-1, 2))}

    def test_identity_gives_empty_sum(self):
        assert h_fg(P("x1*x2"), GroupElement((1, 1))).is_zero()


@pytest.fixture(scope="module")
def worked_algebra():
    graph = ChoiceGraph((1, 1, 1))
    powers = PowerAssignment((3, 4, 8))
    inp = build_orbifold_input(graph, powers, t=2)
    algebra = OrbifoldAlgebra(
        inp.f, [GroupElement.identity(4), inp.group]
    )
    return inp, algebra


class TestSigma:
    def test_unit_constants(self, worked_algebra):
        inp, algebra = worked_algebra
        one = Polynomial.one(4)
        assert algebra.sigma(algebra.identity, inp.group) == one
        assert algebra.sigma(inp.group, algebra.identity) == one
        assert algebra.sigma(algebra.identity, algebra.identity) == one

    def test_worked_square(self, worked_algebra):
        inp, algebra = worked_algebra
        sigma = algebra.sigma(inp.group, inp.group)
        assert sigma == P("-2*x2^2*x1 - 2*x2^2*x3^4", 4)

    def test_degree_is_the_common_moved_count(self):
        g = GroupElement((-1, 1, -1, 1))
        h = GroupElement((-1, -1, 1, 1))
        gh = g.compose(h)
        degree = Fraction(g.d_g + h.d_g - gh.d_g, 2)
        assert degree == 1 == len(set(g.moved_indices) & set(h.moved_indices))

    def test_out_of_scope_pair_rejected(self):
        f = P("x1^4 + x2^4")
        elements = [
            GroupElement(signs)
            for signs in [(1, 1), (-1, 1), (1, -1), (-1, -1)]
        ]
        algebra = OrbifoldAlgebra(f, elements)
        with pytest.raises(ScopeError):
            algebra.sigma(GroupElement((-1, 1)), GroupElement((1, -1)))


class TestSectorProduct:
    def test_unit_laws(self, worked_algebra):
        inp, algebra = worked_algebra
        unit = algebra.unit()
        for u in (
            algebra.element({algebra.identity: P("x3", 4)}),
            algebra.generator(inp.group),
            algebra.element({inp.group: P("x3^2", 4)}),
        ):
            assert algebra.product(unit, u) == u
            assert algebra.product(u, unit) == u

    def test_twisted_generator_square(self, worked_algebra):
        inp, algebra = worked_algebra
        xi = algebra.generator(inp.group)
        square = algebra.product(xi, xi)
        expected = algebra.element(
            {algebra.identity: P("-2*x2^2*x1 - 2*x2^2*x3^4", 4)}
        )
        assert square == expected

    def test_fixed_variable_passes_into_the_twisted_sector(self, worked_algebra):
        inp, algebra = worked_algebra
        u = algebra.element({algebra.identity: P("x3", 4)})
        xi = algebra.generator(inp.group)
        assert algebra.product(u, xi) == algebra.element({inp.group: P("x3", 4)})

    def test_moved_variable_dies_in_the_twisted_sector(self, worked_algebra):
        inp, algebra = worked_algebra
        u = algebra.element({algebra.identity: P("x2", 4)})
        xi = algebra.generator(inp.group)
        assert algebra.product(u, xi).is_zero()


class TestGroupAction:
    def test_identity_acts_trivially(self, worked_algebra):
        inp, algebra = worked_algebra
        u = algebra.element(
            {algebra.identity: P("x2*x4", 4), inp.group: P("x3", 4)}
        )
        assert algebra.g_action(algebra.identity, u) == u

    def test_twist_cancels_on_the_flipped_pair(self, worked_algebra):
        inp, algebra = worked_algebra
        u = algebra.element({inp.group: P("x1*x3", 4)})
        # both prefactor signs are -1, and the representative is fixed
        assert algebra.g_action(inp.group, u) == u

    def test_odd_monomials_flip_in_the_plain_sector(self, worked_algebra):
        inp, algebra = worked_algebra
        u = algebra.element({algebra.identity: P("x2", 4)})
        assert algebra.g_action(inp.group, u) == u.scale(-1)

    def test_equivariance_on_sample_pairs(self, worked_algebra):
        inp, algebra = worked_algebra
        g = inp.group
        samples = [
            algebra.element({algebra.identity: P("x2*x4", 4)}),
            algebra.element({algebra.identity: P("x1 + x3", 4)}),
            algebra.element({g: P("x3^2", 4)}),
            algebra.generator(g),
        ]
        for u in samples:
            for v in samples:
                lhs = algebra.g_action(g, algebra.product(u, v))
                rhs = algebra.product(
                    algebra.g_action(g, u), algebra.g_action(g, v)
                )
                assert algebra.elements_equal(lhs, rhs)


class TestInvariants:
    def test_invariant_dimensions(self, worked_algebra):
        inp, algebra = worked_algebra
        dims = algebra.invariant_dimensions()
        assert dims[algebra.identity] == 66
        assert dims[inp.group] == 22
        assert algebra.sectors[algebra.identity].dimension == 110

    def test_invariant_basis_is_fixed_pointwise(self, worked_algebra):
        inp, algebra = worked_algebra
        for u in algebra.invariant_basis():
            assert algebra.g_action(inp.group, u) == u


class TestVerifyPsi:
    def test_worked_example_passes(self, cusp3):
        graph, powers = cusp3
        inp = build_orbifold_input(graph, powers, t=2)
        bar = build_bar_f(inp, check_dims=False)
        report = verify_psi(bar)
        assert report.passed
        assert report.milnor_bar == 88
        assert report.b1_count == 66
        assert report.b2_count == 22
        assert report.partition_ok
        assert report.generator_square_ok
        assert report.grading_ok
        assert report.product_failures == []

    def test_unit_maps_to_unit(self, worked_algebra):
        inp, algebra = worked_algebra
        unit_image = algebra.element({algebra.identity: Polynomial.one(4)})
        assert unit_image == algebra.unit()

    def test_spanning_set_associativity(self, worked_algebra):
        inp, algebra = worked_algebra
        g = inp.group
        identity = algebra.identity
        spanning = [
            algebra.unit(),
            algebra.element({identity: P("x1", 4)}),
            algebra.element({identity: P("x3", 4)}),
            algebra.element({identity: P("x2^2", 4)}),
            algebra.element({identity: P("x2*x4", 4)}),
            algebra.generator(g),
            algebra.element({g: P("x1", 4)}),
            algebra.element({g: P("x3", 4)}),
            algebra.element({g: P("x3^2", 4)}),
        ]
        assert len(spanning) <= 12
        for u in spanning:
            for v in spanning:
                uv = algebra.product(u, v)
                for w in spanning:
                    lhs = algebra.product(uv, w)
                    rhs = algebra.product(u, algebra.product(v, w))
                    assert algebra.elements_equal(lhs, rhs)


class TestSectorElement:
    def test_zero_parts_are_dropped(self):
        u = SectorElement.of(2, {GroupElement((1, 1)): Polynomial.zero(2)})
        assert u.is_zero()

    def test_addition_merges_sectors(self):
        g = GroupElement((1, -1))
        a = SectorElement.of(2, {g: P("x1", 2)})
        b = SectorElement.of(2, {g: P("-x1", 2)})
        assert (a + b).is_zero()
