"""Diagonal Z/2 symmetries and the chart resolution of the quotient.

Starting from a loop-with-branches polynomial with an even-power leaf t, the
pipeline appends a square of a fresh variable, completes the polynomial, and
flips the pair {t, N+1} with a sign involution g.  The quotient by g is
covered by two affine charts; on the first chart the polynomial becomes a
quasihomogeneous polynomial for the glued graph (new arrow N+1 -> t) whose
weights follow a closed formula, while on the second chart it has no critical
points at all.  Iterating the construction handles (Z/2)^k generated by
disjoint flips.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .complete import CompletionResult, build_completion, loop_admissible
from .errors import InputError, LoopsingError, MathError
from .graphs import (
    ChoiceGraph,
    PowerAssignment,
    WeightSystem,
    build_f_kappa,
    glue,
    solve_weights,
)
from .groebner import (
    INFINITE,
    is_unit_ideal,
    jacobian_basis,
    milnor_number,
    quotient_basis,
)
from .nondegen import support
from .poly import Polynomial, halve_variable


@dataclass(frozen=True)
class GroupElement:
    """Diagonal symmetry with entries +-1 (entry -1 on flipped variables)."""

    signs: tuple[int, ...]

    def __post_init__(self):
        if any(s not in (1, -1) for s in self.signs):
            raise InputError("group element signs must be +1 or -1")

    @staticmethod
    def identity(arity: int) -> "GroupElement":
        return GroupElement((1,) * arity)

    @staticmethod
    def flipping(arity: int, flipped) -> "GroupElement":
        signs = [1] * arity
        for i in flipped:
            if not 1 <= i <= arity:
                raise InputError(f"flip index {i} out of range 1..{arity}")
            signs[i - 1] = -1
        return GroupElement(tuple(signs))

    @property
    def arity(self) -> int:
        return len(self.signs)

    @property
    def fixed_indices(self) -> tuple[int, ...]:
        return tuple(i for i, s in enumerate(self.signs, start=1) if s == 1)

    @property
    def moved_indices(self) -> tuple[int, ...]:
        return tuple(i for i, s in enumerate(self.signs, start=1) if s == -1)

    @property
    def d_g(self) -> int:
        return len(self.moved_indices)

    def is_identity(self) -> bool:
        return all(s == 1 for s in self.signs)

    def compose(self, other: "GroupElement") -> "GroupElement":
        if self.arity != other.arity:
            raise InputError("group elements of different arity")
        return GroupElement(tuple(a * b for a, b in zip(self.signs, other.signs)))

    def apply(self, p: Polynomial) -> Polynomial:
        """p(g . x)."""
        return p.apply_signs(self.signs)

    def is_symmetry_of(self, p: Polynomial) -> bool:
        return self.apply(p) == p


def diagonal_symmetry(signs, f: Polynomial) -> GroupElement:
    """Construct a sign symmetry and check that it leaves f invariant."""
    g = GroupElement(tuple(signs))
    if g.arity != f.arity:
        raise InputError("sign vector length differs from arity")
    if not g.is_symmetry_of(f):
        raise InputError(f"signs {signs} do not leave the polynomial invariant")
    return g


def sign_symmetries(f: Polynomial) -> list[GroupElement]:
    """All 2^N diagonal sign vectors that fix f (the +-1 part of its maximal
    diagonal symmetry group)."""
    n = f.arity
    out = []
    for mask in range(1 << n):
        signs = tuple(-1 if mask >> i & 1 else 1 for i in range(n))
        g = GroupElement(signs)
        if g.is_symmetry_of(f):
            out.append(g)
    return out


@dataclass(frozen=True)
class OrbifoldInput:
    """A certified completion with an isolated square and its Z/2 flip."""

    completion: CompletionResult
    flip_leaf: int
    isolated: int
    group: GroupElement

    @property
    def f(self) -> Polynomial:
        return self.completion.f

    @property
    def graph(self) -> ChoiceGraph:
        return self.completion.graph

    @property
    def powers(self) -> PowerAssignment:
        return self.completion.powers

    @property
    def weights(self) -> WeightSystem:
        return self.completion.weights


def _check_flip_leaf(graph: ChoiceGraph, powers: PowerAssignment, t: int) -> None:
    if t not in graph.leaves():
        raise InputError(f"flip target {t} is not a leaf")
    if powers[t] % 2 != 0:
        raise InputError(f"leaf {t} has odd power {powers[t]}")
    if powers[t] < 4:
        raise InputError(
            f"leaf {t} has power {powers[t]}; halving would leave a linear edge"
        )


def build_orbifold_input(
    graph: ChoiceGraph,
    powers: PowerAssignment,
    t: int,
    seed: int = 0,
    future_flips: tuple[int, ...] = (),
) -> OrbifoldInput:
    """Append the isolated vertex, complete, and attach the flip involution.

    The even-exponent constraint on the completion covers t and any leaves
    that later resolution stages will flip, so the whole chain of involutions
    leaves the completed polynomial invariant.  The admissible collection is
    unaffected by the isolated vertex; this is asserted.
    """
    _check_flip_leaf(graph, powers, t)
    n = graph.n
    extended = ChoiceGraph(graph.kappa + (n + 1,))
    extended_powers = PowerAssignment(powers.powers + (2,))

    base_collection = loop_admissible(
        graph, support(build_f_kappa(graph, powers), solve_weights(graph, powers))
    )
    even = frozenset({t, *future_flips})
    completion = build_completion(
        extended, extended_powers, seed=seed, even_indices=even
    )
    if set(completion.collection.sets) != set(base_collection.sets):
        raise LoopsingError(
            "isolated vertex changed the admissible collection"
        )

    group = diagonal_symmetry(
        GroupElement.flipping(n + 1, (t, n + 1)).signs, completion.f
    )
    return OrbifoldInput(completion, t, n + 1, group)


def _chart_images(
    f: Polynomial, t: int, iso: int
) -> tuple[Polynomial, Polynomial]:
    """Both chart restrictions of f on the resolved quotient.

    Chart 1 substitutes x_t^2 := y and x_iso^2 := y z^2; chart 2 substitutes
    x_t^2 := y^2 z and x_iso^2 := z, with y, z written back into the t and
    iso slots.  Every monomial of f must be even in both x_t and x_iso.
    """
    half_t = halve_variable(f, t)            # x_t^2 -> x_t
    half_both = halve_variable(half_t, iso)  # x_iso^2 -> x_iso
    n = f.arity
    x_t = Polynomial.variable(n, t)
    x_iso = Polynomial.variable(n, iso)
    chart1 = half_both.substitute({iso: x_t * x_iso * x_iso})
    chart2 = half_both.substitute({t: x_t * x_t * x_iso})
    return chart1, chart2


def resolve_charts(inp: OrbifoldInput) -> tuple[Polynomial, Polynomial]:
    return _chart_images(inp.f, inp.flip_leaf, inp.isolated)


def _formula_weights(weights: WeightSystem, t: int, iso: int) -> tuple[Fraction, ...]:
    """Closed-form reduced weights of the resolved polynomial."""
    q = weights.q
    out = list(q)
    out[t - 1] = 2 * q[t - 1]
    out[iso - 1] = Fraction(1, 2) - q[t - 1]
    return tuple(out)


@dataclass(frozen=True)
class BarResolution:
    """One resolution stage: the invariant polynomial and its resolved form."""

    f: Polynomial
    group: GroupElement
    flip_leaf: int
    isolated: int
    f_bar: Polynomial
    f_add_bar: Polynomial
    graph_bar: ChoiceGraph
    powers_bar: PowerAssignment
    weights: WeightSystem
    weights_bar: WeightSystem
    chart2_smooth: bool | None
    bookkeeping: dict | None


def _resolve_stage(
    graph: ChoiceGraph,
    powers: PowerAssignment,
    f_add: Polynomial,
    t: int,
    weights: WeightSystem | None = None,
    group: GroupElement | None = None,
    f: Polynomial | None = None,
    check_smooth: bool = True,
    check_dims: bool = False,
) -> BarResolution:
    """Resolve one flip of an already-assembled f = f_kappa + f_add.

    ``graph`` and ``powers`` already contain the isolated vertex (the last
    slot).  The resolved polynomial is produced by the chart substitution and
    then verified against the independent description: glued graph, halved
    powers, and the closed weight formula.
    """
    n = graph.n
    iso = n
    if graph.image(iso) != iso or graph.preimage(iso):
        raise InputError(f"slot {iso} is not an isolated vertex")
    if weights is None:
        weights = solve_weights(graph, powers)
    if f is None:
        f = build_f_kappa(graph, powers) + f_add
    if group is None:
        group = diagonal_symmetry(
            GroupElement.flipping(n, (t, iso)).signs, f
        )

    chart1, chart2 = _chart_images(f, t, iso)
    f_bar = chart1

    graph_bar = glue(graph, [iso], [t])
    halved = list(powers.powers)
    halved[t - 1] //= 2
    powers_bar = PowerAssignment(tuple(halved))
    weights_bar = solve_weights(graph_bar, powers_bar)
    if weights_bar.q != _formula_weights(weights, t, iso):
        raise LoopsingError(
            f"resolved weights {weights_bar.q} disagree with the closed formula"
        )
    f_add_bar = halve_variable(f_add, t)
    if f_bar != build_f_kappa(graph_bar, powers_bar) + f_add_bar:
        raise LoopsingError("chart image differs from glued-graph description")
    if not f_bar.is_quasihomogeneous(weights_bar.v, weights_bar.d):
        raise LoopsingError("resolved polynomial is not quasihomogeneous")

    chart2_smooth = None
    if check_smooth:
        chart2_smooth = is_unit_ideal(chart2.gradient())
        if not chart2_smooth:
            raise LoopsingError("second chart unexpectedly has critical points")

    bookkeeping = None
    if check_dims:
        bookkeeping = dimension_bookkeeping(f, group, f_bar)
    return BarResolution(
        f=f, group=group, flip_leaf=t, isolated=iso, f_bar=f_bar,
        f_add_bar=f_add_bar, graph_bar=graph_bar, powers_bar=powers_bar,
        weights=weights, weights_bar=weights_bar,
        chart2_smooth=chart2_smooth, bookkeeping=bookkeeping,
    )


def invariant_dimension(f: Polynomial, group_elements) -> int:
    """Dimension of the subspace of Jac(f) fixed by all given sign symmetries.

    The staircase basis consists of eigenvectors, so it suffices to count
    standard monomials of even total degree in each element's flipped slots.
    """
    qb = quotient_basis(jacobian_basis(f))
    if not qb.finite:
        raise MathError("Jacobian quotient is infinite dimensional")
    monomials = qb.standard_monomials()
    count = 0
    for exponent in monomials:
        ok = all(
            sum(exponent[i - 1] for i in g.moved_indices) % 2 == 0
            for g in group_elements
        )
        count += ok
    return count


def restricted_milnor(f: Polynomial, group: GroupElement):
    """Milnor number of f restricted to the fixed locus of the symmetry.

    The restriction is compressed onto its own coordinate ring, so partials
    are taken only in the fixed directions; a point fixed locus yields the
    one-dimensional convention value 1.
    """
    fixed = group.fixed_indices
    if not fixed:
        return 1
    restricted = f.set_zero(group.moved_indices)
    mapping = {old: new for new, old in enumerate(fixed, start=1)}
    compressed = restricted.rename(mapping, len(fixed))
    mu = milnor_number(compressed)
    return mu


def dimension_bookkeeping(f: Polynomial, group: GroupElement, f_bar: Polynomial) -> dict:
    """Check dim Jac(f_bar) = dim Jac(f)^G + dim Jac(f^g) and report pieces."""
    mu_bar = milnor_number(f_bar)
    invariant = invariant_dimension(f, [group])
    mu_fixed = restricted_milnor(f, group)
    if mu_bar is INFINITE or mu_fixed is INFINITE:
        raise MathError("resolution produced an infinite Milnor number")
    if mu_bar != invariant + mu_fixed:
        raise LoopsingError(
            f"dimension bookkeeping failed: {mu_bar} != {invariant} + {mu_fixed}"
        )
    return {
        "milnor_bar": mu_bar,
        "invariant_dimension": invariant,
        "fixed_locus_milnor": mu_fixed,
    }


def build_bar_f(inp: OrbifoldInput, check_dims: bool = True) -> BarResolution:
    """Resolve a prepared orbifold input into its equivalent polynomial."""
    return _resolve_stage(
        inp.graph, inp.powers, inp.completion.f_add, inp.flip_leaf,
        weights=inp.weights, group=inp.group, f=inp.f,
        check_smooth=True, check_dims=check_dims,
    )


def iterate_resolution(
    graph: ChoiceGraph,
    powers: PowerAssignment,
    flips: list[int],
    seed: int = 0,
    check_dims: bool = False,
) -> list[BarResolution]:
    """Resolve a chain of flips, threading each stage into the next.

    Every flip target must be a leaf with an even power at its stage; the
    completion at the first stage already reserves even exponents for all
    later flips, and halving one leaf never touches the parity of another.
    Returns one resolution record per flip (empty for no flips).
    """
    if not flips:
        return []
    # every valid flip is a leaf of the base graph (fresh isolated vertices
    # become leaves of later stages but carry power 2, too small to halve),
    # so the whole chain can be validated before any completion runs
    for k, t in enumerate(flips, start=1):
        if flips.index(t) != k - 1:
            raise InputError(f"stage {k}: flip {t} repeated")
        try:
            _check_flip_leaf(graph, powers, t)
        except InputError as exc:
            raise InputError(f"stage {k}: {exc}") from exc

    stages: list[BarResolution] = []
    first = build_orbifold_input(
        graph, powers, flips[0], seed=seed, future_flips=tuple(flips[1:])
    )
    stage = build_bar_f(first, check_dims=check_dims)
    stages.append(stage)

    current_graph = stage.graph_bar
    current_powers = stage.powers_bar
    current_f_add = stage.f_add_bar
    for t in flips[1:]:
        try:
            _check_flip_leaf(current_graph, current_powers, t)
        except InputError as exc:
            raise InputError(f"stage {len(stages) + 1}: {exc}") from exc
        n = current_graph.n
        ext_graph = ChoiceGraph(current_graph.kappa + (n + 1,))
        ext_powers = PowerAssignment(current_powers.powers + (2,))
        stage = _resolve_stage(
            ext_graph, ext_powers, current_f_add.extend(n + 1), t,
            check_smooth=True, check_dims=check_dims,
        )
        stages.append(stage)
        current_graph = stage.graph_bar
        current_powers = stage.powers_bar
        current_f_add = stage.f_add_bar
    return stages
