"""Choice maps, their functional graphs, and weight systems.

A choice map kappa sends every index j to the index of the extra variable in
the summand x_j^{a_j} * x_{kappa(j)}.  A fixed point kappa(j) = j encodes a
pure power x_j^{a_j} (no edge is drawn), which covers both Fermat summands
and isolated square vertices.  Each connected component of the drawn graph is
a rooted tree or a single oriented cycle with trees hanging off it; the main
object of interest is one loop-with-branches component plus isolated points.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .errors import GraphStructureError, InputError, NotQuasihomogeneousError
from .poly import Polynomial


@dataclass(frozen=True)
class WeightSystem:
    """Primitive positive integer weights (v_1..v_N, d) with gcd 1."""

    v: tuple[int, ...]
    d: int

    @property
    def arity(self) -> int:
        return len(self.v)

    @property
    def q(self) -> tuple[Fraction, ...]:
        """Reduced weights q_i = v_i / d."""
        return tuple(Fraction(vi, self.d) for vi in self.v)

    def degree_of(self, exponent: tuple[int, ...]) -> int:
        return sum(a * vi for a, vi in zip(exponent, self.v))

    def __str__(self) -> str:
        return "(" + ", ".join(map(str, (*self.v, self.d))) + ")"


@dataclass(frozen=True)
class PowerAssignment:
    """Vector of powers a_j >= 2, one per vertex."""

    powers: tuple[int, ...]

    def __post_init__(self):
        if any(a < 2 for a in self.powers):
            raise InputError(f"all powers must be >= 2, got {self.powers}")

    def __len__(self) -> int:
        return len(self.powers)

    def __getitem__(self, j: int) -> int:
        """Power of vertex j (1-based)."""
        return self.powers[j - 1]


class ChoiceGraph:
    """Functional graph of a choice map kappa on vertices 1..N."""

    __slots__ = ("n", "kappa", "_cycles", "_components")

    def __init__(self, kappa):
        kappa = tuple(kappa)
        n = len(kappa)
        if n == 0:
            raise InputError("empty choice map")
        for j, image in enumerate(kappa, start=1):
            if not 1 <= image <= n:
                raise GraphStructureError(
                    f"kappa({j}) = {image} outside 1..{n}"
                )
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "kappa", kappa)
        object.__setattr__(self, "_cycles", None)
        object.__setattr__(self, "_components", None)
        self._validate()

    def __setattr__(self, name, value):
        raise AttributeError("ChoiceGraph is immutable")

    def __eq__(self, other) -> bool:
        return isinstance(other, ChoiceGraph) and self.kappa == other.kappa

    def __hash__(self) -> int:
        return hash(self.kappa)

    def __repr__(self) -> str:
        return f"ChoiceGraph({list(self.kappa)})"

    def image(self, j: int) -> int:
        return self.kappa[j - 1]

    def preimage(self, j: int) -> frozenset[int]:
        """Vertices with a drawn arrow into j (self-arrows are never drawn)."""
        return frozenset(
            i for i in range(1, self.n + 1) if self.kappa[i - 1] == j and i != j
        )

    # -- structure ---------------------------------------------------------

    def cycles(self) -> tuple[tuple[int, ...], ...]:
        """All cycles of the map, each rotated to start at its smallest vertex.

        Fixed points count as length-1 cycles (pure-power roots and isolated
        vertices alike).
        """
        if self._cycles is None:
            on_cycle = []
            state = [0] * (self.n + 1)  # 0 unseen, 1 in progress, 2 done
            for start in range(1, self.n + 1):
                if state[start]:
                    continue
                path = []
                j = start
                while state[j] == 0:
                    state[j] = 1
                    path.append(j)
                    j = self.image(j)
                if state[j] == 1:
                    cycle = path[path.index(j):]
                    shift = cycle.index(min(cycle))
                    on_cycle.append(tuple(cycle[shift:] + cycle[:shift]))
                for v in path:
                    state[v] = 2
            object.__setattr__(self, "_cycles", tuple(sorted(on_cycle)))
        return self._cycles

    def cycle_vertices(self) -> frozenset[int]:
        return frozenset(v for cycle in self.cycles() for v in cycle)

    def components(self) -> tuple[frozenset[int], ...]:
        """Weakly connected components (ignoring edge orientation)."""
        if self._components is None:
            parent = list(range(self.n + 1))

            def find(a):
                while parent[a] != a:
                    parent[a] = parent[parent[a]]
                    a = parent[a]
                return a

            for j in range(1, self.n + 1):
                ra, rb = find(j), find(self.image(j))
                if ra != rb:
                    parent[ra] = rb
            groups: dict[int, set[int]] = {}
            for j in range(1, self.n + 1):
                groups.setdefault(find(j), set()).add(j)
            comps = tuple(sorted((frozenset(g) for g in groups.values()), key=min))
            object.__setattr__(self, "_components", comps)
        return self._components

    def isolated_vertices(self) -> frozenset[int]:
        """Fixed points with no incoming arrows."""
        return frozenset(
            j for j in range(1, self.n + 1)
            if self.image(j) == j and not self.preimage(j)
        )

    def leaves(self) -> frozenset[int]:
        """Non-fixed vertices with no incoming arrows (branch ends)."""
        return frozenset(
            j for j in range(1, self.n + 1)
            if self.image(j) != j and not self.preimage(j)
        )

    def _validate(self) -> None:
        # Functional graphs always decompose into rho shapes; assert anyway.
        for component in self.components():
            cycles_here = [c for c in self.cycles() if set(c) <= component]
            if len(cycles_here) != 1:
                raise GraphStructureError(
                    f"component {sorted(component)} has {len(cycles_here)} cycles"
                )

    def main_component(self) -> frozenset[int]:
        """The unique non-isolated component; isolated vertices may accompany it.

        Raises if the graph has two or more components with edges, which is
        outside the supported shape.
        """
        with_edges = [c for c in self.components() if len(c) > 1
                      or self.image(min(c)) != min(c) or self.preimage(min(c))]
        non_trivial = [c for c in self.components()
                       if not c <= self.isolated_vertices()]
        if len(non_trivial) > 1:
            raise GraphStructureError(
                "more than one loop-with-branches component"
            )
        del with_edges
        if not non_trivial:
            raise GraphStructureError("graph has only isolated vertices")
        return non_trivial[0]

    def main_loop(self) -> tuple[int, ...]:
        """The cycle of the main component."""
        component = self.main_component()
        for cycle in self.cycles():
            if set(cycle) <= component:
                return cycle
        raise GraphStructureError("main component without cycle")  # unreachable

    # -- export ------------------------------------------------------------

    def to_dot(self) -> str:
        loop = self.cycle_vertices()
        lines = ["digraph choice {", "  splines=true;"]
        for j in range(1, self.n + 1):
            lines.append(f"  {j};")
        for j in range(1, self.n + 1):
            i = self.image(j)
            if i == j:
                continue
            style = ' [style=bold]' if j in loop and i in loop else ""
            lines.append(f"  {j} -> {i}{style};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def build_f_kappa(graph: ChoiceGraph, powers: PowerAssignment) -> Polynomial:
    """Sum of the choice summands: x_j^{a_j} x_{kappa(j)}, pure x_j^{a_j} at
    fixed points, all coefficients 1 (any nonzero coefficients can be scaled
    away because each vertex has exactly one outgoing arrow)."""
    if len(powers) != graph.n:
        raise InputError("powers length differs from vertex count")
    n = graph.n
    f = Polynomial.zero(n)
    for j in range(1, n + 1):
        exponent = [0] * n
        exponent[j - 1] = powers[j]
        i = graph.image(j)
        if i != j:
            exponent[i - 1] += 1
        f = f + Polynomial.monomial(n, tuple(exponent))
    return f


def _solve_unique(matrix: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    """Solve an (m x n) exact linear system with a unique solution.

    Raises NotQuasihomogeneousError when inconsistent or underdetermined.
    """
    m = len(matrix)
    n = len(matrix[0]) if m else 0
    rows = [row[:] + [value] for row, value in zip(matrix, rhs)]
    pivots = []
    r = 0
    for c in range(n):
        pivot = next((k for k in range(r, m) if rows[k][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        factor = rows[r][c]
        rows[r] = [value / factor for value in rows[r]]
        for k in range(m):
            if k != r and rows[k][c] != 0:
                scale = rows[k][c]
                rows[k] = [a - scale * b for a, b in zip(rows[k], rows[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    for k in range(r, m):
        if rows[k][n] != 0:
            raise NotQuasihomogeneousError("inconsistent weight equations")
    if len(pivots) < n:
        raise NotQuasihomogeneousError("weight system is not determined uniquely")
    solution = [Fraction(0)] * n
    for row, c in zip(rows, pivots):
        solution[c] = row[n]
    return solution


def _normalize_weights(q: list[Fraction]) -> WeightSystem:
    """Scale reduced weights (with degree 1) to the primitive integer system."""
    if any(qi <= 0 for qi in q):
        raise NotQuasihomogeneousError(f"non-positive reduced weight in {q}")
    if any(qi > Fraction(1, 2) for qi in q):
        raise NotQuasihomogeneousError(f"reduced weight above 1/2 in {q}")
    denom = 1
    for qi in q:
        denom = lcm(denom, qi.denominator)
    v = [int(qi * denom) for qi in q]
    common = gcd(denom, *v)
    return WeightSystem(tuple(vi // common for vi in v), denom // common)


def solve_weights(graph: ChoiceGraph, powers: PowerAssignment) -> WeightSystem:
    """Solve a_j q_j + q_{kappa(j)} = 1 (q_{kappa(j)} dropped at fixed points).

    Returns the primitive positive integer system (v_1..v_N, d); rejects
    inputs without a unique positive solution with all q_i <= 1/2.
    """
    if len(powers) != graph.n:
        raise InputError("powers length differs from vertex count")
    n = graph.n
    matrix = []
    for j in range(1, n + 1):
        row = [Fraction(0)] * n
        row[j - 1] += powers[j]
        i = graph.image(j)
        if i != j:
            row[i - 1] += 1
        matrix.append(row)
    q = _solve_unique(matrix, [Fraction(1)] * n)
    return _normalize_weights(q)


def weights_from_support(f: Polynomial) -> WeightSystem:
    """Infer the weight system of an arbitrary quasihomogeneous polynomial."""
    if f.is_zero():
        raise NotQuasihomogeneousError("zero polynomial has no weight system")
    matrix = [[Fraction(e) for e in exponent] for exponent in f.terms]
    q = _solve_unique(matrix, [Fraction(1)] * len(matrix))
    return _normalize_weights(q)


def glue(
    graph: ChoiceGraph,
    new_vertices: list[int],
    targets: list[int],
) -> ChoiceGraph:
    """Redirect isolated vertices onto leaves: kappa(new_i) := target_i."""
    if len(new_vertices) != len(targets):
        raise InputError("new vertex and target lists differ in length")
    isolated = graph.isolated_vertices()
    leaf_set = graph.leaves()
    kappa = list(graph.kappa)
    for vertex, target in zip(new_vertices, targets):
        if vertex not in isolated:
            raise GraphStructureError(f"vertex {vertex} is not isolated")
        if target not in leaf_set:
            raise GraphStructureError(f"target {target} is not a leaf")
        kappa[vertex - 1] = target
    return ChoiceGraph(kappa)


@dataclass(frozen=True)
class ThreeVariableType:
    """Classification of a 3-vertex choice graph up to vertex permutation.

    ``index`` is the position in the standard list of seven shapes; the two
    shapes with an extra completion monomial also report whether their
    divisibility side condition holds.
    """

    index: int
    condition: bool | None = None


def classify_three_variable(
    graph: ChoiceGraph, powers: PowerAssignment
) -> ThreeVariableType:
    """Classify the seven possible 3-variable choice graphs.

    Shapes, with vertex labels up to permutation:
      1 three pure powers             5 chain j -> k -> root
      2 one edge                      6 2-cycle with one branch
      3 two leaves into a pure root   7 3-cycle
      4 2-cycle plus a pure vertex
    Shape 3 requires (a_root - 1) | lcm(a_leaf1, a_leaf2); shape 6 requires
    (a_cycle_target - 1) * gcd(a_branch, a_other) | (a_branch - 1).
    """
    if graph.n != 3:
        raise InputError("three-variable classifier needs exactly 3 vertices")
    edges = [(j, graph.image(j)) for j in range(1, 4) if graph.image(j) != j]
    cycle_sizes = sorted(len(c) for c in graph.cycles())
    if not edges:
        return ThreeVariableType(1)
    if len(edges) == 1:
        return ThreeVariableType(2)
    if len(edges) == 3:
        if cycle_sizes == [3]:
            return ThreeVariableType(7)
        # 2-cycle with one branch
        cycle = next(c for c in graph.cycles() if len(c) == 2)
        branch = next(j for j in range(1, 4) if j not in cycle)
        target = graph.image(branch)
        other = next(v for v in cycle if v != target)
        ok = (powers[branch] - 1) % (
            (powers[target] - 1) * gcd(powers[branch], powers[other])
        ) == 0
        return ThreeVariableType(6, ok)
    # two edges
    if 2 in cycle_sizes:
        return ThreeVariableType(4)
    targets = {i for _, i in edges}
    if len(targets) == 1:
        root = targets.pop()
        leaf_a, leaf_b = (j for j, _ in edges)
        ok = lcm(powers[leaf_a], powers[leaf_b]) % (powers[root] - 1) == 0
        return ThreeVariableType(3, ok)
    return ThreeVariableType(5)
