"""Lattice covering conditions, failing sets, and non-degeneracy prediction.

Everything here works on the support of a quasihomogeneous polynomial: the
set R of exponent vectors living on the weighted degree-d slice.  A subset J
of the variable indices is *failing* when neither of the two ways of covering
it holds: no exponent of R is supported inside J, and there are fewer than
|J| indices k outside J whose shifted set R_k meets the J-face.  A support
with no failing set is the support of a generically non-degenerate
polynomial; a failing set certifies that every polynomial with that support
has a non-isolated singularity.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import InputError, NotQuasihomogeneousError
from .graphs import WeightSystem
from .poly import Exponent, Polynomial

IndexSet = frozenset[int]


@dataclass(frozen=True)
class SupportSet:
    """Exponent set on the degree-d slice of a weight system."""

    weights: WeightSystem
    elements: frozenset[Exponent]

    @property
    def arity(self) -> int:
        return self.weights.arity

    @property
    def degree(self) -> int:
        return self.weights.d

    def __post_init__(self):
        for exponent in self.elements:
            if len(exponent) != self.arity:
                raise InputError(f"exponent {exponent} has wrong length")
            if self.weights.degree_of(exponent) != self.degree:
                raise NotQuasihomogeneousError(
                    f"exponent {exponent} has weighted degree "
                    f"{self.weights.degree_of(exponent)}, expected {self.degree}"
                )

    def union(self, extra) -> "SupportSet":
        return SupportSet(self.weights, self.elements | frozenset(extra))


def support(f: Polynomial, weights: WeightSystem) -> SupportSet:
    """The exponent set of f, checked against the weight system."""
    if f.arity != weights.arity:
        raise InputError("polynomial arity differs from weight system arity")
    return SupportSet(weights, frozenset(f.terms))


def r_k(R: SupportSet, k: int) -> frozenset[Exponent]:
    """Shifted set R_k: exponents alpha with alpha + e_k in R."""
    if not 1 <= k <= R.arity:
        raise InputError(f"index {k} out of range 1..{R.arity}")
    i = k - 1
    return frozenset(
        e[:i] + (e[i] - 1,) + e[i + 1:] for e in R.elements if e[i] > 0
    )


def _supported_inside(exponent: Exponent, J: IndexSet) -> bool:
    return all(e == 0 for i, e in enumerate(exponent, start=1) if i not in J)


def _shift_candidates(R: SupportSet, J: IndexSet) -> set[int]:
    """Indices k whose shifted set R_k meets the J-face of the lattice.

    An exponent of R_k supported inside J comes from some alpha in R with
    alpha - e_k supported inside J, so candidates can be read off R directly.
    """
    candidates: set[int] = set()
    for exponent in R.elements:
        outside = [i for i, e in enumerate(exponent, start=1)
                   if e > 0 and i not in J]
        if not outside:
            # alpha - e_k stays inside J for any k in supp(alpha) cap J
            candidates.update(i for i, e in enumerate(exponent, start=1) if e > 0)
        elif len(outside) == 1 and exponent[outside[0] - 1] == 1:
            candidates.add(outside[0])
    return candidates


def check_condition(R: SupportSet, J: IndexSet, variant: str = "disjoint") -> bool:
    """Covering test for one index set J.

    variant "disjoint": a J-supported exponent of R counts directly, or at
    least |J| indices k outside J must have R_k meeting the J-face (the
    witness set K is disjoint from J).  variant "any": only the shifted
    clause, with K allowed anywhere in 1..N.  Because the per-k predicate is
    independent of the other members of K, a witness K of size |J| exists
    exactly when the candidate count reaches |J|, so no search is needed.
    """
    J = frozenset(J)
    if not J:
        raise InputError("J must be nonempty")
    if not J <= set(range(1, R.arity + 1)):
        raise InputError(f"J {sorted(J)} outside 1..{R.arity}")
    candidates = _shift_candidates(R, J)
    if variant == "disjoint":
        if any(_supported_inside(e, J) for e in R.elements):
            return True
        return len(candidates - J) >= len(J)
    if variant == "any":
        return len(candidates) >= len(J)
    raise InputError(f"unknown variant {variant!r}")


def is_failing(R: SupportSet, J: IndexSet) -> bool:
    return not check_condition(R, J, "disjoint")


def failing_sets(R: SupportSet, full_range: bool = False) -> list[IndexSet]:
    """All failing subsets, by default only up to size floor((N+1)/2).

    The bounded and unbounded covering conditions are equivalent, so an empty
    bounded enumeration already certifies that no failing set of any size
    exists.  ``full_range=True`` enumerates all sizes (used by self-checks
    and by admissibility verification).
    """
    n = R.arity
    bound = n if full_range else (n + 1) // 2
    found: list[IndexSet] = []
    for size in range(1, bound + 1):
        for J in combinations(range(1, n + 1), size):
            J = frozenset(J)
            if is_failing(R, J):
                found.append(J)
    found.sort(key=lambda J: (len(J), sorted(J)))
    return found


def predicts_nondegenerate(R: SupportSet) -> bool:
    """True when a generic polynomial with this support is non-degenerate."""
    return not failing_sets(R)


def failing_report(R: SupportSet) -> dict:
    """JSON-ready report of the failing-set enumeration."""
    sets = failing_sets(R)
    return {
        "failing_sets": [sorted(J) for J in sets],
        "checked_bound": (R.arity + 1) // 2,
        "predicts_nondegenerate": not sets,
    }
