"""Buchberger engine over the rationals, quotient bases, Milnor numbers.

Monomial order is fixed to graded reverse lexicographic with x1 > ... > xN.
Internally the basis is kept with primitive integer coefficients and a
positive leading coefficient; S-polynomial reduction is fraction-free with
periodic content stripping, which keeps coefficient growth in check.  The
public reduced basis is monic over Q and unique for (ideal, order).

A quotient ring is finite dimensional exactly when every variable has a pure
power among the leading terms of the reduced basis, so infiniteness is
decided structurally with no degree cutoff.  Dimensions are counted with a
memoized staircase recursion, so Milnor numbers far beyond enumeration range
stay cheap; explicit standard-monomial lists are produced only on demand.
"""

from __future__ import annotations

from fractions import Fraction
from heapq import heapify, heappop, heappush
from math import gcd

from .errors import ArityMismatchError, InputError, MathError
from .graphs import WeightSystem
from .poly import Exponent, Polynomial, grevlex_key, _raw


def _neg_key(exponent: Exponent) -> tuple:
    """Order-reversing image of grevlex_key, for min-heaps of monomials."""
    return (-sum(exponent), tuple(reversed(exponent)))


class _Infinite:
    """Sentinel for infinite quotient dimension (degenerate singularity)."""

    __slots__ = ()

    def __repr__(self) -> str:
        return "INFINITE"


INFINITE = _Infinite()


# -- integer term-dict helpers -------------------------------------------------

def _content_strip(terms: dict[Exponent, int]) -> dict[Exponent, int]:
    if not terms:
        return terms
    g = 0
    for c in terms.values():
        g = gcd(g, c)
        if g == 1:
            break
    lm = max(terms, key=grevlex_key)
    if terms[lm] < 0:
        g = -g
    if g != 1:
        return {e: c // g for e, c in terms.items()}
    return terms


def _to_int_poly(p: Polynomial) -> dict[Exponent, int]:
    denom = 1
    for c in p.terms.values():
        denom = denom * c.denominator // gcd(denom, c.denominator)
    return _content_strip({e: int(c * denom) for e, c in p.terms.items()})


def _divides(a: Exponent, b: Exponent) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _lcm_exp(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x if x > y else y for x, y in zip(a, b))


def _mul_exp(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x + y for x, y in zip(a, b))


def _sub_exp(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x - y for x, y in zip(a, b))


def _shift_scale(terms: dict[Exponent, int], shift: Exponent, scale: int):
    return {_mul_exp(e, shift): c * scale for e, c in terms.items()}


def _strip_joint(work: dict[Exponent, int], remainder: dict[Exponent, int]) -> None:
    g = 0
    for v in remainder.values():
        g = gcd(g, v)
        if g == 1:
            return
    for v in work.values():
        g = gcd(g, v)
        if g == 1:
            return
    if g > 1:
        for key in work:
            work[key] //= g
        for key in remainder:
            remainder[key] //= g


def _reduce_int(
    work: dict[Exponent, int],
    reducers: list[tuple[dict[Exponent, int], Exponent, int]],
    top_only: bool = False,
) -> dict[Exponent, int]:
    """Fraction-free normal form of ``work`` against ``reducers``.

    Reducers are (terms, lm, lc) with primitive terms and lc > 0.  With
    ``top_only`` the loop stops at the first irreducible leading term (the
    tail stays unreduced), which is all the main Buchberger loop needs.  The
    result is the primitive integer multiple of the corresponding remainder.
    Leading terms are tracked with a lazy max-heap keyed by exponent, so
    rescaling the coefficients never touches the heap.
    """
    work = dict(work)
    heap = [(_neg_key(e), e) for e in work]
    heapify(heap)
    remainder: dict[Exponent, int] = {}
    steps = 0
    while heap:
        m = heap[0][1]
        c = work.get(m)
        if not c:
            heappop(heap)
            continue
        hit = None
        for entry in reducers:
            if _divides(entry[1], m):
                hit = entry
                break
        if hit is None:
            if top_only:
                break
            heappop(heap)
            remainder[m] = c
            del work[m]
            continue
        terms, lm, lc = hit
        g0 = gcd(c, lc)
        scale_self = lc // g0
        scale_red = c // g0
        if scale_self != 1:
            for k in work:
                work[k] *= scale_self
            for k in remainder:
                remainder[k] *= scale_self
        shift = _sub_exp(m, lm)
        for e, ce in terms.items():
            k = _mul_exp(e, shift)
            acc = work.get(k, 0) - scale_red * ce
            if acc:
                if k not in work:
                    heappush(heap, (_neg_key(k), k))
                work[k] = acc
            else:
                work.pop(k, None)
        steps += 1
        if steps % 32 == 0:
            _strip_joint(work, remainder)
    if top_only:
        return _content_strip(work)
    return _content_strip(remainder)


def _s_poly(
    fa: tuple[dict[Exponent, int], Exponent, int],
    fb: tuple[dict[Exponent, int], Exponent, int],
) -> dict[Exponent, int]:
    ta, la, ca = fa
    tb, lb, cb = fb
    L = _lcm_exp(la, lb)
    g0 = gcd(ca, cb)
    left = _shift_scale(ta, _sub_exp(L, la), cb // g0)
    for e, c in _shift_scale(tb, _sub_exp(L, lb), ca // g0).items():
        acc = left.get(e, 0) - c
        if acc:
            left[e] = acc
        else:
            left.pop(e, None)
    return left


def _gm_update(
    basis_lms: list[Exponent], pairs: set[tuple[int, int]], t: int
) -> set[tuple[int, int]]:
    """Gebauer-Moeller pair update after appending basis element t."""
    lt = basis_lms[t]
    candidates = sorted(
        range(t), key=lambda i: grevlex_key(_lcm_exp(basis_lms[i], lt))
    )
    lcms = {i: _lcm_exp(basis_lms[i], lt) for i in candidates}

    # ascending lcm order: a strict divisor of lcm_i appears earlier, and if
    # it was itself dropped, its kept divisor still divides lcm_i; one pass
    # against the kept list implements the minimality screen with equal-lcm
    # deduplication, after which coprime leading terms are dropped
    kept: list[int] = []
    for i in candidates:
        li = lcms[i]
        if any(_divides(lcms[j], li) for j in kept):
            continue
        kept.append(i)

    survivors = {
        i for i in kept if lcms[i] != _mul_exp(basis_lms[i], lt)
    }

    new_pairs: set[tuple[int, int]] = set()
    for (i, j) in pairs:
        lij = _lcm_exp(basis_lms[i], basis_lms[j])
        if (
            not _divides(lt, lij)
            or _lcm_exp(basis_lms[i], lt) == lij
            or _lcm_exp(basis_lms[j], lt) == lij
        ):
            new_pairs.add((i, j))
    for i in survivors:
        new_pairs.add((i, t))
    return new_pairs


class GroebnerBasis:
    """Reduced Groebner basis in grevlex order, with fast normal forms."""

    __slots__ = ("arity", "generators", "_reducers")

    def __init__(self, arity: int, generators: list[Polynomial]):
        object.__setattr__(self, "arity", arity)
        object.__setattr__(self, "generators", tuple(generators))
        reducers = []
        for g in generators:
            terms = _to_int_poly(g)
            lm = max(terms, key=grevlex_key)
            reducers.append((terms, lm, terms[lm]))
        object.__setattr__(self, "_reducers", tuple(reducers))

    def __setattr__(self, name, value):
        raise AttributeError("GroebnerBasis is immutable")

    def leading_exponents(self) -> tuple[Exponent, ...]:
        return tuple(lm for _, lm, _ in self._reducers)

    def is_unit(self) -> bool:
        return any(sum(lm) == 0 for _, lm, _ in self._reducers)

    def normal_form(self, p: Polynomial) -> Polynomial:
        """Unique remainder of p modulo the basis (a linear projector)."""
        if p.arity != self.arity:
            raise ArityMismatchError("polynomial arity differs from basis arity")
        work = dict(p.terms)
        remainder: dict[Exponent, Fraction] = {}
        reducers = self._reducers
        while work:
            m = max(work, key=grevlex_key)
            c = work[m]
            hit = None
            for terms, lm, lc in reducers:
                if _divides(lm, m):
                    hit = (terms, lm, lc)
                    break
            if hit is None:
                remainder[m] = c
                del work[m]
                continue
            terms, lm, lc = hit
            factor = c / lc
            shift = _sub_exp(m, lm)
            for e, ce in terms.items():
                key = _mul_exp(e, shift)
                acc = work.get(key, Fraction(0)) - factor * ce
                if acc:
                    work[key] = acc
                else:
                    work.pop(key, None)
        return _raw(self.arity, remainder)


def groebner(
    gens: list[Polynomial],
    weighted_cutoff: tuple[tuple[int, ...], int] | None = None,
) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``.

    Buchberger's algorithm with Gebauer-Moeller pair pruning and the normal
    (smallest lcm first) selection strategy; fully deterministic.

    ``weighted_cutoff = (v, bound)`` is only valid for an ideal whose
    generators are all homogeneous for the positive weights v: S-pairs whose
    lcm exceeds the weighted degree bound are discarded, which yields a
    basis whose leading terms agree with the ideal's in all weighted degrees
    up to the bound (a truncated basis of a graded ideal).
    """
    arities = {g.arity for g in gens}
    if len(arities) > 1:
        raise ArityMismatchError("generators have differing arities")
    arity = arities.pop() if arities else 0

    if weighted_cutoff is not None:
        v, bound = weighted_cutoff

        def wdeg(e: Exponent) -> int:
            return sum(a * w for a, w in zip(e, v))

        for g in gens:
            if len(g.weighted_degrees(v)) > 1:
                raise InputError("cutoff requires weighted-homogeneous generators")

    basis: list[tuple[dict[Exponent, int], Exponent, int]] = []
    basis_lms: list[Exponent] = []
    pairs: set[tuple[int, int]] = set()
    pair_heap: list[tuple] = []
    # reducers whose leading term no later element divides; reducing against
    # this antichain gives the same remainders at a fraction of the scans
    live: list[tuple[dict[Exponent, int], Exponent, int]] = []

    seeds = []
    for g in gens:
        if g.is_zero():
            continue
        terms = _to_int_poly(g)
        seeds.append(terms)
    seeds.sort(key=lambda t: grevlex_key(max(t, key=grevlex_key)))

    def pair_key(ij):
        lcm = _lcm_exp(basis_lms[ij[0]], basis_lms[ij[1]])
        if weighted_cutoff is not None:
            return (wdeg(lcm), grevlex_key(lcm), ij)
        return (grevlex_key(lcm), ij)

    def append(terms: dict[Exponent, int]) -> None:
        nonlocal pairs, live
        lm = max(terms, key=grevlex_key)
        entry = (terms, lm, terms[lm])
        basis.append(entry)
        basis_lms.append(lm)
        live = [e for e in live if not _divides(lm, e[1])]
        live.append(entry)
        before = pairs
        pairs = _gm_update(basis_lms, pairs, len(basis) - 1)
        if weighted_cutoff is not None:
            pairs = {
                ij for ij in pairs
                if wdeg(_lcm_exp(basis_lms[ij[0]], basis_lms[ij[1]])) <= bound
            }
        for ij in pairs - before:
            heappush(pair_heap, (pair_key(ij), ij))

    for terms in seeds:
        reduced = _reduce_int(terms, live, top_only=True)
        if reduced:
            append(reduced)

    while pair_heap:
        _, (i, j) = heappop(pair_heap)
        if (i, j) not in pairs:
            continue  # discarded by a later update
        pairs.discard((i, j))
        s = _s_poly(basis[i], basis[j])
        reduced = _reduce_int(s, live, top_only=True)
        if reduced:
            append(reduced)

    # minimalize: drop elements whose leading term another one divides
    order = sorted(range(len(basis)), key=lambda k: grevlex_key(basis_lms[k]))
    minimal: list[int] = []
    for k in order:
        if not any(_divides(basis_lms[m], basis_lms[k]) for m in minimal):
            minimal.append(k)

    # tail-reduce and make monic for the unique reduced basis
    final: list[Polynomial] = []
    for k in minimal:
        others = [basis[m] for m in minimal if m != k]
        terms = _reduce_int(dict(basis[k][0]), others)
        lm = max(terms, key=grevlex_key)
        lc = terms[lm]
        final.append(
            _raw(arity, {e: Fraction(c, lc) for e, c in terms.items()})
        )
    final.sort(key=lambda p: grevlex_key(p.leading_exponent()))
    return GroebnerBasis(arity, final)


def normal_form(p: Polynomial, gb: GroebnerBasis) -> Polynomial:
    return gb.normal_form(p)


def is_unit_ideal(gens: list[Polynomial]) -> bool:
    return groebner(gens).is_unit()


# -- quotient bases ------------------------------------------------------------

def _minimalize(leads) -> frozenset[Exponent]:
    leads = sorted(set(leads), key=lambda e: (sum(e), e))
    kept: list[Exponent] = []
    for e in leads:
        if not any(_divides(m, e) for m in kept):
            kept.append(e)
    return frozenset(kept)


def _is_zero_dimensional(leads, arity: int) -> bool:
    for i in range(arity):
        if not any(
            e[i] > 0 and all(x == 0 for k, x in enumerate(e) if k != i)
            for e in leads
        ):
            return False
    return True


def _count_staircase(leads: frozenset[Exponent], arity: int, memo: dict) -> int:
    """Monomials of Z^arity not divisible by any lead (zero-dimensional input)."""
    key = (leads, arity)
    cached = memo.get(key)
    if cached is not None:
        return cached
    if any(sum(e) == 0 for e in leads):
        memo[key] = 0
        return 0
    if arity == 0:
        return 1
    last = arity - 1
    events = sorted({e[last] for e in leads if e[last] > 0})
    total = 0
    prev = 0
    for cut in events:
        active = _minimalize(e[:last] for e in leads if e[last] <= prev)
        total += (cut - prev) * _count_staircase(active, last, memo)
        prev = cut
    # beyond the largest event the slice must already be empty
    tail = _minimalize(e[:last] for e in leads if e[last] <= prev)
    if _count_staircase(tail, last, memo) != 0:
        raise MathError("staircase is not zero-dimensional")
    memo[key] = total
    return total


def _enumerate_staircase(leads: frozenset[Exponent], arity: int) -> list[Exponent]:
    if any(sum(e) == 0 for e in leads):
        return []
    if arity == 0:
        return [()]
    last = arity - 1
    events = sorted({e[last] for e in leads if e[last] > 0})
    out: list[Exponent] = []
    prev = 0
    for cut in events:
        active = _minimalize(e[:last] for e in leads if e[last] <= prev)
        heads = _enumerate_staircase(active, last)
        for v in range(prev, cut):
            out.extend(h + (v,) for h in heads)
        prev = cut
    return out


class QuotientBasis:
    """Standard monomials of a zero-dimensional quotient, or the finite flag."""

    __slots__ = ("arity", "finite", "dimension", "_leads")

    def __init__(self, gb: GroebnerBasis):
        leads = _minimalize(gb.leading_exponents())
        object.__setattr__(self, "arity", gb.arity)
        object.__setattr__(self, "_leads", leads)
        finite = _is_zero_dimensional(leads, gb.arity) or any(
            sum(e) == 0 for e in leads
        )
        object.__setattr__(self, "finite", finite)
        dimension = (
            _count_staircase(leads, gb.arity, {}) if finite else None
        )
        object.__setattr__(self, "dimension", dimension)

    def __setattr__(self, name, value):
        raise AttributeError("QuotientBasis is immutable")

    def standard_monomials(self) -> list[Exponent]:
        """Explicit staircase listing, sorted in grevlex order."""
        if not self.finite:
            raise MathError("quotient is infinite dimensional")
        monomials = _enumerate_staircase(self._leads, self.arity)
        monomials.sort(key=grevlex_key)
        return monomials


def quotient_basis(gb: GroebnerBasis) -> QuotientBasis:
    return QuotientBasis(gb)


def jacobian_basis(f: Polynomial) -> GroebnerBasis:
    """Groebner basis of the ideal of partial derivatives of f."""
    return groebner(f.gradient())


def _socle_cutoff(f: Polynomial) -> tuple[tuple[int, ...], int] | None:
    """Truncation bound for the Jacobian ideal of a quasihomogeneous f.

    A finite Jacobian quotient of a quasihomogeneous polynomial is a graded
    complete intersection with top degree sum(d - 2 v_i), so every minimal
    leading-term generator sits at most max(v_i) above it.  The truncated
    run is conclusive in both directions: a finite truncated staircase
    already contains all minimal generators and is exact, while an infinite
    one certifies an infinite quotient (a finite quotient would have been
    captured below the bound).
    """
    from .graphs import weights_from_support
    from .errors import MathError as _MathError

    try:
        w = weights_from_support(f)
    except _MathError:
        return None
    socle = sum(w.d - 2 * v for v in w.v)
    bound = max(socle, 0) + max(w.v)
    return (w.v, bound)


def milnor_number(f: Polynomial):
    """Dimension of Q[x]/(grad f), or INFINITE when it is not finite."""
    if f.arity == 0:
        raise InputError("Milnor number needs at least one variable")
    qb = quotient_basis(groebner(f.gradient(), _socle_cutoff(f)))
    if not qb.finite:
        return INFINITE
    return qb.dimension


def milnor_orlik_product(weights: WeightSystem) -> int:
    """Classical product formula Prod (d - v_i) / v_i for the Milnor number
    of a non-degenerate quasihomogeneous polynomial; used as an independent
    oracle against the Groebner count."""
    product = Fraction(1)
    for v in weights.v:
        product *= Fraction(weights.d - v, v)
    if product.denominator != 1 or product <= 0:
        raise MathError(f"product formula gives non-integer {product}")
    return int(product)


def restrict_to_fixed(f: Polynomial, g) -> Polynomial:
    """f restricted to the fixed locus of a diagonal symmetry.

    ``g`` is a GroupElement or a raw tuple of signs.  Variables flipped by g
    are set to 0; when nothing is fixed the restriction is the constant 1 by
    convention (the sector is then one dimensional).
    """
    signs = tuple(getattr(g, "signs", g))
    if len(signs) != f.arity:
        raise ArityMismatchError("sign vector length differs from arity")
    moved = [i for i, s in enumerate(signs, start=1) if s != 1]
    if len(moved) == f.arity:
        return Polynomial.one(f.arity)
    return f.set_zero(moved)
