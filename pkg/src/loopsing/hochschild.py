"""Sector algebra of a polynomial with a sign symmetry group.

The algebra is a direct sum of Jacobian rings of the fixed-locus
restrictions f^g, one summand per group element, glued by structure
constants built from difference derivatives and a Clifford contraction.
Conventions, fixed once and pinned by tests:

  * theta words are stored as strictly increasing index tuples; reordering
    signs are absorbed at insertion time (theta_i theta_j = -theta_j theta_i,
    same for the dual generators).
  * theta_i acting on a dual word S gives (-1)^{#{s in S : s < i}} S - {i},
    or 0 when i is not in S; a word acts rightmost factor first.
  * the two-leg tensors multiply with the Koszul sign (-1)^{|B||C|} on
    (A (x) B) * (C (x) D).  Together with the contraction sign
    (-1)^{|q1||p2|} this normalisation reproduces the worked value of the
    squared twisted sector generator, which is what pins it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .errors import InputError, LoopsingError, MathError, ScopeError
from .groebner import GroebnerBasis, groebner, quotient_basis
from .orbifold import BarResolution, GroupElement
from .poly import (
    Exponent,
    Polynomial,
    difference_derivative,
    difference_derivative_block,
)

Word = tuple[int, ...]


# -- Clifford bookkeeping ------------------------------------------------------

def _merge_words(u: Word, v: Word) -> tuple[int, Word] | None:
    """Concatenate anticommuting words and sort; None when an index repeats."""
    if set(u) & set(v):
        return None
    inversions = sum(1 for a in u for b in v if a > b)
    sign = -1 if inversions % 2 else 1
    return sign, tuple(sorted(u + v))


def contract_word(theta_word: Word, dual_word: Word) -> tuple[int, Word] | None:
    """Left action of a theta word on a dual word in the contraction module.

    Rightmost theta acts first; each theta_i removes i from the (ascending)
    dual word with sign (-1)^{position}, or kills the term if i is absent.
    """
    current = list(dual_word)
    sign = 1
    for i in reversed(theta_word):
        if i not in current:
            return None
        pos = current.index(i)
        if pos % 2:
            sign = -sign
        current.pop(pos)
    return sign, tuple(current)


class ThetaTensor:
    """Sum of p(x) * theta_A (x) theta_B terms with polynomial coefficients."""

    __slots__ = ("arity", "terms")

    def __init__(self, arity: int, terms: dict[tuple[Word, Word], Polynomial] | None = None):
        object.__setattr__(self, "arity", arity)
        clean = {}
        for (a, b), p in (terms or {}).items():
            if tuple(sorted(set(a))) != a or tuple(sorted(set(b))) != b:
                raise InputError(f"theta words must be strictly increasing: {a}, {b}")
            if p.arity != arity:
                raise InputError("coefficient arity differs from tensor arity")
            if not p.is_zero():
                clean[(a, b)] = p
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("ThetaTensor is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, ThetaTensor)
            and self.arity == other.arity
            and self.terms == other.terms
        )

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, a: Word, b: Word) -> Polynomial:
        return self.terms.get((a, b), Polynomial.zero(self.arity))

    @staticmethod
    def unit(arity: int) -> "ThetaTensor":
        return ThetaTensor(arity, {((), ()): Polynomial.one(arity)})

    def __add__(self, other: "ThetaTensor") -> "ThetaTensor":
        if self.arity != other.arity:
            raise InputError("tensor arities differ")
        result = dict(self.terms)
        for key, p in other.terms.items():
            acc = result.get(key)
            result[key] = p if acc is None else acc + p
        return ThetaTensor(self.arity, result)

    def map_coefficients(self, fn) -> "ThetaTensor":
        return ThetaTensor(
            self.arity, {key: fn(p) for key, p in self.terms.items()}
        )

    def multiply(self, other: "ThetaTensor", reduce=None) -> "ThetaTensor":
        """Graded tensor-square product with the Koszul sign (-1)^{|B||C|}."""
        if self.arity != other.arity:
            raise InputError("tensor arities differ")
        result: dict[tuple[Word, Word], Polynomial] = {}
        for (a, b), p in self.terms.items():
            for (c, d), q in other.terms.items():
                left = _merge_words(a, c)
                if left is None:
                    continue
                right = _merge_words(b, d)
                if right is None:
                    continue
                sign_left, word_left = left
                sign_right, word_right = right
                sign = sign_left * sign_right
                if (len(b) % 2) and (len(c) % 2):
                    sign = -sign
                coeff = (p * q).scale(sign)
                if reduce is not None:
                    coeff = reduce(coeff)
                if coeff.is_zero():
                    continue
                key = (word_left, word_right)
                acc = result.get(key)
                merged = coeff if acc is None else acc + coeff
                if merged.is_zero():
                    result.pop(key, None)
                else:
                    result[key] = merged
        return ThetaTensor(self.arity, result)

    def power(self, exponent: int, reduce=None) -> "ThetaTensor":
        result = ThetaTensor.unit(self.arity)
        if reduce is not None:
            result = result.map_coefficients(reduce)
        for _ in range(exponent):
            result = result.multiply(self, reduce)
        return result


def upsilon(tensor: ThetaTensor, dual_a: Word, dual_b: Word) -> dict[Word, Polynomial]:
    """Contract both tensor legs onto dual words and multiply the residues.

    Each term p * theta_A (x) theta_B acts as theta_A on the first dual word
    and theta_B on the second; the results are merged in the dual module with
    the sign (-1)^{|dual_a| * |B|} in front.  Returns the accumulated
    polynomial coefficient in front of every residual dual word.
    """
    out: dict[Word, Polynomial] = {}
    for (a, b), p in tensor.terms.items():
        hit_a = contract_word(a, dual_a)
        if hit_a is None:
            continue
        hit_b = contract_word(b, dual_b)
        if hit_b is None:
            continue
        sign_a, word_a = hit_a
        sign_b, word_b = hit_b
        merged = _merge_words(word_a, word_b)
        if merged is None:
            continue
        sign_m, word = merged
        sign = sign_a * sign_b * sign_m
        if (len(dual_a) % 2) and (len(b) % 2):
            sign = -sign
        acc = out.get(word)
        add = p.scale(sign)
        total = add if acc is None else acc + add
        if total.is_zero():
            out.pop(word, None)
        else:
            out[word] = total
    return out


# -- difference-derivative tensors ---------------------------------------------

def _collapse(p: Polynomial, n: int, blocks: list[tuple]) -> Polynomial:
    """Fold an (x, y, z, ...) polynomial back to n variables.

    ``blocks[k]`` describes variables n*(k+1)+1 .. n*(k+2): each entry is a
    tuple of per-slot multipliers (Fraction or int), where slot i of block k
    maps to multiplier * x_i.  A zero multiplier kills terms using that slot.
    """
    result: dict[Exponent, Fraction] = {}
    for exponent, coeff in p.terms.items():
        folded = list(exponent[:n])
        value = coeff
        dead = False
        for k, multipliers in enumerate(blocks):
            offset = n * (k + 1)
            for i in range(n):
                e = exponent[offset + i]
                if not e:
                    continue
                m = multipliers[i]
                if m == 0:
                    dead = True
                    break
                if m == -1:
                    if e % 2:
                        value = -value
                elif m != 1:
                    value = value * Fraction(m) ** e
                folded[i] += e
            if dead:
                break
        if dead:
            continue
        key = tuple(folded)
        acc = result.get(key, Fraction(0)) + value
        if acc:
            result[key] = acc
        else:
            result.pop(key, None)
    return Polynomial(n, result)


def h_f(f: Polynomial, g: GroupElement) -> ThetaTensor:
    """Double difference-derivative tensor of f along the symmetry g.

    Entry (i, j) for j <= i is the j-th divided difference (in the first
    replacement block) of the i-th divided difference of f, evaluated at
    replacement blocks g(x) and x; it sits in front of theta_i (x) theta_j.
    """
    n = f.arity
    if g.arity != n:
        raise InputError("group element arity differs from polynomial arity")
    terms: dict[tuple[Word, Word], Polynomial] = {}
    for i in range(1, n + 1):
        first = difference_derivative(f, i)
        if first.is_zero():
            continue
        y_block = tuple(range(n + 1, 2 * n + 1))
        for j in range(1, i + 1):
            second = difference_derivative_block(first, y_block, j)
            value = _collapse(second, n, [g.signs, (1,) * n])
            if not value.is_zero():
                terms[((i,), (j,))] = value
    return ThetaTensor(n, terms)


def h_fg(f: Polynomial, g: GroupElement) -> ThetaTensor:
    """Single-leg tensor of mixed divided differences over the moved slots.

    For j < i, both in the moved set of g: the i-th divided difference is
    evaluated at replacement g(x), the j-th at the replacement zeroing the
    moved slots, scaled by 1/(1 - g_j); the word theta_j theta_i sits on the
    first leg.  Identity g gives the empty sum.
    """
    n = f.arity
    if g.arity != n:
        raise InputError("group element arity differs from polynomial arity")
    moved = g.moved_indices
    fixed_mask = tuple(1 if s == 1 else 0 for s in g.signs)
    terms: dict[tuple[Word, Word], Polynomial] = {}
    for i in moved:
        inner = _collapse(difference_derivative(f, i), n, [g.signs])
        if inner.is_zero():
            continue
        for j in moved:
            if j >= i:
                continue
            outer = _collapse(difference_derivative(inner, j), n, [fixed_mask])
            if outer.is_zero():
                continue
            scale = Fraction(1, 1 - g.signs[j - 1])
            terms[((j, i), ())] = outer.scale(scale)
    return ThetaTensor(n, terms)


# -- sectors -------------------------------------------------------------------

@dataclass(frozen=True)
class SectorData:
    """Groebner data of one fixed-locus Jacobian ring.

    Representatives are kept in the ambient arity but supported on the fixed
    slots; normal forms run in the compressed ring of the fixed variables.
    """

    element: GroupElement
    fixed: tuple[int, ...]
    basis: GroebnerBasis  # in the compressed ring
    dimension: int
    standard: tuple[Exponent, ...]  # compressed exponents

    def compress(self, p: Polynomial) -> Polynomial:
        mapping = {old: new for new, old in enumerate(self.fixed, start=1)}
        return p.set_zero(self.element.moved_indices).rename(mapping, len(self.fixed))

    def expand(self, p: Polynomial) -> Polynomial:
        mapping = {new: old for new, old in enumerate(self.fixed, start=1)}
        return p.rename(mapping, self.element.arity)

    def class_of(self, p: Polynomial) -> Polynomial:
        """Restriction to the fixed locus followed by the normal form."""
        return self.expand(self.basis.normal_form(self.compress(p)))

    def monomial_basis(self) -> list[Polynomial]:
        out = []
        for exponent in self.standard:
            out.append(self.expand(Polynomial.monomial(len(self.fixed), exponent)))
        return out


def _build_sector(f: Polynomial, g: GroupElement) -> SectorData:
    fixed = g.fixed_indices
    mapping = {old: new for new, old in enumerate(fixed, start=1)}
    restricted = f.set_zero(g.moved_indices).rename(mapping, len(fixed))
    gens = [restricted.partial_derivative(i) for i in range(1, len(fixed) + 1)]
    gb = groebner(gens)
    qb = quotient_basis(gb)
    if not qb.finite:
        raise MathError(
            f"sector of {g.signs} has an infinite Jacobian quotient"
        )
    return SectorData(
        element=g, fixed=fixed, basis=gb,
        dimension=qb.dimension, standard=tuple(qb.standard_monomials()),
    )


@dataclass(frozen=True)
class SectorElement:
    """Element sum_g [phi_g] xi_g with normal-form representatives."""

    arity: int
    sectors: tuple[tuple[GroupElement, Polynomial], ...]

    @staticmethod
    def of(arity: int, parts: dict[GroupElement, Polynomial]) -> "SectorElement":
        items = tuple(
            sorted(
                ((g, p) for g, p in parts.items() if not p.is_zero()),
                key=lambda gp: gp[0].signs,
            )
        )
        return SectorElement(arity, items)

    def part(self, g: GroupElement) -> Polynomial:
        for h, p in self.sectors:
            if h == g:
                return p
        return Polynomial.zero(self.arity)

    def as_dict(self) -> dict[GroupElement, Polynomial]:
        return dict(self.sectors)

    def is_zero(self) -> bool:
        return not self.sectors

    def __add__(self, other: "SectorElement") -> "SectorElement":
        parts = dict(self.sectors)
        for g, p in other.sectors:
            parts[g] = parts.get(g, Polynomial.zero(self.arity)) + p
        return SectorElement.of(self.arity, parts)

    def scale(self, factor) -> "SectorElement":
        return SectorElement.of(
            self.arity, {g: p.scale(factor) for g, p in self.sectors}
        )


class OrbifoldAlgebra:
    """Jacobian rings of all fixed loci with the twisted-sector product."""

    def __init__(self, f: Polynomial, elements):
        elements = list(elements)
        arity = f.arity
        seen = {g.signs for g in elements}
        if (1,) * arity not in seen:
            raise InputError("group must contain the identity")
        for g in elements:
            if g.arity != arity:
                raise InputError("group element arity differs from polynomial")
            if not g.is_symmetry_of(f):
                raise InputError(f"{g.signs} is not a symmetry of the polynomial")
            for h in elements:
                if g.compose(h).signs not in seen:
                    raise InputError("symmetry set is not closed under products")
        self.f = f
        self.arity = arity
        self.elements = sorted(elements, key=lambda g: g.signs, reverse=True)
        self.identity = GroupElement.identity(arity)
        self.sectors = {g: _build_sector(f, g) for g in self.elements}
        self._h_f_cache: dict[GroupElement, ThetaTensor] = {}
        self._sigma_cache: dict[tuple, Polynomial] = {}

    # -- structure constants ------------------------------------------------

    def _h_f(self, g: GroupElement) -> ThetaTensor:
        if g not in self._h_f_cache:
            self._h_f_cache[g] = h_f(self.f, g)
        return self._h_f_cache[g]

    def sigma(self, g: GroupElement, h: GroupElement) -> Polynomial:
        """Structure constant in front of xi_{gh}, as a class in its sector.

        The degree (d_g + d_h - d_{gh}) / 2 counts the common moved slots,
        so it is a non-negative integer for every sign pair; the zero branch
        for a fractional degree is kept as a guard for wider diagonal groups.
        """
        key = (g.signs, h.signs)
        cached = self._sigma_cache.get(key)
        if cached is not None:
            return cached

        gh = g.compose(h)
        degree = Fraction(g.d_g + h.d_g - gh.d_g, 2)
        if degree.denominator != 1 or degree < 0:
            result = Polynomial.zero(self.arity)
            self._sigma_cache[key] = result
            return result
        if not (g == h or g.is_identity() or h.is_identity()):
            raise ScopeError(
                f"sector product for {g.signs} * {h.signs} not implemented"
            )
        sector = self.sectors[gh]
        reduce = sector.class_of

        if degree == 0:
            powered = ThetaTensor.unit(self.arity)
        else:
            tensor = self._h_f(g).map_coefficients(reduce)
            part_g = h_fg(self.f, g)
            if not part_g.is_zero():
                tensor = tensor + part_g.map_coefficients(reduce)
            part_h = h_fg(self.f, h)
            if not part_h.is_zero():
                signs_g = g.signs
                shifted = part_h.map_coefficients(
                    lambda p: reduce(p.apply_signs(signs_g))
                )
                # the second single-leg tensor sits on the other leg
                shifted = ThetaTensor(
                    self.arity,
                    {((), a): p for (a, _), p in shifted.terms.items()},
                )
                tensor = tensor + shifted
            powered = tensor.power(int(degree), reduce)
        contraction = upsilon(powered, g.moved_indices, h.moved_indices)
        coefficient = contraction.get(gh.moved_indices, Polynomial.zero(self.arity))
        result = reduce(coefficient.scale(Fraction(1, factorial(int(degree)))))
        self._sigma_cache[key] = result
        return result

    # -- algebra operations ---------------------------------------------------

    def element(self, parts: dict[GroupElement, Polynomial]) -> SectorElement:
        """Build a sector element, reducing every representative."""
        reduced = {
            g: self.sectors[g].class_of(p) for g, p in parts.items()
        }
        return SectorElement.of(self.arity, reduced)

    def unit(self) -> SectorElement:
        return self.element({self.identity: Polynomial.one(self.arity)})

    def generator(self, g: GroupElement) -> SectorElement:
        return self.element({g: Polynomial.one(self.arity)})

    def product(self, u: SectorElement, v: SectorElement) -> SectorElement:
        """Bilinear extension of [phi] xi_g * [psi] xi_h = [phi psi sigma] xi_{gh}."""
        parts: dict[GroupElement, Polynomial] = {}
        for g, phi in u.sectors:
            for h, psi in v.sectors:
                gh = g.compose(h)
                sigma = self.sigma(g, h)
                if sigma.is_zero():
                    continue
                value = self.sectors[gh].class_of(phi * psi * sigma)
                if value.is_zero():
                    continue
                acc = parts.get(gh)
                parts[gh] = value if acc is None else acc + value
        return SectorElement.of(self.arity, parts)

    def g_action(self, h: GroupElement, u: SectorElement) -> SectorElement:
        """Twisted action: [phi] xi_g -> prod_{i moved by g} h_i^{-1} [phi(h x)] xi_g."""
        parts: dict[GroupElement, Polynomial] = {}
        for g, phi in u.sectors:
            twist = 1
            for i in g.moved_indices:
                twist *= h.signs[i - 1]
            parts[g] = phi.apply_signs(h.signs).scale(twist)
        return SectorElement.of(self.arity, parts)

    def invariant_basis(self) -> list[SectorElement]:
        """Monomial basis of the subspace fixed by the whole group.

        Standard monomials are eigenvectors of every group element, so the
        invariants are exactly the monomials whose eigenvalue is +1 for all
        elements.
        """
        out: list[SectorElement] = []
        for g in self.elements:
            sector = self.sectors[g]
            for rep in sector.monomial_basis():
                exponent = next(iter(rep.terms))
                ok = True
                for h in self.elements:
                    twist = 1
                    for i in g.moved_indices:
                        twist *= h.signs[i - 1]
                    flip = sum(
                        exponent[i - 1] for i in h.moved_indices
                    )
                    eigen = twist * (-1 if flip % 2 else 1)
                    if eigen != 1:
                        ok = False
                        break
                if ok:
                    out.append(SectorElement.of(self.arity, {g: rep}))
        return out

    def invariant_dimensions(self) -> dict[GroupElement, int]:
        counts = {g: 0 for g in self.elements}
        for element in self.invariant_basis():
            g, _ = element.sectors[0]
            counts[g] += 1
        return counts

    def elements_equal(self, u: SectorElement, v: SectorElement) -> bool:
        """Class equality, decided by normal forms sector by sector."""
        for g in self.elements:
            diff = u.part(g) - v.part(g)
            if not self.sectors[g].class_of(diff).is_zero():
                return False
        return True


# -- the resolved-side comparison ----------------------------------------------

@dataclass(frozen=True)
class PsiReport:
    """Outcome of verifying the algebra map from the resolved Jacobian ring."""

    passed: bool
    milnor_bar: int
    sector_dimensions: dict
    invariant_dimensions: dict
    b1_count: int
    b2_count: int
    b1_double_count: int
    partition_ok: bool
    generator_square: str
    generator_square_ok: bool
    grading_ok: bool
    product_failures: list

    def summary(self) -> dict:
        return {
            "passed": self.passed,
            "milnor_bar": self.milnor_bar,
            "sector_dimensions": {
                str(list(signs)): dim for signs, dim in self.sector_dimensions.items()
            },
            "invariant_dimensions": {
                str(list(signs)): dim
                for signs, dim in self.invariant_dimensions.items()
            },
            "b1_count": self.b1_count,
            "b2_count": self.b2_count,
            "b1_double_count": self.b1_double_count,
            "partition_ok": self.partition_ok,
            "generator_square": self.generator_square,
            "generator_square_ok": self.generator_square_ok,
            "grading_ok": self.grading_ok,
            "product_failures": self.product_failures,
        }


def _double_slot(p: Polynomial, t: int) -> Polynomial:
    """The substitution dictionary x_t -> x_t^2 on representatives."""
    result = {}
    i = t - 1
    for exponent, coeff in p.terms.items():
        result[exponent[:i] + (2 * exponent[i],) + exponent[i + 1:]] = coeff
    return Polynomial(p.arity, result)


def verify_psi(bar: BarResolution, product_check: bool = True) -> PsiReport:
    """Verify the isomorphism between Jac(f_bar) and the sector algebra.

    Checks dimensions, the basis partition by the degree of the isolated
    slot, the squared twisted generator against the resolved-side relation,
    weight compatibility of the monomial dictionary, and multiplicativity on
    all products of basis monomials.
    """
    f, f_bar = bar.f, bar.f_bar
    t, iso = bar.flip_leaf, bar.isolated
    g = bar.group
    n = f.arity
    identity = GroupElement.identity(n)
    algebra = OrbifoldAlgebra(f, [identity, g])

    gb_bar = groebner(f_bar.gradient())
    qb_bar = quotient_basis(gb_bar)
    if not qb_bar.finite:
        raise MathError("resolved polynomial is degenerate")
    basis = qb_bar.standard_monomials()
    mu_bar = qb_bar.dimension

    invariant_dims = algebra.invariant_dimensions()
    sector_dims = {h: algebra.sectors[h].dimension for h in algebra.elements}

    b1 = [m for m in basis if m[iso - 1] % 2 == 0]
    b2 = [m for m in basis if m[iso - 1] % 2 == 1]
    partition_ok = (
        all(m[iso - 1] == 1 and m[t - 1] == 0 for m in b2)
        and len(b1) == invariant_dims[identity]
        and len(b2) == invariant_dims[g]
        and mu_bar == sum(invariant_dims.values())
    )
    b1_double = sum(1 for m in b1 if m[iso - 1] > 0)

    # image of a basis monomial under the generator dictionary
    def psi(exponent: Exponent) -> SectorElement:
        k = exponent[iso - 1]
        base = list(exponent)
        base[iso - 1] = 0
        base[t - 1] *= 2
        x_part = Polynomial.monomial(n, tuple(base))
        u = algebra.element({identity: x_part})
        xi = algebra.generator(g)
        for _ in range(k):
            u = algebra.product(u, xi)
        return u

    def psi_linear(p: Polynomial) -> SectorElement:
        total = SectorElement.of(n, {})
        for exponent, coeff in p.terms.items():
            total = total + psi(exponent).scale(coeff)
        return total

    # squared twisted generator against the resolved-side relation: the
    # partial derivative along t expresses the class of x_iso^2 through
    # monomials without the isolated slot, which the dictionary then doubles
    sigma_gg = algebra.sigma(g, g)
    relation = Polynomial.variable(n, iso) ** 2 - f_bar.partial_derivative(t)
    if relation.degree_in(iso) != 0:
        raise LoopsingError("resolved relation still involves the isolated slot")
    expected_square = _double_slot(relation, t)
    square_ok = algebra.elements_equal(
        algebra.element({identity: sigma_gg}),
        algebra.element({identity: expected_square}),
    )

    # weight compatibility of the dictionary
    q = bar.weights.q
    q_bar = bar.weights_bar.q
    charge = Fraction(1, 2) - q[t - 1]
    grading_ok = True
    for m in basis:
        lhs = sum(a * qi for a, qi in zip(m, q_bar))
        base = list(m)
        k = base[iso - 1]
        base[iso - 1] = 0
        base[t - 1] *= 2
        rhs = sum(a * qi for a, qi in zip(base, q)) + k * charge
        if lhs != rhs:
            grading_ok = False
            break

    failures: list = []
    if product_check:
        gb_nf = gb_bar.normal_form
        images = {m: psi(m) for m in basis}
        for a in basis:
            pa = Polynomial.monomial(n, a)
            for b in basis:
                product = gb_nf(pa * Polynomial.monomial(n, b))
                lhs = SectorElement.of(n, {})
                for exponent, coeff in product.terms.items():
                    lhs = lhs + images[exponent].scale(coeff)
                rhs = algebra.product(images[a], images[b])
                if not algebra.elements_equal(lhs, rhs):
                    failures.append({"left": list(a), "right": list(b)})
                    if len(failures) >= 5:
                        break
            if len(failures) >= 5:
                break

    passed = bool(
        partition_ok and square_ok and grading_ok and not failures
    )
    return PsiReport(
        passed=passed,
        milnor_bar=mu_bar,
        sector_dimensions={h.signs: d for h, d in sector_dims.items()},
        invariant_dimensions={h.signs: d for h, d in invariant_dims.items()},
        b1_count=len(b1),
        b2_count=len(b2),
        b1_double_count=b1_double,
        partition_ok=partition_ok,
        generator_square=str(sigma_gg),
        generator_square_ok=square_ok,
        grading_ok=grading_ok,
        product_failures=failures,
    )
