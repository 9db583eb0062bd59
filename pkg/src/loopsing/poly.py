"""Exact sparse multivariate polynomial arithmetic over the rationals.

A polynomial is a finite map from exponent vectors to nonzero Fraction
coefficients, together with an explicit arity so that the zero polynomial
still knows how many variables it lives in.  Variables are 1-based
(``x1 .. xN``) everywhere in the public API, matching the text grammar::

    term       := [rational] ('*'? var)('^' int)? ...
    var        := 'x' int
    rational   := int ('/' int)?
    polynomial := term (('+'|'-') term)*

All values are immutable; every operation returns a new polynomial, so
instances are safe to share between threads and to use as dict keys.

Canonical printing uses graded reverse lexicographic order with
``x1 > x2 > ... > xN``, largest term first.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import ArityMismatchError, InputError, OddExponentError

Exponent = tuple[int, ...]


def grevlex_key(exponent: Exponent) -> tuple:
    """Sort key realising graded reverse lexicographic order (x1 > ... > xN).

    ``max(exponents, key=grevlex_key)`` picks the grevlex-largest monomial:
    higher total degree wins, ties broken by the smallest trailing exponents.
    """
    return (sum(exponent), tuple(-e for e in reversed(exponent)))


class Polynomial:
    """Immutable sparse polynomial with Fraction coefficients."""

    __slots__ = ("arity", "terms", "_hash")

    def __init__(self, arity: int, terms: dict[Exponent, Fraction] | None = None):
        if arity < 0:
            raise InputError(f"arity must be non-negative, got {arity}")
        clean: dict[Exponent, Fraction] = {}
        for exponent, coeff in (terms or {}).items():
            if len(exponent) != arity:
                raise ArityMismatchError(
                    f"exponent {exponent} has length {len(exponent)}, expected {arity}"
                )
            if any(e < 0 for e in exponent):
                raise InputError(f"negative exponent in {exponent}")
            value = Fraction(coeff)
            if value != 0:
                clean[tuple(exponent)] = value
        object.__setattr__(self, "arity", arity)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(arity: int) -> "Polynomial":
        return Polynomial(arity, {})

    @staticmethod
    def constant(arity: int, value) -> "Polynomial":
        return Polynomial(arity, {(0,) * arity: Fraction(value)})

    @staticmethod
    def one(arity: int) -> "Polynomial":
        return Polynomial.constant(arity, 1)

    @staticmethod
    def variable(arity: int, index: int) -> "Polynomial":
        """The polynomial ``x_index`` (1-based index)."""
        if not 1 <= index <= arity:
            raise InputError(f"variable index {index} out of range 1..{arity}")
        exponent = [0] * arity
        exponent[index - 1] = 1
        return Polynomial(arity, {tuple(exponent): Fraction(1)})

    @staticmethod
    def monomial(arity: int, exponent: Exponent, coeff=1) -> "Polynomial":
        return Polynomial(arity, {tuple(exponent): Fraction(coeff)})

    # -- basic queries -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.arity == other.arity and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            value = hash((self.arity, frozenset(self.terms.items())))
            object.__setattr__(self, "_hash", value)
        return self._hash

    def leading_exponent(self) -> Exponent:
        if not self.terms:
            raise InputError("zero polynomial has no leading term")
        return max(self.terms, key=grevlex_key)

    def coefficient(self, exponent: Exponent) -> Fraction:
        return self.terms.get(tuple(exponent), Fraction(0))

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.arity, Fraction(0))

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def degree_in(self, index: int) -> int:
        """Largest power of ``x_index`` appearing (0 for the zero polynomial)."""
        return max((e[index - 1] for e in self.terms), default=0)

    def variables_used(self) -> frozenset[int]:
        used = set()
        for exponent in self.terms:
            for i, e in enumerate(exponent, start=1):
                if e:
                    used.add(i)
        return frozenset(used)

    # -- ring operations ---------------------------------------------------

    def _check_arity(self, other: "Polynomial") -> None:
        if self.arity != other.arity:
            raise ArityMismatchError(
                f"arities differ: {self.arity} vs {other.arity}"
            )

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check_arity(other)
        result = dict(self.terms)
        for exponent, coeff in other.terms.items():
            acc = result.get(exponent, Fraction(0)) + coeff
            if acc:
                result[exponent] = acc
            else:
                result.pop(exponent, None)
        return _raw(self.arity, result)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        self._check_arity(other)
        result = dict(self.terms)
        for exponent, coeff in other.terms.items():
            acc = result.get(exponent, Fraction(0)) - coeff
            if acc:
                result[exponent] = acc
            else:
                result.pop(exponent, None)
        return _raw(self.arity, result)

    def __neg__(self) -> "Polynomial":
        return _raw(self.arity, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check_arity(other)
        result: dict[Exponent, Fraction] = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                key = tuple(a + b for a, b in zip(ea, eb))
                acc = result.get(key, Fraction(0)) + ca * cb
                if acc:
                    result[key] = acc
                else:
                    result.pop(key, None)
        return _raw(self.arity, result)

    __rmul__ = __mul__

    def scale(self, factor) -> "Polynomial":
        factor = Fraction(factor)
        if factor == 0:
            return Polynomial.zero(self.arity)
        return _raw(self.arity, {e: c * factor for e, c in self.terms.items()})

    def __pow__(self, power: int) -> "Polynomial":
        if power < 0:
            raise InputError("negative polynomial power")
        result = Polynomial.one(self.arity)
        base = self
        while power:
            if power & 1:
                result = result * base
            base = base * base if power > 1 else base
            power >>= 1
        return result

    # -- calculus ----------------------------------------------------------

    def partial_derivative(self, index: int) -> "Polynomial":
        """Formal derivative with respect to ``x_index`` (1-based)."""
        if not 1 <= index <= self.arity:
            raise InputError(f"variable index {index} out of range 1..{self.arity}")
        i = index - 1
        result: dict[Exponent, Fraction] = {}
        for exponent, coeff in self.terms.items():
            e = exponent[i]
            if e:
                key = exponent[:i] + (e - 1,) + exponent[i + 1:]
                acc = result.get(key, Fraction(0)) + coeff * e
                if acc:
                    result[key] = acc
                else:
                    result.pop(key, None)
        return _raw(self.arity, result)

    def gradient(self) -> list["Polynomial"]:
        return [self.partial_derivative(i) for i in range(1, self.arity + 1)]

    # -- substitution ------------------------------------------------------

    def substitute(self, assignments: dict[int, "Polynomial"]) -> "Polynomial":
        """Simultaneous substitution x_i := assignments[i].

        Unassigned variables are kept, so every assigned polynomial must share
        a common target arity that is at least the arity of this polynomial.
        """
        if not assignments:
            return self
        arities = {p.arity for p in assignments.values()}
        if len(arities) != 1:
            raise ArityMismatchError("assigned polynomials have differing arities")
        target = arities.pop()
        if target < self.arity:
            raise ArityMismatchError(
                f"target arity {target} smaller than source arity {self.arity}"
            )
        for index in assignments:
            if not 1 <= index <= self.arity:
                raise InputError(f"substituted index {index} out of range")

        pad = target - self.arity
        result = Polynomial.zero(target)
        power_cache: dict[tuple[int, int], Polynomial] = {}
        for exponent, coeff in self.terms.items():
            kept = [0] * target
            factor = Polynomial.constant(target, coeff)
            for i, e in enumerate(exponent, start=1):
                if e == 0:
                    continue
                if i in assignments:
                    key = (i, e)
                    if key not in power_cache:
                        power_cache[key] = assignments[i] ** e
                    factor = factor * power_cache[key]
                else:
                    kept[i - 1] = e
            if any(kept):
                factor = factor * Polynomial.monomial(target, tuple(kept))
            result = result + factor
        del pad
        return result

    def apply_signs(self, signs: tuple[int, ...]) -> "Polynomial":
        """Fast path for the diagonal substitution x_i := signs[i-1] * x_i."""
        if len(signs) != self.arity:
            raise ArityMismatchError("sign vector length differs from arity")
        result: dict[Exponent, Fraction] = {}
        for exponent, coeff in self.terms.items():
            sign = 1
            for s, e in zip(signs, exponent):
                if s == -1 and e % 2 == 1:
                    sign = -sign
                elif s not in (1, -1):
                    raise InputError("signs must be +1 or -1")
            result[exponent] = coeff if sign == 1 else -coeff
        return _raw(self.arity, result)

    def rename(self, mapping: dict[int, int], new_arity: int) -> "Polynomial":
        """Move variable i to slot mapping[i]; unmapped slots keep their index."""
        result: dict[Exponent, Fraction] = {}
        for exponent, coeff in self.terms.items():
            moved = [0] * new_arity
            for i, e in enumerate(exponent, start=1):
                if e == 0:
                    continue
                j = mapping.get(i, i)
                if not 1 <= j <= new_arity:
                    raise ArityMismatchError(f"renamed slot {j} out of range")
                moved[j - 1] += e
            key = tuple(moved)
            acc = result.get(key, Fraction(0)) + coeff
            if acc:
                result[key] = acc
            else:
                result.pop(key, None)
        return _raw(new_arity, result)

    def extend(self, new_arity: int) -> "Polynomial":
        """Embed into a ring with more variables (same leading slots)."""
        if new_arity < self.arity:
            raise ArityMismatchError("cannot shrink arity with extend")
        pad = (0,) * (new_arity - self.arity)
        return _raw(new_arity, {e + pad: c for e, c in self.terms.items()})

    def set_zero(self, indices) -> "Polynomial":
        """Substitute x_i := 0 for every i in ``indices``."""
        kill = set(indices)
        result: dict[Exponent, Fraction] = {}
        for exponent, coeff in self.terms.items():
            if all(exponent[i - 1] == 0 for i in kill):
                result[exponent] = coeff
        return _raw(self.arity, result)

    # -- weighted structure --------------------------------------------------

    def weighted_degrees(self, weights: tuple[int, ...]) -> set[int]:
        """All weighted degrees sum(alpha_i * v_i) present in the support."""
        return {sum(a * v for a, v in zip(e, weights)) for e in self.terms}

    def is_quasihomogeneous(self, weights: tuple[int, ...], degree: int) -> bool:
        return all(
            sum(a * v for a, v in zip(e, weights)) == degree for e in self.terms
        )

    # -- printing ------------------------------------------------------------

    def sorted_terms(self) -> list[tuple[Exponent, Fraction]]:
        return sorted(self.terms.items(), key=lambda t: grevlex_key(t[0]), reverse=True)

    def __str__(self) -> str:
        return format_polynomial(self)

    def __repr__(self) -> str:
        return f"Polynomial({self.arity}, {format_polynomial(self)!r})"


def _raw(arity: int, terms: dict[Exponent, Fraction]) -> Polynomial:
    """Internal constructor for already-clean term dicts (no copying)."""
    p = Polynomial.__new__(Polynomial)
    object.__setattr__(p, "arity", arity)
    object.__setattr__(p, "terms", terms)
    object.__setattr__(p, "_hash", None)
    return p


# -- named operations mirroring the library surface ---------------------------

def add(p: Polynomial, q: Polynomial) -> Polynomial:
    return p + q


def mul(p: Polynomial, q: Polynomial) -> Polynomial:
    return p * q


def partial_derivative(p: Polynomial, index: int) -> Polynomial:
    return p.partial_derivative(index)


def substitute(p: Polynomial, assignments: dict[int, Polynomial]) -> Polynomial:
    return p.substitute(assignments)


def halve_variable(p: Polynomial, index: int) -> Polynomial:
    """Substitute x_index^2 := x_index, requiring all its exponents even.

    This is the square-root style substitution used by the resolution charts;
    a polynomial with an odd power of ``x_index`` has no polynomial image.
    """
    if not 1 <= index <= p.arity:
        raise InputError(f"variable index {index} out of range 1..{p.arity}")
    i = index - 1
    result: dict[Exponent, Fraction] = {}
    for exponent, coeff in p.terms.items():
        if exponent[i] % 2:
            raise OddExponentError(
                f"odd exponent {exponent[i]} of x{index} in {format_polynomial(p)}"
            )
        result[exponent[:i] + (exponent[i] // 2,) + exponent[i + 1:]] = coeff
    return _raw(p.arity, result)


def exact_quotient_by_difference(p: Polynomial, a: int, b: int) -> Polynomial:
    """Exact division of p by (x_a - x_b); raises if the remainder is nonzero.

    Uses synthetic division in x_a: x_a^e = (x_a - x_b) * sum_k x_a^{e-1-k} x_b^k
    + x_b^e, so the remainder is p with x_a replaced by x_b and must vanish.
    """
    ia, ib = a - 1, b - 1
    quotient: dict[Exponent, Fraction] = {}
    remainder: dict[Exponent, Fraction] = {}
    for exponent, coeff in p.terms.items():
        e = exponent[ia]
        base = list(exponent)
        for k in range(e):
            base[ia] = e - 1 - k
            base[ib] = exponent[ib] + k
            key = tuple(base)
            acc = quotient.get(key, Fraction(0)) + coeff
            if acc:
                quotient[key] = acc
            else:
                quotient.pop(key, None)
        base[ia] = 0
        base[ib] = exponent[ib] + e
        key = tuple(base)
        acc = remainder.get(key, Fraction(0)) + coeff
        if acc:
            remainder[key] = acc
        else:
            remainder.pop(key, None)
    if remainder:
        raise AssertionError(
            f"division of {format_polynomial(p)} by (x{a} - x{b}) is inexact"
        )
    return _raw(p.arity, quotient)


def difference_derivative_block(
    p: Polynomial, block: tuple[int, ...], j: int
) -> Polynomial:
    """Divided difference in the j-th variable of ``block`` (both 1-based).

    The result lives in ``p.arity + len(block)`` variables where the trailing
    ``len(block)`` slots are the replacement copies of ``block``:

        [ p(block[:j-1] replaced, block[j-1] kept)
          - p(block[:j] replaced) ] / (x_block[j-1] - x_replacement[j-1])

    The division is exact by construction and verified by a remainder check.
    """
    n, m = p.arity, len(block)
    if not 1 <= j <= m:
        raise InputError(f"block position {j} out of range 1..{m}")
    new_slots = tuple(n + k for k in range(1, m + 1))
    upper = p.rename({block[k]: new_slots[k] for k in range(j - 1)}, n + m)
    lower = p.rename({block[k]: new_slots[k] for k in range(j)}, n + m)
    return exact_quotient_by_difference(upper - lower, block[j - 1], new_slots[j - 1])


def difference_derivative(p: Polynomial, index: int) -> Polynomial:
    """Divided difference in x_index, doubling the arity to (x1..xN, y1..yN)."""
    if not 1 <= index <= p.arity:
        raise InputError(f"variable index {index} out of range 1..{p.arity}")
    return difference_derivative_block(p, tuple(range(1, p.arity + 1)), index)


# -- text grammar --------------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<var>x\d+)|(?P<op>[-+*^]))"
)


def parse_polynomial(text: str, arity: int | None = None) -> Polynomial:
    """Parse the textual grammar; infers arity from variable indices if not given."""
    tokens: list[tuple[str, str]] = []
    pos = 0
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if not match:
            if text[pos:].strip():
                raise InputError(f"cannot parse polynomial near {text[pos:pos+20]!r}")
            break
        pos = match.end()
        for kind in ("num", "var", "op"):
            if match.group(kind) is not None:
                tokens.append((kind, match.group(kind)))
                break

    max_index = 0
    for kind, value in tokens:
        if kind == "var":
            max_index = max(max_index, int(value[1:]))
    if arity is None:
        arity = max_index
    elif max_index > arity:
        raise InputError(f"variable x{max_index} exceeds arity {arity}")

    terms: list[tuple[list[int], Fraction]] = []
    sign = 1
    i = 0

    def parse_term(i: int) -> tuple[int, list[int], Fraction]:
        coeff = Fraction(1)
        exponent = [0] * arity
        seen = False
        if i < len(tokens) and tokens[i][0] == "num":
            coeff = Fraction(tokens[i][1])
            seen = True
            i += 1
        while i < len(tokens):
            if tokens[i] == ("op", "*"):
                i += 1
                continue
            if tokens[i][0] != "var":
                break
            index = int(tokens[i][1][1:])
            i += 1
            power = 1
            if i + 1 < len(tokens) and tokens[i] == ("op", "^") and tokens[i + 1][0] == "num":
                power_text = tokens[i + 1][1]
                if "/" in power_text:
                    raise InputError("fractional exponent")
                power = int(power_text)
                i += 2
            exponent[index - 1] += power
            seen = True
        if not seen:
            raise InputError("empty term in polynomial text")
        return i, exponent, coeff

    if not tokens:
        return Polynomial.zero(arity)
    if tokens[0] == ("op", "-"):
        sign = -1
        i = 1
    elif tokens[0] == ("op", "+"):
        i = 1
    while True:
        i, exponent, coeff = parse_term(i)
        terms.append((exponent, sign * coeff))
        if i == len(tokens):
            break
        kind, value = tokens[i]
        if kind != "op" or value not in "+-":
            raise InputError(f"expected + or - between terms, got {value!r}")
        sign = 1 if value == "+" else -1
        i += 1

    accumulated: dict[Exponent, Fraction] = {}
    for exponent, coeff in terms:
        key = tuple(exponent)
        accumulated[key] = accumulated.get(key, Fraction(0)) + coeff
    return Polynomial(arity, accumulated)


def _format_term(exponent: Exponent, coeff: Fraction) -> str:
    factors = []
    for i, e in enumerate(exponent, start=1):
        if e == 1:
            factors.append(f"x{i}")
        elif e > 1:
            factors.append(f"x{i}^{e}")
    magnitude = abs(coeff)
    if not factors:
        return str(magnitude)
    if magnitude == 1:
        return "*".join(factors)
    return str(magnitude) + "*" + "*".join(factors)


def format_polynomial(p: Polynomial) -> str:
    """Canonical text form: grevlex order, largest term first."""
    if p.is_zero():
        return "0"
    parts = []
    for k, (exponent, coeff) in enumerate(p.sorted_terms()):
        body = _format_term(exponent, coeff)
        if k == 0:
            parts.append(("-" if coeff < 0 else "") + body)
        else:
            parts.append(("- " if coeff < 0 else "+ ") + body)
    return " ".join(parts)
