"""Free graded-commutative algebras over Q with Koszul signs.

A monomial is a tuple of ``(generator_index, exponent)`` pairs sorted by
generator index; the empty tuple is the unit.  Generator indices follow
declaration order, which fixes every canonical form downstream.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Dict, Iterable, Iterator, Mapping, Sequence, Tuple, Union

Monomial = Tuple[Tuple[int, int], ...]
UNIT: Monomial = ()

Scalar = Union[int, Fraction]


class AlgebraMismatch(ValueError):
    """Operands live in different algebras."""


@dataclass(frozen=True)
class Generator:
    name: str
    degree: int

    def __post_init__(self):
        if not isinstance(self.degree, int) or isinstance(self.degree, bool):
            raise TypeError(f"degree of {self.name!r} must be an int")
        if self.degree < 1:
            raise ValueError(f"generator {self.name!r} has degree {self.degree}; degrees must be >= 1")

    @property
    def is_odd(self) -> bool:
        return self.degree % 2 == 1


class GradedAlgebra:
    """The free graded-commutative algebra on an ordered list of generators."""

    def __init__(self, generators: Iterable[Generator | tuple[str, int]]):
        gens = []
        for g in generators:
            if not isinstance(g, Generator):
                g = Generator(*g)
            gens.append(g)
        self.generators: tuple[Generator, ...] = tuple(gens)
        self._index: dict[str, int] = {}
        for i, g in enumerate(self.generators):
            if g.name in self._index:
                raise ValueError(f"duplicate generator name {g.name!r}")
            self._index[g.name] = i
        self.degrees: tuple[int, ...] = tuple(g.degree for g in self.generators)
        self._odd: tuple[bool, ...] = tuple(d % 2 == 1 for d in self.degrees)
        self._mul_cache: dict[tuple[Monomial, Monomial], tuple[int, Monomial]] = {}
        self._basis_cache: dict[tuple[int, tuple[int, ...] | None], list[Monomial]] = {}

    # -- identity -----------------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, GradedAlgebra) and self.generators == other.generators

    def __hash__(self):
        return hash(self.generators)

    def __repr__(self):
        inner = ", ".join(f"{g.name}:{g.degree}" for g in self.generators)
        return f"GradedAlgebra({inner})"

    def __len__(self):
        return len(self.generators)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(g.name for g in self.generators)

    def index(self, gen: str | int) -> int:
        if isinstance(gen, int) and not isinstance(gen, bool):
            if not 0 <= gen < len(self.generators):
                raise KeyError(f"generator index {gen} out of range")
            return gen
        try:
            return self._index[gen]
        except KeyError:
            raise KeyError(f"unknown generator {gen!r}") from None

    def __contains__(self, name) -> bool:
        return name in self._index

    def is_odd(self, i: int) -> bool:
        return self._odd[i]

    # -- monomials ----------------------------------------------------------

    def monomial_degree(self, m: Monomial) -> int:
        return sum(self.degrees[i] * e for i, e in m)

    def normalize(self, factors: Iterable[str | int]) -> tuple[int, Monomial]:
        """Sort a word of generators into canonical order.

        Returns ``(sign, monomial)`` with sign 0 iff an odd generator repeats.
        Only odd/odd transpositions contribute a sign.
        """
        idx = [self.index(f) for f in factors]
        odd_seen: list[int] = []
        inversions = 0
        for i in idx:
            if self._odd[i]:
                if i in odd_seen:
                    return 0, UNIT
                inversions += sum(1 for j in odd_seen if j > i)
                odd_seen.append(i)
        counts: dict[int, int] = {}
        for i in idx:
            counts[i] = counts.get(i, 0) + 1
        mono = tuple(sorted(counts.items()))
        return (-1 if inversions % 2 else 1), mono

    def monomial_product(self, a: Monomial, b: Monomial) -> tuple[int, Monomial]:
        key = (a, b)
        hit = self._mul_cache.get(key)
        if hit is not None:
            return hit
        odd = self._odd
        a_odd = [i for i, _ in a if odd[i]]
        sign = 1
        for j, _ in b:
            if odd[j]:
                for i in a_odd:
                    if i == j:
                        self._mul_cache[key] = (0, UNIT)
                        return 0, UNIT
                    if i > j:
                        sign = -sign
        merged: dict[int, int] = dict(a)
        for j, e in b:
            merged[j] = merged.get(j, 0) + e
        result = (sign, tuple(sorted(merged.items())))
        self._mul_cache[key] = result
        return result

    def monomial_key(self, m: Monomial) -> tuple[int, ...]:
        """Sort key of the canonical monomial order (higher powers of earlier generators first)."""
        dense = [0] * len(self.generators)
        for i, e in m:
            dense[i] = -e
        return tuple(dense)

    def basis(self, p: int, generators: Sequence[str | int] | None = None) -> list[Monomial]:
        """All monomials of degree ``p``, optionally restricted to a generator subset."""
        if p < 0:
            return []
        subset = None if generators is None else tuple(sorted({self.index(g) for g in generators}))
        key = (p, subset)
        cached = self._basis_cache.get(key)
        if cached is not None:
            return list(cached)
        pool = subset if subset is not None else tuple(range(len(self.generators)))
        out: list[Monomial] = []

        def rec(pos: int, remaining: int, acc: list[tuple[int, int]]):
            if remaining == 0:
                out.append(tuple(acc))
                return
            if pos == len(pool):
                return
            i = pool[pos]
            deg = self.degrees[i]
            top = 1 if self._odd[i] else remaining // deg
            for e in range(min(top, remaining // deg), -1, -1):
                if e:
                    acc.append((i, e))
                rec(pos + 1, remaining - e * deg, acc)
                if e:
                    acc.pop()

        rec(0, p, [])
        out.sort(key=self.monomial_key)
        self._basis_cache[key] = out
        return list(out)

    def render_monomial(self, m: Monomial) -> str:
        if not m:
            return "1"
        parts = []
        for i, e in m:
            name = self.generators[i].name
            parts.append(name if e == 1 else f"{name}^{e}")
        return "*".join(parts)

    # -- element constructors -----------------------------------------------

    def gen(self, name: str | int) -> "Element":
        return Element(self, {((self.index(name), 1),): Fraction(1)})

    def gens(self) -> tuple["Element", ...]:
        return tuple(self.gen(i) for i in range(len(self.generators)))

    def one(self) -> "Element":
        return Element(self, {UNIT: Fraction(1)})

    def zero(self) -> "Element":
        return Element(self, {})

    def scalar(self, c: Scalar) -> "Element":
        return Element(self, {UNIT: Fraction(c)})

    def monomial(self, m: Monomial, coeff: Scalar = 1) -> "Element":
        return Element(self, {m: Fraction(coeff)})

    def word(self, factors: Iterable[str | int], coeff: Scalar = 1) -> "Element":
        sign, m = self.normalize(factors)
        return Element(self, {m: Fraction(coeff) * sign})

    def from_vector(self, basis: Sequence[Monomial], coords: Sequence[Scalar]) -> "Element":
        return Element(self, {m: Fraction(c) for m, c in zip(basis, coords)})


def _is_scalar(x) -> bool:
    return isinstance(x, Rational) and not isinstance(x, bool)


class Element:
    """A finite Q-linear combination of canonical monomials.

    Instances are treated as immutable; arithmetic returns new elements.
    """

    __slots__ = ("algebra", "terms", "_hash")

    def __init__(self, algebra: GradedAlgebra, terms: Mapping[Monomial, Scalar] | None = None):
        self.algebra = algebra
        clean: Dict[Monomial, Fraction] = {}
        if terms:
            for m, c in terms.items():
                c = Fraction(c)
                if c:
                    clean[m] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, algebra, terms):
        obj = cls.__new__(cls)
        obj.algebra = algebra
        obj.terms = terms
        obj._hash = None
        return obj

    # -- structure ----------------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __iter__(self) -> Iterator[tuple[Monomial, Fraction]]:
        return iter(sorted(self.terms.items(), key=lambda t: self.algebra.monomial_key(t[0])))

    def degrees(self) -> set[int]:
        return {self.algebra.monomial_degree(m) for m in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    @property
    def degree(self) -> int | None:
        """Degree of a homogeneous element; None for zero.  Raises on mixed degree."""
        degs = self.degrees()
        if not degs:
            return None
        if len(degs) > 1:
            raise ValueError(f"element {self} is not homogeneous (degrees {sorted(degs)})")
        return degs.pop()

    def coefficient(self, m: Monomial) -> Fraction:
        return self.terms.get(m, Fraction(0))

    def coordinates(self, basis: Sequence[Monomial]) -> list[Fraction]:
        index = {m: k for k, m in enumerate(basis)}
        out = [Fraction(0)] * len(basis)
        for m, c in self.terms.items():
            try:
                out[index[m]] = c
            except KeyError:
                raise ValueError(f"monomial {self.algebra.render_monomial(m)} not in the given basis") from None
        return out

    def transport(self, target: GradedAlgebra) -> "Element":
        """Re-tag this element in an algebra whose leading generators coincide with ours."""
        n = len(self.algebra.generators)
        if target.generators[:n] != self.algebra.generators:
            raise AlgebraMismatch("target algebra does not extend the source algebra")
        return Element._raw(target, dict(self.terms))

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "Element":
        if isinstance(other, Element):
            if other.algebra is not self.algebra and other.algebra != self.algebra:
                raise AlgebraMismatch("operands belong to different algebras")
            return other
        if _is_scalar(other):
            return self.algebra.scalar(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self.terms)
        for m, c in other.terms.items():
            v = terms.get(m, 0) + c
            if v:
                terms[m] = v
            else:
                terms.pop(m, None)
        return Element._raw(self.algebra, terms)

    __radd__ = __add__

    def __neg__(self):
        return Element._raw(self.algebra, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def scale(self, c: Scalar) -> "Element":
        c = Fraction(c)
        if not c:
            return self.algebra.zero()
        return Element._raw(self.algebra, {m: v * c for m, v in self.terms.items()})

    def __mul__(self, other):
        if _is_scalar(other):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return multiply(self, other)

    def __rmul__(self, other):
        if _is_scalar(other):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = self.algebra.one()
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, Element):
            return self.algebra == other.algebra and self.terms == other.terms
        if _is_scalar(other):
            if other == 0:
                return not self.terms
            return self.terms == {UNIT: Fraction(other)}
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.algebra, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        return f"Element({self})"

    def __str__(self):
        return render(self)


def multiply(a: Element, b: Element) -> Element:
    """Bilinear product through the Koszul-signed monomial product."""
    if a.algebra is not b.algebra and a.algebra != b.algebra:
        raise AlgebraMismatch("operands belong to different algebras")
    alg = a.algebra
    terms: dict[Monomial, Fraction] = {}
    for ma, ca in a.terms.items():
        for mb, cb in b.terms.items():
            sign, m = alg.monomial_product(ma, mb)
            if sign:
                v = terms.get(m, 0) + sign * ca * cb
                if v:
                    terms[m] = v
                else:
                    terms.pop(m, None)
    return Element._raw(alg, terms)


def normalize(algebra: GradedAlgebra, factors: Iterable[str | int]) -> tuple[int, Monomial]:
    return algebra.normalize(factors)


def basis(algebra: GradedAlgebra, p: int, generators: Sequence[str | int] | None = None) -> list[Monomial]:
    return algebra.basis(p, generators)


def basis_count(degrees: Sequence[int], p: int) -> int:
    """Coefficient of t^p in prod_even (1-t^d)^-1 * prod_odd (1+t^d)."""
    series = [0] * (p + 1)
    if p < 0:
        return 0
    series[0] = 1
    for d in degrees:
        if d % 2:
            for k in range(p, d - 1, -1):
                series[k] += series[k - d]
        else:
            for k in range(d, p + 1):
                series[k] += series[k - d]
    return series[p]


def evaluate(x: Element, images: Sequence[Element], target: GradedAlgebra) -> Element:
    """Apply the algebra map sending generator ``i`` of ``x.algebra`` to ``images[i]``."""
    result = target.zero()
    cache: dict[tuple[int, int], Element] = {}
    for m, c in x.terms.items():
        term = target.scalar(c)
        for i, e in m:
            key = (i, e)
            if key not in cache:
                cache[key] = images[i] ** e
            term = term * cache[key]
            if not term:
                break
        result = result + term
    return result


def format_rational(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def render(x: Element) -> str:
    """Human/DSL-compatible text: ``2*v^2 - 1/3*x*y``."""
    if not x.terms:
        return "0"
    pieces = []
    for m, c in x:
        mono = x.algebra.render_monomial(m)
        mag = abs(c)
        if not m:
            body = format_rational(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{format_rational(mag)}*{mono}"
        if not pieces:
            pieces.append(("-" if c < 0 else "") + body)
        else:
            pieces.append(("- " if c < 0 else "+ ") + body)
    return " ".join(pieces)

