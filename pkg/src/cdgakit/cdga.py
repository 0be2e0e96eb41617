"""Differentials on free graded-commutative algebras."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .graded import Element, GradedAlgebra, Generator, Monomial


class DifferentialError(ValueError):
    """The proposed differential is ill-typed or does not square to zero."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True)
class DSquaredReport:
    passed: bool
    witness: str | None = None
    value: Element | None = None

    def __bool__(self):
        return self.passed


@dataclass(frozen=True)
class MinimalityReport:
    minimal: bool
    witness: str | None = None
    linear_term: str | None = None

    def __bool__(self):
        return self.minimal


@dataclass(frozen=True)
class SullivanFiltration:
    stages: tuple[tuple[str, ...], ...]


class CDGA:
    """A free CDGA: a graded algebra plus the differential of each generator.

    ``d^2 = 0`` is checked at construction unless ``validate=False``;
    unvalidated instances exist only so :func:`check_d_squared` can report on
    them.
    """

    def __init__(
        self,
        algebra: GradedAlgebra,
        differential: Mapping[str | int, Element | int] | None = None,
        name: str | None = None,
        validate: bool = True,
    ):
        self.algebra = algebra
        self.name = name
        images: list[Element] = [algebra.zero() for _ in algebra.generators]
        for key, value in (differential or {}).items():
            i = algebra.index(key)
            gen = algebra.generators[i]
            if isinstance(value, Element):
                if value.algebra != algebra:
                    raise DifferentialError(f"d{gen.name} lives in a different algebra")
                value = Element._raw(algebra, value.terms)
            elif value == 0:
                value = algebra.zero()
            else:
                raise DifferentialError(f"d{gen.name} must be an Element or 0")
            if value and (not value.is_homogeneous() or value.degree != gen.degree + 1):
                raise DifferentialError(
                    f"d{gen.name} must have degree {gen.degree + 1}, got {sorted(value.degrees())}",
                    witness=gen.name,
                )
            images[i] = value
        self.differential: tuple[Element, ...] = tuple(images)
        self._mono_cache: dict[Monomial, Element] = {}
        if validate:
            report = check_d_squared(self)
            if not report:
                raise DifferentialError(
                    f"d^2 != 0 on generator {report.witness}: d(d{report.witness}) = {report.value}",
                    witness=report.witness,
                )

    @classmethod
    def build(cls, generators, differential=None, name=None) -> "CDGA":
        """Convenience constructor: ``differential`` maps names to elements or callables of the algebra."""
        algebra = GradedAlgebra(generators)
        diff = {}
        for key, value in (differential or {}).items():
            diff[key] = value(algebra) if callable(value) else value
        return cls(algebra, diff, name=name)

    @property
    def generators(self) -> tuple[Generator, ...]:
        return self.algebra.generators

    def gen(self, name: str | int) -> Element:
        return self.algebra.gen(name)

    def d_of(self, gen: str | int) -> Element:
        return self.differential[self.algebra.index(gen)]

    def __eq__(self, other):
        return (
            isinstance(other, CDGA)
            and self.algebra == other.algebra
            and all(a.terms == b.terms for a, b in zip(self.differential, other.differential))
        )

    def __hash__(self):
        return hash((self.algebra, tuple(self.differential)))

    def __repr__(self):
        parts = [f"{g.name}:{g.degree}" for g in self.generators]
        ds = [f"d{g.name}={dg}" for g, dg in zip(self.generators, self.differential) if dg]
        return f"CDGA({', '.join(parts)}; {', '.join(ds) or 'd=0'})"

    def max_generator_degree(self) -> int:
        return max(self.algebra.degrees, default=0)

    # -- the derivation -----------------------------------------------------

    def _d_monomial(self, m: Monomial) -> Element:
        hit = self._mono_cache.get(m)
        if hit is not None:
            return hit
        alg = self.algebra
        result = alg.zero()
        prefix_deg = 0
        for pos, (i, e) in enumerate(m):
            dg = self.differential[i]
            if dg:
                # d(g^e) = e g^(e-1) dg for even g; odd g has e == 1
                piece = dg if e == 1 else alg.monomial(((i, e - 1),), e) * dg
                left = alg.monomial(m[:pos])
                right = alg.monomial(m[pos + 1:])
                term = left * piece * right
                if prefix_deg % 2:
                    term = -term
                result = result + term
            prefix_deg += alg.degrees[i] * e
        self._mono_cache[m] = result
        return result

    def d(self, x: Element) -> Element:
        if x.algebra != self.algebra:
            raise ValueError("element does not belong to this CDGA")
        result = self.algebra.zero()
        for m, c in x.terms.items():
            dm = self._d_monomial(m)
            if dm:
                result = result + dm.scale(c)
        return result

    apply_d = d


def apply_d(cdga: CDGA, x: Element) -> Element:
    return cdga.d(x)


def check_d_squared(cdga: CDGA, max_degree: int | None = None) -> DSquaredReport:
    """Verify d(d g) = 0 on every generator; enough since d is a derivation."""
    if max_degree is not None and max_degree < cdga.max_generator_degree() + 2:
        raise ValueError(
            f"max degree {max_degree} too small; need at least {cdga.max_generator_degree() + 2}"
        )
    for g, dg in zip(cdga.generators, cdga.differential):
        dd = cdga.d(dg)
        if dd:
            return DSquaredReport(False, g.name, dd)
    return DSquaredReport(True)


def is_minimal(cdga: CDGA) -> MinimalityReport:
    """Minimal iff no differential contains a lone generator (a linear term)."""
    for g, dg in zip(cdga.generators, cdga.differential):
        for m, c in dg:
            if len(m) == 1 and m[0][1] == 1:
                return MinimalityReport(False, g.name, cdga.algebra.render_monomial(m))
    return MinimalityReport(True)


def sullivan_filtration(cdga: CDGA) -> SullivanFiltration | None:
    """Greedy filtration: stage k holds generators whose d lies in earlier stages.

    Returns None when some generators can never be placed.
    """
    remaining = list(range(len(cdga.generators)))
    placed: set[int] = set()
    stages = []
    while remaining:
        stage = []
        for i in remaining:
            used = {j for m in cdga.differential[i].terms for j, _ in m}
            if used <= placed:
                stage.append(i)
        if not stage:
            return None
        placed.update(stage)
        remaining = [i for i in remaining if i not in placed]
        stages.append(tuple(cdga.generators[i].name for i in stage))
    return SullivanFiltration(tuple(stages))


def _fresh(name: str, taken: set[str]) -> str:
    if name not in taken:
        return name
    k = 1
    while f"{name}_{k}" in taken:
        k += 1
    return f"{name}_{k}"


def tensor(a: CDGA, b: CDGA, name: str | None = None) -> CDGA:
    """A ⊗ B; colliding names from B get a ``_k`` suffix."""
    return tensor_with_names(a, b, name)[0]


def tensor_with_names(a: CDGA, b: CDGA, name: str | None = None) -> tuple[CDGA, dict[str, str]]:
    """A ⊗ B together with the renaming applied to B's generators."""
    taken = set(a.algebra.names)
    renamed = {}
    new_gens = list(a.generators)
    for g in b.generators:
        new = _fresh(g.name, taken)
        taken.add(new)
        renamed[g.name] = new
        new_gens.append(Generator(new, g.degree))
    algebra = GradedAlgebra(new_gens)
    offset = len(a.generators)
    diff = {}
    for i, dg in enumerate(a.differential):
        diff[i] = Element._raw(algebra, dict(dg.terms))
    for i, dg in enumerate(b.differential):
        shifted = {tuple((j + offset, e) for j, e in m): c for m, c in dg.terms.items()}
        diff[i + offset] = Element._raw(algebra, shifted)
    if name is None and a.name and b.name:
        name = f"{a.name}*{b.name}"
    return CDGA(algebra, diff, name=name, validate=False), renamed


def trivial() -> CDGA:
    """The ground field Q as a CDGA with no generators."""
    return CDGA(GradedAlgebra([]), {}, name="point")

