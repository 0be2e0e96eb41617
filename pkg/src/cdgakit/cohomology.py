"""Degree-wise cohomology of free CDGAs, truncated at an explicit degree N."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cdga import CDGA
from .graded import Element, Monomial
from .linalg import RationalMatrix, SubspaceBasis, image_basis, kernel_basis, rank, solve
from .ring import BasisElement, FiniteRing


class InvariantError(RuntimeError):
    """Two independent computations disagree; indicates a bug, not bad input."""


def differential_matrix(cdga: CDGA, p: int) -> tuple[RationalMatrix, list[Monomial], list[Monomial]]:
    """Matrix of d: degree p -> p+1; columns index the source basis."""
    alg = cdga.algebra
    src = alg.basis(p)
    tgt = alg.basis(p + 1)
    row_of = {m: i for i, m in enumerate(tgt)}
    entries = {}
    for j, m in enumerate(src):
        for mm, c in cdga.d(alg.monomial(m)).terms.items():
            entries[(row_of[mm], j)] = c
    return RationalMatrix(len(tgt), len(src), entries), src, tgt


@dataclass(frozen=True)
class DegreeData:
    basis: tuple[Monomial, ...]
    cocycles: SubspaceBasis
    coboundaries: SubspaceBasis
    representatives: tuple[tuple[Fraction, ...], ...]


class _Complex:
    """Per-degree cocycles/coboundaries with caching."""

    def __init__(self, cdga: CDGA):
        self.cdga = cdga
        self._mats: dict[int, tuple[RationalMatrix, list[Monomial], list[Monomial]]] = {}
        self._deg: dict[int, DegreeData] = {}

    def matrix(self, p: int):
        if p not in self._mats:
            self._mats[p] = differential_matrix(self.cdga, p)
        return self._mats[p]

    def degree(self, p: int) -> DegreeData:
        if p in self._deg:
            return self._deg[p]
        d_out, src, _ = self.matrix(p)
        cocycles = kernel_basis(d_out)
        if p >= 1:
            coboundaries = image_basis(self.matrix(p - 1)[0])
        else:
            coboundaries = SubspaceBasis(len(src))
        reps = []
        span = coboundaries
        for z in cocycles.vectors:
            r = span.reduce(z)
            if any(r):
                reps.append(tuple(coboundaries.reduce(z)))
                span = span.extend([r])
        data = DegreeData(tuple(src), cocycles, coboundaries, tuple(reps))
        self._deg[p] = data
        return data


@dataclass(frozen=True)
class CohomologyTable:
    max_degree: int
    betti: tuple[int, ...]
    representatives: tuple[tuple[Element, ...], ...]

    def __getitem__(self, p):
        return self.betti[p]

    def euler_characteristic(self) -> int:
        return sum((-1) ** p * b for p, b in enumerate(self.betti))


def cohomology_table(cdga: CDGA, max_degree: int) -> CohomologyTable:
    """Betti numbers and representative cocycles in degrees 0..max_degree.

    Betti numbers come from two routes, rank-nullity on the differential
    matrices and the size of the representative basis; they must agree.
    """
    if max_degree < 0:
        raise ValueError("max_degree must be >= 0")
    cx = _Complex(cdga)
    alg = cdga.algebra
    betti, reps = [], []
    for p in range(max_degree + 1):
        data = cx.degree(p)
        d_out, src, _ = cx.matrix(p)
        rank_in = rank(cx.matrix(p - 1)[0]) if p >= 1 else 0
        by_rank = len(src) - rank(d_out) - rank_in
        if by_rank != len(data.representatives):
            raise InvariantError(
                f"degree {p}: rank-nullity gives {by_rank}, representatives give {len(data.representatives)}"
            )
        betti.append(by_rank)
        reps.append(tuple(alg.from_vector(data.basis, r) for r in data.representatives))
    return CohomologyTable(max_degree, tuple(betti), tuple(reps))


def betti_numbers(cdga: CDGA, max_degree: int) -> tuple[int, ...]:
    return cohomology_table(cdga, max_degree).betti


def _homogeneous_degree(x: Element) -> int | None:
    if not x.is_homogeneous():
        raise ValueError(f"{x} is not homogeneous")
    return x.degree


def is_cocycle(cdga: CDGA, x: Element) -> bool:
    _homogeneous_degree(x)
    return not cdga.d(x)


def class_is_zero(cdga: CDGA, x: Element) -> bool:
    """Whether the cocycle ``x`` is a coboundary."""
    p = _homogeneous_degree(x)
    if p is None:
        return True
    if cdga.d(x):
        raise ValueError(f"{x} is not a cocycle")
    if p == 0:
        return False
    mat, _, tgt = differential_matrix(cdga, p - 1)
    return image_basis(mat).contains(x.coordinates(tgt))


def coboundary_preimage(cdga: CDGA, x: Element) -> Element | None:
    """Some ``a`` with ``d a = x``, or None when ``x`` is not exact."""
    p = _homogeneous_degree(x)
    if p is None:
        return cdga.algebra.zero()
    if p == 0:
        return None
    mat, src, tgt = differential_matrix(cdga, p - 1)
    cols = [[mat.entries.get((i, j), 0) for i in range(mat.rows)] for j in range(mat.cols)]
    sol = solve(cols, x.coordinates(tgt))
    if sol is None:
        return None
    return cdga.algebra.from_vector(src, sol)


def _label(cdga: CDGA, rep: Element, p: int, k: int, taken: set[str]) -> str:
    terms = list(rep)
    if len(terms) == 1 and terms[0][1] == 1:
        label = f"[{cdga.algebra.render_monomial(terms[0][0])}]"
    else:
        label = f"[h{p}_{k}]"
    while label in taken:
        label = label[:-1] + "']"
    taken.add(label)
    return label


def extract_ring(cdga: CDGA, max_degree: int) -> FiniteRing:
    """The cup-product ring on representative classes up to ``max_degree``.

    Products landing above ``max_degree`` are dropped (truncation).
    """
    cx = _Complex(cdga)
    alg = cdga.algebra
    basis: list[BasisElement] = []
    reps: list[Element] = []
    offsets: dict[int, int] = {}
    taken: set[str] = set()
    for p in range(max_degree + 1):
        data = cx.degree(p)
        offsets[p] = len(basis)
        for k, r in enumerate(data.representatives):
            el = alg.from_vector(data.basis, r)
            reps.append(el)
            basis.append(BasisElement(_label(cdga, el, p, k, taken), p))

    def class_coords(x: Element, q: int) -> list[Fraction]:
        data = cx.degree(q)
        vec = x.coordinates(data.basis)
        cols = [list(r) for r in data.representatives] + [list(b) for b in data.coboundaries.vectors]
        sol = solve(cols, vec)
        if sol is None:
            raise InvariantError(f"product {x} not expressible in the degree-{q} representative basis")
        return sol[: len(data.representatives)]

    products: dict[tuple[int, int], tuple[Fraction, ...]] = {}
    n = len(basis)
    for i in range(n):
        for j in range(n):
            q = basis[i].degree + basis[j].degree
            if q > max_degree:
                continue
            prod = reps[i] * reps[j]
            if not prod:
                continue
            coords = class_coords(prod, q)
            if any(coords):
                full = [Fraction(0)] * n
                for k, c in enumerate(coords):
                    full[offsets[q] + k] = c
                products[(i, j)] = tuple(full)
    return FiniteRing(tuple(basis), products, complete=True)
