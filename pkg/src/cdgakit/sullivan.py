"""Relative Sullivan extensions, sphere-bundle models and minimal models."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .cdga import CDGA, DifferentialError, _fresh, is_minimal
from .cohomology import (
    _Complex,
    betti_numbers,
    class_is_zero,
    cohomology_table,
    coboundary_preimage,
)
from .graded import Element, Generator, GradedAlgebra, evaluate
from .linalg import SubspaceBasis, kernel_basis, RationalMatrix


class HypothesisError(ValueError):
    """Inputs fall outside the hypotheses of the requested construction."""


class NotSimplyConnected(HypothesisError):
    pass


def adjoin(base: CDGA, name: str, degree: int, z: Element | int, model_name: str | None = None) -> CDGA:
    """``(base ⊗ Λy, d)`` with ``|y| = degree`` and ``dy = z``."""
    if name in base.algebra:
        raise ValueError(f"generator {name!r} already exists in the base")
    if isinstance(z, Element):
        if z.algebra != base.algebra:
            raise ValueError("attaching element must live in the base algebra")
        if z and (not z.is_homogeneous() or z.degree != degree + 1):
            raise DifferentialError(f"attaching element must have degree {degree + 1}")
        if base.d(z):
            raise DifferentialError(f"attaching element {z} is not a cocycle")
        terms = dict(z.terms)
    elif z == 0:
        terms = {}
    else:
        raise TypeError("z must be an Element or 0")
    algebra = GradedAlgebra(list(base.generators) + [Generator(name, degree)])
    diff = {i: Element._raw(algebra, dict(dg.terms)) for i, dg in enumerate(base.differential)}
    diff[name] = Element._raw(algebra, terms)
    # d^2 = 0 holds automatically: dz = 0 and the base was valid
    return CDGA(algebra, diff, name=model_name, validate=False)


def sphere_bundle_model(base: CDGA, euler: Element, k: int, name: str | None = None) -> CDGA:
    """Model of the unit S^k-bundle (k odd) whose Euler class is ``[euler]``."""
    if k < 1 or k % 2 == 0:
        raise ValueError(f"fiber dimension must be odd, got {k}")
    y = name or _fresh(f"y{k}", set(base.algebra.names))
    return adjoin(base, y, k, euler)


@dataclass(frozen=True)
class LemmaReport:
    b3_before: int
    b3_after: int

    @property
    def equal(self) -> bool:
        return self.b3_before == self.b3_after


def verify_lemma_rel3(base: CDGA, z: Element, name: str = "y") -> LemmaReport:
    """Compare b3 of a minimal simply connected base and of its extension by dy = z, |z| = 4.

    Refuses (HypothesisError) outside the hypotheses, where the equality can fail.
    """
    if not is_minimal(base):
        raise HypothesisError("base is not minimal")
    if any(g.degree == 1 for g in base.generators):
        raise HypothesisError("base has degree-1 generators (V^1 must be zero)")
    if z.algebra != base.algebra:
        raise HypothesisError("z must live in the base algebra")
    if not z or not z.is_homogeneous() or z.degree != 4:
        raise HypothesisError("z must be a nonzero homogeneous element of degree 4")
    if base.d(z):
        raise HypothesisError("z is not a cocycle")
    if class_is_zero(base, z):
        raise HypothesisError("[z] is zero in H^4")
    ext = adjoin(base, _fresh(name, set(base.algebra.names)), 3, z)
    return LemmaReport(betti_numbers(base, 3)[3], betti_numbers(ext, 3)[3])


# -- minimal models -------------------------------------------------------------


@dataclass(frozen=True)
class ModelMorphism:
    source: CDGA
    target: CDGA
    images: tuple[Element, ...]

    def __call__(self, x: Element) -> Element:
        return evaluate(x, self.images, self.target.algebra)

    def commutes(self) -> bool:
        for g, dg, img in zip(self.source.generators, self.source.differential, self.images):
            if self(dg) != self.target.d(img):
                return False
        return True

    def image_of(self, name: str) -> Element:
        return self.images[self.source.algebra.index(name)]


@dataclass(frozen=True)
class CertificateEntry:
    degree: int
    model_betti: int
    input_betti: int
    induced_rank: int

    @property
    def isomorphism(self) -> bool:
        return self.model_betti == self.input_betti == self.induced_rank

    @property
    def injective(self) -> bool:
        return self.induced_rank == self.model_betti


@dataclass(frozen=True)
class MinimalModel:
    model: CDGA
    morphism: ModelMorphism
    certificate: tuple[CertificateEntry, ...]
    max_degree: int

    @property
    def certified(self) -> bool:
        *below, top = self.certificate
        return all(e.isomorphism for e in below) and top.injective and self.morphism.commutes()


def induced_rank(morphism: ModelMorphism, p: int, reps: tuple[Element, ...] | None = None) -> int:
    """Rank of H^p(source) -> H^p(target)."""
    src, tgt = morphism.source, morphism.target
    if reps is None:
        reps = cohomology_table(src, p).representatives[p]
    if not reps:
        return 0
    cx = _Complex(tgt)
    data = cx.degree(p)
    images = [morphism(r).coordinates(data.basis) for r in reps]
    with_images = data.coboundaries.extend(images)
    return with_images.dim - data.coboundaries.dim


def _certificate(morphism: ModelMorphism, max_degree: int) -> tuple[CertificateEntry, ...]:
    top = max_degree + 1
    mt = cohomology_table(morphism.source, top)
    it = cohomology_table(morphism.target, top)
    return tuple(
        CertificateEntry(p, mt.betti[p], it.betti[p], induced_rank(morphism, p, mt.representatives[p]))
        for p in range(top + 1)
    )


def minimal_model(target: CDGA, max_degree: int) -> MinimalModel:
    """Minimal Sullivan model of a simply connected free CDGA through ``max_degree``.

    Degree by degree: first adjoin closed generators mapping onto the classes
    of H^k(target) not yet hit, then adjoin generators whose differentials
    kill the kernel of H^(k+1)(model) -> H^(k+1)(target).  The morphism is an
    isomorphism on H^p for p <= max_degree and injective on H^(max_degree+1).
    """
    if max_degree < 2:
        raise ValueError("max_degree must be >= 2")
    if betti_numbers(target, 1)[1] != 0:
        raise NotSimplyConnected("b1 != 0: minimal models are built for simply connected inputs only")
    tcx = _Complex(target)
    gens: list[Generator] = []
    diffs: list[dict] = []
    images: list[dict] = []

    def current() -> tuple[CDGA, ModelMorphism]:
        alg = GradedAlgebra(gens)
        model = CDGA(alg, {i: Element._raw(alg, t) for i, t in enumerate(diffs)}, name="minimal", validate=False)
        imgs = tuple(Element._raw(target.algebra, t) for t in images)
        return model, ModelMorphism(model, target, imgs)

    for k in range(2, max_degree + 1):
        model, phi = current()
        # surjectivity on H^k
        tdata = tcx.degree(k)
        hit = tdata.coboundaries
        mcx = _Complex(model)
        mdata = mcx.degree(k)
        if mdata.cocycles.dim:
            hit = hit.extend(
                phi(model.algebra.from_vector(mdata.basis, z)).coordinates(tdata.basis)
                for z in mdata.cocycles.vectors
            )
        count = 0
        for r in tdata.representatives:
            if not hit.contains(r):
                hit = hit.extend([r])
                gens.append(Generator(f"x{k}_{count}", k))
                diffs.append({})
                images.append(dict(target.algebra.from_vector(tdata.basis, r).terms))
                count += 1
        # injectivity on H^(k+1)
        model, phi = current()
        mcx = _Complex(model)
        mdata = mcx.degree(k + 1)
        tnext = tcx.degree(k + 1)
        zs = list(mdata.cocycles.vectors)
        if not zs:
            continue
        columns = [phi(model.algebra.from_vector(mdata.basis, z)).coordinates(tnext.basis) for z in zs]
        columns += [list(b) for b in tnext.coboundaries.vectors]
        mat = RationalMatrix.from_columns(columns, len(tnext.basis))
        kernel_space = []
        for vec in kernel_basis(mat).vectors:
            combo = [Fraction(0)] * len(mdata.basis)
            for c, z in zip(vec[: len(zs)], zs):
                if c:
                    combo = [a + c * b for a, b in zip(combo, z)]
            if any(combo):
                kernel_space.append(combo)
        killed = mdata.coboundaries
        for m in SubspaceBasis.span(len(mdata.basis), kernel_space).vectors:
            if killed.contains(m):
                continue
            killed = killed.extend([m])
            m_el = model.algebra.from_vector(mdata.basis, m)
            pre = coboundary_preimage(target, phi(m_el))
            if pre is None:
                raise RuntimeError("kernel class has no preimage; linear algebra inconsistent")
            gens.append(Generator(f"x{k}_{count}", k))
            diffs.append(dict(m_el.terms))
            images.append(dict(pre.terms))
            count += 1

    model, phi = current()
    model = CDGA(model.algebra, dict(enumerate(model.differential)), name="minimal")
    phi = ModelMorphism(model, target, phi.images)
    return MinimalModel(model, phi, _certificate(phi, max_degree), max_degree)


def linear_part_ranks(morphism: ModelMorphism) -> dict[int, tuple[int, int]]:
    """Per degree, (number of source generators, rank of the map onto target indecomposables).

    Between minimal algebras, a quasi-isomorphism is an isomorphism exactly
    when every degree has full rank here.
    """
    src, tgt = morphism.source, morphism.target
    out = {}
    for p in sorted(set(src.algebra.degrees)):
        idx = [i for i, g in enumerate(src.generators) if g.degree == p]
        tgt_gens = [j for j, g in enumerate(tgt.generators) if g.degree == p]
        rows = []
        for i in idx:
            img = morphism.images[i]
            rows.append([img.coefficient(((j, 1),)) for j in tgt_gens])
        rank = SubspaceBasis.span(len(tgt_gens), rows).dim if tgt_gens else 0
        out[p] = (len(idx), rank)
    return out
