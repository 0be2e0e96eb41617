import random
from fractions import Fraction

import pytest
from hypothesis import settings

from cdgakit.cdga import CDGA
from cdgakit.cohomology import class_is_zero, differential_matrix
from cdgakit.graded import Element, GradedAlgebra
from cdgakit.linalg import RationalMatrix, kernel_basis
from cdgakit.spaces import cpn, kodaira_thurston, sphere

settings.register_profile("default", deadline=None)
settings.load_profile("default")


@pytest.fixture
def kt():
    return kodaira_thurston()


@pytest.fixture
def s2():
    return sphere(2)


@pytest.fixture
def cp2():
    return cpn(2)


def random_element(rng: random.Random, algebra: GradedAlgebra, degree: int, terms: int = 3) -> Element:
    basis = algebra.basis(degree)
    if not basis:
        return algebra.zero()
    out = algebra.zero()
    for _ in range(terms):
        m = rng.choice(basis)
        out = out + algebra.monomial(m, Fraction(rng.randint(-4, 4), rng.randint(1, 3)))
    return out


def _decomposable_cocycles(cdga: CDGA, degree: int) -> list[Element]:
    """Basis of closed elements of the given degree with no linear terms."""
    alg = cdga.algebra
    mat, src, _ = differential_matrix(cdga, degree)
    keep = [j for j, m in enumerate(src) if not (len(m) == 1 and m[0][1] == 1)]
    if not keep:
        return []
    sub = RationalMatrix(
        mat.rows, len(keep),
        {(i, keep.index(j)): v for (i, j), v in mat.entries.items() if j in keep},
    )
    out = []
    for vec in kernel_basis(sub).vectors:
        full = [Fraction(0)] * len(src)
        for k, j in enumerate(keep):
            full[j] = vec[k]
        out.append(alg.from_vector(src, full))
    return out


def random_minimal_cdga(rng: random.Random, degrees=(2, 3, 4), max_gens: int = 6) -> CDGA:
    """Random minimal Sullivan algebra built generator by generator in increasing degree."""
    count = rng.randint(2, max_gens)
    gen_degrees = sorted([2] + [rng.choice(degrees) for _ in range(count - 1)])
    cdga = CDGA(GradedAlgebra([]), {})
    for k, deg in enumerate(gen_degrees):
        name = f"g{k}"
        alg = GradedAlgebra(list(cdga.generators) + [(name, deg)])
        diff = {g.name: dg.transport(alg) for g, dg in zip(cdga.generators, cdga.differential)}
        closed = _decomposable_cocycles(cdga, deg + 1) if cdga.generators else []
        dx = alg.zero()
        if closed and rng.random() < 0.8:
            for c in closed:
                coeff = rng.randint(-2, 2)
                if coeff:
                    dx = dx + c.transport(alg).scale(coeff)
        diff[name] = dx
        cdga = CDGA(alg, diff)
    return cdga


def random_degree4_class(rng: random.Random, cdga: CDGA, attempts: int = 20) -> Element | None:
    """A degree-4 cocycle with nonzero class mixing decomposable and indecomposable parts."""
    alg = cdga.algebra
    mat, src, _ = differential_matrix(cdga, 4)
    cocycles = [alg.from_vector(src, v) for v in kernel_basis(mat).vectors]
    if not cocycles:
        return None
    for _ in range(attempts):
        z = alg.zero()
        for c in cocycles:
            z = z + c.scale(rng.randint(-3, 3))
        if z and not class_is_zero(cdga, z):
            return z
    return None
