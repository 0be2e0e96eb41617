import random

import pytest
from hypothesis import given, strategies as st

from cdgakit.cdga import (
    CDGA,
    DifferentialError,
    apply_d,
    check_d_squared,
    is_minimal,
    sullivan_filtration,
    tensor,
    tensor_with_names,
    trivial,
)
from cdgakit.cohomology import cohomology_table
from cdgakit.graded import GradedAlgebra, render
from cdgakit.spaces import cpn, kodaira_thurston, sphere, torus

from conftest import random_element, random_minimal_cdga
from oracles import word_algebra_from


def test_apply_d_on_generator(s2):
    assert render(apply_d(s2, s2.gen("y"))) == "v^2"


def test_apply_d_leibniz_even_factor(s2):
    v, y = s2.gen("v"), s2.gen("y")
    assert render(apply_d(s2, v * y)) == "v^3"


def test_apply_d_kodaira_thurston(kt):
    assert render(kt.d(kt.gen("gamma") * kt.gen("delta"))) == "alpha*beta*delta"


def test_d_squared_pass_examples(s2, kt):
    assert check_d_squared(s2).passed
    assert check_d_squared(kt).passed


def test_d_squared_failure_names_witness():
    alg = GradedAlgebra([("a", 2), ("b", 3), ("c", 4)])
    a, b = alg.gen("a"), alg.gen("b")
    bad = CDGA(alg, {"b": a * a, "c": a * b}, validate=False)
    report = check_d_squared(bad)
    assert not report.passed
    assert report.witness == "c"
    assert report.value == a ** 3
    with pytest.raises(DifferentialError) as info:
        CDGA(alg, {"b": a * a, "c": a * b})
    assert info.value.witness == "c"


def test_wrong_degree_rejected():
    alg = GradedAlgebra([("a", 2), ("b", 2), ("c", 3)])
    with pytest.raises(DifferentialError):
        CDGA(alg, {"c": alg.gen("b")})


def test_minimality_examples(s2):
    assert is_minimal(s2).minimal
    assert is_minimal(CDGA(GradedAlgebra([("v", 2)]))).minimal
    alg = GradedAlgebra([("a", 2), ("b", 4), ("c", 3)])
    report = is_minimal(CDGA(alg, {"c": alg.gen("b")}))
    assert not report.minimal
    assert report.witness == "c"
    assert report.linear_term == "b"


def test_tensor_of_spheres():
    prod = tensor(sphere(2), sphere(3))
    assert [(g.name, g.degree) for g in prod.generators] == [("v", 2), ("y", 3), ("z", 3)]
    assert cohomology_table(prod, 6).betti == (1, 0, 1, 1, 0, 1, 0)
    assert cohomology_table(prod, 6).betti == word_algebra_from(prod).betti(6)


def test_tensor_with_unit():
    a = kodaira_thurston()
    assert tensor(a, trivial()) == a


def test_tensor_renames_collisions():
    prod, renamed = tensor_with_names(sphere(2), sphere(2))
    assert renamed == {"v": "v_1", "y": "y_1"}
    assert render(prod.d_of("y_1")) == "v_1^2"


def test_sullivan_filtration():
    f = sullivan_filtration(cpn(3))
    assert f.stages == (("v",), ("y",))
    assert sullivan_filtration(CDGA(GradedAlgebra([("a", 3), ("b", 3)]))).stages == (("a", "b"),)


def test_no_filtration_for_circular_differential():
    alg = GradedAlgebra([("x", 1), ("y", 1), ("u", 2)])
    x, y, _ = alg.gens()
    cyc = CDGA(alg, {"x": x * y, "y": x * y}, validate=False)
    assert sullivan_filtration(cyc) is None


pool = [kodaira_thurston(), cpn(2), sphere(4), torus(3), tensor(sphere(2), sphere(3))]


@given(st.sampled_from(range(len(pool))), st.integers(min_value=0, max_value=2**32))
def test_leibniz_and_d_squared(idx, seed):
    rng = random.Random(seed)
    cdga = pool[idx]
    p, q = rng.randint(0, 6), rng.randint(0, 6)
    x = random_element(rng, cdga.algebra, p)
    y = random_element(rng, cdga.algebra, q)
    assert cdga.d(x * y) == cdga.d(x) * y + (x * cdga.d(y)).scale((-1) ** p)
    assert not cdga.d(cdga.d(x))
    if x:
        dx = cdga.d(x)
        assert not dx or dx.degree == p + 1


@given(st.integers(min_value=0, max_value=2**32))
def test_d_matches_word_oracle(seed):
    rng = random.Random(seed)
    cdga = random_minimal_cdga(rng)
    oracle = word_algebra_from(cdga)
    x = random_element(rng, cdga.algebra, rng.randint(2, 8), 4)
    words = {
        tuple(cdga.algebra.generators[i].name for i, e in m for _ in range(e)): c for m, c in x.terms.items()
    }
    got = {
        tuple(cdga.algebra.generators[i].name for i, e in m for _ in range(e)): c
        for m, c in cdga.d(x).terms.items()
    }
    assert got == oracle.d(words)


@given(st.integers(min_value=0, max_value=2**32))
def test_random_minimal_algebras_are_sullivan(seed):
    cdga = random_minimal_cdga(random.Random(seed))
    assert check_d_squared(cdga).passed
    assert is_minimal(cdga).minimal
    assert sullivan_filtration(cdga) is not None
