import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from cdgakit.graded import (
    AlgebraMismatch,
    Generator,
    GradedAlgebra,
    basis,
    basis_count,
    evaluate,
    multiply,
    normalize,
    render,
)

from conftest import random_element
from oracles import WordAlgebra, series_basis_count


@pytest.fixture
def xy():
    return GradedAlgebra([("x", 3), ("y", 3)])


def test_normalize_sorted_odd_pair(xy):
    assert normalize(xy, ["x", "y"]) == (1, ((0, 1), (1, 1)))


def test_normalize_single_transposition(xy):
    assert normalize(xy, ["y", "x"]) == (-1, ((0, 1), (1, 1)))


def test_normalize_odd_square_vanishes(xy):
    assert normalize(xy, ["x", "x"])[0] == 0


def test_even_generator_squares_freely():
    alg = GradedAlgebra([("v", 2)])
    v = alg.gen("v")
    assert render(v * v) == "v^2"


def test_odd_generator_squares_to_zero():
    alg = GradedAlgebra([("y", 3)])
    assert alg.gen("y") * alg.gen("y") == 0


def test_product_with_square_term():
    alg = GradedAlgebra([("v", 2), ("y", 3)])
    v, y = alg.gens()
    assert multiply(v + y, y) == v * y


def test_basis_examples():
    assert [GradedAlgebra([("v", 2)]).render_monomial(m) for m in basis(GradedAlgebra([("v", 2)]), 6)] == ["v^3"]
    kt = GradedAlgebra([(n, 1) for n in ("alpha", "beta", "gamma", "delta")])
    assert len(basis(kt, 2)) == 6
    alg = GradedAlgebra([("v", 2), ("y", 3)])
    assert [alg.render_monomial(m) for m in basis(alg, 7)] == ["v^2*y"]


def test_basis_degree_zero_is_unit():
    alg = GradedAlgebra([("v", 2)])
    assert basis(alg, 0) == [()]
    assert basis(alg, 1) == []


def test_generator_validation():
    with pytest.raises(ValueError):
        Generator("g", 0)
    with pytest.raises(ValueError):
        GradedAlgebra([("a", 2), ("a", 3)])


def test_mixed_algebras_rejected():
    a = GradedAlgebra([("v", 2)])
    b = GradedAlgebra([("w", 2)])
    with pytest.raises(AlgebraMismatch):
        a.gen("v") + b.gen("w")


def test_degree_of_inhomogeneous_raises():
    alg = GradedAlgebra([("v", 2), ("y", 3)])
    x = alg.gen("v") + alg.gen("y")
    assert not x.is_homogeneous()
    with pytest.raises(ValueError):
        x.degree


def test_zero_has_no_degree():
    assert GradedAlgebra([("v", 2)]).zero().degree is None


def test_render_rationals():
    alg = GradedAlgebra([("v", 2), ("x", 3), ("y", 3)])
    v, x, y = alg.gens()
    assert render(v.scale(2) ** 1 * v - (x * y).scale(Fraction(1, 3))) == "2*v^2 - 1/3*x*y"
    assert render(alg.zero()) == "0"


def test_evaluate_is_multiplicative():
    src = GradedAlgebra([("a", 2), ("b", 3)])
    tgt = GradedAlgebra([("u", 1), ("w", 1), ("t", 2)])
    u, w, t = tgt.gens()
    images = [u * w, t * u]
    a, b = src.gens()
    assert evaluate(a * b, images, tgt) == (u * w) * (t * u)
    assert evaluate(b * b, images, tgt) == 0


@pytest.mark.parametrize(
    "degrees",
    [(2,), (1, 1, 1, 1), (2, 3), (2, 2, 3), (1, 2, 4), (3, 3, 5), (2, 4, 4, 7)],
)
def test_basis_count_matches_series_oracle(degrees):
    alg = GradedAlgebra([(f"g{i}", d) for i, d in enumerate(degrees)])
    for p in range(0, 13):
        expected = series_basis_count(degrees, p)
        assert basis_count(degrees, p) == expected
        assert len(alg.basis(p)) == expected


def test_basis_matches_word_oracle():
    gens = [("a", 1), ("b", 2), ("c", 3), ("d", 2)]
    alg = GradedAlgebra(gens)
    oracle = WordAlgebra(gens)
    for p in range(9):
        assert len(alg.basis(p)) == len(oracle.basis(p))


degrees = st.lists(st.integers(min_value=1, max_value=5), min_size=1, max_size=5)


@given(degrees, st.lists(st.integers(min_value=0, max_value=4), min_size=1, max_size=7))
def test_normalize_agrees_with_bubble_sort(degs, picks):
    gens = [(f"g{i}", d) for i, d in enumerate(degs)]
    alg = GradedAlgebra(gens)
    oracle = WordAlgebra(gens)
    word = [f"g{i % len(degs)}" for i in picks]
    sign, mono = alg.normalize(word)
    osign, oword = oracle.normalize_word(word)
    assert sign == osign
    if sign:
        assert tuple(alg.generators[i].name for i, e in mono for _ in range(e)) == oword


@given(degrees, st.integers(min_value=0, max_value=2**32))
def test_ring_laws(degs, seed):
    rng = random.Random(seed)
    alg = GradedAlgebra([(f"g{i}", d) for i, d in enumerate(degs)])
    p, q, r = (rng.randint(0, 6) for _ in range(3))
    x, y, z = (random_element(rng, alg, k) for k in (p, q, r))
    assert x * y == (y * x).scale((-1) ** (p * q))
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert alg.one() * x == x == x * alg.one()
    assert x - x == 0


@given(st.integers(min_value=1, max_value=6), st.integers(min_value=0, max_value=2**32))
def test_odd_elements_square_to_zero(deg, seed):
    rng = random.Random(seed)
    alg = GradedAlgebra([("a", 1), ("b", 3), ("c", 2), ("e", 5)])
    odd = 2 * deg - 1
    x = random_element(rng, alg, odd, 4)
    assert x * x == 0


@given(degrees, st.integers(min_value=0, max_value=12))
def test_basis_is_sorted_and_homogeneous(degs, p):
    alg = GradedAlgebra([(f"g{i}", d) for i, d in enumerate(degs)])
    b = alg.basis(p)
    assert b == sorted(b, key=alg.monomial_key)
    assert len(set(b)) == len(b)
    assert all(alg.monomial_degree(m) == p for m in b)
    assert all(e == 1 for m in b for i, e in m if alg.is_odd(i))
