"""Acceptance criteria; each test prints a single PASS/FAIL line."""

import random
import time
from fractions import Fraction

import pytest

from cdgakit import cli
from cdgakit.cdga import CDGA, check_d_squared, is_minimal, tensor
from cdgakit.cohomology import cohomology_table, extract_ring
from cdgakit.graded import GradedAlgebra
from cdgakit.obstructions import (
    BettiVector,
    c_splitting_betti,
    gysin_betti,
    hard_lefschetz_check,
)
from cdgakit.ring import FiniteRing
from cdgakit.spaces import BLOWUP_CP5, catalog, cpn, k_contact_pipeline, kodaira_thurston, sphere, torus
from cdgakit.sullivan import minimal_model, verify_lemma_rel3

from conftest import random_degree4_class, random_element, random_minimal_cdga
from oracles import word_algebra_from

pytestmark = pytest.mark.acceptance


@pytest.fixture
def report(capsys):
    def emit(number: int, ok: bool, detail: str):
        with capsys.disabled():
            print(f"\nACCEPTANCE {number}: {'PASS' if ok else 'FAIL'}  {detail}")
        assert ok, detail

    return emit


def test_criterion_1_cpn_cohomology(report):
    start = time.perf_counter()
    results = {n: cohomology_table(cpn(n), 2 * n + 1).betti for n in range(1, 6)}
    elapsed = time.perf_counter() - start
    ok = elapsed < 10.0
    bad = []
    for n, betti in results.items():
        expected = tuple(1 if p % 2 == 0 else 0 for p in range(2 * n + 1)) + (0,)
        oracle = word_algebra_from(cpn(n)).betti(2 * n + 1)
        if betti != expected or oracle != expected:
            bad.append(n)
    ok = ok and not bad
    report(1, ok, f"CP^n n=1..5 exact vs dense oracle, mismatches={bad}, {elapsed:.2f}s (< 10s)")


# Hand-computed ranks of d on Λ(alpha, beta, gamma, delta; d gamma = alpha beta).
# Degree 1: only gamma is not closed.  Degree 2: only gamma delta is not closed,
# d(gamma delta) = alpha beta delta.  Degree 3: every monomial is closed.
KT_DIMS = (1, 4, 6, 4, 1)
KT_RANKS = (0, 1, 1, 0, 0)
KT_BETTI = tuple(KT_DIMS[p] - KT_RANKS[p] - (KT_RANKS[p - 1] if p else 0) for p in range(5))


def test_criterion_2_kodaira_thurston(report):
    betti = cohomology_table(kodaira_thurston(), 4).betti
    ok = betti == KT_BETTI == (1, 3, 4, 3, 1)
    report(2, ok, f"Kodaira-Thurston Betti {betti}, expected (1, 3, 4, 3, 1)")


def test_criterion_3_relative_lemma_suite(report):
    rng = random.Random(20240917)
    start = time.perf_counter()
    instances = failures = 0
    while instances < 100:
        base = random_minimal_cdga(rng)
        z = random_degree4_class(rng, base)
        if z is None:
            continue
        assert is_minimal(base).minimal
        assert all(g.degree >= 2 for g in base.generators)
        instances += 1
        if not verify_lemma_rel3(base, z).equal:
            failures += 1
    elapsed = time.perf_counter() - start
    ok = failures == 0 and instances >= 50 and elapsed < 60.0
    report(3, ok, f"{instances} random minimal CDGAs, {failures} b3 mismatches, {elapsed:.2f}s (< 60s)")


def _ring(name: str) -> FiniteRing:
    entry = catalog()[name]
    return extract_ring(entry.model(), entry.dimension)


def test_criterion_4_gysin(report):
    s2 = _ring("sphere2")
    cp2 = _ring("cp2")
    v2 = s2.unit_vector(s2.index("[v]"))
    vc = cp2.unit_vector(cp2.index("[v]"))
    got_s2 = gysin_betti(s2, v2).to_list()
    got_cp2 = gysin_betti(cp2, vc).to_list()
    trivial_ok = True
    for name in ("sphere2", "cp2", "kodaira_thurston", "sphere2*sphere2", "cp3"):
        ring = _ring(name)
        b = ring.betti()
        e = gysin_betti(ring, ring.vector()).to_list()
        want = [(b[p] if p < len(b) else 0) + (b[p - 1] if 0 < p <= len(b) else 0) for p in range(len(b) + 1)]
        trivial_ok &= e == want
    ok = got_s2 == [1, 0, 0, 1] and got_cp2 == [1, 0, 0, 0, 0, 1] and trivial_ok
    report(4, ok, f"S^2 -> {got_s2}, CP^2 -> {got_cp2}, euler=0 rule holds: {trivial_ok}")


def _degree2_candidates(ring: FiniteRing):
    idx = ring.indices(2)
    yield from (ring.unit_vector(i) for i in idx)
    if len(idx) > 1:
        yield ring.vector({i: Fraction(1) for i in idx})


def _lefschetz_gysin_parity(bound):
    """(checked pairs, offending (name, p, b_p)) for odd p <= bound(n) over Lefschetz catalog rings."""
    checked, offending = 0, []
    for name, entry in catalog().items():
        if entry.model is None or entry.dimension % 2:
            continue
        ring = _ring(name)
        n = entry.dimension // 2
        for v in _degree2_candidates(ring):
            if not hard_lefschetz_check(ring, v).is_lefschetz:
                continue
            checked += 1
            e = gysin_betti(ring, v)
            offending += [(name, p, e[p]) for p in range(1, bound(n) + 1, 2) if e[p] % 2]
    return checked, offending


# Counterexample: the class [v] + [v_1] on S^2 x S^2 is Lefschetz and its circle
# bundle is S^2 x S^3 with b_3 = 1 at p = 3 = n + 1.  The Gysin argument needs
# L_v: H^(p-1) -> H^(p+1) injective, which hard Lefschetz gives only for p <= n.
@pytest.mark.xfail(strict=True, reason="parity at p = n + 1 is false; see S^2 x S^2 with class [v] + [v_1]")
def test_criterion_5_lefschetz_implies_even_betti(report):
    checked, offending = _lefschetz_gysin_parity(lambda n: n + 1)
    ok = checked > 0 and not offending
    report(5, ok, f"{checked} Lefschetz (ring, class) pairs, odd b_p at odd p <= n+1: {offending}")


def test_criterion_5_parity_through_n(capsys):
    checked, offending = _lefschetz_gysin_parity(lambda n: n)
    with capsys.disabled():
        print(f"\nACCEPTANCE 5 (p <= n form): {'PASS' if not offending else 'FAIL'}  {checked} pairs, offending={offending}")
    assert checked > 0 and not offending


def test_criterion_6_pipeline(report, capsys):
    rep = k_contact_pipeline(BLOWUP_CP5, weights=(1, 1), base_name="blowup_cp5")
    code = cli.main(["pipeline", "--base", "blowup_cp5", "--weights", "1,1"])
    capsys.readouterr()
    ok = (
        rep.dimension == 13
        and rep.betti[3] == 3
        and rep.sasakian.verdict == "not-sasakian"
        and rep.fatness.moment_lower_bound == 1
        and code == 1
    )
    report(
        6, ok,
        f"dim={rep.dimension} b3={rep.betti[3]} verdict={rep.sasakian.verdict} "
        f"fatness={rep.fatness.moment_lower_bound} exit={code}",
    )


def test_criterion_7_weinstein(report):
    fiber = BettiVector((1, 0, None, 3), 12)
    got = c_splitting_betti(fiber, BettiVector((1, 0, 1), 2), 3)
    report(7, got == 3, f"c-splitting b3 = {got}, expected 3")


def test_criterion_8_minimal_model(report):
    # Λ(a2, b4, c3; dc = b): the stated input with b in degree 2 cannot carry dc = b,
    # so b is placed in degree 4, keeping the contractible pair (c, b).
    alg = GradedAlgebra([("a", 2), ("b", 4), ("c", 3)])
    target = CDGA(alg, {"c": alg.gen("b")})
    start = time.perf_counter()
    mm = minimal_model(target, 8)
    betti = cohomology_table(mm.model, 8).betti
    ok_main = betti == (1, 0, 1, 0, 1, 0, 1, 0, 1) and mm.certified and is_minimal(mm.model).minimal

    already = [sphere(2), sphere(3), cpn(2), tensor(sphere(3), sphere(3)), tensor(cpn(1), sphere(4))]
    iso = True
    for m in already:
        res = minimal_model(m, 8)
        degs = sorted(g.degree for g in res.model.generators)
        iso &= res.certified and is_minimal(res.model).minimal and degs == sorted(g.degree for g in m.generators)
    elapsed = time.perf_counter() - start
    ok = ok_main and iso and elapsed < 30.0
    report(8, ok, f"model Betti {betti}, certified={mm.certified}, self-isomorphic={iso}, {elapsed:.2f}s (< 30s)")


def test_criterion_9_algebra_laws(report):
    rng = random.Random(7)
    pool = [kodaira_thurston(), cpn(2), sphere(4), torus(3), tensor(sphere(2), sphere(3))]
    while len(pool) < 12:
        pool.append(random_minimal_cdga(rng))
    checks = failures = 0

    def check(cond):
        nonlocal checks, failures
        checks += 1
        failures += not cond

    while checks < 10_000:
        cdga = rng.choice(pool)
        alg = cdga.algebra
        p, q, r = (rng.randint(0, 5) for _ in range(3))
        x, y, z = (random_element(rng, alg, deg, 2) for deg in (p, q, r))
        # Koszul commutation
        check(x * y == (y * x).scale(-1 if (p * q) % 2 else 1))
        # associativity
        check((x * y) * z == x * (y * z))
        # Leibniz
        check(cdga.d(x * y) == cdga.d(x) * y + (x * cdga.d(y)).scale(-1 if p % 2 else 1))
        # d^2 = 0 on elements and on tensor products
        check(not cdga.d(cdga.d(x)))
        if rng.random() < 0.02:
            other = rng.choice(pool)
            check(check_d_squared(tensor(cdga, other)).passed)
    report(9, failures == 0, f"{checks} randomized law checks, {failures} failures")
