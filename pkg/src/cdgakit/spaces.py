"""Ready-made models, Betti data for spaces given only by citation, and the
end-to-end K-contact / non-Sasakian pipeline."""

from __future__ import annotations

from dataclasses import dataclass
from math import prod
from typing import Callable, Sequence

from .cdga import CDGA, is_minimal, tensor
from .cohomology import class_is_zero, cohomology_table, is_cocycle
from .graded import Element, GradedAlgebra, render
from .obstructions import (
    BettiVector,
    FatnessCertificate,
    SasakianVerdict,
    c_splitting_betti,
    fatness_weight_certificate,
    sasaki_parity_test,
)
from .sullivan import HypothesisError, LemmaReport, NotSimplyConnected, sphere_bundle_model, verify_lemma_rel3


def sphere(n: int) -> CDGA:
    """Minimal model of S^n: Λ(z; dz=0) for odd n, Λ(v, y; dy=v^2) for even n."""
    if n < 1:
        raise ValueError("sphere dimension must be >= 1")
    if n % 2:
        return CDGA(GradedAlgebra([("z", n)]), name=f"sphere{n}")
    alg = GradedAlgebra([("v", n), ("y", 2 * n - 1)])
    return CDGA(alg, {"y": alg.gen("v") ** 2}, name=f"sphere{n}")


def cpn(n: int) -> CDGA:
    """Λ(v_2, y_(2n+1); dy = v^(n+1)), the minimal model of CP^n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    alg = GradedAlgebra([("v", 2), ("y", 2 * n + 1)])
    return CDGA(alg, {"y": alg.gen("v") ** (n + 1)}, name=f"cp{n}")


def kodaira_thurston() -> CDGA:
    """Λ(alpha, beta, gamma, delta all of degree 1; d gamma = alpha*beta)."""
    alg = GradedAlgebra([("alpha", 1), ("beta", 1), ("gamma", 1), ("delta", 1)])
    return CDGA(alg, {"gamma": alg.gen("alpha") * alg.gen("beta")}, name="kodaira_thurston")


def torus(n: int) -> CDGA:
    """Λ(t1..tn all of degree 1; d = 0), the model of T^n."""
    alg = GradedAlgebra([(f"t{i}", 1) for i in range(1, n + 1)])
    return CDGA(alg, name=f"torus{n}")


def product(a: CDGA, b: CDGA) -> CDGA:
    return tensor(a, b)


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    description: str
    dimension: int
    model: Callable[[], CDGA] | None = None
    betti: BettiVector | None = None
    citation: str | None = None

    @property
    def kind(self) -> str:
        return "cdga" if self.model is not None else "betti"


# Only b0, b1, b3 of the blow-ups are used; b1 = 0 because they are simply connected.
BLOWUP_CP5 = BettiVector((1, 0, None, 3), 10)
BLOWUP_CP6 = BettiVector((1, 0, None, 3), 12)


def catalog() -> dict[str, CatalogEntry]:
    entries = [
        CatalogEntry("sphere2", "2-sphere", 2, lambda: sphere(2)),
        CatalogEntry("sphere3", "3-sphere", 3, lambda: sphere(3)),
        CatalogEntry("sphere5", "5-sphere", 5, lambda: sphere(5)),
        CatalogEntry("cp1", "complex projective line", 2, lambda: cpn(1)),
        CatalogEntry("cp2", "complex projective plane", 4, lambda: cpn(2)),
        CatalogEntry("cp3", "complex projective 3-space", 6, lambda: cpn(3)),
        CatalogEntry("cp5", "complex projective 5-space", 10, lambda: cpn(5)),
        CatalogEntry("torus2", "2-torus", 2, lambda: torus(2)),
        CatalogEntry("torus4", "4-torus", 4, lambda: torus(4)),
        CatalogEntry("kodaira_thurston", "Kodaira-Thurston nilmanifold (N3/Γ)×(R/Z)", 4, kodaira_thurston),
        CatalogEntry("sphere2*sphere2", "product of two 2-spheres", 4, lambda: product(sphere(2), sphere(2))),
        CatalogEntry("sphere2*sphere3", "product of S^2 and S^3", 5, lambda: product(sphere(2), sphere(3))),
        CatalogEntry("cp1*cp2", "product CP^1 × CP^2", 6, lambda: product(cpn(1), cpn(2))),
        CatalogEntry(
            "blowup_cp5",
            "CP^5 blown up along a symplectically embedded Kodaira-Thurston manifold",
            10,
            betti=BLOWUP_CP5,
            citation="McDuff's blow-up: b3 = 3",
        ),
        CatalogEntry(
            "blowup_cp6",
            "CP^6 blown up along a Kodaira-Thurston manifold in a fixed hyperplane",
            12,
            betti=BLOWUP_CP6,
            citation="blow-up along the Kodaira-Thurston manifold: b3 = 3",
        ),
    ]
    return {e.name: e for e in entries}


def lookup(name: str) -> CatalogEntry:
    """Catalog entry by name; ``sphereN``, ``cpN``, ``torusN`` and ``a*b`` products of CDGA entries also resolve."""
    table = catalog()
    if name in table:
        return table[name]
    if "*" in name:
        parts = [lookup(p) for p in name.split("*")]
        if any(p.model is None for p in parts):
            raise KeyError(f"products are only available for CDGA entries: {name!r}")

        def build(parts=parts):
            out = parts[0].model()
            for p in parts[1:]:
                out = product(out, p.model())
            return out

        return CatalogEntry(name, " × ".join(p.description for p in parts), sum(p.dimension for p in parts), build)
    for prefix, ctor, dim in (("sphere", sphere, lambda n: n), ("cp", cpn, lambda n: 2 * n),
                              ("torus", torus, lambda n: n)):
        if name.startswith(prefix) and name[len(prefix):].isdigit():
            n = int(name[len(prefix):])
            return CatalogEntry(name, f"{prefix} {n}", dim(n), lambda n=n, ctor=ctor: ctor(n))
    raise KeyError(f"unknown catalog entry {name!r}")


# -- pipeline ---------------------------------------------------------------------


@dataclass(frozen=True)
class PipelineReport:
    base_name: str
    omega: str
    weights: tuple[int, ...]
    fiber_dimension: int
    euler_class: str
    dimension: int
    betti: BettiVector
    sasakian: SasakianVerdict
    fatness: FatnessCertificate
    lemma: LemmaReport | None = None
    model: CDGA | None = None
    mode: str = "cdga"

    def __post_init__(self):
        b3 = self.betti[3]
        if b3 is not None and b3 % 2 and self.dimension >= 5 and not self.sasakian.obstructed:
            raise AssertionError("odd b3 must give a not-sasakian verdict")

    def to_dict(self) -> dict:
        return {
            "base": self.base_name,
            "mode": self.mode,
            "omega": self.omega,
            "weights": list(self.weights),
            "fiber_dimension": self.fiber_dimension,
            "euler_class": self.euler_class,
            "dimension": self.dimension,
            "betti": self.betti.to_list(),
            "sasakian": self.sasakian.to_dict(),
            "fatness": self.fatness.to_dict(),
            "lemma_rel3": None if self.lemma is None else {
                "b3_before": self.lemma.b3_before, "b3_after": self.lemma.b3_after, "equal": self.lemma.equal,
            },
        }


def _formal_dimension(cdga: CDGA, max_degree: int) -> int:
    table = cohomology_table(cdga, max_degree)
    return max(p for p, b in enumerate(table.betti) if b)


def k_contact_pipeline(
    base: CDGA | BettiVector,
    omega: Element | None = None,
    weights: Sequence[int] = (1, 1),
    max_degree: int | None = None,
    base_name: str | None = None,
    base_dimension: int | None = None,
) -> PipelineReport:
    """Sphere bundle P ×_{S^1} S^(2n+1) over a symplectic base, n + 1 = len(weights).

    With a CDGA base the bundle model is built with Euler class
    (prod w_i) [omega]^(n+1) and its cohomology computed.  With Betti data
    the rule b_p(M) = b_p(X) for p <= 3 is applied (degree 3 by the
    relative-model lemma for S^3 fibers, by connectivity for larger fibers).
    """
    weights = tuple(int(w) for w in weights)
    fat = fatness_weight_certificate(weights)
    n = len(weights) - 1
    k = 2 * n + 1
    scale = prod(weights)

    if isinstance(base, BettiVector):
        if base[1] is None or base[1] != 0:
            raise NotSimplyConnected("base must have b1 = 0")
        if n == 0:
            raise HypothesisError("circle bundles need the cohomology ring; use gysin_betti")
        dim = base.dim + k
        values = [base[p] for p in range(4)]
        betti = BettiVector(tuple(values), dim)
        return PipelineReport(
            base_name or "betti-data",
            "[omega]",
            weights,
            k,
            ("" if scale == 1 else f"{scale}*") + f"[omega]^{n + 1}",
            dim,
            betti,
            sasaki_parity_test(betti),
            fat,
            mode="betti",
        )

    if omega is None:
        raise ValueError("omega representative is required for a CDGA base")
    if omega.algebra != base.algebra:
        raise ValueError("omega must live in the base algebra")
    if not omega.is_homogeneous() or omega.degree != 2 or not is_cocycle(base, omega):
        raise ValueError("omega must be a degree-2 cocycle")
    if cohomology_table(base, 1).betti[1] != 0:
        raise NotSimplyConnected("base must have b1 = 0")
    euler = (omega ** (n + 1)).scale(scale)
    if class_is_zero(base, euler):
        raise HypothesisError(f"Euler class {render(euler)} is exact; the sphere bundle has zero Euler class")
    if max_degree is None:
        raise ValueError("max_degree is required for a CDGA base")
    if base_dimension is None:
        base_dimension = _formal_dimension(base, max_degree)
    dim = base_dimension + k
    model = sphere_bundle_model(base, euler, k)
    table = cohomology_table(model, max_degree)
    betti = BettiVector(table.betti[: dim + 1], dim)
    lemma = None
    if k == 3 and is_minimal(base) and not any(g.degree == 1 for g in base.generators):
        lemma = verify_lemma_rel3(base, euler)
    return PipelineReport(
        base_name or base.name or "cdga",
        render(omega),
        weights,
        k,
        render(euler),
        dim,
        betti,
        sasaki_parity_test(betti),
        fat,
        lemma=lemma,
        model=model,
    )


@dataclass(frozen=True)
class WeinsteinReport:
    degree: int
    betti: int
    kahler_obstructed: bool

    def to_dict(self) -> dict:
        return {"degree": self.degree, "betti": self.betti, "non_kahler": self.kahler_obstructed}


def weinstein_example(k: int = 3) -> WeinsteinReport:
    """b_k of S^3 ×_{S^1} (blown-up CP^6) over S^2 by c-splitting."""
    sphere2 = BettiVector((1, 0, 1), 2)
    b = c_splitting_betti(BLOWUP_CP6, sphere2, k)
    return WeinsteinReport(k, b, bool(k % 2 and b % 2))
