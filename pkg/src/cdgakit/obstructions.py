"""Betti-level obstructions: Sasakian parity, hard Lefschetz, Gysin, c-splitting, fatness."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .linalg import RationalMatrix, rank
from .ring import FiniteRing, RingError

NOT_SASAKIAN = "not-sasakian"
NO_OBSTRUCTION = "no-obstruction"


@dataclass(frozen=True)
class BettiVector:
    """b_0..b_dim; ``None`` marks an unknown entry.

    Shorter inputs are padded with unknowns; indices beyond ``dim`` are zero.
    """

    values: tuple[int | None, ...]
    dim: int

    def __post_init__(self):
        vals = tuple(self.values)
        if self.dim < 0:
            raise ValueError("dimension must be >= 0")
        if len(vals) > self.dim + 1:
            if any(v for v in vals[self.dim + 1:]):
                raise ValueError(f"nonzero Betti number above dimension {self.dim}")
            vals = vals[: self.dim + 1]
        for v in vals:
            if v is not None and (not isinstance(v, int) or v < 0):
                raise ValueError(f"Betti numbers must be non-negative integers, got {v!r}")
        vals = vals + (None,) * (self.dim + 1 - len(vals))
        object.__setattr__(self, "values", vals)

    @classmethod
    def of(cls, values: Sequence[int | None], dim: int | None = None) -> "BettiVector":
        return cls(tuple(values), len(values) - 1 if dim is None else dim)

    def __getitem__(self, p: int) -> int | None:
        if p < 0 or p > self.dim:
            return 0
        return self.values[p]

    def known(self, p: int) -> bool:
        return self[p] is not None

    def to_list(self) -> list[int | None]:
        return list(self.values)


@dataclass(frozen=True)
class SasakianVerdict:
    dimension: int
    checked_degrees: tuple[int, ...]
    offending: tuple[tuple[int, int], ...]
    unknown_degrees: tuple[int, ...]
    informational: tuple[tuple[int, int], ...]

    @property
    def verdict(self) -> str:
        return NOT_SASAKIAN if self.offending else NO_OBSTRUCTION

    @property
    def obstructed(self) -> bool:
        return bool(self.offending)

    def to_dict(self) -> dict:
        return {
            "dimension": self.dimension,
            "checked_degrees": list(self.checked_degrees),
            "offending": [{"degree": p, "betti": b} for p, b in self.offending],
            "unknown_degrees": list(self.unknown_degrees),
            "informational_odd_above_range": [{"degree": p, "betti": b} for p, b in self.informational],
            "verdict": self.verdict,
        }


def sasaki_parity_test(b: BettiVector) -> SasakianVerdict:
    """Flag odd b_p for odd p <= n+1 on a (2n+1)-manifold.

    A necessary condition only: no obstruction does not mean Sasakian.
    """
    if b.dim % 2 == 0:
        raise ValueError(f"dimension must be odd, got {b.dim}")
    n = (b.dim - 1) // 2
    checked = tuple(range(1, n + 2, 2))
    offending = tuple((p, b[p]) for p in checked if b.known(p) and b[p] % 2)
    unknown = tuple(p for p in checked if not b.known(p))
    info = tuple(
        (p, b[p]) for p in range(n + 2, b.dim + 1) if p % 2 and b.known(p) and b[p] % 2
    )
    return SasakianVerdict(b.dim, checked, offending, unknown, info)


# -- ring maps ------------------------------------------------------------------


def _multiplication_matrix(ring: FiniteRing, x: Sequence, src: int, tgt: int) -> RationalMatrix:
    """Matrix of y -> x*y from degree ``src`` to degree ``tgt``."""
    s_idx = ring.indices(src)
    t_idx = ring.indices(tgt)
    t_pos = {k: r for r, k in enumerate(t_idx)}
    entries = {}
    for c, i in enumerate(s_idx):
        prod = ring.multiply(x, ring.unit_vector(i))
        for k, v in enumerate(prod):
            if v:
                entries[(t_pos[k], c)] = v
    return RationalMatrix(len(t_idx), len(s_idx), entries)


def _require_degree(ring: FiniteRing, v: Sequence, want: int, what: str) -> None:
    try:
        deg = ring.degree_of(v)
    except RingError:
        raise ValueError(f"{what} is not homogeneous") from None
    if deg is not None and deg != want:
        raise ValueError(f"{what} must have degree {want}, got {deg}")


@dataclass(frozen=True)
class LefschetzStep:
    p: int
    source_dim: int
    target_dim: int
    rank: int

    @property
    def isomorphism(self) -> bool:
        return self.source_dim == self.target_dim == self.rank


@dataclass(frozen=True)
class LefschetzReport:
    n: int
    steps: tuple[LefschetzStep, ...]

    @property
    def is_lefschetz(self) -> bool:
        return all(s.isomorphism for s in self.steps)

    @property
    def failing(self) -> tuple[int, ...]:
        return tuple(s.p for s in self.steps if not s.isomorphism)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "steps": [
                {"p": s.p, "source_dim": s.source_dim, "target_dim": s.target_dim,
                 "rank": s.rank, "isomorphism": s.isomorphism}
                for s in self.steps
            ],
            "lefschetz": self.is_lefschetz,
        }


def hard_lefschetz_check(ring: FiniteRing, v: Sequence) -> LefschetzReport:
    """Check that x -> v^p x maps H^(n-p) isomorphically onto H^(n+p) for p = 0..n."""
    _require_degree(ring, v, 2, "Lefschetz class")
    top = ring.top_degree
    if top % 2:
        raise ValueError(f"formal dimension must be even, got {top}")
    n = top // 2
    steps = []
    for p in range(n + 1):
        vp = ring.power(v, p)
        mat = _multiplication_matrix(ring, vp, n - p, n + p)
        steps.append(LefschetzStep(p, mat.cols, mat.rows, rank(mat)))
    return LefschetzReport(n, tuple(steps))


def gysin_betti(ring: FiniteRing, euler: Sequence, max_degree: int | None = None) -> BettiVector:
    """Betti numbers of the circle bundle over ``ring`` with Euler class ``euler``.

    b_p(E) = dim coker(L: H^(p-2) -> H^p) + dim ker(L: H^(p-1) -> H^(p+1)).
    """
    _require_degree(ring, euler, 2, "Euler class")
    top = ring.top_degree
    if max_degree is None:
        max_degree = top + 1

    def lrank(q: int) -> int:
        if q < 0 or q > top:
            return 0
        return rank(_multiplication_matrix(ring, euler, q, q + 2))

    values = []
    for p in range(max_degree + 1):
        coker = ring.dim(p) - lrank(p - 2)
        ker = ring.dim(p - 1) - lrank(p - 1)
        values.append(coker + ker)
    return BettiVector(tuple(values), top + 1)


def c_splitting_betti(fiber: BettiVector, base: BettiVector, k: int) -> int:
    """b_k of a total space whose cohomology is H*(fiber) ⊗ H*(base) as vector spaces.

    Unknown entries are allowed when they multiply a known zero.
    """
    total = 0
    for i in range(k + 1):
        f, b = fiber[i], base[k - i]
        if f == 0 or b == 0:
            continue
        if f is None or b is None:
            raise ValueError(f"b_{i}(fiber) * b_{k - i}(base) involves an unknown Betti number")
        total += f * b
    return total


@dataclass(frozen=True)
class FatnessCertificate:
    weights: tuple[int, ...]
    certified: bool
    moment_lower_bound: Fraction

    def to_dict(self) -> dict:
        return {
            "weights": list(self.weights),
            "certified": self.certified,
            "moment_lower_bound": f"{self.moment_lower_bound.numerator}/{self.moment_lower_bound.denominator}",
        }


def fatness_weight_certificate(weights: Sequence[int]) -> FatnessCertificate:
    """min over the unit sphere of sum w_i |z_i|^2 is min w_i; certified iff positive."""
    w = tuple(int(x) for x in weights)
    if not w:
        raise ValueError("weight vector must be nonempty")
    bound = Fraction(min(w))
    return FatnessCertificate(w, bound > 0, bound)
