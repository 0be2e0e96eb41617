"""Finite-dimensional graded rings given by structure constants.

JSON schema (exact rationals as ``"p/q"`` strings)::

    {"basis": [{"label": "[1]", "degree": 0}, ...],
     "products": [{"i": 1, "j": 2, "coords": ["0/1", ..., "1/1"]}, ...]}

``coords`` has one entry per basis element.  Omitted products are zero,
except that products with the degree-0 unit are implied, and a missing
``(j, i)`` is filled from ``(i, j)`` by graded commutativity.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .graded import format_rational


class RingError(ValueError):
    pass


@dataclass(frozen=True)
class BasisElement:
    label: str
    degree: int


def rational_string(c: Fraction) -> str:
    c = Fraction(c)
    return f"{c.numerator}/{c.denominator}"


def parse_rational(text) -> Fraction:
    if isinstance(text, int) and not isinstance(text, bool):
        return Fraction(text)
    if not isinstance(text, str):
        raise RingError(f"expected a rational string, got {text!r}")
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise RingError(f"bad rational {text!r}") from None


class FiniteRing:
    """Graded ring with basis ``basis`` and products ``(i, j) -> coordinates``."""

    def __init__(
        self,
        basis: Sequence[BasisElement],
        products: Mapping[tuple[int, int], Sequence],
        complete: bool = False,
    ):
        self.basis = tuple(basis)
        n = len(self.basis)
        labels = [b.label for b in self.basis]
        if len(set(labels)) != n:
            raise RingError("basis labels must be unique")
        self._label_index = {b.label: k for k, b in enumerate(self.basis)}
        units = [k for k, b in enumerate(self.basis) if b.degree == 0]
        if len(units) != 1:
            raise RingError("exactly one degree-0 basis element (the unit) is required")
        self.unit = units[0]
        table: dict[tuple[int, int], tuple[Fraction, ...]] = {}
        for (i, j), coords in products.items():
            if not (0 <= i < n and 0 <= j < n):
                raise RingError(f"product index ({i}, {j}) out of range")
            coords = tuple(Fraction(c) for c in coords)
            if len(coords) != n:
                raise RingError(f"product ({i}, {j}) has {len(coords)} coordinates, expected {n}")
            q = self.basis[i].degree + self.basis[j].degree
            for k, c in enumerate(coords):
                if c and self.basis[k].degree != q:
                    raise RingError(f"product ({i}, {j}) is not homogeneous of degree {q}")
            if any(coords):
                table[(i, j)] = coords
        if not complete:
            u = self.unit
            for k in range(n):
                e = tuple(Fraction(int(t == k)) for t in range(n))
                table.setdefault((u, k), e)
                table.setdefault((k, u), e)
            for (i, j), coords in list(table.items()):
                if (j, i) not in table:
                    s = (-1) ** (self.basis[i].degree * self.basis[j].degree)
                    table[(j, i)] = tuple(s * c for c in coords)
        self.products = table

    # -- queries ------------------------------------------------------------

    def __len__(self):
        return len(self.basis)

    def __eq__(self, other):
        return isinstance(other, FiniteRing) and self.basis == other.basis and self.products == other.products

    @property
    def top_degree(self) -> int:
        return max(b.degree for b in self.basis)

    def indices(self, p: int) -> list[int]:
        return [k for k, b in enumerate(self.basis) if b.degree == p]

    def dim(self, p: int) -> int:
        return len(self.indices(p))

    def betti(self) -> tuple[int, ...]:
        return tuple(self.dim(p) for p in range(self.top_degree + 1))

    def index(self, label: str) -> int:
        try:
            return self._label_index[label]
        except KeyError:
            raise RingError(f"unknown basis label {label!r}") from None

    def vector(self, terms: Mapping[int, Fraction] | None = None) -> list[Fraction]:
        v = [Fraction(0)] * len(self.basis)
        for k, c in (terms or {}).items():
            v[k] = Fraction(c)
        return v

    def unit_vector(self, k: int) -> list[Fraction]:
        return self.vector({k: 1})

    def one(self) -> list[Fraction]:
        return self.unit_vector(self.unit)

    def degree_of(self, v: Sequence) -> int | None:
        degs = {self.basis[k].degree for k, c in enumerate(v) if c}
        if len(degs) > 1:
            raise RingError("vector is not homogeneous")
        return degs.pop() if degs else None

    def multiply(self, x: Sequence, y: Sequence) -> list[Fraction]:
        out = [Fraction(0)] * len(self.basis)
        for i, a in enumerate(x):
            if not a:
                continue
            for j, b in enumerate(y):
                if not b:
                    continue
                coords = self.products.get((i, j))
                if coords:
                    ab = a * b
                    for k, c in enumerate(coords):
                        if c:
                            out[k] += ab * c
        return out

    def power(self, x: Sequence, k: int) -> list[Fraction]:
        result = self.one()
        for _ in range(k):
            result = self.multiply(result, x)
        return result

    def render(self, v: Sequence) -> str:
        parts = []
        for k, c in enumerate(v):
            if not c:
                continue
            mag = abs(c)
            body = self.basis[k].label if mag == 1 else f"{format_rational(mag)}*{self.basis[k].label}"
            if parts:
                parts.append(f"{'-' if c < 0 else '+'} {body}")
            else:
                parts.append(f"-{body}" if c < 0 else body)
        return " ".join(parts) or "0"

    # -- consistency --------------------------------------------------------

    def graded_commutativity_violations(self) -> list[tuple[int, int]]:
        bad = []
        n = len(self.basis)
        for i in range(n):
            for j in range(i, n):
                s = (-1) ** (self.basis[i].degree * self.basis[j].degree)
                zero = (Fraction(0),) * n
                a = self.products.get((i, j), zero)
                b = self.products.get((j, i), zero)
                if tuple(s * c for c in b) != tuple(a):
                    bad.append((i, j))
        return bad

    def associativity_violations(self) -> list[tuple[int, int, int]]:
        bad = []
        n = len(self.basis)
        for i in range(n):
            ei = self.unit_vector(i)
            for j in range(n):
                eij = self.multiply(ei, self.unit_vector(j))
                for k in range(n):
                    ek = self.unit_vector(k)
                    if self.multiply(eij, ek) != self.multiply(ei, self.multiply(self.unit_vector(j), ek)):
                        bad.append((i, j, k))
        return bad

    # -- text/JSON ----------------------------------------------------------

    def parse_combination(self, text: str) -> list[Fraction]:
        """Parse ``"2*[a] - 1/3*[b]"``-style combinations of basis labels."""
        v = self.vector()
        chunks = _split_terms(text)
        if not chunks:
            raise RingError("empty class expression")
        for sign, chunk in chunks:
            coeff = Fraction(sign)
            body = chunk.strip()
            if body in self._label_index:
                label = body
            else:
                m = re.match(r"^(\d+(?:/\d+)?)\s*\*?\s*(.+)$", body)
                if not m or m.group(2).strip() not in self._label_index:
                    raise RingError(f"cannot parse class term {body!r}")
                coeff *= Fraction(m.group(1))
                label = m.group(2).strip()
            v[self._label_index[label]] += coeff
        return v

    def to_dict(self) -> dict:
        return {
            "basis": [{"label": b.label, "degree": b.degree} for b in self.basis],
            "products": [
                {"i": i, "j": j, "coords": [rational_string(c) for c in coords]}
                for (i, j), coords in sorted(self.products.items())
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> "FiniteRing":
        try:
            basis = [BasisElement(str(b["label"]), int(b["degree"])) for b in data["basis"]]
            products = {}
            for entry in data.get("products", []):
                key = (int(entry["i"]), int(entry["j"]))
                if key in products:
                    raise RingError(f"duplicate product entry {key}")
                products[key] = [parse_rational(c) for c in entry["coords"]]
        except (KeyError, TypeError) as exc:
            raise RingError(f"malformed ring document: {exc}") from None
        for b in basis:
            if b.degree < 0:
                raise RingError(f"negative degree for {b.label!r}")
        return cls(basis, products)

    @classmethod
    def from_json(cls, text: str) -> "FiniteRing":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise RingError(f"invalid JSON: {exc}") from None
        return cls.from_dict(data)


def _split_terms(text: str) -> list[tuple[int, str]]:
    """Split on top-level + and - (brackets protect label contents)."""
    terms = []
    depth = 0
    sign = 1
    buf = ""
    for ch in text:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        if depth == 0 and ch in "+-":
            if buf.strip():
                terms.append((sign, buf))
                buf = ""
                sign = 1
            if ch == "-":
                sign = -sign
            continue
        buf += ch
    if buf.strip():
        terms.append((sign, buf))
    return terms


def truncated_polynomial_ring(name: str, degree: int, height: int) -> FiniteRing:
    """Q[v]/(v^(height+1)) with |v| = degree; e.g. H*(CP^n) is (2, n)."""
    basis = [BasisElement("[1]" if k == 0 else (f"[{name}]" if k == 1 else f"[{name}^{k}]"), k * degree)
             for k in range(height + 1)]
    n = len(basis)
    products = {}
    for i in range(n):
        for j in range(n):
            if i + j <= height:
                products[(i, j)] = tuple(Fraction(int(k == i + j)) for k in range(n))
    return FiniteRing(basis, products, complete=True)
