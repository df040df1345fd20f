"""Solutions of vector systems inside the box [1,n]^d.

Points are d-tuples of positive integers; a solution tuple is an ordered list
of k points whose i-th coordinate row satisfies the i-th scalar system
exactly.  Enumeration works per coordinate by iterating the free columns of
the reduced echelon form and solving the pivot columns exactly, then takes
the Cartesian product across coordinates.  Every enumeration is guarded by a
candidate budget so oversized requests fail fast instead of running for
hours.

Degeneracy: a point set is degenerate when all points are positive integer
multiples of one common direction.  Since parallel integer points share a
primitive direction and integrality of the multipliers is then automatic, the
classifier divides the first point by the gcd of its coordinates and tests
everything against that single candidate direction.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass
from itertools import product
from math import gcd, lcm, prod
from typing import Iterable, Iterator

from .errors import BudgetExceededError, DimensionMismatchError, SystemFormatError
from .exactmath import rref
from .systems import ScalarSystem, VectorSystem

DEFAULT_BUDGET = 10**8

Point = tuple[int, ...]


def point_index(point: Point, n: int) -> int:
    """Lexicographic index of a point in [1,n]^d: (1,1,..) -> 0, (1,..,2) -> 1."""
    idx = 0
    for c in point:
        idx = idx * n + (c - 1)
    return idx


def index_point(idx: int, n: int, d: int) -> Point:
    coords = []
    for _ in range(d):
        idx, rem = divmod(idx, n)
        coords.append(rem + 1)
    return tuple(reversed(coords))


def box_points(n: int, d: int) -> Iterator[Point]:
    """All points of [1,n]^d in lexicographic order."""
    return product(range(1, n + 1), repeat=d)


@dataclass(frozen=True)
class SolutionTuple:
    """k points whose coordinate rows satisfy the per-coordinate systems."""

    points: tuple[Point, ...]

    @property
    def k(self) -> int:
        return len(self.points)

    @property
    def dimension(self) -> int:
        return len(self.points[0])

    def coordinate_row(self, i: int) -> tuple[int, ...]:
        return tuple(p[i] for p in self.points)


@dataclass(frozen=True)
class Coloring:
    """Total assignment of one of r colors to every point of [1,n]^d.

    Colors are stored flat in lexicographic point order, matching the
    certificate file format.
    """

    n: int
    d: int
    r: int
    colors: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1 or self.d < 1 or self.r < 1:
            raise ValueError("n, d and r must all be positive")
        if len(self.colors) != self.n**self.d:
            raise ValueError(
                f"expected {self.n**self.d} color entries, got {len(self.colors)}"
            )
        for c in self.colors:
            if not 0 <= c < self.r:
                raise ValueError(f"color {c} out of range 0..{self.r - 1}")

    @classmethod
    def constant(cls, n: int, d: int, r: int = 1, color: int = 0) -> "Coloring":
        return cls(n, d, r, (color,) * n**d)

    def color_of(self, point: Point) -> int:
        return self.colors[point_index(point, self.n)]


@dataclass(frozen=True)
class DegeneracyReport:
    degenerate: bool
    direction: Point | None
    multipliers: tuple[int, ...] | None


def _primitive(point: Point) -> Point:
    g = 0
    for c in point:
        g = gcd(g, c)
    return tuple(c // g for c in point)


def _degenerate_point_set(points: Iterable[Point]) -> tuple[Point, list[int]] | None:
    """Direction and multipliers if degenerate, else None.  No validation."""
    pts = sorted(set(points))
    v = _primitive(pts[0])
    v0 = v[0]
    mults = []
    for p in pts:
        m, rem = divmod(p[0], v0)
        if rem:
            return None
        for a, b in zip(p[1:], v[1:]):
            if a != m * b:
                return None
        mults.append(m)
    return v, mults


def is_degenerate(points: Iterable[Point]) -> DegeneracyReport:
    """Classify a finite point set; carries direction and multipliers when degenerate.

    Points are deduplicated and sorted, so the reported multipliers follow the
    sorted order.  A singleton is always degenerate (it lies on its own ray).
    """
    pts = sorted(set(tuple(p) for p in points))
    if not pts:
        raise ValueError("empty point set")
    d = len(pts[0])
    for p in pts:
        if len(p) != d:
            raise DimensionMismatchError("points of mixed dimension")
        if any(c < 1 for c in p):
            raise ValueError(f"point {p} has a coordinate below 1")
    hit = _degenerate_point_set(pts)
    if hit is None:
        return DegeneracyReport(False, None, None)
    v, mults = hit
    return DegeneracyReport(True, v, tuple(mults))


def enumerate_scalar_solutions(
    system: ScalarSystem, n: int, budget: int = DEFAULT_BUDGET
) -> list[tuple[int, ...]]:
    """All integer k-tuples in [1,n]^k with A.x = 0, sorted lexicographically.

    Iterates assignments of the free columns of the echelon form and solves
    each pivot column exactly; candidates with a fractional, out-of-range or
    non-positive pivot value are dropped.  The candidate grid has n**f cells
    for f free columns and is refused beyond the budget.
    """
    k = system.variables
    result = rref(system.matrix())
    if result.rank < system.equations:
        warnings.warn(
            "coefficient matrix has dependent rows; using a row basis",
            stacklevel=2,
        )
    pivot_set = set(result.pivot_columns)
    free = [j for j in range(k) if j not in pivot_set]
    if n < 1:
        return []
    candidates = n ** len(free)
    if candidates > budget:
        raise BudgetExceededError(candidates, budget)

    # integer form of each pivot row: pivot value = -(sum a_j * x_j) / scale
    pivot_rows = []
    for t, p in enumerate(result.pivot_columns):
        row = result.rref.row(t)
        coeffs = [row[j] for j in free]
        scale = 1
        for c in coeffs:
            scale = lcm(scale, c.denominator)
        ints = tuple(int(c * scale) for c in coeffs)
        pivot_rows.append((p, scale, ints))

    out = []
    for assignment in product(range(1, n + 1), repeat=len(free)):
        vec = [0] * k
        ok = True
        for p, scale, ints in pivot_rows:
            s = 0
            for a, x in zip(ints, assignment):
                s += a * x
            val, rem = divmod(-s, scale)
            if rem or val < 1 or val > n:
                ok = False
                break
            vec[p] = val
        if ok:
            for j, x in zip(free, assignment):
                vec[j] = x
            out.append(tuple(vec))
    out.sort()
    return out


def _coordinate_solutions(
    system: VectorSystem, n: int, budget: int
) -> list[list[tuple[int, ...]]]:
    """Per-coordinate solution lists, computing identical matrices once."""
    cache: dict[tuple[tuple[int, ...], ...], list[tuple[int, ...]]] = {}
    lists = []
    for s in system.coordinate_systems:
        hit = cache.get(s.coeffs)
        if hit is None:
            hit = enumerate_scalar_solutions(s, n, budget)
            cache[s.coeffs] = hit
        lists.append(hit)
    return lists


def enumerate_vector_solutions(
    system: VectorSystem, n: int, budget: int = DEFAULT_BUDGET
) -> Iterator[SolutionTuple]:
    """Stream every solution tuple in [1,n]^d, one scalar solution per coordinate.

    Order is deterministic: lexicographic in the tuple of coordinate rows.
    """
    lists = _coordinate_solutions(system, n, budget)
    total = prod(len(rows) for rows in lists)
    if total > budget:
        raise BudgetExceededError(total, budget)
    for rows in product(*lists):
        yield SolutionTuple(tuple(zip(*rows)))


def count_solutions(system: VectorSystem, n: int, budget: int = DEFAULT_BUDGET) -> int:
    """|enumerate_vector_solutions| without materializing the product."""
    lists = _coordinate_solutions(system, n, budget)
    return prod(len(rows) for rows in lists)


def _resolve_mask(mask: Iterable[int] | None, k: int) -> tuple[int, ...]:
    if mask is None:
        return tuple(range(k))
    resolved = tuple(sorted(set(mask)))
    if not resolved:
        raise ValueError("mask must be nonempty")
    if resolved[0] < 0 or resolved[-1] >= k:
        raise ValueError(f"mask indices must lie in [0, {k})")
    return resolved


def count_degenerate(
    system: VectorSystem,
    n: int,
    mask: Iterable[int] | None = None,
    budget: int = DEFAULT_BUDGET,
) -> int:
    """Number of solution tuples whose masked point set is degenerate."""
    mask = _resolve_mask(mask, system.k)
    lists = _coordinate_solutions(system, n, budget)
    total = prod(len(rows) for rows in lists)
    if total > budget:
        raise BudgetExceededError(total, budget)
    count = 0
    for rows in product(*lists):
        pts = {tuple(row[j] for row in rows) for j in mask}
        if _degenerate_point_set(pts) is not None:
            count += 1
    return count


def count_monochromatic(
    system: VectorSystem,
    coloring: Coloring,
    mask: Iterable[int] | None = None,
    budget: int = DEFAULT_BUDGET,
) -> list[int]:
    """Per-color counts of solution tuples whose masked points share that color.

    The per-coordinate solution sets are walked as a lazy product; for each
    assembled tuple the masked points are checked column by column and the
    scan stops at the first color mismatch.
    """
    if coloring.d != system.d:
        raise DimensionMismatchError(
            f"coloring has dimension {coloring.d}, system has {system.d}"
        )
    mask = _resolve_mask(mask, system.k)
    n = coloring.n
    lists = _coordinate_solutions(system, n, budget)
    total = prod(len(rows) for rows in lists)
    if total > budget:
        raise BudgetExceededError(total, budget)
    colors = coloring.colors
    counts = [0] * coloring.r
    first, rest = mask[0], mask[1:]
    for rows in product(*lists):
        idx = 0
        for row in rows:
            idx = idx * n + (row[first] - 1)
        c0 = colors[idx]
        ok = True
        for j in rest:
            idx = 0
            for row in rows:
                idx = idx * n + (row[j] - 1)
            if colors[idx] != c0:
                ok = False
                break
        if ok:
            counts[c0] += 1
    return counts


# --- coloring certificate files ----------------------------------------------
#
# JSON with fixed key order:
#   {"n": 8, "d": 2, "r": 2, "colors": [ ... flat, lexicographic point order ]}


def parse_coloring(text: str) -> Coloring:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise SystemFormatError(f"not valid JSON: {e}") from e
    if not isinstance(doc, dict):
        raise SystemFormatError("coloring document must be a JSON object")
    for key in ("n", "d", "r", "colors"):
        if key not in doc:
            raise SystemFormatError(f"missing key {key!r}")
    n, d, r, colors = doc["n"], doc["d"], doc["r"], doc["colors"]
    for name, value in (("n", n), ("d", d), ("r", r)):
        if not isinstance(value, int) or value < 1:
            raise SystemFormatError(f"{name} must be a positive integer")
    if not isinstance(colors, list):
        raise SystemFormatError("'colors' must be a list")
    if len(colors) != n**d:
        raise SystemFormatError(
            f"expected {n**d} color entries for n={n}, d={d}; got {len(colors)}"
        )
    for c in colors:
        if not isinstance(c, int) or isinstance(c, bool) or not 0 <= c < r:
            raise SystemFormatError(f"color {c!r} out of range 0..{r - 1}")
    return Coloring(n, d, r, tuple(colors))


def serialize_coloring(coloring: Coloring) -> str:
    doc = {
        "n": coloring.n,
        "d": coloring.d,
        "r": coloring.r,
        "colors": list(coloring.colors),
    }
    return json.dumps(doc, separators=(", ", ": ")) + "\n"
