"""The exact avoidability engine for [1,n]^d.

A search problem fixes a vector system, a color count, the mask of solution
points that must share a color, and optional tuple filters (exclude
degenerate masked sets, require the masked points pairwise distinct).
Constraints are built by enumerating full solution tuples, projecting each
surviving tuple to its masked point set (so a constraint exists as soon as
SOME assignment of the unmasked dummy variables completes it), deduplicating,
and dropping constraints that contain another constraint: a coloring that
splits the smaller set also splits the larger one.

The search itself runs in a swappable kernel (see ``kernel``); this module
prepares the constraint hypergraph, the branching order (most-constrained
point first, ties by max-norm then lexicographic position) and turns kernel
results into certified outcomes.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import product
from math import prod
from typing import Sequence

from .errors import BudgetExceededError, DimensionMismatchError
from .kernel import solve_avoidability
from .lattice import (
    DEFAULT_BUDGET,
    Coloring,
    Point,
    _coordinate_solutions,
    _degenerate_point_set,
    index_point,
    point_index,
)
from .systems import VectorSystem

AVOIDABLE = "avoidable"
UNAVOIDABLE = "unavoidable"
TRIVIALLY_UNAVOIDABLE = "trivially_unavoidable"


@dataclass(frozen=True)
class SearchProblem:
    """System plus coloring constraints: the unit of work for the engine."""

    system: VectorSystem
    colors: int = 2
    mask: tuple[int, ...] | None = None  # None means all k points
    exclude_degenerate: bool = False
    require_distinct: bool = False

    def __post_init__(self):
        if self.colors < 1:
            raise ValueError("at least one color is required")
        if self.mask is not None:
            k = self.system.k
            resolved = tuple(sorted(set(self.mask)))
            if not resolved:
                raise ValueError("mask must be nonempty")
            if resolved[0] < 0 or resolved[-1] >= k:
                raise ValueError(f"mask indices must lie in [0, {k})")
            object.__setattr__(self, "mask", resolved)

    @property
    def resolved_mask(self) -> tuple[int, ...]:
        return self.mask if self.mask is not None else tuple(range(self.system.k))


@dataclass(frozen=True)
class ConstraintSet:
    """Deduplicated, minimal point-index sets that must not be monochromatic."""

    n: int
    d: int
    constraints: tuple[tuple[int, ...], ...]

    def decode(self, constraint: Sequence[int]) -> tuple[Point, ...]:
        return tuple(index_point(i, self.n, self.d) for i in constraint)


@dataclass(frozen=True)
class SearchOutcome:
    status: str
    witness: Coloring | None
    forced_constraint: tuple[Point, ...] | None


@dataclass(frozen=True)
class VerificationReport:
    passed: bool
    violated_constraint: tuple[Point, ...] | None
    color: int | None


@dataclass(frozen=True)
class RadoNumberResult:
    """Outcome of the minimal-n scan.

    When the scan succeeds, `value` is the minimal unavoidable n and `witness`
    is the avoiding coloring found at value - 1 (None when value == 1).  When
    the scan exhausts max_n, `value` is None and `witness` certifies
    avoidability at max_n.
    """

    value: int | None
    searched_to: int
    witness: Coloring | None

    @property
    def found(self) -> bool:
        return self.value is not None


def build_constraints(
    problem: SearchProblem, n: int, budget: int = DEFAULT_BUDGET
) -> ConstraintSet:
    """Masked point sets of all filtered solution tuples in [1,n]^d."""
    system = problem.system
    d = system.d
    mask = problem.resolved_mask
    if n < 1:
        return ConstraintSet(n, d, ())
    lists = _coordinate_solutions(system, n, budget)
    total = prod(len(rows) for rows in lists)
    if total > budget:
        raise BudgetExceededError(total, budget)
    distinct = problem.require_distinct
    nondegenerate = problem.exclude_degenerate
    seen: set[frozenset[int]] = set()
    for rows in product(*lists):
        points = {tuple(row[j] for row in rows) for j in mask}
        if distinct and len(points) != len(mask):
            continue
        if nondegenerate and _degenerate_point_set(points) is not None:
            continue
        seen.add(frozenset(point_index(p, n) for p in points))
    # dominated-constraint elimination: processing by ascending size, any set
    # containing an already-kept set is redundant
    kept: list[frozenset[int]] = []
    for s in sorted(seen, key=lambda s: (len(s), sorted(s))):
        if not any(t < s for t in kept):
            kept.append(s)
    constraints = tuple(
        sorted((tuple(sorted(s)) for s in kept), key=lambda t: (len(t), t))
    )
    return ConstraintSet(n, d, constraints)


def _branch_order(cs: ConstraintSet) -> list[int]:
    """Constrained points, most constraints first; ties by max-norm then lex."""
    degree: dict[int, int] = {}
    for con in cs.constraints:
        for i in con:
            degree[i] = degree.get(i, 0) + 1
    base = sorted(
        degree,
        key=lambda i: (max(index_point(i, cs.n, cs.d)), index_point(i, cs.n, cs.d)),
    )
    base_pos = {i: t for t, i in enumerate(base)}
    return sorted(degree, key=lambda i: (-degree[i], base_pos[i]))


def _search_task(args):
    num_points, colors, constraints, order, prefix = args
    return solve_avoidability(num_points, colors, constraints, order, prefix=prefix)


def find_avoiding_coloring(
    problem: SearchProblem,
    n: int,
    budget: int = DEFAULT_BUDGET,
    threads: int = 1,
    constraint_set: ConstraintSet | None = None,
) -> SearchOutcome:
    """Exhaustively decide avoidability of [1,n]^d for the given problem.

    Avoidable outcomes carry a witness coloring (points in no constraint get
    color 0).  With threads > 1 the search splits on the first two branch
    points and runs the parts in worker processes; the status is identical to
    the single-threaded result, though the witness may differ.
    """
    if n < 1:
        raise ValueError("box side n must be at least 1")
    cs = constraint_set if constraint_set is not None else build_constraints(
        problem, n, budget
    )
    d = problem.system.d
    r = problem.colors
    num_points = n**d
    for con in cs.constraints:
        if len(con) == 1:
            return SearchOutcome(TRIVIALLY_UNAVOIDABLE, None, cs.decode(con))
    if not cs.constraints:
        return SearchOutcome(AVOIDABLE, Coloring(n, d, r, (0,) * num_points), None)
    order = _branch_order(cs)
    if threads > 1 and len(order) >= 2 and r >= 2:
        tasks = [
            (num_points, r, cs.constraints, order, ((order[0], 0), (order[1], g)))
            for g in (0, 1)
        ]
        with ProcessPoolExecutor(max_workers=min(threads, len(tasks))) as pool:
            results = list(pool.map(_search_task, tasks))
        for ok, assignment in results:
            if ok:
                return SearchOutcome(
                    AVOIDABLE, Coloring(n, d, r, tuple(assignment)), None
                )
        return SearchOutcome(UNAVOIDABLE, None, None)
    ok, assignment = solve_avoidability(num_points, r, cs.constraints, order)
    if ok:
        return SearchOutcome(AVOIDABLE, Coloring(n, d, r, tuple(assignment)), None)
    return SearchOutcome(UNAVOIDABLE, None, None)


def rado_number(
    problem: SearchProblem,
    max_n: int,
    budget: int = DEFAULT_BUDGET,
    threads: int = 1,
) -> RadoNumberResult:
    """Scan n = 1, 2, ... for the smallest unavoidable box.

    Avoidability is monotone (a witness restricts to smaller boxes), so the
    first non-avoidable n is minimal.  Each n is searched fresh.
    """
    if max_n < 1:
        raise ValueError("max_n must be at least 1")
    last_witness = None
    for n in range(1, max_n + 1):
        outcome = find_avoiding_coloring(problem, n, budget, threads)
        if outcome.status != AVOIDABLE:
            return RadoNumberResult(n, n, last_witness)
        last_witness = outcome.witness
    return RadoNumberResult(None, max_n, last_witness)


def verify_witness(
    problem: SearchProblem, witness: Coloring, budget: int = DEFAULT_BUDGET
) -> VerificationReport:
    """Check a claimed avoiding coloring against freshly built constraints."""
    if witness.d != problem.system.d:
        raise DimensionMismatchError(
            f"witness dimension {witness.d} does not match system dimension "
            f"{problem.system.d}"
        )
    if witness.r > problem.colors:
        raise ValueError(
            f"witness uses {witness.r} colors but the problem allows {problem.colors}"
        )
    cs = build_constraints(problem, witness.n, budget)
    colors = witness.colors
    for con in cs.constraints:
        c0 = colors[con[0]]
        if all(colors[i] == c0 for i in con[1:]):
            return VerificationReport(False, cs.decode(con), c0)
    return VerificationReport(True, None, None)


def export_dimacs(
    problem: SearchProblem,
    n: int,
    budget: int = DEFAULT_BUDGET,
    constraint_set: ConstraintSet | None = None,
) -> str:
    """CNF text that is satisfiable exactly when the problem is avoidable at n.

    Two colors: one variable per point (true = color 0); every constraint S
    contributes the clauses (OR_{s in S} x_s) and (OR_{s in S} not x_s).
    Other color counts: one-hot variables var(point, color) with at-least-one
    and pairwise at-most-one clauses per point, plus one blocking clause per
    constraint and color.  Variables number points in lexicographic order,
    then colors, so output is bit-exact across runs.
    """
    cs = constraint_set if constraint_set is not None else build_constraints(
        problem, n, budget
    )
    d = problem.system.d
    r = problem.colors
    num_points = n**d
    lines = [
        "c avoidability of monochromatic constrained solutions",
        f"c box [1,{n}]^{d}, colors {r}, constraints {len(cs.constraints)}",
        "c point index: lexicographic over the box, (1,...,1) -> 0",
    ]
    clauses: list[str] = []
    if r == 2:
        lines.append("c variable i+1 <-> point i; true = color 0, false = color 1")
        for con in cs.constraints:
            pos = " ".join(str(i + 1) for i in con)
            neg = " ".join(str(-(i + 1)) for i in con)
            clauses.append(f"{pos} 0")
            clauses.append(f"{neg} 0")
        num_vars = num_points
    else:
        lines.append(f"c variable point*{r} + color + 1 <-> point has that color")
        for i in range(num_points):
            base = i * r
            clauses.append(" ".join(str(base + g + 1) for g in range(r)) + " 0")
            for g in range(r):
                for h in range(g + 1, r):
                    clauses.append(f"{-(base + g + 1)} {-(base + h + 1)} 0")
        for con in cs.constraints:
            for g in range(r):
                clauses.append(
                    " ".join(str(-(i * r + g + 1)) for i in con) + " 0"
                )
        num_vars = num_points * r
    lines.append(f"p cnf {num_vars} {len(clauses)}")
    lines.extend(clauses)
    return "\n".join(lines) + "\n"


def coloring_from_model(n: int, d: int, r: int, model: Sequence[bool]) -> Coloring:
    """Decode a satisfying assignment (1-indexed) of the exported CNF."""
    num_points = n**d
    if r == 2:
        colors = tuple(0 if model[i + 1] else 1 for i in range(num_points))
    else:
        colors = tuple(
            next(g for g in range(r) if model[i * r + g + 1])
            for i in range(num_points)
        )
    return Coloring(n, d, r, colors)
