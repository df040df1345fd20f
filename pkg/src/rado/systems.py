"""Scalar and vector linear systems, and the columns-condition decision.

A scalar system is an integer matrix A constraining A.x = 0; a vector system
bundles one scalar system per coordinate, all sharing the variable count k.
Dummy variables (used to pad systems to a common k) appear as all-zero columns
in the coordinate matrices that do not constrain them, so all-zero columns are
accepted everywhere and show up as free columns in the rank profile.

The columns condition asks for an ordered partition of the columns into blocks
B_1, ..., B_m such that the entries of B_1 sum to the zero vector and, for
j >= 2, the sum of B_j lies in the rational span of all columns in earlier
blocks.  The subset formulation used here is equivalent to requiring the
blocks to be consecutive after renumbering the columns.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import MalformedPartitionError, SystemFormatError, TooManyColumnsError
from .exactmath import RMatrix, in_span, rref

DEFAULT_COLUMN_LIMIT = 12


@dataclass(frozen=True)
class ScalarSystem:
    """An l x k integer coefficient matrix for the homogeneous system A.x = 0."""

    coeffs: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if not self.coeffs:
            raise SystemFormatError("a system needs at least one equation row")
        width = len(self.coeffs[0])
        if width < 1:
            raise SystemFormatError("a system needs at least one variable column")
        for row in self.coeffs:
            if len(row) != width:
                raise SystemFormatError("ragged coefficient rows")
            for x in row:
                if not isinstance(x, int) or isinstance(x, bool):
                    raise SystemFormatError(f"non-integer coefficient {x!r}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "ScalarSystem":
        return cls(tuple(tuple(int(x) for x in row) for row in rows))

    @property
    def equations(self) -> int:
        return len(self.coeffs)

    @property
    def variables(self) -> int:
        return len(self.coeffs[0])

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.coeffs)

    def matrix(self) -> RMatrix:
        return RMatrix.from_rows(self.coeffs)


@dataclass(frozen=True)
class VectorSystem:
    """One scalar system per coordinate, sharing the variable count k."""

    coordinate_systems: tuple[ScalarSystem, ...]

    def __post_init__(self):
        if not self.coordinate_systems:
            raise SystemFormatError("a vector system needs at least one coordinate")
        k = self.coordinate_systems[0].variables
        for i, s in enumerate(self.coordinate_systems):
            if s.variables != k:
                raise SystemFormatError(
                    f"coordinate system {i} has {s.variables} columns, expected {k}"
                )

    @classmethod
    def from_rows(cls, systems: Sequence[Sequence[Sequence[int]]]) -> "VectorSystem":
        return cls(tuple(ScalarSystem.from_rows(rows) for rows in systems))

    @classmethod
    def diagonal(cls, system: ScalarSystem, d: int) -> "VectorSystem":
        """The same scalar system repeated in every coordinate."""
        if d < 1:
            raise SystemFormatError("dimension must be at least 1")
        return cls((system,) * d)

    @property
    def d(self) -> int:
        return len(self.coordinate_systems)

    @property
    def k(self) -> int:
        return self.coordinate_systems[0].variables


@dataclass(frozen=True)
class ColumnsPartition:
    """Ordered blocks of column indices; together they cover [0, k) exactly."""

    blocks: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class ColumnsReport:
    satisfies: bool
    witness: ColumnsPartition | None
    rank: int
    full_rank: bool


# --- incremental echelon basis, used by the memoized partition search -------
#
# A basis is a list of (pivot, row) pairs with strictly distinct pivots where
# row[pivot] == 1 and row's leftmost nonzero entry sits at pivot.  Reducing a
# vector against the rows in ascending pivot order zeroes each pivot position
# without disturbing earlier ones, so membership in the span is "reduces to
# the zero vector".


def _reduce(vec: list[Fraction], basis: list[tuple[int, list[Fraction]]]) -> list[Fraction]:
    v = list(vec)
    for p, row in basis:
        f = v[p]
        if f:
            v = [a - f * b for a, b in zip(v, row)]
    return v


def _insert(vec: Sequence[Fraction], basis: list[tuple[int, list[Fraction]]]) -> None:
    v = _reduce(list(vec), basis)
    pivot = next((i for i, x in enumerate(v) if x), None)
    if pivot is None:
        return
    inv = v[pivot]
    basis.append((pivot, [x / inv for x in v]))
    basis.sort(key=lambda item: item[0])


def _in_basis_span(vec: Sequence[Fraction], basis: list[tuple[int, list[Fraction]]]) -> bool:
    return not any(_reduce(list(vec), basis))


def check_columns_condition(
    system: ScalarSystem, limit: int = DEFAULT_COLUMN_LIMIT
) -> ColumnsReport:
    """Decide the columns condition; return a witness partition when it holds.

    Search strategy: the first block is any nonempty zero-sum subset of
    columns; each later block is any nonempty subset of the remaining columns
    whose sum lies in the span of all previously used columns.  States are
    memoized on the set of used columns (the span, hence feasibility of the
    tail, depends only on that set), and a state finishes immediately with
    singleton blocks once every remaining column individually lies in the
    current span.  Subsets are scanned in ascending bitmask order, so the
    returned witness is deterministic.
    """
    k = system.variables
    if k > limit:
        raise TooManyColumnsError(k, limit)
    rk = rref(system.matrix()).rank
    full_rank = rk == system.equations

    cols = [
        tuple(Fraction(x) for x in system.column(j)) for j in range(k)
    ]
    full_mask = (1 << k) - 1

    # subset sums via lowest-set-bit dynamic programming
    zero = (Fraction(0),) * system.equations
    sums: list[tuple[Fraction, ...]] = [zero] * (1 << k)
    for mask in range(1, 1 << k):
        low = (mask & -mask).bit_length() - 1
        rest = sums[mask & (mask - 1)]
        sums[mask] = tuple(a + b for a, b in zip(rest, cols[low]))

    basis_cache: dict[int, list[tuple[int, list[Fraction]]]] = {}

    def span_basis(mask: int) -> list[tuple[int, list[Fraction]]]:
        cached = basis_cache.get(mask)
        if cached is None:
            cached = []
            m = mask
            while m:
                j = (m & -m).bit_length() - 1
                _insert(cols[j], cached)
                m &= m - 1
            basis_cache[mask] = cached
        return cached

    memo: dict[int, tuple[int, ...] | None] = {}

    def complete(used: int) -> tuple[int, ...] | None:
        """Block masks partitioning the columns outside `used`, or None."""
        if used == full_mask:
            return ()
        hit = memo.get(used, "miss")
        if hit != "miss":
            return hit
        basis = span_basis(used)
        remaining = full_mask & ~used
        free = []
        m = remaining
        all_in_span = True
        while m:
            j = (m & -m).bit_length() - 1
            free.append(j)
            if all_in_span and not _in_basis_span(cols[j], basis):
                all_in_span = False
            m &= m - 1
        if all_in_span:
            result: tuple[int, ...] | None = tuple(1 << j for j in free)
            memo[used] = result
            return result
        result = None
        sub = 0
        while True:
            sub = (sub - remaining) & remaining
            if sub == 0:
                break
            if _in_basis_span(sums[sub], basis):
                tail = complete(used | sub)
                if tail is not None:
                    result = (sub,) + tail
                    break
        memo[used] = result
        return result

    first = 0
    while True:
        first = (first - full_mask) & full_mask
        if first == 0:
            break
        if any(sums[first]):
            continue
        tail = complete(first)
        if tail is not None:
            blocks = tuple(
                tuple(j for j in range(k) if mask >> j & 1)
                for mask in (first,) + tail
            )
            return ColumnsReport(True, ColumnsPartition(blocks), rk, full_rank)
    return ColumnsReport(False, None, rk, full_rank)


def verify_partition(system: ScalarSystem, partition: ColumnsPartition) -> bool:
    """Check a claimed witness partition directly against the definition."""
    k = system.variables
    seen: set[int] = set()
    for block in partition.blocks:
        if not block:
            raise MalformedPartitionError("empty block")
        for j in block:
            if not 0 <= j < k:
                raise MalformedPartitionError(f"column index {j} out of range")
            if j in seen:
                raise MalformedPartitionError(f"column {j} appears twice")
            seen.add(j)
    if len(seen) != k:
        raise MalformedPartitionError("partition does not cover all columns")

    def block_sum(block: tuple[int, ...]) -> tuple[int, ...]:
        return tuple(sum(system.coeffs[i][j] for j in block) for i in range(system.equations))

    if any(block_sum(partition.blocks[0])):
        return False
    earlier: list[tuple[int, ...]] = [system.column(j) for j in partition.blocks[0]]
    for block in partition.blocks[1:]:
        if not in_span(block_sum(block), earlier):
            return False
        earlier.extend(system.column(j) for j in block)
    return True


def rank_profile(system: VectorSystem) -> list[tuple[int, tuple[int, ...]]]:
    """Per-coordinate (rank, free columns); free columns are the non-pivots."""
    profile = []
    for s in system.coordinate_systems:
        result = rref(s.matrix())
        pivots = set(result.pivot_columns)
        free = tuple(j for j in range(s.variables) if j not in pivots)
        profile.append((result.rank, free))
    return profile


# --- system file format ------------------------------------------------------
#
# JSON with fixed key order so serialized files are diff-stable:
#   {"d": 2, "k": 4, "systems": [{"rows": [[1, 1, -1, 0]]}, {"rows": [...]}]}


def parse_system(text: str) -> VectorSystem:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise SystemFormatError(f"not valid JSON: {e}") from e
    if not isinstance(doc, dict):
        raise SystemFormatError("system document must be a JSON object")
    for key in ("d", "k", "systems"):
        if key not in doc:
            raise SystemFormatError(f"missing key {key!r}")
    d, k, systems = doc["d"], doc["k"], doc["systems"]
    if not isinstance(d, int) or d < 1:
        raise SystemFormatError("d must be a positive integer")
    if not isinstance(k, int) or k < 1:
        raise SystemFormatError("k must be a positive integer")
    if not isinstance(systems, list) or len(systems) != d:
        raise SystemFormatError(f"expected {d} coordinate systems")
    parsed = []
    for i, entry in enumerate(systems):
        if not isinstance(entry, dict) or "rows" not in entry:
            raise SystemFormatError(f"coordinate system {i}: missing 'rows'")
        rows = entry["rows"]
        if not isinstance(rows, list) or not rows:
            raise SystemFormatError(f"coordinate system {i}: 'rows' must be a nonempty list")
        for row in rows:
            if not isinstance(row, list) or len(row) != k:
                raise SystemFormatError(
                    f"coordinate system {i}: every row must have k={k} entries"
                )
            for x in row:
                if not isinstance(x, int) or isinstance(x, bool):
                    raise SystemFormatError(
                        f"coordinate system {i}: non-integer coefficient {x!r}"
                    )
        parsed.append(ScalarSystem.from_rows(rows))
    return VectorSystem(tuple(parsed))


def serialize_system(system: VectorSystem) -> str:
    doc = {
        "d": system.d,
        "k": system.k,
        "systems": [
            {"rows": [list(row) for row in s.coeffs]}
            for s in system.coordinate_systems
        ],
    }
    return json.dumps(doc, separators=(", ", ": ")) + "\n"
