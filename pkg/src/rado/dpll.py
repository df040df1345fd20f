"""Small DPLL satisfiability check plus a DIMACS reader.

This exists as an independent cross-check for exported CNF instances: it
shares no code with the search kernels and works directly on clause lists.
Unit propagation uses per-clause counters of unassigned and satisfied
literal occurrences; branching follows a static most-occurrences order with
True tried before False, so results are deterministic.
"""

from __future__ import annotations

import sys
from typing import Sequence


def parse_dimacs(text: str) -> tuple[int, list[list[int]]]:
    """Read a DIMACS CNF document into (num_vars, clauses)."""
    num_vars = 0
    clauses: list[list[int]] = []
    current: list[int] = []
    saw_header = False
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise ValueError(f"bad DIMACS header: {line!r}")
            num_vars = int(parts[2])
            saw_header = True
            continue
        for tok in line.split():
            lit = int(tok)
            if lit == 0:
                clauses.append(current)
                current = []
            else:
                current.append(lit)
    if current:
        clauses.append(current)
    if not saw_header:
        raise ValueError("missing 'p cnf' header")
    return num_vars, clauses


def solve_cnf(num_vars: int, clauses: Sequence[Sequence[int]]) -> list[bool] | None:
    """Model as a 1-indexed list of bools (index 0 unused), or None if UNSAT.

    Variables absent from every clause are reported False.
    """
    cls: list[list[int]] = []
    for clause in clauses:
        if not clause:
            return None
        lits = sorted(set(int(l) for l in clause))
        for l in lits:
            if l == 0 or abs(l) > num_vars:
                raise ValueError(f"literal {l} out of range for {num_vars} variables")
        cls.append(lits)
    nc = len(cls)
    val: list[bool | None] = [None] * (num_vars + 1)
    if nc == 0:
        return [False] * (num_vars + 1)

    occ_true: list[list[int]] = [[] for _ in range(num_vars + 1)]
    occ_false: list[list[int]] = [[] for _ in range(num_vars + 1)]
    for ci, lits in enumerate(cls):
        for l in lits:
            (occ_true if l > 0 else occ_false)[abs(l)].append(ci)

    n_un = [len(lits) for lits in cls]
    n_true = [0] * nc
    sat_total = 0
    trail: list[int] = []

    def assign(v0: int, b0: bool) -> bool:
        nonlocal sat_total
        queue = [(v0, b0)]
        while queue:
            v, b = queue.pop()
            if val[v] is not None:
                if val[v] != b:
                    return False
                continue
            val[v] = b
            trail.append(v)
            sat_occ = occ_true[v] if b else occ_false[v]
            unsat_occ = occ_false[v] if b else occ_true[v]
            for ci in sat_occ:
                if n_true[ci] == 0:
                    sat_total += 1
                n_true[ci] += 1
                n_un[ci] -= 1
            # complete the counter updates even after a conflict so that
            # undo(), which walks full occurrence lists, stays symmetric
            conflict = False
            for ci in unsat_occ:
                n_un[ci] -= 1
                if not conflict and n_true[ci] == 0:
                    if n_un[ci] == 0:
                        conflict = True
                    elif n_un[ci] == 1:
                        for l in cls[ci]:
                            if val[abs(l)] is None:
                                queue.append((abs(l), l > 0))
                                break
            if conflict:
                return False
        return True

    def undo(mark: int) -> None:
        nonlocal sat_total
        while len(trail) > mark:
            v = trail.pop()
            b = val[v]
            sat_occ = occ_true[v] if b else occ_false[v]
            unsat_occ = occ_false[v] if b else occ_true[v]
            for ci in sat_occ:
                n_true[ci] -= 1
                if n_true[ci] == 0:
                    sat_total -= 1
                n_un[ci] += 1
            for ci in unsat_occ:
                n_un[ci] += 1
            val[v] = None

    order = sorted(
        (v for v in range(1, num_vars + 1) if occ_true[v] or occ_false[v]),
        key=lambda v: (-(len(occ_true[v]) + len(occ_false[v])), v),
    )
    olen = len(order)

    def dfs(idx: int) -> bool:
        if sat_total == nc:
            return True
        while idx < olen and val[order[idx]] is not None:
            idx += 1
        if idx == olen:
            return True
        v = order[idx]
        for b in (True, False):
            mark = len(trail)
            if assign(v, b) and dfs(idx + 1):
                return True
            undo(mark)
        return False

    depth_needed = num_vars * 2 + 100
    old_limit = sys.getrecursionlimit()
    if old_limit < depth_needed:
        sys.setrecursionlimit(depth_needed)
    try:
        if dfs(0):
            return [bool(v) for v in val]
        return None
    finally:
        if old_limit < depth_needed:
            sys.setrecursionlimit(old_limit)
