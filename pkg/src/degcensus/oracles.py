"""Exact desk-scale counters used to validate every estimate.

All results are exact Python integers or fractions.  Each function enforces
a hard size budget and raises BudgetError beyond it; nothing here is meant
to scale past validation instances.  Enumeration order is deterministic:
rows are processed in decreasing degree (ties by index) and neighbour sets
are generated in lexicographic column order.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .core import (
    BipartiteGraph,
    BudgetError,
    DegreePair,
    DomainError,
    ForbiddenGraph,
    ParityError,
    SquareOnlyError,
    DegreeSequenceError,
)

__all__ = [
    "DEFAULT_EDGE_BUDGET",
    "count_bipartite",
    "count_bipartite_stratified",
    "count_loopfree",
    "count_oriented",
    "enumerate_bipartite",
    "graph_to_matrix",
    "ryser_permanent",
    "naive_permanent",
    "exact_expected_permanent",
    "expected_permanent_transversal_sum",
    "count_partial_matchings",
    "count_eulerian_orientations",
    "count_orientations_with_degrees",
    "enumerate_undirected",
    "permutation_moment_oracle",
]

DEFAULT_EDGE_BUDGET = 24


def _check_budget(value: int, budget: int, what: str) -> None:
    if value > budget:
        raise BudgetError(f"{what} = {value} exceeds budget {budget}")


def _row_order(s: Sequence[int]) -> list[int]:
    return sorted(range(len(s)), key=lambda i: (-s[i], i))


def _residual_feasible(rows_desc: Sequence[int], resid: Sequence[int]) -> bool:
    # Gale-Ryser on the untouched remainder.  With forbidden cells this is a
    # relaxation, which keeps it a sound prune: infeasible means no completion.
    prefix = 0
    for k in range(1, len(rows_desc) + 1):
        prefix += rows_desc[k - 1]
        if prefix > sum(min(v, k) for v in resid):
            return False
    return True


def enumerate_bipartite(
    dp: DegreePair,
    x: ForbiddenGraph | None = None,
    *,
    budget_s: int = DEFAULT_EDGE_BUDGET,
    prune: bool = True,
) -> Iterator[BipartiteGraph]:
    """Yield every simple bipartite realisation of (s, t), avoiding x if given.

    Deterministic order per the module contract.  Pruning never changes the
    set of leaves, only skips dead subtrees.
    """
    _check_budget(dp.total, budget_s, "edge count S")
    forbidden = x.edges if x is not None else frozenset()
    if x is not None:
        x._check_shape(dp)
    order = _row_order(dp.s)
    m, n = dp.m, dp.n
    tails: list[list[int]] = []
    for k in range(len(order)):
        tail = sorted((dp.s[r] for r in order[k + 1 :]), reverse=True)
        tails.append(tail)

    resid = list(dp.t)
    chosen: list[tuple[int, tuple[int, ...]]] = []

    def rec(k: int) -> Iterator[BipartiteGraph]:
        if k == m:
            edges = [(row, j) for row, combo in chosen for j in combo]
            yield BipartiteGraph(m, n, edges)
            return
        row = order[k]
        need = dp.s[row]
        allowed = [
            j for j in range(n) if resid[j] > 0 and (row, j) not in forbidden
        ]
        if need > len(allowed):
            return
        for combo in itertools.combinations(allowed, need):
            for j in combo:
                resid[j] -= 1
            if not prune or _residual_feasible(tails[k], resid):
                chosen.append((row, combo))
                yield from rec(k + 1)
                chosen.pop()
            for j in combo:
                resid[j] += 1

    yield from rec(0)


def _count_rec(
    k: int,
    resid: tuple[int, ...],
    order: Sequence[int],
    s: Sequence[int],
    forbidden: frozenset,
    tails: Sequence[Sequence[int]],
    memo: dict,
    prune: bool,
) -> int:
    if k == len(order):
        return 1
    key = (k, resid)
    hit = memo.get(key)
    if hit is not None:
        return hit
    row = order[k]
    need = s[row]
    n = len(resid)
    allowed = [j for j in range(n) if resid[j] > 0 and (row, j) not in forbidden]
    total = 0
    if need <= len(allowed):
        for combo in itertools.combinations(allowed, need):
            nxt = list(resid)
            for j in combo:
                nxt[j] -= 1
            if prune and not _residual_feasible(tails[k], nxt):
                continue
            total += _count_rec(
                k + 1, tuple(nxt), order, s, forbidden, tails, memo, prune
            )
    memo[key] = total
    return total


def _count_branch(args) -> int:
    s, t_resid, order, forbidden, prune, start = args
    tails = [
        sorted((s[r] for r in order[k + 1 :]), reverse=True)
        for k in range(len(order))
    ]
    return _count_rec(
        start, tuple(t_resid), order, s, frozenset(forbidden), tails, {}, prune
    )


def count_bipartite(
    dp: DegreePair,
    x: ForbiddenGraph | None = None,
    *,
    budget_s: int = DEFAULT_EDGE_BUDGET,
    prune: bool = True,
    workers: int = 1,
) -> int:
    """Number of simple bipartite graphs with degrees (s, t) avoiding x.

    Infeasible pairs count zero; they are not an error.  With workers > 1 the
    first row's neighbour-set choices are partitioned across processes and
    the branch counts summed, which cannot change the total.
    """
    _check_budget(dp.total, budget_s, "edge count S")
    forbidden = x.edges if x is not None else frozenset()
    if x is not None:
        x._check_shape(dp)
    order = _row_order(dp.s)
    if workers <= 1:
        return _count_branch((dp.s, dp.t, order, forbidden, prune, 0))

    row = order[0]
    need = dp.s[row]
    allowed = [
        j for j in range(dp.n) if dp.t[j] > 0 and (row, j) not in forbidden
    ]
    if need > len(allowed):
        return 0
    jobs = []
    for combo in itertools.combinations(allowed, need):
        resid = list(dp.t)
        for j in combo:
            resid[j] -= 1
        jobs.append((dp.s, tuple(resid), order, forbidden, prune, 1))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return sum(pool.map(_count_branch, jobs))


def count_bipartite_stratified(
    dp: DegreePair,
    x: ForbiddenGraph,
    *,
    budget_s: int = DEFAULT_EDGE_BUDGET,
) -> list[int]:
    """Counts of realisations using exactly f edges of x, for f = 0 .. |x|.

    The strata sum to the unconstrained count, and stratum 0 equals
    count_bipartite(dp, x).
    """
    _check_budget(dp.total, budget_s, "edge count S")
    x._check_shape(dp)
    order = _row_order(dp.s)
    width = x.size + 1
    tails = [
        sorted((dp.s[r] for r in order[k + 1 :]), reverse=True)
        for k in range(len(order))
    ]
    memo: dict = {}

    def rec(k: int, resid: tuple[int, ...]) -> tuple[int, ...]:
        if k == len(order):
            return (1,) + (0,) * (width - 1)
        key = (k, resid)
        hit = memo.get(key)
        if hit is not None:
            return hit
        row = order[k]
        need = dp.s[row]
        acc = [0] * width
        allowed = [j for j in range(dp.n) if resid[j] > 0]
        if need <= len(allowed):
            for combo in itertools.combinations(allowed, need):
                used = sum(1 for j in combo if (row, j) in x.edges)
                nxt = list(resid)
                for j in combo:
                    nxt[j] -= 1
                if not _residual_feasible(tails[k], nxt):
                    continue
                child = rec(k + 1, tuple(nxt))
                for f in range(width - used):
                    if child[f]:
                        acc[f + used] += child[f]
        out = tuple(acc)
        memo[key] = out
        return out

    return list(rec(0, dp.t))


def count_loopfree(dp: DegreePair, *, budget_s: int = DEFAULT_EDGE_BUDGET) -> int:
    """Number of loop-free digraph realisations of a square pair."""
    if not dp.is_square:
        raise SquareOnlyError("loop-free counting requires m == n")
    return count_bipartite(dp, ForbiddenGraph.diagonal(dp.n), budget_s=budget_s)


def count_oriented(dp: DegreePair, *, budget_s: int = DEFAULT_EDGE_BUDGET) -> int:
    """Number of orientations: loop-free digraphs with no 2-cycles.

    The 2-cycle constraint couples cells across rows, so this walks the
    search tree explicitly instead of memoising on residual degrees.
    """
    if not dp.is_square:
        raise SquareOnlyError("oriented counting requires m == n")
    _check_budget(dp.total, budget_s, "edge count S")
    order = _row_order(dp.s)
    n = dp.n
    tails = [
        sorted((dp.s[r] for r in order[k + 1 :]), reverse=True)
        for k in range(len(order))
    ]
    resid = list(dp.t)
    picked: dict[int, set[int]] = {}

    def rec(k: int) -> int:
        if k == n:
            return 1
        row = order[k]
        need = dp.s[row]
        allowed = [
            j
            for j in range(n)
            if resid[j] > 0 and j != row and row not in picked.get(j, ())
        ]
        if need > len(allowed):
            return 0
        total = 0
        for combo in itertools.combinations(allowed, need):
            for j in combo:
                resid[j] -= 1
            if _residual_feasible(tails[k], resid):
                picked[row] = set(combo)
                total += rec(k + 1)
                del picked[row]
            for j in combo:
                resid[j] += 1
        return total

    return rec(0)


def graph_to_matrix(g: BipartiteGraph) -> list[list[int]]:
    """0-1 biadjacency matrix of a bipartite graph."""
    mat = [[0] * g.n for _ in range(g.m)]
    for i, j in g.edges:
        mat[i][j] = 1
    return mat


def ryser_permanent(matrix: Sequence[Sequence[int]], *, budget_n: int = 24) -> int:
    """Permanent by Ryser's inclusion-exclusion over column subsets.

    Gray-code order updates one column per step, so the whole run does
    O(n 2^n) integer work.  Exact for integer matrices.
    """
    n = len(matrix)
    if n == 0 or any(len(row) != n for row in matrix):
        raise DomainError("permanent needs a non-empty square matrix")
    _check_budget(n, budget_n, "matrix order n")
    sums = [0] * n
    total = 0
    parity = 1  # (-1)^{|S|} for the current subset
    included = 0
    for k in range(1, 1 << n):
        j = (k & -k).bit_length() - 1
        bit = 1 << j
        if included & bit:
            included ^= bit
            for i in range(n):
                sums[i] -= matrix[i][j]
            parity = -parity
        else:
            included |= bit
            for i in range(n):
                sums[i] += matrix[i][j]
            parity = -parity
        term = 1
        for v in sums:
            if v == 0:
                term = 0
                break
            term *= v
        if term:
            total += parity * term
    return total if n % 2 == 0 else -total


def naive_permanent(matrix: Sequence[Sequence[int]], *, budget_n: int = 8) -> int:
    """Permanent by the defining n! sum; cross-check twin for ryser_permanent."""
    n = len(matrix)
    if n == 0 or any(len(row) != n for row in matrix):
        raise DomainError("permanent needs a non-empty square matrix")
    _check_budget(n, budget_n, "matrix order n")
    total = 0
    for perm in itertools.permutations(range(n)):
        term = 1
        for i, j in enumerate(perm):
            term *= matrix[i][j]
            if term == 0:
                break
        total += term
    return total


def exact_expected_permanent(
    dp: DegreePair, *, budget_s: int = DEFAULT_EDGE_BUDGET
) -> Fraction:
    """Mean permanent over all 0-1 matrices with the given margins."""
    if not dp.is_square:
        raise SquareOnlyError("expected permanent requires m == n")
    total = 0
    count = 0
    for g in enumerate_bipartite(dp, budget_s=budget_s):
        total += ryser_permanent(graph_to_matrix(g))
        count += 1
    if count == 0:
        raise DomainError("no matrix realises the margins; expectation undefined")
    return Fraction(total, count)


def expected_permanent_transversal_sum(
    dp: DegreePair, *, budget_s: int = DEFAULT_EDGE_BUDGET
) -> Fraction:
    """Second route to the expected permanent, via transversal pinning.

    E[per] = sum over permutations sigma of P(all cells (i, sigma(i)) are 1),
    and each pinning probability is a ratio of two exact counts with the
    pinned cells removed from the margins and forbidden thereafter.
    """
    if not dp.is_square:
        raise SquareOnlyError("expected permanent requires m == n")
    n = dp.n
    base = count_bipartite(dp, budget_s=budget_s)
    if base == 0:
        raise DomainError("no matrix realises the margins; expectation undefined")
    if min(dp.s) == 0 or min(dp.t) == 0:
        return Fraction(0)
    reduced = dp.reduced_by((1,) * n, (1,) * n)
    total = 0
    for perm in itertools.permutations(range(n)):
        pinned = ForbiddenGraph(n, n, ((i, perm[i]) for i in range(n)))
        total += count_bipartite(reduced, pinned, budget_s=budget_s)
    return Fraction(total, base)


def count_partial_matchings(
    holes: BipartiteGraph, *, budget_n: int = 14
) -> list[int]:
    """p_k = number of k-subsets of `holes` with no shared row or column.

    Bitmask dynamic programme over columns; index k runs 0 .. n.
    """
    if holes.m != holes.n:
        raise SquareOnlyError("hole pattern must be square")
    n = holes.n
    _check_budget(n, budget_n, "matrix order n")
    by_row: list[list[int]] = [[] for _ in range(n)]
    for i, j in holes.edges:
        by_row[i].append(j)
    for cols in by_row:
        cols.sort()
    # f[mask] = number of ways the rows processed so far match exactly the
    # columns in mask.
    f = {0: 1}
    for i in range(n):
        if not by_row[i]:
            continue
        nxt = dict(f)
        for mask, ways in f.items():
            for j in by_row[i]:
                bit = 1 << j
                if not mask & bit:
                    key = mask | bit
                    nxt[key] = nxt.get(key, 0) + ways
        f = nxt
    p = [0] * (n + 1)
    for mask, ways in f.items():
        p[mask.bit_count()] += ways
    return p


def _normalised_undirected_edges(
    n: int, edges: Iterable[tuple[int, int]]
) -> list[tuple[int, int]]:
    out = set()
    for e in edges:
        i, j = e
        if not (0 <= i < n and 0 <= j < n):
            raise DegreeSequenceError(f"edge ({i}, {j}) outside [0, {n})")
        if i == j:
            raise DegreeSequenceError(f"undirected graph may not contain loop ({i}, {i})")
        out.add((min(i, j), max(i, j)))
    return sorted(out)


def count_orientations_with_degrees(
    n: int,
    edges: Iterable[tuple[int, int]],
    delta: Sequence[int],
    *,
    budget_edges: int = 28,
) -> int:
    """Orientations of an undirected simple graph with out-degree d_v/2 + delta_v.

    delta must be an integer vector and every target d_v/2 + delta_v must be
    an integer, i.e. all degrees even; otherwise the target is rejected.
    Out-of-range targets simply count zero.
    """
    edge_list = _normalised_undirected_edges(n, edges)
    _check_budget(len(edge_list), budget_edges, "edge count")
    if len(delta) != n:
        raise DegreeSequenceError("delta length must equal n")
    for v in delta:
        if not isinstance(v, int) or isinstance(v, bool):
            raise ParityError(f"delta entries must be integers, got {v!r}")
    deg = [0] * n
    for i, j in edge_list:
        deg[i] += 1
        deg[j] += 1
    for v in range(n):
        if deg[v] % 2:
            raise ParityError(
                f"vertex {v} has odd degree {deg[v]}; target out-degree "
                "d/2 + delta is not an integer"
            )
    # balance target: out_v - in_v must finish at 2 delta_v
    target = [2 * dv for dv in delta]
    for v in range(n):
        if abs(target[v]) > deg[v]:
            return 0

    remaining = deg[:]
    balance = [0] * n

    def rec(k: int) -> int:
        if k == len(edge_list):
            return 1
        i, j = edge_list[k]
        total = 0
        for di, dj in ((1, -1), (-1, 1)):  # orient i->j, then j->i
            balance[i] += di
            balance[j] += dj
            remaining[i] -= 1
            remaining[j] -= 1
            if (
                abs(target[i] - balance[i]) <= remaining[i]
                and abs(target[j] - balance[j]) <= remaining[j]
            ):
                total += rec(k + 1)
            balance[i] -= di
            balance[j] -= dj
            remaining[i] += 1
            remaining[j] += 1
        return total

    return rec(0)


def count_eulerian_orientations(
    n: int, edges: Iterable[tuple[int, int]], *, budget_edges: int = 28
) -> int:
    """Orientations with out-degree = in-degree at every vertex.

    A vertex of odd degree admits none, so such graphs count zero rather
    than raising.
    """
    edge_list = _normalised_undirected_edges(n, edges)
    _check_budget(len(edge_list), budget_edges, "edge count")
    deg = [0] * n
    for i, j in edge_list:
        deg[i] += 1
        deg[j] += 1
    if any(d % 2 for d in deg):
        return 0
    return count_orientations_with_degrees(
        n, edge_list, [0] * n, budget_edges=budget_edges
    )


def enumerate_undirected(
    d: Sequence[int], *, budget_sum: int = DEFAULT_EDGE_BUDGET
) -> list[frozenset[tuple[int, int]]]:
    """All simple undirected graphs with degree sequence d, as edge sets.

    Infeasible sequences return the empty list.  Each edge is stored as
    (i, j) with i < j.
    """
    n = len(d)
    if any((not isinstance(v, int)) or isinstance(v, bool) or v < 0 for v in d):
        raise DegreeSequenceError("degrees must be non-negative integers")
    total = sum(d)
    _check_budget(total, budget_sum, "degree sum")
    if total % 2:
        return []

    resid = list(d)
    adj: set[tuple[int, int]] = set()
    out: list[frozenset[tuple[int, int]]] = []

    def rec() -> None:
        v = next((u for u in range(n) if resid[u] > 0), None)
        if v is None:
            out.append(frozenset(adj))
            return
        need = resid[v]
        cands = [
            u
            for u in range(v + 1, n)
            if resid[u] > 0 and (v, u) not in adj
        ]
        if need > len(cands):
            return
        resid[v] = 0
        for combo in itertools.combinations(cands, need):
            for u in combo:
                resid[u] -= 1
                adj.add((v, u))
            rec()
            for u in combo:
                resid[u] += 1
                adj.discard((v, u))
        resid[v] = need

    rec()
    return out


def permutation_moment_oracle(
    u: Sequence[float], v: Sequence[float], *, budget_n: int = 9
) -> tuple[float, float, float]:
    """Exhaustive mean, variance and exp-moment of Psi(sigma) = sum u_k v_{sigma(k)}.

    The mean and variance are accumulated in exact rational arithmetic (every
    float is a rational) and rounded only on return; the exponential moment
    is a plain float average.
    """
    n = len(u)
    if len(v) != n or n == 0:
        raise DomainError("u and v must be equal-length, non-empty")
    _check_budget(n, budget_n, "sequence length n")
    uf = [Fraction(x) for x in u]
    vf = [Fraction(x) for x in v]
    total = Fraction(0)
    total_sq = Fraction(0)
    total_exp = 0.0
    count = math.factorial(n)
    for perm in itertools.permutations(range(n)):
        psi = sum((uf[k] * vf[perm[k]] for k in range(n)), Fraction(0))
        total += psi
        total_sq += psi * psi
        total_exp += math.exp(float(psi))
    mean = total / count
    var = total_sq / count - mean * mean
    return float(mean), float(var), total_exp / count
