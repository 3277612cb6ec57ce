"""Degree-preserving edge-rewiring operations and their exact count identities.

Two families are implemented.  The first trades one forbidden-cell edge for a
rewired triple (three edges out, three edges in) and relates the strata B_f of
graphs meeting the forbidden set in exactly f cells.  The second dismantles a
designated 2-cycle of a loop-free square graph using four auxiliary edges and
relates the strata T_q of graphs with exactly q 2-cycles.  Both come with
reverse operations, exhaustive spec counters, and verifiers that enumerate
whole strata and assert the forward/reverse double-counting identity as exact
integer equality.

Specs are explicit value objects: every presence/absence condition is checked
up front and violations raise errors naming the failed clause.  Counting is an
exhaustive scan over candidate specs, never a sampled search.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .core import (
    BipartiteGraph,
    BudgetError,
    CensusError,
    DegreePair,
    DomainError,
    ForbiddenGraph,
    SquareOnlyError,
)
from .oracles import enumerate_bipartite

__all__ = [
    "SwitchConditionError",
    "ForwardSwitchSpec",
    "TwoCycleSwitchSpec",
    "SwitchCountReport",
    "apply_forward_x_switch",
    "apply_reverse_x_switch",
    "count_forward_x_switches",
    "count_reverse_x_switches",
    "verify_x_switch_identity",
    "apply_twocycle_switch",
    "apply_reverse_twocycle_switch",
    "count_twocycle_switches",
    "count_reverse_twocycle_switches",
    "verify_twocycle_identity",
    "loopfree_removal_switch",
    "count_loopfree_removal_switches",
    "twocycle_removal_switch",
    "count_twocycle_removal_switches",
]

Edge = tuple[int, int]

VERIFY_BUDGET_S = 14


class SwitchConditionError(CensusError, ValueError):
    """A rewiring precondition failed; the message names the clause."""


def _edge(value, what: str) -> Edge:
    pair = tuple(int(v) for v in value)
    if len(pair) != 2:
        raise DomainError(f"{what} must be an (i, j) pair, got {value!r}")
    return pair  # type: ignore[return-value]


# ---------------------------------------------------------------------------
# forbidden-edge switch (three edges out, three edges in)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ForwardSwitchSpec:
    """One forbidden-edge rewiring step, fully determined by its edges.

    `target_x_edge` is the edge (i, j) lying on a forbidden cell.  The two
    auxiliary edges (a, c) and (b, d) supply the rewiring partners.  Forward
    application removes all three and inserts (i, c), (a, d), (b, j); the
    reverse direction swaps the two triples.
    """

    target_x_edge: Edge
    aux_edges: tuple[Edge, Edge]

    def __init__(self, target_x_edge, aux_edges):
        object.__setattr__(self, "target_x_edge", _edge(target_x_edge, "target"))
        aux = tuple(aux_edges)
        if len(aux) != 2:
            raise DomainError("exactly two auxiliary edges are required")
        object.__setattr__(
            self, "aux_edges", (_edge(aux[0], "first aux"), _edge(aux[1], "second aux"))
        )

    @property
    def removed_edges(self) -> tuple[Edge, Edge, Edge]:
        return (self.target_x_edge,) + self.aux_edges

    @property
    def inserted_edges(self) -> tuple[Edge, Edge, Edge]:
        i, j = self.target_x_edge
        a, c = self.aux_edges[0]
        b, d = self.aux_edges[1]
        return ((i, c), (a, d), (b, j))

    def to_json(self) -> dict:
        return {
            "target_x_edge": list(self.target_x_edge),
            "aux_edges": [list(e) for e in self.aux_edges],
        }

    @classmethod
    def from_json(cls, payload: dict) -> "ForwardSwitchSpec":
        return cls(
            tuple(payload["target_x_edge"]),
            tuple(tuple(e) for e in payload["aux_edges"]),
        )


def _x_forward_violation(
    g: BipartiteGraph, x: ForbiddenGraph, spec: ForwardSwitchSpec
) -> str | None:
    """First violated forward clause, or None when the move is valid.

    The row indices {i, a, b} and column indices {j, c, d} are automatically
    distinct for any valid move: equality anywhere would force one of the
    insertions to collide with a removed or forbidden edge.  They are still
    checked explicitly so errors stay sharp.
    """
    (i, j) = spec.target_x_edge
    (a, c), (b, d) = spec.aux_edges
    if spec.target_x_edge not in g.edges:
        return f"target edge {(i, j)} is not in the graph"
    if spec.target_x_edge not in x.edges:
        return f"target edge {(i, j)} is not a forbidden cell"
    for label, e in (("first aux", (a, c)), ("second aux", (b, d))):
        if e not in g.edges:
            return f"{label} edge {e} is not in the graph"
        if e in x.edges:
            return f"{label} edge {e} lies on a forbidden cell"
    if (a, c) == (b, d):
        return "auxiliary edges must be distinct"
    if len({i, a, b}) != 3:
        return "row indices i, a, b must be distinct"
    if len({j, c, d}) != 3:
        return "column indices j, c, d must be distinct"
    for e in spec.inserted_edges:
        if e in g.edges:
            return f"inserting {e} would create double edge"
        if e in x.edges:
            return f"insertion {e} lands on a forbidden cell"
    return None


def _x_reverse_violation(
    g: BipartiteGraph, x: ForbiddenGraph, spec: ForwardSwitchSpec
) -> str | None:
    """First violated reverse clause, or None.

    The reverse direction expects the rewired triple (i, c), (a, d), (b, j)
    present off the forbidden set, the target cell (i, j) forbidden but
    unoccupied, and both auxiliary slots free in graph and forbidden set.
    """
    (i, j) = spec.target_x_edge
    (a, c), (b, d) = spec.aux_edges
    if spec.target_x_edge not in x.edges:
        return f"target edge {(i, j)} is not a forbidden cell"
    if spec.target_x_edge in g.edges:
        return f"inserting {(i, j)} would create double edge"
    if (a, c) == (b, d):
        return "auxiliary edges must be distinct"
    if len({i, a, b}) != 3:
        return "row indices i, a, b must be distinct"
    if len({j, c, d}) != 3:
        return "column indices j, c, d must be distinct"
    for e in spec.inserted_edges:
        if e not in g.edges:
            return f"rewired edge {e} is not in the graph"
        if e in x.edges:
            return f"rewired edge {e} lies on a forbidden cell"
    for label, e in (("first aux", (a, c)), ("second aux", (b, d))):
        if e in g.edges:
            return f"inserting {label} edge {e} would create double edge"
        if e in x.edges:
            return f"{label} slot {e} lies on a forbidden cell"
    return None


def apply_forward_x_switch(
    g: BipartiteGraph, x: ForbiddenGraph, spec: ForwardSwitchSpec
) -> BipartiteGraph:
    """Trade the forbidden edge of `spec` for the rewired triple.

    Degrees are preserved and the overlap with the forbidden set drops by
    exactly one; both are asserted after the rewiring.
    """
    reason = _x_forward_violation(g, x, spec)
    if reason is not None:
        raise SwitchConditionError(reason)
    out = g.replace(drop=spec.removed_edges, add=spec.inserted_edges)
    assert out.degree_pair() == g.degree_pair()
    assert out.overlap(x) == g.overlap(x) - 1
    return out


def apply_reverse_x_switch(
    g: BipartiteGraph, x: ForbiddenGraph, spec: ForwardSwitchSpec
) -> BipartiteGraph:
    """Undo a forward step: restore the forbidden edge and its partners."""
    reason = _x_reverse_violation(g, x, spec)
    if reason is not None:
        raise SwitchConditionError(reason)
    out = g.replace(drop=spec.inserted_edges, add=spec.removed_edges)
    assert out.degree_pair() == g.degree_pair()
    assert out.overlap(x) == g.overlap(x) + 1
    return out


def count_forward_x_switches(g: BipartiteGraph, x: ForbiddenGraph) -> int:
    """Number of valid forward specs on g, by exhaustive scan.

    Candidates pair each forbidden edge of the graph with every ordered pair
    of distinct free edges; validity is decided by the shared clause checker,
    so this count and the applier can never drift apart.
    """
    x._check_shape(g.degree_pair())
    targets = sorted(g.edges & x.edges)
    free = sorted(g.edges - x.edges)
    total = 0
    for target in targets:
        for first, second in itertools.permutations(free, 2):
            spec = ForwardSwitchSpec(target, (first, second))
            if _x_forward_violation(g, x, spec) is None:
                total += 1
    return total


def count_reverse_x_switches(g: BipartiteGraph, x: ForbiddenGraph) -> int:
    """Number of valid reverse specs on g, by exhaustive scan.

    A reverse spec is pinned down by the unoccupied forbidden cell (i, j)
    together with the graph edges playing (i, c), (b, j), and (a, d); the
    scan assembles exactly those combinations.
    """
    x._check_shape(g.degree_pair())
    row_edges: dict[int, list[Edge]] = {}
    col_edges: dict[int, list[Edge]] = {}
    for e in sorted(g.edges):
        row_edges.setdefault(e[0], []).append(e)
        col_edges.setdefault(e[1], []).append(e)
    all_edges = sorted(g.edges)
    total = 0
    for target in sorted(x.edges - g.edges):
        i, j = target
        for (_, c) in row_edges.get(i, ()):
            for (b, _) in col_edges.get(j, ()):
                for (a, d) in all_edges:
                    spec = ForwardSwitchSpec(target, ((a, c), (b, d)))
                    if _x_reverse_violation(g, x, spec) is None:
                        total += 1
    return total


@dataclass(frozen=True)
class SwitchCountReport:
    """Stratum-level totals of the double-counting identity."""

    f_or_q: int
    total_forward: int
    total_reverse: int

    def to_json(self) -> dict:
        return {
            "f_or_q": self.f_or_q,
            "total_forward": str(self.total_forward),
            "total_reverse": str(self.total_reverse),
        }


def verify_x_switch_identity(
    dp: DegreePair,
    x: ForbiddenGraph,
    f: int,
    *,
    budget_s: int = VERIFY_BUDGET_S,
) -> SwitchCountReport:
    """Exhaustively check sum-of-forward over B_f == sum-of-reverse over B_{f-1}.

    Enumerates every realisation of dp, buckets by forbidden-set overlap, and
    totals the applicable moves on the two adjacent strata.  Equality is
    asserted, then reported.
    """
    if f < 1:
        raise DomainError(f"stratum index must be >= 1, got {f}")
    if dp.total > budget_s:
        raise BudgetError(
            f"edge count S = {dp.total} exceeds verification budget {budget_s}"
        )
    x._check_shape(dp)
    total_forward = 0
    total_reverse = 0
    for g in enumerate_bipartite(dp, budget_s=budget_s):
        k = g.overlap(x)
        if k == f:
            total_forward += count_forward_x_switches(g, x)
        elif k == f - 1:
            total_reverse += count_reverse_x_switches(g, x)
    assert total_forward == total_reverse, (f, total_forward, total_reverse)
    return SwitchCountReport(f, total_forward, total_reverse)


# ---------------------------------------------------------------------------
# 2-cycle switch (six arcs out, six arcs in, ten distinct indices)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TwoCycleSwitchSpec:
    """One 2-cycle rewiring step on a loop-free square graph.

    `cycle` is the ordered pair (i, j) whose two arcs (i, j) and (j, i) are
    dismantled.  `aux` holds four auxiliary arcs (b, a), (d, c), (f, e),
    (h, g); together with i and j their endpoints must be ten distinct
    vertices.  Swapping the cycle order and reversing the aux tuple yields
    the mirror spec with identical edge sets, which is why ordered spec
    counts are even and are halved by the counters.
    """

    cycle: Edge
    aux: tuple[Edge, Edge, Edge, Edge]

    def __init__(self, cycle, aux):
        object.__setattr__(self, "cycle", _edge(cycle, "cycle"))
        aux_t = tuple(aux)
        if len(aux_t) != 4:
            raise DomainError("exactly four auxiliary arcs are required")
        object.__setattr__(
            self,
            "aux",
            tuple(_edge(e, f"aux[{k}]") for k, e in enumerate(aux_t)),
        )

    def indices(self) -> tuple[int, ...]:
        i, j = self.cycle
        flat: list[int] = [i, j]
        for u, v in self.aux:
            flat.extend((u, v))
        return tuple(flat)

    @property
    def removed_arcs(self) -> frozenset[Edge]:
        i, j = self.cycle
        return frozenset(self.aux) | {(i, j), (j, i)}

    @property
    def inserted_arcs(self) -> frozenset[Edge]:
        i, j = self.cycle
        e1, e2, e3, e4 = self.aux
        return frozenset(
            {
                (j, e2[1]),
                (e1[0], i),
                (e2[0], e1[1]),
                (i, e3[1]),
                (e3[0], e4[1]),
                (e4[0], j),
            }
        )

    @property
    def excluded_arcs(self) -> frozenset[Edge]:
        """Arcs that must be absent in both directions of the switch.

        Their absence is exactly what keeps every 2-cycle other than the
        designated one intact: each inserted arc's opposite and each removed
        auxiliary arc's opposite appears here.
        """
        i, j = self.cycle
        e1, e2, e3, e4 = self.aux
        return frozenset(
            {
                (e1[1], e1[0]),
                (e2[1], e2[0]),
                (e3[1], e3[0]),
                (e4[1], e4[0]),
                (e1[1], e2[0]),
                (e2[1], j),
                (i, e1[0]),
                (j, e4[0]),
                (e3[1], i),
                (e4[1], e3[0]),
            }
        )

    def mirror(self) -> "TwoCycleSwitchSpec":
        """The order-swapped twin describing the same rewiring."""
        i, j = self.cycle
        e1, e2, e3, e4 = self.aux
        return TwoCycleSwitchSpec((j, i), (e4, e3, e2, e1))

    def to_json(self) -> dict:
        return {
            "cycle": list(self.cycle),
            "aux": [list(e) for e in self.aux],
        }

    @classmethod
    def from_json(cls, payload: dict) -> "TwoCycleSwitchSpec":
        return cls(tuple(payload["cycle"]), tuple(tuple(e) for e in payload["aux"]))


def _square_loopfree_or_raise(g: BipartiteGraph) -> None:
    if g.m != g.n:
        raise SquareOnlyError("2-cycle switches need a square (digraph) graph")
    if g.loop_count():
        raise DomainError("2-cycle switches operate on loop-free graphs")


def _twocycle_shape_violation(spec: TwoCycleSwitchSpec) -> str | None:
    idx = spec.indices()
    if len(set(idx)) != 10:
        return "the ten indices of the move must be distinct"
    return None


def _twocycle_forward_violation(
    g: BipartiteGraph, spec: TwoCycleSwitchSpec
) -> str | None:
    reason = _twocycle_shape_violation(spec)
    if reason is not None:
        return reason
    for arc in sorted(spec.removed_arcs):
        if arc not in g.edges:
            return f"removed arc {arc} is not in the graph"
    for arc in sorted(spec.inserted_arcs):
        if arc in g.edges:
            return f"inserting {arc} would create double edge"
    for arc in sorted(spec.excluded_arcs):
        if arc in g.edges:
            return f"excluded arc {arc} is present"
    return None


def _twocycle_reverse_violation(
    g: BipartiteGraph, spec: TwoCycleSwitchSpec
) -> str | None:
    reason = _twocycle_shape_violation(spec)
    if reason is not None:
        return reason
    for arc in sorted(spec.inserted_arcs):
        if arc not in g.edges:
            return f"rewired arc {arc} is not in the graph"
    for arc in sorted(spec.removed_arcs):
        if arc in g.edges:
            return f"inserting {arc} would create double edge"
    for arc in sorted(spec.excluded_arcs):
        if arc in g.edges:
            return f"excluded arc {arc} is present"
    return None


def apply_twocycle_switch(
    g: BipartiteGraph, spec: TwoCycleSwitchSpec
) -> BipartiteGraph:
    """Dismantle the designated 2-cycle, rewiring through four helper arcs.

    Exactly one 2-cycle disappears, no loop appears, and degrees are
    preserved; all three facts are asserted on the result.
    """
    _square_loopfree_or_raise(g)
    reason = _twocycle_forward_violation(g, spec)
    if reason is not None:
        raise SwitchConditionError(reason)
    out = g.replace(drop=sorted(spec.removed_arcs), add=sorted(spec.inserted_arcs))
    assert out.degree_pair() == g.degree_pair()
    assert out.loop_count() == 0
    assert out.twocycle_count() == g.twocycle_count() - 1
    return out


def apply_reverse_twocycle_switch(
    g: BipartiteGraph, spec: TwoCycleSwitchSpec
) -> BipartiteGraph:
    """Reassemble the designated 2-cycle from its rewired configuration."""
    _square_loopfree_or_raise(g)
    reason = _twocycle_reverse_violation(g, spec)
    if reason is not None:
        raise SwitchConditionError(reason)
    out = g.replace(drop=sorted(spec.inserted_arcs), add=sorted(spec.removed_arcs))
    assert out.degree_pair() == g.degree_pair()
    assert out.loop_count() == 0
    assert out.twocycle_count() == g.twocycle_count() + 1
    return out


def _twocycle_aux_pool(g: BipartiteGraph, i: int, j: int) -> list[Edge]:
    banned = {i, j}
    return sorted(e for e in g.edges if e[0] not in banned and e[1] not in banned)


def count_twocycle_switches(g: BipartiteGraph) -> int:
    """Number of unordered forward specs dismantling some 2-cycle of g.

    Ordered specs come in mirror pairs (cycle order swapped, aux reversed),
    so the ordered total is asserted even and halved.
    """
    _square_loopfree_or_raise(g)
    ordered = 0
    for i, j in g.twocycles():
        for cycle in ((i, j), (j, i)):
            pool = _twocycle_aux_pool(g, *cycle)
            for aux in itertools.permutations(pool, 4):
                spec = TwoCycleSwitchSpec(cycle, aux)
                if _twocycle_forward_violation(g, spec) is None:
                    ordered += 1
    assert ordered % 2 == 0, ordered
    return ordered // 2


def count_reverse_twocycle_switches(g: BipartiteGraph) -> int:
    """Number of unordered reverse specs reassembling some 2-cycle into g.

    Candidates are pinned by the six rewired arcs: scanning arcs out of j,
    into i, out of i, into j, plus two free arcs fixes every index.  The
    mirror-pair argument applies unchanged, so the ordered count is halved.
    """
    _square_loopfree_or_raise(g)
    arcs = sorted(g.edges)
    out_of: dict[int, list[Edge]] = {}
    into: dict[int, list[Edge]] = {}
    for e in arcs:
        out_of.setdefault(e[0], []).append(e)
        into.setdefault(e[1], []).append(e)
    ordered = 0
    n = g.n
    for i in range(n):
        for j in range(n):
            if i == j or (i, j) in g.edges or (j, i) in g.edges:
                continue
            for (_, c) in out_of.get(j, ()):
                for (b, _) in into.get(i, ()):
                    for (d, a) in arcs:
                        for (_, e_col) in out_of.get(i, ()):
                            for (f_row, g_col) in arcs:
                                for (h, _) in into.get(j, ()):
                                    spec = TwoCycleSwitchSpec(
                                        (i, j),
                                        (
                                            (b, a),
                                            (d, c),
                                            (f_row, e_col),
                                            (h, g_col),
                                        ),
                                    )
                                    if (
                                        _twocycle_reverse_violation(g, spec)
                                        is None
                                    ):
                                        ordered += 1
    assert ordered % 2 == 0, ordered
    return ordered // 2


def verify_twocycle_identity(
    dp: DegreePair,
    q: int,
    *,
    budget_s: int = VERIFY_BUDGET_S,
) -> SwitchCountReport:
    """Check sum-of-forward over T_q == sum-of-reverse over T_{q-1} exactly.

    Strata live inside the loop-free realisations of dp, graded by 2-cycle
    count.  Equality is asserted, then reported.
    """
    if q < 1:
        raise DomainError(f"stratum index must be >= 1, got {q}")
    if dp.m != dp.n:
        raise SquareOnlyError("2-cycle strata need a square degree pair")
    if dp.total > budget_s:
        raise BudgetError(
            f"edge count S = {dp.total} exceeds verification budget {budget_s}"
        )
    diagonal = ForbiddenGraph.diagonal(dp.n)
    total_forward = 0
    total_reverse = 0
    for g in enumerate_bipartite(dp, diagonal, budget_s=budget_s):
        k = g.twocycle_count()
        if k == q:
            total_forward += count_twocycle_switches(g)
        elif k == q - 1:
            total_reverse += count_reverse_twocycle_switches(g)
    assert total_forward == total_reverse, (q, total_forward, total_reverse)
    return SwitchCountReport(q, total_forward, total_reverse)


# ---------------------------------------------------------------------------
# removal switches used by the cutoff arguments
# ---------------------------------------------------------------------------


def _multi_removal_violation(
    g: BipartiteGraph,
    targets: Sequence[Edge],
    partners: Sequence[Edge],
) -> str | None:
    """First violated clause of the multi-edge removal switch, or None.

    Targets may share endpoints among themselves; partners must be present,
    pairwise vertex-disjoint, and vertex-disjoint from every target.  The
    crossover insertions (target row, partner column) and (partner row,
    target column) must all be absent.
    """
    if len(set(targets)) != len(targets):
        return "target edges must be distinct"
    for e in targets:
        if e not in g.edges:
            return f"target edge {e} is not in the graph"
    rows_used: set[int] = set()
    cols_used: set[int] = set()
    for e in targets:
        rows_used.add(e[0])
        cols_used.add(e[1])
    seen: set[Edge] = set(targets)
    for e in partners:
        if e not in g.edges:
            return f"partner edge {e} is not in the graph"
        if e in seen:
            return f"partner edge {e} reuses an already chosen edge"
        if e[0] in rows_used or e[1] in cols_used:
            return f"partner edge {e} shares a vertex with another chosen edge"
        rows_used.add(e[0])
        cols_used.add(e[1])
        seen.add(e)
    for (tj, tk), (p, q) in zip(targets, partners):
        for ins in ((tj, q), (p, tk)):
            if ins in g.edges:
                return f"inserting {ins} would create double edge"
    return None


def loopfree_removal_switch(
    g: BipartiteGraph,
    loop_set: Sequence[Edge],
    partners: Sequence[Edge],
    *,
    budget_f: int = 4,
) -> BipartiteGraph:
    """Remove every edge of `loop_set` at once via crossover rewiring.

    Each designated edge (j, k) is paired with a partner edge (p, q); both
    are deleted and the crossovers (j, q) and (p, k) inserted.  Degrees are
    preserved exactly while the result avoids every designated cell.  With
    an empty designation the graph is returned unchanged.  Kept to at most
    `budget_f` edges: the operation exists for identity testing, not bulk
    rewiring.
    """
    targets = [_edge(e, "target") for e in loop_set]
    mates = [_edge(e, "partner") for e in partners]
    if len(mates) != len(targets):
        raise DomainError("need exactly one partner edge per removed edge")
    if len(targets) > budget_f:
        raise BudgetError(
            f"removal switch limited to {budget_f} edges, got {len(targets)}"
        )
    if not targets:
        return g
    reason = _multi_removal_violation(g, targets, mates)
    if reason is not None:
        raise SwitchConditionError(reason)
    drop = list(targets) + list(mates)
    add = []
    for (tj, tk), (p, q) in zip(targets, mates):
        add.extend(((tj, q), (p, tk)))
    out = g.replace(drop=drop, add=add)
    assert out.degree_pair() == g.degree_pair()
    assert not (set(targets) & out.edges)
    return out


def count_loopfree_removal_switches(
    g: BipartiteGraph,
    loop_set: Sequence[Edge],
    *,
    budget_f: int = 4,
) -> int:
    """Number of valid partner tuples for removing `loop_set` in one switch.

    Scans ordered tuples of graph edges; an empty designation has exactly
    the identity switch.
    """
    targets = [_edge(e, "target") for e in loop_set]
    if len(targets) > budget_f:
        raise BudgetError(
            f"removal switch limited to {budget_f} edges, got {len(targets)}"
        )
    if not targets:
        return 1
    pool = sorted(g.edges)
    total = 0
    for mates in itertools.permutations(pool, len(targets)):
        if _multi_removal_violation(g, targets, mates) is None:
            total += 1
    return total


def _twocycle_removal_violation(
    g: BipartiteGraph, cycle: Edge, first_aux: Edge, second_aux: Edge
) -> str | None:
    """First violated clause of the 2-cycle removal switch, or None.

    The eight required non-arcs implicitly rule out every degenerate index
    collision (an auxiliary endpoint landing on i or j forces one of the
    presence conditions to contradict a non-arc condition), so no separate
    distinctness checks on individual indices are needed beyond i != j.
    """
    i, j = cycle
    a, b = first_aux
    c, d = second_aux
    if i == j:
        return "cycle indices must be distinct"
    for arc in ((i, j), (j, i)):
        if arc not in g.edges:
            return f"cycle arc {arc} is not in the graph"
    if (a, b) == (c, d):
        return "auxiliary arcs must be distinct"
    for label, arc in (("first aux", (a, b)), ("second aux", (c, d))):
        if arc not in g.edges:
            return f"{label} arc {arc} is not in the graph"
        if arc in ((i, j), (j, i)):
            return f"{label} arc {arc} reuses a cycle arc"
    for arc in ((i, b), (b, i), (a, i), (i, a), (j, d), (d, j), (c, j), (j, c)):
        if arc in g.edges:
            return f"required non-arc {arc} is present"
    return None


def twocycle_removal_switch(
    g: BipartiteGraph,
    cycle: Edge,
    first_aux: Edge,
    second_aux: Edge,
) -> BipartiteGraph:
    """Destroy the 2-cycle on `cycle` using two auxiliary arcs.

    Arcs (i, j), (j, i), (a, b), (c, d) are removed and (i, b), (j, d),
    (a, i), (c, j) inserted.  Degrees are preserved, no loop can appear, and
    the designated 2-cycle is gone; auxiliary removals may incidentally
    destroy other 2-cycles, so only the designated one is asserted.
    """
    _square_loopfree_or_raise(g)
    cycle = _edge(cycle, "cycle")
    first_aux = _edge(first_aux, "first aux")
    second_aux = _edge(second_aux, "second aux")
    reason = _twocycle_removal_violation(g, cycle, first_aux, second_aux)
    if reason is not None:
        raise SwitchConditionError(reason)
    i, j = cycle
    a, b = first_aux
    c, d = second_aux
    out = g.replace(
        drop=[(i, j), (j, i), (a, b), (c, d)],
        add=[(i, b), (j, d), (a, i), (c, j)],
    )
    assert out.degree_pair() == g.degree_pair()
    assert out.loop_count() == 0
    assert (i, j) not in out.edges and (j, i) not in out.edges
    return out


def count_twocycle_removal_switches(g: BipartiteGraph, cycle: Edge) -> int:
    """Number of ordered auxiliary-arc pairs that can remove `cycle`."""
    _square_loopfree_or_raise(g)
    cycle = _edge(cycle, "cycle")
    pool = sorted(e for e in g.edges if e not in (cycle, cycle[::-1]))
    total = 0
    for first, second in itertools.permutations(pool, 2):
        if _twocycle_removal_violation(g, cycle, first, second) is None:
            total += 1
    return total
