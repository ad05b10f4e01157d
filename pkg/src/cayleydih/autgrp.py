"""Brute-force oracle: full automorphism groups and their regular subgroups.

The automorphism group is listed element by element with an
individualisation-refinement search; regular subgroups are then found by
choosing, vertex by vertex, the automorphism that carries vertex 0 there and
rejecting any partial group in which two elements agree on vertex 0.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import _kernels
from .cayley import Graph
from .errors import CapExceeded, InternalVerificationFailed, TooLarge
from .groups import TAG_RANK, GroupType, classify, type_tag
from .perm import (
    DEFAULT_CAP,
    PermSet,
    format_perm,
    is_group_closed,
    is_regular,
    is_sharply_transitive,
)

MAX_VERTICES = 64
MAX_REGULAR_SUBGROUPS = 10**6
MAX_SEARCH_NODES = 5 * 10**7
CONJUGACY_AUT_LIMIT = 10**4


@dataclass
class AutResult:
    graph_hash: str
    aut_order: int
    array: np.ndarray = field(repr=False)

    @cached_property
    def elements(self) -> PermSet:
        rows = tuple(tuple(int(v) for v in row) for row in self.array)
        return PermSet(self.array.shape[1], rows, closed=True)


@dataclass
class RegularSubgroup:
    group: PermSet
    generators: tuple[tuple[int, ...], ...]
    table: np.ndarray = field(repr=False)
    conjugacy_class: int | None = None

    @cached_property
    def group_type(self) -> GroupType:
        # full classification is the expensive part of a report, so it is deferred
        return _regular_type(self.table)

    @cached_property
    def tag(self) -> str:
        if "group_type" in self.__dict__:
            return self.group_type.tag
        return type_tag(_cayley_table(self.table))


@dataclass
class RegularSubgroupReport:
    aut: AutResult
    subgroups: list[RegularSubgroup]

    @property
    def counts_by_type(self) -> Counter:
        return Counter(str(s.group_type) for s in self.subgroups)

    def element_sets(self) -> set[frozenset]:
        return {s.group.element_set() for s in self.subgroups}

    def contains(self, group: PermSet) -> bool:
        return group.element_set() in self.element_sets()


def automorphism_group(g: Graph, cap: int = DEFAULT_CAP, jit: bool | None = None) -> AutResult:
    if g.n > MAX_VERTICES:
        raise TooLarge(g.n, MAX_VERTICES)
    adj = g.adjacency_matrix()
    arr, count = _kernels.automorphisms(adj, cap, jit=jit)
    if count < 0:
        raise CapExceeded(cap, "automorphism group")
    # re-check every map rather than trusting the search pruning
    if not _kernels.preserves_adjacency(adj, arr, jit=jit).all():
        raise InternalVerificationFailed("search returned a map that is not an automorphism")
    return AutResult(g.digest(), int(count), arr)


def _cayley_table(arr: np.ndarray) -> np.ndarray:
    # rows sorted by image of 0, so row i o row j sits at slot row_i[row_j[0]]
    return arr[:, arr[:, 0]]


def _regular_type(arr: np.ndarray) -> GroupType:
    return classify(_cayley_table(arr))


def enumerate_regular_subgroups(
    g: Graph,
    aut: AutResult | None = None,
    cap: int = DEFAULT_CAP,
    max_subgroups: int = MAX_REGULAR_SUBGROUPS,
    max_nodes: int = MAX_SEARCH_NODES,
    jit: bool | None = None,
) -> RegularSubgroupReport:
    if aut is None:
        aut = automorphism_group(g, cap=cap, jit=jit)
    adj = g.adjacency_matrix()
    rows, count = _kernels.regular_subgroups(aut.array, max_subgroups, max_nodes=max_nodes, jit=jit)
    if count == -2:
        raise CapExceeded(max_nodes, "regular subgroup search nodes")
    if count < 0:
        raise CapExceeded(max_subgroups, "regular subgroup list")

    found = []
    seen = set()
    for row in rows[:count]:
        gens = np.array([aut.array[i] for i in row if i >= 0], dtype=np.int64).reshape(-1, g.n)
        if not len(gens):  # trivial graph
            gens = np.arange(g.n)[None, :]
        table = _kernels.close_regular(gens, jit=jit)
        if table is None:
            raise InternalVerificationFailed("search produced a non-regular subgroup")
        group = PermSet(g.n, tuple(tuple(r) for r in table.tolist()), closed=True)
        if not is_sharply_transitive(group):
            raise InternalVerificationFailed("search produced a non-regular subgroup")
        if not _kernels.preserves_adjacency(adj, table, jit=jit).all():
            raise InternalVerificationFailed("regular subgroup contains a non-automorphism")
        key = group.element_set()
        if key in seen:
            raise InternalVerificationFailed("regular subgroup reported twice")
        seen.add(key)
        found.append(RegularSubgroup(group, tuple(tuple(r) for r in gens.tolist()), table))

    # rows are ordered by image of 0, which is also lexicographic order of the elements
    found.sort(key=lambda s: (TAG_RANK[s.tag], s.table.tolist()))
    if aut.aut_order <= CONJUGACY_AUT_LIMIT:
        _annotate_conjugacy(aut, found)
    return RegularSubgroupReport(aut, found)


def _annotate_conjugacy(aut: AutResult, subgroups: list[RegularSubgroup]) -> None:
    lookup = {s.group.element_set(): i for i, s in enumerate(subgroups)}
    a = aut.array
    a_inv = np.argsort(a, axis=1)
    label = 0
    for i, s in enumerate(subgroups):
        if s.conjugacy_class is not None:
            continue
        label += 1
        arr = s.group.as_array()
        for k in range(len(a)):
            # a o r o a^-1
            conj = a[k][arr[:, a_inv[k]]]
            key = frozenset(tuple(int(v) for v in row) for row in conj)
            j = lookup.get(key)
            if j is not None and subgroups[j].conjugacy_class is None:
                subgroups[j].conjugacy_class = label


def verify_action(g: Graph, action) -> bool:
    """True iff every element is an automorphism and the set is a regular group."""
    group = action.group if hasattr(action, "group") else action
    if group.n != g.n or not len(group):
        return False
    if not is_group_closed(group):
        return False
    adj = g.adjacency_matrix()
    return bool(_kernels.preserves_adjacency(adj, group.as_array()).all()) and is_regular(group)


def format_report(g: Graph, report: RegularSubgroupReport) -> str:
    lines = [
        f"GRAPH {report.aut.graph_hash}",
        f"VERTICES {g.n} EDGES {g.edge_count}",
        f"AUT ORDER {report.aut.aut_order}",
        f"REGULAR SUBGROUPS {len(report.subgroups)}",
    ]
    by_type = {}
    for s in report.subgroups:
        by_type.setdefault(str(s.group_type), [s.group_type.sort_key, 0])[1] += 1
    for name, (_, c) in sorted(by_type.items(), key=lambda kv: (kv[1][0], kv[0])):
        lines.append(f"COUNT {name} {c}")
    for i, s in enumerate(report.subgroups, 1):
        lines.append(f"SUBGROUP {i}")
        lines.append(f"TYPE {s.group_type}")
        if s.conjugacy_class is not None:
            lines.append(f"CLASS {s.conjugacy_class}")
        lines += [f"GEN {format_perm(p)}" for p in s.generators]
    return "\n".join(lines) + "\n"
