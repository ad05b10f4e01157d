"""Connection sets, Cayley graphs and their right-translation automorphisms.

Vertices are the group elements in ``enumerate_elements`` order and u ~ v
exactly when v = s*u for some s in S (left multiplication).  Right
translations z -> z*h then commute with the edge rule, so they are always
automorphisms.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

import numpy as np

from . import groups as gc
from .errors import IdentityInSet, NotInverseClosed, UsageError
from .groups import Element, GroupSpec
from .perm import PermSet


@dataclass(frozen=True)
class ConnectionSet:
    spec: GroupSpec
    elements: tuple[Element, ...]

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, e) -> bool:
        return e in self.elements

    def __str__(self) -> str:
        return ";".join(str(e) for e in self.elements)


@dataclass(frozen=True, eq=False)
class Graph:
    n: int
    adjacency: tuple[tuple[int, ...], ...]
    vertex_labels: tuple[str, ...] | None = None

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.adjacency == other.adjacency

    def __hash__(self):
        return hash((self.n, self.adjacency))

    @classmethod
    def from_edges(cls, n: int, edges, vertex_labels=None) -> Graph:
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) outside 0..{n - 1}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        labels = tuple(vertex_labels) if vertex_labels is not None else None
        return cls(n, tuple(tuple(sorted(s)) for s in nbrs), labels)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adjacency[u] if u < v]

    @property
    def edge_count(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def adjacency_matrix(self) -> np.ndarray:
        adj = np.zeros((self.n, self.n), dtype=np.uint8)
        for u, nb in enumerate(self.adjacency):
            adj[u, list(nb)] = 1
        return adj

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adjacency]

    def digest(self) -> str:
        return hashlib.sha256(to_text(self, labels=False).encode()).hexdigest()


def validate_connection_set(spec: GroupSpec, raw) -> ConnectionSet:
    """Deduplicate ``raw`` and check it is identity-free and inverse-closed."""
    seen: dict[Element, None] = {}
    for e in raw:
        gc._check(spec, e)
        seen.setdefault(e, None)
    elems = tuple(seen)
    if gc.identity(spec) in seen:
        raise IdentityInSet(f"the identity {gc.identity(spec)} is in the connection set")
    missing = [e for e in elems if gc.invert(spec, e) not in seen]
    if missing:
        raise NotInverseClosed(missing)
    return ConnectionSet(spec, elems)


def build_cayley_graph(s: ConnectionSet) -> Graph:
    spec = s.spec
    n = spec.order
    nbrs = [[] for _ in range(n)]
    for e in s:
        targets = gc.left_multiply_indices(spec, e)
        for u, v in enumerate(targets.tolist()):
            nbrs[u].append(v)
    labels = tuple(str(e) for e in gc.enumerate_elements(spec))
    return Graph(n, tuple(tuple(sorted(set(a))) for a in nbrs), labels)


def right_translation(spec: GroupSpec, h: Element) -> tuple[int, ...]:
    """Vertex permutation z -> z*h."""
    return tuple(gc.right_multiply_indices(spec, h).tolist())


def right_translations(spec: GroupSpec) -> PermSet:
    perms = [right_translation(spec, h) for h in gc.enumerate_elements(spec)]
    return PermSet(spec.order, tuple(perms), closed=True)


def is_automorphism(g: Graph, p) -> bool:
    for u in range(g.n):
        image = sorted(p[v] for v in g.adjacency[u])
        if tuple(image) != g.adjacency[p[u]]:
            return False
    return True


def random_connection_set(spec: GroupSpec, rng: np.random.Generator, p: float = 0.5) -> ConnectionSet:
    """Include each inverse pair {g, g^-1} independently with probability p."""
    chosen = []
    done = set()
    ident = gc.identity(spec)
    for e in gc.enumerate_elements(spec):
        if e == ident or e in done:
            continue
        inv = gc.invert(spec, e)
        done.update((e, inv))
        if rng.random() < p:
            chosen.extend({e: None, inv: None})
    return validate_connection_set(spec, chosen)


# ---------------------------------------------------------------------------
# graph file format


def to_text(g: Graph, labels: bool = True) -> str:
    edges = g.edges()
    lines = [f"{g.n} {len(edges)}"]
    lines += [f"{u} {v}" for u, v in edges]
    if labels and g.vertex_labels is not None:
        lines += [f"# label {i} {lab}" for i, lab in enumerate(g.vertex_labels)]
    return "\n".join(lines) + "\n"


def from_text(text: str) -> Graph:
    header = None
    edges = []
    labels: dict[int, str] = {}
    last = 1
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        last = lineno
        col = raw.index(line[0]) + 1
        if line.startswith("#"):
            parts = line[1:].split(None, 2)
            if len(parts) == 3 and parts[0] == "label":
                if not parts[1].isdigit():
                    raise UsageError(f"bad label index {parts[1]!r}", lineno, col)
                labels[int(parts[1])] = parts[2].strip()
            continue
        fields = line.split()
        if len(fields) != 2 or not all(f.isdigit() for f in fields):
            raise UsageError(f"expected two non-negative integers, got {line!r}", lineno, col)
        a, b = int(fields[0]), int(fields[1])
        if header is None:
            header = (a, b)
        else:
            if not a < b < header[0]:
                raise UsageError(f"edge {a} {b} needs u < v < {header[0]}", lineno, col)
            edges.append((a, b))
    if header is None:
        raise UsageError("empty graph file")
    n, m = header
    if len(edges) != m:
        raise UsageError(f"header promises {m} edges, file has {len(edges)}", last, 1)
    label_tuple = None
    if labels:
        if sorted(labels) != list(range(n)):
            raise UsageError("label lines must cover every vertex exactly once", last, 1)
        label_tuple = tuple(labels[i] for i in range(n))
    return Graph.from_edges(n, edges, label_tuple)


def read_graph(path) -> Graph:
    with open(path) as fh:
        return from_text(fh.read())


def write_graph(g: Graph, path) -> None:
    with open(path, "w", newline="\n") as fh:
        fh.write(to_text(g))

