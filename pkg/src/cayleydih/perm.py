"""Permutations of vertex indices and explicitly listed permutation groups.

A permutation is a tuple of images, ``p[v]`` being the image of vertex v.
Composition follows function notation: ``compose(p, q)`` applies q first.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import CapExceeded, DegreeMismatch

Permutation = tuple[int, ...]

DEFAULT_CAP = 2**20


def identity_perm(n: int) -> Permutation:
    return tuple(range(n))


def compose(p: Permutation, q: Permutation) -> Permutation:
    """(p o q)(v) = p(q(v))."""
    if len(p) != len(q):
        raise DegreeMismatch(f"cannot compose degree {len(p)} with degree {len(q)}")
    return tuple(p[v] for v in q)


def inverse(p: Permutation) -> Permutation:
    out = [0] * len(p)
    for v, w in enumerate(p):
        out[w] = v
    return tuple(out)


def perm_power(p: Permutation, m: int) -> Permutation:
    out = identity_perm(len(p))
    for _ in range(m):
        out = compose(p, out)
    return out


def perm_order(p: Permutation) -> int:
    ident = identity_perm(len(p))
    q, k = p, 1
    while q != ident:
        q = compose(p, q)
        k += 1
    return k


def format_perm(p: Permutation) -> str:
    return "[" + ",".join(str(v) for v in p) + "]"


def parse_perm(text: str) -> Permutation:
    body = text.strip()
    if not (body.startswith("[") and body.endswith("]")):
        raise ValueError(f"permutation must look like [i0,i1,...]: {text!r}")
    inner = body[1:-1].strip()
    p = tuple(int(x) for x in inner.split(",")) if inner else ()
    if sorted(p) != list(range(len(p))):
        raise ValueError(f"not a permutation: {text!r}")
    return p


@dataclass(frozen=True)
class PermSet:
    n: int
    elements: tuple[Permutation, ...]
    closed: bool = False
    _index: dict = field(default=None, repr=False, compare=False, hash=False)

    def __post_init__(self):
        seen = {}
        for p in self.elements:
            if len(p) != self.n:
                raise DegreeMismatch(f"permutation of degree {len(p)} in a set of degree {self.n}")
            seen.setdefault(tuple(p), len(seen))
        object.__setattr__(self, "elements", tuple(seen))
        object.__setattr__(self, "_index", seen)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, p) -> bool:
        return tuple(p) in self._index

    def index(self, p: Permutation) -> int:
        return self._index[tuple(p)]

    def as_array(self) -> np.ndarray:
        return np.asarray(self.elements, dtype=np.int64).reshape(len(self.elements), self.n)

    def element_set(self) -> frozenset:
        return frozenset(self.elements)


def generate_closure(gens, cap: int = DEFAULT_CAP, n: int | None = None) -> PermSet:
    """Group generated by ``gens``, listed breadth-first from the identity.

    Each BFS layer is expanded element by element and, within an element,
    generator by generator; a product is ``compose(element, generator)``.
    """
    gens = [tuple(g) for g in gens]
    if not gens and n is None:
        raise ValueError("need at least one generator or an explicit degree")
    n = len(gens[0]) if gens else n
    for g in gens:
        if len(g) != n:
            raise DegreeMismatch("generators have different degrees")
    ident = np.arange(n, dtype=np.int64)
    seen = {ident.tobytes()}
    order = [ident]
    layer = ident[None, :]
    garr = np.asarray(gens, dtype=np.int64).reshape(len(gens), n)
    while len(layer) and len(garr):
        # layer[i][g[v]] for every (i, g): shape (len(layer), ngens, n)
        prods = layer[:, garr].reshape(-1, n)
        fresh = []
        for row in prods:
            key = row.tobytes()
            if key not in seen:
                seen.add(key)
                fresh.append(row)
                if len(seen) > cap:
                    raise CapExceeded(cap)
        order.extend(fresh)
        layer = np.asarray(fresh, dtype=np.int64).reshape(len(fresh), n)
    return PermSet(n, tuple(tuple(int(v) for v in row) for row in order), closed=True)


def orbit(g: PermSet, v: int) -> set[int]:
    if g.closed:
        return {p[v] for p in g}
    seen = {v}
    stack = [v]
    while stack:
        u = stack.pop()
        for p in g:
            w = p[u]
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def is_transitive(g: PermSet) -> bool:
    return g.n == 0 or len(orbit(g, 0)) == g.n


def is_regular(g: PermSet) -> bool:
    """Transitive with exactly as many elements as points."""
    return len(g) == g.n and is_transitive(g)


def is_sharply_transitive(g: PermSet) -> bool:
    """Definition-level check: every ordered pair (u, v) has exactly one carrier."""
    arr = g.as_array()
    if arr.shape[0] != g.n:
        return False
    for u in range(g.n):
        if sorted(arr[:, u].tolist()) != list(range(g.n)):
            return False
    return True


def is_group_closed(g: PermSet) -> bool:
    if identity_perm(g.n) not in g:
        return False
    return all(compose(a, b) in g for a in g for b in g)


def multiplication_table(g: PermSet) -> np.ndarray:
    """table[i, j] = index of elements[i] o elements[j]."""
    arr = g.as_array()
    m = len(arr)
    table = np.empty((m, m), dtype=np.int64)
    for i in range(m):
        prods = arr[i][arr]  # elements[i] o elements[j] for all j
        for j, row in enumerate(prods):
            table[i, j] = g.index(tuple(row.tolist()))
    return table
