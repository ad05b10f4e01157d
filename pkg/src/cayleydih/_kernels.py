"""Search kernels: partition refinement, automorphism enumeration, regular subgroups.

Every kernel exists twice.  The ``*_nb`` versions are explicit loops compiled
with numba; the ``*_np`` versions are numpy/recursive Python.  Both walk the
same search tree in the same order, so their outputs are identical.

Set ``CAYLEYDIH_DISABLE_JIT=1`` to force the numpy path (numba is also
skipped automatically when it is not importable).
"""

from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f


def _env_disabled() -> bool:
    return os.environ.get("CAYLEYDIH_DISABLE_JIT", "").strip().lower() in ("1", "true", "yes", "on")


USE_JIT = HAVE_NUMBA and not _env_disabled()


def _use_jit(jit: bool | None) -> bool:
    if jit is None:
        return USE_JIT
    return bool(jit) and HAVE_NUMBA


def to_csr(adj: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    n = adj.shape[0]
    indptr = np.zeros(n + 1, dtype=np.int64)
    rows, cols = np.nonzero(adj)
    np.cumsum(np.bincount(rows, minlength=n), out=indptr[1:])
    return indptr, cols.astype(np.int64)


# ---------------------------------------------------------------------------
# numba kernels


@njit(cache=True)
def _refine_nb(indptr, indices, colors):
    n = colors.shape[0]
    cur = colors.copy()
    k = 0
    for v in range(n):
        if cur[v] + 1 > k:
            k = cur[v] + 1
    while True:
        keys = np.zeros((n, k + 1), np.int64)
        for v in range(n):
            keys[v, 0] = cur[v]
            for t in range(indptr[v], indptr[v + 1]):
                keys[v, 1 + cur[indices[t]]] += 1
        # stable LSD sort gives lexicographic row order
        order = np.arange(n)
        for col in range(k, -1, -1):
            col_keys = np.empty(n, np.int64)
            for i in range(n):
                col_keys[i] = keys[order[i], col]
            order = order[np.argsort(col_keys, kind="mergesort")]
        new = np.empty(n, np.int64)
        c = 0
        new[order[0]] = 0
        for i in range(1, n):
            a = order[i - 1]
            b = order[i]
            for col in range(k + 1):
                if keys[a, col] != keys[b, col]:
                    c += 1
                    break
            new[b] = c
        if c + 1 == k:
            return new
        cur = new
        k = c + 1


@njit(cache=True)
def _individualize_nb(colors, w):
    n = colors.shape[0]
    k = 0
    for v in range(n):
        if colors[v] + 1 > k:
            k = colors[v] + 1
    raw = np.empty(n, np.int64)
    for v in range(n):
        raw[v] = 2 * colors[v] + 1
    raw[w] = 2 * colors[w]
    present = np.zeros(2 * k, np.int64)
    for v in range(n):
        present[raw[v]] = 1
    rank = np.zeros(2 * k, np.int64)
    acc = 0
    for c in range(2 * k):
        rank[c] = acc
        acc += present[c]
    out = np.empty(n, np.int64)
    for v in range(n):
        out[v] = rank[raw[v]]
    return out


@njit(cache=True)
def _same_cells_nb(a, b):
    n = a.shape[0]
    ca = np.zeros(n + 1, np.int64)
    cb = np.zeros(n + 1, np.int64)
    for v in range(n):
        ca[a[v]] += 1
        cb[b[v]] += 1
    for c in range(n + 1):
        if ca[c] != cb[c]:
            return False
    return True


@njit(cache=True)
def _target_cell_nb(colors):
    n = colors.shape[0]
    sizes = np.zeros(n, np.int64)
    for v in range(n):
        sizes[colors[v]] += 1
    best = -1
    best_size = n + 1
    for c in range(n):
        if 1 < sizes[c] < best_size:
            best = c
            best_size = sizes[c]
    return best


@njit(cache=True)
def _automorphisms_nb(indptr, indices, adj, cap):
    n = adj.shape[0]
    col_l = np.zeros((n + 1, n), np.int64)
    col_l[0] = _refine_nb(indptr, indices, np.zeros(n, np.int64))
    target = np.zeros(n + 1, np.int64)
    depth = 0
    while True:
        cell = _target_cell_nb(col_l[depth])
        if cell < 0:
            break
        base = 0
        while col_l[depth, base] != cell:
            base += 1
        target[depth] = cell
        col_l[depth + 1] = _refine_nb(indptr, indices, _individualize_nb(col_l[depth], base))
        depth += 1
    leaf = depth
    pos_l = np.empty(n, np.int64)
    for v in range(n):
        pos_l[col_l[leaf, v]] = v

    out = np.empty((64, n), np.int64)
    count = 0
    col_r = np.zeros((n + 1, n), np.int64)
    col_r[0] = col_l[0]
    ptr = np.zeros(n + 1, np.int64)
    perm = np.empty(n, np.int64)
    d = 0
    while d >= 0:
        if d == leaf:
            for v in range(n):
                perm[pos_l[col_r[leaf, v]]] = v
            ok = True
            for u in range(n):
                pu = perm[u]
                for t in range(indptr[u], indptr[u + 1]):
                    if adj[pu, perm[indices[t]]] == 0:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                if count == cap:
                    return out[:0], -1
                if count == out.shape[0]:
                    grown = np.empty((2 * out.shape[0], n), np.int64)
                    grown[:count] = out[:count]
                    out = grown
                out[count] = perm
                count += 1
            d -= 1
            continue
        w = ptr[d]
        while w < n and col_r[d, w] != target[d]:
            w += 1
        if w >= n:
            d -= 1
            continue
        ptr[d] = w + 1
        new = _refine_nb(indptr, indices, _individualize_nb(col_r[d], w))
        if _same_cells_nb(new, col_l[d + 1]):
            col_r[d + 1] = new
            ptr[d + 1] = 0
            d += 1
    return out[:count], count


@njit(cache=True)
def _close_nb(auts, gens, ngens, table, filled):
    # BFS under right multiplication by the generators; slots are images of 0
    n = auts.shape[1]
    for s in range(n):
        filled[s] = False
    for v in range(n):
        table[0, v] = v
    filled[0] = True
    queue = np.empty(n, np.int64)
    queue[0] = 0
    head = 0
    tail = 1
    prod = np.empty(n, np.int64)
    while head < tail:
        a = queue[head]
        head += 1
        for i in range(ngens):
            g = auts[gens[i]]
            for v in range(n):
                prod[v] = table[a, g[v]]
            slot = prod[0]
            if filled[slot]:
                for v in range(n):
                    if table[slot, v] != prod[v]:
                        return False
            else:
                table[slot] = prod
                filled[slot] = True
                queue[tail] = slot
                tail += 1
    return True


@njit(cache=True)
def _semiregular_nb(auts):
    m, n = auts.shape
    ok = np.ones(m, np.bool_)
    seen = np.zeros(n, np.bool_)
    for i in range(m):
        for v in range(n):
            seen[v] = False
        length = -1
        for v in range(n):
            if seen[v]:
                continue
            c = 0
            w = v
            while not seen[w]:
                seen[w] = True
                w = auts[i, w]
                c += 1
            if length < 0:
                length = c
            elif c != length:
                ok[i] = False
                break
    return ok


@njit(cache=True)
def _regular_subgroups_nb(auts, maxgens, cap, max_nodes):
    m, n = auts.shape
    order = np.argsort(auts[:, 0], kind="mergesort")
    start = np.zeros(n + 1, np.int64)
    for i in range(m):
        start[auts[i, 0] + 1] += 1
    for v in range(n):
        start[v + 1] += start[v]

    out = np.full((64, maxgens), -1, np.int64)
    count = 0
    tables = np.empty((maxgens + 1, n, n), np.int64)
    filled = np.zeros((maxgens + 1, n), np.bool_)
    gens = np.empty(maxgens, np.int64)
    vsel = np.empty(maxgens, np.int64)
    ptr = np.empty(maxgens, np.int64)
    for v in range(n):
        tables[0, 0, v] = v
    filled[0, 0] = True
    lvl = 0
    vsel[0] = 1
    ptr[0] = start[1]
    nodes = 0
    while lvl >= 0:
        if ptr[lvl] >= start[vsel[lvl] + 1]:
            lvl -= 1
            continue
        cand = order[ptr[lvl]]
        ptr[lvl] += 1
        gens[lvl] = cand
        nodes += 1
        if nodes > max_nodes:
            return out[:0], -2
        if not _close_nb(auts, gens, lvl + 1, tables[lvl + 1], filled[lvl + 1]):
            continue
        nxt = -1
        for v in range(n):
            if not filled[lvl + 1, v]:
                nxt = v
                break
        if nxt < 0:
            if count == cap:
                return out[:0], -1
            if count == out.shape[0]:
                grown = np.full((2 * out.shape[0], maxgens), -1, np.int64)
                grown[:count] = out[:count]
                out = grown
            for i in range(lvl + 1):
                out[count, i] = gens[i]
            count += 1
            continue
        lvl += 1
        vsel[lvl] = nxt
        ptr[lvl] = start[nxt]
    return out[:count], count


@njit(cache=True)
def _preserves_nb(indptr, indices, adj, perms):
    m, n = perms.shape
    ok = np.ones(m, np.bool_)
    for i in range(m):
        p = perms[i]
        for u in range(n):
            if indptr[u + 1] - indptr[u] != indptr[p[u] + 1] - indptr[p[u]]:
                ok[i] = False
                break
            bad = False
            for t in range(indptr[u], indptr[u + 1]):
                if adj[p[u], p[indices[t]]] == 0:
                    bad = True
                    break
            if bad:
                ok[i] = False
                break
    return ok


# ---------------------------------------------------------------------------
# numpy fallbacks


def _refine_np(adj: np.ndarray, colors: np.ndarray) -> np.ndarray:
    cur = np.asarray(colors, dtype=np.int64)
    k = int(cur.max()) + 1
    adj = adj.astype(np.int64)
    while True:
        counts = adj @ np.eye(k, dtype=np.int64)[cur]
        keys = np.column_stack([cur, counts])
        _, new = np.unique(keys, axis=0, return_inverse=True)
        new = new.reshape(-1).astype(np.int64)
        knew = int(new.max()) + 1
        if knew == k:
            return new
        cur, k = new, knew


def _individualize_np(colors: np.ndarray, w: int) -> np.ndarray:
    raw = 2 * colors + 1
    raw[w] = 2 * colors[w]
    _, out = np.unique(raw, return_inverse=True)
    return out.reshape(-1).astype(np.int64)


def _automorphisms_np(adj: np.ndarray, cap: int) -> tuple[np.ndarray, int]:
    n = adj.shape[0]
    left = [_refine_np(adj, np.zeros(n, dtype=np.int64))]
    targets = []
    while True:
        sizes = np.bincount(left[-1], minlength=n)
        cand = np.flatnonzero(sizes > 1)
        if not len(cand):
            break
        cell = int(cand[np.argmin(sizes[cand])])
        base = int(np.flatnonzero(left[-1] == cell)[0])
        targets.append(cell)
        left.append(_refine_np(adj, _individualize_np(left[-1], base)))
    leaf = len(targets)
    pos_l = np.empty(n, dtype=np.int64)
    pos_l[left[leaf]] = np.arange(n)
    sizes_l = [np.bincount(c, minlength=n) for c in left]
    found: list[np.ndarray] = []

    def walk(d: int, colors: np.ndarray) -> bool:
        if d == leaf:
            perm = np.empty(n, dtype=np.int64)
            perm[pos_l[colors]] = np.arange(n)
            if (adj[perm[:, None], perm[None, :]] == adj).all():
                if len(found) == cap:
                    return False
                found.append(perm)
            return True
        for w in np.flatnonzero(colors == targets[d]):
            new = _refine_np(adj, _individualize_np(colors, int(w)))
            if np.array_equal(np.bincount(new, minlength=n), sizes_l[d + 1]):
                if not walk(d + 1, new):
                    return False
        return True

    if not walk(0, left[0]):
        return np.empty((0, n), dtype=np.int64), -1
    return np.asarray(found, dtype=np.int64).reshape(len(found), n), len(found)


def _close_np(auts: np.ndarray, gens: list[int]) -> np.ndarray | None:
    """Elements of <gens> indexed by image of 0, or None if two collide."""
    n = auts.shape[1]
    table = np.full((n, n), -1, dtype=np.int64)
    table[0] = np.arange(n)
    queue = [0]
    garr = auts[gens]
    head = 0
    while head < len(queue):
        a = table[queue[head]]
        head += 1
        for prod in a[garr]:
            slot = prod[0]
            if table[slot, 0] >= 0:
                if not np.array_equal(table[slot], prod):
                    return None
            else:
                table[slot] = prod
                queue.append(int(slot))
    return table


def _semiregular_np(auts: np.ndarray) -> np.ndarray:
    """Rows whose cycles all have the same length."""
    m, n = auts.shape
    if m == 0:
        return np.zeros(0, dtype=bool)
    # cycle length of v under p is the least j with p^j(v) = v
    cur = auts.copy()
    length = np.zeros((m, n), dtype=np.int64)
    rows = np.arange(m)[:, None]
    for j in range(1, n + 1):
        hit = (cur == np.arange(n)[None, :]) & (length == 0)
        length[hit] = j
        if length.all():
            break
        cur = auts[rows, cur]
    return (length == length[:, :1]).all(axis=1)


class _Budget(Exception):
    pass


def _regular_subgroups_np(auts: np.ndarray, maxgens: int, cap: int, max_nodes: int) -> tuple[np.ndarray, int]:
    m, n = auts.shape
    by_image = [np.flatnonzero(auts[:, 0] == v) for v in range(n)]
    results: list[list[int]] = []
    nodes = 0

    def walk(gens: list[int], v: int) -> bool:
        nonlocal nodes
        for cand in by_image[v]:
            nodes += 1
            if nodes > max_nodes:
                raise _Budget
            trial = gens + [int(cand)]
            table = _close_np(auts, trial)
            if table is None:
                continue
            missing = np.flatnonzero(table[:, 0] < 0)
            if not len(missing):
                if len(results) == cap:
                    return False
                results.append(trial)
            elif not walk(trial, int(missing[0])):
                return False
        return True

    try:
        if not walk([], 1):
            return np.empty((0, maxgens), dtype=np.int64), -1
    except _Budget:
        return np.empty((0, maxgens), dtype=np.int64), -2
    out = np.full((len(results), maxgens), -1, dtype=np.int64)
    for i, gens in enumerate(results):
        out[i, : len(gens)] = gens
    return out, len(results)


def _preserves_np(adj: np.ndarray, perms: np.ndarray, chunk: int = 4096) -> np.ndarray:
    out = []
    for lo in range(0, len(perms), chunk):
        p = perms[lo : lo + chunk]
        out.append((adj[p[:, :, None], p[:, None, :]] == adj[None]).all(axis=(1, 2)))
    return np.concatenate(out) if out else np.zeros(0, dtype=bool)


# ---------------------------------------------------------------------------
# dispatch


def refine(adj: np.ndarray, colors: np.ndarray, jit: bool | None = None) -> np.ndarray:
    """Coarsest equitable refinement of ``colors``, with canonical cell ids."""
    colors = np.asarray(colors, dtype=np.int64)
    if _use_jit(jit):
        indptr, indices = to_csr(adj)
        return _refine_nb(indptr, indices, colors)
    return _refine_np(adj, colors)


def automorphisms(adj: np.ndarray, cap: int, jit: bool | None = None) -> tuple[np.ndarray, int]:
    """All automorphisms as rows; count is -1 when more than ``cap`` exist."""
    adj = np.ascontiguousarray(adj, dtype=np.uint8)
    if adj.shape[0] == 0:
        return np.zeros((1, 0), dtype=np.int64), 1
    if _use_jit(jit):
        indptr, indices = to_csr(adj)
        return _automorphisms_nb(indptr, indices, adj, cap)
    return _automorphisms_np(adj, cap)


def close_regular(gens: np.ndarray, jit: bool | None = None) -> np.ndarray | None:
    """Elements of <gens> as rows ordered by image of 0, or None unless it is regular."""
    gens = np.ascontiguousarray(gens, dtype=np.int64)
    k, n = gens.shape
    if _use_jit(jit):
        table = np.empty((n, n), np.int64)
        filled = np.zeros(n, np.bool_)
        if not _close_nb(gens, np.arange(k), k, table, filled) or not filled.all():
            return None
        return table
    table = _close_np(gens, list(range(k)))
    if table is None or (table[:, 0] < 0).any():
        return None
    return table


def semiregular(auts: np.ndarray, jit: bool | None = None) -> np.ndarray:
    auts = np.ascontiguousarray(auts, dtype=np.int64)
    if _use_jit(jit):
        return _semiregular_nb(auts)
    return _semiregular_np(auts)


def regular_subgroups(
    auts: np.ndarray, cap: int, max_nodes: int = 10**8, jit: bool | None = None
) -> tuple[np.ndarray, int]:
    """Regular subgroups of the group listed in ``auts``.

    Returns rows of generator indices into ``auts`` (padded with -1) and the
    count; the count is -1 past ``cap`` results and -2 past ``max_nodes``
    search nodes.  Only semiregular elements are tried as generators, since
    every element of a regular group has all its cycles of one length.
    """
    auts = np.ascontiguousarray(auts, dtype=np.int64)
    n = auts.shape[1]
    if n <= 1:
        return np.full((1, 1), -1, dtype=np.int64), 1
    maxgens = max(1, int(np.ceil(np.log2(n))))
    keep = np.flatnonzero(semiregular(auts, jit=jit))
    sub = np.ascontiguousarray(auts[keep])
    if _use_jit(jit):
        rows, count = _regular_subgroups_nb(sub, maxgens, cap, max_nodes)
    else:
        rows, count = _regular_subgroups_np(sub, maxgens, cap, max_nodes)
    if count > 0:
        rows = np.where(rows >= 0, keep[np.maximum(rows, 0)], -1)
    return rows, count


def preserves_adjacency(adj: np.ndarray, perms: np.ndarray, jit: bool | None = None) -> np.ndarray:
    adj = np.ascontiguousarray(adj, dtype=np.uint8)
    perms = np.ascontiguousarray(perms, dtype=np.int64).reshape(-1, adj.shape[0])
    if _use_jit(jit):
        indptr, indices = to_csr(adj)
        return _preserves_nb(indptr, indices, adj, perms)
    return _preserves_np(adj, perms)
