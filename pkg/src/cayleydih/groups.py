"""Finite abelian groups and generalized dihedral groups over them.

An abelian group C_{n1} x ... x C_{nr} is described by its list of cyclic
orders and its elements are residue vectors, written additively.  The
generalized dihedral group Dih(A) over such an A adjoins an involution x
that inverts A.  Elements are kept in the normal form x^f * a, and the
inversion relation a*x = x*a^{-1} gives the product rule

    (f1, a1) * (f2, a2) = (f1 xor f2, s*a1 + a2),  s = -1 if f2 == 1 else +1.

Besides element arithmetic this module classifies arbitrary finite groups
given as multiplication tables (abelian invariant factors, generalized
dihedral, or other) and decides isomorphism of two tables.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass
from itertools import product

import numpy as np

from .errors import MismatchedSpec, NotAGroup, UsageError

ABELIAN = "abelian"
DIHEDRAL = "dihedral"

TABLE_ORDER_CAP = 256


@dataclass(frozen=True)
class GroupSpec:
    kind: str
    orders: tuple[int, ...]

    def __post_init__(self):
        if self.kind not in (ABELIAN, DIHEDRAL):
            raise ValueError(f"unknown group kind {self.kind!r}")
        orders = tuple(int(n) for n in self.orders)
        if any(n < 2 for n in orders):
            raise ValueError(f"cyclic factor orders must be >= 2, got {orders}")
        object.__setattr__(self, "orders", orders)

    @classmethod
    def abelian(cls, *orders: int) -> GroupSpec:
        return cls(ABELIAN, tuple(orders))

    @classmethod
    def dihedral(cls, *orders: int) -> GroupSpec:
        return cls(DIHEDRAL, tuple(orders))

    @property
    def is_dihedral(self) -> bool:
        return self.kind == DIHEDRAL

    @property
    def base_order(self) -> int:
        """Order of the abelian part (the whole group when abelian)."""
        return math.prod(self.orders)

    @property
    def order(self) -> int:
        return self.base_order * (2 if self.is_dihedral else 1)

    @property
    def base(self) -> GroupSpec:
        return GroupSpec(ABELIAN, self.orders)

    def __str__(self) -> str:
        inner = "x".join(f"C{n}" for n in self.orders) or "C1"
        return f"dih({inner})" if self.is_dihedral else inner


@dataclass(frozen=True)
class Element:
    flip: int
    residues: tuple[int, ...]

    def __str__(self) -> str:
        body = "(" + ",".join(str(r) for r in self.residues) + ")"
        return "x" + body if self.flip else body


def two_adic(n: int) -> int:
    """Exponent of the largest power of two dividing n."""
    return (n & -n).bit_length() - 1


@dataclass(frozen=True)
class FactorChoice:
    """Which declared factor supplies the cyclic 2-group <c>, with |c| = 2**k.

    For a factor C_n with n = 2**k * m (m odd), c is the residue m at that
    index; when n is a power of two that is the unit vector.
    """

    index: int
    k: int

    @classmethod
    def for_factor(cls, spec: GroupSpec, index: int) -> FactorChoice:
        if not 0 <= index < len(spec.orders):
            raise MismatchedSpec(f"factor index {index} out of range for {spec}")
        return cls(index, two_adic(spec.orders[index]))

    def odd_part(self, spec: GroupSpec) -> int:
        return spec.orders[self.index] >> self.k

    def generator(self, spec: GroupSpec) -> Element:
        res = [0] * len(spec.orders)
        res[self.index] = self.odd_part(spec) % spec.orders[self.index]
        return Element(0, tuple(res))


TAG_RANK = {"abelian": 0, "dihedral": 1, "other": 2}


@dataclass(frozen=True)
class GroupType:
    tag: str
    invariants: tuple[int, ...] = ()
    digest: str = ""

    @classmethod
    def abelian(cls, orders) -> GroupType:
        """Any cyclic decomposition; stored as invariant factors."""
        return cls("abelian", invariant_factors(orders))

    @classmethod
    def dihedral(cls, orders) -> GroupType:
        return cls("dihedral", invariant_factors(orders))

    def __str__(self) -> str:
        # largest factor first, the way groups are usually written (C9xC3)
        inner = "x".join(f"C{n}" for n in sorted(self.invariants, reverse=True)) or "C1"
        if self.tag == "abelian":
            return inner
        if self.tag == "dihedral":
            return f"dih({inner})"
        return f"other[{self.digest}]"

    @property
    def sort_key(self):
        return (TAG_RANK[self.tag], self.invariants, self.digest)


# ---------------------------------------------------------------------------
# element arithmetic


def _check(spec: GroupSpec, a: Element) -> None:
    if len(a.residues) != len(spec.orders):
        raise MismatchedSpec(f"element {a} has {len(a.residues)} residues; {spec} needs {len(spec.orders)}")
    if a.flip not in (0, 1) or (a.flip and not spec.is_dihedral):
        raise MismatchedSpec(f"element {a} is not in {spec}")


def element(spec: GroupSpec, residues, flip: int = 0) -> Element:
    """Build an element, reducing each residue modulo its factor order."""
    residues = tuple(residues)
    if len(residues) != len(spec.orders):
        raise MismatchedSpec(f"expected {len(spec.orders)} residues for {spec}")
    e = Element(int(flip), tuple(int(r) % n for r, n in zip(residues, spec.orders)))
    _check(spec, e)
    return e


def identity(spec: GroupSpec) -> Element:
    return Element(0, (0,) * len(spec.orders))


def multiply(spec: GroupSpec, a: Element, b: Element) -> Element:
    _check(spec, a)
    _check(spec, b)
    sign = -1 if b.flip else 1
    res = tuple((sign * x + y) % n for x, y, n in zip(a.residues, b.residues, spec.orders))
    return Element(a.flip ^ b.flip, res)


def invert(spec: GroupSpec, a: Element) -> Element:
    _check(spec, a)
    if a.flip:
        return a
    return Element(0, tuple(-x % n for x, n in zip(a.residues, spec.orders)))


def power(spec: GroupSpec, a: Element, m: int) -> Element:
    result = identity(spec)
    base = a if m >= 0 else invert(spec, a)
    for _ in range(abs(m)):
        result = multiply(spec, result, base)
    return result


def element_order(spec: GroupSpec, a: Element) -> int:
    _check(spec, a)
    if a.flip:
        return 2
    n = 1
    for x, m in zip(a.residues, spec.orders):
        n = math.lcm(n, m // math.gcd(x, m))
    return n


def enumerate_elements(spec: GroupSpec) -> list[Element]:
    """All elements, flip=0 block first, residues in mixed-radix order."""
    blocks = (0, 1) if spec.is_dihedral else (0,)
    ranges = [range(n) for n in spec.orders]
    return [Element(f, tuple(r)) for f in blocks for r in product(*ranges)]


def element_index(spec: GroupSpec, a: Element) -> int:
    _check(spec, a)
    idx = 0
    for x, n in zip(a.residues, spec.orders):
        idx = idx * n + x
    return idx + a.flip * spec.base_order


# ---------------------------------------------------------------------------
# vectorised arithmetic on index arrays


def _strides(orders) -> np.ndarray:
    strides = np.ones(len(orders), dtype=np.int64)
    for i in range(len(orders) - 2, -1, -1):
        strides[i] = strides[i + 1] * orders[i + 1]
    return strides


def element_arrays(spec: GroupSpec) -> tuple[np.ndarray, np.ndarray]:
    """Flip bits and residue matrix of every element, in enumeration order."""
    idx = np.arange(spec.order, dtype=np.int64)
    flips = idx // spec.base_order
    base = idx % spec.base_order
    orders = np.asarray(spec.orders, dtype=np.int64)
    res = (base[:, None] // _strides(spec.orders)[None, :]) % orders[None, :] if len(orders) else np.zeros((spec.order, 0), np.int64)
    return flips, res


def indices_of(spec: GroupSpec, flips: np.ndarray, res: np.ndarray) -> np.ndarray:
    return flips * spec.base_order + res @ _strides(spec.orders)


def left_multiply_indices(spec: GroupSpec, a: Element) -> np.ndarray:
    """Index of a*z for every z, in enumeration order."""
    _check(spec, a)
    flips, res = element_arrays(spec)
    sign = np.where(flips == 1, -1, 1)[:, None]
    new = (sign * np.asarray(a.residues, dtype=np.int64)[None, :] + res) % np.asarray(spec.orders, dtype=np.int64)
    return indices_of(spec, a.flip ^ flips, new)


def right_multiply_indices(spec: GroupSpec, a: Element) -> np.ndarray:
    """Index of z*a for every z."""
    _check(spec, a)
    flips, res = element_arrays(spec)
    sign = -1 if a.flip else 1
    new = (sign * res + np.asarray(a.residues, dtype=np.int64)[None, :]) % np.asarray(spec.orders, dtype=np.int64)
    return indices_of(spec, flips ^ a.flip, new)


def inverse_indices(spec: GroupSpec) -> np.ndarray:
    flips, res = element_arrays(spec)
    neg = np.where(flips[:, None] == 1, res, -res) % np.asarray(spec.orders, dtype=np.int64)
    return indices_of(spec, flips, neg)


def cayley_table(spec: GroupSpec) -> np.ndarray:
    """Multiplication table over enumeration indices: table[i, j] = e_i * e_j."""
    flips, res = element_arrays(spec)
    orders = np.asarray(spec.orders, dtype=np.int64)
    sign = np.where(flips == 1, -1, 1)
    prod_res = (sign[None, :, None] * res[:, None, :] + res[None, :, :]) % orders
    prod_flip = flips[:, None] ^ flips[None, :]
    return indices_of(spec, prod_flip, prod_res)


# ---------------------------------------------------------------------------
# abelian invariants


def _prime_factors(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _combine_prime_powers(exponents: dict[int, list[int]]) -> tuple[int, ...]:
    """Invariant factors d1 | d2 | ... from per-prime exponent lists."""
    width = max((len(v) for v in exponents.values()), default=0)
    factors = []
    for i in range(width):
        d = 1
        for p, exps in exponents.items():
            exps = sorted(exps, reverse=True)
            if i < len(exps):
                d *= p ** exps[i]
        factors.append(d)
    return tuple(sorted(f for f in factors if f > 1))


def invariant_factors(orders) -> tuple[int, ...]:
    """Invariant factors of C_{n1} x ... x C_{nr}, smallest first."""
    exponents: dict[int, list[int]] = {}
    for n in orders:
        for p, e in _prime_factors(int(n)).items():
            exponents.setdefault(p, []).append(e)
    return _combine_prime_powers(exponents)


# ---------------------------------------------------------------------------
# multiplication tables


def _as_table(table) -> np.ndarray:
    t = np.asarray(table, dtype=np.int64)
    if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
        raise NotAGroup("multiplication table must be a non-empty square array")
    n = t.shape[0]
    if n > TABLE_ORDER_CAP:
        raise NotAGroup(f"group order {n} exceeds table cap {TABLE_ORDER_CAP}")
    if t.min() < 0 or t.max() >= n:
        raise NotAGroup("table entries out of range (closure fails)")
    return t


def _identity_of(t: np.ndarray) -> int:
    n = t.shape[0]
    hits = np.flatnonzero((t == np.arange(n)[None, :]).all(axis=1))
    if len(hits) != 1 or not (t[:, hits[0]] == np.arange(n)).all():
        raise NotAGroup("no two-sided identity")
    return int(hits[0])


def validate_table(table, samples: int = 20000, seed: int = 0) -> np.ndarray:
    """Latin-square and associativity checks (exhaustive for order <= 32)."""
    t = _as_table(table)
    n = t.shape[0]
    ref = np.arange(n)
    if not ((np.sort(t, axis=1) == ref).all() and (np.sort(t, axis=0) == ref[:, None]).all()):
        raise NotAGroup("table is not a Latin square")
    _identity_of(t)
    if n <= 32:
        lhs = t[t[:, :, None], np.arange(n)[None, None, :]]
        rhs = t[np.arange(n)[:, None, None], t[None, :, :]]
        ok = (lhs == rhs).all()
    else:
        rng = np.random.default_rng(seed)
        a, b, c = rng.integers(0, n, size=(3, samples))
        ok = (t[t[a, b], c] == t[a, t[b, c]]).all()
    if not ok:
        raise NotAGroup("multiplication is not associative")
    return t


def table_element_orders(t: np.ndarray) -> np.ndarray:
    n = t.shape[0]
    e = _identity_of(t)
    orders = np.zeros(n, dtype=np.int64)
    cur = np.arange(n)
    for k in range(1, n + 1):
        orders[(cur == e) & (orders == 0)] = k
        if orders.all():
            break
        cur = t[cur, np.arange(n)]
    return orders


def table_inverses(t: np.ndarray) -> np.ndarray:
    e = _identity_of(t)
    return np.argmax(t == e, axis=1)


def _abelian_invariants_from_orders(orders: np.ndarray) -> tuple[int, ...]:
    # |{a : a^(p^j) = e}| = p^(sum_i min(e_i, j)); the first differences of
    # the exponent count how many cyclic p-factors have exponent >= j
    n = len(orders)
    exponents: dict[int, list[int]] = {}
    for p, top in _prime_factors(n).items():
        prev = 0
        ge = []
        for j in range(1, top + 1):
            count = int(np.count_nonzero((p**j) % orders == 0))
            s = round(math.log(count, p))
            ge.append(s - prev)
            prev = s
        # ge[j-1] = number of factors with exponent >= j
        exps = []
        for j in range(len(ge)):
            nxt = ge[j + 1] if j + 1 < len(ge) else 0
            exps += [j + 1] * (ge[j] - nxt)
        exponents[p] = exps
    return _combine_prime_powers(exponents)


def _closure_mask(t: np.ndarray, gens) -> np.ndarray:
    n = t.shape[0]
    e = _identity_of(t)
    seen = np.zeros(n, dtype=bool)
    seen[e] = True
    frontier = [e]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = int(t[a, g])
                if not seen[b]:
                    seen[b] = True
                    nxt.append(b)
        frontier = nxt
    return seen


def _greedy_generators(t: np.ndarray, orders: np.ndarray) -> list[int]:
    """Generators picked by descending element order, then index."""
    n = t.shape[0]
    rank = sorted(range(n), key=lambda a: (-orders[a], a))
    gens: list[int] = []
    covered = _closure_mask(t, gens)
    for a in rank:
        if covered.all():
            break
        if not covered[a]:
            gens.append(a)
            covered = _closure_mask(t, gens)
    return gens


def _subtable(t: np.ndarray, mask: np.ndarray) -> np.ndarray:
    idx = np.flatnonzero(mask)
    relabel = np.full(t.shape[0], -1)
    relabel[idx] = np.arange(len(idx))
    return relabel[t[np.ix_(idx, idx)]]


def _index_two_subgroups(t: np.ndarray, gens: list[int]) -> list[np.ndarray]:
    """Kernels of every onto homomorphism to C2."""
    n = t.shape[0]
    e = _identity_of(t)
    found = []
    for bits in product((0, 1), repeat=len(gens)):
        if not any(bits):
            continue
        phi = np.full(n, -1)
        phi[e] = 0
        frontier = [e]
        ok = True
        while frontier and ok:
            nxt = []
            for a in frontier:
                for g, bit in zip(gens, bits):
                    b = int(t[a, g])
                    val = phi[a] ^ bit
                    if phi[b] < 0:
                        phi[b] = val
                        nxt.append(b)
                    elif phi[b] != val:
                        ok = False
                        break
                if not ok:
                    break
            frontier = nxt
        if ok and (phi[t] == (phi[:, None] ^ phi[None, :])).all():
            found.append(phi == 0)
    return found


def _dihedral_bases(t: np.ndarray, orders: np.ndarray) -> list[tuple[int, ...]]:
    inv = table_inverses(t)
    e = _identity_of(t)
    out = []
    for mask in _index_two_subgroups(t, _greedy_generators(t, orders)):
        sub = _subtable(t, mask)
        if not (sub == sub.T).all():
            continue
        inside = np.flatnonzero(mask)
        for s in np.flatnonzero(~mask):
            if t[s, s] != e:
                continue
            if (t[t[s, inside], s] == inv[inside]).all():
                out.append(_abelian_invariants_from_orders(table_element_orders(sub)))
                break
    return out


def _canonical_digest(t: np.ndarray, orders: np.ndarray, budget: int = 200_000) -> str:
    """Isomorphism-invariant digest: minimum relabelled table over generating tuples."""
    n = t.shape[0]
    r = len(_greedy_generators(t, orders))
    # smallest generating-tuple length
    for size in range(1, r + 1):
        if n**size > budget:
            break
        best = None
        for tup in product(range(n), repeat=size):
            labels = _bfs_labels(t, tup)
            if labels is None:
                continue
            relabel = np.empty(n, dtype=np.int64)
            relabel[labels] = np.arange(n)
            canon = relabel[t[np.ix_(labels, labels)]].astype(np.int16).tobytes()
            if best is None or canon < best:
                best = canon
        if best is not None:
            return hashlib.sha256(best).hexdigest()[:16]
    # too large to canonicalise: fall back to coarse invariants
    profile = np.bincount(orders).tobytes() + bytes([int((t == t.T).all(axis=1).sum() % 256)])
    return "approx-" + hashlib.sha256(profile).hexdigest()[:10]


def _bfs_labels(t: np.ndarray, gens) -> np.ndarray | None:
    n = t.shape[0]
    e = _identity_of(t)
    order = [e]
    seen = {e}
    i = 0
    while i < len(order):
        a = order[i]
        i += 1
        for g in gens:
            b = int(t[a, g])
            if b not in seen:
                seen.add(b)
                order.append(b)
    if len(order) != n:
        return None
    return np.asarray(order)


def type_tag(table) -> str:
    """Just the tag classify would return, without the costly digest for "other"."""
    t = validate_table(table)
    if (t == t.T).all():
        return "abelian"
    return "dihedral" if _dihedral_bases(t, table_element_orders(t)) else "other"


def classify(table) -> GroupType:
    """Isomorphism type of a group given by its multiplication table.

    Abelian groups report their invariant factors (computed by counting
    elements whose order divides each prime power).  Nonabelian groups with
    an abelian index-2 subgroup inverted by an outside involution report
    GeneralizedDihedralOver with that subgroup's invariants.  Everything else
    is Other, tagged with a table digest.
    """
    t = validate_table(table)
    orders = table_element_orders(t)
    if (t == t.T).all():
        return GroupType.abelian(_abelian_invariants_from_orders(orders))
    bases = _dihedral_bases(t, orders)
    if bases:
        return GroupType.dihedral(min(bases, key=lambda b: (len(b), b)))
    return GroupType("other", (), _canonical_digest(t, orders))


def _search_isomorphism(ta: np.ndarray, tb: np.ndarray) -> np.ndarray | None:
    """Generator-image backtracking; returns the map A -> B or None."""
    n = ta.shape[0]
    oa, ob = table_element_orders(ta), table_element_orders(tb)
    gens = _greedy_generators(ta, oa)
    ea, eb = _identity_of(ta), _identity_of(tb)

    def extend(images):
        # BFS over <gens[:len(images)]>, mapping a*g -> phi(a)*phi(g)
        phi = np.full(n, -1)
        used = np.zeros(n, dtype=bool)
        phi[ea] = eb
        used[eb] = True
        frontier = [ea]
        sub = gens[: len(images)]
        while frontier:
            nxt = []
            for a in frontier:
                for g, h in zip(sub, images):
                    b = int(ta[a, g])
                    img = int(tb[phi[a], h])
                    if phi[b] < 0:
                        if used[img]:
                            return None
                        phi[b] = img
                        used[img] = True
                        nxt.append(b)
                    elif phi[b] != img:
                        return None
            frontier = nxt
        return phi

    def search(images, phi):
        j = len(images)
        if j == len(gens):
            return phi
        for h in range(n):
            if ob[h] != oa[gens[j]] or (phi is not None and phi_has(phi, h)):
                continue
            nphi = extend(images + [h])
            if nphi is not None:
                got = search(images + [h], nphi)
                if got is not None:
                    return got
        return None

    def phi_has(phi, h):
        return bool((phi == h).any())

    if not gens:
        return np.array([eb])
    return search([], None)


def is_isomorphic(table_a, table_b) -> bool:
    ta, tb = validate_table(table_a), validate_table(table_b)
    if ta.shape != tb.shape:
        return False
    oa, ob = table_element_orders(ta), table_element_orders(tb)
    if not np.array_equal(np.sort(oa), np.sort(ob)):
        return False
    ab_a, ab_b = bool((ta == ta.T).all()), bool((tb == tb.T).all())
    if ab_a != ab_b:
        return False
    if ab_a:
        # finite abelian groups are determined by their element-order counts
        return True
    return _search_isomorphism(ta, tb) is not None


# ---------------------------------------------------------------------------
# text grammar: C9xC3, dih(C4xC2), (1,2), x(0)


class _Scanner:
    def __init__(self, text: str, column_offset: int = 0):
        self.text = text
        self.pos = 0
        self.offset = column_offset

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def error(self, message: str) -> UsageError:
        return UsageError(message, 1, self.offset + self.pos + 1)

    def expect(self, ch: str):
        if self.peek() != ch:
            found = repr(self.peek()) if self.peek() else "end of input"
            raise self.error(f"expected {ch!r}, found {found}")
        self.pos += 1

    def integer(self, signed: bool = False) -> int:
        self.skip()
        start = self.pos
        if signed and self.pos < len(self.text) and self.text[self.pos] in "+-":
            self.pos += 1
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        token = self.text[start : self.pos]
        if token in ("", "+", "-"):
            self.pos = start
            raise self.error("expected an integer")
        return int(token)

    def at_end(self) -> bool:
        self.skip()
        return self.pos >= len(self.text)


def parse_group(text: str) -> GroupSpec:
    sc = _Scanner(text)
    dihedral = False
    if sc.peek() in ("d", "D"):
        if sc.text[sc.pos : sc.pos + 3].lower() != "dih":
            raise sc.error("expected 'dih(' or 'C<n>'")
        sc.pos += 3
        sc.expect("(")
        dihedral = True
    orders = []
    while True:
        if sc.peek() not in ("C", "c"):
            raise sc.error("expected a cyclic factor 'C<n>'")
        sc.pos += 1
        col = sc.pos
        n = sc.integer()
        if n < 2:
            sc.pos = col
            raise sc.error(f"cyclic factor order must be >= 2, got {n}")
        orders.append(n)
        if sc.peek() in ("x", "X"):
            sc.pos += 1
            continue
        break
    if dihedral:
        sc.expect(")")
    if not sc.at_end():
        raise sc.error(f"unexpected {sc.peek()!r}")
    return GroupSpec(DIHEDRAL if dihedral else ABELIAN, tuple(orders))


def _parse_element_at(sc: _Scanner, spec: GroupSpec) -> Element:
    flip = 0
    if sc.peek() in ("x", "X"):
        if not spec.is_dihedral:
            raise sc.error(f"flip elements 'x(...)' are not in abelian group {spec}")
        sc.pos += 1
        flip = 1
    sc.expect("(")
    residues = []
    if sc.peek() != ")":
        while True:
            residues.append(sc.integer(signed=True))
            if sc.peek() == ",":
                sc.pos += 1
                continue
            break
    sc.expect(")")
    if len(residues) != len(spec.orders):
        sc.pos -= 1
        raise sc.error(f"element needs {len(spec.orders)} residues for {spec}, got {len(residues)}")
    return element(spec, residues, flip)


def parse_element(text: str, spec: GroupSpec, column_offset: int = 0) -> Element:
    sc = _Scanner(text, column_offset)
    e = _parse_element_at(sc, spec)
    if not sc.at_end():
        raise sc.error(f"unexpected {sc.peek()!r}")
    return e


def parse_element_list(text: str, spec: GroupSpec) -> list[Element]:
    """Parse ``"<el>;<el>;..."``; an empty string is the empty list."""
    sc = _Scanner(text)
    out = []
    if sc.at_end():
        return out
    while True:
        out.append(_parse_element_at(sc, spec))
        if sc.peek() == ";":
            sc.pos += 1
            if sc.at_end():
                break
            continue
        break
    if not sc.at_end():
        raise sc.error(f"unexpected {sc.peek()!r}")
    return out
