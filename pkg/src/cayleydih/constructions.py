"""Explicit regular subgroups that re-represent a Cayley graph on another group.

Abelian to generalized dihedral
    For G = <c> x A abelian with |c| = 2**k, k >= 1, and H = <c^2> x A, the
    right translations alpha_h(z) = z*h (h in H) together with the flip
    beta(z) = z^{-1} * c generate a regular copy of Dih(H) inside Aut(Cay(G, S))
    for every inverse-closed S.

Generalized dihedral to abelian
    For D = Dih(G) with G = <c> x A, |c| = 2**k (k = 0 allowed, c = e), a
    witness y in the flip coset xG with

        y*g in S  <=>  y*g^{-1}*c in S     for every g in G

    makes alpha_a (a in A) and the coset-split map beta(z) = y*z (z in G),
    beta(z) = y*c*z (z in xG) generate a regular copy of C_{2^(k+1)} x A.

Every construction re-verifies its output before returning it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import groups as gc
from .cayley import ConnectionSet, Graph, build_cayley_graph, is_automorphism, right_translation
from .errors import (
    CapExceeded,
    InternalVerificationFailed,
    MismatchedSpec,
    OddOrder,
    OddOrderFactor,
    WitnessInvalid,
)
from .groups import Element, FactorChoice, GroupSpec, GroupType
from .perm import PermSet, compose, format_perm, generate_closure, is_regular, perm_order


@dataclass
class RegularAction:
    degree: int
    generators: tuple[tuple[str, tuple[int, ...]], ...]
    group: PermSet
    group_type: GroupType
    nominal: str
    graph: Graph

    @property
    def beta(self) -> tuple[int, ...]:
        return dict(self.generators)["beta"]

    def report_lines(self) -> list[str]:
        lines = [f"TYPE {self.nominal}", f"CLASSIFIED {self.group_type}", f"ORDER {len(self.group)}"]
        lines += [f"GEN {label} {format_perm(p)}" for label, p in self.generators]
        return lines


@dataclass(frozen=True)
class Thm3Instance:
    dihedral_spec: GroupSpec
    factor: FactorChoice | None = None
    witness_y: Element | None = None

    def __post_init__(self):
        if not self.dihedral_spec.is_dihedral:
            raise MismatchedSpec(f"{self.dihedral_spec} is not a generalized dihedral group")
        if self.factor is not None and self.factor.k < 1:
            raise OddOrderFactor(f"factor {self.factor.index} of {self.dihedral_spec} has odd order")
        if self.witness_y is not None and self.witness_y.flip != 1:
            raise WitnessInvalid(f"witness {self.witness_y} is not in the flip coset")

    @property
    def k(self) -> int:
        return 0 if self.factor is None else self.factor.k

    @property
    def c(self) -> Element:
        if self.factor is None:
            return gc.identity(self.dihedral_spec)
        return self.factor.generator(self.dihedral_spec)

    def complement_orders(self) -> tuple[int, ...]:
        """Cyclic orders of A, where G = <c> x A."""
        orders = self.dihedral_spec.orders
        if self.factor is None:
            return orders
        i = self.factor.index
        m = self.factor.odd_part(self.dihedral_spec)
        return orders[:i] + ((m,) if m > 1 else ()) + orders[i + 1 :]


def _fmt_orders(orders) -> str:
    return "x".join(f"C{n}" for n in orders) or "C1"


def _closure_of(gens, order: int) -> PermSet:
    try:
        return generate_closure([p for _, p in gens], cap=order)
    except CapExceeded as exc:
        raise InternalVerificationFailed(f"generated group exceeds order {order}") from exc


def _check_generators(graph: Graph, gens) -> None:
    for label, p in gens:
        if not is_automorphism(graph, p):
            raise InternalVerificationFailed(f"generator {label} is not an automorphism")


# ---------------------------------------------------------------------------
# abelian -> generalized dihedral


def split_choices(spec: GroupSpec) -> list[FactorChoice]:
    """One choice per distinct power of two among the factors' 2-parts."""
    if spec.is_dihedral:
        raise MismatchedSpec(f"{spec} is not abelian")
    seen = set()
    out = []
    for i, n in enumerate(spec.orders):
        k = gc.two_adic(n)
        if k >= 1 and k not in seen:
            seen.add(k)
            out.append(FactorChoice(i, k))
    return out


def thm2_subgroup(spec: GroupSpec, choice: FactorChoice) -> list[Element]:
    """H = <c^2> x A: the elements whose residue at the chosen factor is even."""
    return [e for e in gc.enumerate_elements(spec) if e.residues[choice.index] % 2 == 0]


def thm2_alpha(spec: GroupSpec, h: Element) -> tuple[int, ...]:
    return right_translation(spec, h)


def thm2_beta(spec: GroupSpec, choice: FactorChoice) -> tuple[int, ...]:
    """z -> z^{-1} * c."""
    inv = gc.inverse_indices(spec)
    times_c = gc.right_multiply_indices(spec, choice.generator(spec))
    return tuple(times_c[inv].tolist())


def _thm2_generators_of_h(spec: GroupSpec, choice: FactorChoice) -> list[Element]:
    gens = []
    for j, n in enumerate(spec.orders):
        res = [0] * len(spec.orders)
        if j == choice.index:
            if n == 2:
                continue
            res[j] = 2
        else:
            res[j] = 1
        gens.append(Element(0, tuple(res)))
    return gens


def _dih_type(h_orders) -> GroupType:
    if all(n == 2 for n in h_orders):
        # Dih of an elementary abelian 2-group is elementary abelian of rank + 1
        return GroupType.abelian((2,) * (len(h_orders) + 1))
    return GroupType.dihedral(gc.invariant_factors(h_orders))


def thm2_construct(s: ConnectionSet, choice: FactorChoice) -> RegularAction:
    spec = s.spec
    if spec.is_dihedral:
        raise MismatchedSpec(f"{spec} is not abelian")
    if not 0 <= choice.index < len(spec.orders) or choice.k < 1:
        raise OddOrderFactor(f"factor {choice.index} of {spec} does not have even order")
    if gc.two_adic(spec.orders[choice.index]) != choice.k:
        raise OddOrderFactor(f"factor {choice.index} of {spec} has 2-part 2^{gc.two_adic(spec.orders[choice.index])}")
    graph = build_cayley_graph(s)

    gens = [(f"alpha({h})", thm2_alpha(spec, h)) for h in _thm2_generators_of_h(spec, choice)]
    gens.append(("beta", thm2_beta(spec, choice)))
    _check_generators(graph, gens)
    group = _closure_of(gens, spec.order)
    if not is_regular(group):
        raise InternalVerificationFailed("<alpha_h, beta> is not regular")

    h_orders = [n for n in spec.orders]
    h_orders[choice.index] //= 2
    h_orders = [n for n in h_orders if n > 1]
    expected = _dih_type(h_orders)
    found = gc.classify(_regular_table(group))
    if found != expected:
        raise InternalVerificationFailed(f"constructed group is {found}, expected {expected}")
    return RegularAction(spec.order, tuple(gens), group, found, f"dih({_fmt_orders(h_orders)})", graph)


def corollary_representations(s: ConnectionSet) -> list[tuple[FactorChoice, RegularAction]]:
    choices = split_choices(s.spec)
    if not choices:
        raise OddOrder(f"{s.spec} has odd order; no generalized dihedral representation follows")
    return [(c, thm2_construct(s, c)) for c in choices]


def _regular_table(group: PermSet) -> np.ndarray:
    arr = group.as_array()
    arr = arr[np.argsort(arr[:, 0])]
    return arr[:, arr[:, 0]]


# ---------------------------------------------------------------------------
# generalized dihedral -> abelian


def _witness_mask(inst: Thm3Instance, s: ConnectionSet) -> tuple[np.ndarray, np.ndarray]:
    """Candidate y indices (flip coset, enumeration order) and whether each is a witness."""
    spec = inst.dihedral_spec
    if s.spec != spec:
        raise MismatchedSpec(f"connection set is over {s.spec}, instance is over {spec}")
    table = gc.cayley_table(spec)
    inv = gc.inverse_indices(spec)
    in_s = np.zeros(spec.order, dtype=bool)
    in_s[[gc.element_index(spec, e) for e in s]] = True
    base = np.arange(spec.base_order)  # G = flip-0 block
    ys = np.arange(spec.base_order, spec.order)
    c = gc.element_index(spec, inst.c)
    yg = table[ys[:, None], base[None, :]]
    yginv_c = table[table[ys[:, None], inv[base][None, :]], c]
    # both sides always land in xG, so membership in S is membership in S n xG
    ok = (in_s[yg] == in_s[yginv_c]).all(axis=1)
    return ys, ok


def thm3_find_y(inst: Thm3Instance, s: ConnectionSet) -> Element | None:
    ys, ok = _witness_mask(inst, s)
    hits = np.flatnonzero(ok)
    if not len(hits):
        return None
    return gc.enumerate_elements(inst.dihedral_spec)[int(ys[hits[0]])]


def thm3_all_witnesses(inst: Thm3Instance, s: ConnectionSet) -> list[Element]:
    ys, ok = _witness_mask(inst, s)
    elems = gc.enumerate_elements(inst.dihedral_spec)
    return [elems[int(y)] for y in ys[ok]]


def thm3_beta(spec: GroupSpec, y: Element, c: Element) -> tuple[int, ...]:
    """beta(z) = y*z on G and y*c*z on xG.

    Both branches multiply by the witness y on the left; the flip coset is
    handled by the extra factor c, never by the bare involution x.

    beta^2 is translation by c^{-1} on both cosets: y*c*y = c^{-1} on G, and
    c*(x*g) = x*g*c^{-1} on xG.  Reading the second as translation by c is
    only right when c^2 = e.
    """
    on_g = gc.left_multiply_indices(spec, y)
    on_xg = gc.left_multiply_indices(spec, gc.multiply(spec, y, c))
    half = spec.base_order
    return tuple(np.concatenate([on_g[:half], on_xg[half:]]).tolist())


def _thm3_generators_of_a(inst: Thm3Instance) -> list[Element]:
    spec = inst.dihedral_spec
    gens = []
    for j, n in enumerate(spec.orders):
        res = [0] * len(spec.orders)
        if inst.factor is not None and j == inst.factor.index:
            if inst.factor.odd_part(spec) == 1:
                continue
            res[j] = 2**inst.k  # generates the odd part of this factor
        else:
            res[j] = 1
        gens.append(Element(0, tuple(res)))
    return gens


def thm3_construct(inst: Thm3Instance, s: ConnectionSet) -> RegularAction:
    spec = inst.dihedral_spec
    y = inst.witness_y
    if y is None:
        raise WitnessInvalid("instance carries no witness")
    if y not in thm3_all_witnesses(inst, s):
        raise WitnessInvalid(f"{y} fails the witness condition for this connection set")
    graph = build_cayley_graph(s)

    gens = [(f"alpha({a})", right_translation(spec, a)) for a in _thm3_generators_of_a(inst)]
    beta = thm3_beta(spec, y, inst.c)
    gens.append(("beta", beta))
    _check_generators(graph, gens)
    if perm_order(beta) != 2 ** (inst.k + 1):
        raise InternalVerificationFailed(f"beta has order {perm_order(beta)}, expected {2 ** (inst.k + 1)}")
    for label, p in gens[:-1]:
        if compose(beta, p) != compose(p, beta):
            raise InternalVerificationFailed(f"beta does not commute with {label}")
    group = _closure_of(gens, spec.order)
    if not is_regular(group):
        raise InternalVerificationFailed("<alpha_a, beta> is not regular")

    target = (2 ** (inst.k + 1),) + inst.complement_orders()
    expected = GroupType.abelian(gc.invariant_factors(target))
    found = gc.classify(_regular_table(group))
    if found != expected:
        raise InternalVerificationFailed(f"constructed group is {found}, expected {expected}")
    return RegularAction(spec.order, tuple(gens), group, found, _fmt_orders(target), graph)
