"""Shared test helpers."""

from cayleydih.cayley import build_cayley_graph, validate_connection_set
from cayleydih.groups import GroupSpec, parse_element_list, parse_group


def factorizations(n):
    """Ordered factorizations of n into factors >= 2."""
    if n == 1:
        yield ()
        return
    for f in range(2, n + 1):
        if n % f == 0:
            for rest in factorizations(n // f):
                yield (f,) + rest


def small_specs(max_order=32, dihedral=True):
    out = []
    for n in range(2, max_order + 1):
        for f in factorizations(n):
            out.append(GroupSpec.abelian(*f))
            if dihedral and 2 * n <= max_order:
                out.append(GroupSpec.dihedral(*f))
    return out


def make_set(group, text):
    spec = parse_group(group)
    return validate_connection_set(spec, parse_element_list(text, spec))


def make_graph(group, text):
    return build_cayley_graph(make_set(group, text))
