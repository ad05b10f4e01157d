"""Cayley graphs that are simultaneously Cayley on an abelian and a generalized dihedral group."""

from .groups import Element, FactorChoice, GroupSpec, GroupType, classify, is_isomorphic, parse_element, parse_group
from .cayley import ConnectionSet, Graph, build_cayley_graph, validate_connection_set
from .autgrp import automorphism_group, enumerate_regular_subgroups, verify_action
from .constructions import (
    RegularAction,
    Thm3Instance,
    corollary_representations,
    split_choices,
    thm2_construct,
    thm3_construct,
    thm3_find_y,
)

__version__ = "0.1.0"

__all__ = [
    "ConnectionSet",
    "Element",
    "FactorChoice",
    "Graph",
    "GroupSpec",
    "GroupType",
    "RegularAction",
    "Thm3Instance",
    "automorphism_group",
    "build_cayley_graph",
    "classify",
    "corollary_representations",
    "enumerate_regular_subgroups",
    "is_isomorphic",
    "parse_element",
    "parse_group",
    "split_choices",
    "thm2_construct",
    "thm3_construct",
    "thm3_find_y",
    "validate_connection_set",
    "verify_action",
]
