"""Constructors for the example families: poset nerves, fat nerves, layered
finite sets (binomial), injection strings, forests with admissible cuts,
graphs with ordered vertex partitions, and exact-sequence staircases over a
finite field."""

from .fatnerve import FinCat, fat_nerve, group_category, poset_category
from .forests import forests_H
from .graphs import graphs_G
from .posets import PosetSpec, nerve_of_poset
from .sets import binomial_B, injections_I, oi_space, oi_to_i
from .vect import mono_nerve, mono_projection, vect_S

__all__ = [
    "FinCat",
    "PosetSpec",
    "binomial_B",
    "fat_nerve",
    "forests_H",
    "graphs_G",
    "group_category",
    "injections_I",
    "mono_nerve",
    "mono_projection",
    "nerve_of_poset",
    "oi_space",
    "oi_to_i",
    "poset_category",
    "vect_S",
]
