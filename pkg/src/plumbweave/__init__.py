"""Lefschetz fibration words for plumbings of sphere cotangent bundles.

Given a rooted plane tree, the package computes the abstract Lefschetz
fibration of the plumbing of copies of ``T*S^n`` along that tree: the fiber
is the plumbing along the quotient tree, one dimension down, and the
vanishing-cycle word is read off the tree's canonical vertex and edge
orders.  On top of that it tracks the moves relating different fibrations
of the same space (cyclic permutation, both Hurwitz moves, stabilization),
matching cycles, and exact homology certificates for the total space.
"""

from .errors import PlumbweaveError
from .fibration import (
    AbstractLF,
    MatchingCycle,
    PlumbingDescriptor,
    VanishingCycle,
    family_tree,
    family_word,
    fibrate,
    from_json,
    layout,
    matching_cycles,
    render_base,
    to_json,
)
from .invariants import (
    HomologyReport,
    euler_characteristic,
    total_homology,
    wedge_oracle,
)
from .lattice import (
    Convention,
    DEFAULT_CONVENTION,
    IntersectionForm,
    dehn_twist,
    intersection_form,
    smith_normal_form,
)
from .moves import (
    MoveRecord,
    cyclic_permute,
    equal_homology,
    hurwitz_a,
    hurwitz_b,
    replay,
    search_equivalence,
    stabilize,
)
from .treecore import (
    OrderedTree,
    QuotientData,
    RootedEmbeddedTree,
    UnrootedTree,
    canonical_coords,
    order_tree,
    parse_tree,
    prefix_subtree,
    quotient,
    random_tree,
)

__version__ = "0.1.0"

__all__ = [
    "AbstractLF",
    "Convention",
    "DEFAULT_CONVENTION",
    "HomologyReport",
    "IntersectionForm",
    "MatchingCycle",
    "MoveRecord",
    "OrderedTree",
    "PlumbingDescriptor",
    "PlumbweaveError",
    "QuotientData",
    "RootedEmbeddedTree",
    "UnrootedTree",
    "VanishingCycle",
    "canonical_coords",
    "cyclic_permute",
    "dehn_twist",
    "equal_homology",
    "euler_characteristic",
    "family_tree",
    "family_word",
    "fibrate",
    "from_json",
    "hurwitz_a",
    "hurwitz_b",
    "intersection_form",
    "layout",
    "matching_cycles",
    "order_tree",
    "parse_tree",
    "prefix_subtree",
    "quotient",
    "random_tree",
    "render_base",
    "replay",
    "search_equivalence",
    "smith_normal_form",
    "stabilize",
    "to_json",
    "total_homology",
    "wedge_oracle",
]
