"""Exact combinatorics of hyperelliptic mapping class groups.

Twist words and their actions (Weierstrass permutations, symplectic matrices
over Z and Z/m), orbit complexes of curves on punctured spheres, and the
dictionary between sphere curve systems and symmetric multicurves on the
closed hyperelliptic surface.
"""

from .dictionary import (
    HypCutProfile,
    StabilizerProfile,
    SymmetricCurveClass,
    classify_curve,
    cut_profile,
    lift_multicurve,
    stabilizer_profile,
)
from .errors import *  # noqa: F401,F403
from .strata import (
    LaminarFamily,
    StableTree,
    complex_dimension,
    count_vertex_orbits,
    enumerate_simplices,
    family_to_tree,
    homology,
    tree_to_family,
)
from .surface import (
    HyperellipticSurface,
    QuotientProfile,
    Surface,
    make_hyperelliptic,
    make_surface,
    quotient_surface,
)
from .symplectic import (
    ChainClasses,
    SympMatrix,
    chain_classes,
    evaluate,
    group_closure,
    level_membership,
    sp_order,
    transvection,
)
from .words import (
    Permutation,
    TwistWord,
    involution_word,
    parse_word,
    perm_group_order,
    reduce,
    rho_w,
)

__version__ = "0.1.0"
