"""Exact monodromy spectra of hypersurface singularities and the IC-manifold
tests built on them.

Spectra are multisets of rational angles a/b in [0, 1), standing for the
roots of unity exp(2*pi*i*a/b).  Everything is integer arithmetic.
"""

__version__ = "0.1.0"

from .ic import (
    Q,
    FieldSpec,
    ICVerdict,
    Topology,
    double_suspension_report,
    generic_multiplicity_check,
    is_ic_hypersurface,
    is_integral_homology_manifold,
    nearby_decomposition,
    topological_manifold_check,
)
from .lines import LineSingularityProblem, TransversalComponent, check_problem
from .planner import exact_j_membership, infinitude_witnesses, plan
from .spaces import DisjointUnion, HypersurfaceGerm, OpenSubsetOf, Product, Smooth, ic_status
from .spectrum import (
    BrieskornPham,
    EigenMultiset,
    ExplicitSpectrum,
    NotGaloisStable,
    PointPower,
    RationalAngle,
    Suspension,
    brieskorn_spectrum,
    char_poly,
    det_id_minus_monodromy,
    galois_stable,
    join,
    milnor_number,
    point_power_spectrum,
    spectrum_of,
    suspend,
)

__all__ = [
    "BrieskornPham", "DisjointUnion", "EigenMultiset", "ExplicitSpectrum", "FieldSpec",
    "HypersurfaceGerm", "ICVerdict", "LineSingularityProblem", "NotGaloisStable",
    "OpenSubsetOf", "PointPower", "Product", "Q", "RationalAngle", "Smooth", "Suspension",
    "Topology", "TransversalComponent", "brieskorn_spectrum", "char_poly", "check_problem",
    "det_id_minus_monodromy", "double_suspension_report", "exact_j_membership",
    "galois_stable", "generic_multiplicity_check", "ic_status", "infinitude_witnesses",
    "is_ic_hypersurface", "is_integral_homology_manifold", "join", "milnor_number",
    "nearby_decomposition", "plan", "point_power_spectrum", "spectrum_of", "suspend",
    "topological_manifold_check",
]
