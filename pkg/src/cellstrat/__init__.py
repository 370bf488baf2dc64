"""Totally normal cellular stratified spaces, their barycentric subdivisions,
and exact integral homology."""

from .acyclic import (
    Chain,
    FiniteAcyclicCategory,
    GradedPoset,
    Morphism,
    Poset,
    nondegenerate_nerve,
    order_complex,
    poset_to_category,
    underlying_poset,
    validate_category,
)
from .arrangements import (
    AffineForm,
    Arrangement,
    Face,
    FacePoset,
    braid_arrangement,
    complement_subposet,
    enumerate_faces,
    enumerate_higher_faces,
    feasible,
    salvetti,
)
from .complexes import (
    ChainComplex,
    DeltaSet,
    HomologyResult,
    chain_complex,
    deltaset_homology,
    euler_characteristic,
    homology,
    smith_normal_form,
    validate_deltaset,
)
from .graphconf import (
    ConfCell,
    ConfModel,
    Graph,
    PinMorphism,
    abrams_complex,
    conf_face_category,
    graph_css,
    subdivide_graph,
    unordered_quotient,
)
from .report import ValidationReport
from .strata import (
    TotallyNormalCSS,
    barycentric_subdivision,
    boundary_poset,
    css_of_deltaset,
    css_of_regular_poset,
    fixture,
    validate_css,
)

__version__ = "0.1.0"
