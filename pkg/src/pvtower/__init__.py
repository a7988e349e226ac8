"""Exact K-theory of crossed products by Z^n-actions.

Koszul complexes over Laurent rings and over finitely generated graded
abelian groups, Smith-normal-form homology, Pimsner-Voiculescu towers,
and the K-theory of classical homogeneous spaces.
"""

from .abgroup import (
    FGAbelianGroup,
    GradedGroup,
    IntMatrix,
    SmithNormalForm,
    cokernel,
    graded_suspend,
    homology,
    snf,
    subquotient,
)
from .cubical import CubeFace, cellular_differential, enumerate_faces, oracle_compare
from .exterior import Covector, ExteriorIndex, exterior_basis, interior_mul, koszul_matrix
from .koszul import (
    GradedEndo,
    KoszulComplex,
    ModuleDatum,
    Presentation,
    build_datum,
    build_symbolic,
    convolve_with_exterior,
    datum_cohomology,
    generic_rank_exactness,
    split_reduction,
)
from .liegroups import (
    SeriesSpec,
    homogeneous_ktheory,
    homogeneous_tower,
    weyl_enumerate,
    weyl_order,
)
from .ring import LaurentPoly, PolyMatrix, parse_poly
from .tower import (
    PVResult,
    TowerReport,
    TowerShape,
    euler_characteristic,
    iterate_rank1,
    pv_rank1,
    pv_tower,
    tower_shape,
)

__all__ = [
    "Covector",
    "CubeFace",
    "ExteriorIndex",
    "FGAbelianGroup",
    "GradedEndo",
    "GradedGroup",
    "IntMatrix",
    "KoszulComplex",
    "LaurentPoly",
    "ModuleDatum",
    "PVResult",
    "PolyMatrix",
    "Presentation",
    "SeriesSpec",
    "SmithNormalForm",
    "TowerReport",
    "TowerShape",
    "build_datum",
    "build_symbolic",
    "cellular_differential",
    "cokernel",
    "convolve_with_exterior",
    "datum_cohomology",
    "enumerate_faces",
    "euler_characteristic",
    "exterior_basis",
    "generic_rank_exactness",
    "graded_suspend",
    "homogeneous_ktheory",
    "homogeneous_tower",
    "homology",
    "interior_mul",
    "iterate_rank1",
    "koszul_matrix",
    "oracle_compare",
    "parse_poly",
    "pv_rank1",
    "pv_tower",
    "snf",
    "split_reduction",
    "subquotient",
    "tower_shape",
    "weyl_enumerate",
    "weyl_order",
]
