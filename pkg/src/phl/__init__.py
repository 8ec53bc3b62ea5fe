"""Exact-rational models of hyperkahler-type cohomology and their
perverse-Hodge cubes, with mechanical verification of every stated bound,
symmetry and nilpotency criterion."""

from .filtration import (
    NilpotentOperator,
    NotNilpotentError,
    WeightFiltration,
    jordan_partition,
    nilpotency_index,
    verify_weight_axioms,
    weight_filtration,
)
from .linalg import (
    DimensionMismatch,
    MatrixQ,
    Subspace,
    image,
    join,
    kernel,
    meet,
    preimage,
    reduce,
)
from .models import (
    DistinguishedClasses,
    GradedAlgebraModel,
    ModelError,
    ModelSpec,
    QuadraticSpace,
    SpecError,
    build_k3,
    build_model,
    build_verbitsky,
    lefschetz,
    validate,
)
from .perverse import (
    FiltrationOnGraded,
    PerverseFiltration,
    PerverseHodgeCube,
    cube,
    diamond_and_betti,
    hodge_filtration_via_sigma_bar,
    hodge_item1_comparison,
    perverse_filtration,
)
from .lie import (
    GradingOperator,
    LieSubalgebra,
    Sl2CompletionError,
    lie_closure,
    membership,
    sl2_complete,
    so6_report,
)
from .checks import (
    SymmetryGroupSpec,
    bounds_check,
    commutator_nilpotency_check,
    octahedral_group,
    octahedral_symmetry_check,
    octahedron_conjecture_check,
    pf_symmetry_check,
    run_check_suite,
)
from .report import CheckReport, CheckResult

__version__ = "0.1.0"
