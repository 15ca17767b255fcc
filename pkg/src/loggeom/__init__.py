"""Exact computation with presented monoids, log rings, and log differentials."""

__version__ = "0.1.0"

from .intlin import (  # noqa: F401
    AbGroupMap, FgAbelianGroup, cokernel, kernel, pullback_group,
    smith_normal_form,
)
from .monoids import (  # noqa: F401
    IncompleteComputation, MonoidElement, MonoidMap, MonoidPresentation,
    Undetermined, direct_sum, eq_elements, exactify, group_completion,
    is_exact, is_integral, is_virtually_surjective, pushout_monoid, repletion,
)
from .rings import (  # noqa: F401
    INT, RAT, CoeffDomain, ModulePresentation, RingMap, RingPresentation,
    fitting_ideal, fp, hom_count, int_inv, is_unit, is_zero_module,
    kahler_differentials, tensor_over,
)
from .logrings import (  # noqa: F401
    PreLogMap, PreLogRing, UnitGroupSpec, builtin_units, inverse_image,
    is_log, is_strict, logify, unit_pullback,
)
from .diffs import (  # noqa: F401
    AugmentedAlgebra, indecomposables, log_diagonal, log_differentials,
    replete_abelianization,
)
from .deform import (  # noqa: F401
    FormalSplitSquareZero, LogDerivation, SquareZeroExtensionData,
    classify_log_square_zero, is_square_zero_ring_ext, log_derivations,
    split_square_zero,
)
from .etale import (  # noqa: F401
    ChartReport, adjoin_root, base_change, check_charted_log_etale,
    log_unramified_check,
)
