"""Exact arithmetic and verification suites for the reduced-ring order.

The order puts a <= b on a reduced ring whenever a*a == a*b.  This
package builds finite reduced commutative rings (and two families of
infinite ones) with exact arithmetic, decides order-theoretic questions
about them exhaustively or by decision procedure, lifts orthogonal
elements across surjections, decomposes rings over their idempotent
atoms, and packages the whole theory as reproducible verification
suites behind a CLI.
"""

from .rings import (
    FiniteRing,
    NonPrimeError,
    NonSquarefreeModulusError,
    QuotientNotReducedError,
    RingError,
    SizeCapError,
    Surjection,
    build_product,
    build_zmod,
    corner_ring,
    is_reduced,
    quotient,
    subring_closure,
)
from .order import (
    ChainStep,
    ClassificationReport,
    NoInfimumError,
    NotWeaklyBaerError,
    chain_extend,
    classify,
    inf_rr,
    inf_rr_wb,
    largest_idempotent_in_ann,
    le_rr,
    lower_bounds,
    quadratic_closure,
    rr_orthogonal,
)
from .pierce import (
    BooleanAlgebra,
    boolean_algebra,
    check_local_inf,
    check_necessary,
    reconstructs_from_stalks,
    stalk,
    support,
    unit_wedge_exists,
    zariski_d,
    zariski_v,
    zero_set,
)
from .lifting import (
    ChainBudgetExceededError,
    LiftProblem,
    lift_family,
    lift_pair_chain,
    lift_pair_rrgood,
    verify_preservation,
)
from .bivariate import (
    AnnType,
    BivarElem,
    BivarRing,
    annihilator_type,
    bivar_ring,
    generated_subalgebra,
    inf_rr_bivar,
    verify_bvide,
)
from .seqring import INF, SeqElem, SeqRing
from .psring import (
    Series,
    annihilator_idempotent,
    coeff_quotient,
    idempotent_constancy_check,
    monoid_make,
    mu,
    series,
    verify_wb,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
