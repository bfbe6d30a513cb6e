"""Enumeration-order experiments on a step-counted register machine.

The package is organized around the machine (machine), listings of sets with
step profiles (listing), order comparison (order), speed comparison
(rapidity), empirical growth bounds and certificates (complexity), many-one
reduction checking (reduction), a program corpus (corpus), and a CLI (cli).
"""

from __future__ import annotations

__version__ = "0.1.0"

from .machine import (  # noqa: F401
    DEFAULT_BRANCH_CAP,
    DEFAULT_FUEL,
    Instruction,
    NondetRunOutcome,
    Op,
    Program,
    RunOutcome,
    assemble,
    run_det,
    run_nondet,
)
from .listing import (  # noqa: F401
    DETERMINISTIC,
    NONDETERMINISTIC,
    AuditReport,
    Listing,
    Prefix,
    TimeProfile,
    audit,
    evaluate,
    prefix,
    sample,
    time_profile,
)
from .order import (  # noqa: F401
    CoOrderReport,
    RankPattern,
    WitnessPair,
    coorder_prefix,
    coorder_search,
    increasing_listing,
    rank_pattern,
)
from .rapidity import (  # noqa: F401
    EventualReport,
    StrictReport,
    cumulative,
    more_rapid,
    strictly_more_rapid,
)
from .complexity import (  # noqa: F401
    MIN_FIT_LENGTH,
    NP_COORDER,
    P_COORDER,
    BoundCheck,
    Certificate,
    GrowthFit,
    certify_np_coorder,
    certify_p_coorder,
    check_bound,
    fit_poly_exponent,
    lift_certificate,
    verify_certificate,
)
from .reduction import (  # noqa: F401
    NP_EQUIV,
    NPU,
    PU,
    ConsistencyReport,
    EquivalenceReport,
    ReductionReport,
    equivalence,
    turing_consistency,
    verify_reduction,
)
from .corpus import (  # noqa: F401
    CNF,
    MAX_SAT_CLAUSES,
    MAX_SAT_VARS,
    CorpusEntry,
    sat_brute_force,
    sat_check_program,
    sat_decode,
    sat_encode,
)
