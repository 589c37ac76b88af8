"""Certificates of non-tautological Hurwitz cycles.

The package splits into arithmetic (qseries, modular, lattice), monodromy
counting (hurwitz), degeneration combinatorics (graphs, covers, strata), and
the reduction-chain layer (certify, serialize, cli).  The names re-exported
here are the stable surface; everything else is internal.
"""

from .certify import (
    Certificate,
    HypothesisCheck,
    HypothesisReport,
    Step,
    build_certificate,
    check_hypotheses,
    verify_certificate,
)
from .covers import (
    GraphCover,
    cover_degree,
    genericity_check,
    intersection_multiplicity,
    realizable,
    stratum_dimension,
    validate_cover,
)
from .errors import Refusal
from .graphs import AStructure, StableGraph
from .hurwitz import (
    CoverCount,
    MonodromyProblem,
    count_tuples,
    torus_cover_classes,
)
from .lattice import HNFMatrix, SNFClass, double_cosets, sigma1, sublattices
from .modular import (
    a_coeff,
    a_coeff_table,
    hecke_apply,
    hecke_eigenvalue_check,
    tau,
    tau_table,
)
from .qseries import QSeries, eta_power
from .serialize import (
    certificate_from_json,
    certificate_to_json,
    cover_from_json,
    cover_to_json,
    graph_from_json,
    graph_to_json,
)
from .strata import (
    HurwitzParams,
    StratumContribution,
    classify_comb_pullback,
    classify_divisor_pullback,
    classify_equal12,
    pairing_coefficient,
    separating_image_check,
)

__version__ = "0.1.0"

__all__ = [
    "AStructure",
    "Certificate",
    "CoverCount",
    "GraphCover",
    "HNFMatrix",
    "HurwitzParams",
    "HypothesisCheck",
    "HypothesisReport",
    "MonodromyProblem",
    "QSeries",
    "Refusal",
    "SNFClass",
    "StableGraph",
    "Step",
    "StratumContribution",
    "a_coeff",
    "a_coeff_table",
    "build_certificate",
    "certificate_from_json",
    "certificate_to_json",
    "check_hypotheses",
    "classify_comb_pullback",
    "classify_divisor_pullback",
    "classify_equal12",
    "count_tuples",
    "cover_degree",
    "cover_from_json",
    "cover_to_json",
    "double_cosets",
    "eta_power",
    "genericity_check",
    "graph_from_json",
    "graph_to_json",
    "hecke_apply",
    "hecke_eigenvalue_check",
    "intersection_multiplicity",
    "pairing_coefficient",
    "realizable",
    "separating_image_check",
    "sigma1",
    "stratum_dimension",
    "sublattices",
    "tau",
    "tau_table",
    "torus_cover_classes",
    "validate_cover",
    "verify_certificate",
]
