"""Graph-cover pseudocodewords of linear codes over F2 and F3."""

from gcpseudo.cone import (
    ConeInequality,
    ConeSystem,
    critical_analysis,
    enumerate_k2,
    enumerate_k3,
    member,
    member_k2,
    member_k3,
    psi_map,
    support_normalize,
    verdict,
)
from gcpseudo.field import FieldMatrix, RationalMatrix, is_codeword, nullspace, rank, syndrome
from gcpseudo.kernels import BACKEND
from gcpseudo.lift import LiftResult, approximate_cone_point, lift_full, lift_single_row
from gcpseudo.oracle import check_lemma_battery, check_necessity, check_sufficiency, enumerate_pseudocodeword_matrices
from gcpseudo.tanner import (
    CoverGraph,
    CoverLabeling,
    PseudoMatrix,
    build_cover,
    build_tanner,
    lifted_parity_matrix,
    pseudocodeword_matrix,
    verify_pseudocodeword,
)

__all__ = [
    "BACKEND",
    "ConeInequality",
    "ConeSystem",
    "CoverGraph",
    "CoverLabeling",
    "FieldMatrix",
    "LiftResult",
    "PseudoMatrix",
    "RationalMatrix",
    "approximate_cone_point",
    "build_cover",
    "build_tanner",
    "check_lemma_battery",
    "check_necessity",
    "check_sufficiency",
    "critical_analysis",
    "enumerate_k2",
    "enumerate_k3",
    "enumerate_pseudocodeword_matrices",
    "is_codeword",
    "lift_full",
    "lift_single_row",
    "lifted_parity_matrix",
    "member",
    "member_k2",
    "member_k3",
    "nullspace",
    "psi_map",
    "pseudocodeword_matrix",
    "rank",
    "support_normalize",
    "syndrome",
    "verdict",
    "verify_pseudocodeword",
]
