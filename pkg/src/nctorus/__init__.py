"""Connections, curvature, covering lifts and generalized Wilson lines on the noncommutative torus."""

from .algebra import (
    TorusElement,
    TorusParams,
    apply_auto,
    apply_derivation,
    lam,
    mono,
    one,
    u,
    v,
    zero,
)
from .connections import (
    Connection,
    TransportOperator,
    check_transport_axioms,
    curvature_commutator,
    curvature_form,
    is_flat,
    nabla,
    rotation_block_connection,
    scalar_connection,
    transport,
)
from .coverings import (
    ClosedPathReport,
    CoveringSpec,
    DeckElement,
    check_path_independence,
    classify_path,
    deck_act,
    lift_group,
    project,
    wilson,
)
from .errors import (
    NCTorusError,
    NonConstantConnection,
    NotFlat,
    ParamMismatch,
    PathNotAssociated,
    RankMismatch,
    UnsupportedProduct,
    ZeroWeight,
)
from .forms import MatrixForm, OneForm, TwoForm, d0, d1, matrix_d1, matrix_wedge, wedge
from . import infinitecover

__all__ = [
    "TorusElement",
    "TorusParams",
    "apply_auto",
    "apply_derivation",
    "lam",
    "mono",
    "one",
    "u",
    "v",
    "zero",
    "OneForm",
    "TwoForm",
    "MatrixForm",
    "d0",
    "d1",
    "wedge",
    "matrix_d1",
    "matrix_wedge",
    "Connection",
    "TransportOperator",
    "nabla",
    "curvature_form",
    "curvature_commutator",
    "is_flat",
    "transport",
    "check_transport_axioms",
    "scalar_connection",
    "rotation_block_connection",
    "CoveringSpec",
    "DeckElement",
    "ClosedPathReport",
    "project",
    "deck_act",
    "lift_group",
    "classify_path",
    "wilson",
    "check_path_independence",
    "NCTorusError",
    "ParamMismatch",
    "RankMismatch",
    "NonConstantConnection",
    "NotFlat",
    "ZeroWeight",
    "PathNotAssociated",
    "UnsupportedProduct",
]

__version__ = "0.1.0"
