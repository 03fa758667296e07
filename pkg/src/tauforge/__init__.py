"""Exact verification of Fay-type and Wronskian identities for polynomial KdV tau functions."""

__version__ = "0.1.0"

from .algebra import Poly, RationalFunction, VarId, format_poly, parse_poly  # noqa: E402
from .identities import (  # noqa: E402
    cubic_i_sides,
    cubic_ii_sides,
    diff_fay_residual,
    generate_product_identity,
    lemma22_residual,
    seventh_order_sides,
    verify_identity,
    wronskian,
)
from .numeric import ThetaParams, random_point_check, theta11  # noqa: E402
from .report import IdentityReport  # noqa: E402
from .tau import TauPoly, fay_residual, is_kdv_tau, shifted, staircase_tau  # noqa: E402
from .waves import faddeev_takhtajan_check, lemma23_residual, make_wave, sturm_liouville_residual  # noqa: E402

__all__ = [
    "Poly", "RationalFunction", "VarId", "format_poly", "parse_poly",
    "cubic_i_sides", "cubic_ii_sides", "diff_fay_residual", "generate_product_identity",
    "lemma22_residual", "seventh_order_sides", "verify_identity", "wronskian",
    "ThetaParams", "random_point_check", "theta11", "IdentityReport",
    "TauPoly", "fay_residual", "is_kdv_tau", "shifted", "staircase_tau",
    "faddeev_takhtajan_check", "lemma23_residual", "make_wave", "sturm_liouville_residual",
]
