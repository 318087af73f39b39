"""p-adic multiple polylogarithms, mixed Tate Hopf algebra bases and
polylogarithmic Chabauty-Kim loci for the S-unit equation."""

from .padic import PadicNumber, iwasawa_log, padic
from .frobenius import PolylogEngine, li, zeta
from .words import FormalIntegrand, coproduct, goncharov_reduced_coproduct, parse_symbol
from .basis import BasisDatum, IntegerScheme, realize, verify_basis_datum
from .newton import RootCriterionInput, root_criterion
from .pointcount import point_count, search_points

__version__ = "0.1.0"
