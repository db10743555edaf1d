"""Exact algebra for the W3 invariant of barbell diffeomorphism families."""

from .errors import DomainError, LedgerError, StructuralError, W3Error
from .hexquot import is_in_R, orbit_of, rank_mod_R, reduce_mod_R
from .pi1cfg import HClass, Parity
from .ring import LaurentPoly
from .w3 import aggregate, assembly_check, delta_ledger, independence_certificate, w3_closed_form

__all__ = [
    "DomainError", "HClass", "LaurentPoly", "LedgerError", "Parity", "StructuralError",
    "W3Error", "aggregate", "assembly_check", "delta_ledger", "independence_certificate",
    "is_in_R", "orbit_of", "rank_mod_R", "reduce_mod_R", "w3_closed_form",
]
__version__ = "0.1.0"
