"""Independent brute-force checks of the closed-form results."""

from .grid import GridResult, grid_lambda_search
from .holevo import eve_povm, guess_success, holevo_check
from .report import AggregateReport, ClaimResult, VerifyReport
from .simulate import SimReport, outcome_tables, simulate
from .uhf import hash_family, uhf_identity_check
from .verify import GROUPS, SUITES, resolve_suites, verify_all

__all__ = [
    "AggregateReport", "ClaimResult", "GROUPS", "GridResult", "SUITES", "SimReport",
    "VerifyReport", "eve_povm", "grid_lambda_search", "guess_success", "hash_family",
    "holevo_check", "outcome_tables", "resolve_suites", "simulate",
    "uhf_identity_check", "verify_all",
]
