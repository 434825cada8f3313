"""End-to-end verification of the example super groups.

Submodules: `heisenberg` (the odd Heisenberg family, exact),
`axibeta` (the affine group of the odd line), `ospcheck` (the OSp(1,2)
dossier), `integrate` (infinitesimal-to-group integration checks),
`lemmas` (exponential-splitting identities), `grid` (the sampled L^2
factor), `report` and `verify` (the check runner and driver).
"""

from .report import RepCheckReport, all_passed, run_checks, summarize
from .verify import EXAMPLES, verify

__all__ = [
    "EXAMPLES",
    "RepCheckReport",
    "all_passed",
    "run_checks",
    "summarize",
    "verify",
]
