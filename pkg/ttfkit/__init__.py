"""ttfkit: torsion-freeness checks for finitely presented and virtually abelian groups."""
__version__ = "0.1.0"

from ttfkit.errors import (BudgetExceeded, FormatError, LevelGuardError, NotOfOrderError, PresentationError,
                           TtfkitError, UncoveredPairError, ValidationError, VerificationFailure)
from ttfkit.fp_core import GroupPresentation, builtin, parse_presentation
from ttfkit.ttf import certify_weak_ttf

__all__ = [
    "__version__",
    "BudgetExceeded", "FormatError", "LevelGuardError", "NotOfOrderError", "PresentationError",
    "TtfkitError", "UncoveredPairError", "ValidationError", "VerificationFailure",
    "GroupPresentation", "builtin", "parse_presentation", "certify_weak_ttf",
]
