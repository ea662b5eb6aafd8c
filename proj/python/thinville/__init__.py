"""Finite p-groups, thin groups and Beauville structures."""
import os as _os

_here = _os.path.dirname(__file__)
if "THINVILLE_CATALOG" not in _os.environ and _os.path.isdir(_os.path.join(_here, "catalog")):
    _os.environ["THINVILLE_CATALOG"] = _os.path.join(_here, "catalog")

from ._thinville import (  # noqa: E402
    BudgetExceeded,
    Error,
    Group,
    ParseError,
    PreconditionError,
    builtin,
    catalog_ids,
    catanese_check,
    check_consistency,
    cij,
    formulas,
    load,
    quadratic_nonresidues,
)

__all__ = [
    "BudgetExceeded",
    "Error",
    "Group",
    "ParseError",
    "PreconditionError",
    "builtin",
    "catalog_ids",
    "catanese_check",
    "check_consistency",
    "cij",
    "formulas",
    "load",
    "quadratic_nonresidues",
]
