# HBG - certificate search
from hbg.search.derive import (
    DeriveResult,
    DeriveStatus,
    SearchBudget,
    abelian_filter,
    certificate_key,
    commute_rest,
    derive,
    match_factor,
)

__all__ = [
    "DeriveResult",
    "DeriveStatus",
    "SearchBudget",
    "abelian_filter",
    "certificate_key",
    "commute_rest",
    "derive",
    "match_factor",
]
