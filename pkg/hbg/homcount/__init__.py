# HBG - homomorphism counts into small finite groups
from hbg.homcount.backtrack import (
    assignment_order,
    count_all,
    count_homomorphisms,
    count_homomorphisms_exhaustive,
    evaluate_word,
)
from hbg.homcount.groups import BUILTIN, FiniteGroup, builtin_group, group_from_table

__all__ = [
    "BUILTIN",
    "FiniteGroup",
    "assignment_order",
    "builtin_group",
    "count_all",
    "count_homomorphisms",
    "count_homomorphisms_exhaustive",
    "evaluate_word",
    "group_from_table",
]
