"""Adaptive synchronisation for pushdown automata with observable stack.

Thin re-export of the compiled core; all functions take instance documents
and witness trees as text, in the same formats as the command line tool.
"""

from ._core import (
    AdasyncError,
    aeps_to_pda,
    check_witness,
    decide,
    reduce,
    structured_tree_count,
)

__all__ = [
    "AdasyncError",
    "aeps_to_pda",
    "check_witness",
    "decide",
    "reduce",
    "structured_tree_count",
]
