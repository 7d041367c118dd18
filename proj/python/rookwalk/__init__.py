"""Rook walk counts, recurrence guessing and asymptotics.

Recurrences are passed around as the text of the recurrence file format,
integers as Python ints and rationals as fractions.Fraction.
"""

from ._rookwalk import (
    RookwalkError,
    alpha,
    check,
    diagonal_terms,
    expand,
    extend,
    fixed_n_counts,
    guess,
    naive_diagonal,
    ratio_check,
    repro_table,
    run_cli,
    slice_table,
    stats,
)

__all__ = [
    "RookwalkError",
    "alpha",
    "check",
    "diagonal_terms",
    "expand",
    "extend",
    "fixed_n_counts",
    "guess",
    "naive_diagonal",
    "ratio_check",
    "repro_table",
    "run_cli",
    "slice_table",
    "stats",
]
