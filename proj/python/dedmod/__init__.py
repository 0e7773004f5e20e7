"""Deduction modulo: rewriting, unification, proof checking and proof search."""

from ._dedmod import (
    DedmodError,
    Theory,
    builtin_names,
    check,
    congruent,
    eliminate,
    normalize,
    probe,
    prove,
    run,
    unify,
)

__all__ = [
    "DedmodError",
    "Theory",
    "builtin_names",
    "check",
    "congruent",
    "eliminate",
    "normalize",
    "probe",
    "prove",
    "run",
    "unify",
]
