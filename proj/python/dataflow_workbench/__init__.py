"""Dataflow analysis workbench for a small imperative language.

Programs are passed as source text in the ``.imp`` format. Analyses are named
``lv``, ``vbe``, ``dv`` and ``rd`` (or their long forms).
"""

from ._dfa import (
    DfaError,
    analyze,
    canonical,
    check,
    const_prop,
    dead_store_elim,
    fuzz,
    generate,
    parse_errors,
    run,
)

ANALYSES = ("lv", "vbe", "dv", "rd")

__all__ = [
    "ANALYSES",
    "DfaError",
    "analyze",
    "canonical",
    "check",
    "const_prop",
    "dead_store_elim",
    "fuzz",
    "generate",
    "parse_errors",
    "run",
]
