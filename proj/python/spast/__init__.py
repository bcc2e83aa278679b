"""Student-project allocation toolkit.

Thin wrapper over the compiled core. Matchings are plain lists indexed by
student (entry i-1 is the project assigned to student i, 0 = unassigned).
"""

from spast._spastcore import (
    Instance,
    approx,
    blocking_pairs,
    clone_hrt,
    emit_lp,
    generate,
    is_stable,
    max_stable,
    min_stable,
    parse,
    serialize,
    solve,
)

__all__ = [
    "Instance",
    "approx",
    "blocking_pairs",
    "clone_hrt",
    "emit_lp",
    "generate",
    "is_stable",
    "max_stable",
    "min_stable",
    "parse",
    "serialize",
    "solve",
]
