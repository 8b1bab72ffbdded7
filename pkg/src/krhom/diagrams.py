"""A small catalog of named diagrams used by the built-in checks.

Entries are plain diagram text (X[a,b,c,d] / O[k] lines).  The closed-braid
entries are generated rather than hand-written so their labels stay
consistent with the braid helper; the few hand-written codes are ones whose
orientations the text pins completely.
"""

from __future__ import annotations

from .braids import braid_closure
from .linkweb import LinkDiagram, parse_diagram

DIAGRAMS: dict = {
    "unknot": "O[1]",
    "unlink2": "O[1]\nO[2]",
    "kink_pos": "X[1,1,2,2]",
    "kink_neg": "X[1,2,2,1]",
    "hopf_pos": "X[4,2,3,1]\nX[2,4,1,3]",
    "hopf_neg": "X[4,1,3,2]\nX[2,3,1,4]",
    "trefoil_right": "X[1,5,2,4]\nX[3,1,4,6]\nX[5,3,6,2]",
    "trefoil_left": "X[1,4,2,5]\nX[3,6,4,1]\nX[5,2,6,3]",
    "figure8": braid_closure(3, (1, -2, 1, -2)),
    "r2_pair": braid_closure(2, (1, -1)),
    "r3_left": braid_closure(3, (1, 2, 1)),
    "r3_right": braid_closure(3, (2, 1, 2)),
    "r3_mixed_left": braid_closure(3, (1, 2, -1)),
    "r3_mixed_right": braid_closure(3, (-2, 1, 2)),
    "stabilized_trefoil": braid_closure(3, (1, 1, 1, 2)),
    "twist_trefoil": braid_closure(2, (1, 1, 1)),
    "torus_2_10": braid_closure(2, (1,) * 10),
}


def get(name: str) -> LinkDiagram:
    return parse_diagram(DIAGRAMS[name])
