"""Generate PD text for closures of braid words.

A braid word is a sequence of nonzero ints: +i crosses strands i, i+1 with
the (i+1)-strand passing under (a positive crossing), -i the other way.
Strand positions are 1-based.  The closure identifies top and bottom arc
labels; strands untouched by any generator close into O-loops.
"""

from __future__ import annotations

from .linkweb import LinkDiagram, parse_diagram


def braid_closure(width: int, word) -> str:
    if width < 1:
        raise ValueError("braid width must be positive")
    cur = list(range(1, width + 1))
    nxt = width + 1
    crossings = []
    for g in word:
        i = abs(g)
        if not 1 <= i < width:
            raise ValueError(f"generator {g} out of range for width {width}")
        left, right = cur[i - 1], cur[i]
        new_left, new_right = nxt, nxt + 1
        nxt += 2
        if g > 0:
            crossings.append((right, new_right, new_left, left))
        else:
            crossings.append((left, right, new_right, new_left))
        cur[i - 1], cur[i] = new_left, new_right
    relabel = {}
    loops = []
    for j in range(width):
        if cur[j] == j + 1:
            loops.append(j + 1)
        else:
            relabel[cur[j]] = j + 1
    lines = []
    for arcs in crossings:
        a, b, c, d = (relabel.get(x, x) for x in arcs)
        lines.append(f"X[{a},{b},{c},{d}]")
    lines.extend(f"O[{l}]" for l in loops)
    return "\n".join(lines) + "\n"


def closure_diagram(width: int, word) -> LinkDiagram:
    return parse_diagram(braid_closure(width, word))
