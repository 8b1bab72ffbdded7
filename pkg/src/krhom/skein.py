"""Graded state sums: web and link brackets, and the classical skein relation.

Every closed web evaluates to (q + q^-1)^(number of cycles).  A link diagram
evaluates by summing over all resolutions: an oriented choice at a positive
crossing weighs q, a singular choice -q^2; at a negative crossing the weights
are q^-1 and -q^-2.
"""

from __future__ import annotations

from itertools import product

from .linkweb import ORIENTED, SINGULAR, LinkDiagram, Web, _count_circles
from .polyring import LaurentPoly


def web_bracket(w: Web) -> LaurentPoly:
    return LaurentPoly.circle() ** w.n_cycles


def state_circle_count(d: LinkDiagram, word) -> int:
    """Circles of a resolution, without building the web."""
    joins = []
    for ci, x in enumerate(d.crossings):
        if word[ci] == ORIENTED:
            joins.extend(x.oriented_joins())
        else:
            joins.extend(x.disoriented_joins())
    return _count_circles(d.arcs, joins)


def state_weights(d: LinkDiagram, word):
    """(homological degree i, internal degree shift alpha) of a resolution."""
    i = 0
    alpha = 0
    for ci, x in enumerate(d.crossings):
        singular = word[ci] == SINGULAR
        if x.sign > 0:
            i += -1 if singular else 0
            alpha += 2 if singular else 1
        else:
            i += 1 if singular else 0
            alpha += -2 if singular else -1
    return i, alpha


def link_bracket(d: LinkDiagram) -> LaurentPoly:
    n = len(d.crossings)
    total = LaurentPoly.zero()
    circle = LaurentPoly.circle()
    for states in product((ORIENTED, SINGULAR), repeat=n):
        word = dict(enumerate(states))
        i, alpha = state_weights(d, word)
        c = state_circle_count(d, word)
        term = (circle ** c).shift(alpha)
        total = total + (term if i % 2 == 0 else -term)
    return total


def jones_relation_check(d_pos: LinkDiagram, d_neg: LinkDiagram, d_or: LinkDiagram) -> bool:
    """Check q^2<d_neg> - q^-2<d_pos> = (q - q^-1)<d_or>.

    The three diagrams must agree away from one site, which carries a
    positive crossing, a negative crossing, and the oriented smoothing
    respectively; only the crossing-count bookkeeping of that promise is
    verified here.
    """
    if d_pos.n_positive != d_neg.n_positive + 1:
        raise ValueError("d_pos must carry one extra positive crossing")
    if d_neg.n_negative != d_pos.n_negative + 1:
        raise ValueError("d_neg must carry one extra negative crossing")
    if len(d_or.crossings) != len(d_pos.crossings) - 1:
        raise ValueError("d_or must have one crossing fewer")
    lhs = link_bracket(d_neg).shift(2) - link_bracket(d_pos).shift(-2)
    q = LaurentPoly.monomial(1)
    q_inv = LaurentPoly.monomial(-1)
    rhs = (q - q_inv) * link_bracket(d_or)
    return lhs == rhs
