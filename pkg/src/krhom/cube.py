"""The cube of resolutions of a link diagram and its assembly into a complex.

Cube coordinates: each crossing contributes an axis; coordinate 1 is the
resolution sitting at the higher homological degree (the oriented smoothing
at a positive crossing, the singular one at a negative crossing).  A state
with s_+ singular choices at positive crossings and s_- at negative ones
sits in homological degree i = s_- - s_+; its internal shift alpha collects
+1 per oriented and +2 per singular choice at positive crossings, -1 and -2
at negative ones.

Each state carries the module A^(x circles); an edge changes one crossing's
resolution, merging two circles or splitting one, and acts by the Frobenius
multiplication or comultiplication.  The edge picks up the sign
(-1)^(number of singular choices at earlier crossings in PD order).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .frobenius import AElem, CobordismMap
from .homology import GradedComplex, GradedModule
from .linkweb import ORIENTED, SINGULAR, LinkDiagram, _count_circles
from .polyring import Poly


@dataclass(frozen=True)
class CubeVertex:
    word: tuple[int, ...]
    i: int
    alpha: int
    circles: tuple[frozenset, ...]   # partition of the arcs, sorted by min arc

    @property
    def n_circles(self) -> int:
        return len(self.circles)


class Cube:
    def __init__(self, diagram: LinkDiagram):
        self.diagram = diagram
        self.n = len(diagram.crossings)
        self.vertices = {}
        for word in product((0, 1), repeat=self.n):
            self.vertices[word] = self._vertex(word)

    def state(self, word):
        """Resolution choice per crossing implied by cube coordinates."""
        out = {}
        for ci, x in enumerate(self.diagram.crossings):
            hi = ORIENTED if x.sign > 0 else SINGULAR
            lo = SINGULAR if x.sign > 0 else ORIENTED
            out[ci] = hi if word[ci] else lo
        return out

    def _vertex(self, word):
        st = self.state(word)
        i = 0
        alpha = 0
        joins = []
        for ci, x in enumerate(self.diagram.crossings):
            singular = st[ci] == SINGULAR
            if x.sign > 0:
                i += -1 if singular else 0
                alpha += 2 if singular else 1
            else:
                i += 1 if singular else 0
                alpha += -2 if singular else -1
            joins.extend(x.disoriented_joins() if singular else x.oriented_joins())
        circles = _partition(self.diagram.arcs, joins)
        return CubeVertex(word, i, alpha, circles)

    def edges(self):
        for word in self.vertices:
            for c in range(self.n):
                if word[c] == 0:
                    yield word, c

    def edge_sign(self, word, c) -> int:
        st = self.state(word)
        sing_before = sum(1 for k in range(c) if st[k] == SINGULAR)
        return -1 if sing_before % 2 else 1

    def generator_degrees(self):
        """Yield (homological degree, q-degree) over the whole cube basis."""
        for v in self.vertices.values():
            for bits in product((0, 1), repeat=v.n_circles):
                yield v.i, sum(1 if b else -1 for b in bits) + v.alpha

    def __repr__(self):
        return f"Cube({self.n} crossings, {len(self.vertices)} states)"


def _partition(arcs, joins):
    parent = {a: a for a in arcs}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for p, q in joins:
        parent[find(p)] = find(q)
    groups = {}
    for a in arcs:
        groups.setdefault(find(a), set()).add(a)
    return tuple(sorted((frozenset(g) for g in groups.values()), key=min))


def build_cube(d: LinkDiagram) -> Cube:
    return Cube(d)


def edge_map(cube: Cube, word, c: int) -> CobordismMap:
    """The signed saddle map along the edge raising coordinate c."""
    if word[c] != 0:
        raise ValueError("edge must start at coordinate 0")
    src = cube.vertices[word]
    tgt_word = word[:c] + (1,) + word[c + 1 :]
    tgt = cube.vertices[tgt_word]
    sign = cube.edge_sign(word, c)

    src_set = set(src.circles)
    tgt_set = set(tgt.circles)
    if len(src.circles) == len(tgt.circles) + 1:
        (merged,) = tgt_set - src_set
        parts = sorted((k for k, g in enumerate(src.circles) if g <= merged))
        if len(parts) != 2:
            raise ValueError("saddle did not merge exactly two circles")
        ia, ib = parts
        after = [g for k, g in enumerate(src.circles) if k != ib]
        after[ia] = merged
        ops = [("merge", ia, ib)]
    elif len(tgt.circles) == len(src.circles) + 1:
        (split,) = src_set - tgt_set
        ic = src.circles.index(split)
        pieces = sorted((g for g in tgt.circles if g <= split), key=min)
        if len(pieces) != 2:
            raise ValueError("saddle did not split into exactly two circles")
        after = list(src.circles)
        after[ic : ic + 1] = pieces
        ops = [("split", ic)]
    else:
        raise ValueError("edge changed circle count by something other than one")
    perm = tuple(after.index(g) for g in tgt.circles)
    if perm != tuple(range(len(perm))):
        ops.append(("perm", perm))
    return CobordismMap(src.n_circles, ops, sign)


def _index_generators(cube: Cube):
    """Deterministic global numbering: (i -> labels, qdegs) and lookup."""
    per_degree = {}
    lookup = {}
    for word in sorted(cube.vertices):
        v = cube.vertices[word]
        for bits in product((0, 1), repeat=v.n_circles):
            q = sum(1 if b else -1 for b in bits) + v.alpha
            labels, qdegs = per_degree.setdefault(v.i, ([], []))
            lookup[(word, bits)] = (v.i, len(labels))
            labels.append((word, bits))
            qdegs.append(q)
    return per_degree, lookup


def _edge_entries(cube: Cube, lookup, specialization=None):
    """Yield (i, row, col, value) differential entries, value Poly or Fraction."""
    for word, c in cube.edges():
        fmap = edge_map(cube, word, c)
        src = cube.vertices[word]
        tgt_word = word[:c] + (1,) + word[c + 1 :]
        for bits in product((0, 1), repeat=src.n_circles):
            i, col = lookup[(word, bits)]
            out = fmap.apply(AElem.basis(bits))
            for obits, coeff in out.terms.items():
                _, row = lookup[(tgt_word, obits)]
                if specialization is not None:
                    val = coeff.evaluate(
                        {"a": specialization.a, "h": specialization.h}
                    )
                    if val == 0:
                        continue
                    yield i, row, col, val
                else:
                    yield i, row, col, coeff


def assemble_complex(cube: Cube, check: bool = True) -> GradedComplex:
    """Build the symbolic complex over Q[a,h]; verifies d.d = 0 unless told not to."""
    per_degree, lookup = _index_generators(cube)
    modules = {
        i: GradedModule(tuple(labels), tuple(qdegs))
        for i, (labels, qdegs) in per_degree.items()
    }
    diff = {i: {} for i in modules}
    zero = Poly.zero()
    for i, row, col, val in _edge_entries(cube, lookup):
        key = (row, col)
        cur = diff[i].get(key, zero) + val
        if cur.is_zero():
            diff[i].pop(key, None)
        else:
            diff[i][key] = cur
    cx = GradedComplex(modules, diff, ring="poly")
    if check:
        cx.check_d_squared()
    return cx


def assemble_specialized(cube: Cube, specialization, check: bool = True) -> GradedComplex:
    """Build the complex directly over Q at a chosen (a, h) point."""
    per_degree, lookup = _index_generators(cube)
    modules = {
        i: GradedModule(tuple(labels), tuple(qdegs))
        for i, (labels, qdegs) in per_degree.items()
    }
    diff = {i: {} for i in modules}
    for i, row, col, val in _edge_entries(cube, lookup, specialization):
        key = (row, col)
        cur = diff[i].get(key, Fraction(0)) + val
        if cur == 0:
            diff[i].pop(key, None)
        else:
            diff[i][key] = cur
    cx = GradedComplex(modules, diff, ring="rational")
    if check:
        cx.check_d_squared()
    return cx
