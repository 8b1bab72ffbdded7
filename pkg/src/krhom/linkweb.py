"""Oriented link diagrams in PD notation, and their resolutions into webs.

A crossing is written ``X[a,b,c,d]`` with the four incident arc ids listed
counterclockwise starting from the incoming under-strand; crossing-free
loops are written ``O[c]``.  The under-strand runs a -> c.  The over-strand
runs d -> b at a positive crossing and b -> d at a negative one; the parser
recovers the over-strand directions (hence the signs) by propagating
orientation constraints, so the text format itself never mentions signs.

Resolving every crossing (oriented or singular) yields a closed web: a
disjoint union of cycles carrying bivalent vertices, where each singular
crossing contributes one in-in vertex (absorbing its two incoming arcs) and
one out-out vertex (emitting its two outgoing arcs).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

ORIENTED = "oriented"
SINGULAR = "singular"


@dataclass(frozen=True)
class Crossing:
    arcs: tuple[int, int, int, int]
    sign: int

    @property
    def under_in(self) -> int:
        return self.arcs[0]

    @property
    def under_out(self) -> int:
        return self.arcs[2]

    @property
    def over_in(self) -> int:
        return self.arcs[3] if self.sign > 0 else self.arcs[1]

    @property
    def over_out(self) -> int:
        return self.arcs[1] if self.sign > 0 else self.arcs[3]

    def ins_outs(self):
        """(incoming arc pair, outgoing arc pair), slot order preserved."""
        a, b, c, d = self.arcs
        if self.sign > 0:
            return (a, d), (c, b)
        return (a, b), (c, d)

    def oriented_joins(self):
        """The two (in -> out) reconnections of the oriented smoothing."""
        a, b, c, d = self.arcs
        if self.sign > 0:
            return (a, b), (d, c)
        return (a, d), (b, c)

    def disoriented_joins(self):
        """Unordered arc pairs glued by the singular (disoriented) smoothing."""
        ins, outs = self.ins_outs()
        return ins, outs


class LinkDiagram:
    def __init__(self, crossings, loops=()):
        self.crossings = tuple(crossings)
        self.loops = tuple(loops)
        self.arcs = self._collect_arcs()
        self.components = self._components()
        self._comp_of = {a: i for i, comp in enumerate(self.components) for a in comp}

    # -- construction helpers ------------------------------------------------

    def _collect_arcs(self):
        arcs = set(self.loops)
        for x in self.crossings:
            arcs.update(x.arcs)
        return tuple(sorted(arcs))

    def _components(self):
        succ = {}
        for x in self.crossings:
            succ[x.under_in] = x.under_out
            succ[x.over_in] = x.over_out
        comps = []
        seen = set()
        for a in sorted(succ):
            if a in seen:
                continue
            comp = []
            cur = a
            while cur not in seen:
                seen.add(cur)
                comp.append(cur)
                cur = succ[cur]
            comps.append(tuple(comp))
        comps.extend((l,) for l in self.loops)
        return tuple(sorted(comps, key=min))

    # -- basic data ------------------------------------------------------------

    @property
    def n_components(self) -> int:
        return len(self.components)

    def component_of(self, arc: int) -> int:
        return self._comp_of[arc]

    @property
    def writhe(self) -> int:
        return sum(x.sign for x in self.crossings)

    @property
    def n_positive(self) -> int:
        return sum(1 for x in self.crossings if x.sign > 0)

    @property
    def n_negative(self) -> int:
        return sum(1 for x in self.crossings if x.sign < 0)

    def linking_matrix(self):
        """Half signed crossing counts between components; diagonal = self-writhe."""
        n = self.n_components
        m = [[Fraction(0)] * n for _ in range(n)]
        for x in self.crossings:
            i = self.component_of(x.under_in)
            j = self.component_of(x.over_in)
            if i == j:
                m[i][i] += x.sign
            else:
                m[i][j] += Fraction(x.sign, 2)
                m[j][i] += Fraction(x.sign, 2)
        return m

    def linking_number(self, i: int, j: int) -> Fraction:
        return self.linking_matrix()[i][j]

    def seifert_circle_count(self) -> int:
        """Circles of the all-oriented smoothing."""
        joins = []
        for x in self.crossings:
            joins.extend(x.oriented_joins())
        return _count_circles(self.arcs, joins)

    def resolve(self, word) -> "Web":
        return resolve(self, word)

    def __repr__(self):
        return f"LinkDiagram({len(self.crossings)} crossings, {self.n_components} components)"


def _count_circles(arcs, joins) -> int:
    parent = {a: a for a in arcs}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for p, q in joins:
        parent[find(p)] = find(q)
    return len({find(a) for a in arcs})


# -- parsing -------------------------------------------------------------------


def parse_diagram(text: str) -> LinkDiagram:
    """Parse PD-code text into a diagram with orientations and signs resolved."""
    raw_x, loops = _tokenize(text)
    _validate_occurrences(raw_x, loops)
    dirs = _solve_orientations(raw_x)
    crossings = tuple(
        Crossing(arcs, +1 if dirs[i] else -1) for i, arcs in enumerate(raw_x)
    )
    return LinkDiagram(crossings, loops)


def _tokenize(text: str):
    raw_x = []
    loops = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0]
        pos = 0
        while pos < len(line):
            ch = line[pos]
            if ch.isspace():
                pos += 1
                continue
            kind = ch.upper()
            if kind not in ("X", "O"):
                raise ValueError(f"line {lineno}: unexpected character {ch!r}")
            open_idx = line.find("[", pos)
            close_idx = line.find("]", pos)
            if open_idx != pos + 1 or close_idx < 0:
                raise ValueError(f"line {lineno}: malformed token near {line[pos:pos+12]!r}")
            body = line[open_idx + 1 : close_idx]
            try:
                nums = [int(s) for s in body.split(",")]
            except ValueError as exc:
                raise ValueError(f"line {lineno}: non-integer arc id in {body!r}") from exc
            if kind == "X":
                if len(nums) != 4:
                    raise ValueError(f"line {lineno}: X needs 4 arc ids, got {len(nums)}")
                raw_x.append(tuple(nums))
            else:
                if len(nums) != 1:
                    raise ValueError(f"line {lineno}: O needs 1 arc id, got {len(nums)}")
                loops.append(nums[0])
            pos = close_idx + 1
    return raw_x, tuple(loops)


def _occurrences(raw_x):
    occ = {}
    for ci, arcs in enumerate(raw_x):
        for slot, a in enumerate(arcs):
            occ.setdefault(a, []).append((ci, slot))
    return occ


def _validate_occurrences(raw_x, loops):
    occ = _occurrences(raw_x)
    for l in loops:
        if l in occ:
            raise ValueError(f"arc {l}: used both as a loop and at a crossing")
    if len(set(loops)) != len(loops):
        raise ValueError("duplicate loop arc id")
    for a, slots in occ.items():
        if len(slots) != 2:
            raise ValueError(f"arc {a}: appears {len(slots)} times, expected 2")


def _solve_orientations(raw_x):
    """Determine each crossing's over-strand direction (True = positive).

    Under-strand slots force in/out on their arcs; constraints propagate
    through shared arcs.  Components that never pass under anything are
    genuinely unoriented in PD notation; those get a deterministic default
    (lowest-numbered crossing set positive) before propagation resumes.
    """
    occ = _occurrences(raw_x)
    # slot state: +1 = outgoing arc, -1 = incoming
    state: dict = {}
    dirs: dict = {}
    queue = []

    def set_slot(ci, slot, val):
        key = (ci, slot)
        if key in state:
            if state[key] != val:
                raise ValueError(
                    f"crossing {ci}: inconsistent orientation at arc {raw_x[ci][slot]}"
                )
            return
        state[key] = val
        queue.append(key)
        if slot in (1, 3):
            _apply_over(ci, slot, val)

    def _apply_over(ci, slot, val):
        # slot1 out or slot3 in => positive; otherwise negative
        d = (val > 0) if slot == 1 else (val < 0)
        if ci in dirs:
            if dirs[ci] != d:
                raise ValueError(f"crossing {ci}: conflicting over-strand direction")
            return
        dirs[ci] = d
        # (slot1, slot3) are (out, in) if positive else (in, out)
        want1 = 1 if d else -1
        set_slot(ci, 1, want1)
        set_slot(ci, 3, -want1)

    for ci, arcs in enumerate(raw_x):
        set_slot(ci, 0, -1)
        set_slot(ci, 2, +1)

    while True:
        while queue:
            ci, slot = queue.pop()
            val = state[(ci, slot)]
            a = raw_x[ci][slot]
            for cj, sj in occ[a]:
                if (cj, sj) != (ci, slot):
                    set_slot(cj, sj, -val)
        undecided = [ci for ci in range(len(raw_x)) if ci not in dirs]
        if not undecided:
            break
        _apply_over(undecided[0], 1, +1)  # default: positive

    # final sanity: every arc has one in and one out occurrence
    for a, slots in occ.items():
        vals = sorted(state[key] for key in slots)
        if vals != [-1, 1]:
            raise ValueError(f"arc {a}: orientation chase left it unbalanced")
    return dirs


def mirror_diagram(d: LinkDiagram) -> LinkDiagram:
    """Swap every crossing (X[a,b,c,d] -> X[a,d,c,b]); reverses all signs."""
    out = []
    for x in d.crossings:
        a, b, c, dd = x.arcs
        out.append(f"X[{a},{dd},{c},{b}]")
    out.extend(f"O[{l}]" for l in d.loops)
    return parse_diagram("\n".join(out))


# -- resolutions ---------------------------------------------------------------


@dataclass(frozen=True)
class WebVertex:
    kind: str                 # "in" (indegree 2) or "out" (outdegree 2)
    edges: tuple[int, int]    # marks of the incident edges, slot order preserved
    crossing: int             # index of the singular crossing it came from


@dataclass(frozen=True)
class WebCycle:
    marks: tuple[int, ...]      # edge marks in traversal order from the smallest
    n_vertices: int
    parity: dict                # mark -> 0/1, alternating through vertices

    def __len__(self):
        return len(self.marks)


class Web:
    """A closed web: plain loops plus cycles through bivalent vertices.

    Built by resolve(); keeps provenance to the diagram so p_parity is
    defined.  Edge marks are the smallest diagram arc id on the edge.
    """

    def __init__(self, vertices, loops, arc_to_mark, seifert_parity=None):
        self.vertices = tuple(vertices)
        self.loops = tuple(loops)
        self.arc_to_mark = dict(arc_to_mark)
        self._seifert_parity = seifert_parity
        self.marks = tuple(sorted(set(arc_to_mark.values()) | set(loops)))
        self._cycles = None

    def singular_sites(self):
        """Per singular crossing: (in-vertex edge pair, out-vertex edge pair)."""
        ins = {v.crossing: v.edges for v in self.vertices if v.kind == "in"}
        outs = {v.crossing: v.edges for v in self.vertices if v.kind == "out"}
        return [(ins[c], outs[c]) for c in sorted(ins)]

    def cycles(self):
        if self._cycles is None:
            self._cycles = self._compute_cycles()
        return self._cycles

    def _compute_cycles(self):
        # multigraph on marks; each vertex is an edge between its two marks
        incident: dict = {m: [] for m in self.marks}
        for vi, v in enumerate(self.vertices):
            m1, m2 = v.edges
            incident[m1].append((vi, m2))
            incident[m2].append((vi, m1))
        for m in self.marks:
            deg = len(incident[m])
            if m in self.loops:
                if deg:
                    raise ValueError("loop mark incident to a vertex")
            elif deg != 2:
                raise ValueError(f"edge {m} has {deg} vertex ends, expected 2")
        cycles = []
        used_v = set()
        for start in self.marks:
            if start in self.loops:
                cycles.append(WebCycle((start,), 0, {start: 0}))
                continue
            if any(vi in used_v for vi, _ in incident[start]):
                continue
            order = [start]
            parity = {start: 0}
            cur = start
            vi, nxt = incident[start][0]
            used_v.add(vi)
            steps = 1
            while nxt != start:
                parity[nxt] = steps % 2
                order.append(nxt)
                cur = nxt
                choices = [(vj, m) for vj, m in incident[cur] if vj not in used_v]
                if not choices:
                    raise ValueError("web cycle failed to close")
                vi, nxt = choices[0]
                used_v.add(vi)
                steps += 1
            if steps % 2:
                raise ValueError(f"cycle through edge {start} has odd vertex count")
            cycles.append(WebCycle(tuple(order), steps, parity))
        return cycles

    @property
    def n_cycles(self) -> int:
        return len(self.cycles())

    def p_parity(self) -> int:
        if self._seifert_parity is None:
            raise ValueError("web lacks resolution provenance; p_parity undefined")
        return self._seifert_parity

    def __repr__(self):
        return f"Web({self.n_cycles} cycles, {len(self.vertices)} vertices)"


def resolution_word(d: LinkDiagram, states) -> dict:
    """Build a ResolutionWord from a sequence over {ORIENTED, SINGULAR}."""
    if len(states) != len(d.crossings):
        raise ValueError("resolution word length mismatch")
    for s in states:
        if s not in (ORIENTED, SINGULAR):
            raise ValueError(f"bad resolution state {s!r}")
    return dict(enumerate(states))


def resolve(d: LinkDiagram, word) -> Web:
    """Resolve every crossing, producing a closed web with provenance."""
    if set(word) != set(range(len(d.crossings))):
        raise ValueError("resolution word must cover exactly the diagram's crossings")
    succ = {}
    sing = []
    for ci, x in enumerate(d.crossings):
        if word[ci] == ORIENTED:
            for p, q in x.oriented_joins():
                succ[p] = q
        elif word[ci] == SINGULAR:
            sing.append(ci)
        else:
            raise ValueError(f"bad resolution state {word[ci]!r}")

    terminal_in = {}
    terminal_out = {}
    for ci in sing:
        ins, outs = d.crossings[ci].ins_outs()
        for a in ins:
            terminal_in[a] = ci
        for a in outs:
            terminal_out[a] = ci

    arc_to_mark = {}
    edges_by_start = {}
    for start in sorted(terminal_out):
        path = [start]
        cur = start
        while cur not in terminal_in:
            cur = succ[cur]
            path.append(cur)
        mark = min(path)
        edges_by_start[start] = (mark, path)
        for a in path:
            arc_to_mark[a] = mark

    loops = list(d.loops)
    seen = set(arc_to_mark)
    for a in sorted(set(succ) - seen):
        if a in arc_to_mark:
            continue
        cyc = [a]
        cur = succ[a]
        while cur != a:
            cyc.append(cur)
            cur = succ[cur]
        mark = min(cyc)
        for b in cyc:
            arc_to_mark[b] = mark
        loops.append(mark)

    vertices = []
    for ci in sing:
        ins, outs = d.crossings[ci].ins_outs()
        vertices.append(WebVertex("in", (arc_to_mark[ins[0]], arc_to_mark[ins[1]]), ci))
        vertices.append(WebVertex("out", (arc_to_mark[outs[0]], arc_to_mark[outs[1]]), ci))

    return Web(vertices, sorted(loops), arc_to_mark, d.seifert_circle_count() % 2)
