"""Closed-web homology as a tensor power of the rank-two algebra.

Walking around a state circle of a closed web alternates between the two
edge colors at each wide-edge passage; algebraically a passage trades the
edge variable x for h - x.  Picking one representative mark per circle
therefore rewrites every mark's variable into the representative's:

    x_m  ->  x_rep        (even number of passages from the representative)
    x_m  ->  h - x_rep    (odd number)

after which the homology presentation collapses to one loop relation
x_rep^2 = h x_rep + a per circle, i.e. one tensor factor of
Q[a,h][X]/(X^2 - h X - a) per circle.  The WebAlgebra object packages the
rewriting, the resulting normal forms, the dictionary to and from tensor
elements, and the action of edge variables on them.
"""

from __future__ import annotations

from dataclasses import dataclass

from .frobenius import AElem
from .mfact import QuotientPresentation, VerificationError, closed_web_homology
from .polyring import A, H, Poly, X


@dataclass(frozen=True)
class NormalForm:
    """A polynomial rewritten onto the representative marks, squares reduced."""

    value: Poly

    def is_zero(self) -> bool:
        return self.value.is_zero()


class WebAlgebra:
    """The homology of one closed web, with its tensor-power coordinates."""

    def __init__(self, web, marks=None):
        self.web = web
        self._var_of = (lambda mk: marks[mk]) if marks is not None else (lambda mk: mk)
        cycles = web.cycles()
        self.reps = tuple(min(c.marks) for c in cycles)
        self.slot_of = {}        # mark -> tensor slot
        self.parity_of = {}      # mark -> passages mod 2 from the representative
        for slot, cyc in enumerate(cycles):
            rep_parity = cyc.parity[min(cyc.marks)]
            for mk in cyc.marks:
                self.slot_of[mk] = slot
                self.parity_of[mk] = (cyc.parity[mk] + rep_parity) % 2
        self.presentation: QuotientPresentation = closed_web_homology(web, marks)
        if len(self.presentation.variables) != len(self.reps):
            raise VerificationError(
                "presentation variables do not match the web's circles")
        for row in self.presentation.rows:
            gen = row.a if row.b.is_zero() else row.b
            if not self.normal_form(gen).is_zero():
                raise VerificationError(
                    "a presentation relation survives the rewriting; "
                    "the tensor identification is not well defined")

    # -- rewriting -----------------------------------------------------------

    def _rewrite_bindings(self) -> dict:
        out = {}
        for mk in self.web.marks:
            rep = X(self._var_of(self.reps[self.slot_of[mk]]))
            image = rep if self.parity_of[mk] == 0 else H - rep
            v = self._var_of(mk)
            if image != X(v):
                out[v] = image
        return out

    def normal_form(self, p: Poly) -> NormalForm:
        q = p.substitute(self._rewrite_bindings())
        for rep in self.reps:
            v = self._var_of(rep)
            while q.degree_in(v) >= 2:
                e = q.degree_in(v)
                c = q.coefficient_of(v, e)
                q = q - c * X(v) ** e + c * X(v) ** (e - 2) * (H * X(v) + A)
        return NormalForm(q)

    # -- the tensor dictionary -------------------------------------------------

    def to_tensor(self, p) -> AElem:
        nf = p if isinstance(p, NormalForm) else self.normal_form(p)
        k = len(self.reps)
        rep_vars = [self._var_of(r) for r in self.reps]
        out = AElem.zero(k)
        remaining = nf.value
        for bits in _bit_words(k):
            mono = Poly.const(1)
            for v, b in zip(rep_vars, bits):
                if b:
                    mono = mono * X(v)
            coeff = remaining
            for v, b in zip(rep_vars, bits):
                coeff = coeff.coefficient_of(v, 1 if b else 0)
            if coeff.is_zero():
                continue
            if coeff.variables() - {"a", "h"}:
                raise VerificationError("normal form has a stray edge variable")
            out = out + AElem(k, {bits: coeff})
            remaining = remaining - coeff * mono
        if not remaining.is_zero():
            raise VerificationError("normal form did not resolve onto the basis")
        return out

    def from_tensor(self, elem: AElem) -> Poly:
        if elem.k != len(self.reps):
            raise ValueError("tensor element has the wrong number of slots")
        out = Poly.zero()
        for bits, coeff in elem.terms.items():
            term = coeff
            for rep, b in zip(self.reps, bits):
                if b:
                    term = term * X(self._var_of(rep))
            out = out + term
        return out

    def act(self, mark: int, elem: AElem) -> AElem:
        """Multiply by the edge variable at `mark`, in tensor coordinates."""
        if mark not in self.slot_of:
            raise ValueError(f"mark {mark} is not an edge of this web")
        return self.to_tensor(X(self._var_of(mark)) * self.from_tensor(elem))

    def degree_of(self, elem: AElem):
        """Graded degree of a homology element, shift included."""
        d = elem.qdegree()
        if d is None:
            return None
        return d + len(self.reps) + self.presentation.shift


def _bit_words(k: int):
    return [tuple((val >> i) & 1 for i in range(k)) for val in range(1 << k)]


def build_algebra(web, marks=None) -> WebAlgebra:
    """Construct and sanity-check the tensor identification for a closed web."""
    wa = WebAlgebra(web, marks)
    for v in web.vertices:
        m1, m2 = v.edges
        x1, x2 = X(wa._var_of(m1)), X(wa._var_of(m2))
        if not wa.normal_form(x1 + x2 - H).is_zero():
            raise VerificationError(f"edge variables at {v} do not sum to h")
        if not wa.normal_form(x1 * x2 + A).is_zero():
            raise VerificationError(f"edge variables at {v} do not multiply to -a")
    return wa
