"""The rank-two Frobenius algebra A = Q[a,h][X]/(X^2 - h X - a).

Elements of tensor powers A^(x k) are stored as dicts mapping bit tuples to
coefficients in Q[a,h]; bit 1 marks an X factor, bit 0 the unit.  Gradings:
deg 1 = -1, deg X = +1, deg h = 2, deg a = 4, so merge and split have
degree +1, the unit and counit degree -1, and a dot (multiplication by X)
degree +2 -- each elementary cobordism piece contributes minus its Euler
characteristic.
"""

from __future__ import annotations

from fractions import Fraction

from .polyring import Poly

_A = Poly.var("a")
_H = Poly.var("h")
_ONE = Poly.const(1)


class AElem:
    """An element of A^(x k); k may be zero (scalars)."""

    __slots__ = ("k", "terms")

    def __init__(self, k: int, terms=None):
        self.k = k
        self.terms = {}
        if terms:
            for bits, coeff in terms.items():
                self._add(bits, coeff)

    def _add(self, bits, coeff):
        if len(bits) != self.k:
            raise ValueError("tensor length mismatch")
        if isinstance(coeff, (int, Fraction)):
            coeff = Poly.const(coeff)
        cur = self.terms.get(bits)
        new = coeff if cur is None else cur + coeff
        if new.is_zero():
            self.terms.pop(bits, None)
        else:
            self.terms[bits] = new

    @classmethod
    def basis(cls, bits) -> "AElem":
        return cls(len(bits), {tuple(bits): _ONE})

    @classmethod
    def zero(cls, k: int) -> "AElem":
        return cls(k)

    def __add__(self, other):
        if self.k != other.k:
            raise ValueError("tensor length mismatch")
        out = AElem(self.k, self.terms)
        for bits, c in other.terms.items():
            out._add(bits, c)
        return out

    def __sub__(self, other):
        return self + other.scale(Poly.const(-1))

    def scale(self, c) -> "AElem":
        if isinstance(c, (int, Fraction)):
            c = Poly.const(c)
        out = AElem(self.k)
        for bits, coeff in self.terms.items():
            out._add(bits, coeff * c)
        return out

    def __eq__(self, other):
        return isinstance(other, AElem) and self.k == other.k and self.terms == other.terms

    def __hash__(self):
        return hash((self.k, frozenset((b, c) for b, c in self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def qdegree(self):
        """Common degree of all terms, or None; 0 for the zero element."""
        degs = set()
        for bits, coeff in self.terms.items():
            d = coeff.homogeneous_degree()
            if d is None:
                return None
            degs.add(d + sum(1 if b else -1 for b in bits))
        if not degs:
            return 0
        return degs.pop() if len(degs) == 1 else None

    def __repr__(self):
        if not self.terms:
            return "AElem(0)"
        bits_str = lambda bits: "".join("X" if b else "1" for b in bits) or "()"
        parts = [f"({coeff})*{bits_str(bits)}" for bits, coeff in sorted(self.terms.items())]
        return " + ".join(parts)


def _unit_terms():
    return {(0,): _ONE}


def iota() -> AElem:
    return AElem(1, _unit_terms())


def m(x: AElem, i: int, j: int) -> AElem:
    """Multiply tensor slots i and j; the product lands in slot min(i, j)."""
    if i == j:
        raise ValueError("merge needs two distinct slots")
    lo, hi = min(i, j), max(i, j)
    out = AElem(x.k - 1)
    for bits, coeff in x.terms.items():
        rest = bits[:lo] + bits[lo + 1 : hi] + bits[hi + 1 :]
        b1, b2 = bits[lo], bits[hi]
        if b1 + b2 < 2:
            out._add(rest[:lo] + (b1 | b2,) + rest[lo:], coeff)
        else:  # X*X = h X + a
            out._add(rest[:lo] + (1,) + rest[lo:], coeff * _H)
            out._add(rest[:lo] + (0,) + rest[lo:], coeff * _A)
    return out


def delta(x: AElem, i: int) -> AElem:
    """Comultiply slot i; the two new factors sit at slots i, i+1."""
    out = AElem(x.k + 1)
    for bits, coeff in x.terms.items():
        pre, b, post = bits[:i], bits[i], bits[i + 1 :]
        if b == 0:  # 1 -> 1 x X + X x 1 - h 1 x 1
            out._add(pre + (0, 1) + post, coeff)
            out._add(pre + (1, 0) + post, coeff)
            out._add(pre + (0, 0) + post, coeff * (-_H))
        else:  # X -> X x X + a 1 x 1
            out._add(pre + (1, 1) + post, coeff)
            out._add(pre + (0, 0) + post, coeff * _A)
    return out


def eps(x: AElem, i: int) -> AElem:
    """Counit on slot i: kills 1, sends X to 1."""
    out = AElem(x.k - 1)
    for bits, coeff in x.terms.items():
        if bits[i]:
            out._add(bits[:i] + bits[i + 1 :], coeff)
    return out


def cup(x: AElem, i: int) -> AElem:
    """Insert a unit factor at slot i."""
    out = AElem(x.k + 1)
    for bits, coeff in x.terms.items():
        out._add(bits[:i] + (0,) + bits[i:], coeff)
    return out


def dot(x: AElem, i: int) -> AElem:
    """Multiply slot i by X."""
    out = AElem(x.k)
    for bits, coeff in x.terms.items():
        if bits[i] == 0:
            out._add(bits[:i] + (1,) + bits[i + 1 :], coeff)
        else:
            out._add(bits, coeff * _H)
            out._add(bits[:i] + (0,) + bits[i + 1 :], coeff * _A)
    return out


def permute(x: AElem, perm) -> AElem:
    """Reorder slots: new slot k carries old slot perm[k]."""
    if sorted(perm) != list(range(x.k)):
        raise ValueError("not a permutation of the slots")
    out = AElem(x.k)
    for bits, coeff in x.terms.items():
        out._add(tuple(bits[p] for p in perm), coeff)
    return out


_PIECES = {
    "merge": (m, 1),
    "split": (delta, 1),
    "cup": (cup, -1),
    "cap": (eps, -1),
    "dot": (dot, 2),
    "perm": (permute, 0),
}


class CobordismMap:
    """A composite of elementary cobordism pieces with an overall scalar.

    ops is a sequence of ("merge", i, j) / ("split", i) / ("cup", i) /
    ("cap", i) / ("dot", i) / ("perm", tuple) entries applied left to right.
    """

    __slots__ = ("n_in", "n_out", "ops", "scalar")

    def __init__(self, n_in: int, ops, scalar=1):
        self.n_in = n_in
        self.ops = tuple(ops)
        self.scalar = scalar
        k = n_in
        for op in self.ops:
            name = op[0]
            if name not in _PIECES:
                raise ValueError(f"unknown cobordism piece {name!r}")
            if name == "merge":
                k -= 1
            elif name in ("split", "cup"):
                k += 1
            elif name == "cap":
                k -= 1
        self.n_out = k

    @property
    def degree(self) -> int:
        return sum(_PIECES[op[0]][1] for op in self.ops)

    def apply(self, x: AElem) -> AElem:
        if x.k != self.n_in:
            raise ValueError("tensor length mismatch")
        for op in self.ops:
            fn = _PIECES[op[0]][0]
            x = fn(x, *op[1:])
        return x.scale(self.scalar) if self.scalar != 1 else x

    def scaled(self, s) -> "CobordismMap":
        return CobordismMap(self.n_in, self.ops, self.scalar * s)

    def __repr__(self):
        return f"CobordismMap({self.n_in}->{self.n_out}, deg {self.degree}, x{self.scalar})"
