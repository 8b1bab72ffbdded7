"""Exact multivariate polynomial arithmetic over Q.

Polynomials live in Q[a, h, x1, ..., xn].  Every coefficient is a
`fractions.Fraction`, so all arithmetic is exact.  The quantum grading used
throughout the package is

    deg a = 4,   deg h = 2,   deg x_i = 2.

Variables are addressed as the strings "a" and "h" and as positive integers
i for x_i.  Exponent keys are dense tuples (e_a, e_h, e_x1, ..., e_xn) with a
per-polynomial variable universe that widens automatically when two operands
disagree.

Also provided: Laurent polynomials in a single variable q with integer
coefficients, used for graded ranks and bracket evaluations.
"""

from __future__ import annotations

from fractions import Fraction

Var = "str | int"  # "a", "h", or i >= 1 for x_i

_ZERO = Fraction(0)


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"not an exact rational: {c!r}")


class Poly:
    """Sparse polynomial in Q[a, h, x1..xn] with exact rational coefficients."""

    __slots__ = ("nx", "terms")

    def __init__(self, nx: int, terms: dict):
        # terms maps exponent tuples (len nx + 2) to nonzero Fractions.
        self.nx = nx
        self.terms = terms

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(nx: int = 0) -> "Poly":
        return Poly(nx, {})

    @staticmethod
    def const(c, nx: int = 0) -> "Poly":
        c = _as_fraction(c)
        if c == 0:
            return Poly(nx, {})
        return Poly(nx, {(0,) * (nx + 2): c})

    @staticmethod
    def var(v) -> "Poly":
        if v == "a":
            return Poly(0, {(1, 0): Fraction(1)})
        if v == "h":
            return Poly(0, {(0, 1): Fraction(1)})
        if isinstance(v, int) and v >= 1:
            key = (0, 0) + (0,) * (v - 1) + (1,)
            return Poly(v, {key: Fraction(1)})
        raise ValueError(f"unknown variable {v!r}")

    # -- internals ---------------------------------------------------------

    def _widened(self, nx: int) -> "Poly":
        if nx == self.nx:
            return self
        pad = (0,) * (nx - self.nx)
        return Poly(nx, {k + pad: c for k, c in self.terms.items()})

    @staticmethod
    def _align(p: "Poly", q: "Poly"):
        nx = max(p.nx, q.nx)
        return p._widened(nx), q._widened(nx), nx

    # -- ring operations ---------------------------------------------------

    def __add__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other, self.nx)
        p, q, nx = Poly._align(self, other)
        terms = dict(p.terms)
        for k, c in q.terms.items():
            s = terms.get(k, _ZERO) + c
            if s:
                terms[k] = s
            else:
                terms.pop(k, None)
        return Poly(nx, terms)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(self.nx, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other, self.nx)
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        return (-self) + other

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            c = _as_fraction(other)
            if c == 0:
                return Poly(self.nx, {})
            return Poly(self.nx, {k: v * c for k, v in self.terms.items()})
        p, q, nx = Poly._align(self, other)
        terms: dict = {}
        for k1, c1 in p.terms.items():
            for k2, c2 in q.terms.items():
                k = tuple(e1 + e2 for e1, e2 in zip(k1, k2))
                s = terms.get(k, _ZERO) + c1 * c2
                if s:
                    terms[k] = s
                else:
                    terms.pop(k, None)
        return Poly(nx, terms)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly.const(1, self.nx)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other, self.nx)
        if not isinstance(other, Poly):
            return NotImplemented
        p, q, _ = Poly._align(self, other)
        return p.terms == q.terms

    def __hash__(self):
        # canonical: strip trailing zero exponents so widening is hash-stable
        items = []
        for k, c in self.terms.items():
            j = len(k)
            while j > 2 and k[j - 1] == 0:
                j -= 1
            items.append((k[:j], c))
        return hash(frozenset(items))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    # -- grading -----------------------------------------------------------

    @staticmethod
    def _grading(key) -> int:
        return 4 * key[0] + 2 * key[1] + 2 * sum(key[2:])

    def homogeneous_degree(self):
        """Quantum degree if homogeneous (0 for the zero poly), else None."""
        if not self.terms:
            return 0
        degs = {Poly._grading(k) for k in self.terms}
        if len(degs) == 1:
            return degs.pop()
        return None

    def max_degree(self) -> int:
        if not self.terms:
            return 0
        return max(Poly._grading(k) for k in self.terms)

    def degree_in(self, v) -> int:
        """Highest exponent of a single variable."""
        idx = _var_index(v)
        return max((k[idx] for k in self.terms if len(k) > idx), default=0)

    def variables(self) -> set:
        """The variables that actually occur (as "a"/"h"/int labels)."""
        out = set()
        for k in self.terms:
            if k[0]:
                out.add("a")
            if k[1]:
                out.add("h")
            for i, e in enumerate(k[2:], start=1):
                if e:
                    out.add(i)
        return out

    # -- substitution and evaluation ----------------------------------------

    def substitute(self, bindings: dict) -> "Poly":
        """Simultaneous substitution of polynomials for variables.

        Bindings map variable labels to Poly values.  A non-identity binding
        whose value mentions any bound variable is rejected (the result of a
        cyclic simultaneous substitution would be ambiguous to iterate).
        """
        if not bindings:
            return self
        bound = set(bindings)
        vals = {}
        for v, val in bindings.items():
            if isinstance(val, (int, Fraction)):
                val = Poly.const(val)
            if val != Poly.var(v):
                clash = val.variables() & bound
                if clash:
                    raise ValueError(f"cyclic substitution through {sorted(map(str, clash))}")
            vals[v] = val
        nx = max([self.nx] + [p.nx for p in vals.values()])
        out = Poly.zero(nx)
        for key, coeff in self.terms.items():
            term = Poly.const(coeff, nx)
            for idx, e in enumerate(key):
                if not e:
                    continue
                v = _label_of_index(idx)
                if v in vals:
                    term = term * (vals[v] ** e)
                else:
                    term = term * (Poly.var(v) ** e)
            out = out + term
        return out

    def evaluate(self, point: dict) -> Fraction:
        """Evaluate with every occurring variable bound to a rational."""
        total = Fraction(0)
        for key, coeff in self.terms.items():
            val = coeff
            for idx, e in enumerate(key):
                if not e:
                    continue
                v = _label_of_index(idx)
                if v not in point:
                    raise ValueError(f"unbound variable {v!r} in evaluate")
                val *= _as_fraction(point[v]) ** e
            total += val
        return total

    # -- exact division ------------------------------------------------------

    def divide_exact(self, d: "Poly") -> "Poly":
        """Return q with self = q*d, or raise ValueError if d does not divide."""
        if isinstance(d, (int, Fraction)):
            d = Poly.const(d)
        if d.is_zero():
            raise ValueError("division by zero polynomial")
        p, d, nx = Poly._align(self, d)
        dlead = max(d.terms, key=_order_key)
        dc = d.terms[dlead]
        q_terms: dict = {}
        rem = dict(p.terms)
        while rem:
            lead = max(rem, key=_order_key)
            qk = tuple(a - b for a, b in zip(lead, dlead))
            if any(e < 0 for e in qk):
                raise ValueError("not exactly divisible")
            qc = rem[lead] / dc
            q_terms[qk] = q_terms.get(qk, _ZERO) + qc
            for k2, c2 in d.terms.items():
                k = tuple(e1 + e2 for e1, e2 in zip(qk, k2))
                s = rem.get(k, _ZERO) - qc * c2
                if s:
                    rem[k] = s
                else:
                    rem.pop(k, None)
        return Poly(nx, {k: c for k, c in q_terms.items() if c})

    # -- helpers -------------------------------------------------------------

    def constant_value(self):
        """The rational value if the polynomial is constant, else None."""
        if not self.terms:
            return Fraction(0)
        if len(self.terms) == 1:
            (key, c), = self.terms.items()
            if not any(key):
                return c
        return None

    def coefficient_of(self, v, power: int = 1) -> "Poly":
        """Coefficient polynomial of v**power (collecting in the variable v)."""
        idx = _var_index(v)
        terms = {}
        for k, c in self.terms.items():
            e = k[idx] if len(k) > idx else 0
            if e == power:
                kk = list(k) if len(k) > idx else list(k) + [0] * (idx + 1 - len(k))
                kk[idx] = 0
                terms[tuple(kk)] = c
        nx = max(self.nx, idx - 1 if idx >= 2 else 0)
        return Poly(nx, terms)._widened(nx)

    def __str__(self) -> str:
        return poly_str(self)

    __repr__ = __str__


def _var_index(v) -> int:
    if v == "a":
        return 0
    if v == "h":
        return 1
    if isinstance(v, int) and v >= 1:
        return v + 1
    raise ValueError(f"unknown variable {v!r}")


def _label_of_index(idx: int):
    if idx == 0:
        return "a"
    if idx == 1:
        return "h"
    return idx - 1


def _order_key(key):
    # graded lexicographic, reading the highest x variable first, with
    # a < h < x1 < x2 < ...
    return (Poly._grading(key), tuple(reversed(key)))


def _var_name(idx: int) -> str:
    if idx == 0:
        return "a"
    if idx == 1:
        return "h"
    return f"x{idx - 1}"


def poly_str(p: Poly) -> str:
    """Canonical text form: graded-lex term order, leading term first."""
    if not p.terms:
        return "0"
    pieces = []
    for key in sorted(p.terms, key=_order_key, reverse=True):
        c = p.terms[key]
        factors = []
        for idx, e in enumerate(key):
            if not e:
                continue
            name = _var_name(idx)
            factors.append(name if e == 1 else f"{name}^{e}")
        mono = "*".join(factors)
        if not mono:
            body = str(abs(c))
        elif abs(c) == 1:
            body = mono
        else:
            body = f"{abs(c)}*{mono}"
        sign = "-" if c < 0 else "+"
        pieces.append((sign, body))
    first_sign, first_body = pieces[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


# convenience handles used all over the package
A = Poly.var("a")
H = Poly.var("h")


def X(i: int) -> Poly:
    return Poly.var(i)


def potential(x: Poly) -> Poly:
    """The two-parameter potential p(x) = x^3 - (3/2) h x^2 - 3 a x."""
    return x ** 3 - Fraction(3, 2) * H * x ** 2 - 3 * A * x


def frob_relation(x: Poly) -> Poly:
    """x^2 - h x - a, one third of the derivative of the potential."""
    return x ** 2 - H * x - A


class LaurentPoly:
    """Laurent polynomial in q with integer coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms = {d: c for d, c in (terms or {}).items() if c}

    @staticmethod
    def zero() -> "LaurentPoly":
        return LaurentPoly({})

    @staticmethod
    def monomial(deg: int, coeff: int = 1) -> "LaurentPoly":
        return LaurentPoly({deg: coeff})

    @staticmethod
    def circle() -> "LaurentPoly":
        """q + q^-1, the graded rank of the base Frobenius algebra."""
        return LaurentPoly({1: 1, -1: 1})

    def __add__(self, other) -> "LaurentPoly":
        terms = dict(self.terms)
        for d, c in other.terms.items():
            s = terms.get(d, 0) + c
            if s:
                terms[d] = s
            else:
                terms.pop(d, None)
        return LaurentPoly(terms)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({d: -c for d, c in self.terms.items()})

    def __sub__(self, other) -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other) -> "LaurentPoly":
        if isinstance(other, int):
            return LaurentPoly({d: c * other for d, c in self.terms.items()})
        terms: dict = {}
        for d1, c1 in self.terms.items():
            for d2, c2 in other.terms.items():
                d = d1 + d2
                s = terms.get(d, 0) + c1 * c2
                if s:
                    terms[d] = s
                else:
                    terms.pop(d, None)
        return LaurentPoly(terms)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            raise ValueError("negative power")
        out = LaurentPoly({0: 1})
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def shift(self, r: int) -> "LaurentPoly":
        """Multiply by q^r (the {r} grading shift on ranks)."""
        return LaurentPoly({d + r: c for d, c in self.terms.items()})

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPoly({0: other})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def evaluate(self, q: Fraction) -> Fraction:
        q = _as_fraction(q)
        return sum((c * q ** d for d, c in self.terms.items()), Fraction(0))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for d in sorted(self.terms, reverse=True):
            c = self.terms[d]
            if d == 0:
                body = str(abs(c))
            else:
                qpow = "q" if d == 1 else f"q^{d}"
                body = qpow if abs(c) == 1 else f"{abs(c)}*{qpow}"
            pieces.append(("-" if c < 0 else "+", body))
        out = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    __repr__ = __str__
