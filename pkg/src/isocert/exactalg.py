"""Exact rational arithmetic and sparse multivariate polynomial algebra.

Every symbolic check in this package runs on the types defined here.

Representation:

  ExactRational           = fractions.Fraction (arbitrary precision, always
                            normalized with positive denominator).
  SymbolTable             = fixed, ordered tuple of symbol names.  The order
                            is frozen at construction and induces the graded
                            lexicographic monomial order used everywhere.
  MultiPoly.terms         = dict mapping exponent tuples (one entry per
                            symbol) to nonzero Fraction coefficients.  The
                            zero polynomial is the empty dict.
  RatFn                   = num / den in normal form: gcd(num, den) = 1 and
                            den is monic under the graded lex order, so two
                            equal rational functions are structurally equal.

Index conventions for the curvature problem are handled at symbol-interning
time: second-derivative symbols h_ijk are fully symmetric, so `SymbolTable.h`
sorts the indices before building the name.  No rewrite rules are needed
downstream.

Polynomial gcd is computed over the integers (after clearing denominators)
with content / primitive-part extraction and a subresultant remainder
sequence in the most convenient variable.  This keeps coefficient growth
tame without any floating-point shortcuts.
"""

from __future__ import annotations

import heapq
import math
from fractions import Fraction
from operator import add as _op_add, neg as _op_neg, sub as _op_sub
from typing import Iterable, Mapping, Sequence, Union

ExactRational = Fraction

Scalar = Union[int, Fraction]


class PoleError(ZeroDivisionError):
    """Raised when a rational function is evaluated at a zero of its denominator."""

    def __init__(self, factor: str):
        super().__init__(f"pole: denominator {factor} vanishes at the given point")
        self.factor = factor


class SymbolMismatchError(ValueError):
    """Raised when operands were built over different symbol tables."""


class SymbolTable:
    """Ordered, immutable set of symbol names.

    The position of a name in the table is its index in every exponent
    tuple, so all values built over one table are interoperable and values
    from different tables never mix silently.
    """

    __slots__ = ("names", "_index")

    def __init__(self, names: Iterable[str]):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError("duplicate symbol names")
        self.names = names
        self._index = {n: i for i, n in enumerate(names)}

    def __len__(self) -> int:
        return len(self.names)

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown symbol {name!r}") from None

    def __eq__(self, other) -> bool:
        return isinstance(other, SymbolTable) and self.names == other.names

    def __hash__(self) -> int:
        return hash(self.names)

    def __repr__(self) -> str:
        return f"SymbolTable({', '.join(self.names)})"

    @staticmethod
    def h_name(i: int, j: int, k: int) -> str:
        """Canonical name of the symmetric second-derivative symbol h_ijk."""
        a, b, c = sorted((i, j, k))
        return f"h{a}{b}{c}"

    @staticmethod
    def r_name(i: int, j: int) -> str:
        """Canonical name of the sectional-curvature symbol R_ijij, i < j."""
        a, b = sorted((i, j))
        return f"R{a}{b}{a}{b}"

    @classmethod
    def geometry(cls, extra: Sequence[str] = ()) -> "SymbolTable":
        """Standard table: l1..l4, the 20 h_ijk, the 6 R_ijij, then extras."""
        names = [f"l{i}" for i in range(1, 5)]
        names += [
            cls.h_name(i, j, k)
            for i in range(1, 5)
            for j in range(i, 5)
            for k in range(j, 5)
        ]
        names += [cls.r_name(i, j) for i in range(1, 5) for j in range(i + 1, 5)]
        names += list(extra)
        return cls(names)


def _as_fraction(x: Scalar) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected int or Fraction, got {type(x).__name__}")


class MultiPoly:
    """Sparse multivariate polynomial with exact rational coefficients."""

    __slots__ = ("table", "terms")

    def __init__(self, table: SymbolTable, terms: Mapping[tuple, Fraction] | None = None):
        self.table = table
        self.terms = dict(terms) if terms else {}

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, table: SymbolTable) -> "MultiPoly":
        return cls(table)

    @classmethod
    def const(cls, table: SymbolTable, value: Scalar) -> "MultiPoly":
        value = _as_fraction(value)
        if value == 0:
            return cls(table)
        return cls(table, {(0,) * len(table): value})

    @classmethod
    def var(cls, table: SymbolTable, name: str) -> "MultiPoly":
        exp = [0] * len(table)
        exp[table.index(name)] = 1
        return cls(table, {tuple(exp): Fraction(1)})

    # -- bookkeeping ---------------------------------------------------

    def _check(self, other: "MultiPoly") -> None:
        if self.table is not other.table and self.table != other.table:
            raise SymbolMismatchError("operands use different symbol tables")

    def is_zero(self) -> bool:
        return not self.terms

    def copy(self) -> "MultiPoly":
        return MultiPoly(self.table, self.terms)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def degree_in(self, name: str) -> int:
        i = self.table.index(name)
        return max((e[i] for e in self.terms), default=0)

    def symbols_used(self) -> set[str]:
        used = set()
        for exp in self.terms:
            for i, e in enumerate(exp):
                if e:
                    used.add(self.table.names[i])
        return used

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.const(self.table, other)
        if isinstance(other, RatFn):
            return RatFn.from_poly(self) + other
        if not isinstance(other, MultiPoly):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m)
            if s is None:
                out[m] = c
            else:
                s = s + c
                if s:
                    out[m] = s
                else:
                    del out[m]
        return MultiPoly(self.table, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.table, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.const(self.table, other)
        if isinstance(other, RatFn):
            return RatFn.from_poly(self) - other
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            q = _as_fraction(other)
            if q == 0:
                return MultiPoly(self.table)
            return MultiPoly(self.table, {m: c * q for m, c in self.terms.items()})
        if isinstance(other, RatFn):
            return RatFn.from_poly(self) * other
        if not isinstance(other, MultiPoly):
            return NotImplemented
        self._check(other)
        out: dict[tuple, Fraction] = {}
        # Iterate the smaller operand outside; map(add, ...) runs at C speed.
        a_terms, b_terms = self.terms, other.terms
        if len(a_terms) > len(b_terms):
            a_terms, b_terms = b_terms, a_terms
        for m1, c1 in a_terms.items():
            for m2, c2 in b_terms.items():
                m = tuple(map(_op_add, m1, m2))
                s = out.get(m)
                if s is None:
                    out[m] = c1 * c2
                else:
                    s = s + c1 * c2
                    if s:
                        out[m] = s
                    else:
                        del out[m]
        return MultiPoly(self.table, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return RatFn.from_poly(self) ** n
        out = MultiPoly.const(self.table, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            q = _as_fraction(other)
            if q == 0:
                raise ZeroDivisionError("division by zero scalar")
            return self * (Fraction(1) / q)
        if isinstance(other, MultiPoly):
            return ratfn_reduce(self, other)
        if isinstance(other, RatFn):
            return RatFn.from_poly(self) / other
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return ratfn_reduce(MultiPoly.const(self.table, other), self)
        return NotImplemented

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.const(self.table, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.table == other.table and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.table, tuple(sorted(self.terms.items()))))

    # -- canonical order ------------------------------------------------

    def sorted_terms(self) -> list[tuple[tuple, Fraction]]:
        """Terms in descending graded lexicographic order."""
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def leading(self) -> tuple[tuple, Fraction]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        m = max(self.terms, key=lambda e: (sum(e), e))
        return m, self.terms[m]

    # -- calculus / evaluation -------------------------------------------

    def derivative(self, name: str) -> "MultiPoly":
        i = self.table.index(name)
        out: dict[tuple, Fraction] = {}
        for m, c in self.terms.items():
            e = m[i]
            if not e:
                continue
            m2 = m[:i] + (e - 1,) + m[i + 1 :]
            s = out.get(m2)
            v = c * e
            out[m2] = s + v if s is not None else v
            if not out[m2]:
                del out[m2]
        return MultiPoly(self.table, out)

    def evaluate(self, point: Mapping[str, Scalar]) -> Fraction:
        """Exact value at a fully bound rational point."""
        vals = []
        for name in self.symbols_used():
            if name not in point:
                raise KeyError(f"unbound symbol {name!r}")
        by_index = {self.table.index(n): _as_fraction(v) for n, v in point.items() if n in self.table}
        total = Fraction(0)
        for m, c in self.terms.items():
            v = c
            for i, e in enumerate(m):
                if e:
                    v *= by_index[i] ** e
            total += v
        return total

    def evaluate_partial(self, point: Mapping[str, Scalar]) -> "MultiPoly":
        """Substitute rational values for a subset of symbols."""
        by_index = {self.table.index(n): _as_fraction(v) for n, v in point.items()}
        out: dict[tuple, Fraction] = {}
        for m, c in self.terms.items():
            v = c
            m2 = list(m)
            for i, val in by_index.items():
                e = m[i]
                if e:
                    v *= val ** e
                    m2[i] = 0
            if not v:
                continue
            key = tuple(m2)
            s = out.get(key)
            out[key] = s + v if s is not None else v
            if not out[key]:
                del out[key]
        return MultiPoly(self.table, out)

    def substitute(self, mapping: Mapping[str, "RatFn"]) -> "RatFn":
        """Replace symbols by rational functions; exact result.

        Substitution targets must not themselves involve the replaced
        symbols (true for every use in this package).
        """
        result = RatFn.from_poly(self)
        for name, repl in mapping.items():
            if name not in self.table:
                continue
            i = self.table.index(name)
            poly = result.num
            den = result.den
            by_power: dict[int, dict[tuple, Fraction]] = {}
            for m, c in poly.terms.items():
                e = m[i]
                m2 = m[:i] + (0,) + m[i + 1 :]
                by_power.setdefault(e, {})[m2] = c
            if list(by_power) == [0] or not by_power:
                continue
            acc = RatFn.zero(self.table)
            for e, terms in by_power.items():
                piece = RatFn.from_poly(MultiPoly(self.table, terms))
                acc = acc + piece * repl ** e
            result = acc / RatFn.from_poly(den)
        return result

    # -- display ---------------------------------------------------------

    def __repr__(self) -> str:
        return f"MultiPoly({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            factors = []
            for i, e in enumerate(m):
                if e == 1:
                    factors.append(self.table.names[i])
                elif e > 1:
                    factors.append(f"{self.table.names[i]}^{e}")
            mono = "*".join(factors)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{c}*{mono}")
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out


# -- polynomial gcd ----------------------------------------------------------

def _int_content_and_primitive(p: MultiPoly) -> tuple[Fraction, dict[tuple, int]]:
    """Scale to integer coefficients with content 1; returns (scale, int terms)."""
    if not p.terms:
        return Fraction(0), {}
    den_lcm = 1
    for c in p.terms.values():
        den_lcm = den_lcm * c.denominator // math.gcd(den_lcm, c.denominator)
    num_gcd = 0
    ints = {}
    for m, c in p.terms.items():
        v = c.numerator * (den_lcm // c.denominator)
        ints[m] = v
        num_gcd = math.gcd(num_gcd, abs(v))
    lead = max(ints, key=lambda e: (sum(e), e))
    sign = 1 if ints[lead] > 0 else -1
    scale = Fraction(sign * num_gcd, den_lcm)
    ints = {m: v // (sign * num_gcd) for m, v in ints.items()}
    return scale, ints


def _primitive_part(p: MultiPoly) -> MultiPoly:
    """Integer-primitive representative with positive leading coefficient."""
    if p.is_zero():
        return p
    _, ints = _int_content_and_primitive(p)
    return MultiPoly(p.table, {m: Fraction(v) for m, v in ints.items()})


def divexact(a: MultiPoly, b: MultiPoly) -> MultiPoly | None:
    """Exact quotient a / b, or None when b does not divide a.

    Leading monomials of the shrinking remainder come from a lazy max-heap
    (descending graded lex), so each elimination step costs O(|b| log n)
    instead of a full scan.
    """
    if b.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    if a.is_zero():
        return MultiPoly(a.table)
    a._check(b)
    lead_b, lc_b = b.leading()
    other_b = [(m, c) for m, c in b.terms.items() if m != lead_b]
    rem = dict(a.terms)
    heap = [(-sum(m), tuple(map(_op_neg, m)), m) for m in rem]
    heapq.heapify(heap)
    q: dict[tuple, Fraction] = {}
    while heap:
        _, _, m = heapq.heappop(heap)
        c = rem.pop(m, None)
        if c is None:
            continue
        qm = tuple(map(_op_sub, m, lead_b))
        if min(qm) < 0:
            return None
        coeff = c / lc_b
        q[qm] = coeff
        for mb, cb in other_b:
            key = tuple(map(_op_add, qm, mb))
            prev = rem.get(key)
            new = (prev if prev is not None else 0) - coeff * cb
            if new:
                rem[key] = new
                if prev is None:
                    heapq.heappush(heap, (-sum(key), tuple(map(_op_neg, key)), key))
            elif prev is not None:
                del rem[key]
    return MultiPoly(a.table, q) if not rem else None


def _to_univar(p: MultiPoly, i: int) -> list[MultiPoly]:
    """Dense coefficient list of p viewed as a polynomial in symbol i."""
    deg = max((m[i] for m in p.terms), default=0)
    coeffs = [dict() for _ in range(deg + 1)]
    for m, c in p.terms.items():
        m2 = m[:i] + (0,) + m[i + 1 :]
        coeffs[m[i]][m2] = c
    return [MultiPoly(p.table, d) for d in coeffs]


def _from_univar(coeffs: Sequence[MultiPoly], i: int, table: SymbolTable) -> MultiPoly:
    out: dict[tuple, Fraction] = {}
    for e, poly in enumerate(coeffs):
        for m, c in poly.terms.items():
            key = m[:i] + (e,) + m[i + 1 :]
            out[key] = c
    return MultiPoly(table, out)


def _uv_mul_scalar(coeffs: list[MultiPoly], s: MultiPoly) -> list[MultiPoly]:
    return [c * s for c in coeffs]


def _uv_pseudo_rem(a: list[MultiPoly], b: list[MultiPoly]) -> list[MultiPoly]:
    """Pseudo-remainder of dense coefficient lists (main variable implicit)."""
    table = b[-1].table
    da, db = len(a) - 1, len(b) - 1
    lb = b[-1]
    r = list(a)
    for k in range(da - db, -1, -1):
        if len(r) - 1 < db + k:
            r = _uv_mul_scalar(r, lb)
            continue
        lr = r[-1]
        r = _uv_mul_scalar(r[:-1], lb)
        for j in range(db):
            r[j + k] = r[j + k] - lr * b[j]
        while r and r[-1].is_zero():
            r.pop()
        if not r:
            break
    return r


def poly_gcd(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    """gcd over the rationals, returned integer-primitive with positive lead.

    Contents are split off per main variable once; the primitive parts run
    through the subresultant remainder sequence, whose coefficient growth
    is removed by exact division with the predicted g * h^delta factors, so
    no recursive gcds happen inside the remainder loop.
    """
    a._check(b)
    if a.is_zero():
        return _primitive_part(b)
    if b.is_zero():
        return _primitive_part(a)
    a = _primitive_part(a)
    b = _primitive_part(b)
    if a == b:
        return a
    # Cheap exits: one operand divides the other (common in reduced chains).
    if divexact(b, a) is not None:
        return a
    if divexact(a, b) is not None:
        return b
    shared = [
        i
        for i in range(len(a.table))
        if any(m[i] for m in a.terms) and any(m[i] for m in b.terms)
    ]
    if not shared:
        return MultiPoly.const(a.table, 1)
    # Main variable: smallest minimum degree keeps the remainder chain short.
    x = min(shared, key=lambda i: min(a.degree_in(a.table.names[i]), b.degree_in(b.table.names[i])))
    ua = _to_univar(a, x)
    ub = _to_univar(b, x)
    if len(ua) < len(ub):
        ua, ub = ub, ua
    cont_a = _poly_gcd_list(ua)
    cont_b = _poly_gcd_list(ub)
    ua = [divexact(c, cont_a) for c in ua]
    ub = [divexact(c, cont_b) for c in ub]
    cont = poly_gcd(cont_a, cont_b)
    tail = _subresultant_prs(ua, ub, a.table)
    if tail is None:
        prim = MultiPoly.const(a.table, 1)
    else:
        tail_cont = _poly_gcd_list(tail)
        tail = [divexact(c, tail_cont) for c in tail]
        prim = _from_univar(tail, x, a.table)
    return _primitive_part(cont * prim)


def _subresultant_prs(ua: list[MultiPoly], ub: list[MultiPoly], table: SymbolTable) -> list[MultiPoly] | None:
    """Last nonzero member of the subresultant sequence, or None when the
    sequence terminates in a unit (gcd trivial in the main variable)."""
    one = MultiPoly.const(table, 1)
    g = one
    h = one
    A, B = ua, ub
    while True:
        delta = (len(A) - 1) - (len(B) - 1)
        R = _uv_pseudo_rem(A, B)
        if not R:
            return B
        if len(R) == 1:
            return None
        divisor = g * h**delta
        R = [divexact(c, divisor) for c in R]
        A, B = B, R
        g = A[-1]
        if delta == 1:
            h = g
        elif delta > 1:
            h = divexact(g**delta, h ** (delta - 1))


def _poly_gcd_list(polys: Sequence[MultiPoly]) -> MultiPoly:
    nonzero = [p for p in polys if not p.is_zero()]
    if not nonzero:
        raise ValueError("gcd of all-zero list")
    g = nonzero[0]
    one = None
    for p in nonzero[1:]:
        g = poly_gcd(g, p)
        if one is None:
            one = MultiPoly.const(g.table, 1)
        if g == one:
            return g
    return _primitive_part(g)


# -- rational functions ------------------------------------------------------

class RatFn:
    """Rational function in normal form: coprime parts, monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: MultiPoly, den: MultiPoly, _normalized: bool = False):
        if not _normalized:
            r = ratfn_reduce(num, den)
            num, den = r.num, r.den
        self.num = num
        self.den = den

    @classmethod
    def from_poly(cls, p: MultiPoly) -> "RatFn":
        return cls(p, MultiPoly.const(p.table, 1), _normalized=True)

    @classmethod
    def zero(cls, table: SymbolTable) -> "RatFn":
        return cls.from_poly(MultiPoly.zero(table))

    @classmethod
    def const(cls, table: SymbolTable, value: Scalar) -> "RatFn":
        return cls.from_poly(MultiPoly.const(table, value))

    @property
    def table(self) -> SymbolTable:
        return self.num.table

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_poly(self) -> bool:
        return self.den == MultiPoly.const(self.table, 1)

    def _coerce(self, other) -> "RatFn | None":
        if isinstance(other, RatFn):
            return other
        if isinstance(other, MultiPoly):
            return RatFn.from_poly(other)
        if isinstance(other, (int, Fraction)):
            return RatFn.const(self.table, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return ratfn_reduce(self.num + o.num, self.den)
        return ratfn_reduce(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFn(-self.num, self.den, _normalized=True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ratfn_reduce(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return ratfn_reduce(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, n: int):
        if n == 0:
            return RatFn.const(self.table, 1)
        if n < 0:
            if self.is_zero():
                raise ZeroDivisionError("zero rational function to negative power")
            return RatFn(self.den, self.num) ** (-n)
        return RatFn(self.num ** n, self.den ** n)

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        # Normal form makes structural equality decide functional equality.
        return self.num == o.num and self.den == o.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def evaluate(self, point: Mapping[str, Scalar]) -> Fraction:
        dv = self.den.evaluate(point)
        if dv == 0:
            raise PoleError(str(self.den))
        return self.num.evaluate(point) / dv

    def symbols_used(self) -> set[str]:
        return self.num.symbols_used() | self.den.symbols_used()

    def __repr__(self) -> str:
        return f"RatFn({self})"

    def __str__(self) -> str:
        if self.is_poly():
            return str(self.num)
        return f"({self.num}) / ({self.den})"


def ratfn_reduce(num: MultiPoly, den: MultiPoly) -> RatFn:
    """Normal form of num/den: cancel the gcd, make the denominator monic."""
    if den.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    num._check(den)
    if num.is_zero():
        return RatFn(num, MultiPoly.const(num.table, 1), _normalized=True)
    g = poly_gcd(num, den)
    if g.total_degree() > 0 or g.leading()[1] != 1:
        num = divexact(num, g)
        den = divexact(den, g)
    _, lc = den.leading()
    if lc != 1:
        inv = Fraction(1) / lc
        num = num * inv
        den = den * inv
    return RatFn(num, den, _normalized=True)


def poly_arith(a: MultiPoly, b: MultiPoly, op: str) -> MultiPoly:
    """Exact add/sub/mul on polynomials sharing one symbol table."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


class FactoredFn:
    """num / product-of-known-factors, for pipelines with a fixed factor base.

    Denominators are tracked as exponent tuples over a shared ordered base of
    monic irreducible polynomials (the curvature-gap differences, in this
    package).  Addition and multiplication then never need a polynomial gcd:
    common denominators are exponent-wise maxima and cancellation is trial
    division by the base factors.  `to_ratfn` emits the usual normal form;
    it is exact because the base factors are irreducible and monic.
    """

    __slots__ = ("base", "num", "den")

    def __init__(self, base: "FactorBase", num: MultiPoly, den: tuple[int, ...]):
        self.base = base
        self.num = num
        self.den = den if not num.is_zero() else base.zero_den

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __add__(self, other: "FactoredFn") -> "FactoredFn":
        den = tuple(max(a, b) for a, b in zip(self.den, other.den))
        n1 = self.num * self.base.factor_power(tuple(c - a for a, c in zip(self.den, den)))
        n2 = other.num * self.base.factor_power(tuple(c - b for b, c in zip(other.den, den)))
        return FactoredFn(self.base, n1 + n2, den)

    def __neg__(self) -> "FactoredFn":
        return FactoredFn(self.base, -self.num, self.den)

    def __sub__(self, other: "FactoredFn") -> "FactoredFn":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, FactoredFn):
            return FactoredFn(
                self.base, self.num * other.num, tuple(a + b for a, b in zip(self.den, other.den))
            )
        return FactoredFn(self.base, self.num * other, self.den)

    __rmul__ = __mul__

    def normalize(self) -> "FactoredFn":
        """Cancel every base factor dividing the numerator."""
        num = self.num
        den = list(self.den)
        if num.is_zero():
            return FactoredFn(self.base, num, self.base.zero_den)
        for i, e in enumerate(den):
            f = self.base.factors[i]
            while den[i] > 0:
                q = divexact(num, f)
                if q is None:
                    break
                num = q
                den[i] -= 1
        return FactoredFn(self.base, num, tuple(den))

    def to_ratfn(self) -> RatFn:
        """Exact normal-form RatFn (no gcd search needed)."""
        r = self.normalize()
        den_poly = self.base.factor_power(r.den)
        return RatFn(r.num, den_poly, _normalized=True)

    def __repr__(self) -> str:
        return f"FactoredFn(({self.num}) / {self.den})"


class FactorBase:
    """Shared ordered base of monic irreducible denominators for FactoredFn."""

    __slots__ = ("table", "factors", "zero_den", "_power_cache")

    def __init__(self, factors: Sequence[MultiPoly]):
        if not factors:
            raise ValueError("empty factor base")
        self.table = factors[0].table
        for f in factors:
            lead_m, lead_c = f.leading()
            if lead_c != 1:
                raise ValueError("factor base entries must be monic")
        self.factors = tuple(factors)
        self.zero_den = (0,) * len(factors)
        self._power_cache: dict[tuple[int, ...], MultiPoly] = {}

    def factor_power(self, exps: tuple[int, ...]) -> MultiPoly:
        """The expanded product of base factors with the given exponents."""
        cached = self._power_cache.get(exps)
        if cached is not None:
            return cached
        out = MultiPoly.const(self.table, 1)
        for f, e in zip(self.factors, exps):
            for _ in range(e):
                out = out * f
        self._power_cache[exps] = out
        return out

    def one(self) -> FactoredFn:
        return FactoredFn(self, MultiPoly.const(self.table, 1), self.zero_den)

    def zero(self) -> FactoredFn:
        return FactoredFn(self, MultiPoly.zero(self.table), self.zero_den)

    def from_poly(self, p: MultiPoly) -> FactoredFn:
        return FactoredFn(self, p, self.zero_den)

    def fraction(self, num: MultiPoly, factor_index: int, power: int = 1) -> FactoredFn:
        den = list(self.zero_den)
        den[factor_index] = power
        return FactoredFn(self, num, tuple(den))


def evaluate(expr: RatFn | MultiPoly, point: Mapping[str, Scalar]) -> Fraction:
    """Exact evaluation; raises PoleError when a denominator vanishes."""
    return expr.evaluate(point)
