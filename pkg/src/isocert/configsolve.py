"""Enumeration of constrained principal-curvature configurations.

A configuration is a real 4-tuple with prescribed power sums p1 = 0,
p2 = S, p3 = A3, plus one coincidence pattern:

  tag I    adjacent gaps equal in the written labels (arithmetic triple),
  tag II   middle pair equal,
  tag III  bottom pair equal.

Each system collapses to one rational cubic in a single variable:

  I        lam2 is a root of  -60 x^3 + 3 S x = A3,  the remaining values
           are lam2 -+ d with d^2 = (S - 12 lam2^2)/2 and lam4 = -3 lam2;
  II, III  the doubled value x is a root of  12 x^3 - 3 S x = A3, and the
           simple pair is  -x +- sqrt(S/2 - 2 x^2).

For irrational A3 of the form b*sqrt(d) the cubic c is paired with its
radical conjugate and the product c*cbar (a rational sextic) is isolated
instead; membership in c is then certified by excluding a root of cbar.
Everything downstream is exact: root intervals refine on demand, member
coincidences and the sorted order are decided by exact sign tests in the
field of the cubic root, and the returned power-sum enclosures are
containment-correct rational intervals re-verified against the inputs.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from . import upoly as up
from .algebraic import AlgebraicNumber, QuadExt, _sqrt_bounds

Rat = Fraction

_X = up.upoly([0, 1])


# -- exact rational intervals -------------------------------------------------

class RatInterval:
    """Closed interval with Fraction endpoints; exact containment arithmetic."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo, hi=None):
        lo = Fraction(lo)
        hi = lo if hi is None else Fraction(hi)
        if lo > hi:
            raise ValueError("inverted interval")
        self.lo, self.hi = lo, hi

    def __add__(self, other):
        o = _ri(other)
        return RatInterval(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __neg__(self):
        return RatInterval(-self.hi, -self.lo)

    def __sub__(self, other):
        return self + (-_ri(other))

    def __rsub__(self, other):
        return _ri(other) + (-self)

    def __mul__(self, other):
        o = _ri(other)
        c = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return RatInterval(min(c), max(c))

    __rmul__ = __mul__

    def power(self, n: int) -> "RatInterval":
        if n == 0:
            return RatInterval(1)
        if n % 2 == 1 or self.lo >= 0:
            return RatInterval(self.lo**n, self.hi**n)
        if self.hi <= 0:
            return RatInterval(self.hi**n, self.lo**n)
        return RatInterval(0, max(self.lo**n, self.hi**n))

    def width(self) -> Fraction:
        return self.hi - self.lo

    def contains(self, x) -> bool:
        if isinstance(x, QuadExt):
            return (x - QuadExt.rational(self.lo)).sign() >= 0 and (
                QuadExt.rational(self.hi) - x
            ).sign() >= 0
        x = Fraction(x)
        return self.lo <= x <= self.hi

    def __repr__(self):
        return f"[{self.lo}, {self.hi}]"


def _ri(x) -> RatInterval:
    return x if isinstance(x, RatInterval) else RatInterval(x)


def eval_on_interval(poly: up.UPoly, box: RatInterval) -> RatInterval:
    """Exact interval Horner evaluation."""
    acc = RatInterval(0)
    for c in reversed(poly):
        acc = acc * box + RatInterval(c)
    return acc


def sqrt_enclosure(box: RatInterval, eps: Fraction) -> RatInterval:
    """Rational enclosure of sqrt over a nonnegative-leaning interval."""
    lo = max(box.lo, Fraction(0))
    hi = max(box.hi, Fraction(0))
    lo_s = _sqrt_bounds(lo, eps)[0] if lo > 0 else Fraction(0)
    hi_s = _sqrt_bounds(hi, eps)[1]
    return RatInterval(lo_s, hi_s)


# -- parameters ----------------------------------------------------------------

_SQRT_RE = re.compile(
    r"^\s*(?P<sign>[+-])?\s*(?:(?P<coef>\d+(?:/\d+)?)\s*\*\s*)?"
    r"sqrt\(\s*(?P<rad>\d+(?:/\d+)?)\s*\)\s*(?:/\s*(?P<den>\d+))?\s*$"
)


def parse_value(text: str) -> QuadExt:
    """Parse '3/2', '-1', 'sqrt(2)', '8*sqrt(3)/3' into an exact value."""
    text = text.strip()
    m = _SQRT_RE.match(text)
    if m:
        coef = Fraction(m.group("coef") or 1)
        if m.group("den"):
            coef /= Fraction(m.group("den"))
        if m.group("sign") == "-":
            coef = -coef
        return QuadExt.make(0, coef, Fraction(m.group("rad")))
    try:
        return QuadExt.rational(Fraction(text))
    except ValueError:
        raise ValueError(f"cannot parse exact value {text!r}") from None


@dataclass(frozen=True)
class ScalarParams:
    """Problem constants: S = sum of squares, A3 = sum of cubes, n = 4."""

    S: Fraction
    A3: QuadExt
    n: int = 4

    @classmethod
    def make(cls, S, A3) -> "ScalarParams":
        if isinstance(A3, str):
            A3 = parse_value(A3)
        elif not isinstance(A3, QuadExt):
            A3 = QuadExt.rational(A3)
        if isinstance(S, str):
            S_val = parse_value(S)
            if not S_val.is_rational():
                raise ValueError("S must be rational")
            S = S_val.rational_value()
        return cls(Fraction(S), A3)

    def admissibility_warnings(self) -> list[str]:
        """Regime checks for the rigidity range; violations warn, not fail."""
        out = []
        if not (4 < self.S <= 12):
            out.append(f"S={self.S} outside the admissible range 4 < S <= 12")
        if self.A3.sign() < 0:
            out.append(f"A3={self.A3} negative; the standing convention flips signs")
        # A3 < S^{3/2}/sqrt(3)  <=>  3*A3^2 < S^3 for A3 >= 0.
        three_a3_sq = self.A3 * self.A3 * 3
        if (QuadExt.rational(self.S**3) - three_a3_sq).sign() <= 0 and self.A3.sign() >= 0:
            out.append("A3 is at or beyond the strict cubic-bound S^(3/2)/sqrt(3)")
        return out


# -- cubic reduction -----------------------------------------------------------

def _cubic_coeffs(tag: str, S: Fraction) -> up.UPoly:
    """Rational part of the eliminating cubic (the -A3 term handled apart)."""
    if tag == "I":
        return up.upoly([0, 3 * S, 0, -60])
    if tag in ("II", "III"):
        return up.upoly([0, -3 * S, 0, 12])
    raise ValueError(f"unknown system tag {tag!r}")


def newton_convert(S: Fraction, A3: Fraction, e4: Fraction) -> up.UPoly:
    """Monic quartic with power sums p1 = 0, p2 = S, p3 = A3, and free e4.

    Newton's identities with p1 = 0 force e1 = 0, e2 = -S/2, e3 = A3/3,
    leaving the constant coefficient e4 as the remaining degree of freedom.
    """
    S, A3, e4 = Fraction(S), Fraction(A3), Fraction(e4)
    e2 = -S / 2
    e3 = A3 / 3
    return up.upoly([e4, -e3, e2, 0, 1])


def power_sums_from_quartic(q: up.UPoly, upto: int = 4) -> list[Fraction]:
    """p1..p_upto of the root multiset via Newton's identities (exact)."""
    if up.degree(q) != 4 or q[-1] != 1:
        raise ValueError("expected a monic quartic")
    e = [Fraction(1), -q[3], q[2], -q[1], q[0]]  # e0..e4 with signs fixed
    p: list[Fraction] = []
    for k in range(1, upto + 1):
        acc = Fraction(0)
        for i in range(1, min(k, 4) + 1):
            term = e[i] * (p[k - i - 1] if k - i >= 1 else 0)
            acc += (-1) ** (i - 1) * term
        if k <= 4:
            acc += (-1) ** (k - 1) * k * e[k]
        p.append(acc)
    return p


def isolate_real_roots(poly: up.UPoly, precision) -> list[tuple[Fraction, Fraction, int]]:
    """Isolating intervals with multiplicity for an exact univariate polynomial."""
    eps = Fraction(precision)
    return [(lo, hi, m) for lo, hi, m, _ in up.isolate_with_multiplicity(poly, eps)]


def _cubic_roots(tag: str, params: ScalarParams) -> list[AlgebraicNumber]:
    """Exact real roots of the eliminating cubic, for rational or radical A3."""
    base = _cubic_coeffs(tag, params.S)
    a3 = params.A3
    if a3.is_rational():
        cubic = up.sub(base, up.upoly([a3.rational_value()]))
        return [
            AlgebraicNumber(f, lo, hi)
            for lo, hi, _m, f in up.isolate_with_multiplicity(cubic, Fraction(1, 2**20))
        ]
    if a3.a != 0:
        raise ValueError("A3 must be rational or a pure square-root multiple")
    # c(x) = base(x) - A3, cbar(x) = base(x) + A3; c*cbar = base^2 - A3^2 is
    # rational.  A root of the sextic belongs to c exactly when cbar stays
    # away from zero there (c and cbar share no roots since A3 != 0).
    a3_sq = (a3 * a3).rational_value()
    sextic = up.sub(up.mul(base, base), up.upoly([a3_sq]))
    roots = []
    for lo, hi, _m, f in up.isolate_with_multiplicity(sextic, Fraction(1, 2**20)):
        alg = AlgebraicNumber(f, lo, hi)
        if _is_root_of_shifted(alg, base, a3):
            roots.append(alg)
    return roots


def _is_root_of_shifted(alg: AlgebraicNumber, base: up.UPoly, a3: QuadExt) -> bool:
    """Exact: does base(x) - a3 vanish at alg (vs base(x) + a3)?"""
    cur = alg
    while True:
        enc = eval_on_interval(base, RatInterval(cur.lo, cur.hi))
        # base(alg) equals either +a3 or -a3; decide which.
        if not enc.contains(a3):
            return False
        if not enc.contains(-a3):
            return True
        cur = cur.refine((cur.hi - cur.lo) / 16)


# -- member descriptions ---------------------------------------------------------

@dataclass(frozen=True)
class _Member:
    """Value  p(x0) + q(x0) * sqrt(D(x0))  in the field of the cubic root x0."""

    p: up.UPoly
    q: up.UPoly

    def enclosure(self, x0: AlgebraicNumber, D: up.UPoly, eps: Fraction) -> RatInterval:
        box = RatInterval(x0.lo, x0.hi)
        val = eval_on_interval(self.p, box)
        if not up.is_zero(self.q):
            root = sqrt_enclosure(eval_on_interval(D, box), eps)
            val = val + eval_on_interval(self.q, box) * root
        return val


def _sign_member_diff(m1: _Member, m2: _Member, x0: AlgebraicNumber, D: up.UPoly) -> int:
    """Exact sign of (m1 - m2) at x0, where both involve the same sqrt(D)."""
    p = up.sub(m1.p, m2.p)
    q = up.sub(m1.q, m2.q)
    sp = x0.sign_of(p) if not up.is_zero(p) else 0
    sq = x0.sign_of(q) if not up.is_zero(q) else 0
    sD = x0.sign_of(D)
    if sq == 0 or sD == 0:
        return sp
    if sp == 0:
        return sq
    if sp == sq:
        return sp
    t = up.sub(up.mul(p, p), up.mul(up.mul(q, q), D))
    st = x0.sign_of(t)
    if st == 0:
        return 0
    return sp if st > 0 else -sp


@dataclass
class CurvatureConfig:
    """One solution tuple, exactly represented and refinable on demand."""

    tag: str
    x0: AlgebraicNumber
    D: up.UPoly
    members: list[_Member]          # sorted ascending
    multiplicities: list[int]       # per distinct value, ascending order
    distinct: list[int]             # index into members of each distinct value
    constraint_satisfied: bool
    defining_poly: up.UPoly
    params: ScalarParams
    warnings: list[str] = field(default_factory=list)

    def lambda_intervals(self, precision) -> list[RatInterval]:
        """Sorted member enclosures of width <= precision."""
        eps = Fraction(precision)
        x0 = self.x0
        while True:
            out = [m.enclosure(x0, self.D, eps / 8) for m in self.members]
            if all(o.width() <= eps for o in out):
                self.x0 = x0
                return out
            x0 = x0.refine((x0.hi - x0.lo) / 16)

    def power_sum_intervals(self, precision) -> dict[str, RatInterval]:
        """Containment enclosures of p1..p4 with width <= precision."""
        eps = Fraction(precision)
        attempt = eps / 16
        while True:
            lams = self.lambda_intervals(attempt)
            out = {}
            for k in range(1, 5):
                total = RatInterval(0)
                for lam in lams:
                    total = total + lam.power(k)
                out[f"p{k}"] = total
            if all(v.width() <= eps for v in out.values()):
                return out
            attempt /= 16

    def verify_constraints(self, precision) -> dict[str, bool]:
        """Interval re-verification of the defining power sums."""
        ps = self.power_sum_intervals(precision)
        return {
            "p1_contains_zero": ps["p1"].contains(0),
            "p2_contains_S": ps["p2"].contains(self.params.S),
            "p3_contains_A3": ps["p3"].contains(self.params.A3),
        }


def _build_config(tag: str, x0: AlgebraicNumber, params: ScalarParams,
                  defining: up.UPoly, warnings: list[str]) -> CurvatureConfig | None:
    S = params.S
    if tag == "I":
        D = up.upoly([S / 2, 0, -6])            # (S - 12 x^2) / 2
        raw = [
            _Member(up.upoly([0, 1]), up.upoly([-1])),   # x0 - d
            _Member(up.upoly([0, 1]), ()),               # x0
            _Member(up.upoly([0, 1]), up.upoly([1])),    # x0 + d
            _Member(up.upoly([0, -3]), ()),              # -3 x0
        ]
    else:
        D = up.upoly([S / 2, 0, -2])            # S/2 - 2 x^2
        raw = [
            _Member(up.upoly([0, 1]), ()),
            _Member(up.upoly([0, 1]), ()),
            _Member(up.upoly([0, -1]), up.upoly([1])),   # -x0 + sqrt(D)
            _Member(up.upoly([0, -1]), up.upoly([-1])),  # -x0 - sqrt(D)
        ]
    if x0.sign_of(D) < 0:
        return None
    order = sorted(range(4), key=lambda i: _SortKey(raw, x0, D, i))
    members = [raw[i] for i in order]
    # Multiplicities via exact adjacent equality.
    distinct, mults = [0], [1]
    for i in range(1, 4):
        if _sign_member_diff(members[i], members[i - 1], x0, D) == 0:
            mults[-1] += 1
        else:
            distinct.append(i)
            mults.append(1)
    satisfied = _pattern_satisfied(tag, members, x0, D)
    return CurvatureConfig(
        tag=tag,
        x0=x0,
        D=D,
        members=members,
        multiplicities=mults,
        distinct=distinct,
        constraint_satisfied=satisfied,
        defining_poly=defining,
        params=params,
        warnings=list(warnings),
    )


class _SortKey:
    """Exact comparator adapter for sorting members."""

    def __init__(self, raw, x0, D, i):
        self.raw, self.x0, self.D, self.i = raw, x0, D, i

    def __lt__(self, other: "_SortKey") -> bool:
        return _sign_member_diff(self.raw[self.i], self.raw[other.i], self.x0, self.D) < 0


def _pattern_satisfied(tag: str, members, x0, D) -> bool:
    """Does the sorted tuple satisfy the tag's coincidence pattern?"""
    gaps = [
        _sign_member_diff(members[i + 1], members[i], x0, D) for i in range(3)
    ]  # each is 0 (equal) or +1
    if tag == "I":
        diff_p = up.sub(up.add(members[2].p, members[0].p), up.scale(members[1].p, 2))
        diff_q = up.sub(up.add(members[2].q, members[0].q), up.scale(members[1].q, 2))
        return (
            _sign_member_diff(
                _Member(diff_p, diff_q), _Member((), ()), x0, D
            )
            == 0
        )
    if tag == "II":
        return gaps[1] == 0
    if tag == "III":
        return gaps[0] == 0
    raise ValueError(tag)


def _negation_symmetric(cfg: CurvatureConfig) -> bool:
    """Sorted members satisfy m_i = -m_{5-i} (multiset fixed by negation)."""
    for i, j in ((0, 3), (1, 2)):
        p = up.add(cfg.members[i].p, cfg.members[j].p)
        q = up.add(cfg.members[i].q, cfg.members[j].q)
        if _sign_member_diff(_Member(p, q), _Member((), ()), cfg.x0, cfg.D) != 0:
            return False
    return True


def solve_system(tag: str, params: ScalarParams, precision=Fraction(1, 10**12)) -> list[CurvatureConfig]:
    """Complete solution list of one coincidence system at the given precision.

    Duplicate multisets (which arise exactly when the eliminating cubic has
    the paired roots +-x0 and the configuration is negation symmetric) are
    removed; configurations violating the tag pattern in sorted order are
    flagged, not dropped.
    """
    warnings = params.admissibility_warnings()
    roots = _cubic_roots(tag, params)
    base = _cubic_coeffs(tag, params.S)
    if params.A3.is_rational():
        defining = up.sub(base, up.upoly([params.A3.rational_value()]))
    else:
        defining = up.sub(up.mul(base, base), up.upoly([(params.A3 * params.A3).rational_value()]))
    configs: list[tuple[AlgebraicNumber, CurvatureConfig]] = []
    for x0 in roots:
        cfg = _build_config(tag, x0, params, defining, warnings)
        if cfg is None:
            continue
        duplicate = False
        for prev_x0, prev_cfg in configs:
            neg_prev = _negated(prev_x0)
            if x0.compare(neg_prev) == 0 and _negation_symmetric(prev_cfg):
                duplicate = True
                break
        if not duplicate:
            configs.append((x0, cfg))
    out = [cfg for _x0, cfg in configs]
    for cfg in out:
        cfg.lambda_intervals(Fraction(precision))
    return out


def _negated(alg: AlgebraicNumber) -> AlgebraicNumber:
    flipped = up.upoly([c if i % 2 == 0 else -c for i, c in enumerate(alg.poly)])
    return AlgebraicNumber(flipped, -alg.hi, -alg.lo)


# -- branch identities -----------------------------------------------------------

def case_branch_identities(params: ScalarParams) -> dict:
    """Exact symbolic checks for the excluded top-pair branch and the
    equality-pattern cube identity.

    (a) with the top pair equal and the bottom pair  -x -+ sqrt(S/2 - 2x^2),
        the cube sum collapses to  -6 x (S/2 - 2 x^2)  identically;
    (b) that product is negative whenever  x > 0  and  S/2 - 2 x^2 > 0,
        certified by the signs of its three factors on that region;
    (c) the pattern (3t, -t, -t, -t) satisfies  3 p3^2 = p2^3  identically.
    """
    from .exactalg import MultiPoly, SymbolTable

    tab = SymbolTable(["x", "S", "d"])
    x = MultiPoly.var(tab, "x")
    S = MultiPoly.var(tab, "S")
    d = MultiPoly.var(tab, "d")
    lam1 = -x - d
    lam2 = -x + d
    p3 = lam1**3 + lam2**3 + x**3 + x**3
    d_sq = S * Fraction(1, 2) - x**2 * 2
    # Rewrite even powers of d through d^2 = S/2 - 2x^2.
    reduced = MultiPoly.zero(tab)
    i_d = tab.index("d")
    for mono, coeff in p3.terms.items():
        e = mono[i_d]
        rest = MultiPoly(tab, {mono[:i_d] + (0,) + mono[i_d + 1 :]: coeff})
        if e % 2 == 1:
            rest = rest * d
        reduced = reduced + rest * d_sq ** (e // 2)
    target = x * (-6) * d_sq
    sym_ok = (reduced - target).is_zero()
    d_free = all(m[i_d] == 0 for m in reduced.terms)

    sign_cert = {
        "expression": "-6 * x * (S/2 - 2*x^2)",
        "factors": [
            {"factor": "-6", "sign": "negative"},
            {"factor": "x", "sign": "positive on region"},
            {"factor": "S/2 - 2*x^2", "sign": "positive on region"},
        ],
        "conclusion": "product < 0 on {x > 0, S/2 - 2*x^2 > 0}",
    }
    # Numeric spot grid inside the region for the given S.
    spots = []
    if params.S > 0:
        top = _sqrt_bounds(params.S / 4, Fraction(1, 10**6))[0]
        for k in range(1, 8):
            xv = top * Fraction(k, 8)
            if xv <= 0:
                continue
            val = -6 * xv * (params.S / 2 - 2 * xv * xv)
            spots.append(val < 0)
    tab1 = SymbolTable(["t"])
    t = MultiPoly.var(tab1, "t")
    p2 = (t * 3) ** 2 + t**2 * 3
    p3p = (t * 3) ** 3 + (-t) ** 3 * 3
    cube_ok = (p3p**2 * 3 - p2**3).is_zero()
    return {
        "top_pair_cube_sum_identity": bool(sym_ok and d_free),
        "negativity_certificate": sign_cert,
        "negativity_spot_checks_pass": all(spots) if spots else True,
        "equality_pattern_3p3sq_eq_p2cubed": bool(cube_ok),
        "status": "pass" if (sym_ok and d_free and cube_ok and (all(spots) if spots else True)) else "fail",
    }
