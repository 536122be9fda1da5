"""Target formulas and residual checks for the coframe identities.

Each check compares two independently produced objects:

  * the engine side, computed by `frameforms` from the structure equations
    alone, and
  * the target side, transcribed term by term from the closed-form
    coefficient formulas the engine is supposed to reproduce.

A check passes only when the difference is the identically-zero rational
function.  Residuals are exact; there are no tolerances in this module.

Checks run in two modes: "symbolic" keeps the sectional curvatures R_ijij
as opaque symbols, "expanded" replaces them by 1 + l_i l_j through the
Gauss equation.  Both must pass.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from . import frameforms as ff
from .exactalg import FactoredFn, MultiPoly, RatFn

_L = {i: ff.lam(i) for i in range(1, 5)}
_PAIRS = ((1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4))

# Common denominator of the quadratic h_44i blocks.
_D6 = ((1, 2), (1, 2), (1, 3), (1, 3), (2, 3), (2, 3))

DTHETA_NAMES = tuple(f"dtheta_{i}{j}" for i, j in _PAIRS)
CONTRACTION_NAMES = tuple(f"w{i}_phi" for i in range(1, 5))
IDENTITY_NAMES = DTHETA_NAMES + ("dphi",) + CONTRACTION_NAMES + ("dg_phi", "df_phi")


def gamma_polynomial() -> MultiPoly:
    """(l2-l1)^2 (l3-l1)^2 (l3-l2)^2, the scale of the four L_i."""
    l1, l2, l3 = _L[1], _L[2], _L[3]
    return (l2 - l1) ** 2 * (l3 - l1) ** 2 * (l3 - l2) ** 2


def gamma_L_polynomials() -> dict[int, MultiPoly]:
    """The four printed products gamma * L_i, as exact polynomials."""
    l1, l2, l3, l4 = (_L[i] for i in range(1, 5))
    return {
        1: (l4 - l3) * ((l3 - l1) ** 2 * (l3 - l2) - (l4 - l2) * (l4 - l1) ** 2)
        - (l4 - l2) * (l3 - l2) * (l2 - l1) ** 2,
        2: (l4 - l3) * ((l3 - l2) ** 2 * (l3 - l1) - (l4 - l1) * (l4 - l2) ** 2)
        - (l4 - l1) * (l3 - l1) * (l2 - l1) ** 2,
        3: (l2 - l1) * ((l3 - l2) ** 2 * (l4 - l2) - (l4 - l1) * (l3 - l1) ** 2)
        - (l4 - l1) * (l4 - l2) * (l4 - l3) ** 2,
        4: (l2 - l1) * ((l4 - l2) ** 2 * (l3 - l2) - (l3 - l1) * (l4 - l1) ** 2)
        - (l3 - l1) * (l3 - l2) * (l4 - l3) ** 2,
    }


def _rsym_or_gauss(i: int, j: int, mode: str) -> FactoredFn:
    if mode == "symbolic":
        return ff.GAP_BASE.from_poly(ff.rsym(i, j))
    return ff.GAP_BASE.from_poly(MultiPoly.const(ff.GEOMETRY, 1) + _L[i] * _L[j])


def dtheta_target(i: int, j: int, mode: str) -> FactoredFn:
    """Transcription of the printed volume coefficient of d(theta_ij)."""
    l1, l2, l3, l4 = (_L[k] for k in range(1, 5))
    h = ff.hsym
    og = ff.over_gaps
    if (i, j) == (1, 2):
        body = (
            og((l3 - l4) * ((l1 - l3) ** 2 * (l2 - l3) - (l1 - l4) ** 2 * (l2 - l4)) * h(4, 4, 1) ** 2, _D6)
            + og((l3 - l4) * ((l2 - l3) ** 2 * (l1 - l3) - (l2 - l4) ** 2 * (l1 - l4)) * h(4, 4, 2) ** 2, _D6)
            + og((l1 - l4) * (l2 - l4) * (l3 - l4) ** 2 * h(4, 4, 3) ** 2, _D6)
            + og((l1 - l3) * (l2 - l3) * (l3 - l4) ** 2 * h(4, 4, 4) ** 2, _D6)
            + og(2 * h(1, 2, 3) ** 2, [(1, 3), (2, 3)])
            + og(2 * h(1, 2, 4) ** 2, [(1, 4), (2, 4)])
        )
    elif (i, j) == (1, 3):
        body = (
            og(-(l2 - l4) * ((l1 - l2) ** 2 * (l2 - l3) + (l1 - l4) ** 2 * (l3 - l4)) * h(4, 4, 1) ** 2, _D6)
            + og((l2 - l4) * ((l1 - l2) * (l2 - l3) ** 2 - (l1 - l4) * (l3 - l4) ** 2) * h(4, 4, 3) ** 2, _D6)
            + og((l1 - l4) * (l2 - l4) ** 2 * (l3 - l4) * h(4, 4, 2) ** 2, _D6)
            + og(-(l1 - l2) * (l2 - l4) ** 2 * (l2 - l3) * h(4, 4, 4) ** 2, _D6)
            + og(-2 * h(1, 2, 3) ** 2, [(1, 2), (2, 3)])
            + og(2 * h(1, 3, 4) ** 2, [(1, 4), (3, 4)])
        )
    elif (i, j) == (1, 4):
        body = (
            og((l2 - l3) * ((l1 - l3) ** 2 * (l3 - l4) - (l1 - l2) ** 2 * (l2 - l4)) * h(4, 4, 1) ** 2, _D6)
            + og(-(l3 - l4) * h(4, 4, 2) ** 2, [(1, 2), (1, 2), (1, 3)])
            + og(-(l2 - l4) * h(4, 4, 3) ** 2, [(1, 2), (1, 3), (1, 3)])
            + og((l2 - l3) * ((l1 - l2) * (l2 - l4) ** 2 - (l1 - l3) * (l3 - l4) ** 2) * h(4, 4, 4) ** 2, _D6)
            + og(-2 * h(1, 2, 4) ** 2, [(1, 2), (2, 4)])
            + og(-2 * h(1, 3, 4) ** 2, [(1, 3), (3, 4)])
        )
    elif (i, j) == (2, 3):
        body = (
            og((l1 - l4) ** 2 * (l2 - l4) * (l3 - l4) * h(4, 4, 1) ** 2, _D6)
            + og((l1 - l4) ** 2 * h(4, 4, 4) ** 2, [(1, 2), (1, 3), (2, 3), (2, 3)])
            + og(-(l1 - l4) * ((l2 - l4) ** 2 * (l3 - l4) + (l1 - l2) ** 2 * (l1 - l3)) * h(4, 4, 2) ** 2, _D6)
            + og(-(l1 - l4) * ((l2 - l4) * (l3 - l4) ** 2 + (l1 - l2) * (l1 - l3) ** 2) * h(4, 4, 3) ** 2, _D6)
            + og(2 * h(1, 2, 3) ** 2, [(1, 2), (1, 3)])
            + og(2 * h(2, 3, 4) ** 2, [(2, 4), (3, 4)])
        )
    elif (i, j) == (2, 4):
        body = (
            og(-(l3 - l4) * h(4, 4, 1) ** 2, [(1, 2), (1, 2), (2, 3)])
            + og((l1 - l4) * h(4, 4, 3) ** 2, [(1, 2), (2, 3), (2, 3)])
            + og((l1 - l3) * ((l3 - l4) * (l2 - l3) ** 2 - (l1 - l4) * (l1 - l2) ** 2) * h(4, 4, 2) ** 2, _D6)
            + og(-(l1 - l3) * ((l2 - l3) * (l3 - l4) ** 2 + (l1 - l2) * (l1 - l4) ** 2) * h(4, 4, 4) ** 2, _D6)
            + og(2 * h(1, 2, 4) ** 2, [(1, 2), (1, 4)])
            + og(-2 * h(2, 3, 4) ** 2, [(2, 3), (3, 4)])
        )
    elif (i, j) == (3, 4):
        body = (
            og((l2 - l4) * h(4, 4, 1) ** 2, [(1, 3), (1, 3), (2, 3)])
            + og((l1 - l4) * h(4, 4, 2) ** 2, [(1, 3), (2, 3), (2, 3)])
            + og((l1 - l2) * ((l2 - l3) ** 2 * (l2 - l4) - (l1 - l3) ** 2 * (l1 - l4)) * h(4, 4, 3) ** 2, _D6)
            + og((l1 - l2) * ((l2 - l3) * (l2 - l4) ** 2 - (l1 - l3) * (l1 - l4) ** 2) * h(4, 4, 4) ** 2, _D6)
            + og(2 * h(1, 3, 4) ** 2, [(1, 3), (1, 4)])
            + og(2 * h(2, 3, 4) ** 2, [(2, 3), (2, 4)])
        )
    else:
        raise ValueError(f"no target for theta_{i}{j}")
    return body - _rsym_or_gauss(i, j, mode)


def dphi_target(mode: str) -> FactoredFn:
    """sum_i L_i h_44i^2 - (1/2) R_M with R_M = 2 sum_{i<j} R_ijij."""
    h = ff.hsym
    og = ff.over_gaps
    gL = gamma_L_polynomials()
    out = ff.GAP_BASE.zero()
    for i in range(1, 5):
        out = out + og(gL[i] * h(4, 4, i) ** 2, _D6)
    for a, b in _PAIRS:
        out = out - _rsym_or_gauss(a, b, mode)
    return out


def contraction_bracket(i: int) -> FactoredFn:
    """The scalar bracket in  w_i ^ Phi = bracket_i * h_44i * vol."""
    l1, l2, l3, l4 = (_L[k] for k in range(1, 5))
    og = ff.over_gaps
    if i == 1:
        return (
            og(-(l4 - l3) * (l4 - l1), [(3, 2), (2, 1), (2, 1)])
            + og((l4 - l2) * (l4 - l1), [(3, 2), (3, 1), (3, 1)])
            + og(-1, [(4, 1)])
        )
    if i == 2:
        return (
            og((l4 - l2) * (l4 - l1), [(3, 1), (3, 2), (3, 2)])
            + og(-1, [(4, 2)])
            + og(-(l4 - l3) * (l4 - l2), [(3, 1), (2, 1), (2, 1)])
        )
    if i == 3:
        return (
            og(-1, [(4, 3)])
            + og((l4 - l3) * (l4 - l1), [(3, 2), (3, 2), (2, 1)])
            + og(-(l4 - l3) * (l4 - l2), [(3, 1), (3, 1), (2, 1)])
        )
    if i == 4:
        return (
            og(-(l4 - l3) * (l4 - l2), [(3, 1), (2, 1), (4, 1)])
            + og((l4 - l3) * (l4 - l1), [(2, 1), (3, 2), (4, 2)])
            + og(-(l4 - l2) * (l4 - l1), [(3, 1), (3, 2), (4, 3)])
        )
    raise ValueError("index must be 1..4")


def gap_slope(which: str) -> FactoredFn:
    """The scalar m with d(gap^2) = m * h_44i w_i: m0 for g, m1 for f."""
    l1, l2, l3, l4 = (_L[k] for k in range(1, 5))
    og = ff.over_gaps
    if which == "g":
        return og(2 * (l4 - l3) * (l4 - l1), [(3, 2)]) + og(2 * (l4 - l3) * (l4 - l2), [(3, 1)])
    if which == "f":
        return og(-2 * (l4 - l1) * (l4 - l2), [(3, 1)]) + og(-2 * (l4 - l1) * (l4 - l3), [(2, 1)])
    raise ValueError("which must be 'g' or 'f'")


def _band_dangerous_terms(which: str) -> dict[int, FactoredFn]:
    """The bracket terms that blow up on the respective vanishing-gap band."""
    l1, l2, l3, l4 = (_L[k] for k in range(1, 5))
    og = ff.over_gaps
    if which == "g":
        return {
            1: og(-(l4 - l3) * (l4 - l1), [(3, 2), (2, 1), (2, 1)]),
            2: og(-(l4 - l3) * (l4 - l2), [(3, 1), (2, 1), (2, 1)]),
        }
    if which == "f":
        return {
            2: og((l4 - l2) * (l4 - l1), [(3, 1), (3, 2), (3, 2)]),
            3: og((l4 - l3) * (l4 - l1), [(3, 2), (3, 2), (2, 1)]),
        }
    raise ValueError("which must be 'g' or 'f'")


def gap_band_quantities(which: str) -> dict[str, RatFn]:
    """Named normal-form pieces of d(g or f) ^ Phi: slope m, singular B_i, bounded G_i.

    The coefficient of h_44i^2 decomposes as B_i + G_i (B_i present only for
    the two indices whose bracket is singular on the band); the G_i come out
    with every removable gap factor cancelled.
    """
    return dict(_gap_band_quantities_cached(which))


@lru_cache(maxsize=2)
def _gap_band_quantities_cached(which: str) -> tuple[tuple[str, RatFn], ...]:
    m = gap_slope(which)
    dangerous = _band_dangerous_terms(which)
    out: list[tuple[str, RatFn]] = [("m", m.to_ratfn())]
    for i in range(1, 5):
        full = m * contraction_bracket(i)
        if i in dangerous:
            b = m * dangerous[i]
            out.append((f"B{i}", b.to_ratfn()))
            out.append((f"G{i}", (full - b).to_ratfn()))
        else:
            out.append((f"G{i}", full.to_ratfn()))
    return tuple(out)


@dataclass(frozen=True)
class IdentityReport:
    """Outcome of one engine-versus-target residual check."""

    name: str
    mode: str
    residual_is_zero: bool
    residual_term_count: int
    engine: str
    target: str
    extracted: dict = field(default_factory=dict)

    @property
    def status(self) -> str:
        return "pass" if self.residual_is_zero else "fail"

    def to_json(self) -> dict:
        out = {
            "name": self.name,
            "mode": self.mode,
            "residual_is_zero": self.residual_is_zero,
            "residual_term_count": self.residual_term_count,
            "status": self.status,
        }
        if self.extracted:
            out["extracted"] = dict(sorted(self.extracted.items()))
        return out


def _report(name: str, mode: str, engine: FactoredFn, target: FactoredFn, extracted=None) -> IdentityReport:
    residual = (engine - target).normalize()
    return IdentityReport(
        name=name,
        mode=mode,
        residual_is_zero=residual.is_zero(),
        residual_term_count=len(residual.num.terms),
        engine=str(engine.to_ratfn()),
        target=str(target.to_ratfn()),
        extracted=extracted or {},
    )


def _pure_vol_coeff(form: ff.Form) -> FactoredFn:
    reduced = ff.reduce_diagonal(ff.substitute_connections(form))
    return reduced.vol_coefficient_raw()


def verify_identity(name: str, mode: str = "symbolic") -> IdentityReport:
    """Run one named identity check; residual must be exactly zero to pass."""
    if mode not in ff.MODES:
        raise ValueError(f"unknown mode {mode!r}")
    if name not in IDENTITY_NAMES:
        raise ValueError(f"unknown identity {name!r}; known: {', '.join(IDENTITY_NAMES)}")
    if name.startswith("dtheta_"):
        i, j = int(name[-2]), int(name[-1])
        engine = ff.exterior_derivative(ff.theta(i, j), mode=mode).vol_coefficient_raw()
        return _report(name, mode, engine, dtheta_target(i, j, mode))
    if name == "dphi":
        engine = ff.exterior_derivative(ff.phi(), mode=mode).vol_coefficient_raw()
        gL = gamma_L_polynomials()
        extracted = {f"gamma_L{i}": str(gL[i]) for i in gL}
        extracted["gamma"] = str(gamma_polynomial())
        return _report(name, mode, engine, dphi_target(mode), extracted)
    if name.startswith("w") and name.endswith("_phi"):
        i = int(name[1])
        engine = _pure_vol_coeff(ff.omega(i).wedge(ff.phi()))
        target = contraction_bracket(i) * ff.GAP_BASE.from_poly(ff.hsym(4, 4, i))
        return _report(name, mode, engine, target)
    if name in ("dg_phi", "df_phi"):
        which = "g" if name == "dg_phi" else "f"
        l2, l1 = _L[2], _L[1]
        sq = (_L[2] - _L[1]) ** 2 if which == "g" else (_L[3] - _L[2]) ** 2
        engine = _pure_vol_coeff(ff.scalar_differential(sq).wedge(ff.phi()))
        m = gap_slope(which)
        target = ff.GAP_BASE.zero()
        for i in range(1, 5):
            target = target + m * contraction_bracket(i) * ff.GAP_BASE.from_poly(ff.hsym(4, 4, i) ** 2)
        extracted = {k: str(v) for k, v in gap_band_quantities(which).items()}
        return _report(name, mode, engine, target, extracted)
    raise ValueError(f"unknown identity {name!r}")


def run_identity_suite(modes=("symbolic", "expanded")) -> list[IdentityReport]:
    """Every identity in every requested mode, in deterministic order."""
    return [verify_identity(name, mode) for name in IDENTITY_NAMES for mode in modes]
