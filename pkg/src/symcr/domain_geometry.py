"""Levi forms, tangent-field brackets, the Levi cone, the Cayley transform and hulls."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import nnls

from .config import DEFAULT_TOL, Tolerances
from .errors import CayleyDomainError, DomainPreconditionError, PeirceSpaceError
from .jordan import ConeMembership, involution, is_invertible, jordan_context, jordan_inverse, \
    jordan_product, omega_membership
from .jts import (Element, Tripotent, certify, from_vector, project_factor,
                  random_element, random_k_action, to_vector, tp, tripotent_residual)
from .peirce import classify_tube, peirce_decompose, peirce_reflection, refined_peirce
from .spectral import random_tripotent, shilov_membership, spectral_decompose, \
    spectral_norm, tripotent_rank

_SQRT2 = np.sqrt(2.0)


def _require_half(pd, tol: Tolerances, *xs: Element) -> None:
    for x in xs:
        if pd.residual_in("1/2", x) > 10 * tol.eq * max(1.0, x.norm()):
            raise PeirceSpaceError("argument not in E_1/2(e)")


def levi_phi(e, u: Element, v: Element, tol: Tolerances = DEFAULT_TOL) -> Element:
    """Phi_e(u, v) = 2{e u v}, an E_1-valued Hermitian form on E_1/2."""
    e = certify(e, tol)
    _require_half(peirce_decompose(e, tol), tol, u, v)
    return 2 * tp(e.element, u, v)


# ---------------------------------------------------------------------------
# the fields X^u(a) = 4{aau} - 4{aa{aau}} and their brackets


def foll_field(e, u: Element, a: Element, tol: Tolerances = DEFAULT_TOL) -> Element:
    e = certify(e, tol)
    _require_half(peirce_decompose(e, tol), tol, u)
    return _field(u, a)


def _field(u, a):
    w = tp(a, a, u)
    return 4 * w - 4 * tp(a, a, w)


def _field_derivative(u, a, h):
    """Real derivative of a -> X^u(a) at a in direction h, by multilinear expansion."""
    w = tp(a, a, u)
    dw = tp(h, a, u) + tp(a, h, u)
    return 4 * dw - 4 * (tp(h, a, w) + tp(a, h, w) + tp(a, a, dw))


def foll_bracket(e, u: Element, v: Element, tol: Tolerances = DEFAULT_TOL) -> Element:
    """[X^u, X^v] at e with the convention [X, Y] = DY.X - DX.Y."""
    e = certify(e, tol)
    _require_half(peirce_decompose(e, tol), tol, u, v)
    a = e.element
    return _field_derivative(v, a, _field(u, a)) - _field_derivative(u, a, _field(v, a))


def foll_bracket_closed_form(e, u: Element, v: Element) -> Element:
    x = e.element if isinstance(e, Tripotent) else e
    return 2 * tp(x, v, u) - 2 * tp(x, u, v)


# ---------------------------------------------------------------------------
# Levi cone


@dataclass(frozen=True)
class ProbeResult:
    ok: bool
    reason: str = ""
    residuals: tuple = ()
    samples: int = 0

    def __bool__(self):
        return self.ok


def _realify(x: Element) -> np.ndarray:
    v = to_vector(x)
    return np.concatenate([v.real, v.imag])


def levi_cone_probe(e, sample_count: int = 500, seed=0, tol: Tolerances = DEFAULT_TOL,
                    threshold: float = 1e-6) -> ProbeResult:
    """Check that every frame member of e is a nonnegative combination of sampled Phi(u,u).

    Samples are drawn from all of E_1/2(e) and from the refined pieces E_{j0}
    of a frame of e (on which Phi(u,u) is a positive multiple of e_j).
    """
    e = certify(e, tol)
    pd = peirce_decompose(e, tol)
    if pd.dims[2] != 0:
        return ProbeResult(False, "tripotent is not maximal")
    if pd.dims[1] == 0:
        return ProbeResult(False, "E_1/2 = 0 (tube type)")
    sys = e.system
    frame = spectral_decompose(e.element).frame
    rp = refined_peirce(frame, tol)
    r = len(frame)
    empty = [j for j in range(1, r + 1) if rp.dims()[(0, j)] == 0]
    if empty:
        return ProbeResult(False, f"E_j0 = 0 for frame members {empty} (tube factor present)")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    pieces = [pd.P12] + [rp.projectors[(0, j)] for j in range(1, r + 1)]
    cols = []
    for k in range(sample_count):
        P = pieces[k % len(pieces)]
        u = from_vector(sys, P @ to_vector(random_element(sys, rng)))
        phi = 2 * tp(e.element, u, u)
        n = phi.norm()
        if n > 0:
            cols.append(_realify(phi) / n)
    A = np.column_stack(cols)
    residuals = []
    for m in frame:
        _, res = nnls(A, _realify(m.element))
        residuals.append(float(res))
    ok = max(residuals) <= threshold
    return ProbeResult(ok, "" if ok else "frame member outside sampled cone",
                       tuple(residuals), len(cols))


# ---------------------------------------------------------------------------
# Cayley transform and the Siegel domain


@dataclass(frozen=True, eq=False)
class SiegelPoint:
    e: Tripotent
    t: Element
    v: Element


class SiegelMembership(str, enum.Enum):
    INTERIOR = "interior"
    ON_N = "on_N"
    OUTSIDE = "outside"


def _maximal_context(e, tol):
    ctx = jordan_context(e, tol)
    if ctx.peirce.dims[2] != 0:
        raise DomainPreconditionError("Cayley transform needs a maximal tripotent")
    return ctx


def cayley(e, z: Element, tol: Tolerances = DEFAULT_TOL) -> SiegelPoint:
    """z = t + v  ->  ((e-t)^{-1} o (e+t), 2 sqrt2 {(e-t)^{-1}, e, v}).

    The second component uses the E_1 module action 2L on E_1/2, so that the
    image of the Shilov boundary lands on t + t* = Phi(v, v).
    """
    ctx = _maximal_context(e, tol)
    t = ctx.peirce.project("1", z)
    v = ctx.peirce.project("1/2", z)
    s = ctx.unit - t
    if not is_invertible(ctx, s):
        raise CayleyDomainError("e - t is not invertible")
    inv = jordan_inverse(ctx, s)
    t1 = jordan_product(ctx, inv, ctx.unit + t)
    v1 = 2 * _SQRT2 * tp(inv, ctx.unit, v)
    return SiegelPoint(ctx.e, t1, v1)


def siegel_defect(sp: SiegelPoint, tol: Tolerances = DEFAULT_TOL) -> Element:
    """t + t* - Phi(v, v)."""
    ctx = jordan_context(sp.e, tol)
    return sp.t + involution(ctx, sp.t) - 2 * tp(ctx.unit, sp.v, sp.v)


def siegel_membership(e, sp: SiegelPoint, tol: Tolerances = DEFAULT_TOL) -> SiegelMembership:
    ctx = jordan_context(e, tol)
    x = siegel_defect(sp, tol)
    if omega_membership(ctx, x) is ConeMembership.INTERIOR:
        return SiegelMembership.INTERIOR
    scale = max(1.0, sp.t.norm(), sp.v.norm() ** 2)
    if x.norm() <= 10 * tol.eq * scale:
        return SiegelMembership.ON_N
    return SiegelMembership.OUTSIDE


# ---------------------------------------------------------------------------
# hulls of the Shilov boundary


@dataclass(frozen=True)
class HullSplit:
    tube: tuple
    nontube: tuple


def hull_split(sys, tol: Tolerances = DEFAULT_TOL) -> HullSplit:
    flags = classify_tube(sys, tol)
    return HullSplit(tuple(i for i, f in enumerate(flags) if f),
                     tuple(i for i, f in enumerate(flags) if not f))


class HullKind(str, enum.Enum):
    CONVEX = "convex"
    POLYNOMIAL = "polynomial"
    RATIONAL = "rational"


def hull_membership(sys, z: Element, kind, tol: Tolerances = DEFAULT_TOL,
                    split: HullSplit | None = None) -> bool:
    kind = HullKind(kind)
    closed = spectral_norm(z) <= 1 + tol.eq
    if kind is not HullKind.RATIONAL:
        return closed
    split = split or hull_split(sys, tol)
    if not closed:
        return False
    return all(shilov_membership(project_factor(sys, i, z), tol) for i in split.tube)


def rupp_symmetry_check(e, samples: int = 50, seed=0, tol: Tolerances = DEFAULT_TOL) -> dict:
    """The Peirce reflection of e fixes e, is -1 on E_1/2 and maps tripotents to tripotents."""
    e = certify(e, tol)
    pd = peirce_decompose(e, tol)
    rho = peirce_reflection(pd)
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    sys = e.system
    rank = tripotent_rank(e)
    fix = float(np.linalg.norm(rho @ to_vector(e.element) - to_vector(e.element)))
    half = float(np.linalg.norm(rho @ pd.P12 + pd.P12))
    worst = 0.0
    for k in range(samples):
        if k % 2:
            c = random_tripotent(sys, rank, rng).element
        else:
            c = random_k_action(sys, rng, scale=0.1)(e.element)
        img = from_vector(sys, rho @ to_vector(c))
        worst = max(worst, tripotent_residual(img))
    return {"fix_residual": fix, "half_residual": half, "tripotent_residual": worst,
            "totally_real": pd.dims[1] == 0 and pd.dims[2] == 0,
            "ok": max(fix, half, worst) <= 10 * tol.eq}
