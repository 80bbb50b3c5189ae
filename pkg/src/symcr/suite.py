"""Seeded invariant suite behind ``symcr suite``.

Every check is a function ``(rng, samples, tol) -> (residual, detail)``
registered with a default sample count and a residual threshold.  Checks are
seeded from a hash of (seed, check name), so running a subset or a different
order cannot change any individual result.
"""

from __future__ import annotations

import hashlib
import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import cr_models as crm
from . import domain_geometry as dg
from . import lie_construct as lc
from .config import Tolerances
from .jordan import (ConeMembership, exp_A, generic_norm, involution, jordan_context,
                     jordan_inverse, jordan_product, omega_membership, shilov_by_norm)
from .jts import CartanI, Element, from_vector, parse_system, random_element, to_vector, tp
from .peirce import (char_sigma, classify_tube, maximal_standard_tripotent,
                     peirce_decompose)
from .spectral import (element_with_singular_values, random_tripotent, shilov_membership,
                       shilov_membership_isometry, spectral_decompose,
                       spectral_norm)

AXIOM_SYSTEMS = ("I:2,1", "I:2,2", "I:3,2", "II:5")


@dataclass(frozen=True)
class SuiteConfig:
    seed: int = 42
    samples: int | None = None          # overrides every per-check count
    tol: float | None = None            # overrides every threshold
    filters: tuple = ()                 # module names; empty = all

    def __post_init__(self):
        if self.samples is not None and self.samples < 1:
            raise ValueError("sample count must be >= 1")
        if self.tol is not None and not self.tol > 0:
            raise ValueError("tolerance must be positive")

    def tolerances(self) -> Tolerances:
        if self.tol is None:
            return Tolerances()
        return Tolerances(eq=self.tol, cluster=self.tol, psd=self.tol)


@dataclass
class CheckResult:
    name: str
    module: str
    passed: bool
    residual: float
    threshold: float
    samples: int
    detail: dict = field(default_factory=dict)
    elapsed: float = 0.0

    def to_json(self, with_time: bool = True) -> dict:
        out = {"name": self.name, "module": self.module,
               "status": "pass" if self.passed else "fail",
               "residual": _jsonable(self.residual), "threshold": self.threshold,
               "samples": self.samples, "detail": self.detail}
        if with_time:
            out["elapsed"] = self.elapsed
        return out


@dataclass
class SuiteReport:
    seed: int
    checks: list

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self, with_time: bool = True) -> dict:
        return {"seed": self.seed, "overall": "pass" if self.passed else "fail",
                "passed": self.passed, "n_checks": len(self.checks),
                "n_failed": sum(not c.passed for c in self.checks),
                "checks": [c.to_json(with_time) for c in self.checks]}


@dataclass(frozen=True)
class Check:
    name: str
    fn: Callable
    samples: int
    threshold: float

    @property
    def module(self) -> str:
        return self.name.split(".")[0]


REGISTRY: list[Check] = []


def check(name: str, samples: int, threshold: float):
    def deco(fn):
        REGISTRY.append(Check(name, fn, samples, threshold))
        return fn
    return deco


def check_rng(seed: int, name: str) -> np.random.Generator:
    digest = hashlib.sha256(f"{seed}:{name}".encode()).digest()
    return np.random.default_rng(int.from_bytes(digest[:8], "little"))


# ---------------------------------------------------------------------------
# jts / peirce / spectral


@check("jts.jordan_identity", 50, 1e-9)
def _jordan_identity(rng, n, tol):
    worst = 0.0
    for spec in AXIOM_SYSTEMS:
        s = parse_system(spec)
        for _ in range(n):
            a, b, x, y, z = (random_element(s, rng) for _ in range(5))
            lhs = tp(a, b, tp(x, y, z))
            rhs = tp(tp(a, b, x), y, z) - tp(x, tp(b, a, y), z) + tp(x, y, tp(a, b, z))
            sym = (tp(x, y, z) - tp(z, y, x)).norm()
            worst = max(worst, (lhs - rhs).norm() / max(1.0, lhs.norm()), sym)
    return worst, {}


@check("peirce.projectors", 200, 1e-9)
def _projectors(rng, n, tol):
    worst, spec_dev = 0.0, 0.0
    eye_res = 0.0
    for k in range(n):
        s = parse_system(AXIOM_SYSTEMS[k % len(AXIOM_SYSTEMS)])
        e = random_tripotent(s, int(rng.integers(0, s.rank + 1)), rng)
        pd = peirce_decompose(e, tol)
        Ps = (pd.P1, pd.P12, pd.P0)
        eye_res = max(eye_res, float(np.abs(sum(Ps) - np.eye(s.dim)).max()))
        for i, P in enumerate(Ps):
            worst = max(worst, float(np.abs(P @ P - P).max()))
            for Q in Ps[i + 1:]:
                worst = max(worst, float(np.abs(P @ Q).max()))
        ev = np.linalg.eigvalsh((pd.mu + pd.mu.conj().T) / 2)
        spec_dev = max(spec_dev, float(np.min(np.abs(ev[:, None] - [0, .5, 1]), axis=1).max()))
    detail = {"spectrum_deviation": spec_dev, "spectrum_threshold": tol.cluster}
    res = max(worst, eye_res)
    if spec_dev > tol.cluster:
        res = max(res, np.inf)
    return res, detail


@check("peirce.tube_classification", 1, 1e-9)
def _tube(rng, n, tol):
    expect = {"I:2,2": [True], "I:3,2": [False], "II:5": [False], "II:7": [False],
              "I:2,2xI:2,1": [True, False]}
    bad = sum(classify_tube(parse_system(k), tol) != v for k, v in expect.items())
    return float(bad), {"violations": bad}


@check("peirce.char_sigma", 100, 1e-8)
def _char_sigma(rng, n, tol):
    worst = 0.0
    for k in range(n):
        s = parse_system(AXIOM_SYSTEMS[k % len(AXIOM_SYSTEMS)])
        a = random_tripotent(s, int(rng.integers(1, s.rank + 1)), rng)
        pd = peirce_decompose(a, tol)
        sig = char_sigma(pd)
        va = to_vector(a.element)
        worst = max(worst, float(np.linalg.norm(sig @ va - va)))
        worst = max(worst, float(np.abs(sig @ pd.P0 + pd.P0).max()))
        for _ in range(50):
            z = random_element(s, rng)
            img = from_vector(s, sig @ to_vector(z))
            worst = max(worst, abs(spectral_norm(img) - spectral_norm(z)) / spectral_norm(z))
    return worst, {}


@check("spectral.oracle", 200, 1e-8)
def _spectral(rng, n, tol):
    rec, lam = 0.0, 0.0
    for spec in AXIOM_SYSTEMS:
        s = parse_system(spec)
        for _ in range(n):
            a = random_element(s, rng)
            sd = spectral_decompose(a)
            rec = max(rec, sd.residual)
            sv = np.linalg.svd(a.matrix, compute_uv=False)
            ref = sv[: s.rank] if isinstance(s, CartanI) else sv[0: 2 * s.rank: 2]
            lam = max(lam, float(np.abs(sd.lambdas - ref).max()))
    res = rec if lam <= tol.eq else np.inf
    return res, {"reconstruction": rec, "lambda_deviation": lam}


def boundary_point(s, rng):
    """Point with largest singular value 1; with probability 1/2 all equal 1."""
    if rng.random() < 0.5:
        lams = np.ones(s.rank)
    else:
        lams = np.concatenate([[1.0], rng.uniform(0, 0.999, s.rank - 1)])
    return element_with_singular_values(s, lams, rng)


@check("spectral.shilov", 500, 0.0)
def _shilov(rng, n, tol):
    bad = 0
    for spec in ("I:3,2", "I:2,2"):
        s = parse_system(spec)
        ctx = jordan_context(maximal_standard_tripotent(s), tol) if s.is_tube else None
        for _ in range(n):
            z = boundary_point(s, rng)
            a = shilov_membership(z, tol)
            b = shilov_membership_isometry(z, tol)
            c = shilov_by_norm(ctx, z) if ctx is not None else a
            bad += not (a == b == c)
    return float(bad), {"violations": bad}


# ---------------------------------------------------------------------------
# jordan


@check("jordan.algebra", 50, 1e-8)
def _jordan(rng, n, tol):
    worst = 0.0
    for spec in ("I:2,2", "I:3,3", "I:3,2", "II:5"):
        s = parse_system(spec)
        ctx = jordan_context(random_tripotent(s, s.rank, rng), tol)
        e = ctx.unit
        for _ in range(n):
            a = ctx.peirce.project("1", random_element(s, rng))
            b = ctx.peirce.project("1", random_element(s, rng))
            worst = max(worst, (jordan_product(ctx, a, e) - a).norm(),
                        (jordan_product(ctx, a, b) - jordan_product(ctx, b, a)).norm())
            a2 = jordan_product(ctx, a, a)
            lhs = jordan_product(ctx, a, jordan_product(ctx, a2, b))
            rhs = jordan_product(ctx, a2, jordan_product(ctx, a, b))
            worst = max(worst, (lhs - rhs).norm() / max(1.0, lhs.norm()))
            ai = jordan_inverse(ctx, a)
            worst = max(worst, (jordan_product(ctx, a, ai) - e).norm())
            h = (a + involution(ctx, a)) / 2
            x = jordan_product(ctx, h, h) + 1e-3 * e
            if omega_membership(ctx, x) is not ConeMembership.INTERIOR:
                worst = np.inf
            exp_A(ctx, h / max(1.0, h.norm()))
            if s.is_tube and isinstance(s, CartanI):
                blk = ctx.block(a)
                worst = max(worst, abs(generic_norm(ctx, a) - np.linalg.det(blk))
                            / max(1.0, abs(np.linalg.det(blk))))
    return worst, {}


# ---------------------------------------------------------------------------
# domain geometry


@check("domain_geometry.foll_bracket", 100, 1e-8)
def _foll(rng, n, tol):
    worst = 0.0
    for spec in ("I:3,2", "II:5"):
        s = parse_system(spec)
        for _ in range(n):
            e = random_tripotent(s, s.rank, rng)
            pd = peirce_decompose(e, tol)
            u = pd.project("1/2", random_element(s, rng))
            v = pd.project("1/2", random_element(s, rng))
            d = dg.foll_bracket(e, u, v, tol) - dg.foll_bracket_closed_form(e, u, v)
            worst = max(worst, d.norm())
    return worst, {}


@check("domain_geometry.levi_cone", 500, 1e-6)
def _levi_cone(rng, n, tol):
    details, worst = {}, 0.0
    e21 = maximal_standard_tripotent(parse_system("I:2,1"))
    r = dg.levi_cone_probe(e21, 1, rng, tol)
    details["I:2,1"] = bool(r)
    worst = max(worst, max(r.residuals) if r.ok else np.inf)
    for spec in ("I:3,2", "II:5"):
        s = parse_system(spec)
        r = dg.levi_cone_probe(random_tripotent(s, s.rank, rng), n, rng, tol)
        details[spec] = bool(r)
        worst = max(worst, max(r.residuals) if r.ok else np.inf)
    r = dg.levi_cone_probe(maximal_standard_tripotent(parse_system("I:2,2")), n, rng, tol)
    details["I:2,2"] = r.reason
    if r.ok or "E_1/2 = 0" not in r.reason:
        worst = np.inf
    return worst, details


@check("domain_geometry.cayley", 100, 1e-8)
def _cayley(rng, n, tol):
    fixed, interior_bad, on_n = 0.0, 0, 0.0
    for spec in ("I:2,2", "I:3,2"):
        s = parse_system(spec)
        e = maximal_standard_tripotent(s)
        ee = e.element
        fixed = max(fixed, dg.cayley(e, -ee, tol).t.norm(), dg.cayley(e, -ee, tol).v.norm())
        for sgn in (1, -1):
            sp = dg.cayley(e, sgn * 1j * ee, tol)
            fixed = max(fixed, (sp.t - sgn * 1j * ee).norm(), sp.v.norm())
        for _ in range(n):
            r = rng.uniform(0, 0.999, s.rank)
            z = element_with_singular_values(s, r, rng)
            if dg.siegel_membership(e, dg.cayley(e, z, tol), tol) \
                    is not dg.SiegelMembership.INTERIOR:
                interior_bad += 1
        for _ in range(n):
            z = element_with_singular_values(s, np.ones(s.rank), rng)
            sp = dg.cayley(e, z, tol)
            on_n = max(on_n, dg.siegel_defect(sp, tol).norm() / max(1.0, sp.t.norm()))
    return max(fixed, on_n, np.inf if interior_bad else 0.0), \
        {"fixed_points": fixed, "interior_violations": interior_bad, "N_residual": on_n}


def hull_sample(factors, rng):
    blocks = []
    for f in factors:
        kind = rng.integers(0, 4)
        if kind == 0:
            lams = np.ones(f.rank)
        elif kind == 1:
            lams = rng.uniform(0, 0.999, f.rank)
        elif kind == 2:
            lams = np.concatenate([[1.0], rng.uniform(0, 1, f.rank - 1)])
        else:
            lams = rng.uniform(0, 1.5, f.rank)
        blocks.append(element_with_singular_values(f, np.sort(lams)[::-1], rng).matrix)
    return blocks


@check("domain_geometry.hulls", 1000, 0.0)
def _hulls(rng, n, tol):
    s = parse_system("I:2,2xI:2,1")
    split = dg.hull_split(s, tol)
    bad = 0
    for _ in range(n):
        z = Element(s, tuple(hull_sample(s.factors, rng)))
        c = dg.hull_membership(s, z, "convex", tol, split)
        p = dg.hull_membership(s, z, "polynomial", tol, split)
        r = dg.hull_membership(s, z, "rational", tol, split)
        z1, z2 = z.blocks
        prod = bool(np.linalg.norm(z1.conj().T @ z1 - np.eye(2), 2) <= tol.eq
                    and np.linalg.norm(z2, 2) <= 1 + tol.eq)
        bad += (r and not p) or (p and not c) or (r != prod)
    return float(bad), {"violations": bad}


@check("domain_geometry.rupp", 10, 1e-9)
def _rupp(rng, n, tol):
    worst = 0.0
    for spec in ("I:3,2", "II:5"):
        s = parse_system(spec)
        for k in range(1, s.rank + 1):
            rep = dg.rupp_symmetry_check(random_tripotent(s, k, rng), n, rng, tol)
            worst = max(worst, rep["fix_residual"], rep["half_residual"],
                        rep["tripotent_residual"])
    return worst, {}


# ---------------------------------------------------------------------------
# cr models


@check("cr_models.sphere", 100, 1e-12)
def _sphere(rng, n, tol):
    worst = 0.0
    for _ in range(n):
        a, z, w = (crm.random_sphere_point(3, rng) for _ in range(3))
        sz = crm.sphere_symmetry(a, z, tol)
        worst = max(worst, abs(np.linalg.norm(sz) - 1),
                    float(np.linalg.norm(crm.sphere_symmetry(a, sz, tol) - z)),
                    abs(np.vdot(sz, crm.sphere_symmetry(a, w, tol)) - np.vdot(z, w)))
    return worst, {}


@check("cr_models.quadric", 200, 1e-10)
def _quadric(rng, n, tol):
    m = crm.heisenberg_model()
    worst = 0.0
    for _ in range(n):
        a = crm.QuadricPoint(*m.random_point(rng), 0.0)
        p = crm.QuadricPoint(*m.random_point(rng), 0.0)
        q = crm.quadric_action(m, a.z, m.random_v(rng), p)
        r = crm.quadric_symmetry(m, a, p)
        back = crm.quadric_symmetry(m, a, r)
        worst = max(worst, q.residual, r.residual,
                    float(np.linalg.norm(back.z - p.z) + np.linalg.norm(back.w - p.w)))
    return worst, {}


@check("cr_models.levi", 1, 1e-9)
def _levi(rng, n, tol):
    sph = crm.sphere_levi_check()
    dev = max(crm.quadric_levi_check(crm.heisenberg_model()), sph["levi_residual"],
              sph["bracket_residual"])
    return dev, {"sphere_levi_ee": [sph["levi_ee"][0].real, sph["levi_ee"][0].imag]}


@check("cr_models.heis3", 300, 1e-10)
def _heis3(rng, n, tol):
    worst, assoc = 0.0, 0.0
    for _ in range(n):
        a, b, c = (crm.heis3_random(rng) for _ in range(3))
        ab = crm.heis3_product(a, b, tol)
        worst = max(worst, ab.residual, crm.heis3_symmetry(a, tol).residual)
        lhs = crm.heis3_product(ab, c, tol)
        rhs = crm.heis3_product(a, crm.heis3_product(b, c, tol), tol)
        assoc = max(assoc, float(np.abs(np.subtract(lhs.as_tuple(), rhs.as_tuple())).max()))
    return max(worst, assoc), {"closure": worst, "associativity": assoc}


@check("cr_models.syin5", 200, 1e-10)
def _syin5(rng, n, tol):
    worst = 0.0
    for _ in range(n):
        p = crm.syin5_sample(seed=rng)
        worst = max(worst, crm.syin5_residual(*p), crm.syin5_residual(*crm.syin5_symmetry(p)))
    return worst, {}


# ---------------------------------------------------------------------------
# lie constructions


@check("lie_construct.vorh", 1, 1e-10)
def _vorh(rng, n, tol):
    detail = {}
    bad = 0
    for k in range(3, 6):
        d = lc.build_vorh(k, tol)
        f = lc.filtration(d.g, d.h, d.k)
        integ = lc.integrability_check(d)
        detail[str(k)] = {"integrable": integ, "minimal": f.minimal, "kappa": f.kappa}
        bad += integ or not f.minimal or not lc.closure_check(d.g)[0]
    return float(bad), {**detail, "violations": bad}


def tett_pairs(nmax: int = 9):
    return [(n, d) for n in range(2, nmax + 1) for d in range(1, n // 2 + 1) if n > d]


@check("lie_construct.tett_kappa", 1, 0.0)
def _tett_kappa(rng, n, tol):
    mismatches = []
    for nn, d in tett_pairs():
        data = lc.build_tett(nn, d, tol)
        k = lc.filtration(data.g, data.h).kappa
        if k != lc.tett_kappa_formula(nn, d):
            mismatches.append(f"{nn},{d}:{k}!={lc.tett_kappa_formula(nn, d)}")
    return float(len(mismatches)), {"mismatches": mismatches, "violations": len(mismatches)}


@check("lie_construct.tett_integrable", 1, 1e-10)
def _tett_int(rng, n, tol):
    worst = 0.0
    for nn, d in tett_pairs():
        data = lc.build_tett(nn, d, tol)
        worst = max(worst, lc.integrability_residual(data), lc.j_bracket_residual(data),
                    lc.closure_check(data.g)[1], lc.jacobi_residual(data.g))
    return worst, {}


@check("lie_construct.su_sigma", 1, 1e-10)
def _su(rng, n, tol):
    worst = 0.0
    for p, q in ((1, 1), (2, 1), (2, 2), (3, 1)):
        s = lc.build_su_sigma(p, q, tol)
        fd = lc.fix_decompose(s.g, s.tau)
        worst = max(worst, s.span_residual(), lc.integrability_residual(s.data),
                    lc.kh_residual(s.data), lc.j_commutes_residual(s.data),
                    *fd.residuals.values())
    return worst, {}


# ---------------------------------------------------------------------------


def modules() -> list[str]:
    return sorted({c.module for c in REGISTRY})


def run_suite(config: SuiteConfig) -> SuiteReport:
    tol = config.tolerances()
    unknown = set(config.filters) - set(modules())
    if unknown:
        raise ValueError(f"unknown module filter(s): {sorted(unknown)}")
    results = []
    for c in REGISTRY:
        if config.filters and c.module not in config.filters:
            continue
        samples = config.samples or c.samples
        threshold = c.threshold if config.tol is None else config.tol
        t0 = time.perf_counter()
        try:
            residual, detail = c.fn(check_rng(config.seed, c.name), samples, tol)
            residual = float(residual)
            passed = residual <= threshold
        except Exception as exc:  # a check that cannot run counts as failed
            residual, detail, passed = float("inf"), {"error": f"{type(exc).__name__}: {exc}"}, False
        results.append(CheckResult(c.name, c.module, bool(passed), residual, threshold,
                                   samples, _jsonable(detail), time.perf_counter() - t0))
    return SuiteReport(config.seed, results)


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj) if np.isfinite(obj) else str(float(obj))
    return obj
