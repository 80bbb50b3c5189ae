"""Explicit symmetric CR model manifolds: spheres, quadrics and two nilpotent groups."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .config import DEFAULT_TOL, Tolerances
from .errors import CayleyDomainError, DomainPreconditionError

_SQRT2 = np.sqrt(2.0)


def _vec(x) -> np.ndarray:
    return np.atleast_1d(np.asarray(x, dtype=complex))


def _inner(a, b) -> complex:
    """(a|b), linear in b."""
    return complex(np.vdot(a, b))


def _rng(seed):
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def random_sphere_point(n: int, rng) -> np.ndarray:
    z = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return z / np.linalg.norm(z)


# ---------------------------------------------------------------------------
# sphere, dual sphere, Cayley transform


def sphere_symmetry(a, z, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """s_a(z) = 2(a|z)a - z."""
    a, z = _vec(a), _vec(z)
    if abs(np.linalg.norm(a) - 1) > tol.eq:
        raise DomainPreconditionError("base point must be a unit vector")
    return 2 * _inner(a, z) * a - z


def sphere_symmetry_matrix(a) -> np.ndarray:
    a = _vec(a)
    return 2 * np.outer(a, a.conj()) - np.eye(a.size)


def dual_sphere_residual(t, v) -> float:
    t, v = complex(t), _vec(v)
    return abs(abs(t) ** 2 - np.vdot(v, v).real - 1)


def dual_sphere_membership(t, v, tol: Tolerances = DEFAULT_TOL) -> bool:
    return dual_sphere_residual(t, v) <= tol.eq * max(1.0, abs(complex(t)) ** 2)


def sphere_to_dual(z, tol: Tolerances = DEFAULT_TOL):
    """(t, v) -> (1/t, v/t) from the sphere minus {t = 0} to the dual sphere."""
    z = _vec(z)
    if abs(np.linalg.norm(z) - 1) > 10 * tol.eq:
        raise DomainPreconditionError("point is not on the sphere")
    t, v = z[0], z[1:]
    if abs(t) <= tol.eq:
        raise DomainPreconditionError("t = 0 is outside the chart")
    return 1 / t, v / t


def sphere_cayley(v, t, tol: Tolerances = DEFAULT_TOL):
    """(v, t) -> (sqrt2 v / (1-t), (1+t)/(1-t)), onto t + conj t = (v|v)."""
    v, t = _vec(v), complex(t)
    if abs(1 - t) <= tol.eq:
        raise CayleyDomainError("the point t = 1 is deleted")
    return _SQRT2 * v / (1 - t), (1 + t) / (1 - t)


def heisenberg_n_residual(v, t) -> float:
    v = _vec(v)
    return abs(2 * complex(t).real - np.vdot(v, v).real)


# ---------------------------------------------------------------------------
# generalized Heisenberg quadrics


@dataclass(frozen=True, eq=False)
class QuadricModel:
    """M = {(z, w) : w + w* = Phi(z, z)} with Phi(u, v)_l = u^H H_l v and w* = C conj(w)."""

    forms: np.ndarray                        # (dim_f, dim_e, dim_e)
    conj: np.ndarray | None = None           # (dim_f, dim_f), default identity
    tol: Tolerances = field(default=DEFAULT_TOL)

    def __post_init__(self):
        H = np.asarray(self.forms, dtype=complex)
        if H.ndim != 3 or H.shape[1] != H.shape[2]:
            raise ValueError("forms must have shape (dim_f, dim_e, dim_e)")
        object.__setattr__(self, "forms", H)
        C = np.eye(H.shape[0], dtype=complex) if self.conj is None \
            else np.asarray(self.conj, dtype=complex)
        if np.linalg.norm(C @ C.conj() - np.eye(C.shape[0])) > 1e-12:
            raise ValueError("conjugation must be involutive")
        object.__setattr__(self, "conj", C)

    @property
    def dim_e(self) -> int:
        return self.forms.shape[1]

    @property
    def dim_f(self) -> int:
        return self.forms.shape[0]

    def phi(self, u, v) -> np.ndarray:
        return np.einsum("i,lij,j->l", _vec(u).conj(), self.forms, _vec(v))

    def star(self, w) -> np.ndarray:
        return self.conj @ _vec(w).conj()

    def residual(self, z, w) -> float:
        w = _vec(w)
        return float(np.linalg.norm(w + self.star(w) - self.phi(z, z)))

    def random_point(self, rng, scale: float = 1.0):
        z = scale * (rng.standard_normal(self.dim_e) + 1j * rng.standard_normal(self.dim_e))
        return z, self.phi(z, z) / 2 + self.random_v(rng, scale)

    def random_v(self, rng, scale: float = 1.0) -> np.ndarray:
        w = scale * (rng.standard_normal(self.dim_f) + 1j * rng.standard_normal(self.dim_f))
        return (w - self.star(w)) / 2


def heisenberg_model() -> QuadricModel:
    """E = F = C with Phi(u, v) = conj(u) v."""
    return QuadricModel(np.ones((1, 1, 1)))


@dataclass(frozen=True)
class QuadricPoint:
    z: np.ndarray
    w: np.ndarray
    residual: float


def _point(m: QuadricModel, z, w) -> QuadricPoint:
    return QuadricPoint(_vec(z), _vec(w), m.residual(z, w))


def _require_on(m: QuadricModel, z, w):
    scale = max(1.0, float(np.linalg.norm(_vec(z))) ** 2, float(np.linalg.norm(_vec(w))))
    if m.residual(z, w) > m.tol.eq * scale:
        raise DomainPreconditionError("point is not on the quadric")


def quadric_membership(m: QuadricModel, z, w) -> bool:
    scale = max(1.0, float(np.linalg.norm(_vec(z))) ** 2, float(np.linalg.norm(_vec(w))))
    return m.residual(z, w) <= m.tol.eq * scale


def quadric_action(m: QuadricModel, e, vcen, point) -> QuadricPoint:
    """(z, w) -> (z + e, w + Phi(e, z) + Phi(e, e)/2 + v) with v in V."""
    z, w = point.z if isinstance(point, QuadricPoint) else point[0], \
        point.w if isinstance(point, QuadricPoint) else point[1]
    _require_on(m, z, w)
    e, vcen = _vec(e), _vec(vcen)
    if np.linalg.norm(vcen + m.star(vcen)) > m.tol.eq * max(1.0, np.linalg.norm(vcen)):
        raise DomainPreconditionError("translation part must lie in V")
    return _point(m, _vec(z) + e, _vec(w) + m.phi(e, z) + m.phi(e, e) / 2 + vcen)


def quadric_symmetry(m: QuadricModel, a, point) -> QuadricPoint:
    """Symmetry at a = (e, c): (z, w) -> (2e - z, w + Phi(2e, e - z))."""
    e, c = (a.z, a.w) if isinstance(a, QuadricPoint) else a
    z, w = (point.z, point.w) if isinstance(point, QuadricPoint) else point
    _require_on(m, e, c)
    _require_on(m, z, w)
    e, z = _vec(e), _vec(z)
    return _point(m, 2 * e - z, _vec(w) + m.phi(2 * e, e - z))


def quadric_symmetry_linear(m: QuadricModel, a) -> np.ndarray:
    """Real-linear part of the symmetry at a, acting on (dz, dw) as a complex map.

    Returned as the block matrix [[-1, 0], [-2 Phi(e, .), 1]] over C^{dim_e + dim_f}.
    """
    e = _vec(a.z if isinstance(a, QuadricPoint) else a[0])
    de, df = m.dim_e, m.dim_f
    out = np.zeros((de + df, de + df), complex)
    out[:de, :de] = -np.eye(de)
    out[de:, de:] = np.eye(df)
    out[de:, :de] = -2 * np.einsum("i,lij->lj", e.conj(), m.forms)
    return out


# -- Levi form from brackets of tangent fields ------------------------------


def levi_from_omega(omega, x, y, mult_i=lambda q: 1j * q):
    """4 L(x, y) = (w(x,y) + w(ix,iy)) + i (w(ix,y) - w(x,iy))."""
    ix, iy = 1j * np.asarray(x), 1j * np.asarray(y)
    return (omega(x, y) + omega(ix, iy) + mult_i(omega(ix, y) - omega(x, iy))) / 4


def quadric_omega(m: QuadricModel, xi, eta) -> np.ndarray:
    """Transversal part of [X^xi, X^eta] at the origin, X^xi(z, w) = (xi, Phi(z, xi)).

    The fields are affine, DX^eta . (h_z, h_w) = (0, Phi(h_z, eta)), and
    [X, Y] = DY.X - DX.Y; the w-component is the class modulo H_o.
    """
    return m.phi(xi, eta) - m.phi(eta, xi)


def quadric_levi_check(m: QuadricModel) -> float:
    """Max deviation between the bracket Levi form at the origin and Phi over a basis."""
    basis = list(np.eye(m.dim_e, dtype=complex))
    dev = 0.0
    for x in basis:
        for y in basis:
            L = levi_from_omega(lambda a, b: quadric_omega(m, a, b), x, y)
            dev = max(dev, float(np.linalg.norm(L - m.phi(x, y))))
    return dev


def sphere_levi_check() -> dict:
    """Unit sphere in C^2 at a = (1, 0) with the field X(z, w) = s(-conj w, conj z)."""
    a = np.array([1, 0], complex)

    def field(s):
        return lambda p: s * np.array([-np.conj(p[1]), np.conj(p[0])])

    def dfield(s):
        return lambda p, h: s * np.array([-np.conj(h[1]), np.conj(h[0])])

    def bracket(s, t, p):
        return dfield(t)(p, field(s)(p)) - dfield(s)(p, field(t)(p))

    def omega(x, y):
        # x, y are coefficients of e = (0, 1); T_a/H_a is spanned by i a
        return bracket(complex(x), complex(y), a)[0] * a

    jxx = bracket(1j, 1.0, a)
    L = levi_from_omega(omega, 1.0, 1.0)
    return {"bracket_JX_X": jxx, "bracket_residual": float(np.linalg.norm(jxx - 2j * a)),
            "levi_ee": L, "levi_residual": float(np.linalg.norm(L + a))}


def quadric_linear_check(m: QuadricModel, eta, eps, samples: int = 200, seed=0) -> bool:
    """If Phi(eta z, eta z) = eps Phi(z, z) on a spanning set, (z, w) -> (eta z, eps w) preserves M."""
    eta = np.atleast_2d(np.asarray(eta, dtype=complex))
    eps = np.atleast_2d(np.asarray(eps, dtype=complex))
    rng = _rng(seed)
    de = m.dim_e
    probes = list(np.eye(de, dtype=complex))
    probes += [(probes[i] + c * probes[j]) for i in range(de) for j in range(de) if i != j
               for c in (1, 1j)]
    probes += [rng.standard_normal(de) + 1j * rng.standard_normal(de) for _ in range(4)]
    scale = max(1.0, float(np.linalg.norm(eta)) ** 2)
    for z in probes:
        if np.linalg.norm(m.phi(eta @ z, eta @ z) - eps @ m.phi(z, z)) > m.tol.eq * scale:
            return False
    # eps must commute with the conjugation for the easy direction
    if np.linalg.norm(eps @ m.conj - m.conj @ eps.conj()) > m.tol.eq:
        return False
    for _ in range(samples):
        z, w = m.random_point(rng)
        if not quadric_membership(m, eta @ z, eps @ w):
            return False
    return True


# ---------------------------------------------------------------------------
# the three-step group in C^3


@dataclass(frozen=True)
class Heis3Point:
    z: complex
    w: complex
    v: complex

    @property
    def residual(self) -> float:
        return heis3_residual(self)

    def as_tuple(self):
        return (self.z, self.w, self.v)


def heis3_residual(x: Heis3Point) -> float:
    z, w, v = x.z, x.w, x.v
    return abs(w.imag - abs(z) ** 2) + abs(v.imag - (w * np.conj(z)).imag)


def _require_heis3(*xs: Heis3Point, tol: Tolerances = DEFAULT_TOL):
    for x in xs:
        scale = max(1.0, abs(x.z) ** 2, abs(x.w) * abs(x.z), abs(x.w), abs(x.v))
        if heis3_residual(x) > tol.eq * scale:
            raise DomainPreconditionError("point is not on the three-step manifold")


HEIS3_UNIT = Heis3Point(0j, 0j, 0j)


def heis3_random(rng, scale: float = 1.0) -> Heis3Point:
    z = scale * complex(rng.standard_normal(), rng.standard_normal())
    w = complex(scale ** 2 * rng.standard_normal(), abs(z) ** 2)
    re_v = scale ** 3 * rng.standard_normal()
    return Heis3Point(z, w, complex(re_v, (w * np.conj(z)).imag))


def heis3_product(a: Heis3Point, x: Heis3Point, tol: Tolerances = DEFAULT_TOL) -> Heis3Point:
    """(a,b,c) . (z,w,v) = (z+a, w + 2i conj(a) z + b, v + (2i conj(a)^2 - conj(b)) z + (a + 2 conj(a)) w + c)."""
    _require_heis3(a, x, tol=tol)
    A, B, C = a.as_tuple()
    z, w, v = x.as_tuple()
    ab = np.conj(A)
    return Heis3Point(complex(z + A), complex(w + 2j * ab * z + B),
                      complex(v + (2j * ab ** 2 - np.conj(B)) * z + (A + 2 * ab) * w + C))


def heis3_symmetry(x: Heis3Point, tol: Tolerances = DEFAULT_TOL) -> Heis3Point:
    _require_heis3(x, tol=tol)
    return Heis3Point(-x.z, x.w, -x.v)


def heis3_dilation(t: float, x: Heis3Point, tol: Tolerances = DEFAULT_TOL) -> Heis3Point:
    if not np.isreal(t) or t == 0:
        raise ValueError("dilation factor must be a nonzero real")
    _require_heis3(x, tol=tol)
    t = float(np.real(t))
    return Heis3Point(t * x.z, t ** 2 * x.w, t ** 3 * x.v)


# ---------------------------------------------------------------------------
# the n = 5 realization in C^5


def syin5_residual(z, w, v1, v2, u) -> float:
    zz = abs(z) ** 2
    r1 = w + np.conj(w) - zz
    r2 = v1 - np.conj(v2) - (zz * (z - np.conj(z)) / 6 + np.conj(w) * z)
    r3 = u + np.conj(u) - (abs(w) ** 2 + (z * np.conj(v1) + np.conj(z) * v1) + zz ** 2 / 4)
    return float(abs(r1) + abs(r2) + abs(r3))


def syin5_membership(z, w, v1, v2, u, tol: Tolerances = DEFAULT_TOL) -> bool:
    scale = max(1.0, abs(z) ** 4, abs(w) ** 2, abs(v1) * abs(z), abs(u))
    return syin5_residual(z, w, v1, v2, u) <= tol.eq * scale


def syin5_sample(z=None, beta=None, v2=None, gamma=None, seed=0) -> tuple:
    """Solve the defining equations for w, v1, Re u from free parameters; missing ones are drawn."""
    rng = _rng(seed)
    z = complex(rng.standard_normal(), rng.standard_normal()) if z is None else complex(z)
    beta = rng.standard_normal() if beta is None else float(beta)
    v2 = complex(rng.standard_normal(), rng.standard_normal()) if v2 is None else complex(v2)
    gamma = rng.standard_normal() if gamma is None else float(gamma)
    zz = abs(z) ** 2
    w = complex(zz / 2, beta)
    v1 = np.conj(v2) + zz * (z - np.conj(z)) / 6 + np.conj(w) * z
    re_u = (abs(w) ** 2 + 2 * (np.conj(z) * v1).real + zz ** 2 / 4) / 2
    return (z, w, complex(v1), v2, complex(re_u, gamma))


def syin5_symmetry(point) -> tuple:
    z, w, v1, v2, u = point
    return (-z, w, -v1, -v2, u)
