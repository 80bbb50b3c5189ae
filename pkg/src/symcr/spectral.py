"""Singular values, frames, spectral norm and boundary/Shilov membership."""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_TOL, Tolerances
from .errors import DomainPreconditionError
from .jts import CartanI, Element, Tripotent, certify, element_to_json, random_unitary, zero
from .peirce import Frame, peirce_decompose, standard_frame


@dataclass(frozen=True, eq=False)
class SpectralDecomposition:
    element: Element
    frame: Frame
    lambdas: np.ndarray

    @property
    def residual(self) -> float:
        return (self.element - self.reconstruct()).norm()

    def reconstruct(self) -> Element:
        total = zero(self.element.system)
        for lam, m in zip(self.lambdas, self.frame):
            total = total + float(lam) * m.element
        return total


def _factor_decompose(f, z: np.ndarray):
    """(lambdas, frame blocks) of a single factor, lambdas descending."""
    if not np.any(z):
        mats = [m.element.matrix for m in standard_frame(f)]
        return np.zeros(f.rank), mats
    if isinstance(f, CartanI):
        u, s, vh = np.linalg.svd(z, full_matrices=True)
        mats = [np.outer(u[:, j], vh[j, :]) for j in range(f.q)]
        return s[: f.q], mats
    return _youla(f, z)


def _youla(f, z: np.ndarray):
    """Canonical form z = sum_j lam_j (x_j y_j' - y_j x_j') of an antisymmetric z.

    Deflation: for the top left singular vector x (value s) of the residual R,
    y = -R conj(x) / s is a unit vector orthogonal to x, and R - s(xy' - yx')
    annihilates conj(x), conj(y).
    """
    p, q = f.p, f.q
    R = z.copy()
    lams, pairs = [], []
    scale = np.linalg.norm(z, 2)
    for _ in range(q):
        u, s, _ = np.linalg.svd(R)
        if s[0] <= 1e-14 * scale:
            break
        x = u[:, 0]
        y = -R @ x.conj() / s[0]
        lams.append(s[0])
        pairs.append((x, y))
        R = R - s[0] * (np.outer(x, y) - np.outer(y, x))
    if len(pairs) < q:
        # complete with an orthonormal basis of the complement, paired arbitrarily
        used = np.column_stack([v for xy in pairs for v in xy]) if pairs else np.zeros((p, 0))
        proj = np.eye(p) - used @ used.conj().T
        w, _, _ = np.linalg.svd(proj)
        rest = w[:, : p - used.shape[1]]
        k = 0
        while len(pairs) < q:
            pairs.append((rest[:, k], rest[:, k + 1]))
            lams.append(0.0)
            k += 2
    mats = [np.outer(x, y) - np.outer(y, x) for x, y in pairs]
    return np.array(lams), mats


def spectral_decompose(a: Element) -> SpectralDecomposition:
    """a = sum_j lambda_j e_j over a frame, lambdas descending."""
    sys = a.system
    lams, members = [], []
    for idx, (f, z) in enumerate(zip(sys.factors, a.blocks)):
        fl, mats = _factor_decompose(f, z)
        for lam, m in zip(fl, mats):
            blocks = [np.zeros(g.shape, complex) for g in sys.factors]
            blocks[idx] = m
            lams.append(float(lam))
            members.append(Element(sys, tuple(blocks)))
    order = np.argsort(-np.array(lams), kind="stable")
    frame = Frame(tuple(certify(members[k]) for k in order))
    return SpectralDecomposition(a, frame, np.array(lams)[order])


def singular_values(a: Element) -> np.ndarray:
    """Descending singular values without building the frame."""
    vals = []
    for f, z in zip(a.system.factors, a.blocks):
        s = np.linalg.svd(z, compute_uv=False)
        vals.extend(s[: f.q] if isinstance(f, CartanI) else s[0: 2 * f.q: 2])
    return np.sort(np.array(vals))[::-1]


def spectral_norm(a: Element) -> float:
    return float(max(np.linalg.norm(z, 2) for z in a.blocks))


class Membership(str, enum.Enum):
    INTERIOR = "interior"
    BOUNDARY = "boundary"
    EXTERIOR = "exterior"


def domain_membership(a: Element, tol: Tolerances = DEFAULT_TOL) -> Membership:
    n = spectral_norm(a)
    if n < 1 - tol.eq:
        return Membership.INTERIOR
    if n <= 1 + tol.eq:
        return Membership.BOUNDARY
    return Membership.EXTERIOR


def shilov_membership(z: Element, tol: Tolerances = DEFAULT_TOL) -> bool:
    """All singular values equal to 1."""
    lam = singular_values(z)
    return bool(np.all(np.abs(lam - 1) <= tol.eq))


def shilov_membership_isometry(z: Element, tol: Tolerances = DEFAULT_TOL) -> bool:
    """z* z = 1 in every type I factor (the column-isometry test)."""
    for f, b in zip(z.system.factors, z.blocks):
        if not isinstance(f, CartanI):
            raise TypeError("isometry test applies to type I factors only")
        if np.linalg.norm(b.conj().T @ b - np.eye(f.q), 2) > tol.eq:
            return False
    return True


def tripotent_part(a: Element, tol: Tolerances = DEFAULT_TOL) -> tuple[Tripotent, Element]:
    """a = e + u with e a tripotent and u in D intersected with E_0(e)."""
    if spectral_norm(a) > 1 + tol.eq:
        raise DomainPreconditionError("tripotent_part needs a point of the closed domain")
    sd = spectral_decompose(a)
    e = zero(a.system)
    for lam, m in zip(sd.lambdas, sd.frame):
        if lam >= 1 - tol.cluster:
            e = e + m.element
    e = certify(e, tol)
    return e, a - e.element


class RankClass(str, enum.Enum):
    ZERO = "zero"
    MINIMAL = "minimal"
    MAXIMAL = "maximal"
    INTERMEDIATE = "intermediate"


def tripotent_rank_class(e, tol: Tolerances = DEFAULT_TOL) -> RankClass:
    e = certify(e, tol)
    if e.element.norm() <= tol.eq:
        return RankClass.ZERO
    d1, _, d0 = peirce_decompose(e, tol).dims
    if d0 == 0:
        return RankClass.MAXIMAL
    if d1 == 1:
        return RankClass.MINIMAL
    return RankClass.INTERMEDIATE


def random_tripotent(sys, k: int, seed) -> Tripotent:
    """Random tripotent of rank k (sum of k orthogonal minimal tripotents)."""
    if not 0 <= k <= sys.rank:
        raise ValueError(f"rank {k} out of range 0..{sys.rank}")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    # split k over the factors, filling in a random order
    caps = [f.rank for f in sys.factors]
    counts = [0] * len(caps)
    slots = [i for i, c in enumerate(caps) for _ in range(c)]
    for i in rng.permutation(len(slots))[:k]:
        counts[slots[i]] += 1
    blocks = []
    for f, c in zip(sys.factors, counts):
        if isinstance(f, CartanI):
            u, v = random_unitary(f.p, rng), random_unitary(f.q, rng)
            blocks.append(u[:, :c] @ v[:, :c].conj().T)
        else:
            u = random_unitary(f.p, rng)
            m = np.zeros(f.shape, complex)
            for j in range(c):
                x, y = u[:, 2 * j], u[:, 2 * j + 1]
                m += np.outer(x, y) - np.outer(y, x)
            blocks.append(m)
    return certify(Element(sys, tuple(blocks)))


def tripotent_rank(e) -> int:
    """Number of frame members summing to e."""
    lam = singular_values(e.element if isinstance(e, Tripotent) else e)
    return int(np.sum(lam > 0.5))


def decomposition_report(sd: SpectralDecomposition) -> dict:
    return {"lambdas": [float(x) for x in sd.lambdas],
            "rank": len(sd.frame),
            "frame": [element_to_json(m.element) for m in sd.frame],
            "residual": float(sd.residual)}


def element_with_singular_values(f, lams, rng) -> Element:
    """Random element of a simple factor f with prescribed singular values."""
    lams = np.asarray(lams, dtype=float)
    if lams.size != f.rank:
        raise ValueError(f"expected {f.rank} singular values")
    if isinstance(f, CartanI):
        u, v = random_unitary(f.p, rng), random_unitary(f.q, rng)
        return Element(f, ((u[:, : f.q] * lams) @ v.conj().T,))
    u = random_unitary(f.p, rng)
    m = np.zeros(f.shape, complex)
    for j, lam in enumerate(lams):
        x, y = u[:, 2 * j], u[:, 2 * j + 1]
        m += lam * (np.outer(x, y) - np.outer(y, x))
    return Element(f, (m,))
