"""Peirce decompositions, Peirce reflections and refined Peirce spaces."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement

import numpy as np

from .config import DEFAULT_TOL, Tolerances
from .errors import CertificationError, FrameError
from .jts import (CartanI, Element, Tripotent, apply_operator, certify,
                  mult_operator, tp, zero)

_ADMISSIBLE = np.array([0.0, 0.5, 1.0])


def certify_spectrum(mu: np.ndarray, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Eigenvalues of a Hermitian mu, checked to lie near {0, 1/2, 1}."""
    ev = np.linalg.eigvalsh((mu + mu.conj().T) / 2)
    dist = np.min(np.abs(ev[:, None] - _ADMISSIBLE[None, :]), axis=1)
    if dist.size and dist.max() > tol.cluster:
        raise CertificationError(
            f"spectrum of mu_e not in {{0, 1/2, 1}} (max deviation {dist.max():.3e})")
    return ev


@dataclass(frozen=True, eq=False)
class PeirceDecomposition:
    e: Tripotent
    mu: np.ndarray
    P1: np.ndarray
    P12: np.ndarray
    P0: np.ndarray
    dims: tuple[int, int, int]

    def project(self, which: str, z: Element) -> Element:
        op = {"1": self.P1, "1/2": self.P12, "0": self.P0}[which]
        return apply_operator(op, z)

    def residual_in(self, which: str, z: Element) -> float:
        """Distance from z to the Peirce space ``which``."""
        return (z - self.project(which, z)).norm()


def peirce_decompose(e, tol: Tolerances = DEFAULT_TOL) -> PeirceDecomposition:
    """Projectors onto E_1, E_1/2, E_0 as polynomials in mu_e."""
    e = certify(e, tol)
    sys = e.system
    mu = mult_operator(sys, e.element)
    certify_spectrum(mu, tol)
    eye = np.eye(sys.dim)
    P1 = mu @ (2 * mu - eye)
    P12 = 4 * mu @ (eye - mu)
    P0 = (eye - mu) @ (eye - 2 * mu)
    dims = tuple(int(round(np.trace(P).real)) for P in (P1, P12, P0))
    return PeirceDecomposition(e, mu, P1, P12, P0, dims)


def peirce_reflection(e, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """rho = exp(2 pi i mu) = P1 - P1/2 + P0."""
    pd = e if isinstance(e, PeirceDecomposition) else peirce_decompose(e, tol)
    return pd.P1 - pd.P12 + pd.P0


def char_sigma(a, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """sigma = -exp(pi i mu_a) = P1 - i P1/2 - P0."""
    pd = a if isinstance(a, PeirceDecomposition) else peirce_decompose(a, tol)
    return pd.P1 - 1j * pd.P12 - pd.P0


# ---------------------------------------------------------------------------
# frames and refined Peirce spaces


@dataclass(frozen=True, eq=False)
class Frame:
    members: tuple  # of Tripotent

    @property
    def system(self):
        return self.members[0].system

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __getitem__(self, k):
        return self.members[k]


def validate_frame(members, tol: Tolerances = DEFAULT_TOL) -> Frame:
    """Check minimality, pairwise orthogonality and maximal length."""
    members = tuple(certify(m, tol) for m in members)
    if not members:
        raise FrameError("empty frame")
    sys = members[0].system
    if len(members) != sys.rank:
        raise FrameError(f"frame length {len(members)} differs from rank {sys.rank}")
    for m in members:
        if m.element.norm() < 0.5:
            raise FrameError("frame member is zero")
        if peirce_decompose(m, tol).dims[0] != 1:
            raise FrameError("frame member is not minimal")
    for i, a in enumerate(members):
        for b in members[i + 1:]:
            if tp(a.element, a.element, b.element).norm() > 10 * tol.eq:
                raise FrameError("frame members are not orthogonal")
    return Frame(members)


@dataclass(frozen=True, eq=False)
class RefinedPeirce:
    frame: Frame
    projectors: dict  # (i, j) with 0 <= i <= j <= r -> operator

    def dims(self) -> dict:
        return {k: int(round(np.trace(P).real)) for k, P in self.projectors.items()}


def refined_peirce(frame, tol: Tolerances = DEFAULT_TOL) -> RefinedPeirce:
    """Joint eigenprojectors E_ij of the commuting family mu_{e_k}."""
    if not isinstance(frame, Frame):
        frame = validate_frame(frame, tol)
    r = len(frame)
    spectral = []
    for m in frame:
        pd = peirce_decompose(m, tol)
        spectral.append({1.0: pd.P1, 0.5: pd.P12, 0.0: pd.P0})
    n = frame.system.dim
    projectors = {}
    for i, j in combinations_with_replacement(range(r + 1), 2):
        P = np.eye(n, dtype=complex)
        for k in range(1, r + 1):
            eig = ((i == k) + (k == j)) / 2
            P = P @ spectral[k - 1][eig]
        projectors[(i, j)] = P
    return RefinedPeirce(frame, projectors)


def standard_frame(sys) -> Frame:
    """Diagonal matrix units (type I) / standard antisymmetric pairs (type II)."""
    members = []
    for idx, f in enumerate(sys.factors):
        for j in range(f.rank):
            m = np.zeros(f.shape, complex)
            if isinstance(f, CartanI):
                m[j, j] = 1
            else:
                m[2 * j, 2 * j + 1] = 1
                m[2 * j + 1, 2 * j] = -1
            blocks = [np.zeros(g.shape, complex) for g in sys.factors]
            blocks[idx] = m
            members.append(Tripotent(Element(sys, tuple(blocks)), 0.0))
    return Frame(tuple(members))


def maximal_standard_tripotent(sys) -> Tripotent:
    """Sum of the standard frame: (1;0) in type I, diag(j, 0) in type II."""
    fr = standard_frame(sys)
    total = zero(sys)
    for m in fr:
        total = total + m.element
    return Tripotent(total, 0.0)


def classify_tube(sys, tol: Tolerances = DEFAULT_TOL) -> list[bool]:
    """Per-factor tube flag, computed two independent ways which must agree."""
    flags = []
    for f in sys.factors:
        by_half = peirce_decompose(maximal_standard_tripotent(f), tol).dims[1] == 0
        rp = refined_peirce(standard_frame(f), tol)
        dims = rp.dims()
        by_frame = not all(dims[(0, i)] > 0 for i in range(1, f.rank + 1))
        if by_half != by_frame:
            raise AssertionError(f"tube criteria disagree on {f.spec()}")
        flags.append(by_half)
    return flags
