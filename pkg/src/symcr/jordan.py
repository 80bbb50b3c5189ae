"""The unital Jordan algebra E_1(e) attached to a tripotent e.

Products, inverses and exponentials are computed from the multiplication
operators L_x : z -> {x e z} restricted to E_1, so the same code serves
every supported system.  For type I, E_1(e) is isomorphic to square
matrices with the symmetrized product; that identification is exposed by
:meth:`JordanContext.block` and used by the tests as an oracle.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy.linalg import expm

from .config import DEFAULT_TOL, Tolerances
from .errors import (DomainPreconditionError, InvertibilityError, PeirceSpaceError,
                     UnsupportedScopeError)
from .jts import (CartanI, Element, Tripotent, certify, from_vector, operator_matrix,
                  to_vector, tp)
from .peirce import PeirceDecomposition, peirce_decompose
from .spectral import spectral_norm


class ConeMembership(str, enum.Enum):
    INTERIOR = "in_omega"
    BOUNDARY = "in_boundary_Y"
    OUTSIDE = "outside"


@dataclass(frozen=True, eq=False)
class JordanContext:
    e: Tripotent
    peirce: PeirceDecomposition
    tol: Tolerances = DEFAULT_TOL

    @property
    def system(self):
        return self.e.system

    @property
    def unit(self) -> Element:
        return self.e.element

    @cached_property
    def basis(self) -> np.ndarray:
        """Orthonormal coordinate basis (columns) of E_1."""
        w, v = np.linalg.eigh((self.peirce.P1 + self.peirce.P1.conj().T) / 2)
        return v[:, w > 0.5]

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    # -- membership --------------------------------------------------------
    def require_e1(self, *xs: Element) -> None:
        for x in xs:
            res = self.peirce.residual_in("1", x)
            if res > self.tol.eq * max(1.0, x.norm()) * 10:
                raise PeirceSpaceError(f"element not in E_1(e) (distance {res:.3e})")

    def to_local(self, x: Element) -> np.ndarray:
        return self.basis.conj().T @ to_vector(x)

    def from_local(self, c: np.ndarray) -> Element:
        return from_vector(self.system, self.basis @ c)

    def left_mult(self, x: Element) -> np.ndarray:
        """Matrix of L_x on E_1 in the local basis."""
        full = operator_matrix(self.system, lambda z: tp(x, self.unit, z))
        return self.basis.conj().T @ full @ self.basis

    def block(self, x: Element) -> np.ndarray:
        """Associative-matrix picture of x in E_1 (type I factors only).

        With e = U V* (U, V isometries), x = U a V* and x o y = U (ab+ba)/2 V*.
        """
        blocks = []
        for f, eb, xb in zip(self.system.factors, self.unit.blocks, x.blocks):
            if not isinstance(f, CartanI):
                raise UnsupportedScopeError("block picture exists for type I only")
            u, s, vh = np.linalg.svd(eb)
            k = int(np.sum(s > 0.5))
            blocks.append(u[:, :k].conj().T @ xb @ vh[:k, :].conj().T)
        return blocks[0] if len(blocks) == 1 else blocks


def jordan_context(e, tol: Tolerances = DEFAULT_TOL) -> JordanContext:
    e = certify(e, tol)
    return JordanContext(e, peirce_decompose(e, tol), tol)


def jordan_product(ctx: JordanContext, a: Element, b: Element) -> Element:
    """a o b = {a e b}."""
    ctx.require_e1(a, b)
    return tp(a, ctx.unit, b)


def involution(ctx: JordanContext, z: Element) -> Element:
    """z* = {e z e}."""
    ctx.require_e1(z)
    return tp(ctx.unit, z, ctx.unit)


def real_part(ctx: JordanContext, z: Element) -> Element:
    return (z + involution(ctx, z)) / 2


def is_selfadjoint(ctx: JordanContext, z: Element) -> bool:
    return (involution(ctx, z) - z).norm() <= ctx.tol.eq * max(1.0, z.norm()) * 10


def _quadratic(ctx: JordanContext, t: Element) -> np.ndarray:
    lt = ctx.left_mult(t)
    lt2 = ctx.left_mult(jordan_product(ctx, t, t))
    return 2 * lt @ lt - lt2


def is_invertible(ctx: JordanContext, t: Element) -> bool:
    ctx.require_e1(t)
    s = np.linalg.svd(_quadratic(ctx, t), compute_uv=False)
    return bool(s.size and s[-1] > ctx.tol.cluster * max(1.0, s[0]))


def jordan_inverse(ctx: JordanContext, t: Element) -> Element:
    """t^{-1} = U_t^{-1} t with U_t = 2 L_t^2 - L_{t^2}."""
    ctx.require_e1(t)
    if not is_invertible(ctx, t):
        raise InvertibilityError("element is not invertible in E_1(e)")
    u = _quadratic(ctx, t)
    return ctx.from_local(np.linalg.solve(u, ctx.to_local(t)))


def generic_norm(ctx: JordanContext, z: Element) -> complex:
    """N(z) = det of the matrix picture; tube type I contexts only."""
    for f in ctx.system.factors:
        if not (isinstance(f, CartanI) and f.is_tube):
            raise UnsupportedScopeError(f"generic norm not available on {f.spec()}")
    if ctx.peirce.dims[2] != 0:
        raise UnsupportedScopeError("generic norm needs a maximal unit tripotent")
    ctx.require_e1(z)
    blocks = ctx.block(z)
    if not isinstance(blocks, list):
        blocks = [blocks]
    return complex(np.prod([np.linalg.det(b) for b in blocks]))


def omega_membership(ctx: JordanContext, x: Element) -> ConeMembership:
    """Classify x against the symmetric cone via the spectrum of L_x."""
    if ctx.peirce.residual_in("1", x) > ctx.tol.eq * max(1.0, x.norm()) * 10:
        return ConeMembership.OUTSIDE
    if not is_selfadjoint(ctx, x):
        return ConeMembership.OUTSIDE
    lx = ctx.left_mult(x)
    lam_min = float(np.linalg.eigvalsh((lx + lx.conj().T) / 2)[0])
    if lam_min > ctx.tol.psd:
        return ConeMembership.INTERIOR
    if lam_min >= -ctx.tol.psd:
        return ConeMembership.BOUNDARY
    return ConeMembership.OUTSIDE


def exp_A(ctx: JordanContext, a: Element) -> Element:
    """exp(a) = sum a^k / k! computed as expm(L_a) e."""
    ctx.require_e1(a)
    if not is_selfadjoint(ctx, a):
        raise PeirceSpaceError("exp_A needs a selfadjoint argument")
    out = ctx.from_local(expm(ctx.left_mult(a)) @ ctx.to_local(ctx.unit))
    if omega_membership(ctx, out) is not ConeMembership.INTERIOR:
        raise AssertionError("exp_A left the symmetric cone")
    return out


def shilov_by_norm(ctx: JordanContext, z: Element) -> bool:
    """|N(z)| = 1 on the closed domain of a tube context."""
    if spectral_norm(z) > 1 + ctx.tol.eq:
        raise DomainPreconditionError("point outside the closed domain")
    n = generic_norm(ctx, ctx.peirce.project("1", z))
    return abs(abs(n) - 1) <= ctx.tol.eq * 10
