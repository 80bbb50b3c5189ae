"""Real matrix Lie algebras, bracket filtrations and integrability of CR structures.

Elements are handled through real coordinates with respect to a fixed basis;
brackets then go through the structure-constant table.  Complexifications
are always built abstractly (complex coordinates, bracket extended
bilinearly), which is valid whether or not g and ig meet inside the ambient
matrix space.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .config import DEFAULT_TOL, Tolerances


def _realify(m: np.ndarray) -> np.ndarray:
    m = np.asarray(m, dtype=complex).ravel()
    return np.concatenate([m.real, m.imag])


def orth_rows(vectors, tol: float = DEFAULT_TOL.cluster) -> np.ndarray:
    """Orthonormal basis (rows) of the span of the given row vectors."""
    vectors = np.asarray(vectors)
    if vectors.size == 0:
        return vectors.reshape(0, vectors.shape[-1] if vectors.ndim == 2 else 0)
    _, s, vh = np.linalg.svd(vectors, full_matrices=False)
    if s.size == 0 or s[0] == 0:
        return vh[:0]
    return vh[s > tol * max(1.0, s[0])]


def span_residual(basis_rows: np.ndarray, x: np.ndarray) -> float:
    """Distance from x to the span of orthonormal rows."""
    if basis_rows.shape[0] == 0:
        return float(np.linalg.norm(x))
    return float(np.linalg.norm(x - basis_rows.T @ (basis_rows.conj() @ x)))


def bracket(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    return x @ y - y @ x


@dataclass(frozen=True, eq=False)
class MatrixLieAlgebra:
    n: int
    basis: tuple  # real basis matrices in C^{n x n}
    tol: Tolerances = field(default=DEFAULT_TOL)

    def __post_init__(self):
        object.__setattr__(self, "basis", tuple(np.asarray(b, dtype=complex) for b in self.basis))
        if self.basis and np.linalg.matrix_rank(self._frame, tol=self.tol.cluster) != self.dim:
            raise ValueError("basis is not linearly independent over R")

    @property
    def dim(self) -> int:
        return len(self.basis)

    @cached_property
    def _frame(self) -> np.ndarray:
        return np.column_stack([_realify(b) for b in self.basis]) if self.basis \
            else np.zeros((2 * self.n * self.n, 0))

    @cached_property
    def _pinv(self) -> np.ndarray:
        return np.linalg.pinv(self._frame)

    def coords(self, m: np.ndarray) -> np.ndarray:
        return self._pinv @ _realify(m)

    def coords_residual(self, m: np.ndarray) -> float:
        r = _realify(m)
        return float(np.linalg.norm(r - self._frame @ (self._pinv @ r)))

    def matrix(self, c: np.ndarray) -> np.ndarray:
        """Matrix of real coordinates c (complex c only makes sense abstractly)."""
        return sum((float(ci) * b for ci, b in zip(np.real(c), self.basis)),
                   np.zeros((self.n, self.n), complex))

    @cached_property
    def structure_constants(self) -> np.ndarray:
        """C[i, j] = coordinates of [b_i, b_j]."""
        d = self.dim
        C = np.zeros((d, d, d))
        for i in range(d):
            for j in range(i + 1, d):
                C[i, j] = self.coords(bracket(self.basis[i], self.basis[j]))
                C[j, i] = -C[i, j]
        return C

    def br(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """Bracket in coordinates; complex inputs give the complexified bracket."""
        return np.einsum("i,j,ijk->k", x, y, self.structure_constants)


def closure_check(g: MatrixLieAlgebra) -> tuple[bool, float]:
    res = 0.0
    for i in range(g.dim):
        for j in range(i + 1, g.dim):
            res = max(res, g.coords_residual(bracket(g.basis[i], g.basis[j])))
    return res <= g.tol.eq * 10, res


def jacobi_residual(g: MatrixLieAlgebra) -> float:
    C = g.structure_constants
    # [[x,y],z] + [[y,z],x] + [[z,x],y] on basis triples, in coordinates
    t = np.einsum("ijm,mkn->ijkn", C, C)
    return float(np.abs(t + t.transpose(1, 2, 0, 3) + t.transpose(2, 0, 1, 3)).max()) \
        if g.dim else 0.0


# ---------------------------------------------------------------------------
# involutions and the Fix(tau) / Fix(-tau) splitting


@dataclass(frozen=True, eq=False)
class InvolutionData:
    g: MatrixLieAlgebra
    T: np.ndarray  # matrix on coordinates

    @classmethod
    def from_map(cls, g: MatrixLieAlgebra, fn) -> "InvolutionData":
        T = np.column_stack([g.coords(fn(b)) for b in g.basis]) if g.dim else np.zeros((0, 0))
        return cls(g, T)

    def residuals(self) -> dict:
        g, T = self.g, self.T
        inv = float(np.linalg.norm(T @ T - np.eye(g.dim)))
        C = g.structure_constants
        lhs = np.einsum("ijk,lk->ijl", C, T)
        rhs = np.einsum("ai,bj,abk->ijk", T, T, C)
        return {"involution": inv, "automorphism": float(np.abs(lhs - rhs).max()) if g.dim else 0.0}


@dataclass(frozen=True)
class FixDecomposition:
    l: np.ndarray     # rows: coordinates of a basis of Fix(tau)
    m: np.ndarray     # rows: Fix(-tau)
    a: np.ndarray     # rows: [m, m] + m
    residuals: dict


def _brackets(g, A, B):
    return np.array([g.br(x, y) for x in A for y in B]).reshape(-1, g.dim)


def _max_outside(rows_span, vecs) -> float:
    return max((span_residual(rows_span, v) for v in vecs), default=0.0)


def fix_decompose(g: MatrixLieAlgebra, tau: InvolutionData) -> FixDecomposition:
    res = tau.residuals()
    if max(res.values()) > g.tol.eq * 10:
        raise ValueError(f"tau is not an involutive automorphism: {res}")
    w, v = np.linalg.eigh((tau.T + tau.T.T) / 2) if _is_symmetric(tau.T) else (None, None)
    if w is None:
        eye = np.eye(g.dim)
        l = orth_rows(((eye + tau.T) / 2).T, g.tol.cluster)
        m = orth_rows(((eye - tau.T) / 2).T, g.tol.cluster)
    else:
        l, m = v[:, w > 0].T, v[:, w < 0].T
    ll, lm, mm = _brackets(g, l, l), _brackets(g, l, m), _brackets(g, m, m)
    a = orth_rows(np.vstack([mm, m]) if m.size else np.zeros((0, g.dim)), g.tol.cluster)
    allb = np.eye(g.dim)
    res.update({
        "ll_in_l": _max_outside(l, ll), "lm_in_m": _max_outside(m, lm),
        "mm_in_l": _max_outside(l, mm),
        "a_ideal": _max_outside(a, _brackets(g, allb, a)) if a.size else 0.0,
    })
    return FixDecomposition(l, m, a, res)


def _is_symmetric(T):
    return np.allclose(T, T.T, atol=1e-12)


# ---------------------------------------------------------------------------
# CR algebra data, filtration and integrability


@dataclass(frozen=True, eq=False)
class CRAlgebraData:
    g: MatrixLieAlgebra
    k: np.ndarray   # rows: coordinates of a basis of k
    h: np.ndarray   # rows: coordinates of a real basis of h
    J: np.ndarray   # (dim h x dim h), acts on h-coordinates: J h_j = sum_i J[i, j] h_i
    name: str = ""

    def __post_init__(self):
        d = self.g.dim
        object.__setattr__(self, "k", np.asarray(self.k, float).reshape(-1, d))
        object.__setattr__(self, "h", np.asarray(self.h, float).reshape(-1, d))

    def residuals(self) -> dict:
        J, nh = self.J, self.h.shape[0]
        out = {"J_squared": float(np.linalg.norm(J @ J + np.eye(nh))) if nh else 0.0}
        mats = [self.g.matrix(x) for x in self.h]
        jmats = [self.g.matrix(self.h.T @ J[:, j]) for j in range(nh)]
        out["J_isometry"] = max((abs(np.linalg.norm(a) - np.linalg.norm(b))
                                 for a, b in zip(mats, jmats)), default=0.0)
        hk = np.vstack([self.h, self.k])
        out["h_meets_k"] = float(self.g.dim) if hk.size and \
            np.linalg.matrix_rank(hk, tol=self.g.tol.cluster) < hk.shape[0] else 0.0
        return out

    def Jx(self, j: int) -> np.ndarray:
        """Coordinates in g of J applied to the j-th h basis vector."""
        return self.h.T @ self.J[:, j]


@dataclass(frozen=True)
class Filtration:
    chain: tuple      # orthonormal row bases h^1, h^2, ...
    dims: tuple
    kappa: int
    grading: tuple    # dim h^k - dim h^{k-1}
    codim: int        # codimension of h^infinity in g
    minimal: bool


def filtration(g: MatrixLieAlgebra, h: np.ndarray, k: np.ndarray | None = None) -> Filtration:
    """h^1 = h, h^j = h^{j-1} + [h, h^{j-1}], until it stabilizes."""
    h = np.asarray(h, float).reshape(-1, g.dim)
    tol = g.tol.cluster
    cur = orth_rows(h, tol)
    if cur.shape[0] != h.shape[0]:
        raise ValueError("h basis is degenerate")
    chain, dims = [cur], [cur.shape[0]]
    while True:
        nxt = orth_rows(np.vstack([cur, _brackets(g, h, cur)]), tol) if cur.size else cur
        if nxt.shape[0] == cur.shape[0]:
            break
        cur = nxt
        chain.append(cur)
        dims.append(cur.shape[0])
    kappa = len(dims) if dims[0] > 0 else 0
    grading = tuple(np.diff([0] + dims).tolist())
    kk = np.zeros((0, g.dim)) if k is None else np.asarray(k, float).reshape(-1, g.dim)
    total = orth_rows(np.vstack([cur, kk]), tol) if (cur.size or kk.size) else cur
    return Filtration(tuple(chain), tuple(dims), kappa, grading, g.dim - dims[-1],
                      total.shape[0] == g.dim)


def h_minus(data: CRAlgebraData) -> np.ndarray:
    """Complex coordinates of Jx - ix for the h basis."""
    return np.array([data.Jx(j) - 1j * data.h[j] for j in range(data.h.shape[0])]) \
        .reshape(-1, data.g.dim)


def integrability_residual(data: CRAlgebraData) -> float:
    """Max distance of [h^-, h^-] from the complex span of k."""
    res = data.residuals()["J_squared"]
    if res > data.g.tol.eq * 10:
        raise ValueError("J is not a complex structure on h")
    hm = h_minus(data)
    kc = orth_rows(data.k.astype(complex), data.g.tol.cluster) if data.k.size \
        else np.zeros((0, data.g.dim), complex)
    worst = 0.0
    for i in range(len(hm)):
        for j in range(i + 1, len(hm)):
            worst = max(worst, span_residual(kc, data.g.br(hm[i], hm[j])))
    return worst


def integrability_check(data: CRAlgebraData) -> bool:
    return integrability_residual(data) <= data.g.tol.eq * 10


def j_bracket_residual(data: CRAlgebraData) -> float:
    """max |[Jx, y] + [x, Jy]| over h basis pairs."""
    g, h = data.g, data.h
    worst = 0.0
    for i in range(h.shape[0]):
        for j in range(h.shape[0]):
            v = g.br(data.Jx(i), h[j]) + g.br(h[i], data.Jx(j))
            worst = max(worst, float(np.linalg.norm(v)))
    return worst


def kh_residual(data: CRAlgebraData) -> float:
    """[k, h] inside h + k."""
    hk = orth_rows(np.vstack([data.h, data.k]), data.g.tol.cluster)
    return _max_outside(hk, _brackets(data.g, data.k, data.h)) if data.k.size else 0.0


def j_commutes_residual(data: CRAlgebraData) -> float:
    """J ad(x) = ad(x) J on h for x in k, after projecting [x, h] onto h along k."""
    if not data.k.size:
        return 0.0
    g, h, k, J = data.g, data.h, data.k, data.J
    # coordinates relative to the (h, k) basis via least squares
    M = np.vstack([h, k]).T
    nh = h.shape[0]
    worst = 0.0
    for x in k:
        A = np.linalg.lstsq(M, np.array([g.br(x, y) for y in h]).T, rcond=None)[0][:nh]
        worst = max(worst, float(np.linalg.norm(J @ A - A @ J)))
    return worst


# ---------------------------------------------------------------------------
# builders


def _unit(n, i, j, val=1.0):
    m = np.zeros((n, n), complex)
    m[i, j] = val
    return m


def _complex_structure(pairs: int) -> np.ndarray:
    """J on (re_1, im_1, re_2, im_2, ...): re -> im, im -> -re."""
    J = np.zeros((2 * pairs, 2 * pairs))
    for k in range(pairs):
        J[2 * k + 1, 2 * k] = 1
        J[2 * k, 2 * k + 1] = -1
    return J


def build_vorh(n: int, tol: Tolerances = DEFAULT_TOL) -> CRAlgebraData:
    """Strictly lower triangular complex n x n matrices, h = first subdiagonal, J = i, k = 0."""
    if n < 3:
        raise ValueError("n must be at least 3")
    basis, hidx = [], []
    for i in range(n):
        for j in range(i):
            if i == j + 1:
                hidx += [len(basis), len(basis) + 1]
            basis += [_unit(n, i, j), _unit(n, i, j, 1j)]
    g = MatrixLieAlgebra(n, tuple(basis), tol)
    h = np.eye(g.dim)[hidx]
    return CRAlgebraData(g, np.zeros((0, g.dim)), h, _complex_structure(n - 1), f"vorh:{n}")


def tett_matrix(n: int, offset: int, value: complex) -> np.ndarray:
    """Entries (j + offset, j) following the alternating pattern, 1-based j."""
    m = np.zeros((n, n), complex)
    for j in range(1, n - offset + 1):
        odd = j % 2 == 1
        if offset % 2:
            m[j + offset - 1, j - 1] = value if odd else np.conj(value)
        else:
            m[j + offset - 1, j - 1] = value if odd else -value
    return m


def build_tett(n: int, d: int, tol: Tolerances = DEFAULT_TOL) -> CRAlgebraData:
    """Lower triangular alternating-pattern algebra; h carries z_1..z_d."""
    if not (n > d >= 1 and 2 * d <= n):
        raise ValueError("need n > d >= 1 and d <= n/2")
    basis, hidx = [], []
    for off in range(1, n):
        if off % 2:
            kk = (off + 1) // 2
            if kk <= d:
                hidx += [len(basis), len(basis) + 1]
            basis += [tett_matrix(n, off, 1.0), tett_matrix(n, off, 1j)]
        else:
            basis.append(tett_matrix(n, off, 1j))
    g = MatrixLieAlgebra(n, tuple(basis), tol)
    h = np.eye(g.dim)[hidx]
    return CRAlgebraData(g, np.zeros((0, g.dim)), h, _complex_structure(d), f"tett:{n},{d}")


def tett_kappa_formula(n: int, d: int) -> int:
    return (n - 1) // (2 * d - 1)


def su_basis(n: int) -> list:
    basis = []
    for j in range(n - 1):
        basis.append(_unit(n, j, j, 1j) - _unit(n, j + 1, j + 1, 1j))
    for j in range(n):
        for k in range(j + 1, n):
            basis.append(_unit(n, j, k) - _unit(n, k, j))
            basis.append(_unit(n, j, k, 1j) + _unit(n, k, j, 1j))
    return basis


@dataclass(frozen=True, eq=False)
class SuSigma:
    g: MatrixLieAlgebra
    tau: InvolutionData
    l: np.ndarray
    m: np.ndarray
    h: np.ndarray
    J: np.ndarray
    data: CRAlgebraData

    def span_residual(self) -> float:
        """Distance of g from m + [m, m] (max over the basis of g)."""
        s = orth_rows(np.vstack([self.m, _brackets(self.g, self.m, self.m)]), self.g.tol.cluster)
        return _max_outside(s, np.eye(self.g.dim))


def build_su_sigma(p: int, q: int, tol: Tolerances = DEFAULT_TOL) -> SuSigma:
    """su(p+q) with tau = Ad(diag(1_p, -1_q)); h = m (off-diagonal blocks), k = l."""
    if p < 1 or q < 1:
        raise ValueError("p, q >= 1")
    n = p + q
    g = MatrixLieAlgebra(n, tuple(su_basis(n)), tol)
    s = np.diag([1.0] * p + [-1.0] * q)
    tau = InvolutionData.from_map(g, lambda x: s @ x @ s)
    fd = fix_decompose(g, tau)
    # J(0 b; c 0) = (0 ib; -ic 0) is Ad(diag(w 1_p, conj(w) 1_q)) with w = exp(i pi/4)
    w = np.exp(1j * np.pi / 4)
    D = np.diag([w] * p + [np.conj(w)] * q)
    Jg = np.column_stack([g.coords(D @ b @ D.conj().T) for b in g.basis])
    m = fd.m
    Jm = m @ Jg.T @ m.T                 # J in the orthonormal m basis
    Jm = Jm.T
    data = CRAlgebraData(g, fd.l, m, Jm, f"su:{p},{q}")
    return SuSigma(g, tau, fd.l, m, m, Jm, data)
