"""Classical Jordan triple systems: Cartan factors of type I and II and products.

Elements are stored factor-wise as complex matrices.  The triple product is

    {xyz} = (x y* z + z y* x) / 2

applied in every factor.  Linear operators on the ambient space E are dense
matrices acting on the coordinate vectors produced by :func:`to_vector`.
For type I the coordinates are the column-major entries of the matrix.  For
type II they are ``sqrt(2) * z[i, j]`` for ``i > j`` (column-major over the
strict lower triangle), which makes the coordinate map an isometry for the
Frobenius inner product ``(u|v) = tr(u* v)``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Sequence, Union

import numpy as np

from .config import DEFAULT_TOL, Tolerances
from .errors import CertificationError, DimensionError, SpecParseError

# ---------------------------------------------------------------------------
# systems


@dataclass(frozen=True)
class CartanI:
    """Type I_{p,q}: complex p x q matrices, rank q."""

    p: int
    q: int

    def __post_init__(self):
        if not (isinstance(self.p, int) and isinstance(self.q, int)):
            raise TypeError("p and q must be integers")
        if not self.p >= self.q >= 1:
            raise ValueError(f"CartanI requires p >= q >= 1, got ({self.p}, {self.q})")

    @property
    def shape(self) -> tuple[int, int]:
        return (self.p, self.q)

    @property
    def dim(self) -> int:
        return self.p * self.q

    @property
    def rank(self) -> int:
        return self.q

    @property
    def factors(self) -> tuple:
        return (self,)

    @property
    def is_tube(self) -> bool:
        return self.p == self.q

    def spec(self) -> str:
        return f"I:{self.p},{self.q}"


@dataclass(frozen=True)
class CartanII:
    """Type II_p with p = 2q+1 odd, p >= 5: antisymmetric p x p matrices, rank q."""

    p: int

    def __post_init__(self):
        if not isinstance(self.p, int):
            raise TypeError("p must be an integer")
        if self.p % 2 == 0 or self.p <= 3:
            raise ValueError(f"CartanII requires odd p > 3, got {self.p}")

    @property
    def q(self) -> int:
        return (self.p - 1) // 2

    @property
    def shape(self) -> tuple[int, int]:
        return (self.p, self.p)

    @property
    def dim(self) -> int:
        return self.p * (self.p - 1) // 2

    @property
    def rank(self) -> int:
        return self.q

    @property
    def factors(self) -> tuple:
        return (self,)

    @property
    def is_tube(self) -> bool:
        return False

    def spec(self) -> str:
        return f"II:{self.p}"


SimpleSystem = Union[CartanI, CartanII]


@dataclass(frozen=True)
class Product:
    """Direct product of triple systems, factors kept in declared order."""

    members: tuple

    def __post_init__(self):
        members = tuple(self.members)
        if not members:
            raise ValueError("Product needs at least one factor")
        object.__setattr__(self, "members", members)

    @cached_property
    def factors(self) -> tuple:
        out = []
        for m in self.members:
            out.extend(m.factors)
        return tuple(out)

    @property
    def dim(self) -> int:
        return sum(f.dim for f in self.factors)

    @property
    def rank(self) -> int:
        return sum(f.rank for f in self.factors)

    def spec(self) -> str:
        return "x".join(f.spec() for f in self.factors)


TripleSystem = Union[CartanI, CartanII, Product]


def parse_system(text: str) -> TripleSystem:
    """Parse ``I:<p>,<q>`` | ``II:<p>`` | specs joined by ``x``."""
    if not text:
        raise SpecParseError("empty system spec", 0)
    parts = []
    pos = 0
    for chunk in text.split("x"):
        parts.append(_parse_simple(chunk, pos))
        pos += len(chunk) + 1
    if len(parts) == 1:
        return parts[0]
    return Product(tuple(parts))


def _parse_simple(chunk: str, offset: int) -> SimpleSystem:
    if ":" not in chunk:
        raise SpecParseError(f"expected '<type>:<params>' in {chunk!r}", offset)
    kind, _, params = chunk.partition(":")
    values = []
    pos = offset + len(kind) + 1
    for tok in params.split(","):
        if not tok.isdigit():
            raise SpecParseError(f"expected a positive integer, got {tok!r}", pos)
        values.append(int(tok))
        pos += len(tok) + 1
    try:
        if kind == "I" and len(values) == 2:
            return CartanI(*values)
        if kind == "II" and len(values) == 1:
            return CartanII(*values)
    except ValueError as exc:
        raise SpecParseError(str(exc), offset) from exc
    raise SpecParseError(f"unknown factor {chunk!r}", offset)


def factor_offsets(sys: TripleSystem) -> list[int]:
    """Start index of every factor inside the coordinate vector."""
    offs, acc = [], 0
    for f in sys.factors:
        offs.append(acc)
        acc += f.dim
    return offs


# ---------------------------------------------------------------------------
# elements


@dataclass(frozen=True, eq=False)
class Element:
    """An immutable point of the ambient space E of ``system``."""

    system: object
    blocks: tuple = field(repr=False)

    def __post_init__(self):
        factors = self.system.factors
        if len(self.blocks) != len(factors):
            raise DimensionError(
                f"expected {len(factors)} blocks, got {len(self.blocks)}")
        frozen = []
        for f, b in zip(factors, self.blocks):
            arr = np.array(b, dtype=complex)
            if arr.shape != f.shape:
                raise DimensionError(f"block shape {arr.shape} does not match {f.shape}")
            arr.setflags(write=False)
            frozen.append(arr)
        object.__setattr__(self, "blocks", tuple(frozen))

    # arithmetic keeps the same system
    def __add__(self, other: "Element") -> "Element":
        _check_same(self, other)
        return Element(self.system, tuple(a + b for a, b in zip(self.blocks, other.blocks)))

    def __sub__(self, other: "Element") -> "Element":
        _check_same(self, other)
        return Element(self.system, tuple(a - b for a, b in zip(self.blocks, other.blocks)))

    def __neg__(self) -> "Element":
        return Element(self.system, tuple(-a for a in self.blocks))

    def __mul__(self, scalar) -> "Element":
        return Element(self.system, tuple(scalar * a for a in self.blocks))

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> "Element":
        return Element(self.system, tuple(a / scalar for a in self.blocks))

    def norm(self) -> float:
        """Frobenius (Hilbert) norm."""
        return float(math.sqrt(sum(np.vdot(b, b).real for b in self.blocks)))

    def inner(self, other: "Element") -> complex:
        """(self|other) = tr(self* other), conjugate-linear in ``self``."""
        _check_same(self, other)
        return complex(sum(np.vdot(a, b) for a, b in zip(self.blocks, other.blocks)))

    @property
    def matrix(self) -> np.ndarray:
        """The single block of an element of a simple system."""
        if len(self.blocks) != 1:
            raise DimensionError("element of a product system has several blocks")
        return self.blocks[0]

    def __repr__(self) -> str:
        return f"Element({self.system.spec()}, |z|={self.norm():.6g})"


def _check_same(x: Element, y: Element) -> None:
    if x.system != y.system:
        raise DimensionError(f"elements of different systems: {x.system} vs {y.system}")


def element(sys: TripleSystem, *blocks, antisym_tol: float = 1e-12) -> Element:
    """Build an element; type II blocks are antisymmetrized if nearly antisymmetric."""
    if len(blocks) == 1 and isinstance(blocks[0], (list, tuple)) and len(sys.factors) > 1:
        blocks = tuple(blocks[0])
    fixed = []
    for f, b in zip(sys.factors, blocks):
        arr = np.asarray(b, dtype=complex)
        if isinstance(f, CartanII) and arr.shape == f.shape:
            scale = max(1.0, float(np.linalg.norm(arr)))
            if np.linalg.norm(arr + arr.T) > antisym_tol * scale:
                raise DimensionError("type II data must be antisymmetric")
            arr = (arr - arr.T) / 2
        fixed.append(arr)
    if len(fixed) != len(sys.factors):
        raise DimensionError(f"expected {len(sys.factors)} blocks, got {len(fixed)}")
    return Element(sys, tuple(fixed))


def zero(sys: TripleSystem) -> Element:
    return Element(sys, tuple(np.zeros(f.shape, complex) for f in sys.factors))


def check_member(sys: TripleSystem, *xs: Element) -> None:
    for x in xs:
        if not isinstance(x, Element):
            raise DimensionError(f"expected an Element, got {type(x).__name__}")
        if x.system != sys:
            raise DimensionError(f"element of {x.system.spec()} used in {sys.spec()}")


# ---------------------------------------------------------------------------
# coordinates

_SQRT2 = math.sqrt(2.0)


def _lower_index(p: int) -> tuple[np.ndarray, np.ndarray]:
    rows, cols = [], []
    for j in range(p):
        for i in range(j + 1, p):
            rows.append(i)
            cols.append(j)
    return np.array(rows, int), np.array(cols, int)


def to_vector(x: Element) -> np.ndarray:
    parts = []
    for f, b in zip(x.system.factors, x.blocks):
        if isinstance(f, CartanI):
            parts.append(b.flatten(order="F"))
        else:
            r, c = _lower_index(f.p)
            parts.append(_SQRT2 * b[r, c])
    return np.concatenate(parts)


def from_vector(sys: TripleSystem, vec) -> Element:
    vec = np.asarray(vec, dtype=complex)
    if vec.shape != (sys.dim,):
        raise DimensionError(f"coordinate vector of length {sys.dim} expected")
    blocks, acc = [], 0
    for f in sys.factors:
        chunk = vec[acc:acc + f.dim]
        acc += f.dim
        if isinstance(f, CartanI):
            blocks.append(chunk.reshape(f.shape, order="F"))
        else:
            m = np.zeros(f.shape, complex)
            r, c = _lower_index(f.p)
            m[r, c] = chunk / _SQRT2
            m[c, r] = -chunk / _SQRT2
            blocks.append(m)
    return Element(sys, tuple(blocks))


def basis(sys: TripleSystem) -> list[Element]:
    """Orthonormal basis of E matching the coordinate order."""
    eye = np.eye(sys.dim)
    return [from_vector(sys, eye[k]) for k in range(sys.dim)]


def operator_matrix(sys: TripleSystem, fn: Callable[[Element], Element]) -> np.ndarray:
    """Matrix of a complex-linear map E -> E in the coordinates of :func:`to_vector`."""
    return np.column_stack([to_vector(fn(b)) for b in basis(sys)])


def apply_operator(op: np.ndarray, x: Element) -> Element:
    return from_vector(x.system, op @ to_vector(x))


# ---------------------------------------------------------------------------
# triple product


def _tp_block(x, y, z):
    yh = y.conj().T
    return (x @ yh @ z + z @ yh @ x) / 2


def triple_product(sys: TripleSystem, x: Element, y: Element, z: Element) -> Element:
    """{xyz} = (x y* z + z y* x)/2, factor-wise."""
    check_member(sys, x, y, z)
    return Element(sys, tuple(_tp_block(a, b, c)
                              for a, b, c in zip(x.blocks, y.blocks, z.blocks)))


def tp(x: Element, y: Element, z: Element) -> Element:
    """Short form of :func:`triple_product` taking the system from ``x``."""
    return triple_product(x.system, x, y, z)


def mult_operator(sys: TripleSystem, e: Element) -> np.ndarray:
    """Matrix of mu_e : z -> {eez}."""
    check_member(sys, e)
    return operator_matrix(sys, lambda z: triple_product(sys, e, e, z))


# ---------------------------------------------------------------------------
# tripotents


@dataclass(frozen=True, eq=False)
class Tripotent:
    """An element certified to satisfy {eee} = e."""

    element: Element
    residual: float

    @property
    def system(self):
        return self.element.system


def tripotent_residual(a: Element) -> float:
    return (tp(a, a, a) - a).norm()


def is_tripotent(sys: TripleSystem, a: Element,
                 tol: Tolerances = DEFAULT_TOL) -> tuple[bool, float]:
    check_member(sys, a)
    res = tripotent_residual(a)
    return res <= tol.eq * max(1.0, a.norm()), res


def certify(a: Element, tol: Tolerances = DEFAULT_TOL) -> Tripotent:
    """Wrap ``a`` as a :class:`Tripotent` or raise :class:`CertificationError`."""
    if isinstance(a, Tripotent):
        return a
    ok, res = is_tripotent(a.system, a, tol)
    if not ok:
        raise CertificationError(f"not a tripotent: |{{aaa}} - a| = {res:.3e}")
    return Tripotent(a, res)


def are_orthogonal(sys: TripleSystem, e: Tripotent, c: Tripotent,
                   tol: Tolerances = DEFAULT_TOL) -> bool:
    """True iff c lies in E_0(e), i.e. {eec} = 0.

    When true the consequences e in E_0(c) and e +- c tripotent are asserted.
    """
    if not (isinstance(e, Tripotent) and isinstance(c, Tripotent)):
        raise CertificationError("are_orthogonal expects certified tripotents")
    x, y = e.element, c.element
    check_member(sys, x, y)
    scale = max(1.0, x.norm(), y.norm())
    if tp(x, x, y).norm() > tol.eq * scale:
        return False
    assert tp(y, y, x).norm() <= 10 * tol.eq * scale, "orthogonality is not symmetric"
    for s in (x + y, x - y):
        ok, res = is_tripotent(sys, s, tol.with_eq(10 * tol.eq))
        assert ok, f"e +- c is not a tripotent (residual {res:.3e})"
    return True


# ---------------------------------------------------------------------------
# product plumbing


def embed_factor(sys: TripleSystem, index: int, x: Element) -> Element:
    factors = sys.factors
    if not 0 <= index < len(factors):
        raise IndexError(f"factor index {index} out of range for {sys.spec()}")
    if x.system != factors[index]:
        raise DimensionError("element does not belong to the requested factor")
    blocks = [np.zeros(f.shape, complex) for f in factors]
    blocks[index] = x.matrix
    return Element(sys, tuple(blocks))


def project_factor(sys: TripleSystem, index: int, z: Element) -> Element:
    factors = sys.factors
    if not 0 <= index < len(factors):
        raise IndexError(f"factor index {index} out of range for {sys.spec()}")
    check_member(sys, z)
    return Element(factors[index], (z.blocks[index],))


# ---------------------------------------------------------------------------
# sampling helpers


def random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary via QR with phase fix."""
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / _SQRT2
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_element(sys: TripleSystem, rng: np.random.Generator, scale: float = 1.0) -> Element:
    blocks = []
    for f in sys.factors:
        z = rng.standard_normal(f.shape) + 1j * rng.standard_normal(f.shape)
        if isinstance(f, CartanII):
            z = (z - z.T) / 2
        blocks.append(scale * z)
    return Element(sys, tuple(blocks))


def random_k_action(sys: TripleSystem, rng: np.random.Generator,
                    scale: float | None = None) -> Callable[[Element], Element]:
    """A random linear triple automorphism z -> u z v (type I) / u z u' (type II).

    With ``scale`` set, the unitaries are exp(i*scale*H) for random Hermitian H,
    i.e. close to the identity.
    """
    mats = []
    for f in sys.factors:
        if isinstance(f, CartanI):
            mats.append((_unitary(f.p, rng, scale), _unitary(f.q, rng, scale)))
        else:
            u = _unitary(f.p, rng, scale)
            mats.append((u, u.T))

    def act(z: Element) -> Element:
        return Element(z.system, tuple(u @ b @ v for (u, v), b in zip(mats, z.blocks)))

    return act


def _unitary(n, rng, scale):
    if scale is None:
        return random_unitary(n, rng)
    from scipy.linalg import expm
    h = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    h = (h + h.conj().T) / 2
    return expm(1j * scale * h)


# ---------------------------------------------------------------------------
# JSON


def matrix_to_json(m: np.ndarray) -> dict:
    m = np.asarray(m, dtype=complex)
    if m.ndim == 1:
        m = m.reshape(-1, 1)
    return {"rows": int(m.shape[0]), "cols": int(m.shape[1]),
            "re": m.real.tolist(), "im": m.imag.tolist()}


def matrix_from_json(obj: dict) -> np.ndarray:
    try:
        rows, cols = int(obj["rows"]), int(obj["cols"])
        re = np.asarray(obj["re"], dtype=float)
        im = np.asarray(obj.get("im", np.zeros((rows, cols))), dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed matrix object: {exc}") from exc
    if re.shape != (rows, cols) or im.shape != (rows, cols):
        raise ValueError("matrix JSON shape does not match rows/cols")
    return re + 1j * im


def element_to_json(x: Element):
    objs = [matrix_to_json(b) for b in x.blocks]
    return objs[0] if len(objs) == 1 else objs


def element_from_json(sys: TripleSystem, obj) -> Element:
    if isinstance(obj, dict):
        obj = [obj]
    if not isinstance(obj, list):
        raise ValueError("element JSON must be a matrix object or a list of them")
    return element(sys, *[matrix_from_json(o) for o in obj])


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True)
