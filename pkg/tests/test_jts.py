import numpy as np
import pytest
from hypothesis import given, strategies as st

from oracles import triple
from symcr.errors import CertificationError, DimensionError, SpecParseError
from symcr.jts import (CartanI, CartanII, Product, basis, certify, element, element_from_json,
                       element_to_json, from_vector, is_tripotent, mult_operator, parse_system,
                       random_element, random_k_action, to_vector, tp)

SYSTEMS = ["I:2,1", "I:2,2", "I:3,2", "II:5", "II:7", "I:2,2xI:2,1", "II:5xI:3,1"]
seeds = st.integers(0, 2**32 - 1)
specs = st.sampled_from(SYSTEMS)


def test_descriptor_dims():
    assert (CartanI(3, 2).dim, CartanI(3, 2).rank) == (6, 2)
    assert (CartanII(5).dim, CartanII(5).rank) == (10, 2)
    assert (CartanII(7).dim, CartanII(7).rank) == (21, 3)
    assert CartanI(2, 2).is_tube and not CartanI(3, 2).is_tube
    prod = parse_system("I:2,2xI:2,1")
    assert isinstance(prod, Product) and prod.dim == 6 and prod.rank == 3
    assert prod.spec() == "I:2,2xI:2,1"


@pytest.mark.parametrize("bad,pos", [("", 0), ("I:3", 0), ("I:3,x", 4), ("I:2,2xII:4", 6),
                                     ("III:2", 0)])
def test_parse_errors_carry_position(bad, pos):
    with pytest.raises(SpecParseError) as info:
        parse_system(bad)
    assert info.value.position == pos


def test_type_II_parameters_rejected():
    for p in (3, 4, 6):
        with pytest.raises(ValueError):
            CartanII(p)
    with pytest.raises(ValueError):
        CartanI(2, 3)


def test_element_checks_shape_and_antisymmetry():
    with pytest.raises(DimensionError):
        element(CartanI(3, 2), np.zeros((2, 3)))
    with pytest.raises(ValueError):
        element(CartanII(5), np.ones((5, 5)))


@given(seeds, specs)
def test_triple_product_matches_matrix_formula(seed, spec):
    rng = np.random.default_rng(seed)
    s = parse_system(spec)
    x, y, z = (random_element(s, rng) for _ in range(3))
    got = tp(x, y, z)
    for gb, xb, yb, zb in zip(got.blocks, x.blocks, y.blocks, z.blocks):
        assert np.allclose(gb, triple(xb, yb, zb), atol=1e-12)


@given(seeds, specs)
def test_triple_product_symmetry_and_conjugate_linearity(seed, spec):
    rng = np.random.default_rng(seed)
    s = parse_system(spec)
    x, y, z = (random_element(s, rng) for _ in range(3))
    assert (tp(x, y, z) - tp(z, y, x)).norm() < 1e-12
    assert (tp(x, 1j * y, z) + 1j * tp(x, y, z)).norm() < 1e-12
    assert (tp(2j * x, y, z) - 2j * tp(x, y, z)).norm() < 1e-12


@given(seeds, specs)
def test_jordan_triple_identity(seed, spec):
    rng = np.random.default_rng(seed)
    s = parse_system(spec)
    a, b, x, y, z = (random_element(s, rng) for _ in range(5))
    lhs = tp(a, b, tp(x, y, z))
    rhs = tp(tp(a, b, x), y, z) - tp(x, tp(b, a, y), z) + tp(x, y, tp(a, b, z))
    assert (lhs - rhs).norm() < 1e-10 * max(1.0, lhs.norm())


@given(seeds, specs)
def test_coordinates_are_isometric(seed, spec):
    rng = np.random.default_rng(seed)
    s = parse_system(spec)
    x, y = random_element(s, rng), random_element(s, rng)
    assert np.isclose(np.linalg.norm(to_vector(x)), x.norm())
    assert np.isclose(np.vdot(to_vector(x), to_vector(y)), x.inner(y))
    assert (from_vector(s, to_vector(x)) - x).norm() < 1e-13
    assert len(basis(s)) == s.dim


@given(seeds, specs)
def test_box_operator_is_hermitian_psd(seed, spec):
    rng = np.random.default_rng(seed)
    s = parse_system(spec)
    a = random_element(s, rng)
    mu = mult_operator(s, a)
    assert np.allclose(mu, mu.conj().T, atol=1e-12)
    assert np.linalg.eigvalsh(mu).min() > -1e-12


@given(seeds, specs)
def test_structure_group_action_is_automorphism(seed, spec):
    rng = np.random.default_rng(seed)
    s = parse_system(spec)
    g = random_k_action(s, rng)
    x, y, z = (random_element(s, rng) for _ in range(3))
    assert (g(tp(x, y, z)) - tp(g(x), g(y), g(z))).norm() < 1e-11


def test_tripotent_certification():
    s = CartanI(2, 2)
    e = element(s, np.diag([1.0, 0.0]))
    ok, res = is_tripotent(s, e)
    assert ok and res == 0
    with pytest.raises(CertificationError):
        certify(element(s, np.diag([0.5, 0.0])))
    f = element(CartanII(5), np.array([[0, 1, 0, 0, 0], [-1, 0, 0, 0, 0]] + [[0] * 5] * 3))
    assert certify(f).residual < 1e-15


@given(seeds, specs)
def test_json_roundtrip(seed, spec):
    rng = np.random.default_rng(seed)
    s = parse_system(spec)
    x = random_element(s, rng)
    assert (element_from_json(s, element_to_json(x)) - x).norm() == 0
