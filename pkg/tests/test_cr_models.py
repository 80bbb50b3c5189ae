import numpy as np
import pytest
from hypothesis import given, strategies as st

from symcr import cr_models as crm
from symcr.errors import CayleyDomainError, DomainPreconditionError

seeds = st.integers(0, 2**32 - 1)


def test_sphere_symmetry_examples():
    a = np.array([1, 0], complex)
    assert np.allclose(crm.sphere_symmetry(a, a), a)
    assert np.allclose(crm.sphere_symmetry(a, [0, 1]), [0, -1])
    with pytest.raises(DomainPreconditionError):
        crm.sphere_symmetry([2, 0], [0, 1])


@given(seeds, st.integers(2, 5))
def test_sphere_symmetry_unitary_involution(seed, n):
    rng = np.random.default_rng(seed)
    a, z, w = (crm.random_sphere_point(n, rng) for _ in range(3))
    s = crm.sphere_symmetry(a, z)
    assert abs(np.linalg.norm(s) - 1) < 1e-12
    assert np.linalg.norm(crm.sphere_symmetry(a, s) - z) < 1e-12
    assert abs(np.vdot(s, crm.sphere_symmetry(a, w)) - np.vdot(z, w)) < 1e-12


@given(seeds)
def test_sphere_symmetry_eigenstructure(seed):
    # -1 on the complex hyperplane orthogonal to a, +1 on C a (hence on iRa)
    a = crm.random_sphere_point(4, np.random.default_rng(seed))
    m = crm.sphere_symmetry_matrix(a)
    w, v = np.linalg.eigh(m)
    assert np.allclose(w, [-1, -1, -1, 1])
    assert abs(abs(np.vdot(v[:, -1], a)) - 1) < 1e-12
    assert np.allclose(m @ (1j * a), 1j * a)


def test_dual_sphere_examples():
    assert crm.dual_sphere_membership(1, [0])
    t, v = crm.sphere_to_dual([1, 0])
    assert t == 1 and np.allclose(v, 0)
    with pytest.raises(DomainPreconditionError):
        crm.sphere_to_dual([0, 1])


@given(seeds)
def test_sphere_to_dual_lands_on_dual(seed):
    z = crm.random_sphere_point(3, np.random.default_rng(seed))
    if abs(z[0]) > 0.1:
        assert crm.dual_sphere_residual(*crm.sphere_to_dual(z)) < 1e-10


def test_sphere_cayley_examples():
    v, t = crm.sphere_cayley([0], -1)
    assert np.allclose(v, 0) and t == 0
    v, t = crm.sphere_cayley([1], 0)
    assert np.allclose(v, [np.sqrt(2)]) and t == 1
    assert crm.heisenberg_n_residual(v, t) == pytest.approx(0)
    with pytest.raises(CayleyDomainError):
        crm.sphere_cayley([0], 1)


@given(seeds)
def test_sphere_cayley_lands_on_N(seed):
    z = crm.random_sphere_point(3, np.random.default_rng(seed))
    if abs(1 - z[0]) > 0.05:
        assert crm.heisenberg_n_residual(*crm.sphere_cayley(z[1:], z[0])) < 1e-9


def test_quadric_symmetry_at_origin():
    m = crm.heisenberg_model()
    o = (np.zeros(1), np.zeros(1))
    z = np.array([1 + 1j])
    p = (z, np.array([1.0 + 0.3j]))
    q = crm.quadric_symmetry(m, o, p)
    assert np.allclose(q.z, -z) and np.allclose(q.w, p[1])


@given(seeds)
def test_quadric_action_and_symmetry(seed):
    rng = np.random.default_rng(seed)
    m = crm.QuadricModel(np.array([[[1, 0.5j], [-0.5j, 2]], [[0, 1], [1, 0]]]))
    a, p = m.random_point(rng), m.random_point(rng)
    fixed = crm.quadric_symmetry(m, a, a)
    assert np.allclose(fixed.z, a[0]) and np.allclose(fixed.w, a[1])
    q = crm.quadric_symmetry(m, a, p)
    assert q.residual < 1e-10
    back = crm.quadric_symmetry(m, a, q)
    assert np.allclose(back.z, p[0]) and np.allclose(back.w, p[1])
    assert crm.quadric_action(m, rng.standard_normal(2), m.random_v(rng), p).residual < 1e-10


@given(seeds)
def test_symmetry_linear_part_is_minus_identity_on_H(seed):
    rng = np.random.default_rng(seed)
    m = crm.heisenberg_model()
    a = m.random_point(rng)
    L = crm.quadric_symmetry_linear(m, a)
    zeta = rng.standard_normal(1) + 1j * rng.standard_normal(1)
    h = np.concatenate([zeta, m.phi(a[0], zeta)])
    assert np.allclose(L @ h, -h)


def test_quadric_off_manifold_rejected():
    m = crm.heisenberg_model()
    with pytest.raises(DomainPreconditionError):
        crm.quadric_symmetry(m, (np.zeros(1), np.zeros(1)), (np.ones(1), np.zeros(1)))
    with pytest.raises(DomainPreconditionError):
        crm.quadric_action(m, [1], [1.0], (np.zeros(1), np.zeros(1)))


def test_levi_checks():
    assert crm.quadric_levi_check(crm.QuadricModel(np.zeros((1, 2, 2)))) == 0
    assert crm.quadric_levi_check(crm.heisenberg_model()) < 1e-9
    m = crm.QuadricModel(np.array([[[1, 2 - 1j], [2 + 1j, -3]], [[0, 1j], [-1j, 0]]]))
    assert crm.quadric_levi_check(m) < 1e-9
    sph = crm.sphere_levi_check()
    assert np.allclose(sph["bracket_JX_X"], [2j, 0])
    assert np.allclose(sph["levi_ee"], [-1, 0])


def test_levi_flat_dichotomy():
    omega = lambda m: lambda x, y: crm.quadric_omega(m, x, y)
    flat = crm.QuadricModel(np.zeros((1, 1, 1)))
    heis = crm.heisenberg_model()
    assert np.allclose(crm.levi_from_omega(omega(flat), np.ones(1), np.ones(1)), 0)
    assert np.allclose(crm.levi_from_omega(omega(heis), np.ones(1), np.ones(1)), 1)


def test_linear_check():
    m = crm.heisenberg_model()
    assert crm.quadric_linear_check(m, 1, 1)
    assert crm.quadric_linear_check(m, np.exp(0.7j), 1)
    assert not crm.quadric_linear_check(m, 2, 1)
    assert crm.quadric_linear_check(m, 2, 4)


def test_heis3_unit_and_symmetry():
    x = crm.heis3_random(np.random.default_rng(0))
    assert crm.heis3_product(crm.HEIS3_UNIT, x) == x
    s = crm.heis3_symmetry(x)
    assert s.residual < 1e-12 and crm.heis3_symmetry(s) == x
    with pytest.raises(DomainPreconditionError):
        crm.heis3_product(crm.Heis3Point(1, 0, 0), x)


@given(seeds)
def test_heis3_group_laws(seed):
    rng = np.random.default_rng(seed)
    a, b, c = (crm.heis3_random(rng) for _ in range(3))
    ab = crm.heis3_product(a, b)
    assert ab.residual < 1e-10
    lhs = crm.heis3_product(ab, c)
    rhs = crm.heis3_product(a, crm.heis3_product(b, c))
    assert np.abs(np.subtract(lhs.as_tuple(), rhs.as_tuple())).max() < 1e-10


@given(seeds, st.floats(-3, 3).filter(lambda t: abs(t) > 0.1),
       st.floats(-3, 3).filter(lambda t: abs(t) > 0.1))
def test_heis3_dilations(seed, s, t):
    x = crm.heis3_random(np.random.default_rng(seed))
    y = crm.heis3_dilation(t, x)
    assert y.residual < 1e-9 * max(1, abs(t) ** 3 * abs(x.v), abs(t) ** 3)
    comp = crm.heis3_dilation(s, y)
    direct = crm.heis3_dilation(s * t, x)
    assert np.allclose(comp.as_tuple(), direct.as_tuple(), rtol=1e-12)


def test_syin5_examples():
    assert crm.syin5_membership(0, 0, 0, 0, 0)
    z, w, v1, v2, u = crm.syin5_sample(z=0, beta=0.7, v2=0, gamma=0.2)
    assert w == 0.7j and v1 == 0 and u.real == pytest.approx(0.7 ** 2 / 2)


@given(seeds)
def test_syin5_samples_and_symmetry(seed):
    p = crm.syin5_sample(seed=seed)
    assert crm.syin5_membership(*p)
    s = crm.syin5_symmetry(p)
    assert crm.syin5_residual(*s) < 1e-10
    assert crm.syin5_symmetry(s) == p
