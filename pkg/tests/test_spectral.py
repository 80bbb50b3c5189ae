import numpy as np
import pytest
from hypothesis import given, strategies as st

from oracles import singular_values as svd_oracle
from symcr.errors import DomainPreconditionError
from symcr.jts import CartanI, CartanII, element, parse_system, random_element, random_unitary, zero
from symcr.peirce import maximal_standard_tripotent, validate_frame
from symcr.spectral import (Membership, RankClass, domain_membership,
                            element_with_singular_values, random_tripotent, shilov_membership,
                            shilov_membership_isometry, singular_values, spectral_decompose,
                            spectral_norm, tripotent_part, tripotent_rank, tripotent_rank_class)

seeds = st.integers(0, 2**32 - 1)
simple = st.sampled_from(["I:2,1", "I:2,2", "I:3,2", "I:4,2", "II:5", "II:7"])


@given(seeds, simple)
def test_decomposition_against_svd(seed, spec):
    s = parse_system(spec)
    a = random_element(s, np.random.default_rng(seed))
    sd = spectral_decompose(a)
    assert sd.residual < 1e-8
    kind = "I" if isinstance(s, CartanI) else "II"
    assert np.allclose(sd.lambdas, svd_oracle(a.matrix, kind), atol=1e-9)
    assert np.all(np.diff(sd.lambdas) <= 0)
    validate_frame(sd.frame.members)


@given(seeds)
def test_product_decomposition(seed):
    s = parse_system("I:2,2xII:5")
    a = random_element(s, np.random.default_rng(seed))
    sd = spectral_decompose(a)
    assert sd.residual < 1e-8 and len(sd.frame) == 4
    assert np.allclose(sd.lambdas, singular_values(a))


def test_diagonal_example():
    s = CartanI(2, 2)
    sd = spectral_decompose(element(s, np.diag([0.9, 0.3])))
    assert np.allclose(sd.lambdas, [0.9, 0.3])


def test_zero_and_rank_deficient_type_II():
    s = CartanII(7)
    sd = spectral_decompose(zero(s))
    assert np.all(sd.lambdas == 0) and len(sd.frame) == 3
    a = element_with_singular_values(s, [2.0, 0.5, 0.0], np.random.default_rng(1))
    sd = spectral_decompose(a)
    assert np.allclose(sd.lambdas, [2.0, 0.5, 0.0]) and sd.residual < 1e-12
    validate_frame(sd.frame.members)


def test_membership_and_norm():
    s = CartanI(2, 2)
    assert domain_membership(element(s, np.diag([0.5, 0.2]))) is Membership.INTERIOR
    assert domain_membership(element(s, np.diag([1.0, 0.2]))) is Membership.BOUNDARY
    assert domain_membership(element(s, np.diag([2.0, 0.2]))) is Membership.EXTERIOR
    assert spectral_norm(element(s, np.diag([2.0, 0.2]))) == pytest.approx(2.0)


@given(seeds)
def test_shilov_tests_agree(seed):
    rng = np.random.default_rng(seed)
    for s in (CartanI(3, 2), CartanI(2, 2)):
        lams = [1.0, 1.0] if rng.random() < 0.5 else [1.0, rng.uniform(0, 0.99)]
        z = element_with_singular_values(s, lams, rng)
        assert shilov_membership(z) == shilov_membership_isometry(z) == (lams[1] == 1.0)


def test_unitary_is_shilov():
    u = random_unitary(2, np.random.default_rng(0))
    assert shilov_membership(element(CartanI(2, 2), u))


@given(seeds)
def test_tripotent_part(seed):
    rng = np.random.default_rng(seed)
    s = CartanI(3, 2)
    a = element_with_singular_values(s, [1.0, 0.4], rng)
    e, u = tripotent_part(a)
    assert tripotent_rank(e) == 1
    assert (e.element + u - a).norm() < 1e-12
    assert spectral_norm(u) == pytest.approx(0.4)
    with pytest.raises(DomainPreconditionError):
        tripotent_part(element_with_singular_values(s, [1.5, 0.4], rng))


def test_rank_classes():
    s = CartanI(3, 2)
    assert tripotent_rank_class(random_tripotent(s, 0, 0)) is RankClass.ZERO
    assert tripotent_rank_class(random_tripotent(s, 1, 0)) is RankClass.MINIMAL
    assert tripotent_rank_class(random_tripotent(s, 2, 0)) is RankClass.MAXIMAL
    assert tripotent_rank_class(random_tripotent(CartanI(4, 3), 2, 0)) is RankClass.INTERMEDIATE
    assert tripotent_rank_class(maximal_standard_tripotent(CartanII(5))) is RankClass.MAXIMAL


@given(seeds, st.sampled_from(["I:3,2", "II:7", "I:2,2xI:2,1"]), st.data())
def test_random_tripotent_rank(seed, spec, data):
    s = parse_system(spec)
    k = data.draw(st.integers(0, s.rank))
    assert tripotent_rank(random_tripotent(s, k, seed)) == k
