import numpy as np
import pytest

from dwarith import cochains
from dwarith.cochains import Cochain
from dwarith.core.errors import DegreeTooLow, ModulusMismatch, NotACocycle, ResourceLimit
from dwarith.groups import cyclic, direct_product, identity_hom


def test_cochain_arithmetic(z4, rng):
    a = Cochain.random(z4, 2, 4, rng)
    b = Cochain.random(z4, 2, 4, rng)
    assert (a + b) - b == a
    assert a * 4 == Cochain.zero(z4, 2, 4)
    assert -a + a == Cochain.zero(z4, 2, 4)
    with pytest.raises(ModulusMismatch):
        a + Cochain.zero(z4, 2, 2)
    with pytest.raises(ValueError):
        Cochain(z4, 1, 1, [0, 0, 0, 0])


def test_degree_zero_cochain(z2):
    constant = Cochain(z2, 0, 2, 3)
    assert constant() == 1
    assert constant.values.shape == ()
    assert cochains.coboundary(constant).is_zero
    assert constant + constant == Cochain.zero(z2, 0, 2)

    h = cochains.homotopy_h(1, Cochain(z2, 1, 2, [0, 1]))
    assert h.degree == 0
    assert h() == 1


def test_from_entries(z2):
    alpha = Cochain.from_entries(z2, 2, 2, [[[1, 1], 1]])
    assert alpha(1, 1) == 1
    assert alpha(0, 1) == 0
    assert alpha.to_entries() == [[[1, 1], 1]]
    with pytest.raises(ValueError):
        Cochain.from_entries(z2, 2, 2, [[[1], 1]])


def test_d_squared_is_zero(s3, rng):
    for degree in (0, 1, 2):
        alpha = Cochain.random(s3, degree, 3, rng)
        assert cochains.coboundary(cochains.coboundary(alpha)).is_zero


def test_coboundary_matrix_agrees(v4, rng):
    alpha = Cochain.random(v4, 1, 2, rng)
    matrix = cochains.coboundary_matrix(v4, 2)
    assert np.array_equal(matrix.dot(alpha.values.ravel()) % 2,
                          cochains.coboundary(alpha).values.ravel())


def test_cyclic_cocycle():
    assert cochains.first_failure(cochains.cyclic_cocycle(cyclic(2), 2, 1)) is None
    assert cochains.first_failure(cochains.cyclic_cocycle(cyclic(4), 4, 1)) is None
    bad = cochains.cyclic_cocycle(cyclic(2), 4, 1)
    assert cochains.first_failure(bad) is not None
    with pytest.raises(NotACocycle):
        cochains.require_cocycle(bad)


def test_solve_coboundary(z4, rng):
    beta = Cochain.random(z4, 1, 4, rng)
    z = cochains.coboundary(beta)
    solution = cochains.solve_coboundary(z)
    assert cochains.coboundary(solution) == z
    other = cochains.solve_coboundary(z, np.random.default_rng(11))
    assert cochains.coboundary(other) == z
    assert cochains.solve_coboundary(Cochain.zero(z4, 2, 4)).is_zero


def test_nontrivial_class_is_not_a_coboundary(z2):
    carry = Cochain.from_entries(z2, 2, 2, [[[1, 1], 1]])
    assert cochains.coboundary(carry).is_zero
    assert cochains.solve_coboundary(carry) is None
    assert not cochains.is_coboundary(carry)
    with pytest.raises(DegreeTooLow):
        cochains.solve_coboundary(Cochain.zero(z2, 0, 2))


@pytest.mark.parametrize('group, modulus, degree, order', [
    (cyclic(4), 2, 1, 2),
    (cyclic(4), 2, 2, 2),
    (cyclic(2), 2, 3, 2),
    (cyclic(3), 2, 2, 1),
    (cyclic(2), 2, 0, 2),
    (direct_product(2, 2), 2, 2, 8),
])
def test_cohomology_orders(group, modulus, degree, order):
    basis = cochains.cohomology_basis(group, modulus, degree)
    assert basis.order == order
    for z in basis.cocycle_basis:
        assert cochains.coboundary(z).is_zero


def test_cohomology_structure(v4):
    assert cochains.cohomology_basis(v4, 2, 1).quotient_structure == [2, 2]


def test_pullback_along_identity(z4, rng):
    alpha = Cochain.random(z4, 3, 2, rng)
    assert cochains.pullback(alpha, identity_hom(z4)) == alpha


def test_conjugation_trivial_on_abelian(z4, rng):
    alpha = Cochain.random(z4, 2, 3, rng)
    for sigma in z4.elements:
        assert cochains.conj_act(sigma, alpha) == alpha


def test_homotopy_degrees(z2):
    with pytest.raises(DegreeTooLow):
        cochains.homotopy_h(1, Cochain.zero(z2, 0, 2))
    with pytest.raises(DegreeTooLow):
        cochains.homotopy_H(1, 1, Cochain.zero(z2, 1, 2))
    assert cochains.homotopy_h(1, Cochain.zero(z2, 3, 2)).degree == 2
    assert cochains.homotopy_H(1, 1, Cochain.zero(z2, 3, 2)).degree == 1


@pytest.mark.parametrize('group, modulus, degree', [
    (cyclic(3), 3, 2),
    (direct_product(2, 2), 2, 1),
    (cyclic(4), 4, 3),
])
def test_homotopy_identities_sampled(group, modulus, degree, rng):
    report = cochains.check_homotopy_identities(group, modulus, degree, rng=rng, samples=4)
    assert report.ok, report.to_json()


def test_homotopy_identities_nonabelian(s3, rng):
    report = cochains.check_homotopy_identities(s3, 2, 2, rng=rng, samples=2)
    assert report.ok, report.to_json()


def test_homotopy_identities_twisted(z2, rng):
    report = cochains.check_homotopy_identities(z2, 3, 2, rng=rng, samples=4, character=(1, 2))
    assert report.ok, report.to_json()


def test_homotopy_identities_exhaustive(z2):
    report = cochains.check_homotopy_identities(z2, 2, 1, exhaustive=True)
    assert report.ok
    assert report.records[0].content['cochains'] == 4


def test_exhaustive_limit():
    with pytest.raises(ResourceLimit):
        cochains.check_homotopy_identities(cyclic(3), 2, 2, exhaustive=True)


def test_cocycle_corollary(s3, rng):
    alpha = cochains.coboundary(Cochain.random(s3, 2, 2, rng))
    assert cochains.check_cocycle_corollary(alpha).ok
    assert cochains.check_cocycle_corollary(cochains.cyclic_cocycle(cyclic(4), 4, 1)).ok
    with pytest.raises(NotACocycle):
        cochains.check_cocycle_corollary(cochains.cyclic_cocycle(cyclic(2), 4, 1))


def test_h_class_measures_conjugation(s3, rng):
    c = cochains.coboundary(Cochain.random(s3, 2, 3, rng))
    for g in s3.elements:
        assert cochains.conj_act(g, c) == c + cochains.coboundary(cochains.h_class(g, c))


if __name__ == '__main__':
    pytest.main([__file__])
