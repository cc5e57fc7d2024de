import pytest

from dwarith import local_theory
from dwarith.cochains import Cochain, coboundary
from dwarith.core.errors import ModelViolation
from dwarith.groups import act_on_tuple, cyclic, hom_from_images, trivial_hom
from dwarith.local_theory import InvFunctional, LocalDatum


def test_klein_inv(v4):
    inv, witness = local_theory.klein_inv(v4, 2)
    assert inv.evaluate(witness) == 1
    assert coboundary(witness).is_zero
    assert inv.coboundary_failures() == []
    with pytest.raises(ValueError):
        local_theory.klein_inv(cyclic(4), 2)


def test_cyclic_inv(z4):
    inv, witness = local_theory.cyclic_inv(z4, 4)
    assert inv(witness) == 1
    assert inv.coboundary_failures() == []
    with pytest.raises(ValueError):
        local_theory.cyclic_inv(z4, 3)


def test_find_unit_cocycle(v4):
    inv, _ = local_theory.klein_inv(v4, 2)
    unit = local_theory.find_unit_cocycle(inv)
    assert unit is not None
    assert inv(unit) == 1
    assert coboundary(unit).is_zero


def test_inv_not_vanishing_on_coboundaries(z2):
    inv = InvFunctional(z2, 2, {(1, 1): 1})
    assert inv.coboundary_failures() != []
    report = local_theory.check_local_axioms(LocalDatum('bad', z2, inv), z2, Cochain.zero(z2, 3, 2))
    assert not report.ok
    assert [r.name for r in report.failed] == ['inv_vanishes_on_coboundaries']


def test_orientation(z4):
    inv, witness = local_theory.cyclic_inv(z4, 4)
    datum = LocalDatum('p', z4, inv, witness=witness)
    assert datum.inv_value(witness) == 1
    assert datum.reversed().inv_value(witness) == 3
    assert datum.reversed().reversed().orientation == 1
    assert datum.reversed().inv_value(datum.reversed().unit_cocycle) == 1
    assert local_theory.reverse_orientation(datum).inv_value(witness) == 3
    assert [d.orientation for d in local_theory.reverse_data([datum, datum.reversed()])] == [-1, 1]
    with pytest.raises(ValueError):
        LocalDatum('p', z4, inv, orientation=2)


def test_local_axioms(tame_pair, z2, xyz):
    for datum in tame_pair:
        report = local_theory.check_local_axioms(datum, z2, xyz)
        assert report.ok, report.to_json()


def test_local_solvability_failure(z2, xyz):
    inv, witness = local_theory.cyclic_inv(z2, 2)
    datum = LocalDatum('r', z2, inv, witness=witness)
    assert not local_theory.check_local_axioms(datum, z2, xyz).ok
    with pytest.raises(ModelViolation):
        local_theory.default_section([datum], z2, xyz)


def test_unramified_quotient_must_be_onto(z4, z2):
    with pytest.raises(ModelViolation):
        local_theory.UnramifiedQuotient(z2, trivial_hom(z4, z2))


def test_default_section(tame_pair, z2, xyz):
    x = local_theory.default_section(tame_pair, z2, xyz)
    assert x.validate() is x
    assert x.names == ['p', 'q']
    assert len(x.space()) == 4
    assert x.space()[0] == tuple(local_theory.local_homs(d, z2)[0] for d in tame_pair)


def test_lambda_cocycle_law(tame_pair, z2, xyz, rng):
    x = local_theory.perturb_section(local_theory.default_section(tame_pair, z2, xyz), rng)
    for rho_S in x.space():
        assert local_theory.lambda_S(x, 0, rho_S) == 0
        for g in z2.elements:
            for h in z2.elements:
                lhs = local_theory.lambda_S(x, z2.multiply(g, h), rho_S)
                rhs = local_theory.lambda_S(x, g, rho_S) + local_theory.lambda_S(x, h, act_on_tuple(rho_S, g))
                assert lhs == rhs % 2


def test_lambda_on_nonabelian_gauge_group(v4, s3, rng):
    inv, witness = local_theory.klein_inv(v4, 2)
    data = [LocalDatum('a', v4, inv, witness=witness)]
    x = local_theory.perturb_section(local_theory.default_section(data, s3, Cochain.zero(s3, 3, 2)), rng)
    for rho_S in x.space():
        for g in s3.elements:
            for h in s3.elements:
                lhs = local_theory.lambda_S(x, s3.multiply(g, h), rho_S)
                rhs = local_theory.lambda_S(x, g, rho_S) + local_theory.lambda_S(x, h, act_on_tuple(rho_S, g))
                assert lhs == rhs % 2


def test_section_change(tame_pair, z2, xyz):
    x = local_theory.default_section(tame_pair, z2, xyz)
    rho_S = x.space()[3]
    shifted = x.shifted('p', rho_S[0], 1)
    assert local_theory.delta_sections(x, x, rho_S) == 0
    assert local_theory.delta_sections(x, shifted, rho_S) == 1
    assert local_theory.delta_sections(x, shifted, x.space()[0]) == 0
    configured = local_theory.apply_shifts(x, [('p', rho_S[0], 1)], label='configured')
    assert configured.label == 'configured'
    assert local_theory.delta_sections(shifted, configured, rho_S) == 0


def test_restrict_concat_reverse(tame_pair, z2, xyz):
    x = local_theory.default_section(tame_pair, z2, xyz)
    p, q = x.restrict(['p']), x.restrict(['q'])
    assert q.concat(p).names == ['q', 'p']
    with pytest.raises(ValueError):
        p.concat(p)
    reversed_ = x.reversed()
    assert reversed_.label == 'default*'
    assert [d.orientation for d in reversed_.data] == [-1, 1]
    rho_S = x.space()[3]
    for g in z2.elements:
        assert local_theory.lambda_S(reversed_, g, rho_S) == -local_theory.lambda_S(x, g, rho_S) % 2


def test_disjoint_union(tame_pair):
    assert len(local_theory.disjoint_union(tame_pair[:1], tame_pair[1:])) == 2
    with pytest.raises(ValueError):
        local_theory.disjoint_union(tame_pair, tame_pair[:1])


def test_unramified_datum(z4, z2, xyz):
    inv, witness = local_theory.cyclic_inv(cyclic(8), 2)
    quotient = local_theory.UnramifiedQuotient(z4, hom_from_images(cyclic(8), z4, [1]))
    datum = LocalDatum('p', cyclic(8), inv, witness=witness, unramified=quotient)
    report = local_theory.check_local_axioms(datum, z2, xyz)
    assert report.ok
    assert 'unramified_quotient' in [r.name for r in report.records]
    assert datum.to_json()['unramified']['group'] == 'cyclic(4)'


if __name__ == '__main__':
    pytest.main([__file__])
