import logging
import os

import pytest
from sympy import Rational

import dwarith
from dwarith.global_theory import cs_closed, cs_table
from dwarith.local_theory import lambda_p, lambda_S, local_homs
from dwarith.models import shipped_model_paths
from dwarith.quantum import (check_equivariance, equivariance_system_dimension, glue_pair, partition_tube,
                             tensor_and_dual)
from dwarith.suite import run_suite

logging.disable(logging.WARNING)


@pytest.mark.parametrize('path', shipped_model_paths(), ids=lambda p: os.path.basename(p))
def test_suite_passes(path):
    reports = run_suite([path], homotopy=False)
    for report in reports:
        assert report.ok, report.to_json()


def test_classical_values(shipped):
    model = shipped['classical_counts']
    values = {label: dwarith.partition_global(gd, model.section([]))[()] for label, gd in model.globals.items()}
    assert values == {'Z3': Rational(1, 2), 'Z2': 1, 'V4': 2}
    s3 = shipped['classical_s3']
    assert dwarith.partition_global(s3.globals['V4'], s3.section([]))[()] == Rational(5, 3)


def test_tame_values(shipped):
    model = shipped['tame_z4']
    gd = model.globals['S']
    table = cs_table(gd, model.section(gd.data))
    assert [(list(rho.key), value) for rho, value in table.items()] == [([0], 0), ([1], 1)]
    default = dwarith.default_section(gd.data, model.gauge_group, model.cocycle)
    assert list(cs_table(gd, default).values()) == [0, 0]


def test_tame_mod4(shipped):
    model = shipped['tame_z4_mod4']
    gd = model.globals['S']
    x = model.section(gd.data)
    assert dwarith.theta_space(x).dimension == len(x.space())
    assert sum(dwarith.partition_global(gd, x).entries.values()) == 1


def test_klein_dimension(shipped):
    model = shipped['klein_paired']
    assert dwarith.theta_space(model.section(model.globals['S'].data)).dimension == 16


def test_closed_invariants(shipped):
    model = shipped['closed_gluing']
    for gl in model.closed_gluings():
        x = model.section(gl.outer.data)
        assert all(cs_closed(gl, x, rho1) == 0 for rho1 in gl.inner.homs(model.gauge_group))


def _brute_dimension(x):
    def lam(g, rho_S):
        return lambda_S(x, g, rho_S)

    return equivariance_system_dimension(x.space(), x.gauge_group, lam, x.modulus)


def test_forced_vanishing(shipped):
    model = shipped['forced_vanishing_z4']
    gd = model.globals['S']
    x = model.section(gd.data)
    p = model.locals['p']
    doubled = local_homs(p, model.gauge_group)[1]
    assert doubled.key == (2,)
    assert lambda_p(x, p, 1, doubled) % 2 == 1

    single = x.restrict(['p'])
    space = dwarith.theta_space(single)
    assert space.admissible == [True, False]
    assert list(space.orbits[1].stabilizer) == [0, 1, 2, 3]
    assert space.dimension == 1
    assert _brute_dimension(single) == 1

    space = dwarith.theta_space(x)
    assert space.admissible == [True, False, False, True]
    assert space.dimension == 2
    assert _brute_dimension(x) == 2


def test_forced_vanishing_partition(shipped):
    model = shipped['forced_vanishing_z4']
    gd = model.globals['S']
    x = model.section(gd.data)
    z = dwarith.partition_global(gd, x)
    assert list(z.entries.values()) == [Rational(1, 4), 0, 0, Rational(1, 4)]
    assert check_equivariance(z) == []

    report = tensor_and_dual(x.restrict(['p']), x.restrict(['q']))
    assert report.ok, report.to_json()
    dims = [r.content for r in report.records if r.name == 'tensor_dimension'][0]
    assert dims == {'dim_1': 1, 'dim_2': 1, 'joint': 2, 'surplus': 1}


def test_nonabelian_spaces(shipped):
    model = shipped['nonabelian_s3']
    assert not model.gauge_group.is_abelian
    gl = model.gluings[0]
    x = model.section(gl.outer.data)
    outer = dwarith.theta_space(x)
    assert sorted(len(o.members) for o in outer.orbits) == [1, 3, 3, 3, 6]
    assert all(outer.admissible)
    assert outer.dimension == 5
    assert _brute_dimension(x) == 5

    inner = x.restrict(gl.s1_names)
    assert dwarith.theta_space(inner).dimension == 2
    assert _brute_dimension(inner) == 2

    report = tensor_and_dual(x.restrict(['q']), x.restrict(['p']))
    assert report.ok, report.to_json()
    dims = [r.content for r in report.records if r.name == 'tensor_dimension'][0]
    assert dims['surplus'] == 1


def test_nonabelian_gluing(shipped):
    model = shipped['nonabelian_s3']
    gl = model.gluings[0]
    x = model.section(gl.outer.data)
    z = dwarith.partition_global(gl.outer, x)
    assert check_equivariance(z) == []
    tube = partition_tube(gl.s2_data, x.restrict(gl.s2_names), 'reversed')
    assert glue_pair(z, tube) == dwarith.partition_global(gl.inner, x.restrict(gl.s1_names))


if __name__ == '__main__':
    pytest.main([__file__])
