import copy
import os

import pytest

from dwarith import models
from dwarith.cochains import cyclic_cocycle, pullback
from dwarith.core.errors import (SCHEMA_ERROR, DanglingReference, NotACocycle, NotAHomomorphism,
                                 SchemaError)
from dwarith.groups import cyclic, direct_product, hom_from_images, identity_hom, symmetric
from dwarith.utilities import json_utils

SHIPPED = ['classical_counts', 'classical_s3', 'closed_gluing', 'forced_vanishing_z4', 'gluing_tube',
           'klein_paired', 'klein_unpaired', 'nonabelian_s3', 'tame_z4', 'tame_z4_mod4']


def _shipped_document(name):
    paths = {os.path.splitext(os.path.basename(p))[0]: p for p in models.shipped_model_paths()}
    return json_utils.read_json_file(paths[name])


@pytest.fixture()
def tame_doc():
    return copy.deepcopy(_shipped_document('tame_z4'))


@pytest.fixture()
def gluing_doc():
    return copy.deepcopy(_shipped_document('gluing_tube'))


def test_shipped_paths(shipped):
    names = [os.path.splitext(os.path.basename(p))[0] for p in models.shipped_model_paths()]
    assert names == SHIPPED
    assert sorted(shipped) == SHIPPED


def test_shipped_expectations(shipped):
    assert shipped['klein_unpaired'].expected_error == 'reciprocity_violation'
    assert shipped['tame_z4'].expected_error is None
    assert shipped['tame_z4'].description.startswith('Tame cyclic model')


def test_parse_tame(shipped):
    model = shipped['tame_z4']
    assert model.name == 'tame_z4'
    assert model.modulus == 2
    assert list(model.locals) == ['p', 'q']
    assert model.locals['q'].orientation == -1
    assert [c.label for c in model.cocycle_changes] == ['b11', 'b01']
    assert model.to_json()['isomorphisms'] == ['times3']
    assert model.overrides[0][0] == 'p'
    assert model.overrides[0][1].key == (1,)


def test_section_overrides(shipped):
    model = shipped['tame_z4']
    assert model.section(model.globals['S'].data).label == 'configured'
    assert model.section([model.locals['q']]).label == 'default'


def test_collected_schema_errors():
    with pytest.raises(SchemaError) as excinfo:
        models.parse_config({'modulus': 1, 'gauge_group': 5, 'bogus': 1})
    paths = [path for path, _ in excinfo.value.errors]
    assert paths == ['$.bogus', '$.modulus', '$.gauge_group']
    assert excinfo.value.exit_status == SCHEMA_ERROR
    assert excinfo.value.to_json()['code'] == 'schema_error'


def test_not_an_object():
    with pytest.raises(SchemaError):
        models.parse_config([1, 2, 3])


def test_nested_schema_errors(tame_doc):
    tame_doc['locals'][0]['orientation'] = 2
    del tame_doc['globals'][0]['attachments'][1]['iota_map']
    tame_doc['sections'][0]['shift'] = 'one'
    with pytest.raises(SchemaError) as excinfo:
        models.parse_config(tame_doc)
    paths = [path for path, _ in excinfo.value.errors]
    assert paths == ['$.locals[0].orientation', '$.globals[0].attachments[1].iota_map', '$.sections[0].shift']


def test_dangling_reference(tame_doc):
    tame_doc['globals'][0]['attachments'][0]['local'] = 'r'
    with pytest.raises(DanglingReference) as excinfo:
        models.parse_config(tame_doc)
    assert excinfo.value.exit_status == SCHEMA_ERROR
    assert excinfo.value.details['name'] == 'r'


def test_dangling_isomorphism_target(tame_doc):
    tame_doc['isomorphisms'][0]['target'] = 'T'
    with pytest.raises(DanglingReference):
        models.parse_config(tame_doc)


def test_not_a_cocycle(tame_doc):
    tame_doc['modulus'] = 4
    with pytest.raises(NotACocycle):
        models.parse_config(tame_doc)


def test_duplicate_local(tame_doc):
    tame_doc['locals'][1]['name'] = 'p'
    with pytest.raises(SchemaError):
        models.parse_config(tame_doc)


def test_unknown_inv(tame_doc):
    tame_doc['locals'][0]['inv'] = 'quadratic'
    with pytest.raises(SchemaError) as excinfo:
        models.parse_config(tame_doc)
    assert excinfo.value.errors[0][0] == '$.locals[0].inv'


def test_klein_inv_on_cyclic_group(tame_doc):
    tame_doc['locals'][0]['inv'] = 'klein'
    with pytest.raises(SchemaError) as excinfo:
        models.parse_config(tame_doc)
    assert excinfo.value.errors[0][0] == '$.locals[0].inv'
    assert excinfo.value.exit_status == SCHEMA_ERROR


def test_local_map_count(tame_doc):
    tame_doc['isomorphisms'][0]['local_maps'] = ['multiply(3)']
    with pytest.raises(SchemaError):
        models.parse_config(tame_doc)


def test_split_must_match(gluing_doc):
    gluing_doc['gluings'][0]['split'] = {'S1': ['p'], 'S2': ['q']}
    with pytest.raises(SchemaError):
        models.parse_config(gluing_doc)


def test_u_map_needs_unramified(gluing_doc):
    gluing_doc['gluings'][0]['u_maps']['q'] = 'reduce'
    with pytest.raises(SchemaError):
        models.parse_config(gluing_doc)


def test_parse_group():
    assert models.parse_group('cyclic(3)') == cyclic(3)
    table = {'table': [[0, 1], [1, 0]], 'generators': [1], 'label': 'C2', 'names': ['e', 's']}
    assert models.parse_group(table).names == ('e', 's')
    with pytest.raises(SchemaError):
        models.parse_group('dodecahedral(3)')
    with pytest.raises(SchemaError):
        models.parse_group({'generators': [1]})


def test_parse_map():
    z8, z4, v4, z2 = cyclic(8), cyclic(4), direct_product(2, 2), cyclic(2)
    assert models.parse_map('identity', z4, z4) == identity_hom(z4)
    assert models.parse_map('reduce', z8, z4).key == (1,)
    assert models.parse_map('trivial', z4, z2).key == (0,)
    assert models.parse_map('multiply(3)', z4, z4).key == (3,)
    assert models.parse_map('project(1)', v4, z2).key == (0, 1)
    assert models.parse_map([0, 1, 0, 1], z4, z2).key == (1,)
    assert models.parse_map({'generators': [2]}, z4, z4).key == (2,)
    with pytest.raises(SchemaError):
        models.parse_map('identity', z8, z4)
    with pytest.raises(SchemaError):
        models.parse_map('rotate', z4, z4)
    with pytest.raises(SchemaError):
        models.parse_map({'images': [1]}, z4, z4)
    with pytest.raises(NotAHomomorphism):
        models.parse_map([0, 1, 0, 1], z4, z4)
    with pytest.raises(NotAHomomorphism):
        models.parse_map({'generators': [1]}, z4, z8)


def test_element_names():
    group = models.parse_group({'table': [[0, 1], [1, 0]], 'generators': [1], 'names': ['e', 's']})
    assert models.parse_map(['e', 's'], group, group) == identity_hom(group)
    with pytest.raises(SchemaError):
        models.parse_map(['e', 'x'], group, group)


def test_parse_cochain(z2):
    assert models.parse_cochain('zero', z2, 2, 2).is_zero
    b = models.parse_cochain([[[1, 1], 1]], z2, 2, 2)
    assert b(1, 1) == 1
    with pytest.raises(SchemaError):
        models.parse_cochain({'entries': [[[1], 1]]}, z2, 2, 2)
    with pytest.raises(SchemaError):
        models.parse_cochain(7, z2, 2, 2)


def test_cocycle_via_quotient(shipped):
    s3 = symmetric(3)
    sign = hom_from_images(s3, cyclic(2), [1, 0])
    cocycle = shipped['nonabelian_s3'].cocycle
    assert cocycle == pullback(cyclic_cocycle(cyclic(2), 2, 1), sign)
    t, r = s3.element('(12)'), s3.element('(123)')
    assert cocycle(t, t, t) == 1
    assert cocycle(r, r, r) == 0


@pytest.mark.parametrize('via', ['sign', {'group': 'cyclic(2)'}])
def test_cocycle_via_malformed(gluing_doc, via):
    gluing_doc['cocycle']['via'] = via
    with pytest.raises(SchemaError) as excinfo:
        models.parse_config(gluing_doc)
    assert excinfo.value.errors[0][0] == '$.cocycle.via'


def test_load_config_errors(tmpdir):
    with pytest.raises(SchemaError):
        models.load_config(str(tmpdir.join('missing.json')))
    broken = tmpdir.join('broken.json')
    broken.write('{"modulus": 2,')
    with pytest.raises(SchemaError) as excinfo:
        models.load_config(str(broken))
    assert 'invalid JSON' in excinfo.value.message


def test_load_config_name(tmpdir, tame_doc):
    path = tmpdir.join('my_model.json')
    json_utils.write_json(tame_doc, str(path))
    assert models.load_config(str(path)).name == 'my_model'


if __name__ == '__main__':
    pytest.main([__file__])
