import pytest

from dwarith.core import errors


@pytest.mark.parametrize('cls, code, status', [
    (errors.NotAGroup, 'not_a_group', errors.MODEL_VIOLATION),
    (errors.GeneratorsDontGenerate, 'generators_dont_generate', errors.MODEL_VIOLATION),
    (errors.NotAHomomorphism, 'not_a_homomorphism', errors.MODEL_VIOLATION),
    (errors.DegreeTooLow, 'degree_too_low', errors.MODEL_VIOLATION),
    (errors.NotACocycle, 'not_a_cocycle', errors.MODEL_VIOLATION),
    (errors.MismatchedFiber, 'mismatched_fiber', errors.MODEL_VIOLATION),
    (errors.ModelViolation, 'model_violation', errors.MODEL_VIOLATION),
    (errors.ReciprocityViolation, 'reciprocity_violation', errors.MODEL_VIOLATION),
    (errors.BetaDependence, 'beta_dependence', errors.MODEL_VIOLATION),
    (errors.ModulusMismatch, 'modulus_mismatch', errors.MODEL_VIOLATION),
    (errors.BaseMismatch, 'base_mismatch', errors.MODEL_VIOLATION),
    (errors.InvalidWitness, 'invalid_witness', errors.MODEL_VIOLATION),
    (errors.ResourceLimit, 'resource_limit', errors.MODEL_VIOLATION),
    (errors.DanglingReference, 'dangling_reference', errors.SCHEMA_ERROR),
    (errors.InvariantFailure, 'invariant_failure', errors.INTERNAL_FAILURE),
])
def test_codes(cls, code, status):
    e = cls('message', value=1)
    assert isinstance(e, errors.DWArithError)
    assert e.code == code
    assert e.exit_status == status
    assert e.to_json() == {'code': code, 'message': 'message', 'details': {'value': 1}}


def test_details_are_jsonable():
    e = errors.NotACocycle('d(c) is nonzero', tuple=(0, 1, 1), group=object, nested={'b': [1, 2], 'a': None})
    details = e.to_json()['details']
    assert details['tuple'] == [0, 1, 1]
    assert details['nested'] == {'a': None, 'b': [1, 2]}
    assert isinstance(details['group'], str)


def test_schema_error():
    e = errors.SchemaError([('$.modulus', 'must be at least 2'), ('$.bogus', 'unknown key')])
    assert e.exit_status == errors.SCHEMA_ERROR
    assert e.message == '$.modulus: must be at least 2; $.bogus: unknown key'
    assert e.to_json()['details'] == {'errors': [['$.modulus', 'must be at least 2'], ['$.bogus', 'unknown key']]}


if __name__ == '__main__':
    pytest.main([__file__])
