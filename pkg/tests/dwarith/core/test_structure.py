import pytest

from dwarith.core.errors import ModelViolation
from dwarith.core.structure import CheckRecord, CheckReport
from dwarith.cyclotomic import zeta


def test_record(record, record_fail):
    assert record.ok
    assert not record_fail.ok
    assert record.to_json() == {'name': 'test', 'ok': True, 'message': 'test', 'content': {'value': 1}}
    error = record_fail.to_json()['error']
    assert error['code'] == 'model_violation'
    assert CheckRecord('plain', error='went wrong').to_json()['error'] == {'code': 'check_failed',
                                                                          'message': 'went wrong'}


def test_record_content_serialization():
    record = CheckRecord('values', content={'z': zeta(4, 1), 1: [zeta(2, 0)]})
    assert record.to_json()['content'] == {'z': {'coeffs': [0, 1, 0, 0], 'den': 1},
                                           '1': [{'coeffs': [1, 0], 'den': 1}]}


def test_report(record, record_fail):
    report = CheckReport('r', [record])
    assert report.ok
    report.add(record_fail)
    assert not report.ok
    assert len(report) == 2
    assert report.failed == [record_fail]
    assert report.succeeded == [record]
    assert [r.name for r in report] == ['test', 'test']


def test_report_check():
    report = CheckReport('r')
    passed = report.check('equal', 1 == 1, content={'left': 1, 'right': 1})
    failed = report.check('unequal', 1 == 2, message='sides differ')
    with_error = report.check('raised', False, error=ModelViolation('bad'))
    assert passed.ok and not failed.ok and not with_error.ok
    assert failed.error == 'sides differ'
    assert report.check('silent', False).error == 'check failed'
    summary = report.to_json()
    assert summary['passed'] == 1
    assert summary['total'] == 4
    assert summary['ok'] is False


if __name__ == '__main__':
    pytest.main([__file__])
