import pytest

from dwarith.core.structure import CheckReport
from dwarith.utilities import data_utils


def test_concatenate_reports(record, record_fail):
    first = CheckReport('a', [record, record_fail])
    second = CheckReport('b', [record])
    combined = data_utils.concatenate_reports((first, second))
    assert combined.name == 'a+b'
    assert len(combined) == 3
    assert len(combined.failed) == 1
    assert len(combined.succeeded) == 2

    named = data_utils.concatenate_reports([first, first], 'both')
    assert named.name == 'both'
    assert len(named.failed) == 2


def test_concatenate_wrong_type(record):
    with pytest.raises(TypeError):
        data_utils.concatenate_reports([CheckReport('a'), [record]])


if __name__ == '__main__':
    pytest.main([__file__])
