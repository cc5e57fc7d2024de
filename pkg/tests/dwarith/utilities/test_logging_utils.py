import logging

import pytest

from dwarith.core.errors import ModelViolation
from dwarith.utilities import logging_utils


@logging_utils.log_entrance_exit
def _double(x):
    """Double x."""
    return 2 * x


@logging_utils.log_entrance_exit
def _violate():
    raise ModelViolation('broken', where='here')


@pytest.fixture()
def logging_enabled():
    previous = logging.root.manager.disable
    logging.disable(logging.NOTSET)
    yield
    logging.disable(previous)


def test_passthrough(caplog, logging_enabled):
    with caplog.at_level(logging.INFO, logger='dwarith.utilities.logging_utils'):
        assert _double(3) == 6
    assert _double.__name__ == '_double'
    assert _double.__doc__ == 'Double x.'
    messages = [r.getMessage() for r in caplog.records]
    assert 'Entering _double' in messages
    assert any(m.startswith('Exiting _double') for m in messages)


def test_errors_are_logged_and_reraised(caplog, logging_enabled):
    with caplog.at_level(logging.ERROR, logger='dwarith.utilities.logging_utils'):
        with pytest.raises(ModelViolation):
            _violate()
    assert any('model_violation' in r.getMessage() for r in caplog.records)


if __name__ == '__main__':
    pytest.main([__file__])
