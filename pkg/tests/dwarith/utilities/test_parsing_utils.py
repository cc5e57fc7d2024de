import pytest

from dwarith.utilities import parsing_utils


def test_parse_call():
    assert parsing_utils.parse_call('cyclic(4)') == ('cyclic', (4,))
    assert parsing_utils.parse_call(' product(2, 3) ') == ('product', (2, 3))
    assert parsing_utils.parse_call('identity') == ('identity', ())
    assert parsing_utils.parse_call('trivial()') == ('trivial', ())
    with pytest.raises(ValueError):
        parsing_utils.parse_call('cyclic(x)')
    with pytest.raises(ValueError):
        parsing_utils.parse_call('4cyclic')


def test_parse_cycles():
    assert parsing_utils.parse_cycles('()', 3) == (0, 1, 2)
    assert parsing_utils.parse_cycles('(12)', 3) == (1, 0, 2)
    assert parsing_utils.parse_cycles('(1 2 3)', 3) == (1, 2, 0)
    assert parsing_utils.parse_cycles('(12)(34)', 4) == (1, 0, 3, 2)
    with pytest.raises(ValueError):
        parsing_utils.parse_cycles('(14)', 3)
    with pytest.raises(ValueError):
        parsing_utils.parse_cycles('12', 3)


def test_format_cycles():
    assert parsing_utils.format_cycles((0, 1, 2)) == '()'
    assert parsing_utils.format_cycles((1, 2, 0)) == '(123)'
    assert parsing_utils.format_cycles((1, 0, 3, 2)) == '(12)(34)'
    for text in ('(13)', '(132)', '(12)(34)'):
        assert parsing_utils.format_cycles(parsing_utils.parse_cycles(text, 4)) == text


if __name__ == '__main__':
    pytest.main([__file__])
