import pytest

from dwarith.utilities import json_utils


def test_canonical_dumps():
    a = json_utils.canonical_dumps({'b': 1, 'a': [1, 2]})
    b = json_utils.canonical_dumps({'a': [1, 2], 'b': 1})
    assert a == b == '{"a":[1,2],"b":1}\n'
    assert json_utils.canonical_dumps({'a': 1}, indent=2) == '{\n  "a": 1\n}\n'


def test_read_and_write(tmpdir):
    path = str(tmpdir.join('doc.json'))
    json_utils.write_json({'z': [1], 'a': None}, path, indent=2)
    assert json_utils.read_json_file(path) == {'z': [1], 'a': None}
    assert json_utils.read_json_string('{"x": 2}') == {'x': 2}
    with pytest.raises(ValueError):
        json_utils.read_json_string('{"x": ')


if __name__ == '__main__':
    pytest.main([__file__])
