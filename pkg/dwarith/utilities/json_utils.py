"""Helper functions for JSON documents."""
import json


def read_json_file(json_file, **kwargs):
    """
    Read a json file.

    Args:
        json_file (str): Full path to JSON file.
        **kwargs: Any keyword argument from the json.load method.
    Returns:
        dict: JSON formatted dictionary.

    """
    with open(json_file, 'r') as f:
        return json.load(f, **kwargs)


def read_json_string(json_string, **kwargs):
    """
    Convert JSON formatted string to JSON.

    Args:
        json_string (str): JSON formatted string.
        **kwargs: Any keyword argument from the json.loads method.
    Returns:
        dict: JSON formatted dictionary.

    """
    return json.loads(json_string, **kwargs)


def canonical_dumps(json_dict, indent=None):
    """
    Serialize with sorted keys and fixed separators.

    Two calls on equal documents produce identical strings, which is what
    the command line relies on for byte-for-byte reproducible output.

    Args:
        json_dict (dict): JSON formatted dictionary.
        indent (int, optional): Indentation. Compact output when None.
    Returns:
        str: Serialized document terminated by a newline.

    """
    separators = (',', ': ') if indent is not None else (',', ':')
    return json.dumps(json_dict, indent=indent, sort_keys=True,
                      separators=separators) + '\n'


def write_json(json_dict, file_name, indent=None):
    """
    Write JSON dictionary to file in canonical form.

    Args:
        json_dict (dict): JSON formatted dictionary.
        file_name (str): Output file name.
        indent (int, optional): Indentation.
    Returns:
        None

    """
    with open(file_name, 'w+') as output_file:
        output_file.write(canonical_dumps(json_dict, indent=indent))
