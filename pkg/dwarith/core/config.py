import json
import os
import warnings

from collections.abc import Mapping

_CONFIG_FILE = os.path.join(os.path.expanduser('~'), '.dwarith', 'config.json')
_CONFIG_DEFAULTS = {'general': {'max_threads': 8},
                    'sampling': {'samples': 200,
                                 'seed': 1729,
                                 'perturbed_sections': 3},
                    'limits': {'max_group_order': 64,
                               'exhaustive_order': 8,
                               'max_hom_space': 4096},
                    'output': {'indent': 2}}


def write_default_config_file():
    """Writes the default configuration to the default file."""
    config_dir = os.path.dirname(_CONFIG_FILE)
    if not os.path.exists(config_dir):
        os.makedirs(config_dir)
    with open(_CONFIG_FILE, 'w') as f:
        json.dump(_CONFIG_DEFAULTS, f, indent=2, sort_keys=True)


class Config(Mapping):
    """
    Mapping object for storing configuration parameters in a dict-like interface.

    If the config file does not exist it will be written with defaults to the
    default location.

    Sections present in the config file are merged key by key over the
    defaults, so a file only needs to name the values it changes.

    """

    def __init__(self):
        self.__dict__ = {k: dict(v) for k, v in _CONFIG_DEFAULTS.items()}
        self._load_config()

    def __getitem__(self, key):
        return self.__dict__[key]

    def __iter__(self):
        return iter(self.__dict__)

    def __len__(self):
        return len(self.__dict__)

    def __repr__(self):
        return self.__dict__.__repr__()

    @staticmethod
    def _read_config_file():
        """Reads configuration file."""
        with open(_CONFIG_FILE, 'r') as f:
            config = json.load(f)
        return config

    def _load_config(self):
        """Loads the configuration parameters."""
        try:
            config = self._read_config_file()
        except (IOError, OSError):
            if not os.path.exists(_CONFIG_FILE):
                try:
                    write_default_config_file()
                except (IOError, OSError):
                    warnings.warn('dwarith config.json file was not found and '
                                  'defaults could not be written.  Falling '
                                  'back to the default configuration.',
                                  stacklevel=2)
            else:
                raise
        except ValueError:
            warnings.warn('dwarith config.json could not be decoded.  Falling '
                          'back to the default configuration.', stacklevel=2)
        else:
            for section, values in config.items():
                if isinstance(values, dict):
                    self.__dict__.setdefault(section, {}).update(values)
                else:
                    self.__dict__[section] = values


CONFIG = Config()
