import os

import numpy as np
import pytest

from dwarith import groups
from dwarith.cochains import cyclic_cocycle
from dwarith.core.errors import ModelViolation
from dwarith.core.structure import CheckRecord
from dwarith.local_theory import LocalDatum, cyclic_inv, klein_inv
from dwarith.models import load_config, shipped_model_paths


@pytest.fixture(scope='session')
def record():
    return CheckRecord('test', message='test', content={'value': 1}, error=None)


@pytest.fixture(scope='session')
def record_fail():
    return CheckRecord('test', message='test', content={'value': 1},
                       error=ModelViolation('test'))


@pytest.fixture(scope='session')
def z2():
    return groups.cyclic(2)


@pytest.fixture(scope='session')
def z4():
    return groups.cyclic(4)


@pytest.fixture(scope='session')
def v4():
    return groups.direct_product(2, 2)


@pytest.fixture(scope='session')
def s3():
    return groups.symmetric(3)


@pytest.fixture(scope='session')
def xyz(z2):
    """The generating 3-cocycle of Z/2 with N = 2."""
    return cyclic_cocycle(z2, 2, 1)


@pytest.fixture(scope='session')
def tame_pair(z4):
    """Two Z/4 primes with opposite orientations, N = 2."""
    inv, witness = cyclic_inv(z4, 2)
    return [LocalDatum('p', z4, inv, 1, witness=witness),
            LocalDatum('q', z4, inv, -1, witness=witness)]


@pytest.fixture(scope='session')
def klein_pair(v4):
    inv, witness = klein_inv(v4, 2)
    return [LocalDatum('a', v4, inv, 1, witness=witness),
            LocalDatum('b', v4, inv, -1, witness=witness)]


@pytest.fixture(scope='session')
def shipped():
    """Shipped example models by name."""
    return {os.path.splitext(os.path.basename(p))[0]: load_config(p) for p in shipped_model_paths()}


@pytest.fixture()
def rng():
    return np.random.default_rng(7)
