"""
Finite groups as multiplication tables.

Groups are the gauge group G and every finite model of a Galois group.
Elements are the integers ``0..order-1`` with the identity at 0;
``mul[a, b]`` is the product ``a·b``. Homomorphisms are full element
maps. The conjugation action of G on Hom(Q, G) is the right action
``ρ.g = g⁻¹ ρ g``.

"""
import functools
import itertools
import logging
from collections import namedtuple

import numpy as np
from sympy import Rational

from dwarith import CONFIG
from dwarith.core.errors import (GeneratorsDontGenerate, NotAGroup, NotAHomomorphism,
                                 ResourceLimit)
from dwarith.utilities import logging_utils
from dwarith.utilities.parsing_utils import format_cycles, parse_call, parse_cycles

logger = logging.getLogger(__name__)

Orbit = namedtuple('Orbit', ['representative', 'members', 'stabilizer'])


class FiniteGroup(object):
    """
    A validated finite group. Build instances with :func:`build_group` or
    one of the builtin constructors.

    Attributes:
        order (int): Number of elements.
        mul (numpy.ndarray): Read-only ``order × order`` table.
        inv (numpy.ndarray): Read-only table of inverses.
        identity (int): Always 0.
        generators (tuple of int): Generating elements.
        label (str): Display name.
        names (tuple of str): Display names of the elements.

    """

    identity = 0

    def __init__(self, mul, inv, generators, label, names=None):
        self.mul = mul
        self.inv = inv
        self.mul.flags.writeable = False
        self.inv.flags.writeable = False
        self.order = int(mul.shape[0])
        self.generators = tuple(int(g) for g in generators)
        self.label = label
        self.names = tuple(names) if names is not None else tuple(str(i) for i in range(self.order))
        self._key = (self.order, self.mul.tobytes())

    def __eq__(self, other):
        return isinstance(other, FiniteGroup) and self._key == other._key

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return 'FiniteGroup({}, order={})'.format(self.label, self.order)

    def __len__(self):
        return self.order

    @property
    def elements(self):
        return range(self.order)

    @property
    def is_abelian(self):
        return bool((self.mul == self.mul.T).all())

    def multiply(self, *elements):
        result = self.identity
        for x in elements:
            result = int(self.mul[result, x])
        return result

    def inverse(self, g):
        return int(self.inv[g])

    def conjugate(self, x, g):
        """Return ``g⁻¹·x·g``."""
        return int(self.mul[self.mul[self.inv[g], x], g])

    def conjugation_table(self, g):
        """Array mapping every x to ``g⁻¹·x·g``."""
        return self.mul[self.mul[self.inv[g], :], g]

    def element(self, name):
        """Look up an element index by display name."""
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError('{} has no element named {!r}'.format(self.label, name))

    def closure(self, elements):
        """Subgroup generated by ``elements`` as a sorted tuple."""
        seen = {self.identity}
        frontier = [self.identity]
        gens = [int(x) for x in elements]
        while frontier:
            nxt = []
            for x in frontier:
                for s in gens:
                    y = int(self.mul[x, s])
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return tuple(sorted(seen))

    def to_json(self):
        return {'label': self.label,
                'order': self.order,
                'generators': list(self.generators)}


def build_group(mul_table, generators, label=None, names=None):
    """
    Validate a multiplication table and build a group from it.

    The identity is moved to index 0 if the table has it elsewhere; element
    indices (including ``generators``) are relabelled accordingly.

    Args:
        mul_table (array-like): Square table, ``mul_table[a][b] = a·b``.
        generators (list of int): Nonempty list of generating elements.
        label (str, optional): Display name.
        names (list of str, optional): Element display names.

    Returns:
        :class:`FiniteGroup <dwarith.groups.FiniteGroup>`

    Raises:
        NotAGroup: Table is not square, not closed, has no identity, lacks
            inverses or is not associative.
        GeneratorsDontGenerate: Generators miss part of the group.

    """
    try:
        mul = np.array(mul_table, dtype=np.int64)
    except (TypeError, ValueError):
        raise NotAGroup('Multiplication table is not a rectangular integer array.')
    if mul.ndim != 2 or mul.shape[0] != mul.shape[1] or mul.shape[0] == 0:
        raise NotAGroup('Multiplication table must be square and nonempty.',
                        shape=list(mul.shape))
    n = mul.shape[0]
    if mul.min() < 0 or mul.max() >= n:
        raise NotAGroup('Multiplication table has entries outside 0..{}.'.format(n - 1))

    arange = np.arange(n)
    identities = [e for e in range(n)
                  if (mul[e, :] == arange).all() and (mul[:, e] == arange).all()]
    if not identities:
        raise NotAGroup('Multiplication table has no two-sided identity.')
    e = identities[0]

    # Every row and column a permutation means every element has a two-sided inverse.
    for i in range(n):
        if len(set(mul[i, :].tolist())) != n or len(set(mul[:, i].tolist())) != n:
            raise NotAGroup('Element {} has no inverse.'.format(i), element=i)

    left = mul[mul, :]
    right = mul[:, mul]
    bad = np.argwhere(left != right)
    if len(bad):
        a, b, c = (int(x) for x in bad[0])
        raise NotAGroup('Multiplication is not associative at ({}, {}, {}).'.format(a, b, c),
                        triple=[a, b, c])

    if not generators:
        raise GeneratorsDontGenerate('Generator list is empty.')
    if any(g < 0 or g >= n for g in generators):
        raise GeneratorsDontGenerate('Generator index out of range.')

    if e != 0:
        perm = arange.copy()
        perm[0], perm[e] = e, 0
        # perm is an involution, so it is its own inverse relabelling.
        mul = perm[mul[np.ix_(perm, perm)]]
        generators = [int(perm[g]) for g in generators]
        if names is not None:
            names = [names[int(perm[i])] for i in range(n)]

    inv = np.argmax(mul == 0, axis=1).astype(np.int64)
    group = FiniteGroup(mul, inv, generators, label or 'group({})'.format(n), names)
    if len(group.closure(group.generators)) != n:
        raise GeneratorsDontGenerate('Generators {} do not generate {}.'.format(
            list(group.generators), group.label), generators=list(group.generators))
    return group


def cyclic(n):
    """Cyclic group Z/n with generator 1."""
    if n < 1:
        raise ValueError('Cyclic group order must be positive.')
    arange = np.arange(n)
    mul = (arange[:, None] + arange[None, :]) % n
    return build_group(mul, [1 % n], label='cyclic({})'.format(n))


def direct_product(*orders):
    """
    Direct product of cyclic groups.

    Elements are coordinate tuples in lexicographic order, so for
    ``direct_product(2, 2)`` index ``2*x + y`` is ``(x, y)``; the generators
    are the unit vectors.

    """
    if not orders:
        raise ValueError('direct_product needs at least one factor.')
    coords = list(itertools.product(*[range(n) for n in orders]))
    index = {c: i for i, c in enumerate(coords)}
    mul = [[index[tuple((a + b) % n for a, b, n in zip(x, y, orders))] for y in coords]
           for x in coords]
    gens = []
    for i, n in enumerate(orders):
        unit = tuple(1 % n if j == i else 0 for j in range(len(orders)))
        gens.append(index[unit])
    names = ['(' + ','.join(str(v) for v in c) + ')' for c in coords]
    return build_group(mul, gens, label='product({})'.format(','.join(str(n) for n in orders)),
                       names=names)


def symmetric(n):
    """
    Symmetric group on n points, elements in lexicographic order of their
    image tuples.

    Products compose left to right: ``σ·τ`` applies σ first, then τ.
    Element names are 1-based cycle notation.

    """
    if n < 1 or n > 4:
        raise ValueError('symmetric(n) is provided for 1 <= n <= 4.')
    perms = list(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    mul = [[index[tuple(t[s[i]] for i in range(n))] for t in perms] for s in perms]
    gens = [index[parse_cycles('(12)', n)] if n > 1 else 0]
    if n > 2:
        gens.append(index[parse_cycles('(' + ''.join(str(i + 1) for i in range(n)) + ')', n)])
    names = [format_cycles(p) for p in perms]
    return build_group(mul, gens, label='symmetric({})'.format(n), names=names)


_BUILTINS = {'cyclic': cyclic, 'product': direct_product, 'symmetric': symmetric}


def builtin_group(spec):
    """
    Build a group from a builtin reference such as ``cyclic(4)``,
    ``product(2,2)`` or ``symmetric(3)``.

    """
    name, args = parse_call(spec)
    try:
        factory = _BUILTINS[name]
    except KeyError:
        raise ValueError('Unknown builtin group {!r}.'.format(name))
    return factory(*args)


class GroupHom(object):
    """
    A group homomorphism stored as a full element map.

    Args:
        source (FiniteGroup): Domain.
        target (FiniteGroup): Codomain.
        images (sequence of int): ``images[x]`` is the image of x.

    """

    def __init__(self, source, target, images):
        self.source = source
        self.target = target
        self.images = tuple(int(x) for x in images)
        self._array = None

    def __call__(self, x):
        return self.images[x]

    def __eq__(self, other):
        return (isinstance(other, GroupHom) and self.images == other.images
                and self.source == other.source and self.target == other.target)

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((self.images, self.source, self.target))

    def __repr__(self):
        return 'GroupHom({} -> {}, {})'.format(self.source.label, self.target.label, self.key)

    @property
    def array(self):
        """Images as a read-only numpy array."""
        if self._array is None:
            arr = np.array(self.images, dtype=np.int64)
            arr.flags.writeable = False
            self._array = arr
        return self._array

    @property
    def key(self):
        """Generator-image tuple, the printed identity of the hom."""
        return tuple(self.images[g] for g in self.source.generators)

    def compose(self, inner):
        """Return ``self ∘ inner``."""
        if inner.target != self.source:
            raise ValueError('Cannot compose {} after {}.'.format(self, inner))
        return GroupHom(inner.source, self.target, [self.images[x] for x in inner.images])

    def is_valid(self):
        """True if ``self`` respects multiplication."""
        arr = self.array
        if len(arr) != self.source.order or arr.min() < 0 or arr.max() >= self.target.order:
            return False
        return bool((arr[self.source.mul] == self.target.mul[arr[:, None], arr[None, :]]).all())

    def is_surjective(self):
        return len(set(self.images)) == self.target.order

    def is_injective(self):
        return len(set(self.images)) == self.source.order

    def inverse(self):
        """Inverse of a bijective hom."""
        if not (self.is_injective() and self.is_surjective()):
            raise ValueError('{} is not an isomorphism.'.format(self))
        images = [0] * self.target.order
        for x, y in enumerate(self.images):
            images[y] = x
        return GroupHom(self.target, self.source, images)

    def factor_through(self, quotient):
        """
        Find the hom ``r`` with ``r ∘ quotient == self``.

        Args:
            quotient (GroupHom): Surjection out of ``self.source``.

        Returns:
            GroupHom or None: The factor, or None if ``self`` does not
            factor through ``quotient``.

        """
        images = {}
        for x, q in enumerate(quotient.images):
            y = self.images[x]
            if images.setdefault(q, y) != y:
                return None
        if len(images) != quotient.target.order:
            return None
        return GroupHom(quotient.target, self.target, [images[q] for q in range(quotient.target.order)])

    def to_json(self):
        return list(self.key)


def identity_hom(group):
    return GroupHom(group, group, range(group.order))


def trivial_hom(source, target):
    return GroupHom(source, target, [target.identity] * source.order)


def hom_from_images(source, target, generator_images):
    """
    Extend generator images to a full homomorphism.

    Args:
        source (FiniteGroup): Domain.
        target (FiniteGroup): Codomain.
        generator_images (sequence of int): Images of ``source.generators``.

    Returns:
        GroupHom

    Raises:
        NotAHomomorphism: The images do not extend to a homomorphism.

    """
    if len(generator_images) != len(source.generators):
        raise NotAHomomorphism('Expected {} generator images, got {}.'.format(
            len(source.generators), len(generator_images)))
    assignment = _close_assignment(source, target, dict(zip(source.generators, generator_images)))
    if assignment is None or len(assignment) != source.order:
        raise NotAHomomorphism('Generator images {} do not define a homomorphism {} -> {}.'.format(
            list(generator_images), source.label, target.label))
    hom = GroupHom(source, target, [assignment[x] for x in range(source.order)])
    if not hom.is_valid():
        raise NotAHomomorphism('Generator images {} do not define a homomorphism {} -> {}.'.format(
            list(generator_images), source.label, target.label))
    return hom


def validate_hom(source, target, images):
    """Build a hom from a full image table, checking multiplicativity."""
    if len(images) != source.order:
        raise NotAHomomorphism('Map has {} images, {} has {} elements.'.format(
            len(images), source.label, source.order))
    if any(y < 0 or y >= target.order for y in images):
        raise NotAHomomorphism('Map has images outside {}.'.format(target.label))
    hom = GroupHom(source, target, images)
    if not hom.is_valid():
        raise NotAHomomorphism('Map {} is not a homomorphism {} -> {}.'.format(
            list(images), source.label, target.label))
    return hom


def _close_assignment(source, target, assignment):
    """
    Extend a partial assignment on generators to the subgroup they generate,
    by right multiplication. Returns None on the first conflict.
    """
    gens = list(assignment)
    images = {source.identity: target.identity}
    for g in gens:
        if images.setdefault(g, assignment[g]) != assignment[g]:
            return None
    frontier = list(images)
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = int(source.mul[x, s])
                img = int(target.mul[images[x], assignment[s]])
                known = images.get(y)
                if known is None:
                    images[y] = img
                    nxt.append(y)
                elif known != img:
                    return None
        frontier = nxt
    return images


@logging_utils.log_entrance_exit
def enumerate_homs(source, target):
    """
    All homomorphisms ``source -> target`` in lexicographic order of their
    generator-image tuples.

    Generator images are assigned one at a time; after each assignment the
    partial map is closed over the subgroup generated so far and rejected on
    the first multiplication conflict.

    Args:
        source (FiniteGroup): Domain Q.
        target (FiniteGroup): Codomain G.

    Returns:
        list of GroupHom

    """
    return list(_cached_homs(source, target))


@functools.lru_cache(maxsize=256)
def _cached_homs(source, target):
    homs = tuple(_backtrack_homs(source, target))
    logger.debug('%s homomorphisms %s -> %s', len(homs), source.label, target.label)
    return homs


def _backtrack_homs(source, target):
    gens = source.generators
    limit = CONFIG['limits']['max_hom_space']

    def extend(depth, assignment):
        if depth == len(gens):
            images = _close_assignment(source, target, assignment)
            hom = GroupHom(source, target, [images[x] for x in range(source.order)])
            if hom.is_valid():
                yield hom
            return
        for y in range(target.order):
            trial = dict(assignment)
            if trial.setdefault(gens[depth], y) != y:
                continue
            if _close_assignment(source, target, trial) is None:
                continue
            for hom in extend(depth + 1, trial):
                yield hom

    count = 0
    for hom in extend(0, {}):
        count += 1
        if count > limit:
            raise ResourceLimit('More than {} homomorphisms {} -> {}; raise '
                                   'limits.max_hom_space to continue.'.format(
                                       limit, source.label, target.label))
        yield hom


def conjugate_hom(rho, g):
    """
    Right conjugation action ``ρ.g : γ ↦ g⁻¹·ρ(γ)·g``.

    Args:
        rho (GroupHom): Hom into G.
        g (int): Element of G.

    Returns:
        GroupHom

    """
    table = rho.target.conjugation_table(g)
    return GroupHom(rho.source, rho.target, table[rho.array])


def act_on_tuple(rho_tuple, g):
    """Diagonal conjugation on a tuple of homs."""
    return tuple(conjugate_hom(rho, g) for rho in rho_tuple)


def conjugation_action(x, g):
    """Conjugation on a hom or on a tuple of homs."""
    if isinstance(x, GroupHom):
        return conjugate_hom(x, g)
    return act_on_tuple(x, g)


class _UnionFind(object):

    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        y = self.parent[x]
        if self.parent[y] != y:
            y = self.parent[x] = self.find(y)
        return y

    def union(self, x, y):
        x, y = self.find(x), self.find(y)
        if x == y:
            return
        # keep the smaller enumeration index as root
        if y < x:
            x, y = y, x
        self.parent[y] = x


def orbits_stabilizers(space, group, action=conjugation_action):
    """
    Orbits and stabilizers of G acting on an ordered space.

    Args:
        space (list): Homs or tuples of homs, closed under the action.
        group (FiniteGroup): The acting group G.
        action (callable, optional): ``action(x, g)``; defaults to
            conjugation.

    Returns:
        list of :class:`Orbit`: ordered by representative, which is the
        orbit's first member in ``space`` order; members keep ``space``
        order.

    """
    space = list(space)
    position = {x: i for i, x in enumerate(space)}
    uf = _UnionFind(len(space))
    for g in group.generators:
        for i, x in enumerate(space):
            try:
                j = position[action(x, g)]
            except KeyError:
                raise ValueError('Space is not closed under the action of {}.'.format(group.label))
            uf.union(i, j)

    members = {}
    for i in range(len(space)):
        members.setdefault(uf.find(i), []).append(i)

    orbits = []
    for root in sorted(members):
        rep = space[root]
        stab = tuple(g for g in group.elements if action(rep, g) == rep)
        orbits.append(Orbit(rep, tuple(space[i] for i in members[root]), stab))
    return orbits


def classical_count(source, target):
    """
    ``#Hom(source, target) / #target`` as an exact rational.

    Returns:
        sympy.Rational

    """
    return Rational(len(enumerate_homs(source, target)), target.order)
