"""
Local arithmetic data.

A :class:`LocalDatum` is a finite model Q_p of a local Galois group with an
invariant functional inv_p (a formal 2-chain: linear on 2-cochains, zero on
coboundaries, onto Z/N on cocycles) and an orientation sign. Sections pick
a fiber point over every ρ_p ∈ F_p = Hom(Q_p, G); the Chern–Simons
1-cocycle λ and the section-change function δ are read off through inv_p.

"""
import itertools
import logging

import numpy as np
from sympy import mod_inverse
from sympy.core.intfunc import igcdex

from dwarith.cochains import (Cochain, coboundary, coboundary_matrix, cohomology_basis, h_class,
                              pullback, solve_coboundary)
from dwarith.core.errors import MismatchedFiber, ModelViolation
from dwarith.core.structure import CheckReport
from dwarith.groups import conjugate_hom, enumerate_homs
from dwarith.torsors import FiberElement, FiberMap, act, diff, transition_scalar
from dwarith.utilities import logging_utils

logger = logging.getLogger(__name__)


class InvFunctional(object):
    """
    ``inv(α) = Σ coeff·α(g, h) mod N`` over a sparse table of coefficients.

    Args:
        group (FiniteGroup): Q_p.
        modulus (int): N.
        coefficients (dict): ``{(g, h): coeff}``.

    """

    def __init__(self, group, modulus, coefficients):
        self.group = group
        self.modulus = modulus
        self.coefficients = {(int(g), int(h)): int(v) % modulus
                             for (g, h), v in sorted(coefficients.items()) if int(v) % modulus}
        keys = list(self.coefficients)
        self._rows = np.array([k[0] for k in keys], dtype=np.int64)
        self._cols = np.array([k[1] for k in keys], dtype=np.int64)
        self._coeffs = np.array([self.coefficients[k] for k in keys], dtype=np.int64)

    def __call__(self, alpha):
        return self.evaluate(alpha)

    def evaluate(self, alpha):
        if alpha.degree != 2 or alpha.group != self.group:
            raise ValueError('inv is defined on 2-cochains of {}.'.format(self.group.label))
        if not len(self._coeffs):
            return 0
        return int((self._coeffs * alpha.values[self._rows, self._cols]).sum() % self.modulus)

    def negated(self):
        return InvFunctional(self.group, self.modulus, {k: -v for k, v in self.coefficients.items()})

    def coboundary_failures(self):
        """Indices of basis 1-cochains β with ``inv(dβ) != 0``."""
        q = self.group.order
        weights = np.zeros(q * q, dtype=np.int64)
        for (g, h), v in self.coefficients.items():
            weights[g * q + h] = v
        values = weights.dot(coboundary_matrix(self.group, 2)) % self.modulus
        return [int(i) for i in np.flatnonzero(values)]

    def to_json(self):
        return [[g, h, v] for (g, h), v in sorted(self.coefficients.items())]


def klein_inv(group, modulus):
    """
    Commutator pairing ``inv(α) = α(a, b) - α(b, a)`` on Z/2 × Z/2 with
    ``a = (1,0)``, ``b = (0,1)``; the witness is ``α(g, h) = g₁·h₂``.

    Returns:
        tuple: (InvFunctional, witness Cochain)

    """
    klein_names = {'(0,0)', '(0,1)', '(1,0)', '(1,1)'}
    if group.order != 4 or modulus != 2 or set(group.names) != klein_names or \
            any(group.multiply(g, g) != group.identity for g in group.elements):
        raise ValueError('The klein functional is defined on product(2,2) with N = 2.')
    a, b = group.element('(1,0)'), group.element('(0,1)')
    inv = InvFunctional(group, modulus, {(a, b): 1, (b, a): -1})
    first = {group.element('({},{})'.format(x, y)): x for x in range(2) for y in range(2)}
    second = {group.element('({},{})'.format(x, y)): y for x in range(2) for y in range(2)}
    witness = Cochain.from_function(group, 2, modulus, lambda g, h: first[g] * second[h])
    return inv, witness


def cyclic_inv(group, modulus):
    """
    Carry functional ``inv(α) = Σ_{j<m} α(1, j)`` on Z/m with N | m; the
    witness is the carry cocycle ``⌊(i + j)/m⌋``.

    Returns:
        tuple: (InvFunctional, witness Cochain)

    """
    m = group.order
    if m % modulus:
        raise ValueError('The cyclic functional on Z/{} needs N | {}; got N = {}.'.format(m, m, modulus))
    inv = InvFunctional(group, modulus, {(1 % m, j): 1 for j in range(m)})
    witness = Cochain.from_function(group, 2, modulus, lambda i, j: (i + j) // m)
    return inv, witness


def find_unit_cocycle(inv):
    """
    A 2-cocycle with ``inv = 1``, combined from a Z² generating set with
    extended gcds, or None if inv is not onto.
    """
    basis = cohomology_basis(inv.group, inv.modulus, 2)
    acc = Cochain.zero(inv.group, 2, inv.modulus)
    value = 0
    for z in basis.cocycle_basis:
        v = inv.evaluate(z)
        if v == 0:
            continue
        x, y, g = igcdex(value, v)
        acc = acc * int(x) + z * int(y)
        value = int(g)
    if value == 0 or igcdex(value, inv.modulus)[2] != 1:
        return None
    return acc * int(mod_inverse(value, inv.modulus))


class UnramifiedQuotient(object):
    """
    The unramified quotient Q̃_p with its surjection ``v_p : Q_p -> Q̃_p``.
    """

    def __init__(self, group, v_map):
        if not v_map.is_surjective():
            raise ModelViolation('The unramified map onto {} is not surjective.'.format(group.label))
        if v_map.target != group:
            raise ValueError('v_p must end at the unramified group.')
        self.group = group
        self.v_map = v_map


class LocalDatum(object):
    """
    Finite model of a local Galois group.

    Args:
        name (str): Prime label.
        group (FiniteGroup): Q_p.
        inv (InvFunctional): inv_p before orientation.
        orientation (int): +1 or -1.
        witness (Cochain, optional): 2-cocycle with ``inv = 1``; searched for
            when omitted.
        unramified (UnramifiedQuotient, optional): Q̃_p and v_p.

    """

    def __init__(self, name, group, inv, orientation=1, witness=None, unramified=None):
        if orientation not in (1, -1):
            raise ValueError('Orientation must be +1 or -1.')
        if inv.group != group:
            raise ValueError('inv must be a functional on {}.'.format(group.label))
        self.name = name
        self.group = group
        self.inv = inv
        self.orientation = orientation
        self.unramified = unramified
        self._witness = witness
        self._unit = None

    def __repr__(self):
        return 'LocalDatum({}, {}, orientation={:+d})'.format(self.name, self.group.label, self.orientation)

    @property
    def modulus(self):
        return self.inv.modulus

    @property
    def witness(self):
        if self._witness is None:
            self._witness = find_unit_cocycle(self.inv)
        return self._witness

    @property
    def unit_cocycle(self):
        """2-cocycle ``u_p`` with ``inv_value(u_p) = 1``."""
        if self._unit is None:
            if self.witness is None:
                raise ModelViolation('inv_{} is not onto Z/{}; no unit cocycle.'.format(self.name, self.modulus))
            self._unit = self.witness * self.orientation
        return self._unit

    def inv_value(self, alpha):
        """Oriented invariant ``orientation·inv(α)``."""
        return self.orientation * self.inv.evaluate(alpha) % self.modulus

    def reversed(self):
        """Same prime with the opposite orientation."""
        return LocalDatum(self.name, self.group, self.inv, -self.orientation,
                          witness=self._witness, unramified=self.unramified)

    def to_json(self):
        data = {'name': self.name,
                'group': self.group.label,
                'orientation': self.orientation,
                'inv': self.inv.to_json()}
        if self.unramified is not None:
            data['unramified'] = {'group': self.unramified.group.label,
                                  'v_map': self.unramified.v_map.to_json()}
        return data


def reverse_orientation(datum):
    """The datum with inv negated; λ computed from it is ``-λ``."""
    return datum.reversed()


def reverse_data(data):
    return [d.reversed() for d in data]


def disjoint_union(*data_lists):
    """Concatenate local data lists with distinct prime names."""
    result = []
    names = set()
    for data in data_lists:
        for d in data:
            if d.name in names:
                raise ValueError('Prime {} appears twice in a disjoint union.'.format(d.name))
            names.add(d.name)
            result.append(d)
    return result


def local_homs(datum, gauge_group):
    """F_p = Hom(Q_p, G) in enumeration order."""
    return enumerate_homs(datum.group, gauge_group)


def boundary_space(data, gauge_group):
    """F_S = Π_p F_p as tuples, lexicographic in the component order."""
    return list(itertools.product(*[local_homs(d, gauge_group) for d in data]))


class Section(object):
    """
    A choice of fiber point over every ρ_p, for every datum in ``data``.

    Args:
        data (list of LocalDatum): Base primes; names must be distinct.
        gauge_group (FiniteGroup): G.
        cocycle (Cochain): c.
        fibers (dict): ``{name: {ρ_p: FiberElement}}``.
        label (str): Tag identifying the section in reports.

    """

    def __init__(self, data, gauge_group, cocycle, fibers, label='default'):
        self.data = tuple(data)
        self.gauge_group = gauge_group
        self.cocycle = cocycle
        self.label = label
        self._fibers = fibers
        names = [d.name for d in self.data]
        if len(set(names)) != len(names):
            raise ValueError('Section base has repeated prime names.')

    def __repr__(self):
        return 'Section({}, {})'.format(self.label, [d.name for d in self.data])

    @property
    def modulus(self):
        return self.cocycle.modulus

    @property
    def names(self):
        return [d.name for d in self.data]

    def datum(self, name):
        for d in self.data:
            if d.name == name:
                return d
        raise KeyError('Section has no prime {}.'.format(name))

    def __call__(self, datum, rho):
        name = datum if isinstance(datum, str) else datum.name
        try:
            return self._fibers[name][rho]
        except KeyError:
            raise MismatchedFiber('Section has no point over {} at {}.'.format(name, rho.key))

    def components(self, rho_S):
        return [self(d, r) for d, r in zip(self.data, rho_S)]

    def space(self):
        return boundary_space(self.data, self.gauge_group)

    def restrict(self, names, label=None):
        """Sub-section over the named primes, in the given order."""
        data = [self.datum(n) for n in names]
        return Section(data, self.gauge_group, self.cocycle,
                       {n: self._fibers[n] for n in names}, label or self.label)

    def concat(self, other, label=None):
        """Section over the disjoint union of both bases."""
        if other.gauge_group != self.gauge_group or other.cocycle != self.cocycle:
            raise ValueError('Sections for different theories cannot be concatenated.')
        data = disjoint_union(self.data, other.data)
        fibers = dict(self._fibers)
        fibers.update(other._fibers)
        return Section(data, self.gauge_group, self.cocycle, fibers,
                       label or '{}+{}'.format(self.label, other.label))

    def shifted(self, name, rho, m, label=None):
        """Copy with the point over (name, ρ) moved by the torsor action of m."""
        fibers = {n: dict(points) for n, points in self._fibers.items()}
        fibers[name][rho] = act(self(name, rho), m)
        return Section(self.data, self.gauge_group, self.cocycle, fibers, label or self.label)

    def reversed(self, label=None):
        """Same representatives over the orientation-reversed data."""
        data = reverse_data(self.data)
        fibers = {}
        for d in data:
            fibers[d.name] = {rho: FiberElement(d, rho, fe.cochain)
                              for rho, fe in self._fibers[d.name].items()}
        return Section(data, self.gauge_group, self.cocycle, fibers, label or self.label + '*')

    def validate(self):
        """Check totality and that every point lies in its fiber."""
        for d in self.data:
            points = self._fibers.get(d.name, {})
            for rho in local_homs(d, self.gauge_group):
                if rho not in points:
                    raise ModelViolation('Section {} misses {} at {}.'.format(self.label, d.name, rho.key))
                points[rho].validate(self.cocycle)
        return self

    def to_json(self):
        return {'label': self.label,
                'points': {d.name: [{'rho': list(rho.key), 'cochain': fe.cochain.to_entries()}
                                    for rho, fe in self._fibers[d.name].items()]
                           for d in self.data}}


@logging_utils.log_entrance_exit
def default_section(data, gauge_group, cocycle, label='default'):
    """
    The deterministic section: over each ρ_p, the solver's choice of β with
    ``dβ = c∘ρ_p``.

    Raises:
        ModelViolation: Some ``c∘ρ_p`` is not a coboundary.

    """
    fibers = {}
    for d in data:
        points = {}
        for rho in local_homs(d, gauge_group):
            beta = solve_coboundary(pullback(cocycle, rho))
            if beta is None:
                logger.error('c o rho is not a coboundary on %s at %s', d.name, rho.key)
                raise ModelViolation('Local solvability fails at {} for rho = {}.'.format(d.name, list(rho.key)),
                                     prime=d.name, rho=list(rho.key))
            points[rho] = FiberElement(d, rho, beta)
        fibers[d.name] = points
    return Section(data, gauge_group, cocycle, fibers, label)


def perturb_section(section, rng, label='perturbed'):
    """Shift every point by an independent random element of Z/N."""
    fibers = {}
    for d in section.data:
        fibers[d.name] = {rho: act(section(d, rho), int(rng.integers(section.modulus)))
                          for rho in local_homs(d, section.gauge_group)}
    return Section(section.data, section.gauge_group, section.cocycle, fibers, label)


def apply_shifts(section, shifts, label=None):
    """
    Apply ``(name, ρ, m)`` torsor shifts on top of a section.
    """
    result = section
    for name, rho, m in shifts:
        result = result.shifted(name, rho, m)
    if label is not None:
        result.label = label
    return result


def fiber_map(datum, cocycle, g, rho):
    """``f_p(g, ρ) : α ↦ α + h_g∘ρ``, from the fiber at ρ to the fiber at ρ.g."""
    return FiberMap(datum, rho, conjugate_hom(rho, g), pullback(h_class(g, cocycle), rho))


def lambda_p(section, datum, g, rho):
    """
    ``λ_p(g, ρ) = f_p(g, ρ)(x(ρ)) - x(ρ.g)``, i.e.
    ``inv_p(x(ρ) + h_g∘ρ - x(ρ.g))``.
    """
    f = fiber_map(datum, section.cocycle, g, rho)
    return transition_scalar(f, section(datum, rho), section(datum, f.target_rep))


def lambda_S(section, g, rho_S):
    """Sum of the local λ over the section's primes; 0 for empty S."""
    if len(rho_S) != len(section.data):
        raise MismatchedFiber('Expected {} components, got {}.'.format(len(section.data), len(rho_S)))
    total = 0
    for d, rho in zip(section.data, rho_S):
        total += lambda_p(section, d, g, rho)
    return total % section.modulus


def delta_sections(x, x_prime, rho_S):
    """``δ^{x,x'}(ρ_S) = Σ_p (x_p(ρ_p) - x'_p(ρ_p))``."""
    if x.names != x_prime.names:
        raise MismatchedFiber('Sections have different bases: {} vs {}.'.format(x.names, x_prime.names))
    total = 0
    for d, rho in zip(x.data, rho_S):
        total += diff(x(d, rho), x_prime(d, rho))
    return total % x.modulus


@logging_utils.log_entrance_exit
def check_local_axioms(datum, gauge_group, cocycle):
    """
    Verify the inv axioms and local solvability.

    Returns:
        :class:`CheckReport <dwarith.core.structure.CheckReport>`

    """
    report = CheckReport('local:{}'.format(datum.name))
    failures = datum.inv.coboundary_failures()
    report.check('inv_vanishes_on_coboundaries', not failures,
                 message='inv(d beta) != 0 for basis cochains {}'.format(failures) if failures else None)

    witness = datum.witness
    if witness is None:
        report.check('inv_surjective', False, message='no 2-cocycle has inv = 1')
    else:
        closed = coboundary(witness).is_zero
        hits = datum.inv.evaluate(witness) == 1
        report.check('inv_surjective', closed and hits,
                     message=None if closed and hits else 'witness is not a cocycle with inv = 1')
        unit = datum.unit_cocycle
        report.check('unit_cocycle', coboundary(unit).is_zero and datum.inv_value(unit) == 1,
                     message=None, content={'orientation': datum.orientation})

    if datum.unramified is not None:
        v = datum.unramified.v_map
        report.check('unramified_quotient', v.is_valid() and v.is_surjective(),
                     message='v_p is not a surjective homomorphism')

    for rho in local_homs(datum, gauge_group):
        solvable = solve_coboundary(pullback(cocycle, rho)) is not None
        report.check('local_solvability{}'.format(list(rho.key)), solvable,
                     message=None if solvable else 'c o rho is not a coboundary on {}'.format(datum.group.label))
    return report
