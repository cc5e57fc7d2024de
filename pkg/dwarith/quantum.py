"""
Quantum spaces and partition functions.

A θ-vector over a section x_S is a function on F_S with values in Q(ζ_N)
satisfying ``θ(ρ_S.g) = ζ^{λ_S(g, ρ_S)}·θ(ρ_S)``. Partition functions of
X̄_S and of tubes V_S are such vectors; the gluing pairing contracts an
S₁ ⊔ S₂ vector against an S₂* vector.

"""
import logging

from sympy import Rational

from dwarith.core.errors import BaseMismatch
from dwarith.core.structure import CheckReport
from dwarith.cyclotomic import CyclotomicValue, cyclotomic_rank, zeta
from dwarith.global_theory import (cs_closed, cs_global, cs_tube, restrict, tube_restrict,
                                   tube_space)
from dwarith.groups import act_on_tuple, orbits_stabilizers
from dwarith.local_theory import delta_sections, lambda_S, local_homs
from dwarith.utilities import logging_utils

logger = logging.getLogger(__name__)


def rho_json(rho_S):
    return [list(r.key) for r in rho_S]


class ThetaVector(object):
    """
    A function on F_S with cyclotomic values.

    Args:
        modulus (int): N.
        entries (dict): ``{ρ_S: CyclotomicValue}``; insertion order is the
            enumeration order of F_S and every point must be present.
        section (Section, optional): The section the vector is expressed
            against; None for vectors built from an explicit λ.

    """

    def __init__(self, modulus, entries, section=None):
        self.modulus = modulus
        self.entries = dict(entries)
        self.section = section

    def __repr__(self):
        return 'ThetaVector({}, {} entries)'.format(self.tag, len(self.entries))

    def __getitem__(self, rho_S):
        return self.entries[rho_S]

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    @property
    def tag(self):
        return self.section.label if self.section is not None else None

    @property
    def names(self):
        return self.section.names if self.section is not None else None

    def items(self):
        return self.entries.items()

    def _check_base(self, other):
        if self.modulus != other.modulus or list(self.entries) != list(other.entries):
            raise BaseMismatch('θ-vectors live over different bases.')

    def __eq__(self, other):
        return (isinstance(other, ThetaVector) and self.modulus == other.modulus
                and list(self.entries) == list(other.entries)
                and all(self.entries[k] == other.entries[k] for k in self.entries))

    def __ne__(self, other):
        return not self == other

    def __add__(self, other):
        self._check_base(other)
        return ThetaVector(self.modulus, {k: v + other.entries[k] for k, v in self.entries.items()}, self.section)

    def scalar(self, value):
        return ThetaVector(self.modulus, {k: v * value for k, v in self.entries.items()}, self.section)

    @property
    def is_zero(self):
        return all(v.is_zero for v in self.entries.values())

    def to_json(self):
        return {'section': self.tag,
                'primes': self.names,
                'entries': [{'rho_S': rho_json(k), 'value': v.to_json()} for k, v in self.entries.items()]}


class ThetaSpace(object):
    """
    The computed quantum space: dimension, basis and orbit data.

    Attributes:
        dimension (int): Number of admissible orbits.
        basis (list of ThetaVector): One vector per admissible orbit.
        orbits (list of Orbit): All G-orbits of F_S.
        admissible (list of bool): Per orbit, whether λ vanishes on its
            stabilizer.

    """

    def __init__(self, basis, orbits, admissible):
        self.basis = basis
        self.orbits = orbits
        self.admissible = admissible

    @property
    def dimension(self):
        return len(self.basis)

    def to_json(self):
        return {'dimension': self.dimension,
                'orbits': [{'representative': rho_json(o.representative),
                            'size': len(o.members),
                            'stabilizer': list(o.stabilizer),
                            'admissible': ok} for o, ok in zip(self.orbits, self.admissible)],
                'basis': [v.to_json() for v in self.basis]}


def _theta_basis(space, group, lam, modulus, section=None):
    orbits = orbits_stabilizers(space, group, act_on_tuple)
    admissible = []
    basis = []
    for orbit in orbits:
        rep = orbit.representative
        ok = all(lam(g, rep) % modulus == 0 for g in orbit.stabilizer)
        admissible.append(ok)
        if not ok:
            continue
        entries = {rho: CyclotomicValue.zero(modulus) for rho in space}
        for g in group.elements:
            image = act_on_tuple(rep, g)
            if entries[image].is_zero:
                entries[image] = zeta(modulus, lam(g, rep))
        basis.append(ThetaVector(modulus, entries, section))
    return ThetaSpace(basis, orbits, admissible)


@logging_utils.log_entrance_exit
def theta_space(section):
    """
    Dimension and basis of H_S for ``section``.

    Orbits are taken in enumeration order of their first member; the basis
    vector of an admissible orbit is 1 at the representative and is
    extended by ``θ(ρ.g) = ζ^{λ(g, ρ)}``. Inadmissible orbits carry no
    basis vector.

    Returns:
        ThetaSpace

    """
    return _theta_basis(section.space(), section.gauge_group,
                        lambda g, rho_S: lambda_S(section, g, rho_S), section.modulus, section)


def theta_space_from_lambda(space, group, lam, modulus):
    """
    Same construction for an explicitly given 1-cocycle
    ``lam(g, ρ_S) -> Z/N``.
    """
    return _theta_basis(list(space), group, lam, modulus)


def check_equivariance(theta, group=None, lam=None):
    """
    Points ``(g, ρ_S)`` where ``θ(ρ_S.g) != ζ^{λ(g, ρ_S)}·θ(ρ_S)``.

    Args:
        theta (ThetaVector): The vector.
        group (FiniteGroup, optional): G; defaults to the section's.
        lam (callable, optional): λ; defaults to the section's λ_S.

    Returns:
        list of tuple

    """
    section = theta.section
    if group is None:
        group = section.gauge_group
    if lam is None:
        def lam(g, rho_S):
            return lambda_S(section, g, rho_S)
    defects = []
    for rho_S, value in theta.items():
        for g in group.elements:
            if theta[act_on_tuple(rho_S, g)] != zeta(theta.modulus, lam(g, rho_S)) * value:
                defects.append((g, rho_S))
    return defects


def equivariance_system_dimension(space, group, lam, modulus):
    """
    Dimension of the solution space of the equivariance equations, by
    exact elimination over Q(ζ_N).
    """
    space = list(space)
    position = {rho: i for i, rho in enumerate(space)}
    rows = []
    for rho_S in space:
        for g in group.elements:
            row = [CyclotomicValue.zero(modulus)] * len(space)
            image = position[act_on_tuple(rho_S, g)]
            row[image] = row[image] + 1
            row[position[rho_S]] = row[position[rho_S]] - zeta(modulus, lam(g, rho_S))
            if any(not v.is_zero for v in row):
                rows.append(row)
    return len(space) - cyclotomic_rank(rows, modulus)


def _from_counts(modulus, space, counts, den, section):
    entries = {}
    for rho_S in space:
        entries[rho_S] = CyclotomicValue(modulus, counts.get(rho_S, []), den)
    return ThetaVector(modulus, entries, section)


def _accumulate(counts, key, exponent, modulus):
    row = counts.setdefault(key, [0] * modulus)
    row[exponent % modulus] += 1


@logging_utils.log_entrance_exit
def partition_global(gd, section):
    """
    ``Z(ρ_S) = (1/#G)·Σ_{res(ρ) = ρ_S} ζ^{CS(ρ)}``.

    Returns:
        ThetaVector

    """
    n = section.modulus
    counts = {}
    for rho in gd.homs(section.gauge_group):
        _accumulate(counts, restrict(gd, rho), cs_global(gd, section, rho), n)
    return _from_counts(n, section.space(), counts, section.gauge_group.order, section)


@logging_utils.log_entrance_exit
def partition_tube(data, section, orientation='normal'):
    """
    ``Z_V(ρ_S) = Σ_{res̃(ρ̃) = ρ_S} ζ^{±CS_V(ρ̃)}`` with no 1/#G factor.

    The reversed tube is computed over the orientation-reversed section,
    so its values carry ``ζ^{-CS_V}`` and it is equivariant for ``-λ``.

    Args:
        data (list of LocalDatum): Tube primes, with unramified quotients.
        section (Section): Section over ``data``.
        orientation (str): ``'normal'`` or ``'reversed'``.

    Returns:
        ThetaVector

    """
    if orientation not in ('normal', 'reversed'):
        raise ValueError('orientation must be normal or reversed, got {!r}'.format(orientation))
    if orientation == 'reversed':
        section = section.reversed()
        data = list(section.data)
    n = section.modulus
    counts = {}
    for rho_tilde in tube_space(data, section.gauge_group):
        _accumulate(counts, tube_restrict(data, rho_tilde), cs_tube(data, section, rho_tilde), n)
    return _from_counts(n, section.space(), counts, 1, section)


@logging_utils.log_entrance_exit
def partition_closed(gl, section):
    """
    ``Z(X̄_k) = (1/#G)·Σ_{ρ₁} ζ^{cs_closed(ρ₁)}``.

    Returns:
        CyclotomicValue

    """
    n = section.modulus
    row = [0] * n
    for rho1 in gl.inner.homs(section.gauge_group):
        row[cs_closed(gl, section, rho1)] += 1
    return CyclotomicValue(n, row, section.gauge_group.order)


@logging_utils.log_entrance_exit
def glue_pair(theta_S, theta_2):
    """
    ``⟨θ_S, θ₂*⟩(ρ_{S₁}) = Σ_{ρ_{S₂}} θ_S(ρ_{S₁}, ρ_{S₂})·θ₂*(ρ_{S₂})``.

    ``theta_S`` lists the S₂ primes last; ``theta_2`` is over the same
    primes with opposite orientations.

    Raises:
        BaseMismatch: The bases or sections do not fit together.

    """
    if theta_S.modulus != theta_2.modulus:
        raise BaseMismatch('Moduli differ: {} vs {}.'.format(theta_S.modulus, theta_2.modulus))
    x_S, x_2 = theta_S.section, theta_2.section
    names_2 = x_2.names
    k = len(names_2)
    if x_S.names[len(x_S.names) - k:] != names_2:
        raise BaseMismatch('Primes {} are not the tail of {}.'.format(names_2, x_S.names))
    for name in names_2:
        if x_S.datum(name).orientation != -x_2.datum(name).orientation:
            raise BaseMismatch('Prime {} must have opposite orientations in the pairing.'.format(name))
    if x_S.gauge_group != x_2.gauge_group or x_S.cocycle != x_2.cocycle:
        raise BaseMismatch('Vectors belong to different theories.')
    for name in names_2:
        for rho in local_homs(x_2.datum(name), x_2.gauge_group):
            if x_S(name, rho).cochain != x_2(name, rho).cochain:
                raise BaseMismatch('Sections {} and {} differ over {} at {}.'.format(
                    theta_S.tag, theta_2.tag, name, list(rho.key)))
    names_1 = x_S.names[:len(x_S.names) - k]
    x_1 = x_S.restrict(names_1)
    result = {rho_1: CyclotomicValue.zero(theta_S.modulus) for rho_1 in x_1.space()}
    n1 = len(names_1)
    for rho_S, value in theta_S.items():
        if value.is_zero:
            continue
        other = theta_2.entries.get(rho_S[n1:])
        if other is None:
            raise BaseMismatch('Second vector has no entry at {}.'.format(rho_json(rho_S[n1:])))
        result[rho_S[:n1]] = result[rho_S[:n1]] + value * other
    return ThetaVector(theta_S.modulus, result, x_1)


def transport_section(theta, x_new):
    """``Θ^{x,x'}``: multiply entrywise by ``ζ^{δ^{x,x'}(ρ_S)}``."""
    x = theta.section
    entries = {rho_S: v * zeta(theta.modulus, delta_sections(x, x_new, rho_S)) for rho_S, v in theta.items()}
    return ThetaVector(theta.modulus, entries, x_new)


def transport_cocycle(theta, change, x_new):
    """
    Move a vector for c to one for ``c' = c + db``: multiply by
    ``ζ^{κ(ρ_S)}`` with κ against the c'-section ``x_new``.
    """
    x = theta.section
    entries = {rho_S: v * zeta(theta.modulus, change.kappa(x, x_new, rho_S)) for rho_S, v in theta.items()}
    return ThetaVector(theta.modulus, entries, x_new)


def transport_isomorphism(theta, iso, x_new=None):
    """
    Relabel a vector over the target of ``iso`` to its source:
    ``θ'(ρ') = θ(ρ'∘φ⁻¹)``.
    """
    if x_new is None:
        x_new = iso.transport_section(theta.section)
    entries = {rho_prime: theta[iso.pull_boundary(rho_prime)] for rho_prime in x_new.space()}
    return ThetaVector(theta.modulus, entries, x_new)


def dual_pairing(phi, theta):
    """``Σ_{ρ_S} φ(ρ_S)·θ(ρ_S)`` for φ over S* and θ over S."""
    if list(phi.entries) != list(theta.entries) or phi.modulus != theta.modulus:
        raise BaseMismatch('Dual pairing needs vectors over the same F_S.')
    total = CyclotomicValue.zero(theta.modulus)
    for rho_S, value in theta.items():
        total = total + phi[rho_S] * value
    return total


def _product_vector(theta_1, theta_2, section):
    entries = {}
    for rho_1, a in theta_1.items():
        for rho_2, b in theta_2.items():
            entries[rho_1 + rho_2] = a * b
    # reorder to the joint enumeration
    return ThetaVector(theta_1.modulus, {rho: entries[rho] for rho in section.space()}, section)


@logging_utils.log_entrance_exit
def tensor_and_dual(x_1, x_2):
    """
    Compare ``H_{S₁}⊗H_{S₂}`` with ``H_{S₁⊔S₂}`` and check that
    ``dim H_{S*} = dim H_S`` with a nondegenerate pairing, for both pieces.

    Products of basis vectors must be equivariant and linearly independent,
    so the tensor product sits inside the joint space. The inclusion is
    onto when G acts trivially on F_S and λ vanishes factorwise; otherwise
    the joint space is larger, and ``tensor_dimension`` reports the surplus.

    Returns:
        :class:`CheckReport <dwarith.core.structure.CheckReport>`

    """
    report = CheckReport('structure:{}|{}'.format(','.join(x_1.names), ','.join(x_2.names)))
    n = x_1.modulus
    space_1, space_2 = theta_space(x_1), theta_space(x_2)
    joint_section = x_1.concat(x_2)
    joint = theta_space(joint_section)
    expected = space_1.dimension * space_2.dimension

    products = [_product_vector(a, b, joint_section) for a in space_1.basis for b in space_2.basis]
    in_space = all(not check_equivariance(v) for v in products)
    report.check('tensor_products_equivariant', in_space, message='a product vector is not equivariant')
    rank = cyclotomic_rank([[v[rho] for rho in joint_section.space()] for v in products], n) if products else 0
    report.check('tensor_products_independent', rank == expected,
                 message='products span {} of {} dimensions'.format(rank, expected),
                 content={'rank': rank})
    report.check('tensor_dimension', joint.dimension >= expected,
                 message=None if joint.dimension >= expected else 'joint dimension {} < {}'.format(
                     joint.dimension, expected),
                 content={'dim_1': space_1.dimension, 'dim_2': space_2.dimension, 'joint': joint.dimension,
                          'surplus': joint.dimension - expected})

    for label, x, space in (('1', x_1, space_1), ('2', x_2, space_2)):
        dual = theta_space(x.reversed())
        report.check('dual_dimension[{}]'.format(label), dual.dimension == space.dimension,
                     content={'dim': space.dimension, 'dual': dual.dimension})
        gram = [[dual_pairing(phi, theta) for theta in space.basis] for phi in dual.basis]
        gram_rank = cyclotomic_rank(gram, n) if gram else 0
        report.check('dual_pairing_nondegenerate[{}]'.format(label), gram_rank == space.dimension,
                     message='Gram matrix has rank {} of {}'.format(gram_rank, space.dimension),
                     content={'gram': gram})
    return report


def classical_value(count, group_order, modulus):
    """``count/#G`` as a cyclotomic value."""
    return CyclotomicValue.from_rational(modulus, Rational(count, group_order))
