"""
Global arithmetic data and Chern–Simons functionals.

A :class:`GlobalDatum` models Π_S by a finite group Q_S with local
attachments ``ι_p : Q_p -> Q_S``. The reciprocity axiom (the sum of the
local invariants of a global 2-cocycle vanishes) is checked, never assumed;
it is what makes ``CS(ρ) = Σ_p inv_p(β_ρ∘ι_p - x_p(ρ∘ι_p))`` independent of
the solution β_ρ of ``dβ_ρ = c∘ρ``.

"""
import itertools
import logging
from collections import namedtuple

import numpy as np

from dwarith import CONFIG
from dwarith.cochains import coboundary, cohomology_basis, pullback, solve_coboundary
from dwarith.core.errors import (BetaDependence, InvalidWitness, ModelViolation, NotAHomomorphism,
                                 ReciprocityViolation)
from dwarith.core.structure import CheckReport
from dwarith.groups import act_on_tuple, conjugate_hom, enumerate_homs
from dwarith.local_theory import Section, lambda_S, local_homs
from dwarith.torsors import FiberElement, diff
from dwarith.utilities import logging_utils

logger = logging.getLogger(__name__)

Attachment = namedtuple('Attachment', ['local', 'iota'])


def _second_solution_rng(*keys):
    return np.random.default_rng([CONFIG['sampling']['seed']] + [int(k) for key in keys for k in key])


class GlobalDatum(object):
    """
    Finite model Q_S of Π_S with its local attachments.

    Args:
        group (FiniteGroup): Q_S.
        attachments (list of Attachment): ``(LocalDatum, ι_p)`` pairs.
        label (str): Name used in reports and references.
        modulus (int, optional): N; taken from the attachments when omitted.

    Raises:
        NotAHomomorphism: Some ι_p is not a homomorphism ``Q_p -> Q_S``.

    """

    def __init__(self, group, attachments, label='S', modulus=None):
        self.group = group
        self.label = label
        self.attachments = [Attachment(*a) for a in attachments]
        names = [a.local.name for a in self.attachments]
        if len(set(names)) != len(names):
            raise ValueError('Global datum {} attaches a prime twice.'.format(label))
        moduli = {a.local.modulus for a in self.attachments}
        if modulus is not None:
            moduli.add(modulus)
        if len(moduli) > 1:
            raise ValueError('Attachments of {} use different moduli {}.'.format(label, sorted(moduli)))
        self.modulus = moduli.pop() if moduli else None
        for a in self.attachments:
            iota = a.iota
            if iota.source != a.local.group or iota.target != group or not iota.is_valid():
                logger.error('iota_%s is not a homomorphism into %s', a.local.name, label)
                raise NotAHomomorphism('iota_{} is not a homomorphism {} -> {}.'.format(
                    a.local.name, a.local.group.label, group.label), prime=a.local.name)
        self._reciprocity = None

    def __repr__(self):
        return 'GlobalDatum({}, {}, {})'.format(self.label, self.group.label, self.names)

    @property
    def data(self):
        return [a.local for a in self.attachments]

    @property
    def names(self):
        return [a.local.name for a in self.attachments]

    def homs(self, gauge_group):
        """Hom(Q_S, G) in enumeration order."""
        return enumerate_homs(self.group, gauge_group)

    def reciprocity_failures(self):
        """
        Indices of Z²(Q_S) generators z with ``Σ_p inv_p(z∘ι_p) != 0``,
        with the offending sums.
        """
        if self._reciprocity is None:
            failures = []
            if self.attachments:
                basis = cohomology_basis(self.group, self.modulus, 2)
                for i, z in enumerate(basis.cocycle_basis):
                    total = sum(a.local.inv_value(pullback(z, a.iota)) for a in self.attachments)
                    if total % self.modulus:
                        failures.append((i, total % self.modulus))
            self._reciprocity = failures
        return self._reciprocity

    def require_reciprocity(self):
        failures = self.reciprocity_failures()
        if failures:
            logger.error('Reciprocity fails on %s for %d cocycle generators', self.label, len(failures))
            raise ReciprocityViolation('Reciprocity fails on {}: sum of local invariants is nonzero on '
                                       'cocycle generators {}.'.format(self.label, [i for i, _ in failures]),
                                       datum=self.label, generators=[i for i, _ in failures])
        return self

    def to_json(self):
        return {'label': self.label,
                'group': self.group.label,
                'attachments': [{'local': a.local.name, 'iota_map': a.iota.to_json()}
                                for a in self.attachments]}


def restrict(gd, rho):
    """``res_S(ρ) = (ρ∘ι_p)_p``."""
    if rho.source != gd.group:
        raise ValueError('Cannot restrict a hom out of {} along {}.'.format(rho.source.label, gd.label))
    return tuple(rho.compose(a.iota) for a in gd.attachments)


@logging_utils.log_entrance_exit
def check_global_axioms(gd, gauge_group, cocycle):
    """
    Reciprocity over a Z²(Q_S) generating set and global solvability of
    ``dβ = c∘ρ`` for every ρ.

    Returns:
        :class:`CheckReport <dwarith.core.structure.CheckReport>`

    """
    report = CheckReport('global:{}'.format(gd.label))
    failures = gd.reciprocity_failures()
    error = None
    if failures:
        error = ReciprocityViolation('Reciprocity fails on {}.'.format(gd.label),
                                     datum=gd.label, generators=[i for i, _ in failures])
    report.check('reciprocity', not failures,
                 message='sum of local invariants is nonzero on generators {}'.format(failures) if failures else None,
                 error=error)
    for rho in gd.homs(gauge_group):
        solvable = solve_coboundary(pullback(cocycle, rho)) is not None
        report.check('global_solvability{}'.format(list(rho.key)), solvable,
                     message=None if solvable else 'c o rho is not a coboundary on {}'.format(gd.group.label))
    return report


def _cs_from_beta(gd, section, rho, beta):
    total = 0
    for a, rho_p in zip(gd.attachments, restrict(gd, rho)):
        total += diff(FiberElement(a.local, rho_p, pullback(beta, a.iota)), section(a.local, rho_p))
    return total % section.modulus


def cs_global(gd, section, rho):
    """
    ``CS^x(ρ) = Σ_p inv_p(β_ρ∘ι_p - x_p(ρ∘ι_p))``.

    The value is recomputed with a second, randomly drawn β_ρ and the two
    must agree.

    Args:
        gd (GlobalDatum): The arithmetic model.
        section (Section): Section over ``gd``'s primes, in attachment order.
        rho (GroupHom): Q_S -> G.

    Returns:
        int

    Raises:
        ModelViolation: ``c∘ρ`` is not a coboundary.
        ReciprocityViolation: The value depends on β_ρ.

    """
    if section.names != gd.names:
        raise ValueError('Section primes {} do not match {} primes {}.'.format(section.names, gd.label, gd.names))
    gd.require_reciprocity()
    target = pullback(section.cocycle, rho)
    beta = solve_coboundary(target)
    if beta is None:
        logger.error('c o rho is not a coboundary on %s at %s', gd.label, rho.key)
        raise ModelViolation('Global solvability fails on {} for rho = {}.'.format(gd.label, list(rho.key)),
                             datum=gd.label, rho=list(rho.key))
    value = _cs_from_beta(gd, section, rho, beta)
    other = _cs_from_beta(gd, section, rho, solve_coboundary(target, _second_solution_rng(rho.key)))
    if other != value:
        logger.error('CS on %s depends on beta at %s: %s vs %s', gd.label, rho.key, value, other)
        raise ReciprocityViolation('CS on {} depends on the choice of beta at {}.'.format(gd.label, list(rho.key)),
                                   datum=gd.label, rho=list(rho.key), values=[value, other])
    return value


@logging_utils.log_entrance_exit
def cs_table(gd, section):
    """``{ρ: CS(ρ)}`` over Hom(Q_S, G) in enumeration order."""
    return {rho: cs_global(gd, section, rho) for rho in gd.homs(section.gauge_group)}


def tube_space(data, gauge_group):
    """Π_p Hom(Q̃_p, G) as tuples."""
    for d in data:
        if d.unramified is None:
            raise ModelViolation('Prime {} has no unramified quotient.'.format(d.name), prime=d.name)
    return list(itertools.product(*[enumerate_homs(d.unramified.group, gauge_group) for d in data]))


def tube_restrict(data, rho_tilde):
    """``res̃(ρ̃) = (ρ̃_p∘v_p)_p``."""
    return tuple(r.compose(d.unramified.v_map) for d, r in zip(data, rho_tilde))


def tube_independence_failures(datum):
    """
    Z²(Q̃_p) generators whose inflation along v_p has nonzero invariant.
    """
    quotient = datum.unramified
    basis = cohomology_basis(quotient.group, datum.modulus, 2)
    return [i for i, z in enumerate(basis.cocycle_basis)
            if datum.inv_value(pullback(z, quotient.v_map))]


def _cs_tube_term(datum, section, r, beta):
    v = datum.unramified.v_map
    rho_p = r.compose(v)
    return diff(FiberElement(datum, rho_p, pullback(beta, v)), section(datum, rho_p))


def cs_tube(data, section, rho_tilde):
    """
    ``CS_V(ρ̃) = Σ_p inv_p(β̃_p∘v_p - x_p(ρ̃_p∘v_p))`` with ``dβ̃_p = c∘ρ̃_p``
    on Q̃_p.

    Raises:
        ModelViolation: Some ``c∘ρ̃_p`` is not a coboundary on Q̃_p.
        BetaDependence: inv_p does not kill inflated classes of Q̃_p.

    """
    if [d.name for d in data] != section.names:
        raise ValueError('Section primes {} do not match tube primes.'.format(section.names))
    total = 0
    for d, r in zip(data, rho_tilde):
        if d.unramified is None:
            raise ModelViolation('Prime {} has no unramified quotient.'.format(d.name), prime=d.name)
        failures = tube_independence_failures(d)
        if failures:
            logger.error('inv_%s does not vanish on inflated classes %s', d.name, failures)
            raise BetaDependence('Tube value at {} depends on the choice of beta: inv is nonzero on inflated '
                                 'cocycle generators {}.'.format(d.name, failures), prime=d.name)
        target = pullback(section.cocycle, r)
        beta = solve_coboundary(target)
        if beta is None:
            logger.error('c o rho~ is not a coboundary on %s at %s', d.unramified.group.label, r.key)
            raise ModelViolation('Tube solvability fails at {} for rho~ = {}.'.format(d.name, list(r.key)),
                                 prime=d.name, rho=list(r.key))
        value = _cs_tube_term(d, section, r, beta)
        other = _cs_tube_term(d, section, r, solve_coboundary(target, _second_solution_rng(r.key)))
        if value != other:
            raise BetaDependence('Tube value at {} depends on the choice of beta.'.format(d.name), prime=d.name)
        total += value
    return total % section.modulus


@logging_utils.log_entrance_exit
def check_tube_axioms(data, gauge_group, cocycle):
    """Solvability on every Q̃_p and β̃-independence of the tube invariant."""
    report = CheckReport('tube:{}'.format(','.join(d.name for d in data)))
    for d in data:
        if d.unramified is None:
            report.check('unramified[{}]'.format(d.name), False, message='no unramified quotient')
            continue
        failures = tube_independence_failures(d)
        report.check('beta_independence[{}]'.format(d.name), not failures,
                     message='inv is nonzero on inflated generators {}'.format(failures) if failures else None)
        for r in enumerate_homs(d.unramified.group, gauge_group):
            solvable = solve_coboundary(pullback(cocycle, r)) is not None
            report.check('tube_solvability[{}]{}'.format(d.name, list(r.key)), solvable,
                         message=None if solvable else 'c o rho~ is not a coboundary on {}'.format(
                             d.unramified.group.label))
    return report


class GluingDatum(object):
    """
    ``X̄_S = X̄_{S₁} ∪ V_{S₂}``: an outer model for S = S₁ ⊔ S₂, an inner
    model for S₁, ``η : Q_S -> Q_{S₁}`` and ``u_p : Q̃_p -> Q_{S₁}`` for
    p in S₂.

    The outer attachments list the S₁ primes first, in inner order.

    Args:
        outer (GlobalDatum): Model for S.
        inner (GlobalDatum): Model for S₁; may have no attachments.
        eta (GroupHom): Surjection Q_S -> Q_{S₁}.
        u_maps (dict): ``{prime name: GroupHom Q̃_p -> Q_{S₁}}`` for S₂.
        label (str): Name used in reports.

    Raises:
        ModelViolation: A square fails to commute or η is not onto.

    """

    def __init__(self, outer, inner, eta, u_maps, label='gluing'):
        self.outer = outer
        self.inner = inner
        self.eta = eta
        self.u_maps = dict(u_maps)
        self.label = label
        self.s1_names = inner.names
        self.s2_names = [n for n in outer.names if n not in self.s1_names]
        self._validate()

    def _validate(self):
        outer, inner, eta = self.outer, self.inner, self.eta
        if outer.names[:len(self.s1_names)] != self.s1_names:
            raise ModelViolation('Outer model {} must list the primes of {} first.'.format(
                outer.label, inner.label), gluing=self.label)
        if eta.source != outer.group or eta.target != inner.group or not eta.is_valid():
            raise NotAHomomorphism('eta is not a homomorphism {} -> {}.'.format(outer.group.label, inner.group.label))
        if not eta.is_surjective():
            raise ModelViolation('eta of {} is not surjective.'.format(self.label), gluing=self.label)
        for a_in, a_out in zip(inner.attachments, outer.attachments):
            if eta.compose(a_out.iota) != a_in.iota:
                raise ModelViolation('Attachment of {} in {} is not eta o iota.'.format(a_in.local.name, inner.label),
                                     gluing=self.label, prime=a_in.local.name)
        for a in outer.attachments[len(self.s1_names):]:
            name = a.local.name
            if a.local.unramified is None:
                raise ModelViolation('Prime {} of S2 has no unramified quotient.'.format(name), prime=name)
            if name not in self.u_maps:
                raise ModelViolation('Gluing {} has no u map for {}.'.format(self.label, name), prime=name)
            u, v = self.u_maps[name], a.local.unramified.v_map
            if u.source != v.target or u.target != inner.group or not u.is_valid():
                raise NotAHomomorphism('u_{} is not a homomorphism {} -> {}.'.format(
                    name, v.target.label, inner.group.label))
            if u.compose(v) != eta.compose(a.iota):
                logger.error('Square for %s does not commute in %s', name, self.label)
                raise ModelViolation('u_{0} o v_{0} != eta o iota_{0}.'.format(name), gluing=self.label, prime=name)

    @property
    def s2_data(self):
        return self.outer.data[len(self.s1_names):]

    def u_tuple(self, rho1):
        """``(ρ₁∘u_p)_{p ∈ S₂}``."""
        return tuple(rho1.compose(self.u_maps[d.name]) for d in self.s2_data)

    def exactness_failures(self, gauge_group):
        """
        Homs ρ on Q_S where "factors through η" and "every ρ∘ι_p with p in
        S₂ factors through v_p" disagree.
        """
        failures = []
        for rho in self.outer.homs(gauge_group):
            through_eta = rho.factor_through(self.eta) is not None
            unramified = all(rho.compose(a.iota).factor_through(a.local.unramified.v_map) is not None
                             for a in self.outer.attachments[len(self.s1_names):])
            if through_eta != unramified:
                failures.append(rho)
        return failures

    def to_json(self):
        return {'label': self.label,
                'outer': self.outer.label,
                'inner': self.inner.label,
                'eta_map': self.eta.to_json(),
                'u_maps': {k: v.to_json() for k, v in sorted(self.u_maps.items())}}


@logging_utils.log_entrance_exit
def check_gluing_axioms(gl, gauge_group, cocycle):
    """Gluing exactness plus the tube axioms of the S₂ primes."""
    report = CheckReport('gluing:{}'.format(gl.label))
    failures = gl.exactness_failures(gauge_group)
    report.check('gluing_exactness', not failures,
                 message='factoring through eta disagrees with unramified restriction at {}'.format(
                     [list(r.key) for r in failures]) if failures else None)
    report.extend(check_tube_axioms(gl.s2_data, gauge_group, cocycle).records)
    return report


def _split(gl, section):
    return section.restrict(gl.s1_names), section.restrict(gl.s2_names)


def decomposition_sides(gl, section, rho1):
    """
    Both sides of ``CS_{S₁}(ρ₁) + CS_V((ρ₁∘u_p)) = CS_S(ρ₁∘η)``.

    Args:
        gl (GluingDatum): The gluing.
        section (Section): Section over the outer primes; its restrictions
            to S₁ and S₂ are used on the left.
        rho1 (GroupHom): Q_{S₁} -> G.

    Returns:
        tuple: (left, right)

    """
    x1, x2 = _split(gl, section)
    left = (cs_global(gl.inner, x1, rho1) + cs_tube(gl.s2_data, x2, gl.u_tuple(rho1))) % section.modulus
    right = cs_global(gl.outer, section, rho1.compose(gl.eta))
    return left, right


@logging_utils.log_entrance_exit
def check_decomposition(gl, section, rho1=None):
    """
    Compare both sides of the decomposition formula at ``rho1``, or at
    every ρ₁ when ``rho1`` is None.

    Returns:
        :class:`CheckReport <dwarith.core.structure.CheckReport>`

    """
    report = CheckReport('decomposition:{}'.format(gl.label))
    homs = [rho1] if rho1 is not None else gl.inner.homs(section.gauge_group)
    for r in homs:
        left, right = decomposition_sides(gl, section, r)
        report.check('decomposition{}'.format(list(r.key)), left == right,
                     message=None if left == right else 'sides differ',
                     content={'left': left, 'right': right})
    return report


def cs_closed(gl, section, rho1):
    """
    Closed invariant for an inner model without attachments:
    ``CS_S(ρ₁∘η) - CS_V((ρ₁∘u_p))``.
    """
    if gl.inner.attachments:
        raise ValueError('cs_closed needs an inner model with no attachments; {} has {}.'.format(
            gl.inner.label, gl.inner.names))
    value = cs_global(gl.outer, section, rho1.compose(gl.eta)) - cs_tube(gl.s2_data, section, gl.u_tuple(rho1))
    return value % section.modulus


@logging_utils.log_entrance_exit
def check_closed_consistency(closed, gauge_group):
    """
    Compare cs_closed across several gluings of the same closed model.

    Args:
        closed (list of tuple): ``(GluingDatum, Section)`` pairs whose inner
            groups agree.
        gauge_group (FiniteGroup): G.

    Returns:
        :class:`CheckReport <dwarith.core.structure.CheckReport>`

    """
    report = CheckReport('closed_consistency')
    if not closed:
        return report
    groups = {gl.inner.group for gl, _ in closed}
    if len(groups) != 1:
        raise ValueError('Closed gluings must share one inner group.')
    first_gl = closed[0][0]
    for rho1 in first_gl.inner.homs(gauge_group):
        values = {gl.label: cs_closed(gl, x, rho1) for gl, x in closed}
        agree = len(set(values.values())) == 1
        report.check('cs_closed{}'.format(list(rho1.key)), agree,
                     message=None if agree else 'values depend on the auxiliary primes', content=values)
    return report


class CocycleChange(object):
    """
    ``c' = c + db`` with the fiber maps ``α ↦ α + b∘ρ``.

    Args:
        cocycle (Cochain): c.
        b (Cochain): 2-cochain on G.
        label (str): Name used in reports.
        new_cocycle (Cochain, optional): Claimed c'; checked against
            ``c + db``.

    Raises:
        InvalidWitness: ``new_cocycle - cocycle != db``.

    """

    def __init__(self, cocycle, b, label='change', new_cocycle=None):
        if b.degree != 2 or b.group != cocycle.group:
            raise ValueError('b must be a 2-cochain on {}.'.format(cocycle.group.label))
        target = cocycle + coboundary(b)
        if new_cocycle is not None and new_cocycle != target:
            logger.error('c\' - c is not db for change %s', label)
            raise InvalidWitness("c' - c is not the coboundary of b in {}.".format(label), change=label)
        self.cocycle = cocycle
        self.new_cocycle = target
        self.b = b
        self.label = label

    def transport_point(self, point):
        """Image of a c-fiber point in the c'-fiber over the same ρ_p."""
        return FiberElement(point.local, point.rep, point.cochain + pullback(self.b, point.rep))

    def transport_section(self, section, label=None):
        """The c'-section ``x_p(ρ) + b∘ρ``; κ against it is identically 0."""
        fibers = {}
        for d in section.data:
            fibers[d.name] = {rho: self.transport_point(section(d, rho))
                              for rho in local_homs(d, section.gauge_group)}
        return Section(section.data, section.gauge_group, self.new_cocycle, fibers,
                       label or '{}@{}'.format(section.label, self.label))

    def kappa(self, x, x_prime, rho_S):
        """``κ(ρ_S) = Σ_p inv_p(x_p(ρ_p) + b∘ρ_p - x'_p(ρ_p))``."""
        total = 0
        for d, rho in zip(x.data, rho_S):
            total += diff(self.transport_point(x(d, rho)), x_prime(d, rho))
        return total % x.modulus


class DataIsomorphism(object):
    """
    Isomorphism from a global datum ``source`` (primed) to ``target``:
    ``φ_S : Q'_S -> Q_S`` and, attachment by attachment,
    ``φ_p : Q'_p -> Q_p``.

    Raises:
        InvalidWitness: A map is not an isomorphism, a square does not
            commute, or the local invariants are not preserved.

    """

    def __init__(self, source, target, global_map, local_maps, label='isomorphism'):
        self.source = source
        self.target = target
        self.global_map = global_map
        self.local_maps = list(local_maps)
        self.label = label
        self._validate()

    def _fail(self, message, **details):
        logger.error('%s: %s', self.label, message)
        raise InvalidWitness('{}: {}'.format(self.label, message), isomorphism=self.label, **details)

    def _validate(self):
        phi = self.global_map
        if phi.source != self.source.group or phi.target != self.target.group:
            self._fail('global map must go {} -> {}'.format(self.source.group.label, self.target.group.label))
        if not (phi.is_valid() and phi.is_injective() and phi.is_surjective()):
            self._fail('global map is not an isomorphism')
        if len(self.local_maps) != len(self.target.attachments) or \
                len(self.source.attachments) != len(self.target.attachments):
            self._fail('attachment counts differ')
        if self.source.modulus != self.target.modulus:
            self._fail('moduli differ')
        for a_src, a_tgt, phi_p in zip(self.source.attachments, self.target.attachments, self.local_maps):
            name = a_tgt.local.name
            if phi_p.source != a_src.local.group or phi_p.target != a_tgt.local.group:
                self._fail('local map for {} has the wrong groups'.format(name), prime=name)
            if not (phi_p.is_valid() and phi_p.is_injective() and phi_p.is_surjective()):
                self._fail('local map for {} is not an isomorphism'.format(name), prime=name)
            if a_tgt.iota.compose(phi_p) != phi.compose(a_src.iota):
                self._fail('attachment square for {} does not commute'.format(name), prime=name)
            basis = cohomology_basis(a_tgt.local.group, a_tgt.local.modulus, 2)
            for z in basis.cocycle_basis:
                if a_src.local.inv_value(pullback(z, phi_p)) != a_tgt.local.inv_value(z):
                    self._fail('local invariant at {} is not preserved'.format(name), prime=name)

    def map_global(self, rho):
        """``ρ ↦ ρ∘φ_S`` from Hom(Q_S, G) to Hom(Q'_S, G)."""
        return rho.compose(self.global_map)

    def map_boundary(self, rho_S):
        """``(ρ_p)_p ↦ (ρ_p∘φ_p)_p``."""
        return tuple(r.compose(phi) for r, phi in zip(rho_S, self.local_maps))

    def pull_boundary(self, rho_prime_S):
        """Inverse of :meth:`map_boundary`."""
        return tuple(r.compose(phi.inverse()) for r, phi in zip(rho_prime_S, self.local_maps))

    def transport_section(self, section, label=None):
        """
        Section over the source primes:
        ``x'_p(ρ') = x_p(ρ'∘φ_p⁻¹)∘φ_p``.
        """
        fibers = {}
        for a_src, a_tgt, phi_p in zip(self.source.attachments, self.target.attachments, self.local_maps):
            inverse = phi_p.inverse()
            points = {}
            for rho_prime in enumerate_homs(a_src.local.group, section.gauge_group):
                point = section(a_tgt.local, rho_prime.compose(inverse))
                points[rho_prime] = FiberElement(a_src.local, rho_prime, pullback(point.cochain, phi_p))
            fibers[a_src.local.name] = points
        return Section(self.source.data, section.gauge_group, section.cocycle, fibers,
                       label or '{}@{}'.format(section.label, self.label))


def lambda_difference(change, x, x_prime, g, rho_S):
    """``κ(ρ_S.g) - κ(ρ_S)``, the expected value of ``λ' - λ``."""
    return (change.kappa(x, x_prime, act_on_tuple(rho_S, g)) - change.kappa(x, x_prime, rho_S)) % x.modulus


def equivariance_defects(gd, section):
    """
    Triples ``(g, ρ, defect)`` where ``CS(ρ.g) - CS(ρ) - λ_S(g, res ρ)`` is
    nonzero.
    """
    table = cs_table(gd, section)
    defects = []
    for rho, value in table.items():
        res = restrict(gd, rho)
        for g in section.gauge_group.elements:
            d = (table[conjugate_hom(rho, g)] - value - lambda_S(section, g, res)) % section.modulus
            if d:
                defects.append((g, rho, d))
    return defects
