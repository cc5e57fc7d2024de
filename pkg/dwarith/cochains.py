"""
The bar cochain complex C^n(Q, Z/N).

A degree-n cochain is a dense numpy table of shape ``(|Q|,) * n`` with
entries in ``[0, N)``. The module Z/N carries an optional action of Q
through a unit character ``χ : Q -> (Z/N)^×``; the trivial action is the
default and the only one the gauge-theoretic layers use.

Coboundary::

    (dα)(γ1..γn+1) = χ(γ1)·α(γ2..γn+1)
                     + Σ_{i=1}^{n} (-1)^i α(γ1..γiγi+1..γn+1)
                     + (-1)^{n+1} α(γ1..γn)

Conjugation action: ``(σ.α)(γ) = χ(σ)·α(σ⁻¹γ1σ, .., σ⁻¹γnσ)``.

Homotopies: ``h_σ`` and ``H_{σ1,σ2}`` are alternating sums of α composed
with the insertion maps ``s_i`` and ``s_{i,j}`` (see :func:`homotopy_h`,
:func:`homotopy_H`). They satisfy

* ``σ.α - α = h_σ(dα) + d(h_σ(α))``
* ``σ1.h_σ2(α) - h_σ1σ2(α) + h_σ1(α) = H_σ1,σ2(dα) - d(H_σ1,σ2(α))``

with ``h`` and ``H`` of negative degree read as 0.

"""
import functools
import logging

import numpy as np

from dwarith import CONFIG
from dwarith.core.errors import DegreeTooLow, InvariantFailure, ModulusMismatch, NotACocycle, ResourceLimit
from dwarith.core.structure import CheckReport
from dwarith.linalg import ModularSmithForm, invariant_factors
from dwarith.utilities import logging_utils

logger = logging.getLogger(__name__)


class Cochain(object):
    """
    A Z/N-valued n-cochain on a finite group.

    Args:
        group (FiniteGroup): Q.
        degree (int): n >= 0.
        modulus (int): N >= 2.
        values (array-like): Table of shape ``(|Q|,) * n``; reduced mod N.
        character (tuple of int, optional): Unit character ``χ`` as a table
            over Q; None for the trivial action.

    """

    def __init__(self, group, degree, modulus, values, character=None):
        if degree < 0:
            raise ValueError('Cochain degree must be nonnegative.')
        if modulus < 2:
            raise ValueError('Modulus must be at least 2.')
        arr = np.array(np.asarray(values, dtype=np.int64) % modulus)
        if arr.shape != (group.order,) * degree:
            raise ValueError('Expected a table of shape {}, got {}.'.format(
                (group.order,) * degree, arr.shape))
        arr.flags.writeable = False
        self.group = group
        self.degree = degree
        self.modulus = modulus
        self.values = arr
        self.character = _normalize_character(character, group, modulus)

    @classmethod
    def zero(cls, group, degree, modulus, character=None):
        return cls(group, degree, modulus, np.zeros((group.order,) * degree, dtype=np.int64), character)

    @classmethod
    def from_function(cls, group, degree, modulus, func, character=None):
        """Tabulate ``func(*elements)`` over Q^n."""
        values = np.zeros((group.order,) * degree, dtype=np.int64)
        for idx in np.ndindex(*values.shape):
            values[idx] = int(func(*idx))
        return cls(group, degree, modulus, values, character)

    @classmethod
    def from_entries(cls, group, degree, modulus, entries, character=None):
        """
        Build from sparse ``(tuple, value)`` pairs; unlisted entries are 0.
        """
        values = np.zeros((group.order,) * degree, dtype=np.int64)
        for args, value in entries:
            args = tuple(args)
            if len(args) != degree:
                raise ValueError('Entry {} has the wrong arity for degree {}.'.format(args, degree))
            values[args] = int(value)
        return cls(group, degree, modulus, values, character)

    @classmethod
    def random(cls, group, degree, modulus, rng, character=None):
        return cls(group, degree, modulus, rng.integers(modulus, size=(group.order,) * degree), character)

    def __call__(self, *args):
        return int(self.values[tuple(args)])

    def _check_compatible(self, other):
        if not isinstance(other, Cochain):
            raise TypeError('Expected a Cochain, got {}.'.format(type(other).__name__))
        if other.modulus != self.modulus:
            raise ModulusMismatch('Cochain moduli differ: {} vs {}.'.format(self.modulus, other.modulus))
        if other.group != self.group or other.degree != self.degree or other.character != self.character:
            raise ValueError('Cochains live in different groups C^n(Q, M).')

    def with_values(self, values):
        return Cochain(self.group, self.degree, self.modulus, values, self.character)

    def __add__(self, other):
        self._check_compatible(other)
        return self.with_values(self.values + other.values)

    def __sub__(self, other):
        self._check_compatible(other)
        return self.with_values(self.values - other.values)

    def __neg__(self):
        return self.with_values(-self.values)

    def __mul__(self, scalar):
        return self.with_values(self.values * int(scalar))

    __rmul__ = __mul__

    def __eq__(self, other):
        return (isinstance(other, Cochain) and self.modulus == other.modulus
                and self.degree == other.degree and self.group == other.group
                and self.character == other.character
                and np.array_equal(self.values, other.values))

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((self.group, self.degree, self.modulus, self.character, self.values.tobytes()))

    def __repr__(self):
        return 'Cochain(degree={}, modulus={}, group={})'.format(self.degree, self.modulus, self.group.label)

    @property
    def is_zero(self):
        return not self.values.any()

    @property
    def trivial_action(self):
        return self.character is None

    def to_entries(self):
        """Sparse ``[[args], value]`` list of the nonzero entries."""
        return [[list(int(x) for x in idx), int(v)]
                for idx, v in np.ndenumerate(self.values) if v]

    def to_json(self):
        return {'degree': self.degree, 'modulus': self.modulus, 'entries': self.to_entries()}


def _normalize_character(character, group, modulus):
    if character is None:
        return None
    chi = tuple(int(x) % modulus for x in character)
    if len(chi) != group.order:
        raise ValueError('Character table must have one value per element.')
    if all(x == 1 for x in chi):
        return None
    for a in group.elements:
        for b in group.elements:
            if chi[int(group.mul[a, b])] != chi[a] * chi[b] % modulus:
                raise ValueError('Character is not multiplicative at ({}, {}).'.format(a, b))
    return chi


def _grids(group, degree):
    if degree == 0:
        return []
    return list(np.indices((group.order,) * degree))


def _coboundary_terms(group, degree):
    """
    The terms of d on C^{degree} as ``(sign, uses_character, index arrays)``
    over a grid of shape ``(|Q|,) * (degree + 1)``.
    """
    grids = _grids(group, degree + 1)
    mul = group.mul
    terms = [(1, True, grids[1:])]
    for i in range(1, degree + 1):
        args = grids[:i - 1] + [mul[grids[i - 1], grids[i]]] + grids[i + 1:]
        terms.append(((-1) ** i, False, args))
    terms.append(((-1) ** (degree + 1), False, grids[:degree]))
    return grids, terms


def coboundary(alpha):
    """
    The coboundary ``dα``.

    Args:
        alpha (Cochain): Degree n.

    Returns:
        Cochain: Degree n + 1.

    """
    group, n = alpha.group, alpha.degree
    grids, terms = _coboundary_terms(group, n)
    shape = (group.order,) * (n + 1)
    total = np.zeros(shape, dtype=np.int64)
    chi = np.array(alpha.character, dtype=np.int64) if alpha.character else None
    for sign, uses_character, args in terms:
        value = np.broadcast_to(alpha.values[tuple(args)], shape)
        if uses_character and chi is not None:
            value = chi[grids[0]] * value
        total = total + sign * value
    return Cochain(group, n + 1, alpha.modulus, total, alpha.character)


def conj_act(sigma, alpha):
    """
    ``(σ.α)(γ1..γn) = χ(σ)·α(σ⁻¹γ1σ, .., σ⁻¹γnσ)``.
    """
    group = alpha.group
    table = group.conjugation_table(sigma)
    values = alpha.values[np.ix_(*([table] * alpha.degree))] if alpha.degree else alpha.values
    if alpha.character:
        values = values * alpha.character[sigma]
    return alpha.with_values(values)


def _insertion_terms(group, degree, sigma):
    """``(sign, index arrays)`` for the maps s_i(σ) on a degree-n grid."""
    grids = _grids(group, degree)
    shape = (group.order,) * degree
    conj = group.conjugation_table(sigma)
    const = np.full(shape, sigma, dtype=np.int64)
    terms = []
    for i in range(degree + 1):
        args = grids[:i] + [const] + [conj[g] for g in grids[i:]]
        terms.append(((-1) ** i, args))
    return terms


def homotopy_h(sigma, alpha):
    """
    ``h_σ(α) = Σ_{0<=i<=n} (-1)^i α∘s_i`` with
    ``s_i(g1..gn) = (g1..gi, σ, σ⁻¹g_{i+1}σ, .., σ⁻¹gnσ)``.

    Args:
        sigma (int): Element of Q.
        alpha (Cochain): Degree n + 1 >= 1.

    Returns:
        Cochain: Degree n.

    Raises:
        DegreeTooLow: ``alpha`` has degree 0.

    """
    if alpha.degree < 1:
        raise DegreeTooLow('homotopy_h needs a cochain of degree >= 1.')
    group, n = alpha.group, alpha.degree - 1
    shape = (group.order,) * n
    total = np.zeros(shape, dtype=np.int64)
    for sign, args in _insertion_terms(group, n, sigma):
        total = total + sign * np.broadcast_to(alpha.values[tuple(args)], shape)
    return Cochain(group, n, alpha.modulus, total, alpha.character)


def homotopy_H(sigma1, sigma2, alpha):
    """
    ``H_{σ1,σ2}(α) = Σ_{0<=i<=j<=n} (-1)^{i+j} α∘s_{i,j}`` where ``s_{i,j}``
    keeps g1..gi, inserts σ1, conjugates g_{i+1}..gj by σ1, inserts σ2 and
    conjugates g_{j+1}..gn by σ1σ2.

    Args:
        sigma1 (int): Element of Q.
        sigma2 (int): Element of Q.
        alpha (Cochain): Degree n + 2 >= 2.

    Returns:
        Cochain: Degree n.

    Raises:
        DegreeTooLow: ``alpha`` has degree below 2.

    """
    if alpha.degree < 2:
        raise DegreeTooLow('homotopy_H needs a cochain of degree >= 2.')
    group, n = alpha.group, alpha.degree - 2
    shape = (group.order,) * n
    grids = _grids(group, n)
    conj1 = group.conjugation_table(sigma1)
    conj12 = group.conjugation_table(group.multiply(sigma1, sigma2))
    s1 = np.full(shape, sigma1, dtype=np.int64)
    s2 = np.full(shape, sigma2, dtype=np.int64)
    total = np.zeros(shape, dtype=np.int64)
    for i in range(n + 1):
        for j in range(i, n + 1):
            args = (grids[:i] + [s1] + [conj1[g] for g in grids[i:j]]
                    + [s2] + [conj12[g] for g in grids[j:]])
            total = total + (-1) ** (i + j) * np.broadcast_to(alpha.values[tuple(args)], shape)
    return Cochain(group, n, alpha.modulus, total, alpha.character)


def pullback(alpha, rho):
    """
    ``(α∘ρ)(γ1..γn) = α(ρ(γ1), .., ρ(γn))``.

    Args:
        alpha (Cochain): Cochain on G with trivial action.
        rho (GroupHom): Q -> G.

    Returns:
        Cochain: On Q.

    """
    if rho.target != alpha.group:
        raise ValueError('Cannot pull back a cochain on {} along a map into {}.'.format(
            alpha.group.label, rho.target.label))
    if not alpha.trivial_action:
        raise ValueError('Pullback is defined for the trivial action only.')
    images = rho.array
    values = alpha.values[np.ix_(*([images] * alpha.degree))] if alpha.degree else alpha.values
    return Cochain(rho.source, alpha.degree, alpha.modulus, values)


@functools.lru_cache(maxsize=None)
def coboundary_matrix(group, degree, character=None):
    """
    Integer matrix of ``d : C^{degree-1} -> C^{degree}``.

    Rows index Q^degree and columns Q^(degree-1), both in C order, so that
    ``D.dot(α.values.ravel())`` is ``dα`` before reduction.

    """
    if degree < 1:
        raise DegreeTooLow('The first coboundary map ends in degree 1.')
    n = degree - 1
    rows = group.order ** degree
    cols = group.order ** n
    matrix = np.zeros((rows, cols), dtype=np.int64)
    grids, terms = _coboundary_terms(group, n)
    row_index = np.arange(rows)
    chi = np.array(character, dtype=np.int64) if character else None
    for sign, uses_character, args in terms:
        if args:
            col_index = np.ravel_multi_index(tuple(np.broadcast_to(a, grids[0].shape) for a in args),
                                             (group.order,) * n).ravel()
        else:
            col_index = np.zeros(rows, dtype=np.int64)
        coeff = np.full(rows, sign, dtype=np.int64)
        if uses_character and chi is not None:
            coeff = coeff * chi[grids[0].ravel()]
        np.add.at(matrix, (row_index, col_index), coeff)
    return matrix


@functools.lru_cache(maxsize=None)
def _smith_form(group, degree, modulus, character=None):
    if degree >= 3 and group.order > CONFIG['limits']['max_group_order']:
        raise ResourceLimit('Degree-{} work on a group of order {} exceeds limits.max_group_order={}.'.format(
            degree, group.order, CONFIG['limits']['max_group_order']))
    logger.debug('Smith form of d^%s on %s mod %s', degree, group.label, modulus)
    return ModularSmithForm(coboundary_matrix(group, degree, character) % modulus, modulus)


@logging_utils.log_entrance_exit
def solve_coboundary(z, rng=None):
    """
    Find β with ``dβ = z``.

    The default solution is deterministic: minimal coordinates in the Smith
    basis, free parameters 0 (so ``z = 0`` gives ``β = 0``). Passing a numpy
    ``Generator`` instead returns a random member of ``β + Z^{n-1}``, which
    is how independent second solutions are drawn.

    Args:
        z (Cochain): Degree n >= 1.
        rng (numpy.random.Generator, optional): Randomizes free directions.

    Returns:
        Cochain or None: β of degree n - 1, or None if ``z`` is not a
        coboundary.

    """
    if z.degree < 1:
        raise DegreeTooLow('Only cochains of degree >= 1 can be coboundaries.')
    form = _smith_form(z.group, z.degree, z.modulus, z.character)
    solution = form.solve(z.values.ravel(), rng)
    if solution is None:
        return None
    beta = Cochain(z.group, z.degree - 1, z.modulus,
                   solution.reshape((z.group.order,) * (z.degree - 1)), z.character)
    if coboundary(beta) != z:
        raise InvariantFailure('Coboundary solver returned a wrong solution.')
    return beta


def is_coboundary(z):
    return solve_coboundary(z) is not None


class CohomologyBasis(object):
    """
    Cocycles, coboundaries and the structure of ``H^n(Q, Z/N)``.

    Attributes:
        degree (int): n.
        modulus (int): N.
        cocycle_basis (list of Cochain): Generators of Z^n.
        coboundary_basis (list of Cochain): Generators of B^n.
        quotient_structure (list of int): Invariant factors of H^n, each
            dividing the next.

    """

    def __init__(self, group, degree, modulus, cocycle_basis, coboundary_basis, quotient_structure):
        self.group = group
        self.degree = degree
        self.modulus = modulus
        self.cocycle_basis = cocycle_basis
        self.coboundary_basis = coboundary_basis
        self.quotient_structure = quotient_structure

    @property
    def order(self):
        """``|H^n|``."""
        result = 1
        for d in self.quotient_structure:
            result *= d
        return result

    def to_json(self):
        return {'degree': self.degree,
                'modulus': self.modulus,
                'group': self.group.label,
                'order': self.order,
                'invariant_factors': list(self.quotient_structure),
                'cocycle_generators': len(self.cocycle_basis),
                'coboundary_generators': len(self.coboundary_basis)}


@functools.lru_cache(maxsize=None)
def cohomology_basis(group, modulus, degree):
    """
    Z^n, B^n and H^n for the trivial action.

    The structure of H^n comes from the Smith forms of the two adjacent
    coboundary matrices: each nonzero diagonal entry ``p^v`` of either one
    contributes a summand Z/p^v, and the remaining free rank contributes
    copies of Z/p^e.

    Args:
        group (FiniteGroup): Q.
        modulus (int): N.
        degree (int): n >= 0.

    Returns:
        CohomologyBasis

    """
    shape = (group.order,) * degree
    outgoing = _smith_form(group, degree + 1, modulus)
    cocycles = [Cochain(group, degree, modulus, vec.reshape(shape))
                for vec in outgoing.kernel_generators()]

    coboundaries = []
    incoming = None
    if degree >= 1:
        incoming = _smith_form(group, degree, modulus)
        matrix = coboundary_matrix(group, degree) % modulus
        seen = set()
        for col in matrix.T:
            if col.any() and col.tobytes() not in seen:
                seen.add(col.tobytes())
                coboundaries.append(Cochain(group, degree, modulus, col.reshape(shape)))

    orders = []
    dim = group.order ** degree
    for k, part in enumerate(outgoing.parts):
        orders.extend(part.elementary_orders())
        rank_in = 0
        if incoming is not None:
            in_part = incoming.parts[k]
            orders.extend(in_part.elementary_orders())
            rank_in = in_part.rank
        orders.extend([part.modulus] * (dim - part.rank - rank_in))
    return CohomologyBasis(group, degree, modulus, cocycles, coboundaries, invariant_factors(orders))


def first_failure(z):
    """First tuple where ``dz`` is nonzero, or None."""
    dz = coboundary(z)
    nonzero = np.argwhere(dz.values)
    if len(nonzero):
        return tuple(int(x) for x in nonzero[0])
    return None


def require_cocycle(z):
    """
    Raise NotACocycle with the violating tuple if ``dz != 0``.
    """
    bad = first_failure(z)
    if bad is not None:
        logger.error('Cochain is not a cocycle; d is nonzero at %s', bad)
        raise NotACocycle('d(c) is nonzero at {}.'.format(list(bad)), tuple=list(bad))
    return z


@functools.lru_cache(maxsize=None)
def h_class(g, c):
    """
    The representative ``h_g = h²_g(c)`` of the class with ``g.c = c + d h_g``.

    Args:
        g (int): Element of G.
        c (Cochain): 3-cocycle on G.

    Returns:
        Cochain: Degree 2 on G.

    Raises:
        NotACocycle: ``dc != 0``.

    """
    if c.degree != 3:
        raise ValueError('h_class expects a 3-cocycle.')
    require_cocycle(c)
    return homotopy_h(g, c)


def cyclic_cocycle(group, modulus, k=1):
    """
    ``c_k(a, b, c) = k·a·⌊(b + c)/n⌋ mod N`` on Z/n.

    The result is a cocycle exactly when N divides ``k·n``; callers validate
    with :func:`require_cocycle`.

    """
    n = group.order
    grids = np.indices((n, n, n))
    values = k * grids[0] * ((grids[1] + grids[2]) // n)
    return Cochain(group, 3, modulus, values)


def _h_or_zero(sigma, alpha):
    if alpha.degree < 1:
        return None
    return homotopy_h(sigma, alpha)


def _d_or_zero(beta, degree, like):
    if beta is None:
        return Cochain.zero(like.group, degree, like.modulus, like.character)
    return coboundary(beta)


def homotopy_defect(sigma, alpha):
    """``σ.α - α - h_σ(dα) - d(h_σ(α))``; zero exactly when the identity holds."""
    n = alpha.degree
    return (conj_act(sigma, alpha) - alpha - homotopy_h(sigma, coboundary(alpha))
            - _d_or_zero(_h_or_zero(sigma, alpha), n, alpha))


def homotopy_pair_defect(sigma1, sigma2, alpha):
    """
    ``σ1.h_σ2(α) - h_σ1σ2(α) + h_σ1(α) - H_σ1,σ2(dα) + d(H_σ1,σ2(α))`` for
    α of degree >= 1.
    """
    group = alpha.group
    lhs = (conj_act(sigma1, homotopy_h(sigma2, alpha)) - homotopy_h(group.multiply(sigma1, sigma2), alpha)
           + homotopy_h(sigma1, alpha))
    inner = homotopy_H(sigma1, sigma2, alpha) if alpha.degree >= 2 else None
    return lhs - homotopy_H(sigma1, sigma2, coboundary(alpha)) + _d_or_zero(inner, alpha.degree - 1, alpha)


def _all_cochains(group, degree, modulus, character):
    size = group.order ** degree
    for flat in np.ndindex(*((modulus,) * size)):
        yield Cochain(group, degree, modulus, np.array(flat, dtype=np.int64).reshape((group.order,) * degree),
                      character)


@logging_utils.log_entrance_exit
def check_homotopy_identities(group, modulus, degree, rng=None, samples=None, character=None, exhaustive=False):
    """
    Check both homotopy identities on C^degree for every σ and σ-pair.

    Args:
        group (FiniteGroup): Q.
        modulus (int): N.
        degree (int): n >= 1.
        rng (numpy.random.Generator, optional): Source of random cochains.
        samples (int, optional): Number of random cochains; defaults to
            ``sampling.samples``.
        character (tuple, optional): Unit character of the action.
        exhaustive (bool): Sweep every cochain instead of sampling.

    Returns:
        :class:`CheckReport <dwarith.core.structure.CheckReport>`

    Raises:
        ResourceLimit: An exhaustive sweep over more than
            ``limits.exhaustive_order`` table entries.

    """
    if exhaustive:
        size = group.order ** degree
        if size > CONFIG['limits']['exhaustive_order']:
            raise ResourceLimit('Exhaustive sweep over {} cochain entries exceeds limits.exhaustive_order={}.'.format(
                size, CONFIG['limits']['exhaustive_order']))
        cochains = _all_cochains(group, degree, modulus, character)
    else:
        if rng is None:
            rng = np.random.default_rng(CONFIG['sampling']['seed'])
        count = samples if samples is not None else CONFIG['sampling']['samples']
        cochains = (Cochain.random(group, degree, modulus, rng, character) for _ in range(count))

    checked = 0
    first_h = first_H = None
    failures_h = failures_H = 0
    for alpha in cochains:
        checked += 1
        for sigma in group.elements:
            if not homotopy_defect(sigma, alpha).is_zero:
                failures_h += 1
                first_h = first_h or {'sigma': sigma, 'alpha': alpha.to_entries()}
        for s1 in group.elements:
            for s2 in group.elements:
                if not homotopy_pair_defect(s1, s2, alpha).is_zero:
                    failures_H += 1
                    first_H = first_H or {'sigma': [s1, s2], 'alpha': alpha.to_entries()}

    tag = '[{} N={} n={}{}]'.format(group.label, modulus, degree, ' chi' if character else '')
    report = CheckReport('homotopy' + tag)
    report.check('homotopy_h' + tag, not failures_h, message='{} failures'.format(failures_h) if failures_h else None,
                 content={'cochains': checked, 'first_failure': first_h})
    report.check('homotopy_H' + tag, not failures_H, message='{} failures'.format(failures_H) if failures_H else None,
                 content={'cochains': checked, 'first_failure': first_H})
    return report


def check_cocycle_corollary(alpha):
    """
    For a cocycle α: ``σ.α = α + d(h_σ(α))`` for all σ, and
    ``h_σσ'(α) - h_σ(α) - σ.h_σ'(α)`` is a coboundary for all σ, σ'.

    Returns:
        :class:`CheckReport <dwarith.core.structure.CheckReport>`

    """
    require_cocycle(alpha)
    group = alpha.group
    report = CheckReport('cocycle_corollary')
    bad = [s for s in group.elements
           if conj_act(s, alpha) != alpha + _d_or_zero(_h_or_zero(s, alpha), alpha.degree, alpha)]
    report.check('conjugation_is_coboundary', not bad, message='fails for sigma in {}'.format(bad) if bad else None)
    bad_pairs = []
    if alpha.degree >= 1:
        for s1 in group.elements:
            for s2 in group.elements:
                gap = (homotopy_h(group.multiply(s1, s2), alpha) - homotopy_h(s1, alpha)
                       - conj_act(s1, homotopy_h(s2, alpha)))
                in_b = gap.is_zero if gap.degree == 0 else solve_coboundary(gap) is not None
                if not in_b:
                    bad_pairs.append([s1, s2])
    report.check('h_cocycle_up_to_coboundary', not bad_pairs,
                 message='fails for pairs {}'.format(bad_pairs) if bad_pairs else None)
    return report
