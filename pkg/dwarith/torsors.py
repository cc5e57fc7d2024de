"""
Z/N-torsors of prequantization fibers.

The fiber over a local representation ρ_p is the set of 2-cochains α on
Q_p with ``dα = c∘ρ_p``, taken modulo the kernel of inv_p. Elements are
kept as representatives; two representatives are the same point exactly
when :func:`diff` of them is 0.

"""
import logging

from dwarith.cochains import coboundary, pullback
from dwarith.core.errors import MismatchedFiber, ModelViolation

logger = logging.getLogger(__name__)


class FiberElement(object):
    """
    A point of the fiber over ``rep``.

    Args:
        local (LocalDatum): The prime the fiber belongs to.
        rep (GroupHom): ρ_p : Q_p -> G.
        cochain (Cochain): Degree-2 representative on Q_p.

    """

    def __init__(self, local, rep, cochain):
        if cochain.degree != 2 or cochain.group != local.group:
            raise ValueError('Fiber representatives are 2-cochains on {}.'.format(local.group.label))
        if rep.source != local.group:
            raise ValueError('Representation does not start at {}.'.format(local.group.label))
        self.local = local
        self.rep = rep
        self.cochain = cochain

    def __repr__(self):
        return 'FiberElement({}, {})'.format(self.local.name, self.rep.key)

    def over(self, other):
        """True if both elements sit in the same fiber."""
        return self.local.name == other.local.name and self.rep == other.rep

    def validate(self, cocycle):
        """
        Check ``d(cochain) = c∘rep``.

        Raises:
            ModelViolation: The representative is not in the fiber.

        """
        if coboundary(self.cochain) != pullback(cocycle, self.rep):
            raise ModelViolation('Representative over {} at {} does not solve d(alpha) = c o rho.'.format(
                self.local.name, self.rep.key))
        return self


def diff(s, t):
    """
    ``s - t`` as an element of Z/N: inv_p of the cocycle ``s - t``.

    Raises:
        MismatchedFiber: ``s`` and ``t`` are over different points.

    """
    if not s.over(t):
        raise MismatchedFiber('Cannot subtract elements of different fibers ({} at {} vs {} at {}).'.format(
            s.local.name, s.rep.key, t.local.name, t.rep.key))
    return s.local.inv_value(s.cochain - t.cochain)


def act(t, m):
    """Right action of m ∈ Z/N: add ``m·u_p`` to the representative."""
    return FiberElement(t.local, t.rep, t.cochain + t.local.unit_cocycle * m)


class FiberMap(object):
    """
    A torsor morphism ``α ↦ α + shift`` from the fiber over ``source_rep``
    to the fiber over ``target_rep``.

    Args:
        local (LocalDatum): Prime of both fibers.
        source_rep (GroupHom): Domain point.
        target_rep (GroupHom): Codomain point.
        shift (Cochain): 2-cochain on Q_p.

    """

    def __init__(self, local, source_rep, target_rep, shift):
        self.local = local
        self.source_rep = source_rep
        self.target_rep = target_rep
        self.shift = shift

    def __call__(self, t):
        if t.local.name != self.local.name or t.rep != self.source_rep:
            raise MismatchedFiber('Fiber map from {} at {} applied to {} at {}.'.format(
                self.local.name, self.source_rep.key, t.local.name, t.rep.key))
        return FiberElement(self.local, self.target_rep, t.cochain + self.shift)


def transition_scalar(f, t, t_prime):
    """
    ``λ(f; t, t') = f(t) - t'``.

    Args:
        f (FiberMap): Morphism of fibers.
        t (FiberElement): Point of the source fiber.
        t_prime (FiberElement): Point of the target fiber.

    Returns:
        int

    """
    return diff(f(t), t_prime)
