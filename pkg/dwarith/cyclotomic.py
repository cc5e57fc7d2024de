"""
Exact arithmetic in Q(ζ_N).

Values are kept as ``(coeffs, den)``: an integer vector of length N indexed
by powers of ζ_N, reduced modulo the N-th cyclotomic polynomial (so entries
at positions >= φ(N) are 0), over a positive denominator coprime to the
content of ``coeffs``. Two values are equal exactly when these canonical
forms are.

"""
import functools
import logging

from sympy import QQ, ZZ, Poly, Rational, cyclotomic_poly, igcd, ilcm, invert, totient
from sympy.abc import x

from dwarith.core.errors import ModulusMismatch

logger = logging.getLogger(__name__)


@functools.lru_cache(maxsize=None)
def _phi(modulus):
    return Poly(cyclotomic_poly(modulus, x), x, domain=QQ)


@functools.lru_cache(maxsize=None)
def _reduction_table(modulus):
    # row k: coefficients of x^k mod Φ_N, for 0 <= k <= 2N - 2
    phi = Poly(cyclotomic_poly(modulus, x), x, domain=ZZ)
    table = []
    for k in range(2 * modulus - 1):
        rem = Poly(x ** k, x, domain=ZZ).rem(phi)
        row = [0] * modulus
        for (e,), c in rem.terms():
            row[e] = int(c)
        table.append(tuple(row))
    return tuple(table)


def _reduce(modulus, raw):
    table = _reduction_table(modulus)
    out = [0] * modulus
    for k, c in enumerate(raw):
        if c:
            for i, t in enumerate(table[k]):
                if t:
                    out[i] += c * t
    return out


class CyclotomicValue(object):
    """
    An element of Q(ζ_N) in canonical form.

    Args:
        modulus (int): N >= 1.
        coeffs (sequence of int): Coefficients of ``1, ζ, ζ², ...``; any
            length up to ``2N - 1``.
        den (int): Nonzero denominator.

    """

    def __init__(self, modulus, coeffs, den=1):
        if modulus < 1:
            raise ValueError('Modulus must be positive.')
        coeffs = [int(c) for c in coeffs]
        if len(coeffs) > 2 * modulus - 1:
            raise ValueError('Too many coefficients for N = {}.'.format(modulus))
        den = int(den)
        if den == 0:
            raise ZeroDivisionError('Zero denominator.')
        reduced = _reduce(modulus, coeffs)
        content = 0
        for c in reduced:
            content = igcd(content, c)
        if content == 0:
            reduced, den = [0] * modulus, 1
        else:
            g = igcd(content, den)
            if den < 0:
                g = -g
            reduced = [c // g for c in reduced]
            den //= g
        self.modulus = modulus
        self.coeffs = tuple(reduced)
        self.den = int(den)

    @classmethod
    def zero(cls, modulus):
        return cls(modulus, [])

    @classmethod
    def one(cls, modulus):
        return cls(modulus, [1])

    @classmethod
    def from_rational(cls, modulus, value):
        value = Rational(value)
        return cls(modulus, [value.p], value.q)

    @classmethod
    def zeta_power(cls, modulus, k):
        """``ζ_N^k`` for any integer k."""
        coeffs = [0] * modulus
        coeffs[k % modulus] = 1
        return cls(modulus, coeffs)

    def __repr__(self):
        return 'CyclotomicValue(N={}, {}, den={})'.format(self.modulus, list(self.coeffs), self.den)

    def __str__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                terms.append('{}{}'.format(c, '' if k == 0 else '*z^{}'.format(k)))
        body = ' + '.join(terms) or '0'
        return body if self.den == 1 else '({})/{}'.format(body, self.den)

    def _coerce(self, other):
        if isinstance(other, CyclotomicValue):
            if other.modulus != self.modulus:
                raise ModulusMismatch('Cannot combine values in Q(zeta_{}) and Q(zeta_{}).'.format(
                    self.modulus, other.modulus))
            return other
        return CyclotomicValue.from_rational(self.modulus, other)

    def __eq__(self, other):
        if isinstance(other, CyclotomicValue):
            return (self.modulus, self.coeffs, self.den) == (other.modulus, other.coeffs, other.den)
        try:
            return self == self._coerce(other)
        except (TypeError, ValueError):
            return NotImplemented

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    def __hash__(self):
        return hash((self.modulus, self.coeffs, self.den))

    @property
    def is_zero(self):
        return not any(self.coeffs)

    def __add__(self, other):
        other = self._coerce(other)
        den = ilcm(self.den, other.den)
        a, b = den // self.den, den // other.den
        return CyclotomicValue(self.modulus, [a * s + b * t for s, t in zip(self.coeffs, other.coeffs)], den)

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicValue(self.modulus, [-c for c in self.coeffs], self.den)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        raw = [0] * (2 * self.modulus - 1)
        for i, s in enumerate(self.coeffs):
            if s:
                for j, t in enumerate(other.coeffs):
                    if t:
                        raw[i + j] += s * t
        return CyclotomicValue(self.modulus, raw, self.den * other.den)

    __rmul__ = __mul__

    def scalar(self, value):
        """Multiply by a rational."""
        value = Rational(value)
        return CyclotomicValue(self.modulus, [value.p * c for c in self.coeffs], value.q * self.den)

    def conj(self):
        """Complex conjugate, ``ζ ↦ ζ⁻¹``."""
        raw = [0] * self.modulus
        for k, c in enumerate(self.coeffs):
            raw[(-k) % self.modulus] += c
        return CyclotomicValue(self.modulus, raw, self.den)

    def to_poly(self):
        return Poly([Rational(c, self.den) for c in reversed(self.coeffs)], x, domain=QQ)

    def inverse(self):
        """
        Multiplicative inverse through polynomial inversion modulo Φ_N.

        Raises:
            ZeroDivisionError: The value is 0.

        """
        if self.is_zero:
            raise ZeroDivisionError('0 has no inverse in Q(zeta_{}).'.format(self.modulus))
        inv = invert(self.to_poly(), _phi(self.modulus))
        terms = [Rational(c) for c in reversed(Poly(inv, x, domain=QQ).all_coeffs())]
        den = 1
        for t in terms:
            den = ilcm(den, t.q)
        return CyclotomicValue(self.modulus, [int(t * den) for t in terms], den)

    def __truediv__(self, other):
        other = self._coerce(other)
        return self * other.inverse()

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        result = CyclotomicValue.one(self.modulus)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def to_json(self):
        return {'coeffs': list(self.coeffs), 'den': self.den}


def zeta(modulus, k):
    """Shorthand for :meth:`CyclotomicValue.zeta_power`."""
    return CyclotomicValue.zeta_power(modulus, k)


def degree(modulus):
    """``[Q(ζ_N):Q] = φ(N)``."""
    return int(totient(modulus))


def cyclotomic_rank(rows, modulus):
    """
    Rank of a matrix over Q(ζ_N) by exact Gaussian elimination.

    Args:
        rows (list of list): Entries are CyclotomicValue or rationals.
        modulus (int): N.

    Returns:
        int

    """
    matrix = [[v if isinstance(v, CyclotomicValue) else CyclotomicValue.from_rational(modulus, v)
               for v in row] for row in rows]
    if not matrix:
        return 0
    n_cols = len(matrix[0])
    rank = 0
    for col in range(n_cols):
        pivot = None
        for i in range(rank, len(matrix)):
            if not matrix[i][col].is_zero:
                pivot = i
                break
        if pivot is None:
            continue
        matrix[rank], matrix[pivot] = matrix[pivot], matrix[rank]
        inv = matrix[rank][col].inverse()
        matrix[rank] = [v * inv for v in matrix[rank]]
        for i in range(len(matrix)):
            if i != rank and not matrix[i][col].is_zero:
                factor = matrix[i][col]
                matrix[i] = [a - factor * b for a, b in zip(matrix[i], matrix[rank])]
        rank += 1
        if rank == len(matrix):
            break
    return rank
