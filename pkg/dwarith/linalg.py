"""
Exact linear algebra over Z/N.

An integer matrix is reduced modulo each prime power ``p^e`` dividing N and
brought to Smith form over the local ring Z/p^e by full-pivot elimination:
the pivot is always an entry of minimal p-valuation, so it divides its row
and column. The transforms satisfy ``S·A·T ≡ diag(p^v_1, ..., p^v_r, 0, ...)``
with ``v_1 <= v_2 <= ...``, and agree with the reduction of the integer Smith
form of A. Results for the prime-power parts are recombined by the Chinese
remainder theorem.

"""
import logging

import numpy as np
from sympy import factorint, mod_inverse

logger = logging.getLogger(__name__)


class LocalSmithForm(object):
    """
    Smith form of an integer matrix over Z/p^e.

    Args:
        matrix (numpy.ndarray): Integer matrix.
        prime (int): p.
        exponent (int): e.

    Attributes:
        left (numpy.ndarray): S, invertible mod p^e.
        right (numpy.ndarray): T, invertible mod p^e.
        valuations (list of int): v_i of the nonzero diagonal entries.

    """

    def __init__(self, matrix, prime, exponent):
        self.prime = prime
        self.exponent = exponent
        self.modulus = prime ** exponent
        self.shape = matrix.shape
        self.left, self.right, self.valuations = _eliminate(matrix % self.modulus, prime, exponent)

    @property
    def rank(self):
        """Number of nonzero diagonal entries."""
        return len(self.valuations)

    def solve(self, rhs, rng=None):
        """
        Solve ``A·x ≡ rhs (mod p^e)``.

        With ``rng`` None the solution has minimal coordinates in the
        transformed basis and free coordinates 0. Otherwise every free
        direction of the solution set is filled at random, which samples the
        full solution coset.

        Returns:
            numpy.ndarray or None: A solution, or None if there is none.

        """
        q, p = self.modulus, self.prime
        w = self.left.dot(rhs % q) % q
        r = self.rank
        if w[r:].any():
            return None
        y = np.zeros(self.shape[1], dtype=np.int64)
        for i, v in enumerate(self.valuations):
            pv = p ** v
            if w[i] % pv:
                return None
            span = p ** (self.exponent - v)
            y[i] = (w[i] // pv) % span
            if rng is not None:
                y[i] += span * int(rng.integers(pv))
        if rng is not None and self.shape[1] > r:
            y[r:] = rng.integers(q, size=self.shape[1] - r)
        return self.right.dot(y) % q

    def kernel_generators(self):
        """Generators of ``{x : A·x ≡ 0 (mod p^e)}``."""
        p, e = self.prime, self.exponent
        gens = []
        for i, v in enumerate(self.valuations):
            if v > 0:
                gens.append(self.right[:, i] * p ** (e - v) % self.modulus)
        for i in range(self.rank, self.shape[1]):
            gens.append(self.right[:, i].copy())
        return gens

    def elementary_orders(self):
        """Orders ``p^v`` (v > 0) of the nontrivial diagonal entries."""
        return [self.prime ** v for v in self.valuations if v > 0]


def _valuations(block, prime, exponent):
    val = np.zeros(block.shape, dtype=np.int64)
    for j in range(1, exponent):
        val += (block % prime ** j == 0)
    val[block == 0] = exponent
    return val


def _eliminate(a, prime, exponent):
    q = prime ** exponent
    a = a.astype(np.int64)
    m, n = a.shape
    left = np.eye(m, dtype=np.int64)
    right = np.eye(n, dtype=np.int64)
    valuations = []
    for k in range(min(m, n)):
        block = a[k:, k:]
        if not block.any():
            break
        val = _valuations(block, prime, exponent)
        i, j = np.unravel_index(np.argmin(val), val.shape)
        i, j, v = int(i) + k, int(j) + k, int(val[i, j])
        if i != k:
            a[[k, i]] = a[[i, k]]
            left[[k, i]] = left[[i, k]]
        if j != k:
            a[:, [k, j]] = a[:, [j, k]]
            right[:, [k, j]] = right[:, [j, k]]
        pv = prime ** v
        unit = int(a[k, k]) // pv
        scale = int(mod_inverse(unit, q))
        a[k] = a[k] * scale % q
        left[k] = left[k] * scale % q

        factors = a[k + 1:, k] // pv
        a[k + 1:] = (a[k + 1:] - np.outer(factors, a[k])) % q
        left[k + 1:] = (left[k + 1:] - np.outer(factors, left[k])) % q

        factors = a[k, k + 1:] // pv
        a[:, k + 1:] = (a[:, k + 1:] - np.outer(a[:, k], factors)) % q
        right[:, k + 1:] = (right[:, k + 1:] - np.outer(right[:, k], factors)) % q
        valuations.append(v)
    return left, right, valuations


class ModularSmithForm(object):
    """
    Smith form data of an integer matrix over Z/N, one local part per prime
    power of N.

    Args:
        matrix (numpy.ndarray): Integer matrix, rows = equations.
        modulus (int): N >= 2.

    """

    def __init__(self, matrix, modulus):
        if modulus < 2:
            raise ValueError('Modulus must be at least 2.')
        self.modulus = modulus
        self.shape = matrix.shape
        self.parts = [LocalSmithForm(matrix, p, e) for p, e in sorted(factorint(modulus).items())]
        # idempotents of the CRT decomposition Z/N = prod Z/p^e
        self._idempotents = []
        for part in self.parts:
            cofactor = modulus // part.modulus
            self._idempotents.append(cofactor * int(mod_inverse(cofactor % part.modulus, part.modulus)) % modulus
                                     if part.modulus != modulus else 1)

    def _combine(self, vectors):
        total = np.zeros(self.shape[1], dtype=np.int64)
        for vec, idem in zip(vectors, self._idempotents):
            total = (total + vec * idem) % self.modulus
        return total

    def solve(self, rhs, rng=None):
        """
        Solve ``A·x ≡ rhs (mod N)``.

        Args:
            rhs (numpy.ndarray): Right-hand side.
            rng (numpy.random.Generator, optional): When given, returns a
                random member of the solution coset instead of the
                deterministic one.

        Returns:
            numpy.ndarray or None

        """
        solutions = []
        for part in self.parts:
            x = part.solve(rhs, rng)
            if x is None:
                return None
            solutions.append(x)
        return self._combine(solutions)

    def kernel_generators(self):
        """Generators of the kernel of A over Z/N."""
        gens = []
        for part, idem in zip(self.parts, self._idempotents):
            for vec in part.kernel_generators():
                lifted = vec * idem % self.modulus
                if lifted.any():
                    gens.append(lifted)
        return gens

    def local_ranks(self):
        return [part.rank for part in self.parts]


def invariant_factors(prime_power_orders):
    """
    Invariant factors ``d_1 | d_2 | ...`` of a direct sum of cyclic groups of
    prime-power order.

    Args:
        prime_power_orders (list of int): Orders > 1, each a prime power.

    Returns:
        list of int

    """
    by_prime = {}
    for order in prime_power_orders:
        (p, k), = factorint(order).items()
        by_prime.setdefault(p, []).append(k)
    if not by_prime:
        return []
    for exps in by_prime.values():
        exps.sort(reverse=True)
    length = max(len(exps) for exps in by_prime.values())
    factors = []
    for i in range(length):
        d = 1
        for p, exps in by_prime.items():
            if i < len(exps):
                d *= p ** exps[i]
        factors.append(d)
    return sorted(factors)
