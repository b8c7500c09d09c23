"""Finite-dimensional fermion algebras realized on ``C^N`` through the Jordan-Wigner construction.

For ``n = 2k`` generators the algebra is the full matrix algebra ``M_N`` with ``N = 2**k``. Every ordered product
``s_A`` is a Pauli string up to a phase, hence a monomial matrix: one nonzero entry per row. The representation keeps
all ``2**n`` basis elements in that compressed form (column index and phase per row), which makes basis expansion,
reconstruction and Choi matrices gather/scatter operations instead of dense products.
"""
import functools
import logging

import numpy as np
from scipy import linalg

from radialchannels.errors import DimensionError, InvalidParameter
from radialchannels.hypercube import power_mean

logger = logging.getLogger(__name__)

MAX_MATRIX_N = 12

PAULI_I = np.eye(2, dtype=complex)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)


def _bitcount(mask):
    return bin(mask).count('1')


class FermionRep(object):
    """Generators ``s_1..s_n`` of the fermion algebra as ``N x N`` matrices, with all basis elements ``s_A``.

    Attributes:
        n (int): Number of generators.
        N (int): Matrix size ``2 ** (n / 2)``.
    """

    def __init__(self, n, generators):
        """
        Args:
            n (int): Number of generators.
            generators (Sequence[numpy.ndarray]): Monomial ``N x N`` matrices ``s_1..s_n``.
        """
        if len(generators) != n:
            raise DimensionError('Expected {} generators, got {}.'.format(n, len(generators)))

        self.n = n
        self.N = generators[0].shape[0]

        frozen = []
        for generator in generators:
            generator = np.array(generator, dtype=complex)
            generator.flags.writeable = False
            frozen.append(generator)

        self._generators = tuple(frozen)

        self._columns, self._phases = self._monomial_tables()
        self._columns.flags.writeable = False
        self._phases.flags.writeable = False

    def _monomial_tables(self):
        rows = np.arange(self.N)
        size = 2 ** self.n

        columns = np.empty((size, self.N), dtype=np.int64)
        phases = np.empty((size, self.N), dtype=complex)
        columns[0] = rows
        phases[0] = 1.0

        generator_columns = [np.argmax(np.abs(s), axis=1) for s in self._generators]
        generator_phases = [s[rows, c] for s, c in zip(self._generators, generator_columns)]

        for subset in range(1, size):
            # s_A = s_(A without max) s_max, so the product stays in ascending order
            top = subset.bit_length() - 1
            rest = subset ^ (1 << top)
            columns[subset] = generator_columns[top][columns[rest]]
            phases[subset] = phases[rest] * generator_phases[top][columns[rest]]

        return columns, phases

    @property
    def generators(self):
        """tuple[numpy.ndarray]: Read-only matrices ``s_1..s_n``."""
        return self._generators

    @property
    def columns(self):
        """numpy.ndarray: ``columns[A, r]`` is the column of the nonzero entry of row ``r`` of ``s_A``."""
        return self._columns

    @property
    def phases(self):
        """numpy.ndarray: ``phases[A, r]`` is the nonzero entry of row ``r`` of ``s_A``."""
        return self._phases

    def __repr__(self):
        return 'FermionRep(n={}, N={})'.format(self.n, self.N)


def build_generators(n):
    """Build the Jordan-Wigner generators for an even number of generators.

    ``s_(2m-1) = Z x .. x Z x X x I x .. x I`` and ``s_(2m) = Z x .. x Z x Y x I x .. x I`` with ``m - 1`` leading
    ``Z`` factors. For ``n = 2`` this gives ``s_1 = X`` and ``s_2 = Y``.

    Args:
        n (int): Even number of generators, ``2 <= n <= 12``.

    Returns:
        FermionRep

    Raises:
        DimensionError: If `n` is odd or out of range.
    """
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool):
        raise DimensionError('Number of generators must be an integer, got {!r}.'.format(n))

    if n % 2:
        raise DimensionError('Odd-dimension matrix realization unsupported (n={}).'.format(n), data={'n': n})

    if not 2 <= n <= MAX_MATRIX_N:
        raise DimensionError('Matrix realization needs 2 <= n <= {}, got {}.'.format(MAX_MATRIX_N, n))

    k = n // 2
    generators = []

    for m in range(1, k + 1):
        for pauli in (PAULI_X, PAULI_Y):
            factors = [PAULI_Z] * (m - 1) + [pauli] + [PAULI_I] * (k - m)
            generators.append(functools.reduce(np.kron, factors))

    rep = FermionRep(int(n), generators)

    logger.debug('Built Jordan-Wigner generators', extra={'event': 'generators_built', 'n': rep.n, 'N': rep.N})

    return rep


def _check_subset(rep, subset):
    if not 0 <= subset < 2 ** rep.n:
        raise DimensionError('Subset bitmask {} out of range for n={}.'.format(subset, rep.n))


def _check_matrix(rep, x):
    x = np.asarray(x)

    if x.shape != (rep.N, rep.N):
        raise DimensionError('Expected a {0}x{0} matrix, got shape {1}.'.format(rep.N, x.shape))

    return x


def basis_element(rep, subset):
    """Return the ordered product ``s_A = s_(i_1) ... s_(i_k)`` with ``i_1 < ... < i_k``; ``s_(empty) = I``.

    Args:
        rep (FermionRep): Representation.
        subset (int): Bitmask of ``A``.

    Returns:
        numpy.ndarray: Dense ``N x N`` matrix.
    """
    _check_subset(rep, subset)

    out = np.zeros((rep.N, rep.N), dtype=complex)
    out[np.arange(rep.N), rep.columns[subset]] = rep.phases[subset]

    return out


def expand(rep, x):
    """Coefficients ``lambda_A = tr(s_A^* x) / N`` of a matrix in the orthonormal basis ``s_A``.

    Args:
        rep (FermionRep): Representation.
        x (numpy.ndarray): ``N x N`` matrix.

    Returns:
        numpy.ndarray: Complex vector of length ``2**n`` indexed by subset bitmask.
    """
    x = _check_matrix(rep, x)
    gathered = x[np.arange(rep.N)[np.newaxis, :], rep.columns]

    return np.sum(np.conj(rep.phases) * gathered, axis=1) / rep.N


def reconstruct(rep, coeffs):
    """Inverse of `expand`: ``sum_A lambda_A s_A``.

    Args:
        rep (FermionRep): Representation.
        coeffs (Sequence[complex]): Coefficient per subset bitmask.

    Returns:
        numpy.ndarray: Dense ``N x N`` matrix.
    """
    coeffs = np.asarray(coeffs, dtype=complex).reshape(-1)

    if coeffs.shape[0] != 2 ** rep.n:
        raise DimensionError('Expected {} coefficients, got {}.'.format(2 ** rep.n, coeffs.shape[0]))

    out = np.zeros((rep.N, rep.N), dtype=complex)
    rows = np.broadcast_to(np.arange(rep.N), rep.columns.shape)
    np.add.at(out, (rows, rep.columns), coeffs[:, np.newaxis] * rep.phases)

    return out


def product_sign(a, b):
    """Sign in ``s_A s_B = sign * s_(A xor B)``.

    The sign is ``(-1) ** m`` with ``m`` the number of pairs ``(i, j)`` in ``A x B`` with ``i > j``: each such pair
    costs one anticommutation while merging the two ordered products.

    Args:
        a (int): Bitmask of ``A``.
        b (int): Bitmask of ``B``.

    Returns:
        int: ``+1`` or ``-1``.
    """
    if a < 0 or b < 0:
        raise DimensionError('Subset bitmasks must be non-negative.')

    swaps = 0

    while b:
        lowest = b & -b
        swaps += _bitcount(a & ~((lowest << 1) - 1))
        b ^= lowest

    return -1 if swaps & 1 else 1


def adjoint_sign(a):
    """Sign in ``(s_A)^* = sign * s_A``, that is ``(-1) ** (|A| (|A| - 1) / 2)``.

    Args:
        a (int): Bitmask of ``A``.

    Returns:
        int: ``+1`` or ``-1``.
    """
    if a < 0:
        raise DimensionError('Subset bitmask must be non-negative.')

    k = _bitcount(a)

    return -1 if (k * (k - 1) // 2) & 1 else 1


def normalized_trace(x):
    """complex: ``tr(x) / N``."""
    return complex(np.trace(x)) / x.shape[0]


def lp_norm_tau(rep, x, p):
    """Schatten-type norm ``(tr(|x| ** p) / N) ** (1/p)`` for the normalized trace; operator norm for ``p = inf``.

    Args:
        rep (FermionRep): Representation.
        x (numpy.ndarray): ``N x N`` matrix.
        p (float): Exponent, ``p >= 1`` or ``math.inf``.

    Returns:
        float

    Raises:
        InvalidParameter: If ``p < 1``.
    """
    if not p >= 1:
        raise InvalidParameter('Exponent p must be >= 1, got {!r}.'.format(p))

    x = _check_matrix(rep, x)

    return power_mean(linalg.svdvals(x), p)
