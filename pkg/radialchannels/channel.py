"""Radial (and more generally diagonal) multipliers as concrete maps on ``M_N``.

A multiplier acts on the basis ``s_A`` by ``s_A -> c_A s_A``. Matrix level operations use the column stacking
convention ``vec(x)[i + j N] = x[i, j]`` and the Choi matrix ``J = sum_ij E_ij x T(E_ij)``.
"""
import functools
import logging
import math

import numpy as np

from radialchannels import clifford
from radialchannels.errors import DimensionError, InvalidParameter
from radialchannels.hypercube import (
    POSITIVITY_TOLERANCE, MultiplierSymbol, min_value, tensor_symbols, walsh_synthesize
)

logger = logging.getLogger(__name__)

UNITAL_TOLERANCE = 1e-12
NUMERIC_TOLERANCE = 1e-10

RADIAL = 'radial'
NON_RADIAL = 'diagonal (non-radial)'


@functools.lru_cache(maxsize=None)
def shared_rep(n):
    """Return the Jordan-Wigner representation for `n` generators, built once per process.

    Args:
        n (int): Even number of generators.

    Returns:
        clifford.FermionRep
    """
    return clifford.build_generators(n)


def _realizable(n):
    return n % 2 == 0 and n <= clifford.MAX_MATRIX_N


class MultiplierChannel(object):
    """A multiplier given by its symbol, with its hypercube function and optional matrix realization.

    Attributes:
        kind (str): How the channel was constructed, e.g. ``'dephasing'`` or ``'tensor'``.
    """

    def __init__(self, symbol, rep=None, kind='diagonal'):
        """
        Args:
            symbol (MultiplierSymbol): Coefficients ``c_A``.
            rep (clifford.FermionRep|None): Matrix realization, must have ``rep.n == symbol.n``.
            kind (str): Construction label.
        """
        if rep is not None and rep.n != symbol.n:
            raise DimensionError('Representation has n={} but symbol has n={}.'.format(rep.n, symbol.n))

        self.kind = kind
        self._symbol = symbol
        self._rep = rep

        self._f = walsh_synthesize(symbol)
        """HypercubeFunction: Cached ``f = sum_A c_A w_A``."""

        self._superoperator = None
        """numpy.ndarray|None: Superoperator matrix once computed."""

        logger.debug('Built multiplier channel', extra={'event': 'channel_built', 'kind': kind, 'n': symbol.n})

    @property
    def symbol(self):
        """MultiplierSymbol: Coefficients of the multiplier."""
        return self._symbol

    @property
    def rep(self):
        """clifford.FermionRep|None: Matrix realization if attached."""
        return self._rep

    @property
    def f(self):
        """HypercubeFunction: The symbol function ``sum_A c_A w_A``."""
        return self._f

    @property
    def n(self):
        """int: Number of generators."""
        return self._symbol.n

    @property
    def N(self):
        """int|None: Matrix size, None without matrix realization."""
        return None if self._rep is None else self._rep.N

    @property
    def symbol_kind(self):
        """str: ``'radial'`` or ``'diagonal (non-radial)'``."""
        return RADIAL if self._symbol.is_radial else NON_RADIAL

    def _require_rep(self):
        if self._rep is None:
            raise DimensionError(
                'Channel on n={} generators has no matrix realization.'.format(self.n),
                data={'n': self.n}
            )

        return self._rep

    def apply(self, x):
        """Apply the multiplier to an ``N x N`` matrix.

        Args:
            x (numpy.ndarray): Input matrix.

        Returns:
            numpy.ndarray

        Raises:
            DimensionError: Without matrix realization or for a wrong size.
        """
        rep = self._require_rep()

        return clifford.reconstruct(rep, self._symbol.coeffs * clifford.expand(rep, x))

    def superoperator_matrix(self):
        """Matrix ``S`` with ``vec(T(x)) = S vec(x)`` under column stacking.

        Returns:
            numpy.ndarray: Read-only ``N**2 x N**2`` matrix.
        """
        if self._superoperator is None:
            rep = self._require_rep()
            N = rep.N

            # S = (1/N) sum_A c_A vec(s_A) vec(s_A)^*
            vec_index = np.arange(N)[np.newaxis, :] + rep.columns * N
            weights = (self._symbol.coeffs / N)[:, np.newaxis, np.newaxis]
            values = weights * rep.phases[:, :, np.newaxis] * np.conj(rep.phases)[:, np.newaxis, :]

            superoperator = np.zeros((N * N, N * N), dtype=complex)
            np.add.at(superoperator, (vec_index[:, :, np.newaxis], vec_index[:, np.newaxis, :]), values)
            superoperator.flags.writeable = False
            self._superoperator = superoperator

        return self._superoperator

    def choi_matrix(self):
        """Choi matrix ``J = sum_ij E_ij x T(E_ij)``.

        Returns:
            numpy.ndarray: ``N**2 x N**2`` matrix; ``tr(J) = N`` for trace preserving maps.
        """
        rep = self._require_rep()
        N = rep.N
        rows = np.arange(N)

        # J = (1/N) sum_A c_A conj(s_A) x s_A
        row_index = rows[np.newaxis, :, np.newaxis] * N + rows[np.newaxis, np.newaxis, :]
        row_index = np.broadcast_to(row_index, (2 ** self.n, N, N))
        col_index = rep.columns[:, :, np.newaxis] * N + rep.columns[:, np.newaxis, :]
        weights = (self._symbol.coeffs / N)[:, np.newaxis, np.newaxis]
        values = weights * np.conj(rep.phases)[:, :, np.newaxis] * rep.phases[:, np.newaxis, :]

        choi = np.zeros((N * N, N * N), dtype=complex)
        np.add.at(choi, (row_index, col_index), values)

        return choi

    def apply_on_factor(self, x, dims, factor):
        """Apply the multiplier to one tensor factor of a bipartite operator.

        Args:
            x (numpy.ndarray): Operator on ``C^d0 x C^d1``.
            dims (tuple[int, int]): ``(d0, d1)``.
            factor (int): 0 for ``T x Id``, 1 for ``Id x T``.

        Returns:
            numpy.ndarray
        """
        rep = self._require_rep()
        d0, d1 = dims
        x = np.asarray(x)

        if factor not in (0, 1) or dims[factor] != rep.N:
            raise DimensionError('Factor {} of dims {} does not have size N={}.'.format(factor, dims, rep.N))

        if x.shape != (d0 * d1, d0 * d1):
            raise DimensionError('Expected a {0}x{0} operator, got shape {1}.'.format(d0 * d1, x.shape))

        # S4[p, q, a, c] = S[p + q N, a + c N]
        kernel = self.superoperator_matrix().reshape((rep.N,) * 4, order='F')
        blocks = x.reshape(d0, d1, d0, d1)

        if factor == 0:
            out = np.einsum('pqac,abcd->pbqd', kernel, blocks)
        else:
            out = np.einsum('pqbd,abcd->apcq', kernel, blocks)

        return out.reshape(d0 * d1, d0 * d1)

    def is_unital_trace_preserving(self):
        """Check ``c_(empty) = 1``, which is equivalent to both unitality and trace preservation.

        With a matrix realization ``T(I) = I`` and ``T^*(I) = I`` are confirmed numerically as well.

        Returns:
            bool
        """
        if abs(self._symbol.coeffs[0] - 1.0) > UNITAL_TOLERANCE:
            return False

        if self._rep is None:
            return True

        identity = np.eye(self._rep.N)
        unital = np.allclose(self.apply(identity), identity, rtol=0, atol=NUMERIC_TOLERANCE)
        # trace preserving iff the adjoint is unital
        preserving = np.allclose(adjoint(self).apply(identity), identity, rtol=0, atol=NUMERIC_TOLERANCE)

        return bool(unital and preserving)

    def is_completely_positive(self):
        """Complete positivity through positivity of the symbol function.

        Returns:
            bool: True iff ``f`` is real and ``min f >= -1e-9``.
        """
        if not self._f.is_real:
            logger.debug('Symbol function is not real', extra={'event': 'cp_check', 'n': self.n})
            return False

        lowest = min_value(self._f)

        logger.debug('Checked complete positivity', extra={'event': 'cp_check', 'n': self.n, 'min_f': lowest})

        return lowest >= -POSITIVITY_TOLERANCE

    def is_quantum_channel(self):
        """bool: Completely positive and trace preserving."""
        return self.is_completely_positive() and self.is_unital_trace_preserving()

    def __repr__(self):
        return 'MultiplierChannel(kind={!r}, n={}, {})'.format(self.kind, self.n, self.symbol_kind)


def from_symbol(symbol, kind='diagonal', realize=True):
    """Wrap a symbol into a channel, attaching the matrix realization when ``n`` is even and small enough.

    Args:
        symbol (MultiplierSymbol): Coefficients.
        kind (str): Construction label.
        realize (bool): Attach a matrix realization if possible.

    Returns:
        MultiplierChannel
    """
    rep = shared_rep(symbol.n) if realize and _realizable(symbol.n) else None

    return MultiplierChannel(symbol, rep, kind)


def radial(phi, n=None, realize=True, kind='radial'):
    """Radial multiplier ``s_A -> phi(|A|) s_A``.

    Args:
        phi (Sequence[complex]): ``phi(0..n)``.
        n (int|None): Number of generators, defaults to ``len(phi) - 1``.
        realize (bool): Attach a matrix realization for even `n`.
        kind (str): Construction label.

    Returns:
        MultiplierChannel

    Raises:
        DimensionError: If ``len(phi) != n + 1``.
    """
    return from_symbol(MultiplierSymbol.radial(phi, n), kind, realize)


def dephasing(t):
    """Qubit dephasing channel ``x -> (1 - t) x + t Z x Z`` as the radial multiplier ``phi = (1, 1 - 2t, 1)``.

    Args:
        t (float): Dephasing probability in ``[0, 1]``.

    Returns:
        MultiplierChannel
    """
    if not 0.0 <= t <= 1.0:
        raise InvalidParameter('Dephasing parameter t must be in [0, 1], got {!r}.'.format(t))

    return radial([1.0, 1.0 - 2.0 * t, 1.0], 2, kind='dephasing')


def ou_semigroup(n, t):
    """Fermionic Ornstein-Uhlenbeck semigroup at time `t`, ``phi(k) = exp(-t k)``.

    Args:
        n (int): Number of generators.
        t (float): Time, ``t >= 0``.

    Returns:
        MultiplierChannel
    """
    if not t >= 0.0:
        raise InvalidParameter('Semigroup time t must be >= 0, got {!r}.'.format(t))

    return radial([math.exp(-t * k) for k in range(n + 1)], n, kind='ou')


def identity_channel(n):
    """MultiplierChannel: The identity map, ``phi = 1``."""
    return radial([1.0] * (n + 1), n, kind='identity')


def completely_noisy(n):
    """MultiplierChannel: ``x -> tau(x) I``, ``phi = (1, 0, ..., 0)``."""
    return radial([1.0] + [0.0] * n, n, kind='completely_noisy')


def tensor(first, second):
    """Tensor product of two multipliers, a multiplier on ``n1 + n2`` generators.

    The symbol is ``c_(A u (B + n1)) = c1_A c2_B``, so its function is ``f1 x f2``. It is radial only in special
    cases.

    Args:
        first (MultiplierChannel): Channel on the first ``n1`` generators.
        second (MultiplierChannel): Channel on the last ``n2`` generators.

    Returns:
        MultiplierChannel

    Raises:
        DimensionError: If ``n1 + n2`` exceeds the hypercube limit.
    """
    return from_symbol(tensor_symbols(first.symbol, second.symbol), 'tensor')


def compose(first, second):
    """Composition ``first o second``; symbols multiply pointwise.

    Args:
        first (MultiplierChannel): Applied last.
        second (MultiplierChannel): Applied first.

    Returns:
        MultiplierChannel
    """
    if first.n != second.n:
        raise DimensionError('Cannot compose multipliers on n={} and n={}.'.format(first.n, second.n))

    coeffs = first.symbol.coeffs * second.symbol.coeffs
    radial_origin = None

    if first.symbol.radial_origin is not None and second.symbol.radial_origin is not None:
        radial_origin = first.symbol.radial_origin * second.symbol.radial_origin

    return MultiplierChannel(MultiplierSymbol(first.n, coeffs, radial_origin), first.rep or second.rep, 'composition')


def adjoint(channel):
    """Adjoint for the trace duality, the multiplier with conjugated symbol.

    Args:
        channel (MultiplierChannel): Channel.

    Returns:
        MultiplierChannel
    """
    symbol = channel.symbol
    radial_origin = None if symbol.radial_origin is None else np.conj(symbol.radial_origin)

    return MultiplierChannel(
        MultiplierSymbol(symbol.n, np.conj(symbol.coeffs), radial_origin), channel.rep, 'adjoint'
    )
