"""Walsh-Fourier analysis on the discrete hypercube.

Points of the hypercube and subsets of ``{1..n}`` are both encoded as bitmasks. For a subset ``A`` bit ``j - 1`` marks
element ``j``; for a point ``eps`` a set bit ``j - 1`` means ``eps_j = -1``. With this encoding the Walsh function is
``w_A(eps) = (-1) ** popcount(A & eps)`` and synthesis is the plain unnormalized Walsh-Hadamard transform.

Synthesis (symbol -> function) is unnormalized, analysis (function -> symbol) carries the ``1 / 2**n`` factor.
"""
import logging
import math

import numpy as np
from scipy import special, stats

from radialchannels.errors import DimensionError, InvalidParameter, NotAQuantumChannel

logger = logging.getLogger(__name__)

MIN_N = 2
MAX_N = 24

POSITIVITY_TOLERANCE = 1e-9
MEAN_TOLERANCE = 1e-9
REAL_TOLERANCE = 1e-12


def popcount(masks):
    """Count set bits of a bitmask or an integer array of bitmasks.

    Args:
        masks (int|numpy.ndarray): Non-negative bitmask(s).

    Returns:
        numpy.ndarray: Bit counts, same shape as `masks`.
    """
    masks = np.array(masks, dtype=np.int64)
    count = np.zeros(masks.shape, dtype=np.int64)

    while masks.any():
        count += masks & 1
        masks >>= 1

    return count


def _check_n(n):
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool):
        raise DimensionError('Dimension n must be an integer, got {!r}.'.format(n))

    if not MIN_N <= n <= MAX_N:
        raise DimensionError('Dimension n must be between {} and {}, got {}.'.format(MIN_N, MAX_N, n))

    return int(n)


def _frozen(values, n, what):
    array = np.array(values, dtype=complex).reshape(-1)

    if array.shape[0] != 2 ** n:
        raise DimensionError(
            'Expected {} {} for n={}, got {}.'.format(2 ** n, what, n, array.shape[0]),
            data={'n': n, 'length': array.shape[0]}
        )

    array.flags.writeable = False

    return array


class MultiplierSymbol(object):
    """Coefficients ``c_A`` of a multiplier, one per subset ``A`` of ``{1..n}``.

    The same symbol defines the multiplier on Walsh functions (``w_A -> c_A w_A``) and on the fermion algebra
    (``s_A -> c_A s_A``). Radial symbols have ``c_A = phi(|A|)``.
    """

    def __init__(self, n, coeffs, radial_origin=None):
        """
        Args:
            n (int): Dimension of the hypercube.
            coeffs (Sequence[complex]): Coefficient per subset bitmask, length ``2**n``.
            radial_origin (Sequence[complex]|None): ``phi(0..n)`` when the symbol was built radially.

        Raises:
            DimensionError: If lengths do not match `n` or `coeffs` disagrees with `radial_origin`.
        """
        self._n = _check_n(n)
        self._coeffs = _frozen(coeffs, self._n, 'coefficients')
        self._radial_origin = None

        if radial_origin is not None:
            phi = np.array(radial_origin, dtype=complex).reshape(-1)

            if phi.shape[0] != self._n + 1:
                raise DimensionError('Radial profile must have n + 1 = {} values, got {}.'.format(
                    self._n + 1, phi.shape[0]))

            if not np.allclose(self._coeffs, phi[popcount(np.arange(2 ** self._n))], rtol=0, atol=REAL_TOLERANCE):
                raise DimensionError('Coefficients are not given by the radial profile.')

            phi.flags.writeable = False
            self._radial_origin = phi

    @classmethod
    def radial(cls, phi, n=None):
        """Build the radial symbol ``c_A = phi(|A|)``.

        Args:
            phi (Sequence[complex]): Values ``phi(0), ..., phi(n)``.
            n (int|None): Dimension, defaults to ``len(phi) - 1``.

        Returns:
            MultiplierSymbol
        """
        phi = np.array(phi, dtype=complex).reshape(-1)

        if n is None:
            n = phi.shape[0] - 1

        n = _check_n(n)

        if phi.shape[0] != n + 1:
            raise DimensionError('Radial profile for n={} must have {} values, got {}.'.format(n, n + 1, phi.shape[0]))

        return cls(n, phi[popcount(np.arange(2 ** n))], radial_origin=phi)

    @property
    def n(self):
        """int: Dimension of the hypercube."""
        return self._n

    @property
    def coeffs(self):
        """numpy.ndarray: Read-only complex coefficients indexed by subset bitmask."""
        return self._coeffs

    @property
    def radial_origin(self):
        """numpy.ndarray|None: ``phi(0..n)`` if the symbol was constructed radially."""
        return self._radial_origin

    @property
    def is_real(self):
        """bool: True if all coefficients are real within the real-valuedness tolerance."""
        return bool(np.all(np.abs(self._coeffs.imag) <= REAL_TOLERANCE))

    @property
    def is_radial(self):
        """bool: True if coefficients only depend on the cardinality of the subset."""
        return self.radial_profile() is not None

    def radial_profile(self):
        """Return ``phi(0..n)`` if the symbol is radial.

        Returns:
            numpy.ndarray|None: The radial profile, or None for symbols depending on more than ``|A|``.
        """
        if self._radial_origin is not None:
            return self._radial_origin

        levels = popcount(np.arange(2 ** self._n))
        phi = np.zeros(self._n + 1, dtype=complex)

        for k in range(self._n + 1):
            level = self._coeffs[levels == k]

            if not np.allclose(level, level[0], rtol=0, atol=REAL_TOLERANCE):
                return None

            phi[k] = level[0]

        return phi

    def __repr__(self):
        if self._radial_origin is not None:
            return 'MultiplierSymbol.radial({!r})'.format(self._radial_origin.tolist())

        return 'MultiplierSymbol(n={}, coeffs=<{} values>)'.format(self._n, self._coeffs.shape[0])


class HypercubeFunction(object):
    """Values of a function on ``{-1, 1}**n`` indexed by point bitmask."""

    def __init__(self, n, values):
        """
        Args:
            n (int): Dimension of the hypercube.
            values (Sequence[complex]): Value per point bitmask, length ``2**n``.

        Raises:
            DimensionError: If the number of values is not ``2**n``.
        """
        self._n = _check_n(n)
        self._values = _frozen(values, self._n, 'values')

    @property
    def n(self):
        """int: Dimension of the hypercube."""
        return self._n

    @property
    def values(self):
        """numpy.ndarray: Read-only complex values indexed by point bitmask."""
        return self._values

    @property
    def is_real(self):
        """bool: True if imaginary parts are below the real-valuedness tolerance."""
        return bool(np.all(np.abs(self._values.imag) <= REAL_TOLERANCE))

    def real_values(self):
        """Return the values as a real array.

        Raises:
            InvalidParameter: If the function is not real valued.
        """
        if not self.is_real:
            raise InvalidParameter(
                'Function is not real valued (max imaginary part {:.3g}).'.format(np.max(np.abs(self._values.imag)))
            )

        return self._values.real

    def mean(self):
        """complex: Integral against the uniform probability measure."""
        return complex(np.mean(self._values))

    def __repr__(self):
        return 'HypercubeFunction(n={}, values=<{} values>)'.format(self._n, self._values.shape[0])


def fwht(values):
    """Unnormalized fast Walsh-Hadamard transform.

    Runs ``log2(len(values))`` butterfly stages on a private copy, so the input is left untouched.

    Args:
        values (Sequence[complex]): Vector of length ``2**n``.

    Returns:
        numpy.ndarray: ``out[e] = sum_A values[A] * (-1) ** popcount(A & e)``.
    """
    out = np.array(values, dtype=complex).reshape(-1)
    size = out.shape[0]

    if size & (size - 1):
        raise DimensionError('Walsh-Hadamard transform needs a power of two length, got {}.'.format(size))

    h = 1
    while h < size:
        butterfly = out.reshape(-1, 2, h)
        low = butterfly[:, 0, :]
        high = butterfly[:, 1, :]
        diff = low - high
        low += high
        high[...] = diff
        h *= 2

    return out


def walsh_synthesize(symbol):
    """Synthesize ``f = sum_A c_A w_A`` from a multiplier symbol.

    Args:
        symbol (MultiplierSymbol): Symbol to synthesize.

    Returns:
        HypercubeFunction
    """
    logger.debug('Synthesizing Walsh expansion', extra={'event': 'walsh_synthesize', 'n': symbol.n})

    return HypercubeFunction(symbol.n, fwht(symbol.coeffs))


def walsh_analyze(f):
    """Compute Walsh coefficients ``c_A = 2**-n sum_eps w_A(eps) f(eps)``, the inverse of `walsh_synthesize`.

    Args:
        f (HypercubeFunction): Function to analyze.

    Returns:
        MultiplierSymbol
    """
    return MultiplierSymbol(f.n, fwht(f.values) / 2 ** f.n)


def walsh_values(subset, n):
    """Return the Walsh function ``w_A`` on every point, in bitmask order.

    Args:
        subset (int): Bitmask of ``A``.
        n (int): Dimension.

    Returns:
        numpy.ndarray: Real vector of ``+-1``.
    """
    if not 0 <= subset < 2 ** n:
        raise DimensionError('Subset bitmask {} out of range for n={}.'.format(subset, n))

    return 1.0 - 2.0 * (popcount(np.arange(2 ** n) & subset) & 1)


def point_signs(mask, n):
    """Return the sign vector ``(eps_1, ..., eps_n)`` of a point bitmask.

    Args:
        mask (int): Point bitmask.
        n (int): Dimension.

    Returns:
        tuple[int]
    """
    if not 0 <= mask < 2 ** n:
        raise DimensionError('Point bitmask {} out of range for n={}.'.format(mask, n))

    return tuple(-1 if mask >> j & 1 else 1 for j in range(n))


def lp_norm(f, p):
    """Normalized ``L^p`` norm ``(2**-n sum_eps |f(eps)|**p) ** (1/p)``; the maximum modulus for ``p = inf``.

    Args:
        f (HypercubeFunction): Function.
        p (float): Exponent, ``p >= 1`` or ``math.inf``.

    Returns:
        float

    Raises:
        InvalidParameter: If ``p < 1``.
    """
    if not p >= 1:
        raise InvalidParameter('Exponent p must be >= 1, got {!r}.'.format(p))

    return power_mean(np.abs(f.values), p)


def power_mean(moduli, p):
    """Normalized power mean ``(mean(moduli ** p)) ** (1/p)``, the maximum for ``p = inf``.

    Args:
        moduli (numpy.ndarray): Nonnegative values.
        p (float): Exponent.

    Returns:
        float
    """
    top = float(np.max(moduli))

    if math.isinf(p) or top == 0.0:
        return top

    # scaled by the maximum so large p does not overflow
    return top * float(np.mean((moduli / top) ** p)) ** (1.0 / p)


def segal_entropy(f):
    """Segal entropy ``H(f) = -2**-n sum_eps f(eps) log2 f(eps)`` with ``0 log 0 = 0``.

    Args:
        f (HypercubeFunction): Density of a probability measure with respect to the uniform one.

    Returns:
        float: Value in ``[-n, 0]``.

    Raises:
        NotAQuantumChannel: If `f` is not real, not nonnegative, or does not have mean 1.
    """
    values = channel_density(f)

    return float(np.mean(special.entr(values)) / math.log(2))


def channel_density(f):
    """Validate `f` as the symbol function of a quantum channel and return its values.

    Args:
        f (HypercubeFunction): Candidate density.

    Returns:
        numpy.ndarray: Real values, tiny negative rounding clipped to 0.

    Raises:
        NotAQuantumChannel: If `f` is not real, not nonnegative, or does not have mean 1.
    """
    if not f.is_real:
        raise NotAQuantumChannel('Symbol function is not real valued.')

    values = f.values.real
    lowest = float(np.min(values))

    if lowest < -POSITIVITY_TOLERANCE:
        raise NotAQuantumChannel(
            'Symbol function takes the negative value {:.6g}.'.format(lowest),
            data={'min_value': lowest}
        )

    mean = float(np.mean(values))

    if abs(mean - 1.0) > MEAN_TOLERANCE:
        raise NotAQuantumChannel(
            'Symbol function has mean {:.12g} instead of 1.'.format(mean),
            data={'mean': mean}
        )

    return np.clip(values, 0.0, None)


def relative_entropy_to_uniform(f):
    """Relative entropy ``D(f mu || mu)`` in bits of the measure with density `f` against the uniform measure.

    Args:
        f (HypercubeFunction): Density with mean 1.

    Returns:
        float: Equal to ``-segal_entropy(f)``.
    """
    values = channel_density(f)
    uniform = np.full(values.shape, 1.0 / values.shape[0])

    return float(stats.entropy(values / values.shape[0], uniform, base=2))


def min_value(f):
    """Minimum of a real valued hypercube function.

    Args:
        f (HypercubeFunction): Real valued function.

    Returns:
        float

    Raises:
        InvalidParameter: If `f` is not real valued.
    """
    return float(np.min(f.real_values()))


def tensor_functions(f, g):
    """Tensor product ``(f x g)(eps, delta) = f(eps) g(delta)``, `f` on the low bits of the point bitmask.

    Args:
        f (HypercubeFunction): Function on the first ``n1`` coordinates.
        g (HypercubeFunction): Function on the last ``n2`` coordinates.

    Returns:
        HypercubeFunction
    """
    return HypercubeFunction(f.n + g.n, np.kron(g.values, f.values))


def tensor_symbols(first, second):
    """Symbol of a tensor product, ``c_(A u (B + n1)) = c1_A c2_B``.

    Args:
        first (MultiplierSymbol): Symbol on ``{1..n1}``.
        second (MultiplierSymbol): Symbol on ``{1..n2}``.

    Returns:
        MultiplierSymbol
    """
    return MultiplierSymbol(first.n + second.n, np.kron(second.coeffs, first.coeffs))
