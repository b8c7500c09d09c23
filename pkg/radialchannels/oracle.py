"""Numerical verifiers computed from matrices alone; `radialchannels.capacity` is only consulted for comparisons.

Entropies here are von Neumann entropies for the ordinary matrix trace, in bits. Optimizers are seeded multi-restart
Nelder-Mead searches; each search also evaluates a few fixed anchor points (for example the maximally mixed state) so
the reported value is never worse than those.
"""
import dataclasses
import logging
import math

import numpy as np
from scipy import linalg, optimize, special

from radialchannels import capacity
from radialchannels.errors import DimensionError, InvalidRequest, InvalidState, NotAQuantumChannel
from radialchannels.hypercube import HypercubeFunction, relative_entropy_to_uniform

logger = logging.getLogger(__name__)

HERMITIAN_TOLERANCE = 1e-12
EIGENVALUE_TOLERANCE = 1e-10
TRACE_TOLERANCE = 1e-10

MAX_NAIVE_N = 14
MAX_OPTIMIZER_N = 16


class DensityOperator(object):
    """Positive semidefinite matrix with unit trace.

    Attributes:
        dim (int): Matrix size.
        matrix (numpy.ndarray): Hermitian matrix (hermitized on construction).
    """

    def __init__(self, matrix):
        """
        Args:
            matrix (numpy.ndarray): Square matrix.

        Raises:
            InvalidState: If the matrix is not Hermitian, not positive semidefinite or has trace other than 1.
        """
        matrix = np.array(matrix, dtype=complex)

        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise InvalidState('Density operator must be a square matrix, got shape {}.'.format(matrix.shape))

        asymmetry = float(np.max(np.abs(matrix - matrix.conj().T)))
        if asymmetry > HERMITIAN_TOLERANCE:
            raise InvalidState('Matrix is not Hermitian (deviation {:.3g}).'.format(asymmetry))

        matrix = (matrix + matrix.conj().T) / 2
        lowest = float(linalg.eigvalsh(matrix)[0])
        if lowest < -EIGENVALUE_TOLERANCE:
            raise InvalidState('Matrix has the negative eigenvalue {:.3g}.'.format(lowest))

        trace = complex(np.trace(matrix))
        if abs(trace - 1.0) > TRACE_TOLERANCE:
            raise InvalidState('Matrix has trace {:.12g} instead of 1.'.format(trace.real))

        self.dim = matrix.shape[0]
        self.matrix = matrix

    @classmethod
    def maximally_mixed(cls, dim):
        """DensityOperator: ``I / dim``."""
        return cls(np.eye(dim) / dim)

    @classmethod
    def from_factor(cls, factor):
        """Build ``A A^* / tr(A A^*)``.

        Args:
            factor (numpy.ndarray): Any nonzero square matrix ``A``.

        Returns:
            DensityOperator
        """
        return cls(_normalized_gram(factor))

    @classmethod
    def pure(cls, vector):
        """DensityOperator: ``|v><v| / <v|v>``."""
        vector = np.asarray(vector, dtype=complex).reshape(-1, 1)

        return cls(_normalized_gram(vector))

    def __repr__(self):
        return 'DensityOperator(dim={})'.format(self.dim)


def _normalized_gram(factor):
    gram = factor @ factor.conj().T
    gram = (gram + gram.conj().T) / 2

    return gram / np.trace(gram).real


def _entropy(matrix):
    hermitian = (matrix + matrix.conj().T) / 2
    eigenvalues = np.clip(linalg.eigvalsh(hermitian), 0.0, None)

    return float(np.sum(special.entr(eigenvalues)) / math.log(2))


def von_neumann_entropy(rho):
    """Von Neumann entropy ``-tr(rho log2 rho)`` with ``0 log 0 = 0``.

    Args:
        rho (DensityOperator): State.

    Returns:
        float: Value in ``[0, log2 dim]``.
    """
    return _entropy(rho.matrix)


def naive_walsh(symbol):
    """Evaluate ``f(eps) = sum_A c_A w_A(eps)`` term by term, ``O(4**n)``.

    Args:
        symbol (MultiplierSymbol): Symbol with ``n <= 14``.

    Returns:
        HypercubeFunction

    Raises:
        DimensionError: If `n` is too large for the quadratic loop.
    """
    n = symbol.n

    if n > MAX_NAIVE_N:
        raise DimensionError('Naive Walsh evaluation is limited to n <= {}, got {}.'.format(MAX_NAIVE_N, n))

    points = np.arange(2 ** n)
    parity = np.zeros(2 ** n, dtype=np.int64)
    for j in range(n):
        parity ^= (points >> j) & 1

    values = np.zeros(2 ** n, dtype=complex)
    for subset in range(2 ** n):
        values += symbol.coeffs[subset] * (1 - 2 * parity[points & subset])

    return HypercubeFunction(n, values)


def _require_rep(channel):
    if channel.rep is None:
        raise DimensionError(
            'Channel on n={} generators has no matrix realization.'.format(channel.n), data={'n': channel.n}
        )

    return channel.rep


def _require_quantum_channel(channel, max_dim=None):
    rep = _require_rep(channel)

    if not (channel.is_completely_positive() and channel.is_unital_trace_preserving()):
        raise NotAQuantumChannel('Oracle needs a completely positive trace preserving multiplier.')

    if max_dim is not None and rep.N > max_dim:
        raise DimensionError('Optimizer oracles are limited to N <= {}, got {}.'.format(max_dim, rep.N))

    return rep


def _choi_eigenvalues(channel):
    choi = channel.choi_matrix()

    if channel.f.is_real:
        return linalg.eigvalsh((choi + choi.conj().T) / 2)

    eigenvalues = linalg.eigvals(choi)

    return eigenvalues[np.lexsort((eigenvalues.imag, eigenvalues.real))]


def choi_spectrum_check(channel, tol=1e-8):
    """Compare the sorted Choi spectrum with the sorted values ``f(eps) / N``.

    Args:
        channel (MultiplierChannel): Channel with matrix realization.
        tol (float): Maximum allowed absolute deviation.

    Returns:
        tuple[bool, dict]: Verdict and a report with the deviation.
    """
    rep = _require_rep(channel)
    observed = _choi_eigenvalues(channel)
    expected = channel.f.values / rep.N

    if channel.f.is_real:
        expected = np.sort(expected.real)
    else:
        expected = expected[np.lexsort((expected.imag, expected.real))]

    deviation = float(np.max(np.abs(observed - expected)))

    return deviation <= tol, {'n': channel.n, 'N': rep.N, 'max_deviation': deviation, 'tolerance': tol}


def cp_check_choi(channel, tol=1e-8):
    """Complete positivity from the Choi matrix: Hermitian and ``min eigenvalue >= -tol``.

    Args:
        channel (MultiplierChannel): Channel with matrix realization.
        tol (float): Tolerance.

    Returns:
        bool
    """
    _require_rep(channel)
    choi = channel.choi_matrix()

    if np.max(np.abs(choi - choi.conj().T)) > tol:
        return False

    return bool(linalg.eigvalsh((choi + choi.conj().T) / 2)[0] >= -tol)


def purify(rho):
    """Purification ``|psi> = sum_i sqrt(lambda_i) |e_i> x |i>`` with the system in the first factor.

    Eigenvectors are sorted by descending eigenvalue and their phase fixed so the first nonzero component is real
    positive.

    Args:
        rho (DensityOperator): State.

    Returns:
        numpy.ndarray: Vector of length ``dim**2``.
    """
    return _purification_matrix(rho.matrix).reshape(-1)


def _purification_matrix(matrix):
    eigenvalues, eigenvectors = linalg.eigh((matrix + matrix.conj().T) / 2)
    order = np.argsort(-eigenvalues, kind='stable')
    eigenvalues = np.clip(eigenvalues[order], 0.0, None)
    eigenvectors = eigenvectors[:, order]

    for i in range(eigenvectors.shape[1]):
        column = eigenvectors[:, i]
        leading = column[np.argmax(np.abs(column) > 1e-12)]
        eigenvectors[:, i] = column * (np.conj(leading) / abs(leading))

    return eigenvectors * np.sqrt(eigenvalues)[np.newaxis, :]


def _extended_output_entropy(channel, amplitudes):
    # amplitudes[a, i] of |psi> = sum psi_ai |a> x |i>; the channel acts on the first factor
    N = channel.rep.N
    vector = amplitudes.reshape(-1, 1)
    state = vector @ vector.conj().T

    return _entropy(channel.apply_on_factor(state, (N, N), 0))


def _mutual_information(channel, matrix):
    return _entropy(matrix) + _entropy(channel.apply(matrix)) - _extended_output_entropy(
        channel, _purification_matrix(matrix)
    )


def _coherent_information(channel, matrix):
    return _entropy(channel.apply(matrix)) - _extended_output_entropy(channel, _purification_matrix(matrix))


def bsst_mutual_information(channel, rho):
    """Quantum mutual information ``H(rho) + H(T(rho)) - H((T x Id)(|psi><psi|))``.

    Args:
        channel (MultiplierChannel): Quantum channel with matrix realization.
        rho (DensityOperator): Input state.

    Returns:
        float
    """
    rep = _require_quantum_channel(channel)
    _check_state(rep, rho)

    return _mutual_information(channel, rho.matrix)


def coherent_information(channel, rho):
    """Coherent information ``H(T(rho)) - H((T x Id)(|psi><psi|))``.

    Args:
        channel (MultiplierChannel): Quantum channel with matrix realization.
        rho (DensityOperator): Input state.

    Returns:
        float
    """
    rep = _require_quantum_channel(channel)
    _check_state(rep, rho)

    return _coherent_information(channel, rho.matrix)


def _check_state(rep, rho):
    if rho.dim != rep.N:
        raise InvalidState('State has dimension {}, channel acts on {}.'.format(rho.dim, rep.N))


@dataclasses.dataclass(frozen=True)
class OptimizerConfig(object):
    """Knobs of the multi-restart searches.

    Attributes:
        seed (int): Seed of the restart generator.
        restarts (int): Number of random restarts, at least 1.
        max_iters (int): Nelder-Mead iterations per restart.
        step_tolerance (float): Nelder-Mead ``xatol`` and ``fatol``.
    """
    seed: int = 0
    restarts: int = 32
    max_iters: int = 2000
    step_tolerance: float = 1e-10

    def __post_init__(self):
        if self.restarts < 1:
            raise InvalidRequest('Optimizer needs at least one restart, got {}.'.format(self.restarts))

        if self.max_iters < 1:
            raise InvalidRequest('Optimizer needs at least one iteration, got {}.'.format(self.max_iters))


def _minimize(objective, anchors, dimension, config, event):
    """Seeded multi-restart minimization; ties go to the earliest candidate (anchors first, then restarts)."""
    best_value = math.inf
    best_point = None
    best_index = None

    for index, point in enumerate(anchors):
        value = objective(point)

        if value < best_value:
            best_value, best_point, best_index = value, point, 'anchor-{}'.format(index)

    for restart, sequence in enumerate(np.random.SeedSequence(config.seed).spawn(config.restarts)):
        start = np.random.default_rng(sequence).standard_normal(dimension)
        result = optimize.minimize(
            objective, start, method='Nelder-Mead',
            options={'maxiter': config.max_iters, 'xatol': config.step_tolerance, 'fatol': config.step_tolerance}
        )
        value = float(result.fun)

        logger.debug(
            'Finished optimizer restart',
            extra={'event': 'optimizer_restart', 'search': event, 'restart': restart, 'value': value}
        )

        if value < best_value:
            best_value, best_point, best_index = value, result.x, 'restart-{}'.format(restart)

    logger.info(
        'Finished optimizer search',
        extra={'event': 'optimizer_done', 'search': event, 'value': best_value, 'best': best_index}
    )

    return best_value, best_point


def _square_factor(point, N):
    return (point[:N * N] + 1j * point[N * N:]).reshape(N, N)


def _state_from_point(point, N):
    factor = _square_factor(point, N)

    if not np.any(factor):
        return None

    return _normalized_gram(factor)


def _point_from_factor(factor):
    flat = np.asarray(factor, dtype=complex).reshape(-1)

    return np.concatenate([flat.real, flat.imag])


def bsst_maximize(channel, config=None):
    """Maximize the quantum mutual information over states ``A A^* / tr(A A^*)``.

    Args:
        channel (MultiplierChannel): Quantum channel with ``N <= 16``.
        config (OptimizerConfig|None): Optimizer settings.

    Returns:
        tuple[float, DensityOperator]: Best value (at least the value at ``I / N``) and the state reaching it.
    """
    config = config or OptimizerConfig()
    N = _require_quantum_channel(channel, MAX_OPTIMIZER_N).N

    def objective(point):
        state = _state_from_point(point, N)

        return math.inf if state is None else -_mutual_information(channel, state)

    value, point = _minimize(objective, [_point_from_factor(np.eye(N))], 2 * N * N, config, 'bsst')

    return -value, DensityOperator(_state_from_point(point, N))


def coherent_information_maximize(channel, config=None):
    """Maximize the coherent information over states ``A A^* / tr(A A^*)``.

    Anchors are ``I / N`` and a pure basis state (value 0).

    Args:
        channel (MultiplierChannel): Quantum channel with ``N <= 16``.
        config (OptimizerConfig|None): Optimizer settings.

    Returns:
        tuple[float, DensityOperator]
    """
    config = config or OptimizerConfig()
    N = _require_quantum_channel(channel, MAX_OPTIMIZER_N).N

    def objective(point):
        state = _state_from_point(point, N)

        return math.inf if state is None else -_coherent_information(channel, state)

    pure = np.zeros((N, N))
    pure[0, 0] = 1.0
    anchors = [_point_from_factor(np.eye(N)), _point_from_factor(pure)]
    value, point = _minimize(objective, anchors, 2 * N * N, config, 'coherent_information')

    return -value, DensityOperator(_state_from_point(point, N))


def min_output_entropy_numeric(channel, config=None):
    """Minimum output entropy ``min H(T(|psi><psi|))`` over unit vectors.

    Restricting to pure inputs loses nothing since the entropy is concave. Computational basis vectors are anchors.

    Args:
        channel (MultiplierChannel): Quantum channel with ``N <= 16``.
        config (OptimizerConfig|None): Optimizer settings.

    Returns:
        float
    """
    config = config or OptimizerConfig()
    N = _require_quantum_channel(channel, MAX_OPTIMIZER_N).N

    def objective(point):
        vector = (point[:N] + 1j * point[N:]).reshape(-1, 1)

        if not np.any(vector):
            return math.inf

        return _entropy(channel.apply(_normalized_gram(vector)))

    anchors = [_point_from_factor(np.eye(N)[i]) for i in range(N)]
    value, _ = _minimize(objective, anchors, 2 * N, config, 'min_output_entropy')

    return value


def cb_min_output_entropy_numeric(channel, config=None):
    """Infimum of ``H((T x Id)(|psi><psi|)) - H(rho)`` over pure states on ``C^N x C^N``, ``rho`` the first marginal.

    The maximally entangled state is an anchor.

    Args:
        channel (MultiplierChannel): Quantum channel with ``N <= 16``.
        config (OptimizerConfig|None): Optimizer settings.

    Returns:
        float
    """
    config = config or OptimizerConfig()
    N = _require_quantum_channel(channel, MAX_OPTIMIZER_N).N

    def objective(point):
        amplitudes = _square_factor(point, N)
        norm = np.linalg.norm(amplitudes)

        if norm == 0:
            return math.inf

        amplitudes = amplitudes / norm

        return _extended_output_entropy(channel, amplitudes) - _entropy(amplitudes @ amplitudes.conj().T)

    value, _ = _minimize(objective, [_point_from_factor(np.eye(N))], 2 * N * N, config, 'cb_min_output_entropy')

    return value


def schur_multiplier_entropy(channel, tol=1e-12):
    """cb minimal output entropy of a Schur multiplier ``x -> C o x``, computed as ``H(C / N) - log2 N``.

    Applies to multipliers whose superoperator is diagonal in the matrix unit basis, such as the dephasing channel.

    Args:
        channel (MultiplierChannel): Quantum channel.
        tol (float): Tolerance for off-diagonal superoperator entries.

    Returns:
        float

    Raises:
        InvalidRequest: If the channel is not a Schur multiplier.
    """
    N = _require_quantum_channel(channel).N
    superoperator = channel.superoperator_matrix()
    diagonal = np.diag(superoperator)

    if np.max(np.abs(superoperator - np.diag(diagonal))) > tol:
        raise InvalidRequest('Channel is not a Schur multiplier in the matrix unit basis.')

    symbol_matrix = diagonal.reshape(N, N, order='F')

    return _entropy(symbol_matrix / N) - math.log2(N)


def relative_entropy_check(channel, tol=1e-10):
    """Compare ``D(f mu || mu)`` from `scipy.stats.entropy` with the closed form entanglement-assisted capacity.

    Args:
        channel (MultiplierChannel): Quantum channel.
        tol (float): Allowed absolute deviation.

    Returns:
        tuple[bool, dict]
    """
    divergence = relative_entropy_to_uniform(channel.f)
    expected = capacity.c_ea(channel)
    deviation = abs(divergence - expected)

    return deviation <= tol, {'relative_entropy': divergence, 'c_ea': expected, 'max_deviation': deviation}
