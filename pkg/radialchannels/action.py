"""Matrix realizations of the hypercube action on the fermion algebra and checks of its algebraic identities.

Functions on the hypercube are realized as diagonal ``2**n x 2**n`` matrices in point bitmask order. With
``M = 2**n`` the maps are

* ``alpha: M_N -> M_N x L^inf``, ``s_A -> s_A x w_A``,
* ``beta: M_N -> L^inf x M_N``, ``s_A -> w_A x s_A`` (``alpha`` followed by the tensor flip),
* ``eta: L^inf -> M_N x M_N``, ``w_A -> s_A x s_A``,

and the coproduct ``Delta(g)(u, v) = g(u v)``, the product of sign vectors being the XOR of bitmasks.

Every ``*_deviation`` function returns the largest absolute violation of its identity; ``verify_*`` compares it with
a tolerance. Maps can be swapped for other implementations, which is how the checks are shown to be sensitive.
"""
import logging

import numpy as np
from scipy import linalg, sparse

from radialchannels import clifford
from radialchannels.errors import DimensionError
from radialchannels.hypercube import HypercubeFunction, fwht, walsh_analyze, walsh_values

logger = logging.getLogger(__name__)

IDENTITY_TOLERANCE = 1e-12
MAX_TENSOR_N = 4
MAX_LINEAR_N = 6


class DiagonalFunctionRep(object):
    """Realization of functions on the hypercube as diagonal matrices; a *-homomorphism."""

    def __init__(self, n):
        """
        Args:
            n (int): Dimension of the hypercube.
        """
        self.n = n
        self.size = 2 ** n

    def matrix(self, f):
        """Return ``diag(f(eps))``.

        Args:
            f (HypercubeFunction|numpy.ndarray): Function or its values.

        Returns:
            numpy.ndarray
        """
        values = f.values if isinstance(f, HypercubeFunction) else np.asarray(f)

        if values.shape != (self.size,):
            raise DimensionError('Expected {} values, got shape {}.'.format(self.size, values.shape))

        return np.diag(values.astype(complex))

    def function(self, matrix):
        """HypercubeFunction: Function read off the diagonal of `matrix`."""
        return HypercubeFunction(self.n, np.diag(matrix))

    def walsh(self, subset):
        """numpy.ndarray: ``diag(w_A)``."""
        return self.matrix(walsh_values(subset, self.n))

    def coproduct(self, matrix):
        """Coproduct ``Delta(diag(g)) = diag(g(u xor v))`` on ``L^inf x L^inf``, index ``u * 2**n + v``.

        Args:
            matrix (numpy.ndarray): Diagonal matrix.

        Returns:
            numpy.ndarray
        """
        points = np.arange(self.size)
        values = np.diag(matrix)

        return np.diag(values[points[:, np.newaxis] ^ points[np.newaxis, :]].reshape(-1))


def _check_rep(rep, max_n):
    if rep.n > max_n:
        raise DimensionError('Verification is limited to n <= {}, got {}.'.format(max_n, rep.n))


def swap_factors(x, dims):
    """Tensor flip: the operator on ``C^d1 x C^d0`` corresponding to `x` on ``C^d0 x C^d1``.

    Args:
        x (numpy.ndarray): Operator on ``C^d0 x C^d1``.
        dims (tuple[int, int]): ``(d0, d1)``.

    Returns:
        numpy.ndarray
    """
    d0, d1 = dims

    return np.asarray(x).reshape(d0, d1, d0, d1).transpose(1, 0, 3, 2).reshape(d0 * d1, d0 * d1)


def alpha(rep, x):
    """Action ``alpha(x) = sum_A lambda_A s_A x diag(w_A)`` for ``x = sum_A lambda_A s_A``.

    Args:
        rep (clifford.FermionRep): Representation.
        x (numpy.ndarray): ``N x N`` matrix.

    Returns:
        numpy.ndarray: ``N 2**n x N 2**n`` matrix.
    """
    coeffs = clifford.expand(rep, x)
    out = np.zeros((rep.N * 2 ** rep.n,) * 2, dtype=complex)

    for subset in np.flatnonzero(coeffs):
        out += coeffs[subset] * np.kron(clifford.basis_element(rep, subset), np.diag(walsh_values(subset, rep.n)))

    return out


def beta(rep, x):
    """Flipped action ``beta(x) = sum_A lambda_A diag(w_A) x s_A``.

    Args:
        rep (clifford.FermionRep): Representation.
        x (numpy.ndarray): ``N x N`` matrix.

    Returns:
        numpy.ndarray: ``2**n N x 2**n N`` matrix.
    """
    coeffs = clifford.expand(rep, x)
    out = np.zeros((rep.N * 2 ** rep.n,) * 2, dtype=complex)

    for subset in np.flatnonzero(coeffs):
        out += coeffs[subset] * np.kron(np.diag(walsh_values(subset, rep.n)), clifford.basis_element(rep, subset))

    return out


def eta(rep, f):
    """Embedding ``eta(f) = sum_A c_A s_A x s_A`` with ``c = walsh_analyze(f)``.

    Args:
        rep (clifford.FermionRep): Representation.
        f (HypercubeFunction): Function on the hypercube of dimension ``rep.n``.

    Returns:
        numpy.ndarray: ``N**2 x N**2`` matrix.
    """
    if f.n != rep.n:
        raise DimensionError('Function has n={} but representation has n={}.'.format(f.n, rep.n))

    coeffs = walsh_analyze(f).coeffs
    out = np.zeros((rep.N ** 2,) * 2, dtype=complex)

    for subset in np.flatnonzero(np.abs(coeffs) > 0):
        element = clifford.basis_element(rep, subset)
        out += coeffs[subset] * np.kron(element, element)

    return out


def group_average(rep, y):
    """Average of the slices ``(Id x integral)(y) = 2**-n sum_eps y[eps, eps]`` for ``y`` in ``M_N x L^inf``.

    Args:
        rep (clifford.FermionRep): Representation.
        y (numpy.ndarray): ``N 2**n x N 2**n`` matrix.

    Returns:
        numpy.ndarray: ``N x N`` matrix.
    """
    size = 2 ** rep.n
    blocks = np.asarray(y).reshape(rep.N, size, rep.N, size)

    return np.einsum('aubu->ab', blocks) / size


def partial_trace_second(rep, y):
    """Partial normalized trace ``(Id x tau)(y)`` over the second factor of ``M_N x M_N``.

    Args:
        rep (clifford.FermionRep): Representation.
        y (numpy.ndarray): ``N**2 x N**2`` matrix.

    Returns:
        numpy.ndarray: ``N x N`` matrix.
    """
    blocks = np.asarray(y).reshape(rep.N, rep.N, rep.N, rep.N)

    return np.einsum('abcb->ac', blocks) / rep.N


def _diagonal_blocks(image, N, size):
    # blocks[u, v] is the N x N block of the L^inf indices (u, v)
    return np.asarray(image).reshape(N, size, N, size).transpose(1, 3, 0, 2)


def _off_diagonal(blocks):
    size = blocks.shape[0]
    mask = ~np.eye(size, dtype=bool)

    return float(np.max(np.abs(blocks[mask]))) if size > 1 else 0.0


def coassociativity_deviation(rep, alpha_map=alpha):
    """Largest violation of ``(alpha x Id) o alpha = (Id x Delta) o alpha`` over the basis ``s_A``.

    Both sides live in ``M_N x L^inf x L^inf``, compared block by block: at the points ``(u, v)`` the left side is
    the ``u`` slice of ``alpha(y_v)`` and the right side is ``y_(u xor v)``, where ``y_eps`` are the slices of
    ``alpha(s_A)``. Images must also lie in ``M_N x L^inf`` (no off-diagonal slices).

    Args:
        rep (clifford.FermionRep): Representation with ``n <= 4``.
        alpha_map (Callable): Implementation of ``alpha``.

    Returns:
        float
    """
    _check_rep(rep, MAX_TENSOR_N)
    N, size = rep.N, 2 ** rep.n
    points = np.arange(size)
    deviation = 0.0

    for subset in range(size):
        blocks = _diagonal_blocks(alpha_map(rep, clifford.basis_element(rep, subset)), N, size)
        deviation = max(deviation, _off_diagonal(blocks))
        slices = blocks[points, points]

        for v in range(size):
            inner = _diagonal_blocks(alpha_map(rep, slices[v]), N, size)
            left = inner[points, points]
            right = slices[points ^ v]
            deviation = max(deviation, _off_diagonal(inner), float(np.max(np.abs(left - right))))

    return deviation


def verify_coassociativity(rep, alpha_map=alpha, tol=IDENTITY_TOLERANCE):
    """bool: `coassociativity_deviation` is within `tol`."""
    return _verdict('coassociativity', coassociativity_deviation(rep, alpha_map), tol)


def fixed_point_dimension(rep, alpha_map=alpha, tol=1e-9):
    """Dimension of ``{x : alpha(x) = x x I}``, solved as a linear system in the coefficients of ``x``.

    Args:
        rep (clifford.FermionRep): Representation with ``n <= 6``.
        alpha_map (Callable): Implementation of ``alpha``.
        tol (float): Relative eigenvalue cutoff of the normal equations.

    Returns:
        tuple[int, numpy.ndarray]: Dimension and an orthonormal basis of the solutions (columns, ``s_A`` coefficients).
    """
    _check_rep(rep, MAX_LINEAR_N)
    size = 2 ** rep.n
    columns = []

    for subset in range(size):
        element = clifford.basis_element(rep, subset)
        difference = alpha_map(rep, element) - np.kron(element, np.eye(size))
        columns.append(sparse.csc_matrix(difference.reshape(-1, 1)))

    system = sparse.hstack(columns).tocsc()
    normal = (system.conj().T @ system).toarray()
    eigenvalues, eigenvectors = linalg.eigh((normal + normal.conj().T) / 2)
    kernel = eigenvalues <= tol * max(1.0, float(np.max(np.abs(eigenvalues))))

    return int(np.count_nonzero(kernel)), eigenvectors[:, kernel]


def verify_ergodicity(rep, alpha_map=alpha):
    """Check that the fixed points of ``alpha`` are exactly the multiples of the identity.

    Args:
        rep (clifford.FermionRep): Representation with ``n <= 6``.
        alpha_map (Callable): Implementation of ``alpha``.

    Returns:
        bool
    """
    dimension, kernel = fixed_point_dimension(rep, alpha_map)
    ergodic = dimension == 1 and abs(abs(kernel[0, 0]) - 1.0) <= 1e-9

    logger.debug('Checked ergodicity', extra={'event': 'verify_ergodicity', 'n': rep.n, 'dimension': dimension})

    return ergodic


def _hypercube_multiplier(symbol):
    size = 2 ** symbol.n

    def apply(values):
        return fwht(symbol.coeffs * fwht(values) / size)

    return apply


def _on_second_matrix_factor(channel_map, y, d0, N):
    blocks = np.asarray(y).reshape(d0, N, d0, N)
    out = np.zeros_like(blocks, dtype=complex)

    for a in range(d0):
        for c in range(d0):
            if np.any(blocks[a, :, c, :]):
                out[a, :, c, :] = channel_map(blocks[a, :, c, :])

    return out.reshape(d0 * N, d0 * N)


def _on_function_factor(hypercube_map, y, N, size):
    blocks = np.asarray(y).reshape(N, size, N, size)
    points = np.arange(size)
    functions = blocks[:, points, :, points]
    out = np.zeros_like(blocks, dtype=complex)

    for i in range(N):
        for j in range(N):
            out[i, points, j, points] = hypercube_map(functions[:, i, j])

    return out.reshape(N * size, N * size), _off_diagonal(blocks.transpose(1, 3, 0, 2))


def intertwining_deviation(channel, channel_map=None, hypercube_map=None):
    """Largest violation of the three intertwining relations of a multiplier.

    * ``beta o R = (Id x R) o beta`` on every ``s_A``,
    * ``alpha o R = (Id x T) o alpha`` on every ``s_A``,
    * ``(Id x R) o eta = eta o T`` on every ``w_A``,

    where ``R`` is the multiplier on ``M_N`` and ``T`` the multiplier with the same symbol on the hypercube.

    Args:
        channel (MultiplierChannel): Channel with matrix realization and ``n <= 4``.
        channel_map (Callable|None): Implementation of ``R`` on matrices, defaults to ``channel.apply``.
        hypercube_map (Callable|None): Implementation of ``T`` on value vectors.

    Returns:
        float
    """
    rep = channel.rep

    if rep is None:
        raise DimensionError('Channel on n={} generators has no matrix realization.'.format(channel.n))

    _check_rep(rep, MAX_TENSOR_N)
    channel_map = channel_map or channel.apply
    hypercube_map = hypercube_map or _hypercube_multiplier(channel.symbol)
    N, size = rep.N, 2 ** rep.n
    deviation = 0.0

    for subset in range(size):
        element = clifford.basis_element(rep, subset)
        image = channel_map(element)

        left = beta(rep, image)
        right = _on_second_matrix_factor(channel_map, beta(rep, element), size, N)
        deviation = max(deviation, float(np.max(np.abs(left - right))))

        left = alpha(rep, image)
        right, leak = _on_function_factor(hypercube_map, alpha(rep, element), N, size)
        deviation = max(deviation, leak, float(np.max(np.abs(left - right))))

        walsh = walsh_values(subset, rep.n)
        left = _on_second_matrix_factor(channel_map, eta(rep, HypercubeFunction(rep.n, walsh)), N, N)
        right = eta(rep, HypercubeFunction(rep.n, hypercube_map(walsh)))
        deviation = max(deviation, float(np.max(np.abs(left - right))))

    return deviation


def verify_intertwining(channel, channel_map=None, hypercube_map=None, tol=IDENTITY_TOLERANCE):
    """bool: `intertwining_deviation` is within `tol`."""
    return _verdict('intertwining', intertwining_deviation(channel, channel_map, hypercube_map), tol)


def trace_preservation_deviation(rep, alpha_map=alpha, beta_map=beta, eta_map=eta):
    """Largest deviation of the normalized traces of ``alpha(s_A)``, ``beta(s_A)``, ``eta(w_A)`` from ``delta_(A, empty)``.

    Args:
        rep (clifford.FermionRep): Representation with ``n <= 6``.
        alpha_map (Callable): Implementation of ``alpha``.
        beta_map (Callable): Implementation of ``beta``.
        eta_map (Callable): Implementation of ``eta``.

    Returns:
        float
    """
    _check_rep(rep, MAX_LINEAR_N)
    deviation = 0.0

    for subset in range(2 ** rep.n):
        expected = 1.0 if subset == 0 else 0.0
        element = clifford.basis_element(rep, subset)
        images = (
            alpha_map(rep, element),
            beta_map(rep, element),
            eta_map(rep, HypercubeFunction(rep.n, walsh_values(subset, rep.n))),
        )

        for image in images:
            deviation = max(deviation, abs(clifford.normalized_trace(image) - expected))

    return deviation


def verify_trace_preservation(rep, alpha_map=alpha, beta_map=beta, eta_map=eta, tol=IDENTITY_TOLERANCE):
    """bool: `trace_preservation_deviation` is within `tol`."""
    return _verdict('trace_preservation', trace_preservation_deviation(rep, alpha_map, beta_map, eta_map), tol)


def _verdict(name, deviation, tol):
    logger.debug(
        'Checked identity', extra={'event': 'verify_identity', 'identity': name, 'deviation': deviation}
    )

    return deviation <= tol
