"""Closed-form information quantities of multiplier channels, computed from the symbol function alone.

All entropies and capacities are in bits. ``hcb_min_normalized`` uses the normalized trace of the fermion algebra,
``hcb_min_matrix_trace`` the ordinary matrix trace of ``M_N``; they differ by ``log2 N``.
"""
import logging
import math

import numpy as np

from radialchannels.errors import DimensionError, InvalidParameter, NotAQuantumChannel
from radialchannels.hypercube import channel_density, lp_norm, power_mean, segal_entropy

logger = logging.getLogger(__name__)

DEFAULT_P_VALUES = (2.0, math.inf)
DERIVATIVE_STEP = 1e-5


def matrix_size(n):
    """Return ``N = 2 ** (n / 2)`` for even `n`, None for odd `n`."""
    return 2 ** (n // 2) if n % 2 == 0 else None


def _require_quantum_channel(channel):
    if not channel.is_completely_positive():
        raise NotAQuantumChannel('Multiplier is not completely positive.', data={'n': channel.n})

    if not channel.is_unital_trace_preserving():
        raise NotAQuantumChannel('Multiplier is not trace preserving.', data={'n': channel.n})


def _require_even(channel):
    N = matrix_size(channel.n)

    if N is None:
        raise DimensionError(
            'Matrix trace quantities need an even number of generators, got n={}.'.format(channel.n),
            data={'n': channel.n}
        )

    return N


def cb_norm_1_to_p(channel, p):
    """Completely bounded norm ``L^1 -> L^p`` of the multiplier, equal to ``||f||_p``.

    Args:
        channel (MultiplierChannel): Any multiplier.
        p (float): Exponent ``1 < p <= inf``.

    Returns:
        float

    Raises:
        InvalidParameter: If ``p <= 1``.
    """
    if not p > 1:
        raise InvalidParameter('Exponent p must be > 1, got {!r}.'.format(p))

    return lp_norm(channel.f, p)


def cb_norm_dual(channel, p):
    """Completely bounded norm ``L^(p*) -> L^inf`` of the adjoint multiplier, ``p* = p / (p - 1)``.

    It equals ``||f||_p`` as well.

    Args:
        channel (MultiplierChannel): Any multiplier.
        p (float): Exponent ``1 < p <= inf``.

    Returns:
        float
    """
    return cb_norm_1_to_p(channel, p)


def hcb_min_normalized(channel):
    """Completely bounded minimal output entropy for the normalized trace, the Segal entropy of ``f``.

    Args:
        channel (MultiplierChannel): Quantum channel.

    Returns:
        float: Value in ``[-n, 0]``.

    Raises:
        NotAQuantumChannel: If the multiplier is not CP and TP.
    """
    _require_quantum_channel(channel)

    return segal_entropy(channel.f)


def hcb_min_matrix_trace(channel):
    """Completely bounded minimal output entropy on ``M_N`` with the non-normalized trace, ``H(f) + log2 N``.

    Args:
        channel (MultiplierChannel): Quantum channel on an even number of generators.

    Returns:
        float: Value in ``[-log2 N, log2 N]``.
    """
    N = _require_even(channel)

    return hcb_min_normalized(channel) + math.log2(N)


def c_ea(channel):
    """Entanglement-assisted classical capacity ``-H(f)``.

    Args:
        channel (MultiplierChannel): Quantum channel.

    Returns:
        float: Value in ``[0, n]``.
    """
    return -hcb_min_normalized(channel)


def classical_capacity_upper_bound(channel):
    """Upper bound ``-H(f)`` for the unassisted classical capacity (and so for the quantum capacity).

    Args:
        channel (MultiplierChannel): Quantum channel.

    Returns:
        float
    """
    return c_ea(channel)


def q1_lower_bound(channel):
    """Lower bound ``max(-log2 N - H(f), 0)`` of the channel coherent information.

    Args:
        channel (MultiplierChannel): Quantum channel on an even number of generators.

    Returns:
        float
    """
    N = _require_even(channel)

    return max(-math.log2(N) - hcb_min_normalized(channel), 0.0)


def entropy_from_norm_derivative(f, step=DERIVATIVE_STEP):
    """Estimate ``-(1 / ln 2) d/dp ||f||_p`` at ``p = 1`` by finite differences.

    Uses a central difference when `f` is strictly positive and a second order forward difference otherwise, since
    ``||f||_p`` is then only evaluated for ``p >= 1``.

    Args:
        f (HypercubeFunction): Symbol function of a quantum channel.
        step (float): Difference step in ``p``.

    Returns:
        float: Approximation of ``segal_entropy(f)``.
    """
    values = channel_density(f)

    def norm(p):
        return power_mean(values, p)

    if np.min(values) > 0:
        derivative = (norm(1.0 + step) - norm(1.0 - step)) / (2.0 * step)
    else:
        derivative = (-3.0 * norm(1.0) + 4.0 * norm(1.0 + step) - norm(1.0 + 2.0 * step)) / (2.0 * step)

    return -derivative / math.log(2)


def _p_key(p):
    # shortest text that parses back to p
    if math.isinf(p):
        return 'inf'

    text = repr(float(p))

    return text[:-2] if text.endswith('.0') else text


class CapacityReport(object):
    """Everything known in closed form about one multiplier.

    Fields needing a quantum channel, or an even number of generators, are None when unavailable; `unavailable`
    records why.

    Attributes:
        n (int): Number of generators.
        N (int|None): Matrix size for even `n`.
        kind (str): Construction label of the channel.
        symbol_kind (str): ``'radial'`` or ``'diagonal (non-radial)'``.
        unital (bool): ``T(I) = I``.
        tp (bool): Trace preserving.
        cp (bool): Completely positive.
        segal_entropy_f (float|None): ``H(f)``.
        c_ea (float|None): Entanglement-assisted classical capacity.
        c_upper_bound (float|None): Upper bound of the classical capacity.
        hcb_min_normalized (float|None): cb minimal output entropy, normalized trace.
        hcb_min_matrix_trace (float|None): cb minimal output entropy, matrix trace.
        q1_lower_bound (float|None): Coherent information lower bound.
        lp_norms (dict[str, float]): ``||f||_p`` per requested ``p``.
        unavailable (dict[str, str]): Reason per None field.
    """

    KEYS = (
        'n', 'N', 'kind', 'symbol_kind', 'unital', 'tp', 'cp', 'segal_entropy_f', 'c_ea', 'c_upper_bound',
        'hcb_min_normalized', 'hcb_min_matrix_trace', 'q1_lower_bound', 'lp_norms', 'unavailable',
    )

    CHANNEL_FIELDS = (
        'segal_entropy_f', 'c_ea', 'c_upper_bound', 'hcb_min_normalized', 'hcb_min_matrix_trace', 'q1_lower_bound',
    )

    EVEN_FIELDS = ('N', 'hcb_min_matrix_trace', 'q1_lower_bound')

    def __init__(self, **fields):
        for key in self.KEYS:
            setattr(self, key, fields.get(key))

        if self.lp_norms is None:
            self.lp_norms = {}

        if self.unavailable is None:
            self.unavailable = {}

    @property
    def dict(self):
        """Return the report as a dict with a fixed key set.

        Returns:
            dict
        """
        return {key: getattr(self, key) for key in self.KEYS}


def capacity_report(channel, p_values=DEFAULT_P_VALUES):
    """Aggregate flags, entropies, capacities and norms of a multiplier.

    Never raises for non-channels: fields needing a quantum channel are left None instead.

    Args:
        channel (MultiplierChannel): Any multiplier.
        p_values (Iterable[float]): Exponents ``p >= 1`` for `lp_norms`.

    Returns:
        CapacityReport
    """
    tp = channel.is_unital_trace_preserving()
    cp = channel.is_completely_positive()
    N = matrix_size(channel.n)

    fields = {
        'n': channel.n,
        'N': N,
        'kind': channel.kind,
        'symbol_kind': channel.symbol_kind,
        'unital': tp,
        'tp': tp,
        'cp': cp,
        'lp_norms': {_p_key(p): lp_norm(channel.f, p) for p in p_values},
        'unavailable': {},
    }

    if cp and tp:
        entropy = segal_entropy(channel.f)
        fields['segal_entropy_f'] = entropy
        fields['c_ea'] = -entropy
        fields['c_upper_bound'] = -entropy
        fields['hcb_min_normalized'] = entropy

        if N is not None:
            fields['hcb_min_matrix_trace'] = entropy + math.log2(N)
            fields['q1_lower_bound'] = max(-math.log2(N) - entropy, 0.0)
    else:
        reason = 'not completely positive' if not cp else 'not trace preserving'

        for key in CapacityReport.CHANNEL_FIELDS:
            fields['unavailable'][key] = reason

    if N is None:
        for key in CapacityReport.EVEN_FIELDS:
            fields['unavailable'].setdefault(key, 'odd number of generators')

    report = CapacityReport(**fields)

    logger.info(
        'Computed capacity report',
        extra={'event': 'capacity_report', 'n': channel.n, 'cp': cp, 'tp': tp, 'c_ea': report.c_ea}
    )

    return report
