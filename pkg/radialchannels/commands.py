"""Commands of the command line, registered into the service under their names without ``cmd_``.

Each command takes json-like keyword parameters, channel specs as text, and returns a json-serializable result.
"""
import concurrent.futures
import csv
import io
import logging

from radialchannels import action, capacity, oracle
from radialchannels.channelspec import ChannelSpec, parse_csv, parse_spec
from radialchannels.errors import (
    DimensionError, InvalidParameter, InvalidRequest, NotAQuantumChannel, VerificationFailed
)
from radialchannels.hypercube import point_signs
from radialchannels.service import CommandResult

logger = logging.getLogger(__name__)

MAX_WALSH_N = 20
SWEEP_FAMILIES = ('dephasing', 'ou')
SWEEP_HEADER = ('t', 'c_ea', 'hcb_min_tr', 'q1_lb')
NUMERIC_COLUMN = 'hmin_numeric'

BSST_TOLERANCE = 1e-8
BSST_REACH = 1e-4
BSST_EXCESS = 1e-6
BOUND_SLACK = 1e-6


def _spec(spec):
    return spec if isinstance(spec, ChannelSpec) else parse_spec(spec)


def _p_values(p):
    if p is None:
        return capacity.DEFAULT_P_VALUES

    values = parse_csv(p) if isinstance(p, str) else tuple(float(value) for value in p)

    for value in values:
        if not value >= 1:
            raise InvalidParameter('Exponent p must be >= 1, got {!r}.'.format(value))

    return values


def _optimizer_config(seed, restarts):
    return oracle.OptimizerConfig(seed=int(seed), restarts=int(restarts))


def cmd_analyze(spec, p=None, fields=None):
    """Closed-form report of a channel.

    Args:
        spec (str): Channel spec.
        p (str|list|None): Exponents for ``lp_norms``, e.g. ``'2,inf'``.
        fields (str|list|None): Restrict the report to these keys.

    Returns:
        dict

    Raises:
        NotAQuantumChannel: If a field needing a quantum channel is requested for a non-channel.
        DimensionError: If a field needing an even number of generators is requested for odd ``n``.
    """
    report = capacity.capacity_report(_spec(spec).resolve(), _p_values(p)).dict

    if fields is None:
        return report

    if isinstance(fields, str):
        fields = [field.strip() for field in fields.split(',') if field.strip()]

    unknown = [field for field in fields if field not in capacity.CapacityReport.KEYS]

    if unknown:
        raise InvalidRequest('Unknown report fields: {}.'.format(', '.join(unknown)))

    for field in fields:
        reason = report['unavailable'].get(field)

        if reason == 'odd number of generators':
            raise DimensionError('Field "{}" is unavailable: {}.'.format(field, reason))
        elif reason is not None:
            raise NotAQuantumChannel('Field "{}" is unavailable: {}.'.format(field, reason))

    return {field: report[field] for field in fields}


def _check(name, passed, **details):
    return dict(details, name=name, status='pass' if passed else 'fail')


def _skipped(name, reason):
    return {'name': name, 'status': 'skipped', 'reason': reason}


def cmd_verify(spec, seed=0, restarts=oracle.OptimizerConfig.restarts):
    """Cross-check closed forms against the numerical oracles and the action identities.

    Args:
        spec (str): Channel spec with an even number of generators.
        seed (int): Optimizer seed.
        restarts (int): Optimizer restarts.

    Returns:
        CommandResult: Per check status with deviations; exit status 1 if any check failed.
    """
    ch = _spec(spec).resolve()

    if ch.rep is None:
        raise DimensionError('Verification needs an even number of generators n <= 12, got n={}.'.format(ch.n))

    config = _optimizer_config(seed, restarts)
    checks = []

    passed, details = oracle.choi_spectrum_check(ch)
    checks.append(_check('choi_spectrum', passed, deviation=details['max_deviation']))

    cp = ch.is_completely_positive()
    cp_choi = oracle.cp_check_choi(ch)
    checks.append(_check('cp_agreement', cp == cp_choi, cp=cp, cp_choi=cp_choi))

    capacity_checks = ('bsst_maximally_mixed', 'bsst_maximize', 'min_output_entropy_bound', 'relative_entropy')

    if ch.is_quantum_channel() and ch.N <= oracle.MAX_OPTIMIZER_N:
        c_ea = capacity.c_ea(ch)

        value = oracle.bsst_mutual_information(ch, oracle.DensityOperator.maximally_mixed(ch.N))
        checks.append(_check('bsst_maximally_mixed', abs(value - c_ea) <= BSST_TOLERANCE, deviation=abs(value - c_ea)))

        value, _ = oracle.bsst_maximize(ch, config)
        reached = c_ea - BSST_REACH <= value <= c_ea + BSST_EXCESS
        checks.append(_check('bsst_maximize', reached, value=value, c_ea=c_ea))

        bound = capacity.hcb_min_matrix_trace(ch)
        value = oracle.min_output_entropy_numeric(ch, config)
        checks.append(_check('min_output_entropy_bound', bound <= value + BOUND_SLACK, value=value, bound=bound))

        passed, details = oracle.relative_entropy_check(ch)
        checks.append(_check('relative_entropy', passed, deviation=details['max_deviation']))
    else:
        reason = 'not a quantum channel' if not ch.is_quantum_channel() else 'matrix size above optimizer limit'
        checks.extend(_skipped(name, reason) for name in capacity_checks)

    if ch.n <= action.MAX_TENSOR_N:
        deviation = action.intertwining_deviation(ch)
        checks.append(_check('intertwining', deviation <= action.IDENTITY_TOLERANCE, deviation=deviation))

        deviation = action.coassociativity_deviation(ch.rep)
        checks.append(_check('coassociativity', deviation <= action.IDENTITY_TOLERANCE, deviation=deviation))
    else:
        checks.extend(_skipped(name, 'n above {}'.format(action.MAX_TENSOR_N))
                      for name in ('intertwining', 'coassociativity'))

    if ch.n <= action.MAX_LINEAR_N:
        checks.append(_check('ergodicity', action.verify_ergodicity(ch.rep)))

        deviation = action.trace_preservation_deviation(ch.rep)
        checks.append(_check('trace_preservation', deviation <= action.IDENTITY_TOLERANCE, deviation=deviation))
    else:
        checks.extend(_skipped(name, 'n above {}'.format(action.MAX_LINEAR_N))
                      for name in ('ergodicity', 'trace_preservation'))

    failed = [check['name'] for check in checks if check['status'] == 'fail']

    if failed:
        logger.warning('Verification failed', extra={'event': 'verify_failed', 'checks': failed})

    result = {'spec': str(_spec(spec)), 'n': ch.n, 'N': ch.N, 'passed': not failed, 'checks': checks}

    return CommandResult(result, VerificationFailed.code if failed else 0)


def _sweep_spec(family, t, n):
    if family == 'dephasing':
        return ChannelSpec.dephasing(t)

    return ChannelSpec.ou(n, t)


def _sweep_row(family, t, n, numeric, config):
    ch = _sweep_spec(family, t, n).resolve()
    row = [t, capacity.c_ea(ch), capacity.hcb_min_matrix_trace(ch), capacity.q1_lower_bound(ch)]

    if numeric:
        row.append(oracle.min_output_entropy_numeric(ch, config))

    return ['{:.12g}'.format(value) for value in row]


def cmd_sweep(family, grid, n=2, out=None, numeric=False, seed=0, restarts=oracle.OptimizerConfig.restarts,
              workers=None):
    """Closed-form quantities along a parameter grid, as CSV.

    Rows are computed concurrently and written in grid order.

    Args:
        family (str): ``'dephasing'`` or ``'ou'``.
        grid (str|list): Values of ``t``.
        n (int): Number of generators for the ou family.
        out (str|None): CSV path; without it the CSV text is returned.
        numeric (bool): Add the numeric minimum output entropy column.
        seed (int): Optimizer seed for the numeric column.
        restarts (int): Optimizer restarts for the numeric column.
        workers (int|None): Thread pool size.

    Returns:
        dict: ``header``, ``rows`` and either ``out`` or ``csv``.
    """
    if family not in SWEEP_FAMILIES:
        raise InvalidRequest('Sweep family must be one of {}, got {!r}.'.format(', '.join(SWEEP_FAMILIES), family))

    grid = parse_csv(grid) if isinstance(grid, str) else tuple(float(t) for t in grid)

    if not grid:
        raise InvalidRequest('Sweep grid is empty.')

    header = SWEEP_HEADER + ((NUMERIC_COLUMN,) if numeric else ())
    config = _optimizer_config(seed, restarts)

    with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as executor:
        rows = list(executor.map(lambda t: _sweep_row(family, t, int(n), numeric, config), grid))

    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(header)
    writer.writerows(rows)

    result = {'header': list(header), 'rows': len(rows)}

    if out is None:
        result['csv'] = buffer.getvalue()
        return result

    try:
        with open(out, 'w', newline='') as handle:
            handle.write(buffer.getvalue())
    except OSError as e:
        raise InvalidRequest('Cannot write {}: {}.'.format(out, e.strerror), data={'out': out})

    result['out'] = out

    return result


def _json_number(value):
    if abs(value.imag) <= 1e-12 * max(1.0, abs(value.real)):
        return float(value.real)

    return [float(value.real), float(value.imag)]


def cmd_walsh(spec):
    """All values of the symbol function in point bitmask order.

    Args:
        spec (str): Channel spec with ``n <= 20``.

    Returns:
        dict: ``n`` and ``rows`` of ``{mask, signs, value}``.
    """
    parsed = _spec(spec)

    if parsed.n > MAX_WALSH_N:
        raise DimensionError('Walsh table is limited to n <= {}, got {}.'.format(MAX_WALSH_N, parsed.n))

    values = parsed.resolve().f.values
    rows = [
        {'mask': mask, 'signs': list(point_signs(mask, parsed.n)), 'value': _json_number(values[mask])}
        for mask in range(2 ** parsed.n)
    ]

    return {'n': parsed.n, 'rows': rows}
