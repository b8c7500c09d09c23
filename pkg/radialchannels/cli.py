"""Command line entry point ``radial-channels``.

Examples:

    radial-channels analyze --dephasing 0.25
    radial-channels analyze --radial 1,-2,1 --n 2 --format table
    radial-channels verify --ou 4 0.5 --seed 7
    radial-channels sweep dephasing --grid 0,0.5,1 --out dephasing.csv
    radial-channels walsh --spec 'tensor(dephasing:0.25;ou:2:1.0)'

Exit status is 0 on success, 1 for a failed verification, 2 for unparsable input, 3 for a request that cannot be
served and 4 for internal errors.
"""
import argparse
import json
import logging
import sys

from radialchannels import commands, oracle
from radialchannels.channelspec import ChannelSpec, parse_csv, parse_spec
from radialchannels.errors import InvalidRequest, RadialChannelError
from radialchannels.service import ErrorResponse, Request, Service

logger = logging.getLogger(__name__)

LOG_LEVELS = (logging.WARNING, logging.INFO, logging.DEBUG)


def build_service(debug=False):
    """Service: Service with all commands registered."""
    service = Service(debug=debug)
    service.add_commands(commands)

    return service


def _add_channel_arguments(parser):
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument('--spec', help="channel spec text, e.g. 'tensor(dephasing:0.1;ou:2:0.5)'")
    group.add_argument(
        '--radial', metavar='PHI', help='radial profile phi(0),...,phi(n); write --radial=-1,0,0 for a negative phi(0)'
    )
    group.add_argument('--dephasing', metavar='T', help='qubit dephasing with probability T')
    group.add_argument('--ou', nargs=2, metavar=('N', 'T'), help='Ornstein-Uhlenbeck semigroup')
    group.add_argument('--tensor', nargs=2, metavar=('SPEC_A', 'SPEC_B'), help='tensor product of two specs')
    parser.add_argument('--n', type=int, help='number of generators for --radial')


def _add_optimizer_arguments(parser):
    parser.add_argument('--seed', type=int, default=0)
    parser.add_argument('--restarts', type=int, default=oracle.OptimizerConfig.restarts)


def _common_arguments():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('-v', '--verbose', action='count', default=0, help='-v for info, -vv for debug logging')
    common.add_argument('--debug', action='store_true', help='include tracebacks in error output')
    common.add_argument('--format', choices=('json', 'table'), default='json')
    common.add_argument('--out', help='write output to this path')

    return common


def build_parser():
    """Return the argument parser.

    Returns:
        argparse.ArgumentParser
    """
    parser = argparse.ArgumentParser(
        prog='radial-channels',
        description='Capacities and entropies of radial multipliers on fermion algebras.',
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    common = _common_arguments()
    subparsers = parser.add_subparsers(dest='command', required=True)

    analyze = subparsers.add_parser('analyze', parents=[common], help='closed-form capacity report')
    _add_channel_arguments(analyze)
    analyze.add_argument('--p', help='exponents of the reported norms, e.g. 2,4,inf')
    analyze.add_argument('--fields', help='comma separated report keys')

    verify = subparsers.add_parser('verify', parents=[common], help='check closed forms against numerical oracles')
    _add_channel_arguments(verify)
    _add_optimizer_arguments(verify)

    sweep = subparsers.add_parser('sweep', parents=[common], help='CSV of closed-form quantities over t')
    sweep.add_argument('family', choices=commands.SWEEP_FAMILIES)
    sweep.add_argument('--grid', required=True, help='values of t, e.g. 0,0.25,0.5')
    sweep.add_argument('--n', type=int, default=2, help='number of generators of the ou family')
    sweep.add_argument('--numeric', action='store_true', help='add the numeric minimum output entropy')
    _add_optimizer_arguments(sweep)

    walsh = subparsers.add_parser('walsh', parents=[common], help='values of the symbol function')
    _add_channel_arguments(walsh)

    return parser


def channel_spec_from_args(args):
    """Build the channel spec selected on the command line.

    Args:
        args (argparse.Namespace): Parsed arguments.

    Returns:
        ChannelSpec

    Raises:
        SpecParseError: If a value does not parse.
    """
    if args.spec is not None:
        return parse_spec(args.spec)
    elif args.radial is not None:
        return ChannelSpec.radial(parse_csv(args.radial), args.n)
    elif args.dephasing is not None:
        return parse_spec('dephasing:{}'.format(args.dephasing))
    elif args.ou is not None:
        return parse_spec('ou:{}:{}'.format(*args.ou))
    else:
        return ChannelSpec.tensor(parse_spec(args.tensor[0]), parse_spec(args.tensor[1]))


def request_from_args(args):
    """Translate parsed arguments into a service request.

    Args:
        args (argparse.Namespace): Parsed arguments.

    Returns:
        Request
    """
    if args.command == 'sweep':
        params = {
            'family': args.family, 'grid': args.grid, 'n': args.n, 'out': args.out, 'numeric': args.numeric,
            'seed': args.seed, 'restarts': args.restarts,
        }
        return Request(command='sweep', params=params)

    params = {'spec': str(channel_spec_from_args(args))}

    if args.command == 'analyze':
        params.update(p=args.p, fields=args.fields)
    elif args.command == 'verify':
        params.update(seed=args.seed, restarts=args.restarts)

    return Request(command=args.command, params=params)


def _cell(value):
    if isinstance(value, float):
        return '{:.12g}'.format(value)
    elif value is None:
        return '-'

    return str(value)


def _table(rows):
    if not rows:
        return ''

    widths = [max(len(row[i]) for row in rows) for i in range(len(rows[0]))]

    return '\n'.join('  '.join(cell.ljust(width) for cell, width in zip(row, widths)).rstrip() for row in rows) + '\n'


def render_table(command, result):
    """Render a command result as aligned text.

    Args:
        command (str): Command name.
        result (dict): Command result.

    Returns:
        str
    """
    if command == 'walsh':
        rows = [['mask', 'signs', 'value']]
        rows.extend(
            [str(row['mask']), ' '.join('{:+d}'.format(sign) for sign in row['signs']), _cell(row['value'])]
            for row in result['rows']
        )
    elif command == 'verify':
        rows = [['check', 'status', 'details']]

        for check in result['checks']:
            details = ', '.join(
                '{}={}'.format(key, _cell(value)) for key, value in sorted(check.items())
                if key not in ('name', 'status')
            )
            rows.append([check['name'], check['status'], details])
    else:
        rows = []

        for key, value in result.items():
            if isinstance(value, dict):
                rows.extend(['{}.{}'.format(key, inner), _cell(item)] for inner, item in value.items())
            else:
                rows.append([key, _cell(value)])

    return _table(rows)


def render(args, response):
    """Text written to the output for a successful response."""
    if args.command == 'sweep':
        return response.result.get('csv', '')

    if args.format == 'table':
        return render_table(args.command, response.result)

    return json.dumps(response.result, sort_keys=True, indent=2) + '\n'


def _report_error(error):
    body = {'error': {'code': error.code, 'message': error.message}}

    if error.data is not None:
        body['error']['data'] = error.data

    sys.stderr.write(json.dumps(body, sort_keys=True, indent=2) + '\n')

    return error.code


def main(argv=None):
    """Run the command line.

    Args:
        argv (list[str]|None): Arguments, defaults to ``sys.argv[1:]``.

    Returns:
        int: Exit status.
    """
    args = build_parser().parse_args(argv)

    logging.basicConfig(
        level=LOG_LEVELS[min(args.verbose, len(LOG_LEVELS) - 1)],
        stream=sys.stderr,
        format='%(levelname)s %(name)s: %(message)s',
    )

    try:
        request = request_from_args(args)
    except RadialChannelError as e:
        logger.error('Invalid command line: %s', e.message, extra={'event': 'command_error'})
        return _report_error(e)

    response = build_service(args.debug).handle_request(request)

    if isinstance(response, ErrorResponse):
        sys.stderr.write(response.body + '\n')
        return response.exit_code

    text = render(args, response)

    if args.out is not None and args.command != 'sweep':
        try:
            with open(args.out, 'w') as handle:
                handle.write(text)
        except OSError as e:
            error = InvalidRequest('Cannot write {}: {}.'.format(args.out, e.strerror), data={'out': args.out})
            logger.error('Cannot write output: %s', error.message, extra={'event': 'command_error'})
            return _report_error(error)
    else:
        sys.stdout.write(text)

    return response.exit_code
