"""Textual description of a channel, as used on the command line.

Grammar::

    radial:<n>:<phi(0)>,...,<phi(n)>
    dephasing:<t>
    ou:<n>:<t>
    tensor(<spec>;<spec>)

Printing a parsed spec gives text that parses back to an equal spec.
"""
from radialchannels import channel
from radialchannels.errors import SpecParseError

RADIAL = 'radial'
DEPHASING = 'dephasing'
OU = 'ou'
TENSOR = 'tensor'

KINDS = (RADIAL, DEPHASING, OU, TENSOR)


def _number(text):
    try:
        return float(text)
    except ValueError:
        raise SpecParseError('Not a number: {!r}.'.format(text))


def _integer(text):
    try:
        return int(text)
    except ValueError:
        raise SpecParseError('Not an integer: {!r}.'.format(text))


def _format_number(value):
    return repr(float(value))


def parse_csv(text):
    """Parse comma separated numbers, ``inf`` allowed.

    Args:
        text (str): E.g. ``'1,0.5,0'``.

    Returns:
        tuple[float, ...]

    Raises:
        SpecParseError: On empty input or a non-number.
    """
    items = [item.strip() for item in text.split(',')]

    if not text.strip() or any(not item for item in items):
        raise SpecParseError('Expected comma separated numbers, got {!r}.'.format(text))

    return tuple(_number(item) for item in items)


class ChannelSpec(object):
    """A channel named by construction.

    Attributes:
        kind (str): One of `KINDS`.
        n (int): Number of generators.
        params (tuple): ``phi`` values for radial, ``(t,)`` for dephasing and ou, two specs for tensor.
    """

    def __init__(self, kind, n, params):
        if kind not in KINDS:
            raise SpecParseError('Unknown channel kind {!r}.'.format(kind))

        self.kind = kind
        self.n = n
        self.params = tuple(params)

    @classmethod
    def radial(cls, phi, n=None):
        """ChannelSpec: Radial multiplier with profile `phi`."""
        phi = tuple(float(value) for value in phi)

        return cls(RADIAL, len(phi) - 1 if n is None else n, phi)

    @classmethod
    def dephasing(cls, t):
        """ChannelSpec: Qubit dephasing with probability `t`."""
        return cls(DEPHASING, 2, (float(t),))

    @classmethod
    def ou(cls, n, t):
        """ChannelSpec: Ornstein-Uhlenbeck semigroup on `n` generators at time `t`."""
        return cls(OU, int(n), (float(t),))

    @classmethod
    def tensor(cls, first, second):
        """ChannelSpec: Tensor product of two specs."""
        return cls(TENSOR, first.n + second.n, (first, second))

    def resolve(self):
        """Build the channel.

        Returns:
            MultiplierChannel
        """
        if self.kind == RADIAL:
            return channel.radial(self.params, self.n)
        elif self.kind == DEPHASING:
            return channel.dephasing(self.params[0])
        elif self.kind == OU:
            return channel.ou_semigroup(self.n, self.params[0])
        else:
            first, second = self.params
            return channel.tensor(first.resolve(), second.resolve())

    def __eq__(self, other):
        if not isinstance(other, ChannelSpec):
            return NotImplemented

        return (self.kind, self.n, self.params) == (other.kind, other.n, other.params)

    def __hash__(self):
        return hash((self.kind, self.n, self.params))

    def __str__(self):
        if self.kind == RADIAL:
            return '{}:{}:{}'.format(RADIAL, self.n, ','.join(_format_number(value) for value in self.params))
        elif self.kind == DEPHASING:
            return '{}:{}'.format(DEPHASING, _format_number(self.params[0]))
        elif self.kind == OU:
            return '{}:{}:{}'.format(OU, self.n, _format_number(self.params[0]))
        else:
            return '{}({};{})'.format(TENSOR, *self.params)

    def __repr__(self):
        return 'ChannelSpec({!r})'.format(str(self))


def _split_top_level(text):
    depth = 0

    for i, char in enumerate(text):
        if char == '(':
            depth += 1
        elif char == ')':
            depth -= 1
        elif char == ';' and depth == 0:
            return text[:i], text[i + 1:]

    raise SpecParseError('Expected two specs separated by ";" in {!r}.'.format(text))


def parse_spec(text):
    """Parse a channel spec.

    Args:
        text (str): Spec text, see the module documentation.

    Returns:
        ChannelSpec

    Raises:
        SpecParseError: If `text` does not follow the grammar.
    """
    if not isinstance(text, str):
        raise SpecParseError('Channel spec must be a string, got {!r}.'.format(text))

    text = text.strip()

    if text.startswith(TENSOR + '('):
        if not text.endswith(')'):
            raise SpecParseError('Unbalanced parentheses in {!r}.'.format(text))

        first, second = _split_top_level(text[len(TENSOR) + 1:-1])

        return ChannelSpec.tensor(parse_spec(first), parse_spec(second))

    parts = text.split(':')
    kind = parts[0]

    if kind == RADIAL and len(parts) == 3:
        n = _integer(parts[1])
        return ChannelSpec.radial(parse_csv(parts[2]), n)
    elif kind == DEPHASING and len(parts) == 2:
        return ChannelSpec.dephasing(_number(parts[1]))
    elif kind == OU and len(parts) == 3:
        return ChannelSpec.ou(_integer(parts[1]), _number(parts[2]))

    raise SpecParseError('Cannot parse channel spec {!r}.'.format(text))
