"""Capacities and entropies of radial multipliers on fermion algebras."""
from radialchannels.channel import (
    MultiplierChannel, adjoint, completely_noisy, compose, dephasing, identity_channel, ou_semigroup, radial, tensor
)
from radialchannels.channelspec import ChannelSpec, parse_spec
from radialchannels.errors import (
    DimensionError, InternalError, InvalidParameter, InvalidRequest, InvalidState, NotAQuantumChannel,
    RadialChannelError, SpecParseError, VerificationFailed
)
from radialchannels.hypercube import HypercubeFunction, MultiplierSymbol, walsh_analyze, walsh_synthesize
from radialchannels.service import ErrorResponse, Request, Response, Service, SuccessResponse

__all__ = [
    'MultiplierChannel', 'adjoint', 'completely_noisy', 'compose', 'dephasing', 'identity_channel', 'ou_semigroup',
    'radial', 'tensor', 'ChannelSpec', 'parse_spec', 'DimensionError', 'InternalError', 'InvalidParameter',
    'InvalidRequest', 'InvalidState', 'NotAQuantumChannel', 'RadialChannelError', 'SpecParseError',
    'VerificationFailed', 'HypercubeFunction', 'MultiplierSymbol', 'walsh_analyze', 'walsh_synthesize',
    'ErrorResponse', 'Request', 'Response', 'Service', 'SuccessResponse',
]
