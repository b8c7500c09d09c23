"""Request/response dispatcher behind the command line.

Commands are plain functions registered in a `Service`; a `Request` names one of them and carries its keyword
parameters. Whatever a command raises is turned into an `ErrorResponse` whose code is the exit status.
"""
import abc
import inspect
import json
import logging
import sys
import traceback

from radialchannels.errors import InternalError, InvalidRequest, RadialChannelError, SpecParseError

logger = logging.getLogger(__name__)

COMMAND_PREFIX = 'cmd_'


class Response(object, metaclass=abc.ABCMeta):
    """Base for command responses.

    Attributes:
        request (Request): Request this is a response for.
    """

    def __init__(self, request):
        """
        Args:
            request (Request): Request this is a response for.
        """
        self.request = request

    @property
    @abc.abstractmethod
    def dict(self):
        """Return response as dict.

        Returns:
            dict
        """
        pass

    @property
    @abc.abstractmethod
    def exit_code(self):
        """int: Process exit status for this response."""
        pass

    @property
    def body(self):
        """Return response as JSON text with sorted keys, identical for identical responses.

        Returns:
            str
        """
        return json.dumps(self.dict, sort_keys=True, indent=2, allow_nan=True)


class ErrorResponse(Response):
    """Response returned when a command failed.

    Attributes:
        request (Request): Request this is a response for.
        code (int): Error code, also the exit status.
        message (str): Error message.
        data (Any): Arbitrary data about the error.
    """

    def __init__(self, request, code, message, data=None, exc_info=True):
        """
        Args:
            request (Request): Request this is a response for.
            code (int): Error code.
            message (str): Error message.
            data (Any): Arbitrary data about the error.
        """
        super().__init__(request)
        self.code = code
        self.message = message
        self.data = data

        if exc_info is True:
            self.exc_info = sys.exc_info()
        else:
            self.exc_info = exc_info

    @property
    def exit_code(self):
        return self.code

    @property
    def dict(self):
        error = {
            'message': self.message,
            'code': self.code,
        }

        if self.data is not None:
            error['data'] = self.data

        try:
            command = self.request.command
        except RadialChannelError:
            command = None

        return {
            'command': command,
            'error': error,
        }


class SuccessResponse(Response):
    """Response returned when a command completed.

    A command can complete and still report a failure, e.g. a verification with a failed check; `exit_code` carries
    it.

    Attributes:
        request (Request): Request this is a response for.
        result (Any): Any json-serializable result of the command.
    """

    def __init__(self, request, result, exit_code=0):
        """
        Args:
            request (Request): Request this is a response for.
            result (Any): Any json-serializable result of the command.
            exit_code (int): Exit status to report.
        """
        super().__init__(request)
        self.result = result
        self._exit_code = exit_code

    @property
    def exit_code(self):
        return self._exit_code

    @property
    def dict(self):
        return {
            'command': self.request.command,
            'result': self.result,
        }


class CommandResult(object):
    """Value a command returns when its exit status is not 0.

    Attributes:
        result (Any): Json-serializable result.
        exit_code (int): Exit status.
    """

    def __init__(self, result, exit_code=0):
        self.result = result
        self.exit_code = exit_code


class Request(object):
    """A command invocation."""

    def __init__(self, *, command=None, params=None, parsed_request=None):
        """
        Use either `command` (with optional `params`) or `parsed_request` to initialize a Request object.

        Args:
            command (str): Name of the command.
            params (dict|None): Keyword parameters of the command.
            parsed_request (dict): ``{"command": ..., "params": {...}}``.
        """
        if command is None and parsed_request is None:
            raise ValueError('Either "command" or "parsed_request" must be set for Request.')

        if parsed_request is None:
            parsed_request = {'command': command, 'params': {} if params is None else params}

        self._parsed_request = parsed_request
        """Any: Request as given."""

        self._dict = None
        """dict|None: Request after being checked for correct type, used to skip repeated checks."""

    @property
    def dict(self):
        """Return request as a dict.

        Returns:
            dict

        Raises:
            SpecParseError: If the request is not a dict.
        """
        if self._dict is None:
            data = self._parsed_request

            if not isinstance(data, dict):
                raise SpecParseError('Expected an object as request, got {}.'.format(type(data).__name__))

            self._dict = data

        return self._dict

    @property
    def command(self):
        """str: Name of the command.

        Raises:
            InvalidRequest: If `command` is missing or not a string.
        """
        try:
            command = self.dict['command']
        except KeyError:
            raise InvalidRequest('Missing "command" member in request.')

        if not isinstance(command, str):
            raise InvalidRequest('"command" of request must be a string.')

        return command

    @property
    def params(self):
        """dict: Parameters of the command.

        Raises:
            InvalidRequest: If `params` are present and not a dict.
        """
        params = self.dict.get('params')

        if params is None:
            return {}

        if not isinstance(params, dict):
            raise InvalidRequest('"params" of request must be an object if present.')

        return params

    @property
    def kwargs(self):
        """dict: Keyword arguments for the command call."""
        return self.params


class Service(object):
    """Registry of commands that turns requests into responses.

    Examples:

        >>> service = Service()
        >>>
        >>> @service.command
        >>> def hello():
        ...   return "Hello."
        >>>
        >>> service.handle_request(Request(command='hello')).body
        '{\\n  "command": "hello",\\n  "result": "Hello."\\n}'

    """

    def __init__(self, debug=False):
        self._debug = debug
        self._commands = {}
        """dict[str,typing.Callable]: Mapping of command names to callables."""

    def command(self, command):
        """Decorate function to add it into service.

        Either decorate without argument to add the function under its own name, or pass the name to use.

        Args:
            command (typing.Callable|str): Either the function itself or the command name.
        """
        if callable(command):
            self.add_command(command.__name__, command)

            return command
        else:
            def wrapper(func):
                self.add_command(command, func)
                return func

            return wrapper

    def add_command(self, name, func):
        """Add command to service.

        Each command must return a json-serializable result, a `CommandResult`, or raise an error.

        Args:
            name (str): Command name.
            func (typing.Callable): Callable to be added.
        """
        if name in self._commands:
            raise ValueError('Command "{}" already registered.'.format(name))

        self._commands[name] = func

    def add_commands(self, module):
        """Add the functions defined in `module` whose names start with ``cmd_``, under the name without that prefix.

        Args:
            module (module): Module of commands.
        """
        if not inspect.ismodule(module):
            raise ValueError('Cannot add commands from {!r}. Expected a module.'.format(module))

        for name in dir(module):
            if not name.startswith(COMMAND_PREFIX):
                continue

            func = getattr(module, name)

            if inspect.isfunction(func) and inspect.getmodule(func) is module and func.__name__ == name:
                self.add_command(name[len(COMMAND_PREFIX):], func)

    def get_commands(self):
        """Return mapping of registered command names to callables.

        Returns:
            dict[str, typing.Callable]
        """
        return self._commands.copy()

    def handle_request(self, request):
        """Process request and return response.

        Args:
            request (Request): Request to be processed.

        Returns:
            Response
        """
        try:
            result = self.call_command(request, request.command, request.kwargs)

            if isinstance(result, CommandResult):
                return SuccessResponse(request, result.result, result.exit_code)

            return SuccessResponse(request, result)

        except BaseException as e:
            logger.exception('Command failed:', extra={'event': 'command_error'})

            if self._debug:
                exc_data = {
                    '_exception': {
                        'type': type(e).__name__,
                        'message': str(e),
                        'traceback': traceback.format_exc().splitlines()
                    }
                }

            if not isinstance(e, RadialChannelError):
                e = InternalError()

            if self._debug:
                if e.data is None:
                    e.data = exc_data
                elif isinstance(e.data, dict):
                    e.data.update(exc_data)

            return ErrorResponse(request, e.code, e.message, e.data)

    def call_command(self, request, name, kwargs):
        """Call command registered under `name` with `kwargs`.

        Args:
            request (Request): Request which resulted in this call.
            name (str): Name of command to call.
            kwargs (dict): Keyword arguments for the call.

        Raises:
            InvalidRequest: If the command is unknown or does not accept `kwargs`.

        Returns:
            Any: Result of the call.
        """
        logger.debug(
            'Got command request',
            extra={'event': 'command_request', 'request': request.dict}
        )

        if name not in self._commands:
            raise InvalidRequest('Command "{}" is not defined.'.format(name))

        func = self._commands[name]

        try:
            inspect.signature(func, follow_wrapped=False).bind(**kwargs)
        except TypeError as e:
            raise InvalidRequest(str(e))

        try:
            return func(**kwargs)
        finally:
            logger.info(
                'Called "{}" command'.format(name),
                extra={'event': 'command_call'}
            )
