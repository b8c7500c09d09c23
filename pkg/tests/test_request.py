import unittest
from radialchannels import Request, SpecParseError, InvalidRequest


class RequestTest(unittest.TestCase):
    def test_request_without_data(self):
        self.assertRaises(ValueError, Request)

    def test_request_with_command(self):
        request = Request(command='analyze', params={'spec': 'dephasing:0.25'})

        self.assertEqual(request.dict, {'command': 'analyze', 'params': {'spec': 'dephasing:0.25'}})
        self.assertEqual(request.command, 'analyze')
        self.assertEqual(request.kwargs, {'spec': 'dephasing:0.25'})

    def test_request_with_parsed_input(self):
        request = Request(parsed_request={'command': 'walsh'})

        self.assertEqual(request.command, 'walsh')
        self.assertEqual(request.params, {})
        self.assertEqual(request.kwargs, {})

    def test_invalid_request(self):
        request = Request(parsed_request=[])
        self.assertRaisesRegex(SpecParseError, 'Expected an object', lambda: request.command)

        request = Request(parsed_request={})
        self.assertRaisesRegex(InvalidRequest, 'Missing "command"', lambda: request.command)

        request = Request(parsed_request={"command": 1})
        self.assertRaisesRegex(InvalidRequest, 'must be a string', lambda: request.command)

        request = Request(parsed_request={"command": "sweep", "params": ["dephasing"]})
        self.assertEqual(request.command, "sweep")
        self.assertRaisesRegex(InvalidRequest, 'must be an object', lambda: request.params)
