import json
import unittest

from radialchannels import Service, Request, RadialChannelError


class CustomException(Exception):
    pass


class CustomService(Service):
    def call_command(self, request, name, kwargs):
        started_at = 123000

        if 'seed' not in kwargs:
            kwargs['seed'] = request.seed

        try:
            result = super().call_command(request, name, kwargs)
            result['_timing'] = 124000 - started_at

            return result
        except CustomException as e:
            raise RadialChannelError(42, "There is some custom problem.", data=str(e))


service = CustomService()


@service.command
def draw(seed):
    if seed >= 0:
        return {"seed": seed}
    else:
        raise CustomException('Negative seed {}.'.format(seed))


class TestExtensibility(unittest.TestCase):
    def test_parameter_injection(self):
        request = Request(command="draw")
        request.seed = 7

        response = service.handle_request(request)

        self.assertEqual(json.loads(response.body), {
            "command": "draw",
            "result": {
                "seed": 7,
                "_timing": 1000
            }
        })

    def test_seed_in_params(self):
        response = service.handle_request(Request(command="draw", params={"seed": 3}))

        self.assertEqual(json.loads(response.body)["result"], {"seed": 3, "_timing": 1000})

    def test_custom_error_handling(self):
        response = service.handle_request(Request(command="draw", params={"seed": -1}))

        self.assertEqual(json.loads(response.body), {
            "command": "draw",
            "error": {
                'code': 42,
                'data': 'Negative seed -1.',
                'message': 'There is some custom problem.'
            }
        })
        self.assertEqual(response.exit_code, 42)
