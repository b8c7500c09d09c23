import math
import unittest

from radialchannels import channelspec
from radialchannels.channelspec import ChannelSpec, parse_csv, parse_spec
from radialchannels.errors import DimensionError, SpecParseError


class ParseCsvTest(unittest.TestCase):
    def test_numbers(self):
        self.assertEqual(parse_csv('1,0.5, 0'), (1.0, 0.5, 0.0))
        self.assertEqual(parse_csv('2,inf'), (2.0, math.inf))

    def test_invalid(self):
        for text in ('', '1,,2', '1,a', ' '):
            self.assertRaises(SpecParseError, parse_csv, text)


class ParseSpecTest(unittest.TestCase):
    def test_radial(self):
        spec = parse_spec('radial:2:1,0.5,1')

        self.assertEqual(spec.kind, channelspec.RADIAL)
        self.assertEqual(spec.n, 2)
        self.assertEqual(spec.params, (1.0, 0.5, 1.0))

    def test_dephasing_and_ou(self):
        self.assertEqual(parse_spec('dephasing:0.25'), ChannelSpec.dephasing(0.25))
        self.assertEqual(parse_spec(' ou:4:0.5 '), ChannelSpec.ou(4, 0.5))

    def test_nested_tensor(self):
        spec = parse_spec('tensor(dephasing:0.1;tensor(ou:2:1;radial:2:1,0,0))')

        self.assertEqual(spec.kind, channelspec.TENSOR)
        self.assertEqual(spec.n, 6)
        self.assertEqual(spec.params[0], ChannelSpec.dephasing(0.1))
        self.assertEqual(spec.params[1].params, (ChannelSpec.ou(2, 1.0), ChannelSpec.radial([1, 0, 0])))

    def test_printing_parses_back(self):
        texts = [
            'radial:2:1,0.5,1', 'dephasing:0.1', 'ou:4:0.3333333333333333',
            'tensor(dephasing:0.1;tensor(ou:2:1;radial:2:1,0,0))',
        ]

        for text in texts:
            spec = parse_spec(text)

            self.assertEqual(parse_spec(str(spec)), spec)
            self.assertEqual(hash(parse_spec(str(spec))), hash(spec))

    def test_printed_form(self):
        self.assertEqual(str(parse_spec('dephasing:.25')), 'dephasing:0.25')
        self.assertEqual(str(parse_spec('tensor(ou:2:1;dephasing:0)')), 'tensor(ou:2:1.0;dephasing:0.0)')
        self.assertEqual(repr(ChannelSpec.dephasing(0.5)), "ChannelSpec('dephasing:0.5')")

    def test_errors(self):
        texts = [
            '', 'radial', 'radial:2', 'radial:x:1,0,0', 'radial:2:1,a,0', 'dephasing', 'dephasing:abc',
            'ou:2', 'ou:2.5:1', 'gauss:2:1', 'tensor(dephasing:0.1', 'tensor(dephasing:0.1)',
            'tensor(dephasing:0.1;)',
        ]

        for text in texts:
            with self.assertRaises(SpecParseError, msg=text):
                parse_spec(text)

    def test_not_a_string(self):
        self.assertRaises(SpecParseError, parse_spec, 3)

    def test_unknown_kind(self):
        self.assertRaises(SpecParseError, ChannelSpec, 'gauss', 2, ())


class ResolveTest(unittest.TestCase):
    def test_resolve(self):
        ch = parse_spec('tensor(dephasing:0.1;ou:2:1)').resolve()

        self.assertEqual(ch.n, 4)
        self.assertEqual(ch.N, 4)

    def test_length_mismatch_is_a_dimension_error(self):
        self.assertRaises(DimensionError, parse_spec('radial:4:1,0.5,0').resolve)
