import contextlib
import io
import json
import os
import tempfile
import unittest

from radialchannels import cli


def run(*argv):
    stdout, stderr = io.StringIO(), io.StringIO()

    with contextlib.redirect_stdout(stdout), contextlib.redirect_stderr(stderr):
        status = cli.main(list(argv))

    return status, stdout.getvalue(), stderr.getvalue()


class AnalyzeCommandTest(unittest.TestCase):
    def test_dephasing(self):
        status, out, _ = run('analyze', '--dephasing', '0.25')
        report = json.loads(out)

        self.assertEqual(status, 0)
        self.assertAlmostEqual(report['c_ea'], 1.188722, delta=1e-6)
        self.assertEqual(report['N'], 2)

    def test_radial_profile(self):
        status, out, _ = run('analyze', '--radial', '1,0,0', '--n', '2')

        self.assertEqual(status, 0)
        self.assertAlmostEqual(json.loads(out)['c_ea'], 0.0, delta=1e-12)

    def test_non_channel(self):
        status, out, _ = run('analyze', '--radial', '1,-2,1')
        report = json.loads(out)

        self.assertEqual(status, 0)
        self.assertFalse(report['cp'])
        self.assertIsNone(report['c_ea'])
        self.assertIsNone(report['hcb_min_matrix_trace'])

    def test_unavailable_field_exit_status(self):
        status, out, err = run('analyze', '--radial', '1,-2,1', '--fields', 'c_ea')

        self.assertEqual(status, 3)
        self.assertEqual(out, '')
        self.assertIn('unavailable', err)

    def test_odd_n_field_exit_status(self):
        status, _, _ = run('analyze', '--radial', '1,0.5,0.25,0.1', '--fields', 'hcb_min_matrix_trace')

        self.assertEqual(status, 3)

    def test_negative_leading_value(self):
        status, out, _ = run('analyze', '--radial=-1,0,0', '--fields', 'n,tp')

        self.assertEqual(status, 0)
        self.assertEqual(json.loads(out), {'n': 2, 'tp': False})

    def test_tensor(self):
        status, out, _ = run('analyze', '--tensor', 'dephasing:0.25', 'dephasing:0.25', '--fields', 'c_ea,n')
        report = json.loads(out)

        self.assertEqual(status, 0)
        self.assertEqual(report['n'], 4)
        self.assertAlmostEqual(report['c_ea'], 2 * 1.188721875540867, delta=1e-10)

    def test_table_format(self):
        status, out, _ = run('analyze', '--ou', '2', '1', '--format', 'table')

        self.assertEqual(status, 0)
        self.assertTrue(out.startswith('n'))
        self.assertIn('lp_norms.inf', out)

    def test_output_is_deterministic(self):
        self.assertEqual(run('analyze', '--dephasing', '0.1')[1], run('analyze', '--dephasing', '0.1')[1])

    def test_out_file(self):
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, 'report.json')
            status, out, _ = run('analyze', '--dephasing', '0.25', '--out', path)

            self.assertEqual(status, 0)
            self.assertEqual(out, '')

            with open(path) as handle:
                self.assertAlmostEqual(json.load(handle)['c_ea'], 1.188722, delta=1e-6)


class ErrorStatusTest(unittest.TestCase):
    def test_unwritable_out(self):
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, 'missing', 'report.json')
            status, out, err = run('analyze', '--dephasing', '0.25', '--out', path)

        self.assertEqual(status, 3)
        self.assertEqual(out, '')
        self.assertIn('"code": 3', err)
        self.assertIn('Cannot write', err)

    def test_parse_error(self):
        status, out, err = run('analyze', '--spec', 'dephasing:abc')

        self.assertEqual(status, 2)
        self.assertEqual(out, '')
        self.assertIn('"code": 2', err)

    def test_invalid_parameter(self):
        status, _, err = run('analyze', '--dephasing', '1.5')

        self.assertEqual(status, 3)
        self.assertIn('"code": 3', err)

    def test_debug_output(self):
        _, _, err = run('analyze', '--dephasing', '1.5', '--debug')

        self.assertIn('"_exception"', err)


class VerifyCommandTest(unittest.TestCase):
    def test_dephasing(self):
        status, out, _ = run('verify', '--dephasing', '0.3', '--seed', '7', '--restarts', '4')

        self.assertEqual(status, 0)
        self.assertTrue(json.loads(out)['passed'])

    def test_table_format(self):
        status, out, _ = run('verify', '--dephasing', '0.3', '--restarts', '2', '--format', 'table')

        self.assertEqual(status, 0)
        self.assertTrue(out.startswith('check'))
        self.assertIn('coassociativity', out)

    def test_odd_n(self):
        self.assertEqual(run('verify', '--radial', '1,0.5,0.25,0.1')[0], 3)


class SweepCommandTest(unittest.TestCase):
    def test_csv_on_stdout(self):
        status, out, _ = run('sweep', 'dephasing', '--grid', '0,0.5,1')
        lines = out.splitlines()

        self.assertEqual(status, 0)
        self.assertEqual(lines[0], 't,c_ea,hcb_min_tr,q1_lb')
        self.assertEqual([line.split(',')[1] for line in lines[1:]], ['2', '1', '2'])

    def test_out_file(self):
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, 'ou.csv')
            status, out, _ = run('sweep', 'ou', '--n', '2', '--grid', '0,20', '--out', path)

            self.assertEqual(status, 0)
            self.assertEqual(out, '')

            with open(path) as handle:
                rows = [line.split(',') for line in handle.read().splitlines()]

            self.assertEqual(rows[0], ['t', 'c_ea', 'hcb_min_tr', 'q1_lb'])
            self.assertAlmostEqual(float(rows[1][1]), 2.0, delta=1e-12)
            self.assertLess(float(rows[2][1]), 1e-9)


class WalshCommandTest(unittest.TestCase):
    def test_dephasing(self):
        status, out, _ = run('walsh', '--dephasing', '0.25')
        rows = json.loads(out)['rows']

        self.assertEqual(status, 0)
        self.assertEqual([row['signs'] for row in rows], [[1, 1], [-1, 1], [1, -1], [-1, -1]])

        for row, value in zip(rows, [3.0, 0.0, 0.0, 1.0]):
            self.assertAlmostEqual(row['value'], value, delta=1e-14)

    def test_table_format(self):
        status, out, _ = run('walsh', '--spec', 'radial:2:1,0,0', '--format', 'table')
        lines = out.splitlines()

        self.assertEqual(status, 0)
        self.assertEqual(lines[0].split(), ['mask', 'signs', 'value'])
        self.assertEqual(lines[4].split(), ['3', '-1', '-1', '1'])

    def test_size_limit(self):
        self.assertEqual(run('walsh', '--ou', '22', '1')[0], 3)
