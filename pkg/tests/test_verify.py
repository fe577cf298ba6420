import io
import json
import sys
import unittest
from contextlib import redirect_stderr, redirect_stdout
from pathlib import Path
from unittest.mock import patch

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / 'src'))

import verify


def run(argv):
    """Exit code and captured stdout/stderr of one CLI call."""
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = verify.main(argv)
    return code, out.getvalue(), err.getvalue()


class NormalizeCommandTests(unittest.TestCase):
    def test_prints_the_normal_form(self):
        code, out, _ = run(['normalize', 'a * a* + b * b*'])
        self.assertEqual(0, code)
        self.assertEqual('1 + mu', out.strip())

    def test_sphere_basis(self):
        code, out, _ = run(['normalize', 'a * a* - 1/2 * (1 + mu)', '--basis', 'sphere'])
        self.assertEqual(0, code)
        self.assertEqual('X', out.strip())

    def test_json_document(self):
        code, out, _ = run(['normalize', 'b* * a*', '--format', 'json'])
        self.assertEqual(0, code)
        document = json.loads(out)
        self.assertEqual(verify.POLY_SCHEMA, document['schema'])
        self.assertEqual('a* * b*', document['text'])

    def test_syntax_error_is_a_usage_error(self):
        code, _, err = run(['normalize', 'a + * b'])
        self.assertEqual(2, code)
        self.assertIn('column 5', err)

    def test_compact_star_notation(self):
        code, out, _ = run(['normalize', 'a*a + b*b'])
        self.assertEqual(0, code)
        self.assertEqual('1', out.strip())

    def test_zero_denominator_is_a_usage_error(self):
        code, _, err = run(['normalize', '1/0*a'])
        self.assertEqual(2, code)
        self.assertIn('division by zero', err)
        self.assertNotIn('Fatal error', err)

    def test_negative_power_of_generator_is_a_usage_error(self):
        code, _, err = run(['normalize', 'a^-1'])
        self.assertEqual(2, code)
        self.assertIn('column 2', err)

    def test_sphere_basis_needs_degree_zero(self):
        code, _, _ = run(['normalize', 'a', '--basis', 'sphere'])
        self.assertEqual(2, code)


class CheckCommandTests(unittest.TestCase):
    def test_verify_projector_passes(self):
        code, out, _ = run(['verify-projector', '--charge', '1'])
        self.assertEqual(0, code)
        self.assertIn('verify-projector: 8/8 checks passed', out)

    def test_symmetry_report_as_json(self):
        code, out, _ = run(['symmetry', '--charge', '1', '--format', 'json'])
        self.assertEqual(0, code)
        document = json.loads(out)
        self.assertEqual(verify.REPORT_SCHEMA, document['schema'])
        self.assertTrue(document['passed'])
        self.assertEqual(5, len(document['records']))
        self.assertEqual({'condition', 'parameter', 'pass', 'residual'}, set(document['records'][0]))

    def test_rep_check_passes(self):
        code, _, _ = run(['rep-check', '--dim', '3', '--sigma', '1', '--charge', '2'])
        self.assertEqual(0, code)

    def test_singular_representation(self):
        code, _, err = run(['rep-check', '--dim', '1', '--sigma', '-1', '--charge', '2'])
        self.assertEqual(3, code)
        self.assertIn('Singular evaluation', err)

    def test_chern_value(self):
        code, out, _ = run(['chern', '--charge', '1', '--grid', '60', '--format', 'json'])
        self.assertEqual(0, code)
        self.assertAlmostEqual(-1.0, json.loads(out)['value'], delta=1e-3)


class UsageTests(unittest.TestCase):
    def test_charge_above_bound(self):
        code, _, err = run(['projector', '--charge', '9'])
        self.assertEqual(2, code)
        self.assertIn('--charge', err)

    def test_latex_only_for_projector(self):
        code, _, _ = run(['verify-projector', '--charge', '1', '--format', 'latex'])
        self.assertEqual(2, code)

    def test_grid_bounds(self):
        code, _, _ = run(['chern', '--charge', '1', '--grid', '2'])
        self.assertEqual(2, code)

    def test_unknown_command_exits_with_usage_code(self):
        with self.assertRaises(SystemExit) as ctx:
            run(['frobnicate'])
        self.assertEqual(2, ctx.exception.code)

    def test_projector_latex_export(self):
        code, out, _ = run(['projector', '--charge', '1', '--basis', 'sphere', '--format', 'latex'])
        self.assertEqual(0, code)
        self.assertIn('\\begin{array}{cc}', out)


class SuiteTests(unittest.TestCase):
    def test_quick_suite_covers_every_group(self):
        functions = {function.__name__ for function, _ in verify.suite_tasks('quick')}
        self.assertEqual({'relation_checks', 'galois_checks', 'connection_checks',
                          'projector_checks', 'symmetry_checks', 'rep_checks', 'chern_checks'},
                         functions)

    def test_worker_count_does_not_change_the_report(self):
        tasks = [(verify.projector_checks, (1,)), (verify.symmetry_checks, (2,)),
                 (verify.rep_checks, (2, 1, [0, 1]))]
        with patch.object(verify, 'suite_tasks', return_value=tasks):
            serial = verify.run_suite('quick', workers=1)
            parallel = verify.run_suite('quick', workers=2)
        self.assertEqual(serial, parallel)
        self.assertTrue(all(r['pass'] for r in serial))

    def test_trivial_bundle_chern_number_is_exact(self):
        records = verify.chern_checks([0], 40)
        self.assertTrue(records[0]['pass'])
        with patch.object(verify, 'orientation_constant', return_value=(-1, -1.0)), \
                patch.object(verify, 'classical_chern', return_value=1e-6):
            records = verify.chern_checks([0, 1], 40)
        self.assertEqual([False, False], [r['pass'] for r in records])
        with patch.object(verify, 'orientation_constant', return_value=(-1, -1.0)), \
                patch.object(verify, 'classical_chern', return_value=-1 + 1e-6):
            records = verify.chern_checks([1], 40)
        self.assertTrue(records[0]['pass'])

    def test_singular_charges_are_expected_to_raise(self):
        records = verify.rep_checks(1, -1, [2])
        singular = [r for r in records if r['condition'].startswith('singular combination')]
        self.assertEqual(1, len(singular))
        self.assertTrue(singular[0]['pass'])


if __name__ == '__main__':
    unittest.main()
