import json
import sys
import unittest
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / 'src'))

from expression_parser import parse_poly
from mu_coefficients import mu_linear, mu_one
from nc_algebra import NC_ONE, SphereForm
from projectors import (
    PROJECTOR_SCHEMA,
    SphereMatrix,
    compare_with_reference,
    export_projector,
    import_projector,
    latex_entry,
    projector,
    projector_document,
    reference_matrix,
    theta_conjugate,
    to_sphere_form,
    trace,
    trace_symmetry,
    verify_projector,
)


def failed(records):
    return [(r['condition'], r['parameter'], r['residual']) for r in records if not r['pass']]


class ConstructionTests(unittest.TestCase):
    def test_charge_zero_is_the_unit(self):
        p = projector(0)
        self.assertEqual(1, p.size)
        self.assertEqual(NC_ONE, p.entry(0, 0))

    def test_charge_one_entries(self):
        p = projector(1)
        expected = [['a * a*', 'a * b*'], ['b * a*', 'b * b*']]
        for k in range(2):
            for l in range(2):
                self.assertEqual(parse_poly(expected[k][l]), p.entry(k, l))

    def test_charge_minus_one_entries(self):
        p = projector(-1)
        self.assertEqual(parse_poly('(1 - mu) * a* * a'), p.entry(0, 0))
        self.assertEqual(parse_poly('(1 - mu) * b* * b'), p.entry(1, 1))

    def test_traces(self):
        self.assertEqual(mu_linear(1) * NC_ONE, trace(1))
        self.assertEqual(mu_linear(-1) * NC_ONE, trace(-1))
        self.assertEqual(mu_linear(3) * NC_ONE, trace(3))
        self.assertEqual(NC_ONE, trace(0))


class ProjectorPropertyTests(unittest.TestCase):
    def test_hermitian_idempotents(self):
        for n in (0, 1, -1, 2, -2):
            records = verify_projector(n)
            self.assertEqual(4, len(records))
            self.assertEqual([], failed(records), f"n={n}")

    def test_explicit_low_charge_matrices(self):
        for n in (1, -1, 2, -2):
            self.assertEqual([], failed(compare_with_reference(n)), f"n={n}")

    def test_unknown_reference_charge(self):
        with self.assertRaises(ValueError):
            reference_matrix(3)

    def test_theta_exchanges_opposite_charges(self):
        for n in (1, 2):
            records = theta_conjugate(n)
            self.assertEqual((n + 1) ** 2, len(records))
            self.assertEqual([], failed(records))

    def test_trace_symmetry(self):
        for n in (1, 2, 3):
            self.assertTrue(trace_symmetry(n)['pass'])


class SphereFormTests(unittest.TestCase):
    def test_charge_one_in_sphere_generators(self):
        sm = to_sphere_form(1)
        self.assertEqual(SphereForm({(0, 1, 0): mu_one()}), sm.entries[0][1])
        self.assertEqual(SphereForm({(0, 0, 1): mu_one()}), sm.entries[1][0])
        self.assertEqual((), sm.factor_indices)

    def test_charge_two_needs_the_first_inverse_factor(self):
        self.assertIn(1, to_sphere_form(2).factor_indices)
        self.assertIn(-1, to_sphere_form(-2).factor_indices)

    def test_bound_is_enforced(self):
        with self.assertRaises(ValueError):
            to_sphere_form(5, max_charge=4)

    def test_hash_agrees_with_equality(self):
        sm = to_sphere_form(2)
        same = SphereMatrix(sm.charge, sm.entries, sm.factor_indices)
        other = SphereMatrix(sm.charge, sm.entries, sm.factor_indices + (7,))
        self.assertEqual(sm, same)
        self.assertEqual(hash(sm), hash(same))
        self.assertNotEqual(sm, other)
        self.assertNotEqual(hash(sm), hash(other))
        self.assertEqual(2, len({sm, same, other}))


class ExportTests(unittest.TestCase):
    def test_word_document_round_trip(self):
        document = json.loads(export_projector(2))
        self.assertEqual(PROJECTOR_SCHEMA, document['schema'])
        self.assertEqual(3, document['size'])
        self.assertEqual(projector(2), import_projector(document))

    def test_sphere_document_round_trip(self):
        document = json.loads(json.dumps(projector_document(-1, 'sphere')))
        self.assertEqual(to_sphere_form(-1), import_projector(document))

    def test_import_rejects_other_schemas(self):
        document = projector_document(1)
        document['schema'] = 'qcontact-projector/0'
        with self.assertRaises(ValueError):
            import_projector(document)

    def test_import_rejects_ragged_entries(self):
        document = projector_document(1)
        document['entries'][1] = document['entries'][1][:1]
        with self.assertRaises(ValueError):
            import_projector(document)

    def test_export_is_deterministic(self):
        self.assertEqual(export_projector(2), export_projector(2))
        self.assertEqual(export_projector(-2, 'text', 'sphere'), export_projector(-2, 'text', 'sphere'))

    def test_latex_output(self):
        text = export_projector(1, 'latex', 'sphere')
        self.assertIn('\\begin{array}{cc}', text)
        self.assertIn('Z^{\\ast}', text)
        self.assertEqual('(a^{\\ast})^{2} b', latex_entry('a*^2 * b'))
        self.assertEqual('\\frac{1}{2} \\mu', latex_entry('1/2 * mu'))
        self.assertEqual('(1+2*\\mu)^{-1}', latex_entry('inv(1+2*mu)'))

    def test_unknown_format_and_basis(self):
        with self.assertRaises(ValueError):
            export_projector(1, 'yaml')
        with self.assertRaises(ValueError):
            projector_document(1, 'polar')


if __name__ == '__main__':
    unittest.main()
