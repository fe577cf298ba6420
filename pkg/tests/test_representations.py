import sys
import unittest
from fractions import Fraction
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / 'src'))

from mu_coefficients import SingularEvaluation, mu_linear, mu_one, mu_power
from nc_algebra import SphereForm
from representations import (
    ClassicalPoint,
    build_rep,
    check_rep_relations,
    classical_chern,
    classical_point_check,
    eval_projector,
    eval_sphere_form,
    orientation_constant,
    rep_projector_check,
    singular_combinations,
)


def failed(records):
    return [(r['condition'], r['parameter'], r['residual']) for r in records if not r['pass']]


class RepresentationTests(unittest.TestCase):
    def test_two_dimensional_matrices(self):
        rep = build_rep(2, 1)
        np.testing.assert_allclose(np.diag([-0.25, 0.25]), rep.X.real)
        self.assertAlmostEqual(0.5, rep.Z[0, 1].real)
        self.assertEqual(0, rep.Z[1, 0])
        self.assertEqual(Fraction(1, 2), rep.mu_value)

    def test_one_dimensional_representation(self):
        rep = build_rep(1, -1)
        self.assertEqual((1, 1), rep.Z.shape)
        self.assertEqual(0, rep.Z[0, 0])
        self.assertEqual(Fraction(-1), rep.mu_value)

    def test_invalid_parameters(self):
        with self.assertRaises(ValueError):
            build_rep(0, 1)
        with self.assertRaises(ValueError):
            build_rep(3, 2)

    def test_relations_hold(self):
        for N in range(1, 9):
            for sigma in (1, -1):
                records = check_rep_relations(build_rep(N, sigma))
                self.assertEqual([], failed(records), f"N={N} sigma={sigma}")

    def test_casimir_value(self):
        rep = build_rep(2, 1)
        casimir = rep.X @ rep.X + (rep.Z @ rep.Z_star + rep.Z_star @ rep.Z) / 2
        np.testing.assert_allclose(np.eye(2) * 3 / 16, casimir.real, atol=1e-12)


class ProjectorEvaluationTests(unittest.TestCase):
    def test_generator_evaluation(self):
        rep = build_rep(3, 1)
        np.testing.assert_allclose(rep.X, eval_sphere_form(rep, SphereForm({(1, 0, 0): mu_one()})))

    def test_coefficient_with_sparse_numerator(self):
        rep = build_rep(2, 1)
        sf = SphereForm({(1, 0, 0): mu_one() + mu_power(2)})
        np.testing.assert_allclose(1.25 * rep.X, eval_sphere_form(rep, sf))

    def test_vanishing_factor_is_singular(self):
        rep = build_rep(2, -1)
        with self.assertRaises(SingularEvaluation):
            eval_sphere_form(rep, SphereForm({(0, 0, 0): mu_linear(2, -1)}))

    def test_projector_block_shape(self):
        self.assertEqual((6, 6), eval_projector(build_rep(3, 1), 1).shape)

    def test_projectors_in_representations(self):
        for N, sigma, n in ((2, 1, 1), (3, 1, 2), (4, -1, -2), (5, 1, -1)):
            records = rep_projector_check(build_rep(N, sigma), n)
            self.assertEqual(4, len(records))
            self.assertEqual([], failed(records), f"N={N} sigma={sigma} n={n}")

    def test_numeric_trace_per_dimension(self):
        P = eval_projector(build_rep(2, 1), 1)
        self.assertAlmostEqual(1.5, np.trace(P).real / 2)

    def test_singular_combinations(self):
        found = singular_combinations([2], [1, 2, 3])
        self.assertIn({'N': 1, 'sigma': -1, 'n': 2, 'k': 1}, found)
        for combination in found:
            self.assertEqual(0, 1 + Fraction(combination['k'] * combination['sigma'], combination['N']))

    def test_singular_projector_raises(self):
        with self.assertRaises(SingularEvaluation):
            rep_projector_check(build_rep(1, -1), 2)


class ClassicalLimitTests(unittest.TestCase):
    def test_points_must_lie_on_the_sphere(self):
        with self.assertRaises(ValueError):
            ClassicalPoint(0.5, 0.5)

    def test_projector_at_a_point(self):
        point = ClassicalPoint.from_angles(0.7, 1.3)
        for n in (1, -1, 2, -2):
            self.assertEqual([], failed(classical_point_check(n, point)), f"n={n}")

    def test_chern_numbers(self):
        self.assertAlmostEqual(-1.0, classical_chern(1, 100), delta=1e-3)
        self.assertAlmostEqual(1.0, classical_chern(-1, 100), delta=1e-3)
        self.assertAlmostEqual(-2.0, classical_chern(2, 100), delta=1e-3)
        self.assertAlmostEqual(0.0, classical_chern(0, 40), delta=1e-12)

    def test_orientation_constant(self):
        c, deviation = orientation_constant(n_max=2, grid_resolution=80)
        self.assertEqual(-1, c)
        self.assertLess(deviation, 1e-3)


if __name__ == '__main__':
    unittest.main()
