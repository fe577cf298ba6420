import random
import sys
import unittest
from fractions import Fraction
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / 'src'))

from mu_coefficients import (
    ExactScalar,
    NotInvertible,
    SingularEvaluation,
    format_mu,
    is_unit,
    mu_add,
    mu_constant,
    mu_eval,
    mu_from_json,
    mu_inverse,
    mu_linear,
    mu_mul,
    mu_one,
    mu_power,
    mu_rt,
    mu_shift,
    mu_sqrt_linear,
    mu_to_json,
    negate_mu,
    pair_embed,
    subst_minus,
    subst_plus,
)

INDICES = [-3, -2, -1, 1, 2, 3]


def random_factor(rng):
    choice = rng.randrange(5)
    if choice == 0:
        return mu_constant(Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 3)))
    if choice == 1:
        return mu_power(rng.choice([-1, 1, 2]))
    if choice == 2:
        return mu_linear(rng.choice(INDICES), rng.choice([-1, 1]))
    if choice == 3:
        return mu_sqrt_linear(rng.choice(INDICES))
    return mu_rt(rng.choice([2, 3]))


def random_scalar(rng):
    """Sum of one to three products of one or two ring generators."""
    total = mu_constant(0)
    for _ in range(rng.randint(1, 3)):
        term = random_factor(rng)
        if rng.random() < 0.5:
            term = term * random_factor(rng)
        total = total + term
    return total


def random_point(rng):
    """Small positive mu where every factor 1+k*mu with |k| <= 4 is positive."""
    return Fraction(rng.randint(1, 9), 100)


class ExactScalarTests(unittest.TestCase):
    def test_square_roots_are_split_into_squarefree_part(self):
        self.assertEqual(ExactScalar(((3, 2),)), ExactScalar.sqrt_of(12))
        self.assertEqual(ExactScalar.rational(3), ExactScalar.sqrt_of(9))

    def test_products_of_roots_become_rational(self):
        self.assertEqual(mu_constant(2), mu_rt(2) * mu_rt(2))
        self.assertEqual(mu_rt(6), mu_rt(2) * mu_rt(3))

    def test_inverse_of_single_root(self):
        half_root = ExactScalar(((2, Fraction(1, 2)),))
        self.assertEqual(ExactScalar.rational(1), ExactScalar.sqrt_of(2) * half_root)
        self.assertEqual(half_root, ExactScalar.sqrt_of(2).inverse())


class MuScalarArithmeticTests(unittest.TestCase):
    def test_linear_factor_cancels_its_inverse(self):
        self.assertEqual(mu_one(), mu_linear(2, -1) * mu_linear(2))
        self.assertEqual(mu_linear(-3), mu_linear(-3, -2) * mu_linear(-3, 3))

    def test_squared_root_is_the_linear_factor(self):
        self.assertEqual(mu_linear(1), mu_sqrt_linear(1) * mu_sqrt_linear(1))

    def test_one_minus_mu_equals_linear_factor(self):
        self.assertEqual(mu_linear(-1), mu_one() - mu_power(1))

    def test_sum_over_common_denominator_reduces(self):
        total = mu_linear(1, -1) + mu_power(1) * mu_linear(1, -1)
        self.assertEqual(mu_one(), total)

    def test_inverse_of_units(self):
        self.assertEqual(mu_linear(3, -1), mu_inverse(mu_linear(3)))
        self.assertEqual(mu_power(-2) * mu_constant(Fraction(1, 2)),
                         mu_inverse(mu_power(2) * 2))
        unit = mu_linear(1) * mu_linear(-2) * mu_power(1)
        self.assertEqual(mu_one(), unit * mu_inverse(unit))

    def test_non_units_are_rejected(self):
        with self.assertRaises(NotInvertible):
            mu_inverse(mu_constant(2) + mu_power(1) * 3)
        self.assertFalse(is_unit(mu_one() + mu_power(2)))
        self.assertTrue(is_unit(mu_sqrt_linear(2)))


class MuScalarMapTests(unittest.TestCase):
    def test_shift_of_mu(self):
        self.assertEqual(mu_power(1) * mu_linear(1, -1), subst_plus(mu_power(1)))
        self.assertEqual(mu_power(1) * mu_linear(-1, -1), subst_minus(mu_power(1)))

    def test_shift_of_linear_factor(self):
        # 1 + 2 mu/(1+mu) = (1+3mu)/(1+mu)
        self.assertEqual(mu_linear(3) * mu_linear(1, -1), mu_shift(mu_linear(2), 1))

    def test_shifts_compose_additively(self):
        s = mu_linear(2, -1) + mu_power(2) * 5
        self.assertEqual(s, subst_minus(subst_plus(s)))
        self.assertEqual(mu_shift(s, 3), mu_shift(mu_shift(s, 1), 2))

    def test_negate_mu(self):
        self.assertEqual(-mu_power(1), negate_mu(mu_power(1)))
        self.assertEqual(mu_linear(-2), negate_mu(mu_linear(2)))
        self.assertEqual(mu_linear(-3, -1), negate_mu(mu_linear(3, -1)))
        self.assertEqual(mu_sqrt_linear(-1), negate_mu(mu_sqrt_linear(1)))

    def test_negate_mu_is_an_involution(self):
        s = mu_linear(2, -1) * mu_sqrt_linear(-1) + mu_power(-1)
        self.assertEqual(s, negate_mu(negate_mu(s)))


class MuEvaluationTests(unittest.TestCase):
    def test_evaluates_rational_functions(self):
        self.assertAlmostEqual(1.5, mu_eval(mu_linear(1), Fraction(1, 2)))
        self.assertAlmostEqual(0.5, mu_eval(mu_linear(2, -1), Fraction(1, 2)))

    def test_vanishing_denominator_names_the_factor(self):
        with self.assertRaises(SingularEvaluation) as ctx:
            mu_eval(mu_linear(2, -1), Fraction(-1, 2))
        self.assertEqual(2, ctx.exception.k)

    def test_negative_radicand_is_singular(self):
        with self.assertRaises(SingularEvaluation):
            mu_eval(mu_sqrt_linear(-2), Fraction(1))

    def test_numerator_with_missing_middle_coefficient(self):
        self.assertAlmostEqual(1.25, mu_eval(mu_one() + mu_power(2), Fraction(1, 2)))
        self.assertAlmostEqual(0.0, mu_eval(mu_constant(0), Fraction(1, 2)))
        self.assertIsInstance(float(ExactScalar(())), float)


class MuRingPropertyTests(unittest.TestCase):
    def test_ring_axioms(self):
        rng = random.Random(41)
        zero, one = mu_constant(0), mu_one()
        for _ in range(60):
            s, t, r = random_scalar(rng), random_scalar(rng), random_scalar(rng)
            self.assertEqual(mu_add(mu_add(s, t), r), mu_add(s, mu_add(t, r)))
            self.assertEqual(mu_mul(mu_mul(s, t), r), mu_mul(s, mu_mul(t, r)))
            self.assertEqual(mu_add(s, t), mu_add(t, s))
            self.assertEqual(mu_mul(s, t), mu_mul(t, s))
            self.assertEqual(mu_mul(s, mu_add(t, r)), mu_add(mu_mul(s, t), mu_mul(s, r)))
            self.assertEqual(s, mu_add(s, zero))
            self.assertEqual(s, mu_mul(s, one))
            self.assertEqual(zero, mu_add(s, -s))

    def test_substitutions_are_inverse_homomorphisms(self):
        rng = random.Random(43)
        for _ in range(40):
            s, t = random_scalar(rng), random_scalar(rng)
            self.assertEqual(subst_plus(s) + subst_plus(t), subst_plus(s + t))
            self.assertEqual(subst_plus(s) * subst_plus(t), subst_plus(s * t))
            self.assertEqual(subst_minus(s) * subst_minus(t), subst_minus(s * t))
            self.assertEqual(s, subst_minus(subst_plus(s)))
            self.assertEqual(s, subst_plus(subst_minus(s)))

    def test_negate_mu_is_an_involutive_homomorphism(self):
        rng = random.Random(47)
        for _ in range(40):
            s, t = random_scalar(rng), random_scalar(rng)
            self.assertEqual(s, negate_mu(negate_mu(s)))
            self.assertEqual(negate_mu(s) + negate_mu(t), negate_mu(s + t))
            self.assertEqual(negate_mu(s) * negate_mu(t), negate_mu(s * t))

    def assertClose(self, expected, actual):
        self.assertLessEqual(abs(expected - actual), 1e-9 * max(1.0, abs(expected)))

    def test_evaluation_agrees_with_ring_operations(self):
        rng = random.Random(53)
        for _ in range(60):
            s, t = random_scalar(rng), random_scalar(rng)
            x = random_point(rng)
            vs, vt = mu_eval(s, x), mu_eval(t, x)
            self.assertClose(vs + vt, mu_eval(s + t, x))
            self.assertClose(vs * vt, mu_eval(s * t, x))
            self.assertClose(mu_eval(s, -x), mu_eval(negate_mu(s), x))
            self.assertClose(mu_eval(s, x / (1 + x)), mu_eval(subst_plus(s), x))

    def test_equal_scalars_evaluate_equal(self):
        rng = random.Random(59)
        for _ in range(40):
            s, t, r = random_scalar(rng), random_scalar(rng), random_scalar(rng)
            left, right = (s + t) * r, s * r + t * r
            self.assertEqual(left, right)
            points = [random_point(rng) for _ in range(3)]
            for x in points:
                self.assertClose(mu_eval(left, x), mu_eval(right, x))
            if s != t:
                gaps = [abs(mu_eval(s, x) - mu_eval(t, x)) for x in points]
                self.assertGreater(max(gaps), 1e-12)


class MuFormattingTests(unittest.TestCase):
    def test_canonical_text(self):
        self.assertEqual('inv(1+2*mu)', format_mu(mu_linear(2, -1)))
        self.assertEqual('1 + mu', format_mu(mu_linear(1)))
        self.assertEqual('1 - mu', format_mu(mu_linear(-1)))
        self.assertEqual('0', format_mu(mu_constant(0)))

    def test_json_round_trip(self):
        s = (mu_linear(2, -1) * mu_sqrt_linear(-1) * mu_rt(2)
             + mu_power(-1) * mu_constant(Fraction(3, 4)))
        self.assertEqual(s, mu_from_json(mu_to_json(s)))

    def test_json_rejects_non_squarefree_roots(self):
        data = [{'sqrt': [], 'numerator': [[[4, '1']]], 'mu_power': 0, 'denominator': []}]
        with self.assertRaises(ValueError):
            mu_from_json(data)


class PairScalarTests(unittest.TestCase):
    def test_real_constants_move_between_legs(self):
        self.assertEqual(pair_embed(mu_constant(2), mu_one()),
                         pair_embed(mu_one(), mu_constant(2)))

    def test_mu_does_not_move_between_legs(self):
        self.assertNotEqual(pair_embed(mu_power(1), mu_one()),
                            pair_embed(mu_one(), mu_power(1)))


if __name__ == '__main__':
    unittest.main()
