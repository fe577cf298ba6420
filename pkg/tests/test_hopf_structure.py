import sys
import unittest
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / 'src'))

from expression_parser import parse_poly, parse_tensor_terms
from hopf_structure import (
    H_ONE,
    HLaurent,
    HTensor,
    TensorHP,
    TensorPH,
    TensorPP,
    ad,
    coact_left,
    coact_right,
    diag_coact,
    format_tensor_pp,
    h_antipode,
    h_coproduct,
    h_counit,
    is_coinvariant,
    multiply_pp,
    universal_d,
    verify_coaction,
    verify_hopf_axioms,
)
from mu_coefficients import ExactScalar
from nc_algebra import NC_ZERO, sphere_generator


class LaurentHopfTests(unittest.TestCase):
    def test_group_like_generators(self):
        self.assertEqual(HTensor({(2, 2): 1}), h_coproduct(HLaurent.power(2)))
        self.assertEqual(ExactScalar.rational(1), h_counit(HLaurent.power(-5)))
        self.assertEqual(HLaurent.power(-3), h_antipode(HLaurent.power(3)))

    def test_adjoint_coaction_is_trivial_on_the_second_leg(self):
        self.assertEqual(HTensor({(3, 0): 1}), ad(HLaurent.power(3)))

    def test_axioms_hold_on_samples(self):
        samples = [H_ONE, HLaurent.power(1), HLaurent.power(-2, 3),
                   HLaurent.power(2) + HLaurent.power(-1, -1)]
        records = verify_hopf_axioms(samples)
        self.assertEqual(6 * len(samples), len(records))
        self.assertEqual([], [r['condition'] for r in records if not r['pass']])


class CoactionTests(unittest.TestCase):
    def test_generators_are_homogeneous(self):
        a = parse_poly('a')
        self.assertEqual(TensorPH({1: a}), coact_right(a))
        self.assertEqual(TensorHP({-1: a}), coact_left(a))
        b_star = parse_poly('b*')
        self.assertEqual(TensorPH({-1: b_star}), coact_right(b_star))

    def test_mixed_element_splits_by_degree(self):
        x = parse_poly('a + mu * b* + a * b*')
        delta = coact_right(x)
        self.assertEqual([-1, 0, 1], [n for n, _ in delta.terms])
        self.assertEqual(parse_poly('a * b*'), delta.component(0))

    def test_coinvariants_are_degree_zero(self):
        self.assertTrue(is_coinvariant(sphere_generator('X')))
        self.assertTrue(is_coinvariant(sphere_generator('Z*')))
        self.assertFalse(is_coinvariant(parse_poly('a')))

    def test_comodule_algebra_records(self):
        samples = [parse_poly(text) for text in ('a', 'b* + mu', 'a * b* - a*', 'inv(1+mu) * b^2')]
        records = verify_coaction(samples)
        self.assertEqual(4 * len(samples), len(records))
        self.assertEqual([], [r['condition'] for r in records if not r['pass']])


class TensorPPTests(unittest.TestCase):
    def test_real_constants_move_across_the_tensor(self):
        a, b = parse_poly('a'), parse_poly('b')
        self.assertEqual(TensorPP.simple(a * 2, b), TensorPP.simple(a, b * 2))

    def test_mu_stays_in_its_leg(self):
        a, b = parse_poly('a'), parse_poly('b')
        mu_a, mu_b = parse_poly('mu * a'), parse_poly('mu * b')
        self.assertNotEqual(TensorPP.simple(mu_a, b), TensorPP.simple(a, mu_b))

    def test_universal_differential_lies_in_the_kernel(self):
        for text in ('a', 'a * b* + mu', 'inv(1-mu) * b*^2'):
            d = universal_d(parse_poly(text))
            self.assertTrue(d)
            self.assertEqual(NC_ZERO, multiply_pp(d))

    def test_module_actions(self):
        t = TensorPP.simple(parse_poly('a'), parse_poly('b'))
        z = parse_poly('a*')
        self.assertEqual(TensorPP.simple(parse_poly('a* * a'), parse_poly('b')), t.left_multiply(z))
        self.assertEqual(TensorPP.simple(parse_poly('a'), parse_poly('b * a*')), t.right_multiply(z))
        self.assertEqual([1], t.left_degrees())

    def test_diagonal_coaction_groups_total_degree(self):
        t = TensorPP.simple(parse_poly('a'), parse_poly('b*')) + TensorPP.simple(parse_poly('a'), parse_poly('1'))
        parts = diag_coact(t)
        self.assertEqual([0, 1], list(parts))
        self.assertEqual(TensorPP.simple(parse_poly('a'), parse_poly('b*')), parts[0])

    def test_printed_tensor_parses_back(self):
        t = TensorPP.simple(parse_poly('a + mu * b'), parse_poly('b* - a*'))
        self.assertEqual(t, TensorPP.from_simple(parse_tensor_terms(format_tensor_pp(t))))


if __name__ == '__main__':
    unittest.main()
