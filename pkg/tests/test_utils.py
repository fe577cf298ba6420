import sys
import unittest
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / 'src'))

from utils import binomial, format_table, signed_range, squarefree_split


class UtilsTests(unittest.TestCase):
    def test_squarefree_split(self):
        self.assertEqual((2, 3), squarefree_split(12))
        self.assertEqual((1, 1), squarefree_split(1))
        self.assertEqual((6, 1), squarefree_split(36))
        with self.assertRaises(ValueError):
            squarefree_split(0)

    def test_binomial_outside_range_is_zero(self):
        self.assertEqual(6, binomial(4, 2))
        self.assertEqual(0, binomial(4, 5))
        self.assertEqual(0, binomial(4, -1))

    def test_signed_range_order(self):
        self.assertEqual([0, 1, -1, 2, -2], signed_range(2))
        self.assertEqual([1, -1], signed_range(1, include_zero=False))

    def test_format_table(self):
        text = format_table([('p^2 = p', 'ok')], ('condition', 'pass'))
        self.assertEqual(['condition  pass', '---------  ----', 'p^2 = p    ok'], text.split('\n'))


if __name__ == '__main__':
    unittest.main()
