"""Shared utility functions."""

import math

import sympy


def squarefree_split(n):
    """Write a positive integer as g*g*d with d squarefree: 12 -> (2, 3)."""
    if n < 1:
        raise ValueError(f"squarefree_split needs a positive integer, got {n}")
    g, d = 1, 1
    for prime, exponent in sympy.factorint(n).items():
        g *= prime ** (exponent // 2)
        if exponent % 2:
            d *= prime
    return g, d


def binomial(n, k):
    """Binomial coefficient, zero outside 0 <= k <= n."""
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def signed_range(n_max, include_zero=True):
    """Charges -n_max..n_max in the order 0, 1, -1, 2, -2, ..."""
    out = [0] if include_zero else []
    for n in range(1, n_max + 1):
        out.extend((n, -n))
    return out


# ── Report formatting ──────────────────────────────────────────────────────────

def format_table(rows, headers):
    """Plain-text table with left-aligned columns."""
    cells = [[str(h) for h in headers]] + [[str(c) for c in row] for row in rows]
    widths = [max(len(row[i]) for row in cells) for i in range(len(headers))]
    lines = []
    for index, row in enumerate(cells):
        lines.append('  '.join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
        if index == 0:
            lines.append('  '.join('-' * w for w in widths))
    return '\n'.join(lines)
