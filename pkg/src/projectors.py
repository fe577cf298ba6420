"""
projectors.py - Monopole projectors p(u^n) over the quantum 2-sphere.

p(u^n)_kl = l2_k l1_l for the Hermitian legs of l(u^n), so

    n > 0:  p_kl = sqrt(C(n,k) C(n,l)) b^k a^(n-k) (a*)^(n-l) (b*)^l
    n < 0:  p_kl = sqrt(C(m,k) C(m,l)) (b*)^k (a*)^(m-k) (1+m mu)^-1 a^(m-l) b^l,  m = -n

with k, l = 0..|n|. Every entry is degree 0; the matrices are verified to be
Hermitian idempotents and can be rewritten in X, Z, Z*.

Usage:
    python3 projectors.py 2 [json|latex|text] [word|sphere]
"""

import json
import logging
import re
import sys
from functools import lru_cache

import config
from expression_parser import parse_poly
from galois import ell_legs
from mu_coefficients import negate_mu
from nc_algebra import (
    NC_ZERO,
    format_poly,
    format_sphere,
    poly_from_json,
    poly_to_json,
    sphere_from_json,
    sphere_to_json,
    star,
    theta,
    to_sphere_generators,
)

logger = logging.getLogger(__name__)

PROJECTOR_SCHEMA = 'qcontact-projector/1'


class ProjMatrix:
    """(|n|+1) x (|n|+1) matrix of NCPoly entries for charge n."""

    __slots__ = ('charge', 'entries')

    def __init__(self, charge, entries):
        self.charge = charge
        self.entries = tuple(tuple(row) for row in entries)

    @property
    def size(self):
        return len(self.entries)

    def entry(self, k, l):
        return self.entries[k][l]

    def __matmul__(self, other):
        size = self.size
        rows = []
        for i in range(size):
            row = []
            for j in range(size):
                total = NC_ZERO
                for k in range(size):
                    total = total + self.entries[i][k] * other.entries[k][j]
                row.append(total)
            rows.append(row)
        return ProjMatrix(self.charge, rows)

    def adjoint(self):
        size = self.size
        return ProjMatrix(self.charge, [[star(self.entries[l][k]) for l in range(size)]
                                        for k in range(size)])

    def __eq__(self, other):
        return (isinstance(other, ProjMatrix) and self.charge == other.charge
                and self.entries == other.entries)

    def __hash__(self):
        return hash((self.charge, self.entries))

    def __repr__(self):
        return f"ProjMatrix(charge={self.charge}, size={self.size})"


class SphereMatrix:
    """Projector entries rewritten in X, Z, Z*; factor_indices lists the (1+k mu)^-1 seen."""

    __slots__ = ('charge', 'entries', 'factor_indices')

    def __init__(self, charge, entries, factor_indices):
        self.charge = charge
        self.entries = tuple(tuple(row) for row in entries)
        self.factor_indices = tuple(factor_indices)

    @property
    def size(self):
        return len(self.entries)

    def __eq__(self, other):
        return (isinstance(other, SphereMatrix) and self.charge == other.charge
                and self.entries == other.entries
                and self.factor_indices == other.factor_indices)

    def __hash__(self):
        return hash((self.charge, self.entries, self.factor_indices))

    def __repr__(self):
        return f"SphereMatrix(charge={self.charge}, factors={list(self.factor_indices)})"


# ── Construction and checks ────────────────────────────────────────────────────

@lru_cache(maxsize=None)
def projector(n):
    """p(u^n) from the Hermitian strong connection."""
    legs = ell_legs(n, hermitian=True)
    entries = [[right_k * left_l for left_l, _ in legs] for _, right_k in legs]
    logger.info("Built projector for charge %d (%dx%d)", n, len(legs), len(legs))
    return ProjMatrix(n, entries)


def trace(n):
    p = projector(n)
    total = NC_ZERO
    for k in range(p.size):
        total = total + p.entry(k, k)
    return total


def verify_projector(n):
    """Exact idempotency, Hermiticity and coinvariance records for p(u^n)."""
    p = projector(n)
    label = f"n={n}"
    square = p @ p
    bad_square = [(k, l) for k in range(p.size) for l in range(p.size)
                  if square.entry(k, l) != p.entry(k, l)]
    adjoint = p.adjoint()
    bad_adjoint = [(k, l) for k in range(p.size) for l in range(p.size)
                   if adjoint.entry(k, l) != p.entry(k, l)]
    bad_degree = [(k, l) for k in range(p.size) for l in range(p.size)
                  if p.entry(k, l).degrees() not in ([], [0])]
    t = trace(n)
    return [
        _record('p^2 = p', label, bad_square, p, square),
        _record('p* = p', label, bad_adjoint, p, adjoint),
        _record('entries have degree 0', label, bad_degree),
        {'condition': 'trace', 'parameter': label, 'pass': t.degrees() in ([], [0]),
         'residual': format_poly(t)},
    ]


def _record(condition, parameter, bad_positions, expected=None, actual=None):
    if not bad_positions:
        residual = '0'
    elif expected is not None:
        k, l = bad_positions[0]
        difference = actual.entry(k, l) - expected.entry(k, l)
        residual = f"entry {k},{l}: {format_poly(difference)}"
    else:
        residual = f"entries {bad_positions[:3]}"
    return {'condition': condition, 'parameter': parameter,
            'pass': not bad_positions, 'residual': residual}


def theta_conjugate(n):
    """Records for theta(p(u^n)_kl) = p(u^-n)_kl entrywise."""
    p, q = projector(n), projector(-n)
    records = []
    for k in range(p.size):
        for l in range(p.size):
            residual = theta(p.entry(k, l)) - q.entry(k, l)
            records.append({
                'condition': 'theta(p(u^n)_kl) = p(u^-n)_kl',
                'parameter': f"n={n} k={k} l={l}",
                'pass': not residual,
                'residual': format_poly(residual),
            })
    return records


def trace_symmetry(n):
    """trace(-n) is trace(n) with mu -> -mu (both traces are coefficients)."""
    t, s = trace(n), trace(-n)
    passed = t.is_scalar() and s.is_scalar() and negate_mu(t.scalar_part()) == s.scalar_part()
    return {'condition': 'trace(-n) = trace(n) at -mu', 'parameter': f"n={n}", 'pass': passed,
            'residual': f"{format_poly(t)} | {format_poly(s)}"}


def to_sphere_form(n, max_charge=None):
    """p(u^n) with entries written in X, Z, Z*."""
    if max_charge is None:
        max_charge = config.BOUNDS['sphere_form_max_charge']
    if abs(n) > max_charge:
        raise ValueError(f"|n|={abs(n)} exceeds the sphere-form bound {max_charge}")
    p = projector(n)
    entries = [[to_sphere_generators(p.entry(k, l)) for l in range(p.size)]
               for k in range(p.size)]
    found = set()
    for row in entries:
        for sf in row:
            for _, c in sf.terms:
                found.update(c.denominator_indices())
    logger.info("Charge %d sphere form uses (1+k mu)^-1 for k in %s", n, sorted(found))
    return SphereMatrix(n, entries, sorted(found))


# ── Reference matrices ─────────────────────────────────────────────────────────
# The explicit low-charge projectors in X, Z, Z*; compared after expansion.

REFERENCE_MATRICES = {
    1: [
        ['1/2 * (1+mu) + X', 'Z'],
        ['Z*', '1/2 * (1+mu) - X'],
    ],
    -1: [
        ['1/2 * (1-mu) + X', 'Z*'],
        ['Z', '1/2 * (1-mu) - X'],
    ],
    2: [
        ['(X + 1/2 * (1+mu)) * (X + 1/2 * (1+3*mu))',
         'rt(2) * (X + 1/2 * (1+3*mu)) * Z',
         'Z^2'],
        ['rt(2) * Z* * (X + 1/2 * (1+3*mu))',
         '2 * (1/2 * (1+mu) + X) * (1/2 * (1+mu) - X)',
         'rt(2) * (1/2 * (1+mu) - X) * Z'],
        ['Z*^2',
         'rt(2) * Z* * (1/2 * (1+mu) - X)',
         '(1/2 * (1+mu) - X) * (1/2 * (1+3*mu) - X)'],
    ],
    -2: [
        ['(X + 1/2 * (1-mu)) * (X + 1/2 * (1-3*mu))',
         'rt(2) * (X + 1/2 * (1-3*mu)) * Z*',
         'Z*^2'],
        ['rt(2) * Z * (X + 1/2 * (1-3*mu))',
         '2 * (1/2 * (1-mu) + X) * (1/2 * (1-mu) - X)',
         'rt(2) * (1/2 * (1-mu) - X) * Z*'],
        ['Z^2',
         'rt(2) * Z * (1/2 * (1-mu) - X)',
         '(1/2 * (1-mu) - X) * (1/2 * (1-3*mu) - X)'],
    ],
}

REFERENCE_PREFACTORS = {1: '1', -1: '1', 2: 'inv(1+mu)', -2: 'inv(1-mu)'}


def reference_matrix(n):
    """The explicit matrix for n in (1, -1, 2, -2), expanded to normal form."""
    if n not in REFERENCE_MATRICES:
        raise ValueError(f"no reference matrix for charge {n}")
    prefactor = REFERENCE_PREFACTORS[n]
    rows = [[parse_poly(f"{prefactor} * ({text})") for text in row]
            for row in REFERENCE_MATRICES[n]]
    return ProjMatrix(n, rows)


def compare_with_reference(n):
    p, reference = projector(n), reference_matrix(n)
    records = []
    for k in range(p.size):
        for l in range(p.size):
            residual = p.entry(k, l) - reference.entry(k, l)
            records.append({
                'condition': 'p(u^n) matches the explicit matrix',
                'parameter': f"n={n} k={k} l={l}",
                'pass': not residual,
                'residual': format_poly(residual),
            })
    return records


# ── Export ─────────────────────────────────────────────────────────────────────

def projector_document(n, basis='word'):
    """JSON-ready document for p(u^n) in the word or sphere basis."""
    if basis == 'sphere':
        sm = to_sphere_form(n)
        entries = [[sphere_to_json(sf) for sf in row] for row in sm.entries]
        extra = {'factor_indices': list(sm.factor_indices)}
    elif basis == 'word':
        p = projector(n)
        entries = [[poly_to_json(x) for x in row] for row in p.entries]
        extra = {}
    else:
        raise ValueError(f"unknown basis {basis!r}")
    document = {'schema': PROJECTOR_SCHEMA, 'charge': n, 'size': abs(n) + 1,
                'basis': basis, 'entries': entries}
    document.update(extra)
    return document


def import_projector(document):
    """ProjMatrix or SphereMatrix from a parsed projector document."""
    if document.get('schema') != PROJECTOR_SCHEMA:
        raise ValueError(f"unsupported schema {document.get('schema')!r}")
    n = document['charge']
    entries = document['entries']
    if len(entries) != document['size'] or any(len(row) != len(entries) for row in entries):
        raise ValueError("entries do not form a square matrix of the stated size")
    if document['basis'] == 'sphere':
        rows = [[sphere_from_json(item) for item in row] for row in entries]
        return SphereMatrix(n, rows, document.get('factor_indices', []))
    rows = [[poly_from_json(item) for item in row] for row in entries]
    return ProjMatrix(n, rows)


def export_projector(n, fmt='json', basis='word'):
    """Deterministic text for p(u^n): json, latex or plain text."""
    if fmt == 'json':
        return json.dumps(projector_document(n, basis), sort_keys=True, indent=2)
    if basis == 'sphere':
        sm = to_sphere_form(n)
        cells = [[format_sphere(sf) for sf in row] for row in sm.entries]
    else:
        cells = [[format_poly(x) for x in row] for row in projector(n).entries]
    if fmt == 'latex':
        return latex_matrix(n, cells)
    if fmt == 'text':
        lines = [f"p(u^{n}), basis {basis}"]
        for k, row in enumerate(cells):
            for l, cell in enumerate(row):
                lines.append(f"  [{k},{l}] {cell}")
        return '\n'.join(lines)
    raise ValueError(f"unknown format {fmt!r}")


_LATEX_RULES = [
    (re.compile(r'inv\(([^()]*)\)\^(\d+)'), r'(\1)^{-\2}'),
    (re.compile(r'inv\(([^()]*)\)'), r'(\1)^{-1}'),
    (re.compile(r'sqrt\(([^()]*)\)'), r'\\sqrt{\1}'),
    (re.compile(r'rt\((\d+)\)'), r'\\sqrt{\1}'),
    (re.compile(r'\b(\d+)/(\d+)'), r'\\frac{\1}{\2}'),
    (re.compile(r'\b([abZ])\*\^(-?\d+)'), r'(\1^{\\ast})^{\2}'),
    (re.compile(r'\^(-?\d+)'), r'^{\1}'),
    (re.compile(r'\b([abZ])\*'), r'\1^{\\ast}'),
    (re.compile(r'\bmu\b'), r'\\mu'),
    (re.compile(r' \* '), ' '),
]


def latex_entry(text):
    for pattern, replacement in _LATEX_RULES:
        text = pattern.sub(replacement, text)
    return text


def latex_matrix(n, cells):
    columns = 'c' * len(cells)
    body = ' \\\\\n'.join('  ' + ' & '.join(latex_entry(cell) for cell in row) for row in cells)
    return (f"p(u^{{{n}}}) = \\left(\n\\begin{{array}}{{{columns}}}\n{body}\n"
            f"\\end{{array}}\n\\right)")


if __name__ == '__main__':
    logging.basicConfig(level=logging.INFO,
                        format='%(asctime)s %(levelname)s %(name)s: %(message)s')
    charge = int(sys.argv[1]) if len(sys.argv) > 1 else 1
    output_format = sys.argv[2] if len(sys.argv) > 2 else 'text'
    output_basis = sys.argv[3] if len(sys.argv) > 3 else 'sphere'
    print(export_projector(charge, output_format, output_basis))
