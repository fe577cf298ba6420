"""
nc_algebra.py - The noncommutative *-algebra of the contact 3-sphere.

Elements are NCPoly values: finite sums  c * (a*)^p (b*)^q a^r b^s  with the
MuScalar coefficient c written to the LEFT of the word. Words are brought to
normal form by the rewrite system

    R1  b a   -> a b                 R5  b b*  -> (1-mu) b* b + mu
    R2  a b*  -> (1-mu) b* a         R6  b* a* -> a* b*
    R3  b a*  -> (1-mu) a* b         R7  b* b  -> 1 - a* a
    R4  a a*  -> (1-mu) a* a + mu    R8  b* a^r b -> a^r - a* a^(r+1),  r >= 1

R8 is the completion found by the critical-pair check (overlap a b* b).
A coefficient f moved leftwards past a word of degree d becomes
f(mu/(1+d*mu)) (mu_shift), which covers the a f = f(mu/(1+mu)) a moves.
The irreducible words are exactly (a*)^p (b*)^q a^r b^s with q*s = 0.
"""

import logging
from fractions import Fraction
from functools import lru_cache

from mu_coefficients import (
    MuScalar,
    format_mu,
    mu_constant,
    mu_from_json,
    mu_inverse,
    mu_linear,
    mu_one,
    mu_power,
    mu_shift,
    mu_to_json,
    mu_sqrt_linear,
    negate_mu,
    is_unit,
    term_count,
)

logger = logging.getLogger(__name__)

A, B, A_STAR, B_STAR = 'a', 'b', 'a*', 'b*'
LETTERS = (A_STAR, B_STAR, A, B)
LETTER_RANK = {A_STAR: 0, B_STAR: 1, A: 2, B: 3}
STAR_OF = {A: A_STAR, B: B_STAR, A_STAR: A, B_STAR: B}
LETTER_DEGREE = {A: 1, B: 1, A_STAR: -1, B_STAR: -1}

EMPTY = (0, 0, 0, 0)


class NotDegreeZero(ValueError):
    """The element has monomials of nonzero degree."""


class NotExpressible(ArithmeticError):
    """No sphere-generator form with coefficients in the MuScalar ring."""


# ── Rewrite system ─────────────────────────────────────────────────────────────

_MU = mu_power(1)
_ONE = mu_one()
_ONE_MINUS_MU = _ONE - _MU

REWRITE_RULES = {
    'R1': ((B, A), ((_ONE, (A, B)),)),
    'R2': ((A, B_STAR), ((_ONE_MINUS_MU, (B_STAR, A)),)),
    'R3': ((B, A_STAR), ((_ONE_MINUS_MU, (A_STAR, B)),)),
    'R4': ((A, A_STAR), ((_ONE_MINUS_MU, (A_STAR, A)), (_MU, ()))),
    'R5': ((B, B_STAR), ((_ONE_MINUS_MU, (B_STAR, B)), (_MU, ()))),
    'R6': ((B_STAR, A_STAR), ((_ONE, (A_STAR, B_STAR)),)),
    'R7': ((B_STAR, B), ((_ONE, ()), (-_ONE, (A_STAR, A)))),
}

_PAIR_RULES = {lhs: rhs for lhs, rhs in REWRITE_RULES.values()}


def completion_rule(r):
    """R8_r: b* a^r b -> a^r - a* a^(r+1), from R1 and R7."""
    lhs = (B_STAR,) + (A,) * r + (B,)
    rhs = ((_ONE, (A,) * r), (-_ONE, (A_STAR,) + (A,) * (r + 1)))
    return lhs, rhs


def rule_list(max_run=3):
    """(name, lhs, rhs) for R1-R7 and R8_r with r <= max_run."""
    rules = [(name, lhs, rhs) for name, (lhs, rhs) in sorted(REWRITE_RULES.items())]
    for r in range(1, max_run + 1):
        lhs, rhs = completion_rule(r)
        rules.append((f"R8_{r}", lhs, rhs))
    return rules


def clear_caches():
    """Rebuild the rule lookup and drop every memoized normal form."""
    _PAIR_RULES.clear()
    for lhs, rhs in REWRITE_RULES.values():
        _PAIR_RULES[lhs] = rhs
    for cached in (_reduce_word, _times_letter, _monomial_product, _theta_letters,
                   _theta_monomial, sphere_generator, _sphere_monomial, _sphere_pivots):
        cached.cache_clear()
    logger.debug("Rewrite caches cleared (%d pair rules)", len(_PAIR_RULES))


def word_degree(word):
    return sum(LETTER_DEGREE[letter] for letter in word)


def rewrite_order_key(word):
    """Starred count, then length, then lexicographic with a* < b* < a < b."""
    starred = sum(1 for letter in word if letter in (A_STAR, B_STAR))
    return (starred, len(word), tuple(LETTER_RANK[letter] for letter in word))


def find_redex(word):
    """Leftmost (position, length, rhs) where a rule applies, or None."""
    for i in range(len(word) - 1):
        rhs = _PAIR_RULES.get(word[i:i + 2])
        if rhs is not None:
            return i, 2, rhs
        if word[i] == B_STAR and word[i + 1] == A:
            j = i + 1
            while j < len(word) and word[j] == A:
                j += 1
            if j < len(word) and word[j] == B:
                r = j - i - 1
                return i, r + 2, completion_rule(r)[1]
    return None


# ── Monomials ──────────────────────────────────────────────────────────────────

def monomial_word(m):
    p, q, r, s = m
    return (A_STAR,) * p + (B_STAR,) * q + (A,) * r + (B,) * s


def monomial_degree(m):
    p, q, r, s = m
    return r + s - p - q


def is_normal_monomial(m):
    p, q, r, s = m
    return min(m) >= 0 and not (q > 0 and s > 0)


def _word_monomial(word):
    counts = [0, 0, 0, 0]
    stage = 0
    for letter in word:
        rank = LETTER_RANK[letter]
        if rank < stage:
            raise ValueError(f"word {word} is not in normal order")
        stage = rank
        counts[rank] += 1
    m = tuple(counts)
    if not is_normal_monomial(m):
        raise ValueError(f"word {word} contains a reducible b* b pattern")
    return m


def _accumulate(acc, key, value):
    previous = acc.get(key)
    acc[key] = value if previous is None else previous + value


def _freeze(acc):
    return tuple(sorted((m, c) for m, c in acc.items() if c))


@lru_cache(maxsize=None)
def _reduce_word(word):
    redex = find_redex(word)
    if redex is None:
        return ((_word_monomial(word), _ONE),)
    i, length, rhs = redex
    prefix, suffix = word[:i], word[i + length:]
    shift = word_degree(prefix)
    acc = {}
    for coefficient, replacement in rhs:
        moved = mu_shift(coefficient, shift)
        for m, c in _reduce_word(prefix + replacement + suffix):
            _accumulate(acc, m, moved * c)
    return _freeze(acc)


@lru_cache(maxsize=None)
def _times_letter(m, letter):
    return _reduce_word(monomial_word(m) + (letter,))


@lru_cache(maxsize=None)
def _monomial_product(m1, m2):
    poly = {m1: _ONE}
    for letter in monomial_word(m2):
        step = {}
        for m, c in poly.items():
            for m_next, c_next in _times_letter(m, letter):
                _accumulate(step, m_next, c * c_next)
        poly = {m: c for m, c in step.items() if c}
    return _freeze(poly)


def _sort_key(m):
    return (-sum(m), m)


# ── Noncommutative polynomials ─────────────────────────────────────────────────

class NCPoly:
    """Normal-form element of the algebra; terms map monomial -> MuScalar."""

    __slots__ = ('terms', '_hash')

    def __init__(self, terms=()):
        items = terms.items() if isinstance(terms, dict) else terms
        self.terms = tuple(sorted(((m, c) for m, c in items if c),
                                  key=lambda item: _sort_key(item[0])))
        self._hash = None

    @classmethod
    def _coerce(cls, value):
        if isinstance(value, NCPoly):
            return value
        if isinstance(value, MuScalar):
            return cls({EMPTY: value})
        try:
            return cls({EMPTY: mu_constant(value)})
        except (TypeError, ValueError):
            return None

    def __add__(self, other):
        other = NCPoly._coerce(other)
        if other is None:
            return NotImplemented
        acc = dict(self.terms)
        for m, c in other.terms:
            _accumulate(acc, m, c)
        return NCPoly(acc)

    __radd__ = __add__

    def __neg__(self):
        return NCPoly((m, -c) for m, c in self.terms)

    def __sub__(self, other):
        other = NCPoly._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = NCPoly._coerce(other)
        if other is None:
            return NotImplemented
        acc = {}
        for m1, c1 in self.terms:
            d = monomial_degree(m1)
            for m2, c2 in other.terms:
                moved = c1 * mu_shift(c2, d)
                for m, c in _monomial_product(m1, m2):
                    _accumulate(acc, m, moved * c)
        return NCPoly(acc)

    def __rmul__(self, other):
        other = NCPoly._coerce(other)
        if other is None:
            return NotImplemented
        return other * self

    def __pow__(self, exponent):
        if exponent < 0:
            if not self.is_scalar():
                raise ValueError("negative powers exist only for coefficients")
            return NCPoly({EMPTY: mu_inverse(self.scalar_part()) ** (-exponent)})
        result = NC_ONE
        for _ in range(exponent):
            result = result * self
        return result

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        other = NCPoly._coerce(other)
        if other is None:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.terms)
        return self._hash

    def __repr__(self):
        return f"NCPoly({format_poly(self)})"

    def coefficient(self, m):
        for key, c in self.terms:
            if key == m:
                return c
        return MuScalar()

    def monomials(self):
        return [m for m, _ in self.terms]

    def is_scalar(self):
        return all(m == EMPTY for m, _ in self.terms)

    def scalar_part(self):
        return self.coefficient(EMPTY)

    def degrees(self):
        return sorted({monomial_degree(m) for m, _ in self.terms})

    def is_homogeneous(self):
        return len(self.degrees()) <= 1

    def degree(self):
        """Degree of a nonzero homogeneous element."""
        degrees = self.degrees()
        if len(degrees) != 1:
            raise ValueError(f"not homogeneous: degrees {degrees}")
        return degrees[0]


NC_ONE = NCPoly({EMPTY: _ONE})
NC_ZERO = NCPoly()


def generator(letter):
    if letter not in STAR_OF:
        raise ValueError(f"unknown generator {letter!r}")
    return NCPoly({_word_monomial((letter,)): _ONE})


def nc_scalar(value):
    return NCPoly._coerce(value)


def word_to_poly(word):
    """Normal form of a word given as a sequence of letters."""
    poly = NC_ONE
    for letter in word:
        acc = {}
        for m, c in poly.terms:
            for m_next, c_next in _times_letter(m, letter):
                _accumulate(acc, m_next, c * c_next)
        poly = NCPoly(acc)
    return poly


def nc_add(x, y):
    return x + y


def nc_mul(x, y):
    return x * y


def normalize(expression):
    """Normal form of an NCPoly, a coefficient, or a parsed expression tree.

    Trees are nested tuples: ('add'|'sub'|'mul', left, right), ('neg', x),
    ('pow', x, n), ('gen', letter), ('sphere', 'X'|'Z'|'Z*'), ('scalar', c).
    """
    if isinstance(expression, NCPoly):
        return expression
    if not isinstance(expression, tuple):
        coerced = NCPoly._coerce(expression)
        if coerced is None:
            raise TypeError(f"cannot normalize {expression!r}")
        return coerced
    kind = expression[0]
    if kind == 'add':
        return normalize(expression[1]) + normalize(expression[2])
    if kind == 'sub':
        return normalize(expression[1]) - normalize(expression[2])
    if kind == 'mul':
        return normalize(expression[1]) * normalize(expression[2])
    if kind == 'neg':
        return -normalize(expression[1])
    if kind == 'pow':
        return normalize(expression[1]) ** expression[2]
    if kind == 'gen':
        return generator(expression[1])
    if kind == 'sphere':
        return sphere_generator(expression[1])
    if kind == 'scalar':
        return nc_scalar(expression[1])
    raise ValueError(f"unknown expression node {kind!r}")


# ── Involution, grading, automorphism ──────────────────────────────────────────

def star(x):
    """Antilinear antihomomorphism: reverse words, star letters; coefficients are real."""
    result = NC_ZERO
    for m, c in x.terms:
        word = tuple(STAR_OF[letter] for letter in reversed(monomial_word(m)))
        result = result + word_to_poly(word) * c
    return result


def degree_parts(x):
    parts = {}
    for m, c in x.terms:
        parts.setdefault(monomial_degree(m), {})[m] = c
    return {d: NCPoly(terms) for d, terms in sorted(parts.items())}


@lru_cache(maxsize=None)
def _theta_letters():
    images = {
        A: NCPoly({_word_monomial((A_STAR,)): mu_sqrt_linear(-1)}),
        B: NCPoly({_word_monomial((B_STAR,)): mu_sqrt_linear(-1)}),
    }
    images[A_STAR] = star(images[A])
    images[B_STAR] = star(images[B])
    return images


@lru_cache(maxsize=None)
def _theta_monomial(m):
    images = _theta_letters()
    result = NC_ONE
    for letter in monomial_word(m):
        result = result * images[letter]
    return result


def theta(x):
    """mu -> -mu, a -> sqrt(1-mu) a*, b -> sqrt(1-mu) b*, extended as a *-map."""
    result = NC_ZERO
    for m, c in x.terms:
        result = result + negate_mu(c) * _theta_monomial(m)
    return result


def theta_order(x, limit=8):
    """Smallest k >= 1 with theta^k(x) = x, or None within the limit."""
    image = x
    for k in range(1, limit + 1):
        image = theta(image)
        if image == x:
            return k
    return None


# ── Relations ──────────────────────────────────────────────────────────────────
# A relation is a list of (coefficient, factors) where factors mixes letters
# and MuScalars, read left to right; its value must vanish.


def _factors_value(factors, letter_image, scalar_image):
    value = NC_ONE
    for factor in factors:
        if isinstance(factor, str):
            value = value * letter_image(factor)
        else:
            value = value * scalar_image(factor)
    return value


def relation_value(relation, letter_image=generator, scalar_image=nc_scalar):
    total = NC_ZERO
    for coefficient, factors in relation:
        total = total + scalar_image(coefficient) * _factors_value(
            factors, letter_image, scalar_image)
    return total


def _theta_letter_image(letter):
    return _theta_letters()[letter]


def _theta_scalar_image(c):
    return nc_scalar(negate_mu(c))


def defining_relations():
    one, mu = _ONE, _MU
    return [
        ('ba = ab', [(one, (B, A)), (-one, (A, B))]),
        ('ab* = (1-mu)b*a', [(one, (A, B_STAR)), (-one, (_ONE_MINUS_MU, B_STAR, A))]),
        ('mu a - a mu = mu a mu', [(one, (mu, A)), (-one, (A, mu)), (-one, (mu, A, mu))]),
        ('mu b - b mu = mu b mu', [(one, (mu, B)), (-one, (B, mu)), (-one, (mu, B, mu))]),
        ('aa* - (1-mu)a*a = mu',
         [(one, (A, A_STAR)), (-one, (_ONE_MINUS_MU, A_STAR, A)), (-one, (mu,))]),
        ('bb* - (1-mu)b*b = mu',
         [(one, (B, B_STAR)), (-one, (_ONE_MINUS_MU, B_STAR, B)), (-one, (mu,))]),
        ('a*a + b*b = 1', [(one, (A_STAR, A)), (one, (B_STAR, B)), (-one, ())]),
    ]


def _linear_or_one(k, e=1):
    return mu_linear(k, e) if k else _ONE


def derived_relations(k_max=5, n_max=6):
    """Consequences of the defining relations, labelled for reports."""
    one, mu = _ONE, _MU
    relations = [
        ('aa* + bb* = 1+mu',
         [(one, (A, A_STAR)), (one, (B, B_STAR)), (-one, (one + mu,))]),
    ]
    for k in range(-k_max, k_max + 1):
        for letter in (A, B):
            relations.append((
                f"mu-commutation: mu {letter}(1+k mu) = (1+(k+1)mu) {letter} mu, k={k}",
                [(one, (mu, letter, _linear_or_one(k))),
                 (-one, (_linear_or_one(k + 1), letter, mu))]))
        if k == 0:
            continue
        for letter in (A, B):
            relations.append((
                f"inverse factor: {letter} mu(1+k mu)^-1, k={k}",
                [(one, (letter, mu * mu_linear(k, -1))),
                 (-one, (mu * _linear_or_one(k + 1, -1), letter))]))
            shifted = mu_sqrt_linear(k + 1) if k + 1 else _ONE
            relations.append((
                f"sqrt factor: {letter} sqrt(1+k mu), k={k}",
                [(one, (letter, mu_sqrt_linear(k))),
                 (-one, (shifted * mu_sqrt_linear(1) * mu_linear(1, -1), letter))]))
    for n in range(1, n_max + 1):
        for letter in (A, B):
            factor = _linear_or_one(n - 1) * mu_linear(n, -1)
            relations.append((
                f"theta support: {letter}^n(1-mu) = (1+(n-1)mu)/(1+n mu) {letter}^n, n={n}",
                [(one, (letter,) * n + (_ONE_MINUS_MU,)), (-one, (factor,) + (letter,) * n)]))
    return relations


def sphere_relations():
    """Residuals of the sphere relations, each expected to vanish."""
    X, Z, Zs = sphere_generator('X'), sphere_generator('Z'), sphere_generator('Z*')
    mu = nc_scalar(_MU)
    half_mu = nc_scalar(_MU * mu_constant(Fraction(1, 2)))
    quarter = nc_scalar(mu_constant(Fraction(1, 4)))
    return [
        ('mu X = X mu', mu * X - X * mu),
        ('mu Z = Z mu', mu * Z - Z * mu),
        ('mu Z* = Z* mu', mu * Zs - Zs * mu),
        ('XZ - ZX = -mu Z', X * Z - Z * X + mu * Z),
        ('ZZ* - Z*Z = -2 mu X', Z * Zs - Zs * Z + mu * X * 2),
        ('(X+mu/2)^2 + ZZ* = 1/4', (X + half_mu) * (X + half_mu) + Z * Zs - quarter),
        ('(X-mu/2)^2 + Z*Z = 1/4', (X - half_mu) * (X - half_mu) + Zs * Z - quarter),
    ]


def verify_relations(k_max=5, n_max=6):
    """Exact residual records for every defining, derived and sphere relation."""
    records = []
    for name, relation in defining_relations() + derived_relations(k_max, n_max):
        records.append(_record(name, relation_value(relation)))
    for name, residual in sphere_relations():
        records.append(_record(name, residual))
    for name, relation in defining_relations():
        residual = relation_value(relation, _theta_letter_image, _theta_scalar_image)
        records.append(_record(f"theta preserves {name}", residual))
    for name, x in (('X', sphere_generator('X')), ('Z', sphere_generator('Z')),
                    ('Z*', sphere_generator('Z*'))):
        records.append(_record(f"mu central on {name}", nc_scalar(_MU) * x - x * nc_scalar(_MU)))
    mu = nc_scalar(_MU)
    for word in ((A, B_STAR, B, A_STAR), (B, B, A_STAR, B_STAR), (B_STAR, A, A, A_STAR)):
        x = word_to_poly(word)
        records.append(_record('mu central on degree 0 words', mu * x - x * mu,
                               parameter=' '.join(word)))
    for word in ((A,), (B_STAR,), (A, A, B_STAR), (A_STAR, B_STAR)):
        commutator = mu * word_to_poly(word) - word_to_poly(word) * mu
        records.append({
            'condition': 'mu does not commute with nonzero degree',
            'parameter': ' '.join(word),
            'pass': bool(commutator),
            'residual': format_poly(commutator),
        })
    records.append(_record('theta X = X', theta(sphere_generator('X')) - sphere_generator('X')))
    records.append(_record('theta Z = Z*', theta(sphere_generator('Z')) - sphere_generator('Z*')))
    records.append(_record('theta Z* = Z', theta(sphere_generator('Z*')) - sphere_generator('Z')))
    for letter in LETTERS:
        order = theta_order(generator(letter))
        records.append({
            'condition': f"theta order on {letter}",
            'parameter': '',
            'pass': order == 2,
            'residual': f"order {order}",
        })
    return records


def _record(name, residual, parameter=''):
    return {
        'condition': name,
        'parameter': parameter,
        'pass': not residual,
        'residual': format_poly(residual),
    }


# ── Confluence and termination ─────────────────────────────────────────────────

def rewrite_once(word, position, length, rhs):
    """Apply one rule at position and normalize the pieces."""
    prefix, suffix = word[:position], word[position + length:]
    shift = word_degree(prefix)
    result = NC_ZERO
    for coefficient, replacement in rhs:
        result = result + mu_shift(coefficient, shift) * word_to_poly(prefix + replacement + suffix)
    return result


def critical_pairs(max_run=3):
    """Every overlap and inclusion ambiguity of the rule set with both resolutions."""
    rules = rule_list(max_run)
    found = []
    for name1, lhs1, rhs1 in rules:
        for name2, lhs2, rhs2 in rules:
            for overlap in range(1, min(len(lhs1), len(lhs2))):
                if lhs1[-overlap:] != lhs2[:overlap]:
                    continue
                word = lhs1 + lhs2[overlap:]
                left = rewrite_once(word, 0, len(lhs1), rhs1)
                right = rewrite_once(word, len(lhs1) - overlap, len(lhs2), rhs2)
                found.append((f"{name1}/{name2}", word, left, right))
            if name1 != name2 and len(lhs2) < len(lhs1):
                for i in range(len(lhs1) - len(lhs2) + 1):
                    if lhs1[i:i + len(lhs2)] == lhs2:
                        left = rewrite_once(lhs1, 0, len(lhs1), rhs1)
                        right = rewrite_once(lhs1, i, len(lhs2), rhs2)
                        found.append((f"{name1}/{name2}", lhs1, left, right))
    return found


def coefficient_pairs(samples, max_run=3):
    """Ambiguities between a rule and a coefficient move: lhs * f resolved both ways."""
    found = []
    for name, lhs, rhs in rule_list(max_run):
        for f in samples:
            rule_first = NC_ZERO
            for coefficient, replacement in rhs:
                rule_first = rule_first + coefficient * (word_to_poly(replacement) * f)
            move_first = mu_shift(f, word_degree(lhs)) * rewrite_once(lhs, 0, len(lhs), rhs)
            found.append((f"{name}/C", lhs, rule_first, move_first))
    return found


def check_confluence(max_run=3, samples=None):
    """Records for every critical pair; pass when both resolutions agree."""
    if samples is None:
        samples = [_MU, mu_linear(2, -1), mu_sqrt_linear(1), _ONE_MINUS_MU]
    records = []
    for name, word, left, right in critical_pairs(max_run) + coefficient_pairs(samples, max_run):
        records.append({
            'condition': f"critical pair {name}",
            'parameter': ' '.join(word),
            'pass': left == right,
            'residual': format_poly(left - right),
        })
    failures = sum(1 for r in records if not r['pass'])
    if failures:
        logger.warning("%d of %d critical pairs are not joinable", failures, len(records))
    return records


def count_rewrite_steps(word, limit=100000):
    """Total rule applications to normalize word; checks the order decreases."""
    pending = [tuple(word)]
    steps = 0
    while pending:
        current = pending.pop()
        redex = find_redex(current)
        if redex is None:
            continue
        i, length, rhs = redex
        for _, replacement in rhs:
            new_word = current[:i] + replacement + current[i + length:]
            if rewrite_order_key(new_word) >= rewrite_order_key(current):
                raise RuntimeError(f"rewrite of {current} does not decrease the order")
            pending.append(new_word)
        steps += 1
        if steps > limit:
            raise RuntimeError(f"normalization of {word} exceeded {limit} steps")
    return steps


def random_poly(rng, terms=3, max_length=4):
    """Random element with terms in raw (unnormalized) letter order."""
    samples = [_ONE, _MU, _ONE_MINUS_MU, mu_linear(2, -1), mu_sqrt_linear(1),
               mu_constant(Fraction(1, 2)), mu_power(-1), mu_constant(-3)]
    total = NC_ZERO
    for _ in range(terms):
        word = [rng.choice(LETTERS) for _ in range(rng.randint(0, max_length))]
        total = total + rng.choice(samples) * word_to_poly(word)
    return total


def check_associativity(rng, count=100, max_length=3):
    """Records for (xy)z = x(yz) on random triples."""
    records = []
    for index in range(count):
        x, y, z = (random_poly(rng, 2, max_length) for _ in range(3))
        residual = (x * y) * z - x * (y * z)
        records.append(_record('(xy)z = x(yz)', residual, parameter=f"sample {index}"))
    return records


# ── Sphere generators ──────────────────────────────────────────────────────────

class SphereForm:
    """Sum of c * X^i Z^j (Z*)^m with j*m = 0; terms map (i, j, m) -> MuScalar."""

    __slots__ = ('terms',)

    def __init__(self, terms=()):
        items = terms.items() if isinstance(terms, dict) else terms
        self.terms = tuple(sorted(((k, c) for k, c in items if c),
                                  key=lambda item: (-sum(item[0]), item[0])))

    def __eq__(self, other):
        return isinstance(other, SphereForm) and self.terms == other.terms

    def __hash__(self):
        return hash(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        acc = dict(self.terms)
        for key, c in other.terms:
            _accumulate(acc, key, c)
        return SphereForm(acc)

    def __neg__(self):
        return SphereForm((k, -c) for k, c in self.terms)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return SphereForm((k, c * value) for k, value in self.terms)

    def coefficient(self, key):
        for k, c in self.terms:
            if k == key:
                return c
        return MuScalar()

    def factor_indices(self):
        found = set()
        for _, c in self.terms:
            found.update(c.factor_indices())
        return sorted(found)

    def __repr__(self):
        return f"SphereForm({format_sphere(self)})"


@lru_cache(maxsize=None)
def sphere_generator(name):
    """Normal form of X = aa* - (mu+1)/2, Z = ab* or Z* = ba*."""
    a, b, a_star, b_star = generator(A), generator(B), generator(A_STAR), generator(B_STAR)
    if name == 'X':
        return a * a_star - nc_scalar((_MU + _ONE) * mu_constant(Fraction(1, 2)))
    if name == 'Z':
        return a * b_star
    if name == 'Z*':
        return b * a_star
    raise ValueError(f"unknown sphere generator {name!r}")


def sphere_basis(level):
    """Keys (i, j, m) with i + j + m = level and j*m = 0."""
    keys = {(level, 0, 0)}
    for i in range(level):
        keys.add((i, level - i, 0))
        keys.add((i, 0, level - i))
    return sorted(keys)


@lru_cache(maxsize=None)
def _sphere_monomial(i, j, m):
    result = NC_ONE
    for name, count in (('X', i), ('Z', j), ('Z*', m)):
        for _ in range(count):
            result = result * sphere_generator(name)
    return result


def expand_sphere_gens(sf):
    """Substitute X = aa* - (mu+1)/2, Z = ab*, Z* = ba* and normalize."""
    result = NC_ZERO
    for (i, j, m), c in sf.terms:
        result = result + c * _sphere_monomial(i, j, m)
    return result


def _sub_scaled(target, factor, source):
    acc = dict(target)
    for key, c in source.items():
        _accumulate(acc, key, -(factor * c))
    return {k: c for k, c in acc.items() if c}


def _add_scaled(target, factor, source):
    return _sub_scaled(target, -factor, source)


def _choose_pivot(row):
    for m in sorted(row, key=_sort_key):
        if is_unit(row[m]):
            return m
    return None


@lru_cache(maxsize=None)
def _sphere_pivots(level):
    """Gauss-Jordan system: pivot monomial -> (row, combination of basis keys)."""
    pivots = {}
    for total in range(level + 1):
        for key in sphere_basis(total):
            row = dict(_sphere_monomial(*key).terms)
            combo = {key: _ONE}
            for pivot, (prow, pcombo) in pivots.items():
                c = row.get(pivot)
                if c:
                    row = _sub_scaled(row, c, prow)
                    combo = _sub_scaled(combo, c, pcombo)
            if not row:
                logger.debug("Sphere monomial %s is dependent on lower ones", key)
                continue
            pivot = _choose_pivot(row)
            if pivot is None:
                logger.warning("No invertible pivot for sphere monomial %s", key)
                continue
            inverse = mu_inverse(row[pivot])
            row = {m: inverse * c for m, c in row.items()}
            combo = {k: inverse * c for k, c in combo.items()}
            for other, (prow, pcombo) in list(pivots.items()):
                c = prow.get(pivot)
                if c:
                    pivots[other] = (_sub_scaled(prow, c, row), _sub_scaled(pcombo, c, combo))
            pivots[pivot] = (row, combo)
    logger.debug("Sphere system up to level %d has %d pivots", level, len(pivots))
    return pivots


def to_sphere_generators(x):
    """SphereForm sf with expand_sphere_gens(sf) == x for degree-0 x."""
    bad = [m for m, _ in x.terms if monomial_degree(m) != 0]
    if bad:
        raise NotDegreeZero(f"monomials of nonzero degree: {bad[:3]}")
    level = max((m[0] + m[1] for m, _ in x.terms), default=0)
    row = dict(x.terms)
    combo = {}
    for pivot, (prow, pcombo) in _sphere_pivots(level).items():
        c = row.get(pivot)
        if c:
            row = _sub_scaled(row, c, prow)
            combo = _add_scaled(combo, c, pcombo)
    if row:
        raise NotExpressible(
            f"{format_poly(NCPoly(row))} is outside the span of X, Z, Z* over the coefficient ring")
    return SphereForm(combo)


# ── Printing ───────────────────────────────────────────────────────────────────

def format_word(m):
    parts = []
    for letter, count in zip((A_STAR, B_STAR, A, B), m):
        if count == 1:
            parts.append(letter)
        elif count > 1:
            parts.append(f"{letter}^{count}")
    return ' * '.join(parts)


def _format_term(c, body):
    if not body:
        text = format_mu(c)
        return f"({text})" if term_count(c) > 1 else text
    if c == _ONE:
        return body
    if c == -_ONE:
        return f"-{body}"
    if term_count(c) == 1:
        return f"{format_mu(c)} * {body}"
    return f"({format_mu(c)}) * {body}"


def _join_terms(parts):
    if not parts:
        return '0'
    out = parts[0]
    for part in parts[1:]:
        out += f" - {part[1:]}" if part.startswith('-') else f" + {part}"
    return out


def format_poly(x):
    """Canonical text; parsing it gives back x."""
    if x.terms and x.is_scalar():
        return format_mu(x.scalar_part())
    return _join_terms([_format_term(c, format_word(m)) for m, c in x.terms])


def format_sphere_key(key):
    parts = []
    for name, count in zip(('X', 'Z', 'Z*'), key):
        if count == 1:
            parts.append(name)
        elif count > 1:
            parts.append(f"{name}^{count}")
    return ' * '.join(parts)


def format_sphere(sf):
    return _join_terms([_format_term(c, format_sphere_key(k)) for k, c in sf.terms])


def poly_to_json(x):
    return [{'monomial': list(m), 'coefficient': mu_to_json(c)} for m, c in x.terms]


def sphere_to_json(sf):
    return [{'sphere': list(k), 'coefficient': mu_to_json(c)} for k, c in sf.terms]


def poly_from_json(data):
    terms = {}
    for item in data:
        m = tuple(item['monomial'])
        if len(m) != 4 or not is_normal_monomial(m):
            raise ValueError(f"not a normal monomial: {item['monomial']}")
        _accumulate(terms, m, mu_from_json(item['coefficient']))
    return NCPoly(terms)


def sphere_from_json(data):
    terms = {}
    for item in data:
        key = tuple(item['sphere'])
        if len(key) != 3 or min(key) < 0 or key[1] * key[2]:
            raise ValueError(f"not a sphere basis key: {item['sphere']}")
        _accumulate(terms, key, mu_from_json(item['coefficient']))
    return SphereForm(terms)


clear_caches()
