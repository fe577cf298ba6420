"""
mu_coefficients.py - Exact arithmetic in the commutative coefficient ring of mu.

The ring is generated over the real numbers q*sqrt(d) by mu, mu^-1,
(1+k*mu)^-1 and sqrt(1+k*mu) for nonzero integers k. An element is a finite
sum over square-root signatures (the set of k carrying a sqrt(1+k*mu) factor),
each signature holding one reduced rational function

    numerator(mu) * mu^mu_power / prod_k (1+k*mu)^e_k

whose numerator has a nonzero constant term and shares no (1+k*mu) factor
with the denominator. The representation is unique, so equality is
structural.

Textual form (format_mu / expression_parser.parse_mu_scalar):

    3/2 * mu^2 * inv(1+2*mu) * sqrt(1-mu) * rt(2)
"""

import logging
import math
from fractions import Fraction
from functools import lru_cache

import sympy

from utils import squarefree_split

logger = logging.getLogger(__name__)

_MU = sympy.Symbol('mu')


class SingularEvaluation(ArithmeticError):
    """A coefficient was evaluated where one of its factors vanishes or is negative."""

    def __init__(self, k, mu0, reason='zero denominator'):
        self.k = k
        self.mu0 = mu0
        self.reason = reason
        if k:
            where = f"factor (1{k:+d}*mu)"
        else:
            where = "factor mu"
        super().__init__(f"singular evaluation at mu={mu0}: {where}, {reason}")


class NotInvertible(ArithmeticError):
    """The MuScalar is not a unit of the coefficient ring."""


# ── Exact real scalars ─────────────────────────────────────────────────────────

class ExactScalar:
    """Sum of q_d * sqrt(d) over squarefree d >= 1 with rational q_d."""

    __slots__ = ('terms',)

    def __init__(self, terms=()):
        merged = {}
        for d, q in terms:
            merged[d] = merged.get(d, 0) + Fraction(q)
        self.terms = tuple(sorted((d, q) for d, q in merged.items() if q))

    @classmethod
    def rational(cls, q):
        return cls(((1, q),))

    @classmethod
    def sqrt_of(cls, n):
        """sqrt(n) for an integer n >= 0, split as g*sqrt(d)."""
        if n < 0:
            raise ValueError(f"square root of negative integer {n}")
        if n == 0:
            return cls()
        g, d = squarefree_split(n)
        return cls(((d, g),))

    def coefficient(self, d):
        for key, q in self.terms:
            if key == d:
                return q
        return Fraction(0)

    def single(self):
        """(d, q) when the scalar is q*sqrt(d), else None."""
        return self.terms[0] if len(self.terms) == 1 else None

    def is_rational(self):
        return all(d == 1 for d, _ in self.terms)

    def inverse(self):
        single = self.single()
        if single is None:
            raise NotInvertible(f"cannot invert scalar {format_exact(self)}")
        d, q = single
        return ExactScalar(((d, 1 / (q * d)),))

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, ExactScalar):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == ExactScalar.rational(other).terms
        return NotImplemented

    def __hash__(self):
        return hash(self.terms)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ExactScalar.rational(other)
        if not isinstance(other, ExactScalar):
            return NotImplemented
        return ExactScalar(self.terms + other.terms)

    __radd__ = __add__

    def __neg__(self):
        return ExactScalar([(d, -q) for d, q in self.terms])

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ExactScalar.rational(other)
        if not isinstance(other, ExactScalar):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return ExactScalar([(d, q * other) for d, q in self.terms])
        if not isinstance(other, ExactScalar):
            return NotImplemented
        out = []
        for d1, q1 in self.terms:
            for d2, q2 in other.terms:
                g = math.gcd(d1, d2)
                out.append((d1 * d2 // (g * g), q1 * q2 * g))
        return ExactScalar(out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __float__(self):
        return float(sum((float(q) * math.sqrt(d) for d, q in self.terms), 0.0))

    def __repr__(self):
        return f"ExactScalar({format_exact(self)})"


ONE = ExactScalar.rational(1)


# ── Polynomials in mu over a generic coefficient ring ─────────────────────────
# Coefficient lists are indexed by the power of mu. Coefficients only need
# +, -, *, bool and multiplication by int/Fraction, so the same helpers serve
# ExactScalar coefficients and the MuScalar coefficients of PairScalar.

def _poly_add(p, q):
    if len(p) < len(q):
        p, q = q, p
    out = list(p)
    for i, c in enumerate(q):
        out[i] = out[i] + c
    return out


def _poly_mul(p, q):
    out = [None] * (len(p) + len(q) - 1)
    for i, c in enumerate(p):
        for j, e in enumerate(q):
            term = c * e
            out[i + j] = term if out[i + j] is None else out[i + j] + term
    return out


def _poly_times_linear(p, k):
    """Multiply by (1 + k*mu)."""
    out = list(p) + [p[-1] * k]
    for i in range(len(p) - 1, 0, -1):
        out[i] = p[i] + p[i - 1] * k
    return out


def _poly_divide_linear(p, k):
    """Exact quotient by (1 + k*mu), or None."""
    if len(p) < 2:
        return None
    q = [p[0]]
    for i in range(1, len(p) - 1):
        q.append(p[i] - q[-1] * k)
    if p[-1] - q[-1] * k:
        return None
    return q


class RationalFunction:
    """numerator(mu) * mu^mu_power / prod (1+k*mu)^e, kept reduced."""

    __slots__ = ('numerator', 'mu_power', 'denominator')

    def __init__(self, numerator, mu_power, denominator):
        self.numerator = numerator
        self.mu_power = mu_power
        self.denominator = denominator

    def key(self):
        return (self.numerator, self.mu_power, self.denominator)

    def __eq__(self, other):
        return isinstance(other, RationalFunction) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return (f"RationalFunction({list(self.numerator)!r}, "
                f"mu_power={self.mu_power}, denominator={dict(self.denominator)})")


def _make_rf(numerator, mu_power, denominator):
    """Reduce to canonical form; None for zero."""
    lo, hi = 0, len(numerator)
    while lo < hi and not numerator[lo]:
        lo += 1
    while hi > lo and not numerator[hi - 1]:
        hi -= 1
    if lo == hi:
        return None
    numerator = list(numerator[lo:hi])
    mu_power += lo
    reduced = {}
    for k in sorted(denominator):
        e = denominator[k]
        while e > 0:
            quotient = _poly_divide_linear(numerator, k)
            if quotient is None:
                break
            numerator = quotient
            e -= 1
        if e > 0:
            reduced[k] = e
    return RationalFunction(tuple(numerator), mu_power, tuple(sorted(reduced.items())))


def _rf_mul(f, g):
    den = dict(f.denominator)
    for k, e in g.denominator:
        den[k] = den.get(k, 0) + e
    return _make_rf(_poly_mul(f.numerator, g.numerator), f.mu_power + g.mu_power, den)


def _rf_times_linear(f, k):
    return _make_rf(_poly_times_linear(f.numerator, k), f.mu_power, dict(f.denominator))


def _lift(f, mu_power, den):
    num = list(f.numerator)
    own = dict(f.denominator)
    for k, e in den.items():
        for _ in range(e - own.get(k, 0)):
            num = _poly_times_linear(num, k)
    shift = f.mu_power - mu_power
    if shift:
        num = [num[0] * 0] * shift + num
    return num


def _rf_add(f, g):
    mu_power = min(f.mu_power, g.mu_power)
    den = dict(f.denominator)
    for k, e in g.denominator:
        den[k] = max(den.get(k, 0), e)
    return _make_rf(_poly_add(_lift(f, mu_power, den), _lift(g, mu_power, den)), mu_power, den)


# ── The coefficient ring ───────────────────────────────────────────────────────

class MuScalar:
    """Element of the coefficient ring; terms are (signature, RationalFunction)."""

    __slots__ = ('terms', '_hash')

    def __init__(self, terms=()):
        self.terms = tuple(sorted(terms, key=lambda item: item[0]))
        self._hash = None

    @classmethod
    def _collect(cls, pieces):
        acc = {}
        for signature, rf in pieces:
            if rf is None:
                continue
            previous = acc.get(signature)
            acc[signature] = rf if previous is None else _rf_add(previous, rf)
        return cls((s, f) for s, f in acc.items() if f is not None)

    def _coerce(self, other):
        if type(other) is type(self):
            return other
        if type(self) is MuScalar and isinstance(other, (int, Fraction, ExactScalar)):
            return mu_constant(other)
        return None

    def scale(self, c):
        """Multiply every numerator coefficient by c."""
        pieces = []
        for signature, f in self.terms:
            rf = _make_rf([x * c for x in f.numerator], f.mu_power, dict(f.denominator))
            if rf is not None:
                pieces.append((signature, rf))
        return type(self)(pieces)

    def _ring_mul(self, other):
        pieces = []
        for s1, f in self.terms:
            for s2, g in other.terms:
                rf = _rf_mul(f, g)
                if rf is None:
                    continue
                for k in sorted(set(s1) & set(s2)):
                    rf = _rf_times_linear(rf, k)
                pieces.append((tuple(sorted(set(s1) ^ set(s2))), rf))
        return type(self)._collect(pieces)

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return type(self)._collect(self.terms + other.terms)

    __radd__ = __add__

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if type(other) is type(self):
            return self._ring_mul(other)
        if isinstance(other, (int, Fraction, ExactScalar)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, ExactScalar)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, exponent):
        if exponent < 0:
            return mu_inverse(self) ** (-exponent)
        result = mu_one()
        for _ in range(exponent):
            result = result * self
        return result

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.terms)
        return self._hash

    def is_constant(self):
        """True when the value is a real number q*sqrt(d) sum (no mu dependence)."""
        return (len(self.terms) <= 1 and all(
            sig == () and f.mu_power == 0 and not f.denominator and len(f.numerator) == 1
            for sig, f in self.terms))

    def constant_value(self):
        if not self.terms:
            return ExactScalar()
        if not self.is_constant():
            raise ValueError(f"{format_mu(self)} depends on mu")
        return self.terms[0][1].numerator[0]

    def factor_indices(self):
        """Sorted k of every (1+k*mu) denominator or sqrt factor."""
        found = set()
        for signature, f in self.terms:
            found.update(signature)
            found.update(k for k, _ in f.denominator)
        return sorted(found)

    def denominator_indices(self):
        """Sorted k of every (1+k*mu) denominator."""
        return sorted({k for _, f in self.terms for k, _ in f.denominator})

    def __repr__(self):
        return f"MuScalar({format_mu(self)})"


# ── Constructors ───────────────────────────────────────────────────────────────

def mu_constant(value):
    if not isinstance(value, ExactScalar):
        value = ExactScalar.rational(value)
    if not value:
        return MuScalar()
    return MuScalar((((), RationalFunction((value,), 0, ())),))


def mu_one():
    return mu_constant(1)


def mu_power(t):
    return MuScalar((((), RationalFunction((ONE,), t, ())),))


def mu_linear(k, e=1):
    """(1 + k*mu)^e for nonzero k and any integer e."""
    if k == 0:
        raise ValueError("factor index k must be nonzero")
    if e < 0:
        return MuScalar((((), RationalFunction((ONE,), 0, ((k, -e),))),))
    coefficients = [ExactScalar.rational(math.comb(e, i) * k ** i) for i in range(e + 1)]
    return MuScalar((((), _make_rf(coefficients, 0, {})),))


def mu_sqrt_linear(k):
    """sqrt(1 + k*mu) for nonzero k."""
    if k == 0:
        raise ValueError("factor index k must be nonzero")
    return MuScalar((((k,), RationalFunction((ONE,), 0, ())),))


def mu_rt(n):
    """The real number sqrt(n) as a MuScalar."""
    return mu_constant(ExactScalar.sqrt_of(n))


def mu_inverse(s):
    """Inverse of a unit: c * mu^t * prod (1+k*mu)^e * prod sqrt(1+k*mu)."""
    if len(s.terms) != 1 or type(s) is not MuScalar:
        raise NotInvertible(f"{format_mu(s)} is not a unit")
    (signature, f), = s.terms
    roots = {c.single()[0] for c in f.numerator if c and c.single()}
    if len(roots) != 1 or any(c and c.single() is None for c in f.numerator):
        raise NotInvertible(f"{format_mu(s)} is not a unit")
    d = roots.pop()
    descending = [c.coefficient(d) for c in reversed(f.numerator)]
    poly = sympy.Poly([sympy.Rational(q.numerator, q.denominator) for q in descending], _MU)
    content, factors = poly.factor_list()
    content = Fraction(int(content.p), int(content.q))
    result = mu_one()
    for factor, multiplicity in factors:
        if factor.degree() != 1:
            raise NotInvertible(f"{format_mu(s)} has a nonlinear factor {factor.as_expr()}")
        beta, alpha = [Fraction(int(c.p), int(c.q)) for c in factor.all_coeffs()]
        k = beta / alpha
        if k.denominator != 1:
            raise NotInvertible(f"{format_mu(s)} has a factor with non-integer index {k}")
        content *= alpha ** multiplicity
        result = result * mu_linear(int(k), -multiplicity)
    result = result * mu_constant(ExactScalar(((d, 1 / (content * d)),)))
    result = result * mu_power(-f.mu_power)
    for k, e in f.denominator:
        result = result * mu_linear(k, e)
    for k in signature:
        result = result * mu_sqrt_linear(k) * mu_linear(k, -1)
    return result


def is_unit(s):
    try:
        mu_inverse(s)
    except NotInvertible:
        return False
    return True


# ── Ring operations and homomorphisms ──────────────────────────────────────────

def mu_add(s, t):
    return s + t


def mu_mul(s, t):
    return s * t


def mu_shift(s, n):
    """Image under mu -> mu/(1+n*mu).

    Moving a coefficient leftwards past a word of degree n applies this map,
    so n = 1 is the substitution for a and b, n = -1 for a* and b*.
    """
    if n == 0 or not s.terms:
        return s
    return _shift(s, n)


@lru_cache(maxsize=None)
def _shift(s, n):
    total = MuScalar()
    for signature, f in s.terms:
        total = total + _shift_rf(f, n) * _shift_signature(signature, n)
    return total


def _shift_rf(f, n):
    degree = len(f.numerator) - 1
    num = None
    for j, c in enumerate(f.numerator):
        if not c:
            continue
        part = [c * 0] * j + [c * (math.comb(degree - j, i) * n ** i)
                              for i in range(degree - j + 1)]
        num = part if num is None else _poly_add(num, part)
    exponent = -degree - f.mu_power + sum(e for _, e in f.denominator)
    den = {}
    for k, e in f.denominator:
        if k + n:
            den[k + n] = den.get(k + n, 0) + e
    if exponent < 0:
        den[n] = den.get(n, 0) - exponent
    for _ in range(max(exponent, 0)):
        num = _poly_times_linear(num, n)
    rf = _make_rf(num, f.mu_power, den)
    return MuScalar((((), rf),)) if rf is not None else MuScalar()


def _shift_signature(signature, n):
    result = mu_one()
    for k in signature:
        if k + n:
            result = result * mu_sqrt_linear(k + n)
    half, odd = divmod(len(signature), 2)
    result = result * mu_linear(n, -(half + odd))
    if odd:
        result = result * mu_sqrt_linear(n)
    return result


def subst_plus(s):
    """mu -> mu/(1+mu), the move of a coefficient leftwards past a or b."""
    return mu_shift(s, 1)


def subst_minus(s):
    """mu -> mu/(1-mu), the move of a coefficient leftwards past a* or b*."""
    return mu_shift(s, -1)


def negate_mu(s):
    """The involution mu -> -mu (factor indices k -> -k)."""
    pieces = []
    for signature, f in s.terms:
        sign = -1 if f.mu_power % 2 else 1
        num = tuple(c * (sign if j % 2 == 0 else -sign) for j, c in enumerate(f.numerator))
        den = tuple(sorted((-k, e) for k, e in f.denominator))
        pieces.append((tuple(sorted(-k for k in signature)),
                       RationalFunction(num, f.mu_power, den)))
    return MuScalar(pieces)


def mu_eval(s, mu0):
    """Numeric value at mu = mu0; pass a Fraction for exact singularity checks."""
    x = Fraction(mu0)
    total = 0.0
    for signature, f in s.terms:
        value = 1.0
        for k in signature:
            radicand = 1 + k * x
            if radicand < 0:
                raise SingularEvaluation(k, mu0, 'negative radicand')
            value *= math.sqrt(radicand)
        for k, e in f.denominator:
            base = 1 + k * x
            if base == 0:
                raise SingularEvaluation(k, mu0)
            value /= float(base) ** e
        if f.mu_power < 0 and x == 0:
            raise SingularEvaluation(0, mu0, 'negative power of mu')
        value *= float(x) ** f.mu_power
        value *= sum(float(c) * float(x) ** j for j, c in enumerate(f.numerator))
        total += value
    return total


# ── Two-variable coefficients ──────────────────────────────────────────────────

class PairScalar(MuScalar):
    """Coefficient of a monomial pair in P (x) P: a function of the left mu and the right mu.

    The outer ring variable is the right-leg mu; numerator coefficients are
    MuScalars in the left-leg mu. Real constants move freely between the legs,
    so c1(mu) (x) c2(mu) and (c1*q)(mu) (x) (c2/q)(mu) share one canonical form.
    """

    __slots__ = ()


def pair_embed(left, right):
    """The PairScalar of left (x) right for MuScalars left and right."""
    pieces = []
    for signature, f in right.terms:
        numerator = [left * c if c else MuScalar() for c in f.numerator]
        rf = _make_rf(numerator, f.mu_power, dict(f.denominator))
        if rf is not None:
            pieces.append((signature, rf))
    return PairScalar._collect(pieces)


def pair_split(pair):
    """List of (left, right) MuScalars whose tensor sum is pair."""
    out = []
    for signature, f in pair.terms:
        sqrt_part = mu_one()
        for k in signature:
            sqrt_part = sqrt_part * mu_sqrt_linear(k)
        for j, inner in enumerate(f.numerator):
            if not inner:
                continue
            right = MuScalar((((), RationalFunction((ONE,), f.mu_power + j, f.denominator)),))
            out.append((inner, right * sqrt_part))
    return out


# ── Printing ───────────────────────────────────────────────────────────────────

def format_linear(k):
    """'1+mu', '1-3*mu'."""
    sign = '+' if k > 0 else '-'
    magnitude = abs(k)
    return f"1{sign}mu" if magnitude == 1 else f"1{sign}{magnitude}*mu"


def format_exact(e):
    if not e.terms:
        return '0'
    parts = []
    for d, q in e.terms:
        body = str(abs(q)) if d == 1 else (f"rt({d})" if abs(q) == 1 else f"{abs(q)} * rt({d})")
        sign = '-' if q < 0 else '+'
        parts.append((sign, body))
    out = ('-' if parts[0][0] == '-' else '') + parts[0][1]
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def _scalar_monomials(s):
    """(q, d, mu power, denominator, signature) for each printed term."""
    for signature, f in s.terms:
        for j, c in enumerate(f.numerator):
            for d, q in c.terms:
                yield q, d, j + f.mu_power, f.denominator, signature


def format_mu(s):
    """Canonical textual form; parse_mu_scalar(format_mu(s)) == s."""
    out = ''
    for index, (q, d, power, den, signature) in enumerate(_scalar_monomials(s)):
        factors = []
        if power == 1:
            factors.append('mu')
        elif power:
            factors.append(f"mu^{power}")
        for k, e in den:
            factors.append(f"inv({format_linear(k)})" + (f"^{e}" if e > 1 else ''))
        for k in signature:
            factors.append(f"sqrt({format_linear(k)})")
        if d != 1:
            factors.append(f"rt({d})")
        if abs(q) != 1 or not factors:
            factors.insert(0, str(abs(q)))
        body = ' * '.join(factors)
        if index == 0:
            out = ('-' if q < 0 else '') + body
        else:
            out += (' - ' if q < 0 else ' + ') + body
    return out or '0'


def term_count(s):
    return sum(1 for _ in _scalar_monomials(s))


# ── Serialization ──────────────────────────────────────────────────────────────

def mu_to_json(s):
    """JSON-ready canonical form of a MuScalar."""
    return [
        {
            'sqrt': list(signature),
            'numerator': [[[d, str(q)] for d, q in c.terms] for c in f.numerator],
            'mu_power': f.mu_power,
            'denominator': [[k, e] for k, e in f.denominator],
        }
        for signature, f in s.terms
    ]


def mu_from_json(data):
    """Inverse of mu_to_json; the data is re-validated through the ring operations."""
    total = MuScalar()
    for item in data:
        numerator = [ExactScalar((d, Fraction(q)) for d, q in c) for c in item['numerator']]
        for d, _ in (pair for c in item['numerator'] for pair in c):
            if squarefree_split(d)[0] != 1:
                raise ValueError(f"sqrt key {d} is not squarefree")
        rf = _make_rf(numerator, item['mu_power'], {k: e for k, e in item['denominator']})
        if rf is None:
            continue
        term = MuScalar((((), rf),))
        for k in item['sqrt']:
            term = term * mu_sqrt_linear(k)
        total = total + term
    return total
