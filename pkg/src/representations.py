"""
representations.py - Numeric checks in the finite-dimensional *-representations.

For N >= 1 and sigma = +-1 the sphere acts on C^N with orthonormal basis
v_m, m = -(N-1)/2 .. (N-1)/2:

    mu v_m = (sigma/N) v_m
    X v_m  = (sigma m/N) v_m
    Z v_m  = (sigma/2N) sqrt((N+1-2m)(N-1+2m)) v_(m-1)

and Z* is the conjugate transpose of Z. At mu = 0 the sphere becomes the
classical one, x^2 + |z|^2 = 1/4, where p(u^n) has Chern number +-n.

Usage:
    python3 representations.py [N] [sigma] [n]
"""

import logging
import math
import sys
from fractions import Fraction

import numpy as np

import config
from mu_coefficients import SingularEvaluation, mu_eval
from projectors import to_sphere_form, trace

logger = logging.getLogger(__name__)


class GridTooCoarse(ArithmeticError):
    """The Chern integral did not land near an integer."""

    def __init__(self, value, resolution):
        self.value = value
        self.resolution = resolution
        super().__init__(f"Chern integral {value:.6f} at resolution {resolution} "
                         f"is not within 0.1 of an integer")


class NumericRep:
    """Matrices of mu, X, Z, Z* in the (N, sigma) representation."""

    def __init__(self, N, sigma):
        if N < 1:
            raise ValueError(f"dimension must be >= 1, got {N}")
        if sigma not in (1, -1):
            raise ValueError(f"sigma must be +1 or -1, got {sigma}")
        self.N = N
        self.sigma = sigma
        self.labels = [Fraction(2 * i - (N - 1), 2) for i in range(N)]
        m = np.array([float(label) for label in self.labels])
        self.X = np.diag(sigma * m / N).astype(complex)
        self.Z = np.zeros((N, N), dtype=complex)
        for i in range(1, N):
            self.Z[i - 1, i] = (sigma / (2 * N)) * math.sqrt((N + 1 - 2 * m[i]) * (N - 1 + 2 * m[i]))
        self.Z_star = self.Z.conj().T
        self.mu = (sigma / N) * np.eye(N, dtype=complex)

    @property
    def mu_value(self):
        """Exact value of mu, for singularity checks."""
        return Fraction(self.sigma, self.N)

    def __repr__(self):
        return f"NumericRep(N={self.N}, sigma={self.sigma:+d})"


def build_rep(N, sigma):
    return NumericRep(N, sigma)


def _norm(matrix):
    return float(np.linalg.norm(matrix))


def _record(condition, parameter, value, tolerance):
    return {'condition': condition, 'parameter': parameter,
            'pass': value < tolerance, 'residual': f"{value:.3e}"}


def check_rep_relations(rep):
    """Residual norms of the sphere relations and the Casimir identity."""
    tolerance = config.TOLERANCES['formula']
    X, Z, Zs, mu = rep.X, rep.Z, rep.Z_star, rep.mu
    identity = np.eye(rep.N)
    quarter = identity / 4
    half_mu = mu / 2
    mu_value = rep.sigma / rep.N
    residuals = [
        ('XZ - ZX = -mu Z', X @ Z - Z @ X + mu @ Z),
        ('ZZ* - Z*Z = -2 mu X', Z @ Zs - Zs @ Z + 2 * mu @ X),
        ('(X + mu/2)^2 + ZZ* = 1/4', (X + half_mu) @ (X + half_mu) + Z @ Zs - quarter),
        ('(X - mu/2)^2 + Z*Z = 1/4', (X - half_mu) @ (X - half_mu) + Zs @ Z - quarter),
        ('X^2 + (ZZ* + Z*Z)/2 = (1 - mu^2)/4',
         X @ X + (Z @ Zs + Zs @ Z) / 2 - (1 - mu_value ** 2) / 4 * identity),
        ('Z* is the adjoint of Z', Zs - Z.conj().T),
    ]
    parameter = f"N={rep.N} sigma={rep.sigma:+d}"
    return [_record(name, parameter, _norm(r), tolerance) for name, r in residuals]


# ── Evaluating sphere forms ────────────────────────────────────────────────────

def eval_sphere_form(rep, sf):
    """Matrix of sum c X^i Z^j (Z*)^m at mu = sigma/N; raises SingularEvaluation."""
    result = np.zeros((rep.N, rep.N), dtype=complex)
    for (i, j, m), c in sf.terms:
        value = mu_eval(c, rep.mu_value)
        product = (np.linalg.matrix_power(rep.X, i)
                   @ np.linalg.matrix_power(rep.Z, j)
                   @ np.linalg.matrix_power(rep.Z_star, m))
        result += value * product
    return result


def eval_projector(rep, n):
    """The (|n|+1)N square block matrix of p(u^n) in rep."""
    sm = to_sphere_form(n)
    return np.block([[eval_sphere_form(rep, sf) for sf in row] for row in sm.entries])


def rep_projector_check(rep, n):
    """Numeric idempotency, Hermiticity and trace records for p(u^n) in rep."""
    P = eval_projector(rep, n)
    parameter = f"N={rep.N} sigma={rep.sigma:+d} n={n}"
    composed = config.TOLERANCES['composed']
    formula = config.TOLERANCES['formula']
    total = float(np.trace(P).real)
    numeric_trace = total / rep.N
    symbolic_trace = mu_eval(trace(n).scalar_part(), rep.mu_value)
    return [
        _record('||p^2 - p||', parameter, _norm(P @ P - P), composed),
        _record('||p - p*||', parameter, _norm(P - P.conj().T), formula),
        _record('numeric trace = symbolic trace', parameter,
                abs(numeric_trace - symbolic_trace), composed),
        _record('rank is an integer', parameter, abs(total - round(total)), composed),
    ]


def singular_combinations(charges, dims):
    """(N, sigma, n, k) for which a factor 1+k mu of to_sphere_form(n) vanishes at sigma/N."""
    found = []
    for n in charges:
        sm = to_sphere_form(n)
        indices = set(sm.factor_indices)
        for row in sm.entries:
            for sf in row:
                indices.update(sf.factor_indices())
        for N in dims:
            for sigma in (1, -1):
                for k in sorted(indices):
                    if 1 + Fraction(k * sigma, N) == 0:
                        found.append({'N': N, 'sigma': sigma, 'n': n, 'k': k})
    if found:
        logger.info("Found %d singular combinations", len(found))
    return found


# ── Classical limit ────────────────────────────────────────────────────────────

class ClassicalPoint:
    """A point x^2 + |z|^2 = 1/4 of the classical sphere."""

    __slots__ = ('x', 'z')

    def __init__(self, x, z):
        radial = x * x + abs(z) ** 2 - 0.25
        if abs(radial) > config.TOLERANCES['formula']:
            raise ValueError(f"({x}, {z}) is off the sphere by {radial:.3e}")
        self.x = float(x)
        self.z = complex(z)

    @classmethod
    def from_angles(cls, theta, phi):
        return cls(0.5 * math.cos(theta), 0.5 * math.sin(theta) * complex(math.cos(phi), math.sin(phi)))

    def __repr__(self):
        return f"ClassicalPoint(x={self.x:.6f}, z={self.z:.6f})"


def _classical_terms(sf):
    """(value at mu=0, i, j, m) for every term of sf."""
    return [(mu_eval(c, 0), i, j, m) for (i, j, m), c in sf.terms]


def eval_classical(sf, point):
    return sum(value * point.x ** i * point.z ** j * point.z.conjugate() ** m
               for value, i, j, m in _classical_terms(sf))


def classical_projector(n, point):
    sm = to_sphere_form(n)
    return np.array([[eval_classical(sf, point) for sf in row] for row in sm.entries],
                    dtype=complex)


def classical_point_check(n, point):
    """Records that p(u^n) at a classical point is a rank-one Hermitian projector."""
    p = classical_projector(n, point)
    tolerance = config.TOLERANCES['formula'] * 10
    parameter = f"n={n} {point!r}"
    return [
        _record('classical p^2 = p', parameter, _norm(p @ p - p), tolerance),
        _record('classical p = p*', parameter, _norm(p - p.conj().T), tolerance),
        _record('classical rank is 1', parameter, abs(np.trace(p).real - 1), tolerance),
    ]


def _power(base, exponent):
    return base ** exponent if exponent else np.ones_like(base)


def _entry_with_derivatives(terms, x, z, x_theta, z_theta, z_phi):
    """Entry value and its theta and phi derivatives on the whole grid."""
    zbar = z.conj()
    value = np.zeros_like(z)
    d_theta = np.zeros_like(z)
    d_phi = np.zeros_like(z)
    for c, i, j, m in terms:
        xi, zj, zm = _power(x, i), _power(z, j), _power(zbar, m)
        value += c * xi * zj * zm
        if i:
            d_theta += c * i * _power(x, i - 1) * x_theta * zj * zm
        if j:
            dz = c * j * xi * _power(z, j - 1) * zm
            d_theta += dz * z_theta
            d_phi += dz * z_phi
        if m:
            dzbar = c * m * xi * zj * _power(zbar, m - 1)
            d_theta += dzbar * z_theta.conj()
            d_phi += dzbar * z_phi.conj()
    return value, d_theta, d_phi


def classical_chern(n, grid_resolution=None):
    """(1/2 pi i) times the integral of tr(p [p_theta, p_phi]) over the sphere.

    Nodes are Gauss-Legendre in cos(theta) and uniform in phi. With
    x = cos(theta)/2 and z = sin(theta) e^(i phi)/2 the result is -n.
    """
    if grid_resolution is None:
        grid_resolution = config.GRID_RESOLUTION
    nodes, weights = np.polynomial.legendre.leggauss(grid_resolution)
    theta = np.arccos(nodes)
    phi = 2 * np.pi * np.arange(grid_resolution) / grid_resolution
    T, F = np.meshgrid(theta, phi, indexing='ij')
    x = (0.5 * np.cos(T)).astype(complex)
    z = 0.5 * np.sin(T) * np.exp(1j * F)
    x_theta = (-0.5 * np.sin(T)).astype(complex)
    z_theta = 0.5 * np.cos(T) * np.exp(1j * F)
    z_phi = 1j * z

    sm = to_sphere_form(n)
    size = sm.size
    shape = (size, size) + T.shape
    p, p_theta, p_phi = (np.zeros(shape, dtype=complex) for _ in range(3))
    for k, row in enumerate(sm.entries):
        for l, sf in enumerate(row):
            p[k, l], p_theta[k, l], p_phi[k, l] = _entry_with_derivatives(
                _classical_terms(sf), x, z, x_theta, z_theta, z_phi)

    commutator = (np.einsum('ij...,jk...->ik...', p_theta, p_phi)
                  - np.einsum('ij...,jk...->ik...', p_phi, p_theta))
    density = np.einsum('ij...,ji...->...', p, commutator)
    # dtheta = dt / sin(theta) once the limits are put in increasing t order
    sin_theta = np.sqrt(1 - nodes ** 2)
    integrand = density / sin_theta[:, None]
    integral = np.sum(weights[:, None] * integrand) * (2 * np.pi / grid_resolution)
    value = float((integral / (2j * np.pi)).real)
    logger.info("Chern integral for n=%d at resolution %d: %.10f", n, grid_resolution, value)
    if abs(value - round(value)) > 0.1:
        raise GridTooCoarse(value, grid_resolution)
    return value


def orientation_constant(n_max=3, grid_resolution=None):
    """c with classical_chern(n) close to c*n, and the largest deviation seen."""
    values = {n: classical_chern(n, grid_resolution) for n in range(1, n_max + 1)}
    c = 1 if values[1] > 0 else -1
    deviation = max(abs(value - c * n) for n, value in values.items())
    return c, deviation


def main(argv=None):
    logging.basicConfig(level=logging.INFO,
                        format='%(asctime)s %(levelname)s %(name)s: %(message)s')
    args = sys.argv[1:] if argv is None else argv
    N = int(args[0]) if args else 2
    sigma = int(args[1]) if len(args) > 1 else 1
    n = int(args[2]) if len(args) > 2 else 1
    rep = build_rep(N, sigma)
    try:
        records = check_rep_relations(rep) + rep_projector_check(rep, n)
    except SingularEvaluation as exc:
        print(f"Singular: {exc}")
        return 3
    for r in records:
        print(f"{'ok  ' if r['pass'] else 'FAIL'} {r['condition']} [{r['parameter']}] {r['residual']}")
    return 0 if all(r['pass'] for r in records) else 1


if __name__ == '__main__':
    sys.exit(main())
