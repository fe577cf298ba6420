"""
verify.py - Command-line front end for the contact-sphere verification engine.

Usage:
    python3 verify.py normalize "a * a* + b * b*"
    python3 verify.py verify-relations
    python3 verify.py verify-galois --n-max 3
    python3 verify.py verify-connection --n-max 5
    python3 verify.py projector --charge 2 --basis sphere --format latex
    python3 verify.py verify-projector --charge 2
    python3 verify.py symmetry --n-max 3
    python3 verify.py rep-check --dim 4 --sigma -1 --charge 2
    python3 verify.py chern --charge 3 --grid 120
    python3 verify.py suite quick --workers 4

Exit codes: 0 all checks pass, 1 a check failed (or a fatal error),
2 usage, parse or configuration error, 3 singular evaluation.
"""

import argparse
import json
import logging
import random
import sys
from concurrent.futures import ProcessPoolExecutor

import config
from expression_parser import ExpressionSyntaxError, parse_laurent_tree, parse_poly
from galois import check_round_trips, check_strong_connection, verify_binomial_identity
from hopf_structure import laurent_from_tree, verify_coaction, verify_hopf_axioms
from mu_coefficients import SingularEvaluation
from nc_algebra import (
    NotDegreeZero,
    check_associativity,
    check_confluence,
    format_poly,
    format_sphere,
    poly_to_json,
    random_poly,
    sphere_to_json,
    to_sphere_generators,
    verify_relations,
)
from projectors import (
    REFERENCE_MATRICES,
    compare_with_reference,
    export_projector,
    theta_conjugate,
    to_sphere_form,
    trace_symmetry,
    verify_projector,
)
from representations import (
    GridTooCoarse,
    build_rep,
    check_rep_relations,
    classical_chern,
    orientation_constant,
    rep_projector_check,
    singular_combinations,
)
from utils import format_table, signed_range

logger = logging.getLogger(__name__)

REPORT_SCHEMA = 'qcontact-report/1'
POLY_SCHEMA = 'qcontact-poly/1'

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_SINGULAR = 3

SUITE_LEVELS = {
    'quick': {'n_max': 2, 'adjoint_max': 2, 'binomial_max': 4, 'd_max': 2,
              'relation_k_max': 3, 'relation_n_max': 4, 'associativity': 30,
              'projector_max': 2, 'symmetry_max': 2, 'rep_dim_max': 6,
              'rep_projector_dim_max': 6, 'rep_charge_max': 2, 'chern_max': 2},
    'full': {'n_max': 5, 'adjoint_max': 3, 'binomial_max': 8, 'd_max': 4,
             'relation_k_max': 5, 'relation_n_max': 6, 'associativity': 100,
             'projector_max': 4, 'symmetry_max': 3, 'rep_dim_max': 20,
             'rep_projector_dim_max': 12, 'rep_charge_max': 3, 'chern_max': 3},
}

HOPF_SAMPLES = ('u', 'u^-1', 'u^2 + 3', '2 * u^3 - rt(2) * u^-2 + 1/2')


# ── Check groups ───────────────────────────────────────────────────────────────
# Each returns a list of {'condition', 'parameter', 'pass', 'residual'} records
# and is importable by worker processes.

def relation_checks(k_max=5, n_max=6, associativity=100, seed=0):
    records = verify_relations(k_max, n_max)
    records.extend(check_confluence())
    records.extend(check_associativity(random.Random(seed), associativity))
    return records


def galois_checks(n_max, d_max=4, binomial_max=8, seed=0):
    samples = [laurent_from_tree(parse_laurent_tree(text)) for text in HOPF_SAMPLES]
    records = verify_hopf_axioms(samples)
    rng = random.Random(seed)
    records.extend(verify_coaction([random_poly(rng, 3, 3) for _ in range(6)]))
    for n in range(1, binomial_max + 1):
        records.extend(verify_binomial_identity(n))
    records.extend(check_round_trips(n_max, d_max))
    return records


def connection_checks(n_max, adjoint_max=None):
    return check_strong_connection(n_max, adjoint_max)


def projector_checks(n):
    records = verify_projector(n)
    if n in REFERENCE_MATRICES:
        records.extend(compare_with_reference(n))
    return records


def symmetry_checks(n):
    return theta_conjugate(n) + [trace_symmetry(n)]


def rep_checks(N, sigma, charges):
    """Relation and projector records in rep (N, sigma); singular charges must raise."""
    rep = build_rep(N, sigma)
    records = check_rep_relations(rep)
    singular = {c['n'] for c in singular_combinations(charges, [N]) if c['sigma'] == sigma}
    for n in charges:
        try:
            records.extend(rep_projector_check(rep, n))
            raised = None
        except SingularEvaluation as exc:
            raised = exc
        if n in singular or raised is not None:
            records.append({
                'condition': 'singular combination raises SingularEvaluation',
                'parameter': f"N={N} sigma={sigma:+d} n={n}",
                'pass': n in singular and raised is not None,
                'residual': str(raised) if raised else 'no error raised',
            })
    return records


def chern_checks(charges, grid):
    records = []
    c, _ = orientation_constant(1, grid)
    for n in charges:
        # p(1) = 1 has identically zero curvature density
        tolerance = config.TOLERANCES['formula' if n == 0 else 'quadrature']
        try:
            value = classical_chern(n, grid)
            deviation = abs(value - c * n)
            residual = f"{value:.8f} (c={c:+d})"
        except GridTooCoarse as exc:
            deviation, residual = float('inf'), str(exc)
        records.append({'condition': 'classical Chern number = c n',
                        'parameter': f"n={n} grid={grid}",
                        'pass': deviation < tolerance, 'residual': residual})
    return records


def suite_tasks(level):
    """(function, args) pairs for a suite level."""
    bounds = SUITE_LEVELS[level]
    tasks = [
        (relation_checks, (bounds['relation_k_max'], bounds['relation_n_max'],
                           bounds['associativity'])),
        (galois_checks, (bounds['n_max'], bounds['d_max'], bounds['binomial_max'])),
        (connection_checks, (bounds['n_max'], bounds['adjoint_max'])),
    ]
    tasks.extend((projector_checks, (n,)) for n in signed_range(bounds['projector_max']))
    tasks.extend((symmetry_checks, (n,)) for n in range(bounds['symmetry_max'] + 1))
    charges = signed_range(bounds['rep_charge_max'])
    for N in range(1, bounds['rep_dim_max'] + 1):
        for sigma in (1, -1):
            rep_charges = charges if N <= bounds['rep_projector_dim_max'] else []
            tasks.append((rep_checks, (N, sigma, rep_charges)))
    tasks.append((chern_checks, (signed_range(bounds['chern_max']), config.GRID_RESOLUTION)))
    return tasks


def _run_task(task):
    function, args = task
    return function(*args)


def run_suite(level, workers=1):
    """All records of a suite level, in task order regardless of worker count."""
    tasks = suite_tasks(level)
    logger.info("Running %d suite tasks at level %s with %d workers", len(tasks), level, workers)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_task, tasks))
    else:
        results = [_run_task(task) for task in tasks]
    return [record for records in results for record in records]


# ── Output ─────────────────────────────────────────────────────────────────────

def report_document(command, parameters, records):
    return {
        'schema': REPORT_SCHEMA,
        'command': command,
        'parameters': parameters,
        'passed': all(r['pass'] for r in records),
        'failures': sum(1 for r in records if not r['pass']),
        'records': records,
    }


def print_report(command, parameters, records, fmt, verbose=False):
    if fmt == 'json':
        print(json.dumps(report_document(command, parameters, records), sort_keys=True, indent=2))
    else:
        shown = records if verbose else [r for r in records if not r['pass']]
        if shown:
            rows = [(r['condition'], r['parameter'], 'ok' if r['pass'] else 'FAIL', r['residual'])
                    for r in shown]
            print(format_table(rows, ('condition', 'parameter', 'pass', 'residual')))
        failures = sum(1 for r in records if not r['pass'])
        print(f"{command}: {len(records) - failures}/{len(records)} checks passed")
    return EXIT_PASS if all(r['pass'] for r in records) else EXIT_FAIL


def normalize_command(args):
    x = parse_poly(args.expression)
    sphere = None
    if args.basis == 'sphere':
        try:
            sphere = to_sphere_generators(x)
        except NotDegreeZero as exc:
            print(f"Error: {exc}", file=sys.stderr)
            return EXIT_USAGE
    if args.format == 'json':
        document = {'schema': POLY_SCHEMA, 'input': args.expression,
                    'normal_form': poly_to_json(x), 'text': format_poly(x)}
        if sphere is not None:
            document['sphere_form'] = sphere_to_json(sphere)
            document['sphere_text'] = format_sphere(sphere)
        print(json.dumps(document, sort_keys=True, indent=2))
    else:
        print(format_sphere(sphere) if sphere is not None else format_poly(x))
    return EXIT_PASS


def projector_command(args):
    if abs(args.charge) > config.BOUNDS['projector_max_charge']:
        print(f"Error: |charge| exceeds {config.BOUNDS['projector_max_charge']}", file=sys.stderr)
        return EXIT_USAGE
    fmt = 'text' if args.format is None else args.format
    print(export_projector(args.charge, fmt, args.basis))
    if args.basis == 'sphere' and fmt == 'text':
        print(f"(1+k mu)^-1 factors: k in {list(to_sphere_form(args.charge).factor_indices)}")
    return EXIT_PASS


def _charges(args, default_max):
    if args.charge is not None:
        return [args.charge]
    n_max = args.n_max if args.n_max is not None else default_max
    return signed_range(n_max)


def build_parser():
    parser = argparse.ArgumentParser(
        description='Exact verification engine for the contact quantum 3-sphere and 2-sphere')
    parser.add_argument('--verbose', action='store_true', help='debug logging and every record')
    sub = parser.add_subparsers(dest='command', required=True)

    def add(name, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument('--format', choices=('text', 'json', 'latex'), default=None,
                       help='output format (latex only for projector)')
        p.add_argument('--verbose', action='store_true', default=argparse.SUPPRESS,
                       help='debug logging and every record')
        return p

    p = add('normalize', 'print the normal form of an expression')
    p.add_argument('expression')
    p.add_argument('--basis', choices=('word', 'sphere'), default='word')

    add('verify-relations', 'defining and derived relations, confluence, associativity')

    p = add('verify-galois', 'Hopf axioms, coaction, binomial identities, can round trips')
    p.add_argument('--n-max', type=int, default=config.BOUNDS['n_max'])

    p = add('verify-connection', 'strong connection conditions')
    p.add_argument('--n-max', type=int, default=config.BOUNDS['n_max'])

    p = add('projector', 'print or export p(u^n)')
    p.add_argument('--charge', type=int, required=True)
    p.add_argument('--basis', choices=('word', 'sphere'), default='word')

    for name, help_text in (('verify-projector', 'idempotency, Hermiticity, coinvariance'),
                            ('symmetry', 'theta charge conjugation of projectors')):
        p = add(name, help_text)
        p.add_argument('--charge', type=int, default=None)
        p.add_argument('--n-max', type=int, default=None)

    p = add('rep-check', 'numeric checks in the (N, sigma) representation')
    p.add_argument('--dim', type=int, required=True)
    p.add_argument('--sigma', type=int, choices=(1, -1), required=True)
    p.add_argument('--charge', type=int, default=1)

    p = add('chern', 'classical Chern number of p(u^n)')
    p.add_argument('--charge', type=int, required=True)
    p.add_argument('--grid', type=int, default=config.GRID_RESOLUTION)

    p = add('suite', 'run a verification suite')
    p.add_argument('level', choices=tuple(SUITE_LEVELS))
    p.add_argument('--workers', type=int, default=config.SUITE_WORKERS)
    return parser


def _usage_problems(args):
    problems = []
    if getattr(args, 'n_max', None) is not None and args.n_max < 1:
        problems.append('--n-max must be positive')
    charge = getattr(args, 'charge', None)
    if charge is not None and abs(charge) > config.BOUNDS['projector_max_charge']:
        problems.append(f"|--charge| must be at most {config.BOUNDS['projector_max_charge']}")
    if getattr(args, 'dim', None) is not None and not 1 <= args.dim <= config.BOUNDS['max_dimension']:
        problems.append(f"--dim must be between 1 and {config.BOUNDS['max_dimension']}")
    if getattr(args, 'grid', None) is not None and not 4 <= args.grid <= config.MAX_GRID_RESOLUTION:
        problems.append(f"--grid must be between 4 and {config.MAX_GRID_RESOLUTION}")
    if getattr(args, 'workers', None) is not None and args.workers < 1:
        problems.append('--workers must be positive')
    if args.format == 'latex' and args.command != 'projector':
        problems.append('--format latex is only available for projector')
    return problems


def dispatch(args):
    fmt = args.format or 'text'
    verbose = args.verbose
    command = args.command
    if command == 'normalize':
        return normalize_command(args)
    if command == 'projector':
        return projector_command(args)
    if command == 'verify-relations':
        return print_report(command, {}, relation_checks(), fmt, verbose)
    if command == 'verify-galois':
        records = galois_checks(args.n_max, min(args.n_max, 4))
        return print_report(command, {'n_max': args.n_max}, records, fmt, verbose)
    if command == 'verify-connection':
        records = connection_checks(args.n_max, min(args.n_max, 3))
        return print_report(command, {'n_max': args.n_max}, records, fmt, verbose)
    if command == 'verify-projector':
        charges = _charges(args, config.BOUNDS['projector_max_charge'])
        records = [r for n in charges for r in projector_checks(n)]
        return print_report(command, {'charges': charges}, records, fmt, verbose)
    if command == 'symmetry':
        charges = _charges(args, 3)
        records = [r for n in charges for r in symmetry_checks(n)]
        return print_report(command, {'charges': charges}, records, fmt, verbose)
    if command == 'rep-check':
        rep = build_rep(args.dim, args.sigma)
        records = check_rep_relations(rep) + rep_projector_check(rep, args.charge)
        parameters = {'dim': args.dim, 'sigma': args.sigma, 'charge': args.charge}
        return print_report(command, parameters, records, fmt, verbose)
    if command == 'chern':
        value = classical_chern(args.charge, args.grid)
        if fmt == 'json':
            document = {'schema': REPORT_SCHEMA, 'command': command,
                        'parameters': {'charge': args.charge, 'grid': args.grid},
                        'value': round(value, 10)}
            print(json.dumps(document, sort_keys=True, indent=2))
        else:
            print(f"classical Chern number of p(u^{args.charge}): {value:.10f}")
        return EXIT_PASS
    if command == 'suite':
        records = run_suite(args.level, args.workers)
        return print_report(f"suite {args.level}", SUITE_LEVELS[args.level], records, fmt, verbose)
    raise ValueError(f"unknown command {command!r}")


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    level = 'DEBUG' if args.verbose else config.LOG_LEVEL
    logging.basicConfig(level=getattr(logging, level, logging.WARNING),
                        format='%(asctime)s %(levelname)s %(name)s: %(message)s')
    try:
        config.validate_config()
    except ValueError as e:
        print(f"{e}", file=sys.stderr)
        return EXIT_USAGE
    problems = _usage_problems(args)
    if problems:
        for problem in problems:
            print(f"Error: {problem}", file=sys.stderr)
        return EXIT_USAGE

    try:
        return dispatch(args)
    except ExpressionSyntaxError as e:
        print(f"Syntax error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except SingularEvaluation as e:
        print(f"Singular evaluation: {e}", file=sys.stderr)
        return EXIT_SINGULAR
    except Exception as e:
        print(f"Fatal error: {e}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == '__main__':
    sys.exit(main())
