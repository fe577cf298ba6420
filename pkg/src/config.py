"""
config.py - Configuration management for the verification engine

Loads bounds and tolerances from environment variables (.env file)
"""

import os
from dotenv import load_dotenv

# Load .env file if it exists
load_dotenv()


def _int_env(name, default):
    value = os.getenv(name, '')
    return int(value) if value.strip() else default


def _float_env(name, default):
    value = os.getenv(name, '')
    return float(value) if value.strip() else default


# Charge and dimension bounds
BOUNDS = {
    'n_max': _int_env('QS_N_MAX', 5),
    'projector_max_charge': _int_env('QS_PROJECTOR_MAX_CHARGE', 4),
    'sphere_form_max_charge': _int_env('QS_SPHERE_FORM_MAX_CHARGE', 4),
    'max_dimension': _int_env('QS_MAX_DIMENSION', 64),
}

# Chern quadrature
GRID_RESOLUTION = _int_env('QS_GRID_RESOLUTION', 100)
MAX_GRID_RESOLUTION = _int_env('QS_MAX_GRID_RESOLUTION', 400)

# Numeric tolerance ladder: closed-form checks, composed evaluations, quadrature
TOLERANCES = {
    'formula': _float_env('QS_TOL_FORMULA', 1e-12),
    'composed': _float_env('QS_TOL_COMPOSED', 1e-10),
    'quadrature': _float_env('QS_TOL_QUADRATURE', 1e-3),
}

# Process pool size for the suite command
SUITE_WORKERS = _int_env('QS_SUITE_WORKERS', 1)

LOG_LEVEL = os.getenv('QS_LOG_LEVEL', 'WARNING').upper()


def validate_config():
    """Validate bounds and tolerances; raise on critical problems, warn on soft ones."""
    critical = []
    warnings = []
    for name, value in BOUNDS.items():
        if value < 1:
            critical.append(f"{name} must be positive (got {value})")
    if GRID_RESOLUTION < 4:
        critical.append(f"QS_GRID_RESOLUTION must be at least 4 (got {GRID_RESOLUTION})")
    if MAX_GRID_RESOLUTION < GRID_RESOLUTION:
        critical.append("QS_MAX_GRID_RESOLUTION is below QS_GRID_RESOLUTION")
    ladder = [TOLERANCES['formula'], TOLERANCES['composed'], TOLERANCES['quadrature']]
    if any(t <= 0 for t in ladder):
        critical.append("tolerances must be positive")
    elif not ladder[0] < ladder[1] < ladder[2]:
        critical.append("tolerances must increase: formula < composed < quadrature")
    if SUITE_WORKERS < 1:
        critical.append(f"QS_SUITE_WORKERS must be positive (got {SUITE_WORKERS})")
    if LOG_LEVEL not in ('DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL'):
        warnings.append(f"QS_LOG_LEVEL {LOG_LEVEL!r} is not a logging level, using WARNING")
    if GRID_RESOLUTION > 200:
        warnings.append(f"QS_GRID_RESOLUTION={GRID_RESOLUTION} makes chern slow")
    if BOUNDS['projector_max_charge'] > 6:
        warnings.append("projector charges above 6 take minutes to verify exactly")
    if critical:
        raise ValueError(
            "Configuration error: " + "; ".join(critical) +
            "\nCheck the QS_* variables in your environment or .env file"
        )
    for w in warnings:
        import sys
        print(f"WARNING: {w}", file=sys.stderr)


if __name__ == '__main__':
    # Test configuration
    try:
        validate_config()
        print("Configuration loaded successfully:")
        for name, value in BOUNDS.items():
            print(f"  {name}: {value}")
        print(f"  grid: {GRID_RESOLUTION} (max {MAX_GRID_RESOLUTION})")
        for name, value in TOLERANCES.items():
            print(f"  tolerance {name}: {value:g}")
        print(f"  suite workers: {SUITE_WORKERS}")
        print(f"  log level: {LOG_LEVEL}")
    except ValueError as e:
        print(f"Configuration error: {e}")
