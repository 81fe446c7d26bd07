"""Tolerance defaults; HARMONIC2D_TOL overrides the validation tolerance."""
import os

DEFAULT_TOL = 1e-10
SYMMETRY_CLASS_TOL = 1e-8


def default_tol() -> float:
    env = os.environ.get("HARMONIC2D_TOL")
    if env:
        try:
            return float(env)
        except ValueError:
            pass
    return DEFAULT_TOL
