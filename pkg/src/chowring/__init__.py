"""Exact calculus for tautological cycles on K3 powers, Hilbert schemes of K3
surfaces and Fano varieties of lines on cubic fourfolds."""

__version__ = "0.1.0"

from .kernels import BACKEND
from .polynomial import Polynomial, to_text
from .k3model import K3Model, default_model, load_model, parse_model, realize
from .bv import BVRing, Verdict, integrate, normalize, verify_vanishing
from .hilbert import EGL, SetPartition, chern_number, e_mu_pullback, verify_chow_zero_hilbert
from .schubert import SchubertElement, integrate_grass, pieri_multiply
from .fano import fano_normalize, integrate_fano, verify_theocubic
from .expr import parse, parse_expr, print_canonical

__all__ = [
    "BACKEND", "Polynomial", "to_text", "K3Model", "default_model", "load_model", "parse_model",
    "realize", "BVRing", "Verdict", "integrate", "normalize", "verify_vanishing", "EGL",
    "SetPartition", "chern_number", "e_mu_pullback", "verify_chow_zero_hilbert", "SchubertElement",
    "integrate_grass", "pieri_multiply", "fano_normalize", "integrate_fano", "verify_theocubic",
    "parse", "parse_expr", "print_canonical",
]
