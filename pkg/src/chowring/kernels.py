"""Kernel selection: the compiled extension when built, the Python twin otherwise.

Set ``CHOWRING_PURE_PYTHON=1`` to force the fallback.
"""
import os

BACKEND = "python"

if os.environ.get("CHOWRING_PURE_PYTHON", "") not in ("", "0"):
    from ._kernels_py import bareiss_rank, mono_mul, mul_terms
else:
    try:
        from ._kernels import bareiss_rank, mono_mul, mul_terms

        BACKEND = "cython"
    except ImportError:
        from ._kernels_py import bareiss_rank, mono_mul, mul_terms

__all__ = ["BACKEND", "bareiss_rank", "mono_mul", "mul_terms"]
