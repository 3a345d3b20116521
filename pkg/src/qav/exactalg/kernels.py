"""Kernel selection.

The compiled Cython module is used when it imports cleanly; otherwise the
pure-Python implementation is used.  Setting ``QAV_PURE_PYTHON=1`` forces the
fallback.
"""

import os

BACKEND = "python"
_impl = None

if os.environ.get("QAV_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:  # extension not built
        _impl = None

if _impl is None:
    from . import _pykernels as _impl  # type: ignore[no-redef]

ZERO = _impl.ZERO
ONE = _impl.ONE
padd = _impl.padd
psub = _impl.psub
pneg = _impl.pneg
pscale = _impl.pscale
pshift = _impl.pshift
pmul = _impl.pmul
pcontent = _impl.pcontent
pdivint = _impl.pdivint
pdivmod = _impl.pdivmod
pdivexact = _impl.pdivexact
peval = _impl.peval
pgcd = _impl.pgcd
qs_norm = _impl.qs_norm
qs_mul = _impl.qs_mul
qs_inv = _impl.qs_inv
qs_neg = _impl.qs_neg
qs_add = _impl.qs_add
qs_sub = _impl.qs_sub
rows_add = _impl.rows_add
rows_mul = _impl.rows_mul
rows_axpy = _impl.rows_axpy
rows_prune = _impl.rows_prune

__all__ = [
    "BACKEND", "ZERO", "ONE", "padd", "psub", "pneg", "pscale", "pshift",
    "pmul", "pcontent", "pdivint", "pdivmod", "pdivexact", "peval", "pgcd",
    "qs_norm", "qs_mul", "qs_inv", "qs_neg", "qs_add", "qs_sub",
    "rows_add", "rows_mul", "rows_axpy", "rows_prune",
]
