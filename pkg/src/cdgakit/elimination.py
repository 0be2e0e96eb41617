"""Backend selection for the integer elimination kernel.

The compiled ``_elim_c`` module is used when importable; it works in int64
and falls back to the pure-Python kernel on overflow.  Set
``CDGAKIT_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _elim_py

try:
    if os.environ.get("CDGAKIT_PURE_PYTHON"):
        raise ImportError("pure-Python backend forced")
    from . import _elim_c
except ImportError:
    _elim_c = None

BACKEND = "cython" if _elim_c is not None else "python"


def echelon(rows, ncols):
    if _elim_c is not None:
        try:
            return _elim_c.echelon(rows, ncols)
        except OverflowError:
            pass
    return _elim_py.echelon(rows, ncols)


def echelon_python(rows, ncols):
    return _elim_py.echelon(rows, ncols)


def echelon_compiled(rows, ncols):
    """Compiled kernel only; raises ImportError when the extension is unavailable."""
    if _elim_c is None:
        raise ImportError("cdgakit._elim_c is not built")
    return _elim_c.echelon(rows, ncols)
