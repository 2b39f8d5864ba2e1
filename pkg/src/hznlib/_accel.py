"""Optional numba acceleration.

Set ``HZN_DISABLE_NUMBA=1`` to run every kernel through the pure-numpy path.
If numba cannot be imported the fallback is used automatically.
"""
import os

_FALSY = {"", "0", "false", "no", "off"}

NUMBA_DISABLED = os.environ.get("HZN_DISABLE_NUMBA", "").strip().lower() not in _FALSY

try:
    import numba as _numba
except ImportError:  # pragma: no cover
    _numba = None

USE_NUMBA = _numba is not None and not NUMBA_DISABLED


def njit(*args, **kw):
    """``numba.njit`` when acceleration is on, otherwise a passthrough decorator."""
    if not USE_NUMBA:
        if len(args) == 1 and callable(args[0]) and not kw:
            return args[0]
        return lambda f: f
    kw.setdefault("cache", True)
    return _numba.njit(*args, **kw)


def backend() -> str:
    return "numba" if USE_NUMBA else "numpy"
