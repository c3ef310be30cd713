"""Backend selection for the convolution kernel.

The compiled extension is used when it was built; otherwise the pure-Python
kernel is used. Set ``QMACMAHON_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _pykernel

BACKEND = "python"
convolve = _pykernel.convolve

if os.environ.get("QMACMAHON_PURE_PYTHON", "") in ("", "0"):
    try:
        from . import _ckernel
    except ImportError:  # extension not built
        pass
    else:
        convolve = _ckernel.convolve
        BACKEND = "cython"


def backends():
    """Return ``{name: convolve}`` for every importable backend."""
    found = {"python": _pykernel.convolve}
    try:
        from . import _ckernel
    except ImportError:
        return found
    found["cython"] = _ckernel.convolve
    return found
