"""Select the compiled kernels when available, else the pure-Python ones.

Set ``DPDISTINCT_PURE=1`` to force the fallback.
"""

import os

from dpdistinct import _pure

if os.environ.get("DPDISTINCT_PURE", "") not in ("", "0"):
    kernels = _pure
    NAME = "python"
else:
    try:
        from dpdistinct import _kernels as kernels
        NAME = "cython"
    except ImportError:
        kernels = _pure
        NAME = "python"

max_matching = kernels.max_matching
greedy_curve = kernels.greedy_curve
