"""Picks the max-flow kernel at import time.

The compiled ``_flowcore`` extension is used when it was built; otherwise the
pure-Python ``_flow_py`` module takes over.  Setting ``TW_PURE_PYTHON=1``
forces the fallback, which the benchmark and the parity tests rely on.
"""

from __future__ import annotations

import os

from . import _flow_py

python_max_flow = _flow_py.max_flow
compiled_max_flow = None

try:
    from . import _flowcore

    compiled_max_flow = _flowcore.max_flow
except ImportError:  # extension not built
    pass

if compiled_max_flow is not None and os.environ.get("TW_PURE_PYTHON", "") != "1":
    max_flow = compiled_max_flow
    BACKEND = "cython"
else:
    max_flow = python_max_flow
    BACKEND = "python"

WANT_PATHS = _flow_py.WANT_PATHS
WANT_CUT_X = _flow_py.WANT_CUT_X
WANT_CUT_Y = _flow_py.WANT_CUT_Y
