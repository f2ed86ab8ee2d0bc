"""Statevector quantum circuit simulator and algorithm library."""

try:
    from ._qflow import *  # noqa: F401,F403
except ImportError:
    # Build-tree layout: the compiled module sits next to the package on
    # sys.path instead of inside it.
    from _qflow import *  # noqa: F401,F403
