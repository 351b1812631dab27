"""Hot kernels with a compiled core and a pure-numpy fallback.

The compiled module is used when it imports; set ``LACSPHERE_PURE_PYTHON=1``
to force the fallback. ``BACKEND`` names the active implementation.
"""
import os

from . import _pykernels as python

compiled = None
if os.environ.get("LACSPHERE_PURE_PYTHON", "").lower() not in ("1", "true", "yes"):
    try:
        from . import _ckernels as compiled
    except ImportError:
        compiled = None

_impl = compiled if compiled is not None else python
BACKEND = "cython" if compiled is not None else "python"

enumerate_shell = _impl.enumerate_shell
phase_histogram = _impl.phase_histogram
shell_trig_sum = _impl.shell_trig_sum

__all__ = ["BACKEND", "enumerate_shell", "phase_histogram", "shell_trig_sum",
           "python", "compiled"]
