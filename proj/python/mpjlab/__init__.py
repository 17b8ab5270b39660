"""Laboratory for multiparty pointer jumping in the number-on-the-forehead model.

Thin wrapper around the C++ extension. Everything lives in ``_mpjlab``; this
package just re-exports it under a stable name.
"""

try:
    from ._mpjlab import *  # noqa: F401,F403  (wheel layout)
    from ._mpjlab import __doc__ as _core_doc
except ImportError:  # in-tree builds put the extension on sys.path directly
    from _mpjlab import *  # noqa: F401,F403
    from _mpjlab import __doc__ as _core_doc

__all__ = [name for name in dir() if not name.startswith("_")]
