"""Backend selection for the rewriting kernels.

The compiled ``_ckernels`` extension is used when it was built; otherwise,
or when ``GROWTHLAB_PURE_PYTHON`` is set to a non-empty value, the
pure-Python ``_pykernels`` module is used.  Both expose ``reduce_word``,
``reduce_rows`` and ``irreducible_mask`` with identical results.
"""

from __future__ import annotations

import os

from . import _pykernels

if os.environ.get("GROWTHLAB_PURE_PYTHON"):
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl
    except ImportError:  # extension not built
        _impl = _pykernels

BACKEND = "python" if _impl is _pykernels else "cython"

reduce_word = _impl.reduce_word
reduce_rows = _impl.reduce_rows
irreducible_mask = _impl.irreducible_mask
reduce_word_counted = _pykernels.reduce_word_counted


def available_backends() -> dict:
    backends = {"python": _pykernels}
    try:
        from . import _ckernels

        backends["cython"] = _ckernels
    except ImportError:
        pass
    return backends
