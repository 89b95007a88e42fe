"""Kernel backend selection.

The compiled extension ``wonderland._kernels_cy`` is preferred when it built;
otherwise the pure-Python twin is used.  Set ``WONDERLAND_BACKEND=pure`` (or
``compiled``) to force a choice; forcing ``compiled`` raises if the extension
is missing rather than silently falling back.
"""

import os

from wonderland import _kernels_py

_forced = os.environ.get("WONDERLAND_BACKEND", "").strip().lower()

if _forced == "pure":
    _impl = _kernels_py
    BACKEND = "pure"
elif _forced == "compiled":
    from wonderland import _kernels_cy as _impl  # noqa: F401

    BACKEND = "compiled"
else:
    try:
        from wonderland import _kernels_cy as _impl  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:
        _impl = _kernels_py
        BACKEND = "pure"

q_add = _impl.q_add
q_mul = _impl.q_mul
q_neg = _impl.q_neg
q_inv = _impl.q_inv
q_norm = _impl.q_norm
rref_rows = _impl.rref_rows
mat_mul = _impl.mat_mul
poly_mul = _impl.poly_mul
poly_eval = _impl.poly_eval
