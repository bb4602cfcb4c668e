"""Exact relational complexity of linear groups acting on subspaces.

Thin wrapper over the C++ core.  When the package is installed the extension
module sits next to this file; in a development tree the build directory can
be pointed at with the RELCX_EXT_DIR environment variable.
"""

import os
import sys

_ext_dir = os.environ.get("RELCX_EXT_DIR")
if _ext_dir and _ext_dir not in sys.path:
    sys.path.insert(0, _ext_dir)

try:
    from _core import (  # type: ignore  # noqa: F401
        Field,
        field,
        group_order,
        height,
        ibase,
        omega_primes,
        projective_order,
        rc_bruteforce,
        rc_compute,
        subspace_count,
        theorem_bounds,
        verify_package_json,
        witness_package,
    )
except ImportError:
    from relcx._core import (  # type: ignore  # noqa: F401
        Field,
        field,
        group_order,
        height,
        ibase,
        omega_primes,
        projective_order,
        rc_bruteforce,
        rc_compute,
        subspace_count,
        theorem_bounds,
        verify_package_json,
        witness_package,
    )

__all__ = [
    "Field",
    "field",
    "group_order",
    "height",
    "ibase",
    "omega_primes",
    "projective_order",
    "rc_bruteforce",
    "rc_compute",
    "subspace_count",
    "theorem_bounds",
    "verify_package_json",
    "witness_package",
]
