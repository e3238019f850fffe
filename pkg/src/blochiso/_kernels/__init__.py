"""Kernel backend selection.

The compiled backend is preferred when importable. Set ``BLOCHISO_KERNEL``
to ``python`` or ``cython`` to force a choice; forcing ``cython`` raises if
the extension was not built. Both backends produce identical results.
"""

from __future__ import annotations

import os

_choice = os.environ.get("BLOCHISO_KERNEL", "auto").strip().lower()

if _choice in ("auto", "", "cython"):
    try:
        from . import backend_cy as active  # type: ignore[attr-defined]
    except ImportError:
        if _choice == "cython":
            raise ImportError(
                "BLOCHISO_KERNEL=cython but the compiled kernel is not built; "
                "run `pip install -e . --no-build-isolation`"
            )
        from . import backend_py as active
elif _choice == "python":
    from . import backend_py as active
else:
    raise ImportError(f"unknown BLOCHISO_KERNEL value: {_choice!r}")

matmul = active.matmul
jacobi_hermitian = active.jacobi_hermitian
BACKEND_NAME: str = active.NAME


def get_backend(name: str):
    """Import a backend module by name (for benchmarks and parity tests)."""
    if name == "python":
        from . import backend_py

        return backend_py
    if name == "cython":
        from . import backend_cy  # type: ignore[attr-defined]

        return backend_cy
    raise ValueError(f"unknown backend {name!r}")


def available_backends() -> tuple[str, ...]:
    names = ["python"]
    try:
        from . import backend_cy  # noqa: F401
    except ImportError:
        pass
    else:
        names.insert(0, "cython")
    return tuple(names)
