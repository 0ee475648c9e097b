"""Backend selection for the hot loops (word reduction and lifting).

The compiled extension is used when it imports; set ``KCORE_PURE_PYTHON=1``
to force the pure-Python kernels.
"""
import os

if os.environ.get("KCORE_PURE_PYTHON"):
    from ._pykernels import endpoints, prepare_table, rank, reduce_codes, walk

    BACKEND = "python"
else:
    try:
        from ._kernels import endpoints, prepare_table, rank, reduce_codes, walk

        BACKEND = "cython"
    except ImportError:
        from ._pykernels import endpoints, prepare_table, rank, reduce_codes, walk

        BACKEND = "python"

__all__ = ["BACKEND", "endpoints", "prepare_table", "rank", "reduce_codes", "walk"]
