"""Symmetry-filtered UCCSD toolkit."""

from ._core import *  # noqa: F401,F403
from ._core import SymuccError, run_cli


def load(path):
    """Table, full pool and symmetry-filtered pool for one FCIDUMP file."""
    table = load_fcidump(path)  # noqa: F405
    full = enumerate_pool(table)  # noqa: F405
    return table, full, filter_pool(full, table)  # noqa: F405


__all__ = ["SymuccError", "run_cli", "load"]
